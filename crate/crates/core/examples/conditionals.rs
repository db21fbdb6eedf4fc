//! The six polynomial conditionals, their conjunctions and the minimum
//! implicative conditions on MO2.

use qsets::connectives::{all_pairs, biconditional, check_identities, check_material, conditional, conjunction};
use qsets::oml::mo;
use qsets::{Kind, Logic};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = mo(2)?;
    let (a, b) = (l.elem("a")?, l.elem("b")?);
    for k in Kind::ALL {
        println!(
            "{:>3}: a->b = {:<3} a&b = {:<3} a<->b = {}",
            k.label(),
            l.show(&conditional(&l, k, &a, &b)),
            l.show(&conjunction(&l, k, &a, &b)),
            l.show(&biconditional(&l, k, &a, &b)),
        );
    }

    let els: Vec<_> = l.elements().collect();
    let material: Vec<String> =
        Kind::ALL.into_iter().filter(|&k| check_material(&l, k, &els).ok()).map(|k| k.label()).collect();
    println!("kinds satisfying (E), (MP), (MT): {}", material.join(" "));
    print!("{}", check_identities(&l, &all_pairs(&els)));
    Ok(())
}

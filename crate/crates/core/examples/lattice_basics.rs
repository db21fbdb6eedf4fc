//! Builds finite orthomodular lattices, verifies the axioms and computes
//! commutators.

use qsets::oml::{boolean, mo, product, verify_oml, LatticeDoc};
use qsets::{commutator_pair, commutator_set, Logic};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = mo(2)?;
    println!("MO2 has {} elements: {}", l.size(), l.names().join(" "));
    println!("axioms: {}", verify_oml(&l.structure()));

    let (a, b) = (l.elem("a")?, l.elem("b")?);
    println!("a & b = {}, a | b = {}, a' = {}", l.name(l.m(a, b)), l.name(l.j(a, b)), l.name(l.o(a)));
    println!("a commutes with b: {}", l.commutes_with(a, b));
    println!("com(a, b) = {}", l.show(&commutator_pair(&l, &a, &b)));
    println!("com(a, a', b) = {}", l.show(&commutator_set(&l, &[a, l.o(a), b])));
    println!("centre of MO2 has {} elements", l.center().len());

    let p = product(&boolean(1)?, &mo(2)?)?;
    println!("2 x MO2 has {} elements, Boolean: {}", p.size(), p.is_boolean());

    let text = LatticeDoc::from_lattice(&boolean(2)?).to_json();
    let back = LatticeDoc::from_json(&text)?.to_lattice()?;
    println!("2^2 round trip through JSON: {} elements, Boolean: {}", back.size(), back.is_boolean());
    Ok(())
}

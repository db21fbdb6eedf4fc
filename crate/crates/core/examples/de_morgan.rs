//! Checks the bounded De Morgan laws on small sets over MO2: they hold for
//! every self-dual interpretation and fail for the Takeuti pair.

use qsets::oml::mo;
use qsets::qvu::checks::check_de_morgan;
use qsets::qvu::{Evaluator, Universe};
use qsets::{Interpretation, Kind, Logic};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = mo(2)?;
    let uni = Universe::new(l.clone());
    let nonzero: Vec<_> = l.elements().filter(|e| !l.is_zero(e)).collect();
    let samples = uni.enumerate(&nonzero, 2, 1);
    println!("{} sample sets", samples.len());
    for i in [Interpretation::self_dual(Kind::S), Interpretation::self_dual(Kind::R), Interpretation::takeuti()] {
        let r = check_de_morgan(&Evaluator::new(&uni, i), &samples, 2)?;
        println!("{i}: {}", if r.ok() { "all laws hold" } else { "some laws fail" });
        print!("{r}");
    }
    Ok(())
}

//! Transfer of ZFC theorems about equality and pairing: the Q-valued
//! truth of each instance is bounded below by the commutator of its sets.

use qsets::oml::mo;
use qsets::qvu::checks::transfer_suite;
use qsets::qvu::{Evaluator, Universe};
use qsets::{Interpretation, Kind, Logic};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = mo(2)?;
    let uni = Universe::new(l.clone());
    let nonzero: Vec<_> = l.elements().filter(|e| !l.is_zero(e)).collect();
    let samples = uni.enumerate(&nonzero, 2, 1);
    for k in [Kind::S, Kind::C, Kind::R] {
        let r = transfer_suite(&Evaluator::new(&uni, Interpretation::self_dual(k)), &samples)?;
        print!("{r}");
    }
    Ok(())
}

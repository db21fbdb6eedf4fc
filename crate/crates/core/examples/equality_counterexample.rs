//! Builds sets on MO2 for which equality is not transitive and the
//! substitution laws fail under the self-dual S, C and R interpretations,
//! then shows that the commutator bound repairs transitivity.

use qsets::oml::mo;
use qsets::qvu::checks::counterexample_transitivity;
use qsets::qvu::{Evaluator, Universe};
use qsets::{Interpretation, Kind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = mo(2)?;
    let uni = Universe::new(l.clone());
    let candidates: Vec<_> = l.elements().collect();
    for k in [Kind::S, Kind::C, Kind::R] {
        let ev = Evaluator::new(&uni, Interpretation::self_dual(k));
        let w = counterexample_transitivity(&ev, &candidates)?.expect("MO2 has a non-commuting pair");
        println!("{}", ev.interpretation());
        if k == Kind::S {
            for (name, s) in [("u", &w.u), ("v", &w.v), ("w", &w.w)] {
                println!("  {name} = {}", uni.describe(s));
            }
        }
        for v in &w.values {
            println!("  {:<14} = {:<3} expected {}", v.name, v.computed, v.expected);
        }
        for law in &w.laws {
            println!("  {}: {} <= {} {}", law.law, law.lhs, law.rhs, if law.holds { "holds" } else { "fails" });
        }
        println!("  refutes transitivity and substitution: {}", w.refutes());
    }
    Ok(())
}

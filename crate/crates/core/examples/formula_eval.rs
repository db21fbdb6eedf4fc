//! Parses bounded formulas and evaluates them in the Q-valued universe over
//! MO2 under several interpretations.

use qsets::formula::parse;
use qsets::oml::mo;
use qsets::qvu::{parse_qset_literal, Env, Evaluator, Universe};
use qsets::{Interpretation, Logic};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = mo(2)?;
    let uni = Universe::new(l.clone());
    let value = |n: &str| l.elem(n).ok();
    let mut env = Env::new();
    for (name, src) in [("u", "{#0: a, #1: b}"), ("v", "{#0: a, #1: b'}"), ("w", "{#0: 1}")] {
        let s = parse_qset_literal(&uni, src, &env, &value)?;
        println!("{name} = {}", uni.describe(&s));
        env.insert(name.to_string(), s);
    }

    let formulas = ["u = u", "u = v", "w sub u", "forall x in u (x in w)", "exists x in v (x in u)"];
    let interps = [Interpretation::takeuti(), Interpretation::self_dual(qsets::Kind::C), Interpretation::self_dual(qsets::Kind::R)];
    for src in formulas {
        let f = parse(src)?;
        let vals: Vec<String> = interps
            .iter()
            .map(|&i| Ok(format!("{i}: {}", l.show(&Evaluator::new(&uni, i).eval(&f, &env)?))))
            .collect::<Result<_, qsets::qvu::QvuError>>()?;
        println!("[{src}]  {}", vals.join("  "));
    }
    Ok(())
}

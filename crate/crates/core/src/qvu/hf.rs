//! Hereditarily finite sets, used as check-embedding descriptors and as an
//! external two-valued model for bounded formulas.

use crate::formula::Formula;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// A hereditarily finite set in canonical (sorted, duplicate free) form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Hf(BTreeSet<Hf>);

impl Hf {
    pub fn empty() -> Hf {
        Hf(BTreeSet::new())
    }

    pub fn set<I: IntoIterator<Item = Hf>>(items: I) -> Hf {
        Hf(items.into_iter().collect())
    }

    /// The von Neumann natural n = {0, ..., n-1}.
    pub fn nat(n: usize) -> Hf {
        let mut cur = Hf::empty();
        for _ in 0..n {
            let mut next = cur.0.clone();
            next.insert(cur);
            cur = Hf(next);
        }
        cur
    }

    /// Kuratowski pair {{a}, {a, b}}.
    pub fn pair(a: Hf, b: Hf) -> Hf {
        Hf::set([Hf::set([a.clone()]), Hf::set([a, b])])
    }

    pub fn members(&self) -> impl Iterator<Item = &Hf> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: &Hf) -> bool {
        self.0.contains(x)
    }

    pub fn is_subset(&self, o: &Hf) -> bool {
        self.0.is_subset(&o.0)
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|x| x.rank() + 1).max().unwrap_or(0)
    }

    /// Recognises von Neumann naturals.
    pub fn as_nat(&self) -> Option<usize> {
        let n = self.len();
        (*self == Hf::nat(n)).then_some(n)
    }
}

impl fmt::Debug for Hf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_nat() {
            return write!(f, "{n}");
        }
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x:?}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HfError {
    #[error("unbound name `{0}`")]
    Unbound(String),
}

/// Classical truth of a formula over hereditarily finite sets.
pub fn satisfies(f: &Formula, env: &HashMap<String, Hf>) -> Result<bool, HfError> {
    let mut env = env.clone();
    sat(f, &mut env)
}

fn get<'a>(env: &'a HashMap<String, Hf>, n: &str) -> Result<&'a Hf, HfError> {
    env.get(n).ok_or_else(|| HfError::Unbound(n.to_string()))
}

fn with_bound<T>(
    env: &mut HashMap<String, Hf>,
    x: &str,
    val: Hf,
    k: impl FnOnce(&mut HashMap<String, Hf>) -> T,
) -> T {
    let old = env.insert(x.to_string(), val);
    let r = k(env);
    match old {
        Some(o) => env.insert(x.to_string(), o),
        None => env.remove(x),
    };
    r
}

fn sat(f: &Formula, env: &mut HashMap<String, Hf>) -> Result<bool, HfError> {
    use Formula::*;
    Ok(match f {
        True => true,
        False => false,
        Eq(a, b) => get(env, a)? == get(env, b)?,
        Mem(a, b) => get(env, b)?.contains(get(env, a)?),
        Sub(a, b) => get(env, a)?.is_subset(get(env, b)?),
        Not(g) => !sat(g, env)?,
        And(g, h) => sat(g, env)? && sat(h, env)?,
        Or(g, h) => sat(g, env)? || sat(h, env)?,
        Imp(g, h) => !sat(g, env)? || sat(h, env)?,
        Iff(g, h) => sat(g, env)? == sat(h, env)?,
        Forall(x, t, g) | Exists(x, t, g) => {
            let all = matches!(f, Forall(..));
            let items: Vec<Hf> = get(env, t)?.members().cloned().collect();
            let mut res = all;
            for it in items {
                let v = with_bound(env, x, it, |e| sat(g, e))?;
                if v != all {
                    res = !all;
                    break;
                }
            }
            res
        }
        ForallOver(x, ts, g) | ExistsOver(x, ts, g) => {
            let all = matches!(f, ForallOver(..));
            let items: Vec<Hf> = ts.iter().map(|t| get(env, t).cloned()).collect::<Result<_, _>>()?;
            let mut res = all;
            for it in items {
                let v = with_bound(env, x, it, |e| sat(g, e))?;
                if v != all {
                    res = !all;
                    break;
                }
            }
            res
        }
    })
}

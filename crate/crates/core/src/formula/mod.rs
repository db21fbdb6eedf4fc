//! Formulas of the bounded language of set theory, with a parser and a
//! fully parenthesised printer.

mod parser;

pub use parser::{parse, parse_file, ParseError};

use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Eq(String, String),
    Mem(String, String),
    /// `a sub b`, read as (forall z in a)(z in b).
    Sub(String, String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, String, Box<Formula>),
    Exists(String, String, Box<Formula>),
    /// Quantifier over an explicit finite list of named sets. Not bounded.
    ForallOver(String, Vec<String>, Box<Formula>),
    ExistsOver(String, Vec<String>, Box<Formula>),
}

use Formula::*;

pub fn eq(a: &str, b: &str) -> Formula {
    Eq(a.into(), b.into())
}
pub fn mem(a: &str, b: &str) -> Formula {
    Mem(a.into(), b.into())
}
pub fn sub(a: &str, b: &str) -> Formula {
    Sub(a.into(), b.into())
}
pub fn not(f: Formula) -> Formula {
    Not(Box::new(f))
}
pub fn and(f: Formula, g: Formula) -> Formula {
    And(Box::new(f), Box::new(g))
}
pub fn or(f: Formula, g: Formula) -> Formula {
    Or(Box::new(f), Box::new(g))
}
pub fn imp(f: Formula, g: Formula) -> Formula {
    Imp(Box::new(f), Box::new(g))
}
pub fn iff(f: Formula, g: Formula) -> Formula {
    Iff(Box::new(f), Box::new(g))
}
pub fn forall_in(x: &str, t: &str, f: Formula) -> Formula {
    Forall(x.into(), t.into(), Box::new(f))
}
pub fn exists_in(x: &str, t: &str, f: Formula) -> Formula {
    Exists(x.into(), t.into(), Box::new(f))
}

impl Formula {
    /// True when every quantifier is bounded by a set.
    pub fn is_delta0(&self) -> bool {
        match self {
            True | False | Eq(..) | Mem(..) | Sub(..) => true,
            Not(f) => f.is_delta0(),
            And(f, g) | Or(f, g) | Imp(f, g) | Iff(f, g) => f.is_delta0() && g.is_delta0(),
            Forall(_, _, f) | Exists(_, _, f) => f.is_delta0(),
            ForallOver(..) | ExistsOver(..) => false,
        }
    }

    /// Free variables, sorted.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let mut add = |v: &String, bound: &Vec<String>| {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        };
        match self {
            True | False => {}
            Eq(a, b) | Mem(a, b) | Sub(a, b) => {
                add(a, bound);
                add(b, bound);
            }
            Not(f) => f.collect_free(bound, out),
            And(f, g) | Or(f, g) | Imp(f, g) | Iff(f, g) => {
                f.collect_free(bound, out);
                g.collect_free(bound, out);
            }
            Forall(x, t, f) | Exists(x, t, f) => {
                add(t, bound);
                bound.push(x.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
            ForallOver(x, ts, f) | ExistsOver(x, ts, f) => {
                for t in ts {
                    add(t, bound);
                }
                bound.push(x.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every identifier occurring anywhere, bound or free.
    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk_names(&mut out);
        out
    }

    fn walk_names(&self, out: &mut BTreeSet<String>) {
        match self {
            True | False => {}
            Eq(a, b) | Mem(a, b) | Sub(a, b) => {
                out.insert(a.clone());
                out.insert(b.clone());
            }
            Not(f) => f.walk_names(out),
            And(f, g) | Or(f, g) | Imp(f, g) | Iff(f, g) => {
                f.walk_names(out);
                g.walk_names(out);
            }
            Forall(x, t, f) | Exists(x, t, f) => {
                out.insert(x.clone());
                out.insert(t.clone());
                f.walk_names(out);
            }
            ForallOver(x, ts, f) | ExistsOver(x, ts, f) => {
                out.insert(x.clone());
                out.extend(ts.iter().cloned());
                f.walk_names(out);
            }
        }
    }

    /// Rewrites the derived symbols into the primitive ones:
    /// or as not-and-not, iff as a meet of two conditionals, bounded
    /// existence as not-forall-not, and `sub` as a bounded universal.
    pub fn expand_derived(&self) -> Formula {
        match self {
            True | False | Eq(..) | Mem(..) => self.clone(),
            Sub(a, b) => {
                let z = fresh(&self.names());
                forall_in(&z, a, mem(&z, b))
            }
            Not(f) => not(f.expand_derived()),
            And(f, g) => and(f.expand_derived(), g.expand_derived()),
            Imp(f, g) => imp(f.expand_derived(), g.expand_derived()),
            Or(f, g) => not(and(not(f.expand_derived()), not(g.expand_derived()))),
            Iff(f, g) => {
                let (f, g) = (f.expand_derived(), g.expand_derived());
                and(imp(f.clone(), g.clone()), imp(g, f))
            }
            Forall(x, t, f) => forall_in(x, t, f.expand_derived()),
            Exists(x, t, f) => not(forall_in(x, t, not(f.expand_derived()))),
            ForallOver(x, ts, f) => ForallOver(x.clone(), ts.clone(), Box::new(f.expand_derived())),
            ExistsOver(x, ts, f) => not(ForallOver(
                x.clone(),
                ts.clone(),
                Box::new(not(f.expand_derived())),
            )),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            True | False | Eq(..) | Mem(..) | Sub(..) => 1,
            Not(f) => 1 + f.size(),
            And(f, g) | Or(f, g) | Imp(f, g) | Iff(f, g) => 1 + f.size() + g.size(),
            Forall(_, _, f) | Exists(_, _, f) | ForallOver(_, _, f) | ExistsOver(_, _, f) => {
                1 + f.size()
            }
        }
    }

    /// Fully parenthesised text that parses back to the same formula.
    pub fn emit(&self) -> String {
        let mut s = String::new();
        self.emit_into(&mut s);
        s
    }

    fn emit_into(&self, s: &mut String) {
        let bin = |s: &mut String, f: &Formula, op: &str, g: &Formula| {
            s.push('(');
            f.emit_into(s);
            s.push(' ');
            s.push_str(op);
            s.push(' ');
            g.emit_into(s);
            s.push(')');
        };
        match self {
            True => s.push_str("true"),
            False => s.push_str("false"),
            Eq(a, b) => s.push_str(&format!("({a} = {b})")),
            Mem(a, b) => s.push_str(&format!("({a} in {b})")),
            Sub(a, b) => s.push_str(&format!("({a} sub {b})")),
            Not(f) => {
                s.push('!');
                f.emit_into(s);
            }
            And(f, g) => bin(s, f, "&", g),
            Or(f, g) => bin(s, f, "|", g),
            Imp(f, g) => bin(s, f, "->", g),
            Iff(f, g) => bin(s, f, "<->", g),
            Forall(x, t, f) | Exists(x, t, f) => {
                let q = if matches!(self, Forall(..)) { "forall" } else { "exists" };
                s.push_str(&format!("({q} {x} in {t} ("));
                f.emit_into(s);
                s.push_str("))");
            }
            ForallOver(x, ts, f) | ExistsOver(x, ts, f) => {
                let q = if matches!(self, ForallOver(..)) { "forall" } else { "exists" };
                s.push_str(&format!("({q} {x} over [{}] (", ts.join(", ")));
                f.emit_into(s);
                s.push_str("))");
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.emit())
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse(s)
    }
}

/// First of z, z', z'', ... not in `used`.
pub fn fresh(used: &BTreeSet<String>) -> String {
    let mut z = "z".to_string();
    while used.contains(&z) {
        z.push('\'');
    }
    z
}

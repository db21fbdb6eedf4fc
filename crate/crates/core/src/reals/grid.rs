//! Truncation of internal reals to a finite rational grid, for the Q-set
//! evaluator.
//!
//! The i-th grid point g_i is represented by the check-embedded natural i,
//! so `y in z` between two grid points means g_y < g_z and the grid
//! itself is the natural n = |G|.

use super::{Rational, StepFamily};
use crate::connectives::biconditional_closed;
use crate::formula::{parse, Formula};
use crate::logic::Logic;
use crate::qvu::{Hf, QSet, QvuError, Universe};
use num::One;

/// ℝ(x) relative to the grid q: x ⊆ q, x has a member, x misses a member,
/// and y ∈ x exactly when every grid point above y is in x.
pub const REAL_PREDICATE: &str = "(forall y in x (y in q)) & (exists y in q (y in x)) \
     & (exists y in q (!(y in x))) & (forall y in q (y in x <-> forall z in q (y in z -> z in x)))";

pub fn real_predicate_formula() -> Formula {
    parse(REAL_PREDICATE).expect("the real predicate parses")
}

/// A finite sorted set of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    points: Vec<Rational>,
}

impl Grid {
    pub fn new(mut points: Vec<Rational>) -> Self {
        points.sort();
        points.dedup();
        Grid { points }
    }

    /// Every jump point plus one sentinel below and one above.
    pub fn for_families<E: Clone>(fams: &[&StepFamily<E>]) -> Self {
        let mut pts: Vec<Rational> = fams.iter().flat_map(|f| f.points().cloned()).collect();
        pts.sort();
        if let (Some(lo), Some(hi)) = (pts.first().cloned(), pts.last().cloned()) {
            pts.push(lo - Rational::one());
            pts.push(hi + Rational::one());
        }
        Grid::new(pts)
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn position(&self, r: &Rational) -> Option<usize> {
        self.points.binary_search(r).ok()
    }

    /// The grid point g_i as a Q-set.
    pub fn point<L: Logic>(&self, uni: &Universe<L>, i: usize) -> Result<QSet<L::Elem>, QvuError> {
        uni.check(&Hf::nat(i))
    }

    /// The grid G as a Q-set with every member valued 1.
    pub fn rationals<L: Logic>(&self, uni: &Universe<L>) -> Result<QSet<L::Elem>, QvuError> {
        uni.check(&Hf::nat(self.len()))
    }

    /// The Q-set {g_i : u(g_i)} over the whole grid.
    pub fn materialize<L: Logic>(
        &self,
        uni: &Universe<L>,
        u: &StepFamily<L::Elem>,
    ) -> Result<QSet<L::Elem>, QvuError> {
        let l = uni.logic();
        let mut entries = Vec::with_capacity(self.len());
        for (i, r) in self.points.iter().enumerate() {
            entries.push((self.point(uni, i)?, u.at(l, r)));
        }
        uni.set(entries)
    }
}

/// (⋁ u_i) ∧ (⋀ u_i)⊥ ∧ ⋀_i (u_i ↔ ⋀_{j>i} u_j) with u_i = u(g_i): the
/// value of [`REAL_PREDICATE`] on the materialized family.
pub fn gridded_real_predicate<L: Logic + ?Sized>(l: &L, grid: &Grid, u: &StepFamily<L::Elem>) -> L::Elem {
    let vals: Vec<L::Elem> = grid.points().iter().map(|r| u.at(l, r)).collect();
    let mut acc = l.meet(&l.join_all(vals.iter()), &l.ortho(&l.meet_all(vals.iter())));
    for i in 0..vals.len() {
        let above = l.meet_all(vals[i + 1..].iter());
        acc = l.meet(&acc, &biconditional_closed(l, &vals[i], &above));
    }
    acc
}

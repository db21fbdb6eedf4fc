//! The operations every quantum logic exposes to the rest of the crate.
//!
//! Both finite orthomodular lattices and projection lattices implement
//! [`Logic`], so connectives, Q-sets and internal reals are written once.

use std::fmt;
use std::hash::Hash;

/// An orthomodular lattice viewed through its operations.
pub trait Logic {
    type Elem: Clone + fmt::Debug;
    /// Hashable identity of an element, used for interning and dedup only.
    type Key: Clone + Eq + Hash + Ord + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn ortho(&self, a: &Self::Elem) -> Self::Elem;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn same(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn key(&self, a: &Self::Elem) -> Self::Key;
    fn show(&self, a: &Self::Elem) -> String;

    /// Whether the value belongs to this logic (same lattice or dimension).
    fn contains(&self, _a: &Self::Elem) -> bool {
        true
    }

    /// P commutes with Q iff P = (P and Q) or (P and not Q).
    fn commutes(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        let nb = self.ortho(b);
        let r = self.join(&self.meet(a, b), &self.meet(a, &nb));
        self.same(a, &r)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.same(a, &self.zero())
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.same(a, &self.one())
    }

    fn meet_all<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        let mut acc = self.one();
        for x in items {
            acc = self.meet(&acc, x);
        }
        acc
    }

    fn join_all<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        let mut acc = self.zero();
        for x in items {
            acc = self.join(&acc, x);
        }
        acc
    }

    /// Relative complement a and not b.
    fn minus(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.meet(a, &self.ortho(b))
    }
}

/// com(P, Q) = (P∧Q) ∨ (P∧Q⊥) ∨ (P⊥∧Q) ∨ (P⊥∧Q⊥).
pub fn commutator_pair<L: Logic + ?Sized>(l: &L, p: &L::Elem, q: &L::Elem) -> L::Elem {
    let np = l.ortho(p);
    let nq = l.ortho(q);
    let a = l.join(&l.meet(p, q), &l.meet(p, &nq));
    let b = l.join(&l.meet(&np, q), &l.meet(&np, &nq));
    l.join(&a, &b)
}

/// Removes duplicates (by key) and the trivial elements 0 and 1, which never
/// change a commutator.
pub fn dedup_nontrivial<L: Logic + ?Sized>(l: &L, items: &[L::Elem]) -> Vec<L::Elem> {
    let mut keys = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for x in items {
        if l.is_zero(x) || l.is_one(x) {
            continue;
        }
        if keys.insert(l.key(x)) {
            out.push(x.clone());
        }
    }
    out
}

/// Commutator of a finite family: join over all sign assignments of the
/// meet of the signed members.
///
/// The sign assignments are explored depth first and branches whose partial
/// meet is already 0 are cut, so chains and commuting families stay cheap.
pub fn commutator_set<L: Logic + ?Sized>(l: &L, items: &[L::Elem]) -> L::Elem {
    let xs = dedup_nontrivial(l, items);
    if xs.len() <= 1 {
        return l.one();
    }
    let negs: Vec<L::Elem> = xs.iter().map(|x| l.ortho(x)).collect();
    let mut acc = l.zero();
    signed_meets(l, &xs, &negs, 0, l.one(), &mut acc);
    acc
}

fn signed_meets<L: Logic + ?Sized>(
    l: &L,
    xs: &[L::Elem],
    negs: &[L::Elem],
    i: usize,
    cur: L::Elem,
    acc: &mut L::Elem,
) {
    if l.is_zero(&cur) || l.leq(&cur, acc) {
        return;
    }
    if i == xs.len() {
        *acc = l.join(acc, &cur);
        return;
    }
    let pos = l.meet(&cur, &xs[i]);
    signed_meets(l, xs, negs, i + 1, pos, acc);
    let neg = l.meet(&cur, &negs[i]);
    signed_meets(l, xs, negs, i + 1, neg, acc);
}

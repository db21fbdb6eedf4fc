//! Finite orthomodular lattices with precomputed operation tables.

mod bitset;
mod builtin;
mod doc;
mod verify;

pub use bitset::ElemSet;
pub use builtin::{boolean, builtin, mo, product, BUILTIN_NAMES};
pub use doc::LatticeDoc;
pub use verify::{verify_oml, CheckOutcome, OmlReport, OmlStructure};

use crate::logic::{commutator_set, Logic};
use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum OmlError {
    #[error("not an orthomodular lattice: {0}")]
    NotOml(Box<OmlReport>),
    #[error("lattice has {0} elements, at most 256 are supported")]
    TooLarge(usize),
    #[error("unknown element name `{0}`")]
    UnknownElement(String),
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("elements from different lattices were combined")]
    MixedLattice,
    #[error("subset is not closed under the lattice operations: {0}")]
    NotClosed(String),
    #[error("unknown builtin lattice `{0}` (known: {1})")]
    UnknownBuiltin(String, String),
    #[error("malformed lattice document: {0}")]
    Document(String),
}

static NEXT_LATTICE_ID: AtomicU64 = AtomicU64::new(1);

/// An element of a particular [`FiniteOml`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    lattice: u64,
    index: u16,
}

impl Element {
    pub fn index(&self) -> usize {
        self.index as usize
    }

    pub fn lattice_id(&self) -> u64 {
        self.lattice
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.index)
    }
}

struct Inner {
    id: u64,
    n: usize,
    names: Vec<String>,
    by_name: HashMap<String, u16>,
    /// up[i] = { j | i <= j }
    up: Vec<ElemSet>,
    ortho: Vec<u16>,
    meet: Vec<u16>,
    join: Vec<u16>,
    zero: u16,
    one: u16,
}

/// A finite orthomodular lattice. Cloning is cheap and keeps the identity.
#[derive(Clone)]
pub struct FiniteOml {
    inner: Arc<Inner>,
}

impl PartialEq for FiniteOml {
    /// Structural equality: same element names in the same order, same
    /// order relation and same orthocomplement.
    fn eq(&self, o: &Self) -> bool {
        let (a, b) = (&*self.inner, &*o.inner);
        a.names == b.names && a.up == b.up && a.ortho == b.ortho
    }
}

impl fmt::Debug for FiniteOml {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteOml({} elements: {})", self.size(), self.inner.names.join(" "))
    }
}

impl FiniteOml {
    /// Validates the structure and builds the operation tables.
    pub fn new(s: OmlStructure) -> Result<Self, OmlError> {
        let n = s.names.len();
        if n > ElemSet::CAPACITY {
            return Err(OmlError::TooLarge(n));
        }
        let mut by_name = HashMap::new();
        for (i, nm) in s.names.iter().enumerate() {
            if by_name.insert(nm.clone(), i as u16).is_some() {
                return Err(OmlError::DuplicateName(nm.clone()));
            }
        }
        let report = verify_oml(&s);
        if !report.ok {
            return Err(OmlError::NotOml(Box::new(report)));
        }
        let up: Vec<ElemSet> = (0..n)
            .map(|i| (0..n).filter(|&j| s.leq[i][j]).collect())
            .collect();
        let down: Vec<ElemSet> = (0..n)
            .map(|i| (0..n).filter(|&j| s.leq[j][i]).collect())
            .collect();
        let mut meet = vec![0u16; n * n];
        let mut join = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                let lower = down[a].intersect(&down[b]);
                let m = lower.iter().find(|&c| lower.is_subset(&down[c])).unwrap();
                let upper = up[a].intersect(&up[b]);
                let j = upper.iter().find(|&c| upper.is_subset(&up[c])).unwrap();
                meet[a * n + b] = m as u16;
                join[a * n + b] = j as u16;
            }
        }
        let zero = (0..n).find(|&i| up[i].len() == n).unwrap() as u16;
        let one = (0..n).find(|&i| down[i].len() == n).unwrap() as u16;
        Ok(FiniteOml {
            inner: Arc::new(Inner {
                id: NEXT_LATTICE_ID.fetch_add(1, Ordering::Relaxed),
                n,
                names: s.names,
                by_name,
                up,
                ortho: s.ortho.iter().map(|&o| o as u16).collect(),
                meet,
                join,
                zero,
                one,
            }),
        })
    }

    pub fn id(&self) -> u64 {
        self.inner.id
    }

    pub fn size(&self) -> usize {
        self.inner.n
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.inner.n).map(move |i| self.at(i))
    }

    /// Element by index. Panics when out of range.
    pub fn at(&self, i: usize) -> Element {
        assert!(i < self.inner.n, "element index {i} out of range");
        Element { lattice: self.inner.id, index: i as u16 }
    }

    pub fn elem(&self, name: &str) -> Result<Element, OmlError> {
        self.inner
            .by_name
            .get(name)
            .map(|&i| Element { lattice: self.inner.id, index: i })
            .ok_or_else(|| OmlError::UnknownElement(name.to_string()))
    }

    pub fn name(&self, e: Element) -> &str {
        self.check(e);
        &self.inner.names[e.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn owns(&self, e: Element) -> bool {
        e.lattice == self.inner.id && e.index() < self.inner.n
    }

    #[inline]
    fn check(&self, e: Element) {
        assert!(
            e.lattice == self.inner.id,
            "element from a different lattice used with lattice {}",
            self.inner.id
        );
    }

    #[inline]
    fn check_pair(&self, a: Element, b: Element) {
        self.check(a);
        self.check(b);
    }

    pub fn bot(&self) -> Element {
        Element { lattice: self.inner.id, index: self.inner.zero }
    }

    pub fn top(&self) -> Element {
        Element { lattice: self.inner.id, index: self.inner.one }
    }

    #[inline]
    pub fn m(&self, a: Element, b: Element) -> Element {
        self.check_pair(a, b);
        let idx = self.inner.meet[a.index() * self.inner.n + b.index()];
        Element { lattice: self.inner.id, index: idx }
    }

    #[inline]
    pub fn j(&self, a: Element, b: Element) -> Element {
        self.check_pair(a, b);
        let idx = self.inner.join[a.index() * self.inner.n + b.index()];
        Element { lattice: self.inner.id, index: idx }
    }

    #[inline]
    pub fn o(&self, a: Element) -> Element {
        self.check(a);
        Element { lattice: self.inner.id, index: self.inner.ortho[a.index()] }
    }

    #[inline]
    pub fn le(&self, a: Element, b: Element) -> bool {
        self.check_pair(a, b);
        self.inner.up[a.index()].contains(b.index())
    }

    /// Meet of a list that may contain elements of other lattices.
    pub fn meet_set(&self, xs: &[Element]) -> Result<Element, OmlError> {
        let mut acc = self.top();
        for &x in xs {
            if !self.owns(x) {
                return Err(OmlError::MixedLattice);
            }
            acc = self.m(acc, x);
        }
        Ok(acc)
    }

    pub fn join_set(&self, xs: &[Element]) -> Result<Element, OmlError> {
        let mut acc = self.bot();
        for &x in xs {
            if !self.owns(x) {
                return Err(OmlError::MixedLattice);
            }
            acc = self.j(acc, x);
        }
        Ok(acc)
    }

    pub fn commutes_with(&self, a: Element, b: Element) -> bool {
        let r = self.j(self.m(a, b), self.m(a, self.o(b)));
        r == a
    }

    pub fn set_of(&self, xs: &[Element]) -> ElemSet {
        xs.iter().map(|e| {
            self.check(*e);
            e.index()
        }).collect()
    }

    pub fn elems_of(&self, s: &ElemSet) -> Vec<Element> {
        s.iter().map(|i| self.at(i)).collect()
    }

    /// A! = { x | x commutes with every member of A }.
    pub fn commutant(&self, a: &[Element]) -> ElemSet {
        self.elements()
            .filter(|&x| a.iter().all(|&y| self.commutes_with(x, y)))
            .map(|x| x.index())
            .collect()
    }

    pub fn double_commutant(&self, a: &[Element]) -> ElemSet {
        let c = self.elems_of(&self.commutant(a));
        self.commutant(&c)
    }

    /// Elements commuting with everything.
    pub fn center(&self) -> ElemSet {
        let all: Vec<Element> = self.elements().collect();
        self.commutant(&all)
    }

    pub fn is_boolean(&self) -> bool {
        self.center().len() == self.size()
    }

    pub fn commutator(&self, a: &[Element]) -> Element {
        commutator_set(self, a)
    }

    /// Reference implementation: the largest E in A! such that the members
    /// of A cut down to E pairwise commute. Returns None when that set of
    /// candidates has no largest element.
    pub fn commutator_bruteforce(&self, a: &[Element]) -> Option<Element> {
        let cands: Vec<Element> = self
            .elems_of(&self.commutant(a))
            .into_iter()
            .filter(|&e| {
                a.iter().all(|&p| {
                    a.iter().all(|&q| self.commutes_with(self.m(p, e), self.m(q, e)))
                })
            })
            .collect();
        let top = self.join_set(&cands).ok()?;
        cands.contains(&top).then_some(top)
    }

    /// Closure of a set of generators under meet, join and orthocomplement.
    pub fn generated(&self, gens: &[Element]) -> ElemSet {
        let mut s = self.set_of(gens);
        s.insert(self.inner.zero as usize);
        s.insert(self.inner.one as usize);
        loop {
            let cur: Vec<Element> = self.elems_of(&s);
            let mut next = s;
            for &x in &cur {
                next.insert(self.o(x).index());
                for &y in &cur {
                    next.insert(self.m(x, y).index());
                    next.insert(self.j(x, y).index());
                }
            }
            if next == s {
                return s;
            }
            s = next;
        }
    }

    /// Builds the sub-OML on a closed subset together with its embedding:
    /// `embedding[i]` is the element of `self` that sub element `i` maps to.
    pub fn sublattice(&self, set: &ElemSet) -> Result<(FiniteOml, Vec<Element>), OmlError> {
        let members = self.elems_of(set);
        for &x in &members {
            if !set.contains(self.o(x).index()) {
                return Err(OmlError::NotClosed(format!("complement of {}", self.name(x))));
            }
            for &y in &members {
                if !set.contains(self.m(x, y).index()) {
                    return Err(OmlError::NotClosed(format!(
                        "meet of {} and {}",
                        self.name(x),
                        self.name(y)
                    )));
                }
            }
        }
        if !set.contains(self.inner.zero as usize) || !set.contains(self.inner.one as usize) {
            return Err(OmlError::NotClosed("missing 0 or 1".into()));
        }
        let pos: HashMap<Element, usize> =
            members.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let s = OmlStructure {
            names: members.iter().map(|&e| self.name(e).to_string()).collect(),
            leq: members
                .iter()
                .map(|&x| members.iter().map(|&y| self.le(x, y)).collect())
                .collect(),
            ortho: members.iter().map(|&x| pos[&self.o(x)]).collect(),
        };
        Ok((FiniteOml::new(s)?, members))
    }

    /// Raw structure, for serialisation and re-verification.
    pub fn structure(&self) -> OmlStructure {
        let n = self.size();
        OmlStructure {
            names: self.inner.names.clone(),
            leq: (0..n)
                .map(|i| (0..n).map(|j| self.inner.up[i].contains(j)).collect())
                .collect(),
            ortho: self.inner.ortho.iter().map(|&o| o as usize).collect(),
        }
    }

    /// Checks that the interval [0, com(A)] inside A!! is Boolean.
    pub fn decompose_check(&self, a: &[Element]) -> DecompositionReport {
        let c = self.commutator(a);
        let dc = self.double_commutant(a);
        let interval: Vec<Element> = self
            .elems_of(&dc)
            .into_iter()
            .filter(|&x| self.le(x, c))
            .collect();
        let commuting = interval
            .iter()
            .all(|&x| interval.iter().all(|&y| self.commutes_with(x, y)));
        let distributive = interval.iter().all(|&x| {
            interval.iter().all(|&y| {
                interval
                    .iter()
                    .all(|&z| self.m(x, self.j(y, z)) == self.j(self.m(x, y), self.m(x, z)))
            })
        });
        DecompositionReport {
            commutator: self.name(c).to_string(),
            double_commutant_size: dc.len(),
            interval_size: interval.len(),
            boolean_part: commuting && distributive,
            complement_check: "skipped: the absence of Boolean factors in [com(A)⊥, 1] is not checked"
                .to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub commutator: String,
    pub double_commutant_size: usize,
    pub interval_size: usize,
    pub boolean_part: bool,
    pub complement_check: String,
}

impl Logic for FiniteOml {
    type Elem = Element;
    type Key = u16;

    fn zero(&self) -> Element {
        self.bot()
    }
    fn one(&self) -> Element {
        self.top()
    }
    #[inline]
    fn meet(&self, a: &Element, b: &Element) -> Element {
        self.m(*a, *b)
    }
    #[inline]
    fn join(&self, a: &Element, b: &Element) -> Element {
        self.j(*a, *b)
    }
    #[inline]
    fn ortho(&self, a: &Element) -> Element {
        self.o(*a)
    }
    #[inline]
    fn leq(&self, a: &Element, b: &Element) -> bool {
        self.le(*a, *b)
    }
    #[inline]
    fn same(&self, a: &Element, b: &Element) -> bool {
        self.check_pair(*a, *b);
        a == b
    }
    #[inline]
    fn key(&self, a: &Element) -> u16 {
        a.index
    }
    fn show(&self, a: &Element) -> String {
        self.name(*a).to_string()
    }
    fn commutes(&self, a: &Element, b: &Element) -> bool {
        self.commutes_with(*a, *b)
    }
    fn contains(&self, a: &Element) -> bool {
        self.owns(*a)
    }
}

//! Finitely generated Q-valued sets and their truth values.

pub mod checks;
mod eval;
pub mod hf;
mod literal;

pub use eval::{Compiled, Env, Evaluator};
pub use hf::Hf;
pub use literal::parse_qset_literal;

use crate::logic::{commutator_set, Logic};
use rustc_hash::FxHashMap;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QvuError {
    #[error("unbound name `{0}`")]
    Unbound(String),
    #[error("a set from another universe was used")]
    MixedUniverse,
    #[error("a value from another lattice was used")]
    ForeignValue,
    #[error("the same child appears twice in one domain")]
    DuplicateChild,
    #[error("check-embedding exceeds the rank bound {0}")]
    TooDeep(usize),
    #[error("support is not contained in the sublogic: {0}")]
    NotInSublogic(String),
    #[error("{0}")]
    Literal(String),
}

static NEXT_NODE_ID: AtomicU64 = AtomicU64::new(1);
static NEXT_UNIVERSE_ID: AtomicU64 = AtomicU64::new(1);

struct Node<E> {
    id: u64,
    universe: u64,
    rank: usize,
    dom: Vec<(QSet<E>, E)>,
}

/// A Q-valued set: a finite function from Q-sets of lower rank to truth
/// values. Handles are hash-consed, so handle equality is structural
/// identity (not the Q-valued equality).
pub struct QSet<E>(Arc<Node<E>>);

impl<E> Clone for QSet<E> {
    fn clone(&self) -> Self {
        QSet(Arc::clone(&self.0))
    }
}

impl<E> PartialEq for QSet<E> {
    fn eq(&self, o: &Self) -> bool {
        self.0.id == o.0.id
    }
}

impl<E> Eq for QSet<E> {}

impl<E> Hash for QSet<E> {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.0.id.hash(h)
    }
}

impl<E> fmt::Debug for QSet<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSet#{}(rank {}, |dom| {})", self.0.id, self.0.rank, self.0.dom.len())
    }
}

impl<E> QSet<E> {
    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn rank(&self) -> usize {
        self.0.rank
    }

    pub fn universe_id(&self) -> u64 {
        self.0.universe
    }

    /// Domain entries, sorted by child id.
    pub fn dom(&self) -> &[(QSet<E>, E)] {
        &self.0.dom
    }

    /// u(x) for a child x, or None when x is not in dom(u).
    pub fn value(&self, x: &QSet<E>) -> Option<&E> {
        self.0
            .dom
            .binary_search_by_key(&x.id(), |(c, _)| c.id())
            .ok()
            .map(|i| &self.0.dom[i].1)
    }
}

type InternKey<K> = Vec<(u64, K)>;

/// Owns a logic and the hash-consing table of the sets built over it.
pub struct Universe<L: Logic> {
    logic: L,
    id: u64,
    intern: Mutex<FxHashMap<InternKey<L::Key>, QSet<L::Elem>>>,
    checks: Mutex<HashMap<Hf, QSet<L::Elem>>>,
    /// Largest rank accepted by [`Universe::check`].
    pub max_check_rank: usize,
}

impl<L: Logic> fmt::Debug for Universe<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Universe#{}({} sets)", self.id, self.len())
    }
}

impl<L: Logic> Universe<L> {
    pub fn new(logic: L) -> Self {
        Universe {
            logic,
            id: NEXT_UNIVERSE_ID.fetch_add(1, Ordering::Relaxed),
            intern: Mutex::new(FxHashMap::default()),
            checks: Mutex::new(HashMap::new()),
            max_check_rank: 16,
        }
    }

    pub fn logic(&self) -> &L {
        &self.logic
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    /// Number of distinct sets built so far.
    pub fn len(&self) -> usize {
        self.intern.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn empty(&self) -> QSet<L::Elem> {
        self.set(Vec::new()).expect("empty set is valid")
    }

    /// Builds (or finds) the set with the given domain and values.
    pub fn set(&self, mut entries: Vec<(QSet<L::Elem>, L::Elem)>) -> Result<QSet<L::Elem>, QvuError> {
        for (c, v) in &entries {
            if c.universe_id() != self.id {
                return Err(QvuError::MixedUniverse);
            }
            if !self.logic.contains(v) {
                return Err(QvuError::ForeignValue);
            }
        }
        entries.sort_by_key(|(c, _)| c.id());
        if entries.windows(2).any(|w| w[0].0.id() == w[1].0.id()) {
            return Err(QvuError::DuplicateChild);
        }
        let key: InternKey<L::Key> = entries.iter().map(|(c, v)| (c.id(), self.logic.key(v))).collect();
        let mut tab = self.intern.lock().unwrap();
        if let Some(s) = tab.get(&key) {
            return Ok(s.clone());
        }
        let rank = entries.iter().map(|(c, _)| c.rank() + 1).max().unwrap_or(0);
        let s = QSet(Arc::new(Node {
            id: NEXT_NODE_ID.fetch_add(1, Ordering::Relaxed),
            universe: self.id,
            rank,
            dom: entries,
        }));
        tab.insert(key, s.clone());
        Ok(s)
    }

    /// The finite Q-set {u1, ..., un}_Q with every listed member valued 1.
    pub fn qset_of(&self, members: &[QSet<L::Elem>]) -> Result<QSet<L::Elem>, QvuError> {
        let mut seen = Vec::new();
        for m in members {
            if !seen.contains(m) {
                seen.push(m.clone());
            }
        }
        self.set(seen.into_iter().map(|m| (m, self.logic.one())).collect())
    }

    /// The check-embedding of a hereditarily finite set: every member
    /// embedded recursively and valued 1.
    pub fn check(&self, x: &Hf) -> Result<QSet<L::Elem>, QvuError> {
        if x.rank() > self.max_check_rank {
            return Err(QvuError::TooDeep(self.max_check_rank));
        }
        self.check_rec(x)
    }

    fn check_rec(&self, x: &Hf) -> Result<QSet<L::Elem>, QvuError> {
        if let Some(s) = self.checks.lock().unwrap().get(x) {
            return Ok(s.clone());
        }
        let mut entries = Vec::new();
        for m in x.members() {
            entries.push((self.check_rec(m)?, self.logic.one()));
        }
        let s = self.set(entries)?;
        self.checks.lock().unwrap().insert(x.clone(), s.clone());
        Ok(s)
    }

    /// L(u): every value occurring in the transitive closure of u, plus 0.
    pub fn support(&self, u: &QSet<L::Elem>) -> Vec<L::Elem> {
        self.support_all(std::slice::from_ref(u))
    }

    pub fn support_all(&self, us: &[QSet<L::Elem>]) -> Vec<L::Elem> {
        let mut seen_nodes = std::collections::HashSet::new();
        let mut vals: BTreeMap<L::Key, L::Elem> = BTreeMap::new();
        let z = self.logic.zero();
        vals.insert(self.logic.key(&z), z);
        let mut stack: Vec<QSet<L::Elem>> = us.to_vec();
        while let Some(s) = stack.pop() {
            if !seen_nodes.insert(s.id()) {
                continue;
            }
            for (c, v) in s.dom() {
                vals.entry(self.logic.key(v)).or_insert_with(|| v.clone());
                stack.push(c.clone());
            }
        }
        vals.into_values().collect()
    }

    /// com(u1, ..., un): the commutator of the union of the supports.
    pub fn com(&self, us: &[QSet<L::Elem>]) -> L::Elem {
        commutator_set(&self.logic, &self.support_all(us))
    }

    /// All sets of rank at most `max_rank` whose domains have at most
    /// `max_dom` children, with values drawn from `values`.
    pub fn enumerate(&self, values: &[L::Elem], max_rank: usize, max_dom: usize) -> Vec<QSet<L::Elem>> {
        let mut all = vec![self.empty()];
        for _ in 0..max_rank {
            let mut next = vec![self.empty()];
            let base = all.clone();
            let mut chosen = Vec::new();
            self.enum_subsets(&base, 0, max_dom, values, &mut chosen, &mut next);
            let mut ids = std::collections::HashSet::new();
            next.retain(|s| ids.insert(s.id()));
            all = next;
        }
        all
    }

    fn enum_subsets(
        &self,
        base: &[QSet<L::Elem>],
        start: usize,
        left: usize,
        values: &[L::Elem],
        chosen: &mut Vec<(QSet<L::Elem>, L::Elem)>,
        out: &mut Vec<QSet<L::Elem>>,
    ) {
        if left == 0 {
            return;
        }
        for i in start..base.len() {
            for v in values {
                chosen.push((base[i].clone(), v.clone()));
                out.push(self.set(chosen.clone()).expect("distinct children"));
                self.enum_subsets(base, i + 1, left - 1, values, chosen, out);
                chosen.pop();
            }
        }
    }

    /// Adds children valued 0; truth values never change.
    pub fn pad(&self, u: &QSet<L::Elem>, extra: &[QSet<L::Elem>]) -> Result<QSet<L::Elem>, QvuError> {
        let mut entries: Vec<_> = u.dom().to_vec();
        for x in extra {
            if u.value(x).is_none() && !entries.iter().any(|(c, _)| c == x) {
                entries.push((x.clone(), self.logic.zero()));
            }
        }
        self.set(entries)
    }

    /// Rebuilds a set inside another universe, mapping every value.
    /// Fails when some value has no image.
    pub fn transport<M: Logic>(
        &self,
        target: &Universe<M>,
        u: &QSet<L::Elem>,
        f: &dyn Fn(&L::Elem) -> Option<M::Elem>,
    ) -> Result<QSet<M::Elem>, QvuError> {
        let mut memo = HashMap::new();
        self.transport_rec(target, u, f, &mut memo)
    }

    fn transport_rec<M: Logic>(
        &self,
        target: &Universe<M>,
        u: &QSet<L::Elem>,
        f: &dyn Fn(&L::Elem) -> Option<M::Elem>,
        memo: &mut HashMap<u64, QSet<M::Elem>>,
    ) -> Result<QSet<M::Elem>, QvuError> {
        if let Some(s) = memo.get(&u.id()) {
            return Ok(s.clone());
        }
        let mut entries = Vec::new();
        for (c, v) in u.dom() {
            let img = f(v).ok_or_else(|| QvuError::NotInSublogic(self.logic.show(v)))?;
            entries.push((self.transport_rec(target, c, f, memo)?, img));
        }
        let s = target.set(entries)?;
        memo.insert(u.id(), s.clone());
        Ok(s)
    }

    /// Readable form, children first: `{{}: a, {{}: 1}: b}`.
    pub fn describe(&self, u: &QSet<L::Elem>) -> String {
        if u.dom().is_empty() {
            return "{}".into();
        }
        let parts: Vec<String> = u
            .dom()
            .iter()
            .map(|(c, v)| format!("{}: {}", self.describe(c), self.logic.show(v)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests;

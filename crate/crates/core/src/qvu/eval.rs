use super::{QSet, QvuError, Universe};
use crate::connectives::{conditional, conjunction, Interpretation};
use crate::formula::{parse, Formula};
use crate::logic::Logic;
use rustc_hash::FxHashMap;
use std::collections::HashMap;
use std::sync::RwLock;

pub type Env<E> = HashMap<String, QSet<E>>;

type Memo<E> = RwLock<FxHashMap<(u64, u64), E>>;

/// Truth values under one interpretation, with memoised atomic formulas.
///
/// `u = v` and `u in v` are cached per ordered pair of node ids. A child
/// evaluator reads its parent's cache and writes only its own, which keeps
/// short-lived sets out of the long-lived cache.
pub struct Evaluator<'a, L: Logic> {
    uni: &'a Universe<L>,
    interp: Interpretation,
    memoize: bool,
    eq_memo: Memo<L::Elem>,
    mem_memo: Memo<L::Elem>,
    parent: Option<&'a Evaluator<'a, L>>,
}

impl<'a, L: Logic> Evaluator<'a, L> {
    pub fn new(uni: &'a Universe<L>, interp: Interpretation) -> Self {
        Evaluator {
            uni,
            interp,
            memoize: true,
            eq_memo: RwLock::new(FxHashMap::default()),
            mem_memo: RwLock::new(FxHashMap::default()),
            parent: None,
        }
    }

    /// Plain recursion without any cache, for checking the cache.
    pub fn without_memo(uni: &'a Universe<L>, interp: Interpretation) -> Self {
        let mut e = Evaluator::new(uni, interp);
        e.memoize = false;
        e
    }

    pub fn child(&'a self) -> Evaluator<'a, L> {
        Evaluator {
            uni: self.uni,
            interp: self.interp,
            memoize: self.memoize,
            eq_memo: RwLock::new(FxHashMap::default()),
            mem_memo: RwLock::new(FxHashMap::default()),
            parent: Some(self),
        }
    }

    pub fn universe(&self) -> &'a Universe<L> {
        self.uni
    }

    pub fn logic(&self) -> &'a L {
        self.uni.logic()
    }

    pub fn interpretation(&self) -> Interpretation {
        self.interp
    }

    /// Cached atomic values held by this evaluator (not its parent).
    pub fn memo_len(&self) -> usize {
        self.eq_memo.read().unwrap().len() + self.mem_memo.read().unwrap().len()
    }

    #[inline]
    fn implies(&self, p: &L::Elem, q: &L::Elem) -> L::Elem {
        conditional(self.logic(), self.interp.cond, p, q)
    }

    #[inline]
    fn star(&self, p: &L::Elem, q: &L::Elem) -> L::Elem {
        conjunction(self.logic(), self.interp.conj, p, q)
    }

    fn lookup(&self, eq: bool, key: (u64, u64)) -> Option<L::Elem> {
        let mut cur = Some(self);
        while let Some(ev) = cur {
            let tab = if eq { &ev.eq_memo } else { &ev.mem_memo };
            if let Some(v) = tab.read().unwrap().get(&key) {
                return Some(v.clone());
            }
            cur = ev.parent;
        }
        None
    }

    fn store(&self, eq: bool, key: (u64, u64), v: &L::Elem) {
        let tab = if eq { &self.eq_memo } else { &self.mem_memo };
        tab.write().unwrap().insert(key, v.clone());
    }

    /// ⟦u = v⟧ = ⋀ u(x) → ⟦x ∈ v⟧  ∧  ⋀ v(y) → ⟦y ∈ u⟧.
    pub fn eq(&self, u: &QSet<L::Elem>, v: &QSet<L::Elem>) -> L::Elem {
        let key = (u.id(), v.id());
        if self.memoize {
            if let Some(r) = self.lookup(true, key) {
                return r;
            }
        }
        let l = self.logic();
        let mut acc = l.one();
        for (x, ux) in u.dom() {
            acc = l.meet(&acc, &self.implies(ux, &self.mem(x, v)));
            if l.is_zero(&acc) {
                break;
            }
        }
        if !l.is_zero(&acc) {
            for (y, vy) in v.dom() {
                acc = l.meet(&acc, &self.implies(vy, &self.mem(y, u)));
                if l.is_zero(&acc) {
                    break;
                }
            }
        }
        if self.memoize {
            self.store(true, key, &acc);
        }
        acc
    }

    /// ⟦u ∈ v⟧ = ⋁ v(y) * ⟦y = u⟧.
    pub fn mem(&self, u: &QSet<L::Elem>, v: &QSet<L::Elem>) -> L::Elem {
        let key = (u.id(), v.id());
        if self.memoize {
            if let Some(r) = self.lookup(false, key) {
                return r;
            }
        }
        let l = self.logic();
        let mut acc = l.zero();
        for (y, vy) in v.dom() {
            acc = l.join(&acc, &self.star(vy, &self.eq(y, u)));
            if l.is_one(&acc) {
                break;
            }
        }
        if self.memoize {
            self.store(false, key, &acc);
        }
        acc
    }

    /// ⟦u ⊆ v⟧ = ⋀ u(x) → ⟦x ∈ v⟧.
    pub fn subset(&self, u: &QSet<L::Elem>, v: &QSet<L::Elem>) -> L::Elem {
        let l = self.logic();
        let mut acc = l.one();
        for (x, ux) in u.dom() {
            acc = l.meet(&acc, &self.implies(ux, &self.mem(x, v)));
        }
        acc
    }

    pub fn eval(&self, f: &Formula, env: &Env<L::Elem>) -> Result<L::Elem, QvuError> {
        let names: Vec<String> = env.keys().cloned().collect();
        let c = Compiled::new(f, &names)?;
        let args: Vec<&QSet<L::Elem>> = names.iter().map(|n| &env[n]).collect();
        for a in &args {
            if a.universe_id() != self.uni.id() {
                return Err(QvuError::MixedUniverse);
            }
        }
        Ok(self.run(&c, &args))
    }

    pub fn eval_str(&self, src: &str, env: &Env<L::Elem>) -> Result<L::Elem, QvuError> {
        let f = parse(src).map_err(|e| QvuError::Literal(e.to_string()))?;
        self.eval(&f, env)
    }

    /// Evaluates a compiled formula; `args` follow the compiled parameter order.
    pub fn run(&self, c: &Compiled, args: &[&QSet<L::Elem>]) -> L::Elem {
        assert_eq!(args.len(), c.params.len(), "wrong number of arguments");
        let mut stack: Vec<&QSet<L::Elem>> = Vec::with_capacity(args.len() + c.depth);
        stack.extend_from_slice(args);
        self.node(&c.root, &mut stack)
    }

    fn node<'s>(&self, n: &CNode, stack: &mut Vec<&'s QSet<L::Elem>>) -> L::Elem {
        let l = self.logic();
        match n {
            CNode::True => l.one(),
            CNode::False => l.zero(),
            CNode::Eq(a, b) => self.eq(stack[*a], stack[*b]),
            CNode::Mem(a, b) => self.mem(stack[*a], stack[*b]),
            CNode::Sub(a, b) => self.subset(stack[*a], stack[*b]),
            CNode::Not(f) => l.ortho(&self.node(f, stack)),
            CNode::And(f, g) => {
                let x = self.node(f, stack);
                l.meet(&x, &self.node(g, stack))
            }
            CNode::Or(f, g) => {
                let x = self.node(f, stack);
                l.join(&x, &self.node(g, stack))
            }
            CNode::Imp(f, g) => {
                let x = self.node(f, stack);
                self.implies(&x, &self.node(g, stack))
            }
            CNode::Iff(f, g) => {
                let x = self.node(f, stack);
                let y = self.node(g, stack);
                l.meet(&self.implies(&x, &y), &self.implies(&y, &x))
            }
            CNode::Forall(src, body) => {
                let set: &'s QSet<L::Elem> = stack[*src];
                let mut acc = l.one();
                for (x, ux) in set.dom() {
                    stack.push(x);
                    let b = self.node(body, stack);
                    stack.pop();
                    acc = l.meet(&acc, &self.implies(ux, &b));
                }
                acc
            }
            CNode::Exists(src, body) => {
                let set: &'s QSet<L::Elem> = stack[*src];
                let mut acc = l.zero();
                for (x, ux) in set.dom() {
                    stack.push(x);
                    let b = self.node(body, stack);
                    stack.pop();
                    acc = l.join(&acc, &self.star(ux, &b));
                }
                acc
            }
            CNode::ForallOver(srcs, body) | CNode::ExistsOver(srcs, body) => {
                let all = matches!(n, CNode::ForallOver(..));
                let mut acc = if all { l.one() } else { l.zero() };
                for &s in srcs {
                    let x = stack[s];
                    stack.push(x);
                    let b = self.node(body, stack);
                    stack.pop();
                    acc = if all { l.meet(&acc, &b) } else { l.join(&acc, &b) };
                }
                acc
            }
        }
    }
}

#[derive(Clone, Debug)]
enum CNode {
    True,
    False,
    Eq(usize, usize),
    Mem(usize, usize),
    Sub(usize, usize),
    Not(Box<CNode>),
    And(Box<CNode>, Box<CNode>),
    Or(Box<CNode>, Box<CNode>),
    Imp(Box<CNode>, Box<CNode>),
    Iff(Box<CNode>, Box<CNode>),
    Forall(usize, Box<CNode>),
    Exists(usize, Box<CNode>),
    ForallOver(Vec<usize>, Box<CNode>),
    ExistsOver(Vec<usize>, Box<CNode>),
}

/// A formula with its variables resolved to argument positions.
#[derive(Clone, Debug)]
pub struct Compiled {
    root: CNode,
    params: Vec<String>,
    depth: usize,
    source: Formula,
}

impl Compiled {
    /// Resolves every name against `params` (then bound variables).
    /// Unknown names are an error.
    pub fn new<S: AsRef<str>>(f: &Formula, params: &[S]) -> Result<Self, QvuError> {
        let mut scope: Vec<String> = params.iter().map(|s| s.as_ref().to_string()).collect();
        let np = scope.len();
        let mut depth = 0;
        let root = compile(f, &mut scope, &mut depth, 0)?;
        Ok(Compiled { root, params: scope[..np].to_vec(), depth, source: f.clone() })
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn formula(&self) -> &Formula {
        &self.source
    }
}

fn compile(f: &Formula, scope: &mut Vec<String>, depth: &mut usize, cur: usize) -> Result<CNode, QvuError> {
    use Formula as F;
    let slot = |scope: &Vec<String>, n: &str| {
        scope.iter().rposition(|s| s == n).ok_or_else(|| QvuError::Unbound(n.to_string()))
    };
    let bx = |n: CNode| Box::new(n);
    Ok(match f {
        F::True => CNode::True,
        F::False => CNode::False,
        F::Eq(a, b) => CNode::Eq(slot(scope, a)?, slot(scope, b)?),
        F::Mem(a, b) => CNode::Mem(slot(scope, a)?, slot(scope, b)?),
        F::Sub(a, b) => CNode::Sub(slot(scope, a)?, slot(scope, b)?),
        F::Not(g) => CNode::Not(bx(compile(g, scope, depth, cur)?)),
        F::And(g, h) => CNode::And(bx(compile(g, scope, depth, cur)?), bx(compile(h, scope, depth, cur)?)),
        F::Or(g, h) => CNode::Or(bx(compile(g, scope, depth, cur)?), bx(compile(h, scope, depth, cur)?)),
        F::Imp(g, h) => CNode::Imp(bx(compile(g, scope, depth, cur)?), bx(compile(h, scope, depth, cur)?)),
        F::Iff(g, h) => CNode::Iff(bx(compile(g, scope, depth, cur)?), bx(compile(h, scope, depth, cur)?)),
        F::Forall(x, t, g) | F::Exists(x, t, g) => {
            let src = slot(scope, t)?;
            scope.push(x.clone());
            *depth = (*depth).max(cur + 1);
            let body = compile(g, scope, depth, cur + 1);
            scope.pop();
            let body = bx(body?);
            if matches!(f, F::Forall(..)) {
                CNode::Forall(src, body)
            } else {
                CNode::Exists(src, body)
            }
        }
        F::ForallOver(x, ts, g) | F::ExistsOver(x, ts, g) => {
            let srcs = ts.iter().map(|t| slot(scope, t)).collect::<Result<Vec<_>, _>>()?;
            scope.push(x.clone());
            *depth = (*depth).max(cur + 1);
            let body = compile(g, scope, depth, cur + 1);
            scope.pop();
            let body = bx(body?);
            if matches!(f, F::ForallOver(..)) {
                CNode::ForallOver(srcs, body)
            } else {
                CNode::ExistsOver(srcs, body)
            }
        }
    })
}

//! Internal reals as finite spectral step families over the rationals.
//!
//! A family with jumps (λ1, E1) < ... < (λn, En) denotes the map
//! u(ř) = E(r): 0 below λ1, Ei on [λi, λi+1) and En = 1 from λn on. All
//! truth values are infima or suprema of step functions of r, so they are
//! computed exactly at finitely many representative points.

mod doc;
mod grid;
mod operator;

pub use doc::{FamilyDoc, JumpValue};
pub use grid::{gridded_real_predicate, real_predicate_formula, Grid, REAL_PREDICATE};
pub use operator::{
    com_internal_kernel, internal_to_operator, operator_to_internal, rational_to_f64, snap_rational,
    snapped_hermitian, spectral_order_pair, truth_eq_kernel, SnapConfig,
};

use crate::connectives::{biconditional, biconditional_closed, conditional, Kind};
use crate::logic::{commutator_set, Logic};
use crate::report::{Law, Report};
use num::{BigInt, BigRational, One};

pub type Rational = BigRational;

#[derive(Debug, thiserror::Error)]
pub enum RealsError {
    #[error("a step family needs at least one jump")]
    Empty,
    #[error("jump points must be strictly increasing (jump {0})")]
    NotIncreasing(usize),
    #[error("not an internal real: {0}")]
    Invalid(String),
    #[error(
        "eigenvalue {value} has no rational within {tol:e} with denominator at most {max_den}; \
         increase the snap tolerance"
    )]
    Snap { value: f64, tol: f64, max_den: u64 },
    #[error("eigenvalues {0} and {1} snap to the same rational {2}; decrease the snap tolerance")]
    Collision(f64, f64, String),
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("malformed family document: {0}")]
    Document(String),
}

pub fn rational(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn integer(p: i64) -> Rational {
    BigRational::from_integer(BigInt::from(p))
}

/// A right-continuous step family of lattice elements.
#[derive(Clone, Debug)]
pub struct StepFamily<E> {
    jumps: Vec<(Rational, E)>,
}

impl<E: Clone> StepFamily<E> {
    /// Wraps jumps without checking anything; see [`validate_internal_real`].
    pub fn unchecked(jumps: Vec<(Rational, E)>) -> Self {
        StepFamily { jumps }
    }

    /// A validated internal real.
    pub fn new<L: Logic<Elem = E> + ?Sized>(l: &L, jumps: Vec<(Rational, E)>) -> Result<Self, RealsError> {
        if jumps.is_empty() {
            return Err(RealsError::Empty);
        }
        if let Some(i) = jumps.windows(2).position(|w| w[0].0 >= w[1].0) {
            return Err(RealsError::NotIncreasing(i + 1));
        }
        let f = StepFamily { jumps };
        let rep = validate_internal_real(l, &f);
        if !rep.ok() {
            let bad: Vec<String> = rep
                .laws
                .iter()
                .filter(|x| !x.ok())
                .map(|x| match &x.example {
                    Some(e) => format!("{} ({e})", x.name),
                    None => x.name.clone(),
                })
                .collect();
            return Err(RealsError::Invalid(bad.join("; ")));
        }
        Ok(f)
    }

    /// The constant r̃: a single jump to 1 at r.
    pub fn constant<L: Logic<Elem = E> + ?Sized>(l: &L, r: Rational) -> Self {
        StepFamily { jumps: vec![(r, l.one())] }
    }

    pub fn jumps(&self) -> &[(Rational, E)] {
        &self.jumps
    }

    pub fn len(&self) -> usize {
        self.jumps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jumps.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = &Rational> {
        self.jumps.iter().map(|(r, _)| r)
    }

    /// u(ř) = E(r).
    pub fn at<L: Logic<Elem = E> + ?Sized>(&self, l: &L, r: &Rational) -> E {
        let i = self.jumps.partition_point(|(x, _)| x <= r);
        if i == 0 {
            l.zero()
        } else {
            self.jumps[i - 1].1.clone()
        }
    }

    /// ⋁_{s<r} u(š): the value at the last jump strictly below r.
    pub fn below<L: Logic<Elem = E> + ?Sized>(&self, l: &L, r: &Rational) -> E {
        let i = self.jumps.partition_point(|(x, _)| x < r);
        if i == 0 {
            l.zero()
        } else {
            self.jumps[i - 1].1.clone()
        }
    }

    /// Increments Ei ∧ Ei−1⊥ (E0 = 0), one per jump.
    pub fn increments<L: Logic<Elem = E> + ?Sized>(&self, l: &L) -> Vec<(Rational, E)> {
        let mut prev = l.zero();
        self.jumps
            .iter()
            .map(|(r, e)| {
                let d = l.meet(e, &l.ortho(&prev));
                prev = e.clone();
                (r.clone(), d)
            })
            .collect()
    }

    /// The jump values, which together with 0 and 1 make up L(u).
    pub fn support(&self) -> Vec<E> {
        self.jumps.iter().map(|(_, e)| e.clone()).collect()
    }

    pub fn map<M: Clone>(&self, f: impl Fn(&E) -> M) -> StepFamily<M> {
        StepFamily { jumps: self.jumps.iter().map(|(r, e)| (r.clone(), f(e))).collect() }
    }
}

/// Union of the jump points plus one rational below all of them, sorted.
pub fn representative_points<E: Clone>(fams: &[&StepFamily<E>]) -> Vec<Rational> {
    let mut pts: Vec<Rational> = fams.iter().flat_map(|f| f.points().cloned()).collect();
    pts.sort();
    pts.dedup();
    if let Some(first) = pts.first().cloned() {
        pts.insert(0, first - Rational::one());
    }
    pts
}

/// Checks conditions (a) ⋁ u(ř) = 1, (b) ⋀ u(ř) = 0, (c) right continuity,
/// monotonicity, absence of null jumps and com(u) = 1.
pub fn validate_internal_real<L: Logic + ?Sized>(l: &L, u: &StepFamily<L::Elem>) -> Report {
    let mut rep = Report::new("internal real");
    let js = u.jumps();
    let mut inc = Law::new("jump points strictly increasing");
    for (i, w) in js.windows(2).enumerate() {
        inc.record(w[0].0 < w[1].0, || format!("jump {} at {} follows {}", i + 1, w[1].0, w[0].0));
    }
    let mut mono = Law::new("monotone: E(i) <= E(i+1)");
    for w in js.windows(2) {
        mono.record(l.leq(&w[0].1, &w[1].1), || {
            format!("E at {} = {} is not below E at {} = {}", w[0].0, l.show(&w[0].1), w[1].0, l.show(&w[1].1))
        });
    }
    let mut last = Law::new("last jump value is 1");
    if let Some((r, e)) = js.last() {
        last.record(l.is_one(e), || format!("value {} at {r}", l.show(e)));
    }
    let mut null = Law::new("no null jumps");
    let mut prev = l.zero();
    for (r, e) in js {
        null.record(!l.same(e, &prev), || format!("no change at {r}"));
        prev = e.clone();
    }
    // The points below and at every jump, each followed by a point inside
    // the same step.
    let mut pts: Vec<Rational> = u.points().cloned().collect();
    if let Some(f) = pts.first().cloned() {
        pts.insert(0, f - Rational::one());
    }
    let inner: Vec<Rational> = (0..pts.len())
        .map(|i| match pts.get(i + 1) {
            Some(n) => (&pts[i] + n) / integer(2),
            None => &pts[i] + Rational::one(),
        })
        .collect();
    let vals: Vec<L::Elem> = pts.iter().chain(&inner).map(|r| u.at(l, r)).collect();
    let mut a = Law::new("(a) join of u(r) = 1");
    let top = l.join_all(vals.iter());
    a.record(l.is_one(&top), || format!("join is {}", l.show(&top)));
    let mut b = Law::new("(b) meet of u(r) = 0");
    let bot = l.meet_all(vals.iter());
    b.record(l.is_zero(&bot), || format!("meet is {}", l.show(&bot)));
    let mut c = Law::new("(c) u(r) = meet of u(s) over s > r");
    for (i, r) in pts.iter().enumerate() {
        let above: Vec<L::Elem> = inner[i..].iter().chain(&pts[i + 1..]).map(|s| u.at(l, s)).collect();
        let inf = l.meet_all(above.iter());
        let ur = u.at(l, r);
        c.record(l.same(&ur, &inf), || format!("at {r}: u = {}, infimum = {}", l.show(&ur), l.show(&inf)));
    }
    let mut com = Law::new("jumps commute: com(u) = 1");
    let cu = commutator_set(l, &u.support());
    com.record(l.is_one(&cu), || format!("com(u) = {}", l.show(&cu)));
    for law in [inc, mono, last, null, a, b, c, com] {
        rep.push(law);
    }
    rep
}

/// ⟦u = v⟧ = ⋀_r (u(ř) ↔ v(ř)), via the closed form shared by S, C and R.
pub fn truth_eq<L: Logic + ?Sized>(l: &L, u: &StepFamily<L::Elem>, v: &StepFamily<L::Elem>) -> L::Elem {
    let pts = representative_points(&[u, v]);
    let parts: Vec<L::Elem> = pts.iter().map(|r| biconditional_closed(l, &u.at(l, r), &v.at(l, r))).collect();
    l.meet_all(parts.iter())
}

/// ⟦u = v⟧ with the biconditional (P → Q) ∧ (Q → P) of the given kind.
pub fn truth_eq_kind<L: Logic + ?Sized>(
    l: &L,
    k: Kind,
    u: &StepFamily<L::Elem>,
    v: &StepFamily<L::Elem>,
) -> L::Elem {
    let pts = representative_points(&[u, v]);
    let parts: Vec<L::Elem> = pts.iter().map(|r| biconditional(l, k, &u.at(l, r), &v.at(l, r))).collect();
    l.meet_all(parts.iter())
}

/// The integrands v(ř) →k u(ř) of ⟦u ≤ v⟧ at the representative points.
pub fn le_integrands<L: Logic + ?Sized>(
    l: &L,
    u: &StepFamily<L::Elem>,
    v: &StepFamily<L::Elem>,
    k: Kind,
) -> Vec<(Rational, L::Elem)> {
    representative_points(&[u, v])
        .into_iter()
        .map(|r| {
            let e = conditional(l, k, &v.at(l, &r), &u.at(l, &r));
            (r, e)
        })
        .collect()
}

/// ⟦u ≤ v⟧ := ⟦v ⊆ u⟧ = ⋀_r (v(ř) →k u(ř)).
pub fn truth_le<L: Logic + ?Sized>(
    l: &L,
    u: &StepFamily<L::Elem>,
    v: &StepFamily<L::Elem>,
    k: Kind,
) -> L::Elem {
    let parts: Vec<L::Elem> = le_integrands(l, u, v, k).into_iter().map(|(_, e)| e).collect();
    l.meet_all(parts.iter())
}

/// ⟦u ⊆ v⟧ = ⋀_r (u(ř) →k v(ř)).
pub fn truth_sub<L: Logic + ?Sized>(
    l: &L,
    u: &StepFamily<L::Elem>,
    v: &StepFamily<L::Elem>,
    k: Kind,
) -> L::Elem {
    truth_le(l, v, u, k)
}

/// ⟦u < v⟧ = ⟦u ≤ v⟧ ∧ ⟦u = v⟧⊥.
pub fn truth_lt<L: Logic + ?Sized>(
    l: &L,
    u: &StepFamily<L::Elem>,
    v: &StepFamily<L::Elem>,
    k: Kind,
) -> L::Elem {
    l.meet(&truth_le(l, u, v, k), &l.ortho(&truth_eq(l, u, v)))
}

/// ⟦u ≤ t̃⟧ = ⋀_{q ≥ t} u(q̌) = u(ť).
pub fn truth_le_const<L: Logic + ?Sized>(l: &L, u: &StepFamily<L::Elem>, t: &Rational) -> L::Elem {
    u.at(l, t)
}

/// ⟦t̃ < u⟧ = u(ť)⊥.
pub fn truth_const_lt<L: Logic + ?Sized>(l: &L, t: &Rational, u: &StepFamily<L::Elem>) -> L::Elem {
    l.ortho(&u.at(l, t))
}

/// ⟦u = t̃⟧ = u(ť) ∧ (⋁_{r<t} u(ř))⊥, the eigenprojection at t.
pub fn truth_eq_const<L: Logic + ?Sized>(l: &L, u: &StepFamily<L::Elem>, t: &Rational) -> L::Elem {
    l.meet(&u.at(l, t), &l.ortho(&u.below(l, t)))
}

/// The value of ⟦s̃ < u ≤ t̃⟧ and a warning for an empty interval.
#[derive(Clone, Debug)]
pub struct IntervalValue<E> {
    pub value: E,
    pub warning: Option<String>,
}

/// ⟦s̃ < u ≤ t̃⟧ = u(ť) ∧ u(š)⊥ = E(t) − E(s).
pub fn truth_interval<L: Logic + ?Sized>(
    l: &L,
    u: &StepFamily<L::Elem>,
    s: &Rational,
    t: &Rational,
) -> IntervalValue<L::Elem> {
    if s >= t {
        return IntervalValue { value: l.zero(), warning: Some(format!("empty interval ({s}, {t}]")) };
    }
    IntervalValue { value: l.meet(&u.at(l, t), &l.ortho(&u.at(l, s))), warning: None }
}

/// The spectral order X ≼ Y: E^Y(λ) ≤ E^X(λ) for every λ.
pub fn spectral_order<L: Logic + ?Sized>(l: &L, x: &StepFamily<L::Elem>, y: &StepFamily<L::Elem>) -> bool {
    representative_points(&[x, y]).iter().all(|r| l.leq(&y.at(l, r), &x.at(l, r)))
}

/// com(u, v) as the commutator of L(u, v).
pub fn com_internal<L: Logic + ?Sized>(l: &L, u: &StepFamily<L::Elem>, v: &StepFamily<L::Elem>) -> L::Elem {
    let mut items = u.support();
    items.extend(v.support());
    commutator_set(l, &items)
}

/// com(u, v) as ⋁_{k,l} D^u_k ∧ D^v_l over the increments of u and v.
pub fn com_increments<L: Logic + ?Sized>(
    l: &L,
    u: &StepFamily<L::Elem>,
    v: &StepFamily<L::Elem>,
) -> L::Elem {
    let du = u.increments(l);
    let dv = v.increments(l);
    let mut parts = Vec::new();
    for (_, a) in &du {
        for (_, b) in &dv {
            parts.push(l.meet(a, b));
        }
    }
    l.join_all(parts.iter())
}

/// ⋀_{k,l} ⟦u_k = u_l⟧.
pub fn chain_eq<L: Logic + ?Sized>(l: &L, us: &[StepFamily<L::Elem>]) -> L::Elem {
    let mut acc = l.one();
    for (i, u) in us.iter().enumerate() {
        for v in &us[i + 1..] {
            acc = l.meet(&acc, &truth_eq(l, u, v));
        }
    }
    acc
}

/// Equality laws for internal reals over every triple of `reals`: ⟦x̌ = y̌⟧ ∧
/// ⟦x̌ ∈ v⟧ ≤ ⟦y̌ ∈ v⟧, ⟦x̌ ∈ u⟧ ∧ ⟦u ⊆ v⟧ ≤ ⟦x̌ ∈ v⟧, ⟦x̌ ∈ u⟧ ∧ ⟦u = v⟧ ≤
/// ⟦x̌ ∈ v⟧, transitivity of =, and transitivity of ⊆. The last is expected
/// to fail unless every value commutes.
pub fn check_equality_axioms<L: Logic + ?Sized>(l: &L, reals: &[StepFamily<L::Elem>], k: Kind) -> Report {
    let mut rep = Report::new(format!("equality axioms for internal reals under {k}"));
    let refs: Vec<&StepFamily<L::Elem>> = reals.iter().collect();
    let pts = representative_points(&refs);
    let mut i1 = Law::new("(i) [x = y] & [x in v] <= [y in v]");
    for v in reals {
        for x in &pts {
            for y in &pts {
                let lhs = if x == y { v.at(l, x) } else { l.zero() };
                i1.record(l.leq(&lhs, &v.at(l, y)), || format!("x = {x}, y = {y}"));
            }
        }
    }
    let mut i2 = Law::new("(ii) [x in u] & [u sub v] <= [x in v]");
    let mut i3 = Law::new("(iii) [x in u] & [u = v] <= [x in v]");
    let mut i4 = Law::new("(iv) [u = v] & [v = w] <= [u = w]");
    let mut i5 = Law::new("(v) [u sub v] & [v sub w] <= [u sub w]");
    let mut vals = Vec::new();
    for u in reals {
        vals.extend(u.support());
    }
    i5 = i5.expecting_failure(!vals.iter().all(|a| vals.iter().all(|b| l.commutes(a, b))));
    let n = reals.len();
    let eq: Vec<Vec<L::Elem>> = (0..n).map(|i| (0..n).map(|j| truth_eq(l, &reals[i], &reals[j])).collect()).collect();
    let sub: Vec<Vec<L::Elem>> =
        (0..n).map(|i| (0..n).map(|j| truth_sub(l, &reals[i], &reals[j], k)).collect()).collect();
    for a in 0..n {
        for b in 0..n {
            for x in &pts {
                let ux = reals[a].at(l, x);
                let vx = reals[b].at(l, x);
                i2.record(l.leq(&l.meet(&ux, &sub[a][b]), &vx), || format!("u #{a}, v #{b}, x = {x}"));
                i3.record(l.leq(&l.meet(&ux, &eq[a][b]), &vx), || format!("u #{a}, v #{b}, x = {x}"));
            }
            for c in 0..n {
                i4.record(l.leq(&l.meet(&eq[a][b], &eq[b][c]), &eq[a][c]), || format!("u #{a}, v #{b}, w #{c}"));
                let lhs = l.meet(&sub[a][b], &sub[b][c]);
                i5.record(l.leq(&lhs, &sub[a][c]), || {
                    format!(
                        "u #{a}, v #{b}, w #{c}: lhs {} but [u sub w] = {}",
                        l.show(&lhs),
                        l.show(&sub[a][c])
                    )
                });
            }
        }
    }
    for law in [i1, i2, i3, i4, i5] {
        rep.push(law);
    }
    rep
}

/// Every internal real on `l` whose jumps lie in `points` and whose values
/// form a chain drawn from `values` (0 and 1 excluded automatically).
pub fn enumerate_reals<L: Logic + ?Sized>(l: &L, values: &[L::Elem], points: &[Rational]) -> Vec<StepFamily<L::Elem>> {
    let mut out = Vec::new();
    let mut cur: Vec<(Rational, L::Elem)> = Vec::new();
    fn rec<L: Logic + ?Sized>(
        l: &L,
        values: &[L::Elem],
        points: &[Rational],
        idx: usize,
        cur: &mut Vec<(Rational, L::Elem)>,
        out: &mut Vec<StepFamily<L::Elem>>,
    ) {
        if idx == points.len() {
            return;
        }
        let prev = cur.last().map(|(_, e)| e.clone()).unwrap_or_else(|| l.zero());
        // End the family here with a jump to 1.
        if !l.is_one(&prev) {
            cur.push((points[idx].clone(), l.one()));
            out.push(StepFamily::unchecked(cur.clone()));
            cur.pop();
        }
        // A proper intermediate jump, then continue.
        for v in values {
            if l.is_zero(v) || l.is_one(v) || !l.leq(&prev, v) || l.same(&prev, v) {
                continue;
            }
            cur.push((points[idx].clone(), v.clone()));
            rec(l, values, points, idx + 1, cur, out);
            cur.pop();
        }
        // No jump at this point.
        rec(l, values, points, idx + 1, cur, out);
    }
    rec(l, values, points, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests;

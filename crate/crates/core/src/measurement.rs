//! Born-rule and successive projective-measurement probabilities, and the
//! operational meaning of ⟦X̃ ≤ Ỹ⟧ under each conditional.
//!
//! Outcomes are labelled by the snapped rational eigenvalues of the
//! internal real of each observable, so `x ≤ y` between outcomes is the
//! same comparison the truth value ⟦X̃ ≤ Ỹ⟧ is built from.

use crate::connectives::Kind;
use crate::hilbert::random::{haar_state, TestRng};
use crate::hilbert::{Observable, Projection, ProjectionLattice, StateVector};
use crate::reals::{operator_to_internal, truth_le, Rational, RealsError, SnapConfig, StepFamily};
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum MeasurementError {
    #[error("dimension mismatch: observable has dimension {0}, state {1}")]
    Dimension(usize, usize),
    #[error(transparent)]
    Reals(#[from] RealsError),
}

/// Eigenvalue and eigenprojection pairs, sorted by eigenvalue.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub parts: Vec<(Rational, Projection)>,
}

impl Spectrum {
    pub fn of(x: &Observable, snap: &SnapConfig) -> Result<Self, MeasurementError> {
        Ok(Spectrum::from_family(&operator_to_internal(x, snap)?, x.dim()))
    }

    pub fn from_family(u: &StepFamily<Projection>, dim: usize) -> Self {
        Spectrum { parts: u.increments(&ProjectionLattice::new(dim)) }
    }

    pub fn dim(&self) -> usize {
        self.parts.first().map(|(_, p)| p.dim()).unwrap_or(0)
    }
}

/// P^X_ψ(x) for each eigenvalue x.
#[derive(Clone, Debug, Serialize)]
pub struct OutcomeDistribution {
    pub outcomes: Vec<(String, f64)>,
    #[serde(skip)]
    pub values: Vec<Rational>,
}

impl OutcomeDistribution {
    pub fn total(&self) -> f64 {
        self.outcomes.iter().map(|(_, p)| p).sum()
    }

    pub fn prob(&self, x: &Rational) -> f64 {
        self.values.iter().position(|v| v == x).map(|i| self.outcomes[i].1).unwrap_or(0.0)
    }
}

/// P_ψ(first = x, second = y) for a measurement of `first` followed by
/// one of `second`.
#[derive(Clone, Debug, Serialize)]
pub struct JointDistribution {
    pub outcomes: Vec<(String, String, f64)>,
    #[serde(skip)]
    pub values: Vec<(Rational, Rational)>,
}

impl JointDistribution {
    pub fn total(&self) -> f64 {
        self.outcomes.iter().map(|(_, _, p)| p).sum()
    }

    pub fn prob(&self, x: &Rational, y: &Rational) -> f64 {
        self.values.iter().position(|(a, b)| a == x && b == y).map(|i| self.outcomes[i].2).unwrap_or(0.0)
    }

    /// Σ_y P(x, y).
    pub fn first_marginal(&self, x: &Rational) -> f64 {
        self.values.iter().zip(&self.outcomes).filter(|((a, _), _)| a == x).map(|(_, o)| o.2).sum()
    }
}

fn check_dim(s: &Spectrum, psi: &StateVector) -> Result<(), MeasurementError> {
    if s.dim() != psi.dim() {
        return Err(MeasurementError::Dimension(s.dim(), psi.dim()));
    }
    Ok(())
}

/// P^X_ψ(x) = ‖E^X({x})ψ‖².
pub fn born(x: &Spectrum, psi: &StateVector) -> Result<OutcomeDistribution, MeasurementError> {
    check_dim(x, psi)?;
    Ok(OutcomeDistribution {
        outcomes: x.parts.iter().map(|(r, p)| (r.to_string(), psi.prob(p))).collect(),
        values: x.parts.iter().map(|(r, _)| r.clone()).collect(),
    })
}

/// P(x, y) = ‖E^second({y}) E^first({x}) ψ‖².
pub fn joint_successive(
    first: &Spectrum,
    second: &Spectrum,
    psi: &StateVector,
) -> Result<JointDistribution, MeasurementError> {
    check_dim(first, psi)?;
    check_dim(second, psi)?;
    let mut outcomes = Vec::new();
    let mut values = Vec::new();
    for (x, ex) in &first.parts {
        let after = ex.apply(psi.vector());
        for (y, ey) in &second.parts {
            let p = ey.apply(&after).norm_squared();
            outcomes.push((x.to_string(), y.to_string(), p));
            values.push((x.clone(), y.clone()));
        }
    }
    Ok(JointDistribution { outcomes, values })
}

/// Which observable is measured first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Order {
    /// X, then Y: P^{X,Y}.
    XThenY,
    /// Y, then X: P^{Y,X}.
    YThenX,
}

/// P_ψ(X ≤ Y) for the given measurement order.
pub fn prob_le(order: Order, x: &Spectrum, y: &Spectrum, psi: &StateVector) -> Result<f64, MeasurementError> {
    Ok(match order {
        Order::XThenY => {
            let j = joint_successive(x, y, psi)?;
            j.values.iter().zip(&j.outcomes).filter(|((a, b), _)| a <= b).map(|(_, o)| o.2).sum()
        }
        Order::YThenX => {
            let j = joint_successive(y, x, psi)?;
            j.values.iter().zip(&j.outcomes).filter(|((b, a), _)| a <= b).map(|(_, o)| o.2).sum()
        }
    })
}

/// One instance of the experimental-meaning biconditional.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub kind: String,
    /// ψ lies in the range of ⟦X̃ ≤ Ỹ⟧ (‖Pψ‖² ≥ 1 − ε).
    pub membership: bool,
    /// P^{Y,X}_ψ(X ≤ Y).
    pub p_yx: f64,
    /// P^{X,Y}_ψ(X ≤ Y).
    pub p_xy: f64,
    /// Membership agrees with the kind's probability-one condition.
    pub verdict: bool,
    pub seed: Option<u64>,
}

/// A pair of observables prepared for repeated checks.
pub struct OrderPair {
    pub x: Spectrum,
    pub y: Spectrum,
    /// ⟦X̃ ≤ Ỹ⟧ for S, C and R.
    pub truth: [(Kind, Projection); 3],
}

impl OrderPair {
    pub fn new(x: &Observable, y: &Observable, snap: &SnapConfig) -> Result<Self, MeasurementError> {
        if x.dim() != y.dim() {
            return Err(MeasurementError::Dimension(x.dim(), y.dim()));
        }
        let lat = ProjectionLattice::new(x.dim());
        let u = operator_to_internal(x, snap)?;
        let v = operator_to_internal(y, snap)?;
        let truth = [Kind::S, Kind::C, Kind::R].map(|k| (k, truth_le(&lat, &u, &v, k)));
        Ok(OrderPair { x: Spectrum::from_family(&u, x.dim()), y: Spectrum::from_family(&v, y.dim()), truth })
    }

    pub fn truth(&self, k: Kind) -> &Projection {
        &self.truth.iter().find(|(j, _)| *j == k).expect("truth values exist for S, C and R").1
    }

    /// ψ ∈ R(⟦X̃ ≤ Ỹ⟧_k) iff S: P^{Y,X}(X ≤ Y) = 1; C: P^{X,Y}(X ≤ Y) = 1;
    /// R: both, each within ε.
    pub fn check(&self, k: Kind, psi: &StateVector, eps: f64) -> Result<Verdict, MeasurementError> {
        let membership = psi.prob(self.truth(k)) >= 1.0 - eps;
        let p_yx = prob_le(Order::YThenX, &self.x, &self.y, psi)?;
        let p_xy = prob_le(Order::XThenY, &self.x, &self.y, psi)?;
        let (one_yx, one_xy) = (p_yx >= 1.0 - eps, p_xy >= 1.0 - eps);
        let criterion = match k {
            Kind::K3 => one_yx,
            Kind::K2 => one_xy,
            Kind::K0 => one_yx && one_xy,
            _ => return Err(MeasurementError::Reals(RealsError::Invalid(format!("kind {k} has no measurement reading")))),
        };
        Ok(Verdict {
            kind: k.to_string(),
            membership,
            p_yx,
            p_xy,
            verdict: membership == criterion,
            seed: None,
        })
    }
}

/// Builds the pair and checks one state.
pub fn experimental_meaning_check(
    k: Kind,
    x: &Observable,
    y: &Observable,
    psi: &StateVector,
    eps: f64,
) -> Result<Verdict, MeasurementError> {
    OrderPair::new(x, y, &SnapConfig::default())?.check(k, psi, eps)
}

/// Verdicts over many states and the count of instances where the
/// biconditional held.
#[derive(Clone, Debug, Serialize)]
pub struct MeasureSummary {
    pub kind: String,
    pub held: usize,
    pub total: usize,
    pub members: usize,
    pub verdicts: Vec<Verdict>,
}

impl MeasureSummary {
    pub fn new(k: Kind) -> Self {
        MeasureSummary { kind: k.to_string(), held: 0, total: 0, members: 0, verdicts: Vec::new() }
    }

    pub fn push(&mut self, v: Verdict, keep: bool) {
        self.total += 1;
        self.held += v.verdict as usize;
        self.members += v.membership as usize;
        if keep || !v.verdict {
            self.verdicts.push(v);
        }
    }

    pub fn ok(&self) -> bool {
        self.held == self.total
    }
}

/// Checks `n` Haar-random states against one pair; `seed` is recorded in
/// every verdict.
pub fn random_states(
    pair: &OrderPair,
    k: Kind,
    n: usize,
    eps: f64,
    seed: u64,
    r: &mut TestRng,
) -> Result<MeasureSummary, MeasurementError> {
    let mut s = MeasureSummary::new(k);
    for _ in 0..n {
        let psi = haar_state(pair.x.dim(), r);
        let mut v = pair.check(k, &psi, eps)?;
        v.seed = Some(seed);
        s.push(v, false);
    }
    Ok(s)
}

/// A unit vector in the range of `p` (when nonzero) and one orthogonal to
/// it (when `p` is not the identity), both drawn from `r`.
pub fn range_states(p: &Projection, r: &mut TestRng) -> (Option<StateVector>, Option<StateVector>) {
    let g = haar_state(p.dim(), r);
    let inside = StateVector::normalized(p.apply(g.vector())).ok();
    let outside = StateVector::normalized(p.complement().apply(g.vector())).ok();
    let keep = |s: Option<StateVector>, rank: usize| if rank > 0 { s } else { None };
    (keep(inside, p.rank()), keep(outside, p.dim() - p.rank()))
}

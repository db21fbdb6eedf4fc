//! The correspondence between Hermitian operators and internal reals on the
//! projection lattice, and the kernel forms of equality and commutativity.

use super::{Rational, RealsError, StepFamily};
use crate::hilbert::random::{random_unitary, TestRng};
use crate::hilbert::{
    kernel_projection, spectral_decompose, stack_rows, CMat, CVec, Observable, Projection, ProjectionLattice,
};
use num::{BigInt, BigRational, ToPrimitive};
use rand::Rng;

/// How eigenvalues become rationals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SnapConfig {
    /// Eigenvalues closer than this are one cluster (default: relative 1e-8).
    pub cluster: Option<f64>,
    /// Largest allowed distance between an eigenvalue and its rational.
    pub tol: f64,
    /// Largest allowed denominator.
    pub max_den: u64,
}

impl Default for SnapConfig {
    fn default() -> Self {
        SnapConfig { cluster: None, tol: 1e-9, max_den: 1_000_000_000_000 }
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// The rational with the smallest denominator in [x − tol, x + tol].
pub fn snap_rational(x: f64, tol: f64, max_den: u64) -> Result<Rational, RealsError> {
    let err = || RealsError::Snap { value: x, tol, max_den };
    if !x.is_finite() || !(tol >= 0.0) {
        return Err(err());
    }
    let (lo, hi) = (x - tol, x + tol);
    let (p, q) = if lo <= 0.0 && hi >= 0.0 {
        (0i128, 1i128)
    } else if lo > 0.0 {
        simplest_between(lo, hi, max_den as i128, 0).ok_or_else(err)?
    } else {
        let (p, q) = simplest_between(-hi, -lo, max_den as i128, 0).ok_or_else(err)?;
        (-p, q)
    };
    let r = BigRational::new(BigInt::from(p), BigInt::from(q));
    if (rational_to_f64(&r) - x).abs() > tol * (1.0 + 1e-9) + f64::EPSILON * x.abs() {
        return Err(err());
    }
    Ok(r)
}

/// Continued-fraction search for the simplest fraction in [lo, hi], 0 < lo.
fn simplest_between(lo: f64, hi: f64, max_den: i128, depth: u32) -> Option<(i128, i128)> {
    if depth > 64 || hi > 1e18 {
        return None;
    }
    let fl = lo.floor();
    if fl == lo {
        return Some((fl as i128, 1));
    }
    if fl + 1.0 <= hi {
        return Some((fl as i128 + 1, 1));
    }
    let (p, q) = simplest_between(1.0 / (hi - fl), 1.0 / (lo - fl), max_den, depth + 1)?;
    let num = (fl as i128).checked_mul(p)?.checked_add(q)?;
    if p > max_den {
        return None;
    }
    Some((num, p))
}

/// Φ(X): jumps at the snapped eigenvalues with the cumulative spectral
/// projections; the last one is exactly the identity.
pub fn operator_to_internal(x: &Observable, cfg: &SnapConfig) -> Result<StepFamily<Projection>, RealsError> {
    let clusters = spectral_decompose(x, cfg.cluster);
    let n = x.dim();
    let mut jumps: Vec<(Rational, Projection)> = Vec::with_capacity(clusters.len());
    let mut acc = CMat::zeros(n, n);
    let mut prev_value = f64::NEG_INFINITY;
    for (i, c) in clusters.iter().enumerate() {
        let r = snap_rational(c.value, cfg.tol, cfg.max_den)?;
        if let Some((last, _)) = jumps.last() {
            if &r <= last {
                return Err(RealsError::Collision(prev_value, c.value, r.to_string()));
            }
        }
        acc += c.projection.matrix();
        let e = if i + 1 == clusters.len() {
            Projection::identity(n)
        } else {
            Projection::from_matrix_unchecked(acc.clone())
        };
        jumps.push((r, e));
        prev_value = c.value;
    }
    Ok(StepFamily::unchecked(jumps))
}

/// Ψ(u) = Σ λi (Ei − Ei−1).
pub fn internal_to_operator(u: &StepFamily<Projection>) -> Result<Observable, RealsError> {
    let n = u.jumps().first().map(|(_, e)| e.dim()).ok_or(RealsError::Empty)?;
    let mut parts = Vec::with_capacity(u.len());
    let mut prev = CMat::zeros(n, n);
    for (r, e) in u.jumps() {
        if e.dim() != n {
            return Err(RealsError::Dimension(n, e.dim()));
        }
        parts.push((rational_to_f64(r), Projection::from_matrix_unchecked(e.matrix() - &prev)));
        prev = e.matrix().clone();
    }
    Ok(Observable::from_spectrum(n, &parts))
}

/// P{ψ | u(x̌)ψ = v(x̌)ψ for all x}.
pub fn truth_eq_kernel(
    lat: &ProjectionLattice,
    u: &StepFamily<Projection>,
    v: &StepFamily<Projection>,
) -> Projection {
    let pts = super::representative_points(&[u, v]);
    let blocks: Vec<CMat> = pts.iter().map(|r| u.at(lat, r).matrix() - v.at(lat, r).matrix()).collect();
    kernel_projection(&stack_rows(lat.dim(), &blocks), lat.tol)
}

/// P{ψ | u(x̌)v(y̌)ψ = v(y̌)u(x̌)ψ for all x, y}.
pub fn com_internal_kernel(
    lat: &ProjectionLattice,
    u: &StepFamily<Projection>,
    v: &StepFamily<Projection>,
) -> Projection {
    let mut blocks = Vec::new();
    for (_, a) in u.jumps() {
        for (_, b) in v.jumps() {
            let (a, b) = (a.matrix(), b.matrix());
            blocks.push(a * b - b * a);
        }
    }
    if blocks.is_empty() {
        return Projection::identity(lat.dim());
    }
    kernel_projection(&stack_rows(lat.dim(), &blocks), lat.tol)
}

fn small_rational(r: &mut TestRng) -> Rational {
    let q = [1i64, 2, 3, 4, 8][r.random_range(0..5)];
    let p = r.random_range(-4 * q..=4 * q);
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// U diag(λ) U† with small-denominator rational eigenvalues, some repeated.
pub fn snapped_hermitian(dim: usize, r: &mut TestRng) -> (Observable, Vec<Rational>) {
    let mut vals: Vec<Rational> = Vec::with_capacity(dim);
    for _ in 0..dim {
        if !vals.is_empty() && r.random_bool(0.25) {
            let i = r.random_range(0..vals.len());
            vals.push(vals[i].clone());
        } else {
            vals.push(small_rational(r));
        }
    }
    let u = random_unitary(dim, r);
    let f: Vec<f64> = vals.iter().map(rational_to_f64).collect();
    (Observable::diagonal(&f).conjugate(&u), vals)
}

/// A pair 0 ≤ X ≼ Y that do not commute in general.
///
/// X has eigenvalues x_0 < ... < x_{d−1} on the columns a_k of a random
/// unitary. Y has nondecreasing eigenvalues y_k ≥ x_{k+1} on an orthonormal
/// chain w_k with w_k in span(a_0, ..., a_{k+1}), so E^Y(λ) ≤ E^X(λ).
pub fn spectral_order_pair(dim: usize, r: &mut TestRng) -> (Observable, Observable) {
    let u = random_unitary(dim, r);
    let mut xs = Vec::with_capacity(dim);
    let mut acc = 0.0;
    for _ in 0..dim {
        xs.push(acc);
        acc += r.random_range(1..=3) as f64;
    }
    let mut ys: Vec<f64> = Vec::with_capacity(dim);
    for k in 0..dim {
        let bound = xs.get(k + 1).copied().unwrap_or(acc);
        let prev = ys.last().copied().unwrap_or(bound);
        ys.push(bound.max(prev) + r.random_range(0..=1) as f64);
    }
    let a: Vec<CVec> = (0..dim).map(|k| u.column(k).into_owned()).collect();
    let mut chain: Vec<CVec> = Vec::with_capacity(dim);
    for k in 0..dim {
        let span = &a[..(k + 2).min(dim)];
        let g = random_unitary(span.len(), r);
        let mut w = CVec::zeros(dim);
        for (j, col) in span.iter().enumerate() {
            w += col * g[(j, 0)];
        }
        for _ in 0..2 {
            for b in &chain {
                let c = b.dotc(&w);
                w -= b * c;
            }
        }
        let n = w.norm();
        let w = if n > 1e-6 {
            w.unscale(n)
        } else {
            // Degenerate draw: fall back to the next basis column.
            let mut w = a[k].clone();
            for b in &chain {
                let c = b.dotc(&w);
                w -= b * c;
            }
            let n = w.norm();
            w.unscale(n)
        };
        chain.push(w);
    }
    let x = Observable::diagonal(&xs).conjugate(&u);
    let parts: Vec<(f64, Projection)> =
        chain.iter().zip(&ys).map(|(w, &y)| (y, Projection::onto_span(dim, std::slice::from_ref(w)))).collect();
    (x, Observable::from_spectrum(dim, &parts))
}

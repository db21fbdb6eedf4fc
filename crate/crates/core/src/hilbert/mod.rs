//! The projection lattice of a finite-dimensional complex Hilbert space.

mod doc;
mod linalg;
pub mod random;
mod spectral;

pub use doc::{OperatorDoc, StateDoc};
pub use linalg::{hermitian_kernel, kernel_projection, range_projection};
pub use spectral::{default_snap, spectral_decompose, SpectralCluster};

use crate::connectives::Kind;
use crate::logic::Logic;
use nalgebra::{DMatrix, DVector};
use num::complex::Complex64;
use std::fmt;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

/// Default threshold for treating a singular value or eigenvalue as zero.
pub const KERNEL_TOL: f64 = 1e-9;
/// Default Frobenius distance under which two operators are identified.
pub const EQ_TOL: f64 = 1e-7;

#[derive(Debug, thiserror::Error)]
pub enum HilbertError {
    #[error("matrix is {0}x{1}, expected a square matrix")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("matrix is not Hermitian (deviation {0:.3e})")]
    NotHermitian(f64),
    #[error("matrix is not idempotent (deviation {0:.3e})")]
    NotIdempotent(f64),
    #[error("state vector has norm {0}, expected 1")]
    NotUnit(f64),
    #[error("malformed operator document: {0}")]
    Document(String),
}

/// An orthogonal projection.
#[derive(Clone, PartialEq)]
pub struct Projection {
    m: CMat,
}

impl Projection {
    pub fn new(m: CMat, tol: f64) -> Result<Self, HilbertError> {
        check_square(&m)?;
        let h = (&m - m.adjoint()).norm();
        if h > tol {
            return Err(HilbertError::NotHermitian(h));
        }
        let i = (&m * &m - &m).norm();
        if i > tol {
            return Err(HilbertError::NotIdempotent(i));
        }
        Ok(Projection::from_matrix_unchecked(m))
    }

    /// Symmetrises but does not otherwise check.
    pub fn from_matrix_unchecked(m: CMat) -> Self {
        let m = (&m + m.adjoint()).scale(0.5);
        Projection { m }
    }

    /// Projection onto the span of the given columns (orthonormalised here).
    pub fn onto_span(dim: usize, vectors: &[CVec]) -> Self {
        let basis = orthonormal_basis(dim, vectors);
        let mut m = CMat::zeros(dim, dim);
        for v in &basis {
            m += v * v.adjoint();
        }
        Projection::from_matrix_unchecked(m)
    }

    pub fn zero(dim: usize) -> Self {
        Projection { m: CMat::zeros(dim, dim) }
    }

    pub fn identity(dim: usize) -> Self {
        Projection { m: CMat::identity(dim, dim) }
    }

    pub fn matrix(&self) -> &CMat {
        &self.m
    }

    pub fn into_matrix(self) -> CMat {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn rank(&self) -> usize {
        self.m.trace().re.round().max(0.0) as usize
    }

    pub fn complement(&self) -> Projection {
        Projection { m: CMat::identity(self.dim(), self.dim()) - &self.m }
    }

    pub fn apply(&self, v: &CVec) -> CVec {
        &self.m * v
    }

    pub fn distance(&self, o: &Projection) -> f64 {
        (&self.m - &o.m).norm()
    }
}

impl fmt::Debug for Projection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Projection(dim {}, rank {})", self.dim(), self.rank())
    }
}

/// A Hermitian operator.
#[derive(Clone, PartialEq)]
pub struct Observable {
    m: CMat,
}

impl Observable {
    pub fn new(m: CMat, tol: f64) -> Result<Self, HilbertError> {
        check_square(&m)?;
        let h = (&m - m.adjoint()).norm();
        if h > tol * m.norm().max(1.0) {
            return Err(HilbertError::NotHermitian(h));
        }
        Ok(Observable { m: (&m + m.adjoint()).scale(0.5) })
    }

    /// Real diagonal observable.
    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = CMat::zeros(n, n);
        for (i, &x) in values.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        Observable { m }
    }

    /// Sum of lambda_i * P_i.
    pub fn from_spectrum(dim: usize, parts: &[(f64, Projection)]) -> Self {
        let mut m = CMat::zeros(dim, dim);
        for (l, p) in parts {
            m += p.matrix().scale(*l);
        }
        Observable { m: (&m + m.adjoint()).scale(0.5) }
    }

    pub fn matrix(&self) -> &CMat {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    /// Conjugation U X U†.
    pub fn conjugate(&self, u: &CMat) -> Observable {
        let m = u * &self.m * u.adjoint();
        Observable { m: (&m + m.adjoint()).scale(0.5) }
    }
}

impl fmt::Debug for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Observable(dim {})", self.dim())
    }
}

/// A unit vector.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    v: CVec,
}

impl StateVector {
    pub fn new(v: CVec, tol: f64) -> Result<Self, HilbertError> {
        let n = v.norm();
        if (n - 1.0).abs() > tol {
            return Err(HilbertError::NotUnit(n));
        }
        Ok(StateVector { v: v.unscale(n) })
    }

    /// Normalises a nonzero vector.
    pub fn normalized(v: CVec) -> Result<Self, HilbertError> {
        let n = v.norm();
        if n < 1e-300 {
            return Err(HilbertError::NotUnit(n));
        }
        Ok(StateVector { v: v.unscale(n) })
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = CVec::zeros(dim);
        v[i] = C64::new(1.0, 0.0);
        StateVector { v }
    }

    pub fn vector(&self) -> &CVec {
        &self.v
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    /// ‖P ψ‖².
    pub fn prob(&self, p: &Projection) -> f64 {
        p.apply(&self.v).norm_squared()
    }
}

fn check_square(m: &CMat) -> Result<(), HilbertError> {
    if m.nrows() != m.ncols() {
        return Err(HilbertError::NotSquare(m.nrows(), m.ncols()));
    }
    Ok(())
}

/// Gram-Schmidt with re-orthogonalisation; drops dependent vectors.
pub fn orthonormal_basis(dim: usize, vectors: &[CVec]) -> Vec<CVec> {
    let mut basis: Vec<CVec> = Vec::new();
    for v in vectors {
        assert_eq!(v.len(), dim, "vector of wrong dimension");
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = b.dotc(&w);
                w -= b * c;
            }
        }
        let n = w.norm();
        if n > 1e-10 * v.norm().max(1.0) {
            basis.push(w.unscale(n));
        }
    }
    basis
}

/// The lattice of projections on C^dim.
#[derive(Clone, Debug)]
pub struct ProjectionLattice {
    dim: usize,
    /// Kernel threshold for meets.
    pub tol: f64,
    /// Frobenius distance for equality, order and commutation tests.
    pub eq_tol: f64,
}

impl ProjectionLattice {
    pub fn new(dim: usize) -> Self {
        ProjectionLattice { dim, tol: KERNEL_TOL, eq_tol: EQ_TOL }
    }

    pub fn with_tolerances(dim: usize, tol: f64, eq_tol: f64) -> Self {
        ProjectionLattice { dim, tol, eq_tol }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check(&self, p: &Projection) {
        assert_eq!(p.dim(), self.dim, "projection of dimension {} used in dimension {}", p.dim(), self.dim);
    }

    /// Projection onto the subspace of vectors on which every pairwise
    /// commutator of the family, composed with any element of the algebra
    /// the family generates, vanishes.
    pub fn commutator_by_kernel(&self, family: &[Projection]) -> Projection {
        for p in family {
            self.check(p);
        }
        if family.len() < 2 {
            return Projection::identity(self.dim);
        }
        let algebra = algebra_basis(self.dim, family);
        let mut blocks = Vec::new();
        for i in 0..family.len() {
            for j in i + 1..family.len() {
                let (a, b) = (family[i].matrix(), family[j].matrix());
                let c = a * b - b * a;
                if c.norm() <= self.eq_tol {
                    continue;
                }
                for w in &algebra {
                    blocks.push(&c * w);
                }
            }
        }
        if blocks.is_empty() {
            return Projection::identity(self.dim);
        }
        let stacked = stack_rows(self.dim, &blocks);
        kernel_projection(&stacked, self.tol)
    }
    /// The S, C or R conditional as a null space: N(Q⊥P), N(PQ⊥) or their
    /// intersection. Other kinds have no kernel form and return `None`.
    pub fn conditional_via_kernel(&self, kind: Kind, p: &Projection, q: &Projection) -> Option<Projection> {
        self.check(p);
        self.check(q);
        let nq = q.complement();
        let qp = nq.matrix() * p.matrix();
        let pq = p.matrix() * nq.matrix();
        let blocks = match kind {
            Kind::K3 => vec![qp],
            Kind::K2 => vec![pq],
            Kind::K0 => vec![qp, pq],
            _ => return None,
        };
        Some(kernel_projection(&stack_rows(self.dim, &blocks), self.tol))
    }

    /// Projection onto N(P − Q).
    pub fn biconditional_kernel(&self, p: &Projection, q: &Projection) -> Projection {
        self.check(p);
        self.check(q);
        hermitian_kernel(&(p.matrix() - q.matrix()), self.tol)
    }
}

/// ‖Pψ − ψ‖ ≤ ε.
pub fn range_member(psi: &StateVector, p: &Projection, eps: f64) -> bool {
    assert_eq!(psi.dim(), p.dim(), "state and projection dimensions differ");
    (p.apply(psi.vector()) - psi.vector()).norm() <= eps
}

/// A basis (Frobenius-orthonormal) of the unital algebra generated by the
/// given operators, built by closing the span under left multiplication.
pub fn algebra_basis(dim: usize, gens: &[Projection]) -> Vec<CMat> {
    let mut basis: Vec<CMat> = Vec::new();
    let mut queue = vec![CMat::identity(dim, dim)];
    let max = dim * dim;
    while let Some(m) = queue.pop() {
        if basis.len() >= max {
            break;
        }
        let mut w = m.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = b.dotc(&w);
                w -= b * c;
            }
        }
        let n = w.norm();
        if n <= 1e-9 * m.norm().max(1.0) {
            continue;
        }
        let w = w.unscale(n);
        for g in gens {
            queue.push(g.matrix() * &w);
        }
        basis.push(w);
    }
    basis
}

/// Stacks matrices with `dim` columns on top of each other.
pub fn stack_rows(dim: usize, blocks: &[CMat]) -> CMat {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMat::zeros(rows, dim);
    let mut r = 0;
    for b in blocks {
        out.view_mut((r, 0), (b.nrows(), dim)).copy_from(b);
        r += b.nrows();
    }
    out
}

impl Logic for ProjectionLattice {
    type Elem = Projection;
    type Key = Vec<(i64, i64)>;

    fn zero(&self) -> Projection {
        Projection::zero(self.dim)
    }
    fn one(&self) -> Projection {
        Projection::identity(self.dim)
    }
    /// Projection onto N((I-P) + (I-Q)), the intersection of the ranges.
    fn meet(&self, a: &Projection, b: &Projection) -> Projection {
        self.check(a);
        self.check(b);
        if self.leq(a, b) {
            return a.clone();
        }
        if self.leq(b, a) {
            return b.clone();
        }
        let id = CMat::identity(self.dim, self.dim);
        let s = (&id - a.matrix()) + (&id - b.matrix());
        hermitian_kernel(&s, self.tol)
    }
    fn join(&self, a: &Projection, b: &Projection) -> Projection {
        self.meet(&a.complement(), &b.complement()).complement()
    }
    fn ortho(&self, a: &Projection) -> Projection {
        self.check(a);
        a.complement()
    }
    fn leq(&self, a: &Projection, b: &Projection) -> bool {
        (a.matrix() - b.matrix() * a.matrix()).norm() <= self.eq_tol
    }
    fn same(&self, a: &Projection, b: &Projection) -> bool {
        a.distance(b) <= self.eq_tol
    }
    fn key(&self, a: &Projection) -> Vec<(i64, i64)> {
        a.matrix()
            .iter()
            .map(|z| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64))
            .collect()
    }
    fn show(&self, a: &Projection) -> String {
        format!("P[rank {}]", a.rank())
    }
    fn contains(&self, a: &Projection) -> bool {
        a.dim() == self.dim
    }
    fn commutes(&self, a: &Projection, b: &Projection) -> bool {
        let (x, y) = (a.matrix(), b.matrix());
        (x * y - y * x).norm() <= self.eq_tol
    }
}

#[cfg(test)]
mod tests;

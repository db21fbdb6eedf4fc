//! Seeded random operators and states for tests, examples and the suite.

use super::{CMat, CVec, Observable, Projection, StateVector, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gauss(r: &mut TestRng) -> C64 {
    C64::new(r.sample(StandardNormal), r.sample(StandardNormal))
}

pub fn gaussian_matrix(dim: usize, r: &mut TestRng) -> CMat {
    CMat::from_fn(dim, dim, |_, _| gauss(r))
}

/// Unitary from the QR factorisation of a complex Gaussian matrix.
pub fn random_unitary(dim: usize, r: &mut TestRng) -> CMat {
    gaussian_matrix(dim, r).qr().q()
}

pub fn random_hermitian(dim: usize, r: &mut TestRng) -> Observable {
    let g = gaussian_matrix(dim, r);
    Observable::new((&g + g.adjoint()).scale(0.5), 1e-9).expect("hermitian by construction")
}

pub fn haar_state(dim: usize, r: &mut TestRng) -> StateVector {
    let v = CVec::from_fn(dim, |_, _| gauss(r));
    StateVector::normalized(v).expect("nonzero gaussian vector")
}

/// A uniformly rotated projection of the given rank.
pub fn random_projection(dim: usize, rank: usize, r: &mut TestRng) -> Projection {
    let u = random_unitary(dim, r);
    let cols: Vec<CVec> = (0..rank).map(|i| u.column(i).into_owned()).collect();
    Projection::onto_span(dim, &cols)
}

/// Observable U diag(values) U†.
pub fn observable_with_spectrum(u: &CMat, values: &[f64]) -> Observable {
    Observable::diagonal(values).conjugate(u)
}

/// Embeds a block-diagonal operator A ⊕ B and conjugates by U.
fn block(u: &CMat, a: &CMat, b: &CMat) -> CMat {
    let (n, k) = (a.nrows() + b.nrows(), a.nrows());
    let mut m = CMat::zeros(n, n);
    m.view_mut((0, 0), (k, k)).copy_from(a);
    m.view_mut((k, k), (n - k, n - k)).copy_from(b);
    u * m * u.adjoint()
}

fn diag_proj(bits: &[bool]) -> CMat {
    let n = bits.len();
    CMat::from_fn(n, n, |i, j| if i == j && bits[i] { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
}

/// Projections sharing a common commuting block (diagonal 0/1 entries in
/// a common basis) plus a generic rank-one part on the rest, so their
/// commutator is a proper nonzero projection.
pub fn structured_projections(dim: usize, count: usize, r: &mut TestRng) -> Vec<Projection> {
    assert!(dim >= 3);
    let c = r.random_range(1..dim - 1);
    let u = random_unitary(dim, r);
    (0..count)
        .map(|_| {
            let bits: Vec<bool> = (0..c).map(|_| r.random_bool(0.5)).collect();
            let rest = random_projection(dim - c, 1, r);
            Projection::from_matrix_unchecked(block(&u, &diag_proj(&bits), rest.matrix()))
        })
        .collect()
}

/// Two observables with a shared commuting block (small integer spectra,
/// some values equal) and generic non-commuting parts on the rest.
pub fn structured_observable_pair(dim: usize, r: &mut TestRng) -> (Observable, Observable) {
    assert!(dim >= 2);
    let c = r.random_range(1..dim);
    let u = random_unitary(dim, r);
    let shared: Vec<f64> = (0..c).map(|_| r.random_range(0..3) as f64).collect();
    let ys: Vec<f64> = shared
        .iter()
        .map(|&x| if r.random_bool(0.5) { x } else { r.random_range(0..3) as f64 })
        .collect();
    let rest = dim - c;
    let vx = random_unitary(rest, r);
    let vy = random_unitary(rest, r);
    let ax: Vec<f64> = (0..rest).map(|_| r.random_range(0..4) as f64).collect();
    let ay: Vec<f64> = (0..rest).map(|_| r.random_range(0..4) as f64).collect();
    let x = block(&u, Observable::diagonal(&shared).matrix(), observable_with_spectrum(&vx, &ax).matrix());
    let y = block(&u, Observable::diagonal(&ys).matrix(), observable_with_spectrum(&vy, &ay).matrix());
    (
        Observable::new(x, 1e-9).expect("hermitian"),
        Observable::new(y, 1e-9).expect("hermitian"),
    )
}

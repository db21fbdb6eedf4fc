use super::{CMat, Observable, Projection};
use nalgebra::SymmetricEigen;

/// One eigenvalue cluster: its mean value and the projection onto the
/// sum of its eigenspaces.
#[derive(Clone, Debug)]
pub struct SpectralCluster {
    pub value: f64,
    pub multiplicity: usize,
    pub projection: Projection,
}

/// Default clustering gap: 1e-8 times the operator norm (at least 1e-8).
pub fn default_snap(x: &Observable) -> f64 {
    let e = SymmetricEigen::new(x.matrix().clone());
    let norm = e.eigenvalues.iter().fold(0.0f64, |a, &l| a.max(l.abs()));
    1e-8 * norm.max(1.0)
}

/// Eigendecomposition with eigenvalues closer than `snap` merged into one
/// cluster. Clusters are sorted by increasing value.
pub fn spectral_decompose(x: &Observable, snap: Option<f64>) -> Vec<SpectralCluster> {
    let n = x.dim();
    let e = SymmetricEigen::new(x.matrix().clone());
    let norm = e.eigenvalues.iter().fold(0.0f64, |a, &l| a.max(l.abs()));
    let snap = snap.unwrap_or(1e-8 * norm.max(1.0));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| e.eigenvalues[a].total_cmp(&e.eigenvalues[b]));
    let mut out: Vec<SpectralCluster> = Vec::new();
    let mut group: Vec<usize> = Vec::new();
    let flush = |group: &mut Vec<usize>, out: &mut Vec<SpectralCluster>| {
        if group.is_empty() {
            return;
        }
        let mut m = CMat::zeros(n, n);
        let mut sum = 0.0;
        for &i in group.iter() {
            let v = e.eigenvectors.column(i);
            m += v * v.adjoint();
            sum += e.eigenvalues[i];
        }
        out.push(SpectralCluster {
            value: sum / group.len() as f64,
            multiplicity: group.len(),
            projection: Projection::from_matrix_unchecked(m),
        });
        group.clear();
    };
    for &i in &order {
        if let Some(&last) = group.last() {
            if e.eigenvalues[i] - e.eigenvalues[last] >= snap {
                flush(&mut group, &mut out);
            }
        }
        group.push(i);
    }
    flush(&mut group, &mut out);
    out
}

use super::{CMat, Projection};
use nalgebra::{SymmetricEigen, SVD};

/// Projection onto the null space of an arbitrary (possibly rectangular)
/// matrix: right singular vectors with singular value at most `tol`.
pub fn kernel_projection(a: &CMat, tol: f64) -> Projection {
    let n = a.ncols();
    let padded = if a.nrows() < n {
        let mut p = CMat::zeros(n, n);
        p.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = SVD::new(padded, false, true);
    let vt = svd.v_t.expect("right singular vectors requested");
    let mut m = CMat::zeros(n, n);
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s <= tol {
            let v = vt.row(i).adjoint();
            m += &v * v.adjoint();
        }
    }
    Projection::from_matrix_unchecked(m)
}

/// Projection onto the null space of a Hermitian matrix.
pub fn hermitian_kernel(h: &CMat, tol: f64) -> Projection {
    let n = h.nrows();
    let e = SymmetricEigen::new(h.clone());
    let mut m = CMat::zeros(n, n);
    for (i, &l) in e.eigenvalues.iter().enumerate() {
        if l.abs() <= tol {
            let v = e.eigenvectors.column(i);
            m += v * v.adjoint();
        }
    }
    Projection::from_matrix_unchecked(m)
}

/// Projection onto the range of `a`, the complement of the kernel of a†.
pub fn range_projection(a: &CMat, tol: f64) -> Projection {
    kernel_projection(&a.adjoint(), tol).complement()
}

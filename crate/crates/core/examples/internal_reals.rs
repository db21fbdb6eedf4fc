//! Internal reals as right-continuous step families of projections: the
//! round trip with self-adjoint operators and truth values of equality.

use qsets::hilbert::random::{rng, random_hermitian};
use qsets::hilbert::{Observable, ProjectionLattice};
use qsets::oml::mo;
use qsets::reals::{
    integer, internal_to_operator, operator_to_internal, snapped_hermitian, truth_eq, validate_internal_real,
    SnapConfig, StepFamily,
};
use qsets::Logic;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = mo(2)?;
    let u = StepFamily::new(&l, vec![(integer(0), l.elem("a")?), (integer(1), l.top())])?;
    let v = StepFamily::new(&l, vec![(integer(0), l.elem("b")?), (integer(1), l.top())])?;
    println!("u valid: {}", validate_internal_real(&l, &u).ok());
    println!("[u = u] = {}, [u = v] = {}", l.show(&truth_eq(&l, &u, &u)), l.show(&truth_eq(&l, &u, &v)));

    let mut r = rng(5);
    let (x, eigen) = snapped_hermitian(3, &mut r);
    let fam = operator_to_internal(&x, &SnapConfig::default())?;
    let back = internal_to_operator(&fam)?;
    println!("eigenvalues {:?}", eigen.iter().map(|e| e.to_string()).collect::<Vec<_>>());
    println!("jump points {:?}", fam.points().map(|p| p.to_string()).collect::<Vec<_>>());
    println!("reconstruction error {:.2e}", (back.matrix() - x.matrix()).norm());

    let lat = ProjectionLattice::new(3);
    let y: Observable = random_hermitian(3, &mut r);
    let cfg = SnapConfig { cluster: Some(1e-6), tol: 1e-3, max_den: 1000 };
    let g = operator_to_internal(&y, &cfg)?;
    println!("snapped random operator gives a valid real: {}", validate_internal_real(&lat, &g).ok());
    println!("rank [X = Y] = {}", truth_eq(&lat, &fam, &g).rank());
    Ok(())
}

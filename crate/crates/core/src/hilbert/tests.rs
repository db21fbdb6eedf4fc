use super::random::*;
use super::*;
use crate::connectives::{biconditional, conditional, Kind};
use crate::logic::{commutator_pair, commutator_set};

fn span(dim: usize, idx: &[usize]) -> Projection {
    let vs: Vec<CVec> = idx.iter().map(|&i| StateVector::basis(dim, i).vector().clone()).collect();
    Projection::onto_span(dim, &vs)
}

fn stacked_kernel(blocks: &[CMat], dim: usize) -> Projection {
    kernel_projection(&stack_rows(dim, blocks), 1e-9)
}

const AGREE: f64 = 1e-6;

#[test]
fn meet_of_coordinate_subspaces() {
    let l = ProjectionLattice::new(3);
    let m = l.meet(&span(3, &[0, 1]), &span(3, &[1, 2]));
    assert!(m.distance(&span(3, &[1])) < 1e-12);
    let j = l.join(&span(3, &[0]), &span(3, &[2]));
    assert!(j.distance(&span(3, &[0, 2])) < 1e-12);
    assert!(l.leq(&span(3, &[1]), &span(3, &[0, 1])));
    assert!(!l.leq(&span(3, &[2]), &span(3, &[0, 1])));
}

#[test]
fn validation_rejects_bad_input() {
    let m = CMat::from_fn(2, 2, |i, j| C64::new((i + j) as f64, 0.0));
    assert!(matches!(Projection::new(m.clone(), 1e-9), Err(HilbertError::NotIdempotent(_))));
    let mut nh = m.clone();
    nh[(0, 1)] = C64::new(0.0, 1.0);
    assert!(Observable::new(nh, 1e-9).is_err());
    assert!(Observable::new(CMat::zeros(2, 3), 1e-9).is_err());
    assert!(StateVector::new(CVec::from_element(2, C64::new(1.0, 0.0)), 1e-9).is_err());
}

#[test]
fn meets_agree_with_stacked_kernel() {
    let mut r = rng(11);
    for dim in 3..=6 {
        let l = ProjectionLattice::new(dim);
        for _ in 0..10 {
            let fam = structured_projections(dim, 2, &mut r);
            let (p, q) = (&fam[0], &fam[1]);
            let id = CMat::identity(l.dim(), l.dim());
            let oracle = stacked_kernel(&[&id - p.matrix(), &id - q.matrix()], l.dim());
            let m = l.meet(p, q);
            assert!(m.distance(&oracle) < AGREE);
            assert!(l.leq(&m, p) && l.leq(&m, q));
        }
    }
}

#[test]
fn conditional_ranges() {
    let mut r = rng(12);
    for dim in [3usize, 4, 6] {
        let l = ProjectionLattice::new(dim);
        for _ in 0..10 {
            let fam = structured_projections(dim, 2, &mut r);
            let (p, q) = (&fam[0], &fam[1]);
            let nq = q.complement();
            let qp = nq.matrix() * p.matrix();
            let pq = p.matrix() * nq.matrix();
            let s = conditional(&l, Kind::S, p, q);
            let c = conditional(&l, Kind::C, p, q);
            let rr = conditional(&l, Kind::R, p, q);
            assert!(s.distance(&kernel_projection(&qp, 1e-9)) < AGREE);
            assert!(c.distance(&kernel_projection(&pq, 1e-9)) < AGREE);
            assert!(rr.distance(&stacked_kernel(&[qp.clone(), pq.clone()], dim)) < AGREE);
            let bi = kernel_projection(&(p.matrix() - q.matrix()), 1e-9);
            for k in [Kind::S, Kind::C, Kind::R] {
                assert!(biconditional(&l, k, p, q).distance(&bi) < AGREE);
            }
        }
    }
}

#[test]
fn commutator_lattice_and_kernel_agree() {
    let mut r = rng(13);
    for dim in [3usize, 4, 5, 6] {
        let l = ProjectionLattice::new(dim);
        for count in [2usize, 3] {
            for _ in 0..5 {
                let fam = structured_projections(dim, count, &mut r);
                let lat = commutator_set(&l, &fam);
                let ker = l.commutator_by_kernel(&fam);
                assert!(lat.distance(&ker) < AGREE, "dim {dim} count {count}: {}", lat.distance(&ker));
                if count == 2 {
                    let pair = commutator_pair(&l, &fam[0], &fam[1]);
                    assert!(pair.distance(&ker) < AGREE);
                }
                // the commuting block survives, the generic part does not
                assert!(ker.rank() >= 1 && ker.rank() < dim);
            }
        }
    }
}

#[test]
fn commuting_projections_have_full_commutator() {
    let l = ProjectionLattice::new(4);
    let fam = [span(4, &[0, 1]), span(4, &[1, 2]), span(4, &[3])];
    assert!(commutator_set(&l, &fam).distance(&Projection::identity(4)) < 1e-9);
    assert!(l.commutator_by_kernel(&fam).distance(&Projection::identity(4)) < 1e-9);
}

#[test]
fn orthomodular_law_on_random() {
    let mut r = rng(14);
    let l = ProjectionLattice::new(5);
    for _ in 0..20 {
        let q = random_projection(5, 3, &mut r);
        let p = l.meet(&q, &structured_projections(5, 1, &mut r)[0]);
        let back = l.join(&p, &l.meet(&q, &p.complement()));
        assert!(back.distance(&q) < AGREE);
    }
}

#[test]
fn spectral_decomposition_reconstructs() {
    let mut r = rng(15);
    let u = random_unitary(5, &mut r);
    let x = observable_with_spectrum(&u, &[1.0, 1.0, -2.0, 0.5, 1.0]);
    let parts = spectral_decompose(&x, None);
    let values: Vec<f64> = parts.iter().map(|c| c.value).collect();
    assert_eq!(parts.len(), 3);
    assert!((values[0] + 2.0).abs() < 1e-9 && (values[2] - 1.0).abs() < 1e-9);
    assert_eq!(parts[2].multiplicity, 3);
    let rebuilt = Observable::from_spectrum(5, &parts.iter().map(|c| (c.value, c.projection.clone())).collect::<Vec<_>>());
    assert!((rebuilt.matrix() - x.matrix()).norm() < 1e-9);
}

#[test]
fn documents_roundtrip() {
    let mut r = rng(16);
    let x = random_hermitian(3, &mut r);
    let doc = OperatorDoc::from_matrix(x.matrix());
    let back = OperatorDoc::from_json(&doc.to_json()).unwrap().observable().unwrap();
    assert!((back.matrix() - x.matrix()).norm() < 1e-12);
    let s = haar_state(3, &mut r);
    let sd = StateDoc::from_state(&s);
    let text = serde_json::to_string(&sd).unwrap();
    let back = StateDoc::from_json(&text).unwrap().state().unwrap();
    assert!((back.vector() - s.vector()).norm() < 1e-12);
    assert!(OperatorDoc::from_json(r#"{"dim":1,"matrix":[[[1,0]]],"extra":0}"#).is_err());
}

#[test]
fn algebra_of_commuting_projections_is_small() {
    let fam = [span(4, &[0, 1]), span(4, &[1, 2])];
    // the diagonal algebra of the four coordinates
    assert_eq!(algebra_basis(4, &fam).len(), 4);
}

#[test]
fn kernel_conditionals_match_polynomials() {
    let mut r = rng(15);
    for dim in 2..=8 {
        let l = ProjectionLattice::new(dim);
        for _ in 0..6 {
            let fam = if dim < 3 {
                vec![random_projection(dim, 1, &mut r), random_projection(dim, 1, &mut r)]
            } else {
                structured_projections(dim, 2, &mut r)
            };
            let (p, q) = (&fam[0], &fam[1]);
            for k in [Kind::S, Kind::C, Kind::R] {
                let ker = l.conditional_via_kernel(k, p, q).unwrap();
                assert!(ker.distance(&conditional(&l, k, p, q)) < AGREE, "dim {dim} kind {k}");
            }
            assert!(l.conditional_via_kernel(Kind::K5, p, q).is_none());
            let bi = l.biconditional_kernel(p, q);
            assert!(bi.distance(&crate::connectives::biconditional_closed(&l, p, q)) < AGREE);
        }
    }
}

#[test]
fn kernel_conditional_examples() {
    let l = ProjectionLattice::new(3);
    let (p, q) = (span(3, &[0]), span(3, &[0, 1]));
    for k in [Kind::S, Kind::C, Kind::R] {
        assert!(l.conditional_via_kernel(k, &p, &q).unwrap().distance(&Projection::identity(3)) < 1e-9);
    }
    let (p, q) = (span(3, &[0, 1]), span(3, &[1, 2]));
    let classical = l.join(&p.complement(), &q);
    for k in [Kind::S, Kind::C, Kind::R] {
        assert!(l.conditional_via_kernel(k, &p, &q).unwrap().distance(&classical) < 1e-9);
    }
    let l2 = ProjectionLattice::new(2);
    let mut r = rng(16);
    let (a, b) = (random_projection(2, 1, &mut r), random_projection(2, 1, &mut r));
    assert!(l2.conditional_via_kernel(Kind::R, &a, &b).unwrap().rank() == 0);
    let d1 = span(3, &[0]);
    let d2 = span(3, &[0, 1]);
    assert!(l.biconditional_kernel(&d1, &d2).distance(&span(3, &[0, 2])) < 1e-9);
    assert_eq!(l.biconditional_kernel(&d1, &d1.complement()).rank(), 0);
}

#[test]
fn range_membership() {
    let p = span(2, &[0]);
    assert!(range_member(&StateVector::basis(2, 0), &p, 1e-9));
    assert!(!range_member(&StateVector::basis(2, 1), &p, 1e-9));
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let psi = StateVector::new(CVec::from_vec(vec![h, h]), 1e-9).unwrap();
    assert!(!range_member(&psi, &p, 1e-9));
    assert!(range_member(&psi, &p, 0.71));
}

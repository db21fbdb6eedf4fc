use super::*;
use crate::connectives::{Interpretation, Kind};
use crate::hilbert::random::{random_hermitian, random_projection, rng};
use crate::hilbert::{CMat, Observable, Projection, ProjectionLattice, C64};
use crate::oml::{boolean, mo, Element, FiniteOml};
use crate::qvu::{Evaluator, Hf, Universe};
use proptest::prelude::*;
use std::collections::HashMap;

const KINDS: [Kind; 3] = [Kind::S, Kind::C, Kind::R];

fn fam(l: &FiniteOml, jumps: &[(i64, &str)]) -> StepFamily<Element> {
    StepFamily::new(l, jumps.iter().map(|&(r, n)| (integer(r), l.elem(n).unwrap())).collect()).unwrap()
}

fn mo2() -> FiniteOml {
    mo(2).unwrap()
}

fn close(a: &CMat, b: &CMat, tol: f64) -> bool {
    (a - b).norm() <= tol
}

fn proj(dim: usize, vs: &[&[f64]]) -> Projection {
    let cols: Vec<_> = vs
        .iter()
        .map(|v| crate::hilbert::CVec::from_iterator(dim, v.iter().map(|&x| C64::new(x, 0.0))))
        .collect();
    Projection::onto_span(dim, &cols)
}

fn hreal(lat: &ProjectionLattice, x: &Observable) -> StepFamily<Projection> {
    let u = operator_to_internal(x, &SnapConfig::default()).unwrap();
    assert!(validate_internal_real(lat, &u).ok());
    u
}

#[test]
fn constant_and_invalid_families() {
    let l = mo2();
    let zero = StepFamily::constant(&l, integer(0));
    assert!(validate_internal_real(&l, &zero).ok());
    let bad = StepFamily::unchecked(vec![(integer(0), l.elem("a").unwrap()), (integer(1), l.elem("b").unwrap())]);
    let rep = validate_internal_real(&l, &bad);
    assert!(!rep.law("monotone: E(i) <= E(i+1)").unwrap().ok());
    assert!(!rep.law("last jump value is 1").unwrap().ok());
    assert!(!rep.law("jumps commute: com(u) = 1").unwrap().ok());
    assert!(matches!(
        StepFamily::new(&l, vec![(integer(1), l.top()), (integer(0), l.top())]),
        Err(RealsError::NotIncreasing(1))
    ));
    assert!(matches!(StepFamily::<Element>::new(&l, vec![]), Err(RealsError::Empty)));
    let null = StepFamily::unchecked(vec![(integer(0), l.elem("a").unwrap()), (integer(1), l.elem("a").unwrap()), (integer(2), l.top())]);
    assert!(!validate_internal_real(&l, &null).law("no null jumps").unwrap().ok());
    assert!(matches!(StepFamily::new(&l, null.jumps().to_vec()), Err(RealsError::Invalid(_))));
}

#[test]
fn step_semantics() {
    let l = mo2();
    let u = fam(&l, &[(0, "a"), (2, "1")]);
    let a = l.elem("a").unwrap();
    assert_eq!(u.at(&l, &integer(-1)), l.bot());
    assert_eq!(u.at(&l, &integer(0)), a);
    assert_eq!(u.at(&l, &rational(3, 2)), a);
    assert_eq!(u.at(&l, &integer(2)), l.top());
    assert_eq!(u.below(&l, &integer(2)), a);
    assert_eq!(u.below(&l, &integer(0)), l.bot());
    let inc = u.increments(&l);
    assert_eq!(inc[0].1, a);
    assert_eq!(inc[1].1, l.elem("a'").unwrap());
    assert_eq!(representative_points(&[&u]), vec![integer(-1), integer(0), integer(2)]);
}

#[test]
fn constants_compare_classically() {
    let l = mo2();
    for r in -2..=2 {
        for s in -2..=2 {
            let (rt, st) = (StepFamily::constant(&l, integer(r)), StepFamily::constant(&l, integer(s)));
            for k in KINDS {
                let le = truth_le(&l, &rt, &st, k);
                assert_eq!(le, if r <= s { l.top() } else { l.bot() }, "{r} <= {s} under {k}");
            }
            assert_eq!(truth_eq(&l, &rt, &st), if r == s { l.top() } else { l.bot() });
        }
    }
}

#[test]
fn order_against_constants() {
    let l = mo2();
    let u = fam(&l, &[(-1, "b"), (1, "1")]);
    for t in -3..=3 {
        let t = integer(t);
        let tt = StepFamily::constant(&l, t.clone());
        for k in KINDS {
            assert_eq!(truth_le(&l, &u, &tt, k), truth_le_const(&l, &u, &t));
            assert_eq!(truth_lt(&l, &tt, &u, k), truth_const_lt(&l, &t, &u));
        }
        assert_eq!(truth_eq(&l, &u, &tt), truth_eq_const(&l, &u, &t));
    }
    assert_eq!(truth_eq_const(&l, &u, &integer(-1)), l.elem("b").unwrap());
    assert_eq!(truth_eq_const(&l, &u, &integer(1)), l.elem("b'").unwrap());
    assert_eq!(truth_eq_const(&l, &u, &integer(0)), l.bot());
}

#[test]
fn interval_matches_formula_level() {
    let l = mo2();
    let u = fam(&l, &[(-1, "b"), (1, "1")]);
    for s in -3..=3 {
        for t in -3..=3 {
            let (s, t) = (integer(s), integer(t));
            let iv = truth_interval(&l, &u, &s, &t);
            if s >= t {
                assert_eq!(iv.value, l.bot());
                assert!(iv.warning.is_some());
                continue;
            }
            assert!(iv.warning.is_none());
            let (st, tt) = (StepFamily::constant(&l, s.clone()), StepFamily::constant(&l, t.clone()));
            for k in KINDS {
                let f = l.meet(&truth_lt(&l, &st, &u, k), &truth_le(&l, &u, &tt, k));
                assert_eq!(iv.value, f, "({s}, {t}] under {k}");
            }
        }
    }
    // Straddling the single eigenvalue -1.
    assert_eq!(truth_interval(&l, &u, &integer(-2), &integer(0)).value, l.elem("b").unwrap());
}

#[test]
fn diagonal_and_flip_correspondence() {
    let x = Observable::diagonal(&[0.0, 1.0]);
    let u = operator_to_internal(&x, &SnapConfig::default()).unwrap();
    assert_eq!(u.len(), 2);
    assert_eq!(u.jumps()[0].0, integer(0));
    assert!(close(u.jumps()[0].1.matrix(), proj(2, &[&[1.0, 0.0]]).matrix(), 1e-12));
    assert_eq!(u.jumps()[1].0, integer(1));
    assert!(close(u.jumps()[1].1.matrix(), &CMat::identity(2, 2), 0.0));

    let o = C64::new(1.0, 0.0);
    let z = C64::new(0.0, 0.0);
    let sx = Observable::new(CMat::from_row_slice(2, 2, &[z, o, o, z]), 1e-12).unwrap();
    let v = operator_to_internal(&sx, &SnapConfig::default()).unwrap();
    assert_eq!(v.jumps()[0].0, integer(-1));
    assert_eq!(v.jumps()[1].0, integer(1));
    assert!(close(v.jumps()[0].1.matrix(), proj(2, &[&[1.0, -1.0]]).matrix(), 1e-12));
    let lat = ProjectionLattice::new(2);
    assert!(lat.is_zero(&truth_eq(&lat, &u, &v)));
    assert!(lat.is_zero(&truth_eq_kernel(&lat, &u, &v)));
}

#[test]
fn round_trip_on_snapped_spectra() {
    let mut r = rng(11);
    for i in 0..60 {
        let dim = 1 + i % 6;
        let (x, vals) = snapped_hermitian(dim, &mut r);
        let u = operator_to_internal(&x, &SnapConfig::default()).unwrap();
        let mut distinct = vals.clone();
        distinct.sort();
        distinct.dedup();
        assert_eq!(u.points().cloned().collect::<Vec<_>>(), distinct);
        let lat = ProjectionLattice::new(dim);
        assert!(validate_internal_real(&lat, &u).ok());
        let back = internal_to_operator(&u).unwrap();
        assert!(close(back.matrix(), x.matrix(), 1e-8));
        let again = operator_to_internal(&back, &SnapConfig::default()).unwrap();
        assert_eq!(again.len(), u.len());
        for ((r1, e1), (r2, e2)) in again.jumps().iter().zip(u.jumps()) {
            assert_eq!(r1, r2);
            assert!(e1.distance(e2) <= 1e-8);
        }
    }
}

#[test]
fn snapping() {
    assert_eq!(snap_rational(0.5, 1e-9, 100).unwrap(), rational(1, 2));
    assert_eq!(snap_rational(1.0 / 3.0, 1e-9, 100).unwrap(), rational(1, 3));
    assert_eq!(snap_rational(-2.25, 1e-9, 100).unwrap(), rational(-9, 4));
    assert_eq!(snap_rational(3.0, 1e-9, 1).unwrap(), integer(3));
    assert_eq!(snap_rational(1e-12, 1e-9, 1).unwrap(), integer(0));
    assert_eq!(snap_rational(std::f64::consts::PI, 2e-3, 1000).unwrap(), rational(22, 7));
    let e = snap_rational(std::f64::consts::PI, 1e-12, 100).unwrap_err();
    assert!(e.to_string().contains("increase the snap tolerance"));
    assert!(snap_rational(f64::NAN, 1e-9, 100).is_err());
}

#[test]
fn eigenvalues_beyond_snap_are_rejected() {
    let x = Observable::diagonal(&[0.0, std::f64::consts::SQRT_2]);
    let cfg = SnapConfig { cluster: None, tol: 1e-15, max_den: 1000 };
    assert!(matches!(operator_to_internal(&x, &cfg), Err(RealsError::Snap { .. })));
    let y = Observable::diagonal(&[0.0, 0.1]);
    let coarse = SnapConfig { cluster: None, tol: 0.5, max_den: 10 };
    assert!(matches!(operator_to_internal(&y, &coarse), Err(RealsError::Collision(..))));
}

#[test]
fn equality_matches_kernel_and_bounds_commutator() {
    let mut r = rng(5);
    for i in 0..40 {
        let dim = 2 + i % 3;
        let lat = ProjectionLattice::new(dim);
        let (x, y) = if i % 2 == 0 {
            crate::hilbert::random::structured_observable_pair(dim, &mut r)
        } else {
            (random_hermitian(dim, &mut r), random_hermitian(dim, &mut r))
        };
        let cfg = SnapConfig { cluster: Some(1e-6), tol: 1e-6, max_den: 1_000_000_000_000 };
        let u = operator_to_internal(&x, &cfg).unwrap();
        let v = operator_to_internal(&y, &cfg).unwrap();
        let eq = truth_eq(&lat, &u, &v);
        assert!(eq.distance(&truth_eq_kernel(&lat, &u, &v)) <= 1e-6);
        for k in KINDS {
            assert!(eq.distance(&truth_eq_kind(&lat, k, &u, &v)) <= 1e-6);
        }
        let com = com_internal(&lat, &u, &v);
        assert!(lat.leq(&eq, &com));
        assert!(com.distance(&com_internal_kernel(&lat, &u, &v)) <= 1e-6);
        assert!(com.distance(&com_increments(&lat, &u, &v)) <= 1e-6);
        assert!(lat.same(&chain_eq(&lat, &[u.clone(), v.clone(), u.clone()]), &eq));
    }
}

#[test]
fn commutator_examples() {
    let lat = ProjectionLattice::new(2);
    let u = hreal(&lat, &Observable::diagonal(&[0.0, 1.0]));
    let v = hreal(&lat, &Observable::diagonal(&[3.0, -1.0]));
    assert!(lat.is_one(&com_internal(&lat, &u, &v)));
    let mut r = rng(3);
    let p = random_projection(2, 1, &mut r);
    let w = StepFamily::new(&lat, vec![(integer(0), p), (integer(1), Projection::identity(2))]).unwrap();
    assert!(lat.is_zero(&com_internal(&lat, &u, &w)));
    assert!(lat.is_zero(&com_internal_kernel(&lat, &u, &w)));

    // Block diagonal: commuting on e3, generic on span(e1, e2).
    let lat3 = ProjectionLattice::new(3);
    let q = random_projection(2, 1, &mut r);
    let mut qm = CMat::zeros(3, 3);
    qm.view_mut((0, 0), (2, 2)).copy_from(q.matrix());
    let a = StepFamily::new(&lat3, vec![(integer(0), proj(3, &[&[1.0, 0.0, 0.0]])), (integer(1), Projection::identity(3))]).unwrap();
    let b = StepFamily::new(&lat3, vec![(integer(0), Projection::from_matrix_unchecked(qm)), (integer(1), Projection::identity(3))]).unwrap();
    let e3 = proj(3, &[&[0.0, 0.0, 1.0]]);
    for c in [com_internal(&lat3, &a, &b), com_internal_kernel(&lat3, &a, &b), com_increments(&lat3, &a, &b)] {
        assert!(c.distance(&e3) <= 1e-6);
    }
}

#[test]
fn order_truth_differs_by_kind_on_a_qubit() {
    let lat = ProjectionLattice::new(2);
    let mut r = rng(8);
    let p = random_projection(2, 1, &mut r);
    let q = random_projection(2, 1, &mut r);
    let one = Projection::identity(2);
    let u = StepFamily::new(&lat, vec![(integer(0), p.clone()), (integer(1), one.clone())]).unwrap();
    let v = StepFamily::new(&lat, vec![(integer(0), q.clone()), (integer(1), one)]).unwrap();
    let s = truth_le(&lat, &u, &v, Kind::S);
    let c = truth_le(&lat, &u, &v, Kind::C);
    let rr = truth_le(&lat, &u, &v, Kind::R);
    assert!(s.distance(&q.complement()) <= 1e-6);
    assert!(c.distance(&p) <= 1e-6);
    assert!(lat.is_zero(&rr));
    for k in KINDS {
        assert!(lat.is_one(&truth_le(&lat, &u, &u, k)));
    }
}

#[test]
fn relevance_integrand_is_meet_of_sasaki_ones() {
    let mut r = rng(21);
    for _ in 0..20 {
        let lat = ProjectionLattice::new(3);
        let u = hreal(&lat, &snapped_hermitian(3, &mut r).0);
        let v = hreal(&lat, &snapped_hermitian(3, &mut r).0);
        let s = le_integrands(&lat, &u, &v, Kind::S);
        let c = le_integrands(&lat, &u, &v, Kind::C);
        let rr = le_integrands(&lat, &u, &v, Kind::R);
        for i in 0..s.len() {
            assert!(rr[i].1.distance(&lat.meet(&s[i].1, &c[i].1)) <= 1e-6);
        }
    }
    let l = mo2();
    let reals = enumerate_reals(&l, &l.elements().collect::<Vec<_>>(), &[integer(0), integer(1)]);
    for u in &reals {
        for v in &reals {
            let s = le_integrands(&l, u, v, Kind::S);
            let c = le_integrands(&l, u, v, Kind::C);
            let rr = le_integrands(&l, u, v, Kind::R);
            for i in 0..s.len() {
                assert_eq!(rr[i].1, l.meet(&s[i].1, &c[i].1));
            }
        }
    }
}

#[test]
fn spectral_order_examples() {
    let lat = ProjectionLattice::new(2);
    let x = hreal(&lat, &Observable::diagonal(&[0.0, 1.0]));
    let y = hreal(&lat, &Observable::diagonal(&[1.0, 2.0]));
    assert!(spectral_order(&lat, &x, &x));
    assert!(spectral_order(&lat, &x, &y));
    assert!(!spectral_order(&lat, &y, &x));
    for k in KINDS {
        assert!(lat.is_one(&truth_le(&lat, &x, &y, k)));
        assert!(!lat.is_one(&truth_le(&lat, &y, &x, k)));
    }
}

fn min_eig(m: &CMat) -> f64 {
    nalgebra::SymmetricEigen::new(m.clone()).eigenvalues.iter().fold(f64::INFINITY, |a, &b| a.min(b))
}

#[test]
fn spectral_order_pairs_satisfy_power_order() {
    let mut r = rng(17);
    let mut noncommuting = 0;
    for i in 0..30 {
        let dim = 2 + i % 3;
        let lat = ProjectionLattice::new(dim);
        let (x, y) = spectral_order_pair(dim, &mut r);
        let u = hreal(&lat, &x);
        let v = hreal(&lat, &y);
        assert!(spectral_order(&lat, &u, &v));
        for k in KINDS {
            assert!(lat.is_one(&truth_le(&lat, &u, &v, k)));
        }
        let (xm, ym) = (x.matrix(), y.matrix());
        if (xm * ym - ym * xm).norm() > 1e-6 {
            noncommuting += 1;
        }
        let (mut xp, mut yp) = (xm.clone(), ym.clone());
        for _ in 0..3 {
            assert!(min_eig(&(&yp - &xp)) >= -1e-8);
            xp = &xp * xm;
            yp = &yp * ym;
        }
    }
    assert!(noncommuting >= 25);
}

#[test]
fn equality_axioms_for_reals() {
    let l = mo2();
    let vals: Vec<Element> = l.elements().collect();
    let reals = enumerate_reals(&l, &vals, &[integer(0), integer(1), integer(2)]);
    assert!(reals.iter().all(|u| validate_internal_real(&l, u).ok()));
    for k in KINDS {
        let rep = check_equality_axioms(&l, &reals, k);
        assert!(rep.ok(), "{rep}");
        assert!(rep.laws[4].expect_failure && rep.laws[4].failures > 0);
    }
    let b = boolean(2).unwrap();
    let vals: Vec<Element> = b.elements().collect();
    let reals = enumerate_reals(&b, &vals, &[integer(0), integer(1)]);
    let rep = check_equality_axioms(&b, &reals, Kind::S);
    assert!(rep.ok() && rep.laws[4].failures == 0 && !rep.laws[4].expect_failure, "{rep}");
}

#[test]
fn enumeration_yields_chains() {
    let l = mo2();
    let vals: Vec<Element> = l.elements().collect();
    // one jump: 2 choices of point; two jumps: 1 pair of points times 4 atoms.
    assert_eq!(enumerate_reals(&l, &vals, &[integer(0), integer(1)]).len(), 2 + 4);
}

#[test]
fn grid_evaluator_agrees_with_closed_forms() {
    let l = mo2();
    let vals: Vec<Element> = l.elements().collect();
    let reals = enumerate_reals(&l, &vals, &[integer(0), integer(1), integer(2)]);
    let uni = Universe::new(l.clone());
    let pts: Vec<&StepFamily<Element>> = reals.iter().collect();
    let grid = Grid::for_families(&pts);
    assert_eq!(grid.len(), 5);
    let f = real_predicate_formula();
    let q = grid.rationals(&uni).unwrap();
    let mats: Vec<_> = reals.iter().map(|u| grid.materialize(&uni, u).unwrap()).collect();
    for k in KINDS {
        let ev = Evaluator::new(&uni, Interpretation::self_dual(k));
        for (u, m) in reals.iter().zip(&mats) {
            let env: HashMap<String, _> = [("x".to_string(), m.clone()), ("q".to_string(), q.clone())].into();
            assert_eq!(ev.eval(&f, &env).unwrap(), gridded_real_predicate(&l, &grid, u));
        }
        for (u, mu) in reals.iter().zip(&mats) {
            for (v, mv) in reals.iter().zip(&mats) {
                assert_eq!(ev.eq(mu, mv), truth_eq(&l, u, v));
                assert_eq!(ev.subset(mv, mu), truth_le(&l, u, v, k));
            }
            for (i, r) in grid.points().iter().enumerate() {
                assert_eq!(ev.mem(&grid.point(&uni, i).unwrap(), mu), u.at(&l, r));
            }
        }
    }
}

#[test]
fn constant_real_on_the_grid() {
    let l = mo2();
    let uni = Universe::new(l.clone());
    let grid = Grid::new((-2..=2).map(integer).collect());
    let ev = Evaluator::new(&uni, Interpretation::self_dual(Kind::S));
    for (j, s) in grid.points().iter().enumerate() {
        let st = StepFamily::constant(&l, s.clone());
        let m = grid.materialize(&uni, &st).unwrap();
        let cut = Hf::set((j..grid.len()).map(Hf::nat));
        assert_eq!(ev.eq(&m, &uni.check(&cut).unwrap()), l.top());
        for (i, r) in grid.points().iter().enumerate() {
            let want = if s <= r { l.top() } else { l.bot() };
            assert_eq!(ev.mem(&grid.point(&uni, i).unwrap(), &m), want);
        }
    }
}

#[test]
fn family_documents() {
    let l = mo2();
    let u = fam(&l, &[(-1, "a"), (3, "1")]);
    let doc = FamilyDoc::from_lattice(&l, &u);
    let text = doc.to_json();
    assert!(text.contains("\"-1\"") && text.contains("\"a\""));
    let back = FamilyDoc::from_json(&text).unwrap().to_lattice(&l).unwrap();
    assert_eq!(back.jumps(), u.jumps());
    let half = FamilyDoc::from_json(r#"{"jumps": [["1/2", "b"], ["7/3", "1"]]}"#).unwrap().to_lattice(&l).unwrap();
    assert_eq!(half.jumps()[0].0, rational(1, 2));
    assert!(FamilyDoc::from_json(r#"{"jumps": [["x", "b"]]}"#).unwrap().to_lattice(&l).is_err());
    assert!(FamilyDoc::from_json(r#"{"jumps": [], "extra": 1}"#).is_err());
    assert!(FamilyDoc::from_json(r#"{"jumps": [["0", "a"], ["1", "b"]]}"#).unwrap().to_lattice(&l).is_err());

    let lat = ProjectionLattice::new(2);
    let h = hreal(&lat, &Observable::diagonal(&[0.5, -1.0]));
    let (lat2, h2) = FamilyDoc::from_json(&FamilyDoc::from_hilbert(&h).to_json()).unwrap().to_hilbert(1e-9).unwrap();
    assert_eq!(lat2.dim(), 2);
    for ((r1, e1), (r2, e2)) in h.jumps().iter().zip(h2.jumps()) {
        assert_eq!(r1, r2);
        assert!(e1.distance(e2) <= 1e-12);
    }
}

proptest! {
    #[test]
    fn snapping_recovers_small_fractions(p in -1000i64..1000, q in 1i64..200) {
        let x = p as f64 / q as f64;
        prop_assert_eq!(snap_rational(x, 1e-9, 1000).unwrap(), rational(p, q));
    }

    #[test]
    fn lattice_commutator_forms_agree(seed in 0u64..1000) {
        let mut r = rng(seed);
        let dim = 2 + (seed % 3) as usize;
        let lat = ProjectionLattice::new(dim);
        let (x, y) = crate::hilbert::random::structured_observable_pair(dim, &mut r);
        let u = operator_to_internal(&x, &SnapConfig::default()).unwrap();
        let v = operator_to_internal(&y, &SnapConfig::default()).unwrap();
        let c = com_internal(&lat, &u, &v);
        prop_assert!(c.distance(&com_internal_kernel(&lat, &u, &v)) <= 1e-6);
        prop_assert!(c.distance(&com_increments(&lat, &u, &v)) <= 1e-6);
        prop_assert!(lat.leq(&truth_eq(&lat, &u, &v), &c));
    }

    #[test]
    fn finite_lattice_equality_is_kind_free(i in 0usize..36, j in 0usize..36) {
        let l = mo2();
        let vals: Vec<Element> = l.elements().collect();
        let reals = enumerate_reals(&l, &vals, &[integer(0), integer(1), integer(2)]);
        let (u, v) = (&reals[i % reals.len()], &reals[j % reals.len()]);
        let eq = truth_eq(&l, u, v);
        for k in KINDS {
            prop_assert_eq!(truth_eq_kind(&l, k, u, v), eq);
        }
        prop_assert!(l.le(eq, com_internal(&l, u, v)));
        prop_assert_eq!(com_internal(&l, u, v), com_increments(&l, u, v));
    }
}

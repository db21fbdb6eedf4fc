//! The twelve acceptance criteria as one deterministic, seeded run.
//!
//! Each criterion produces a [`Report`]; a criterion passes when every law
//! in it is ok. Wall-clock time is measured against a budget but kept out
//! of the serialised output so that equal configurations give equal JSON.

use crate::connectives::{
    all_pairs, check_identities, check_material, check_transitivity_failure, conditional, Interpretation, Kind,
};
use crate::formula::parse;
use crate::hilbert::random::{haar_state, random_hermitian, random_projection, rng, structured_projections, TestRng};
use crate::hilbert::{Observable, Projection, ProjectionLattice, CMat};
use crate::logic::{commutator_pair, commutator_set, Logic};
use crate::measurement::{range_states, MeasureSummary, OrderPair};
use crate::oml::{boolean, mo, verify_oml, Element, FiniteOml};
use crate::qvu::checks::{
    check_absoluteness, check_de_morgan, check_elementary, check_first_order, counterexample_transitivity,
    expect_bounded_de_morgan_failure, transfer_suite,
};
use crate::qvu::{Env, Evaluator, Hf, QSet, Universe};
use crate::reals::{
    chain_eq, com_internal, com_internal_kernel, internal_to_operator, operator_to_internal, snapped_hermitian,
    spectral_order, spectral_order_pair, truth_eq, truth_eq_kernel, truth_eq_kind, truth_le, validate_internal_real,
    SnapConfig,
};
use crate::report::{Law, Report};
use nalgebra::SymmetricEigen;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::time::{Duration, Instant};

pub const MATERIAL: [Kind; 3] = [Kind::S, Kind::C, Kind::R];

/// Tolerances, sample counts and the seed of a suite run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Probability-one threshold for measurement checks.
    pub eps: f64,
    /// Cross-method agreement on matrices (Frobenius norm).
    pub agree_tol: f64,
    /// Operator reconstruction error in the round trip.
    pub roundtrip_tol: f64,
    /// Smallest eigenvalue allowed for Y^n − X^n.
    pub power_tol: f64,
    /// Eigenvalue snapping for operators built from random matrices.
    pub snap_tol: f64,
    pub hilbert_triples: usize,
    pub identity_pairs: usize,
    pub roundtrips: usize,
    pub equality_pairs: usize,
    pub order_pairs: usize,
    pub qubit_instances: usize,
    pub dim3_instances: usize,
    pub hf_instances: usize,
    /// Interpretations checked for De Morgan beyond the three material ones
    /// and I(K3,J5).
    pub extra_interpretations: Vec<Interpretation>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 7,
            eps: 1e-7,
            agree_tol: 1e-6,
            roundtrip_tol: 1e-8,
            power_tol: 1e-8,
            snap_tol: 1e-6,
            hilbert_triples: 200,
            identity_pairs: 200,
            roundtrips: 100,
            equality_pairs: 100,
            order_pairs: 200,
            qubit_instances: 1000,
            dim3_instances: 200,
            hf_instances: 50,
            extra_interpretations: Vec::new(),
        }
    }
}

/// Outcome of one criterion.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub title: String,
    pub passed: bool,
    pub budget_secs: f64,
    #[serde(skip)]
    pub elapsed: Duration,
    pub report: Report,
}

impl CriterionResult {
    pub fn within_budget(&self) -> bool {
        self.elapsed.as_secs_f64() <= self.budget_secs
    }

    /// `PASS C3 ...` or `FAIL C3 ...`, with the time against the budget.
    pub fn line(&self) -> String {
        let status = if self.passed && self.within_budget() { "PASS" } else { "FAIL" };
        let slow = if self.within_budget() { "" } else { " OVER BUDGET" };
        format!(
            "{status} C{:<2} {:<44} {:>8.3}s / {:.0}s{slow}",
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.budget_secs
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub version: String,
    pub config: SuiteConfig,
    pub passed: bool,
    pub criteria: Vec<CriterionResult>,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qsets {} suite, seed {}", self.version, self.config.seed)?;
        for c in &self.criteria {
            writeln!(f, "{}", c.line())?;
        }
        writeln!(f, "{}", if self.passed { "all criteria passed" } else { "some criteria failed" })
    }
}

type Criterion = fn(&SuiteConfig) -> Report;

/// Identifier, title, budget in seconds and body of every criterion.
pub const CRITERIA: [(usize, &str, f64, Criterion); 12] = [
    (1, "OML axioms and commutator agreement", 10.0, c1_commutators),
    (2, "exactly S, C, R are material", 1.0, c2_material),
    (3, "identities among the conditionals", 5.0, c3_identities),
    (4, "equality counterexample", 1.0, c4_counterexample),
    (5, "first-order equality axioms", 30.0, c5_first_order),
    (6, "De Morgan iff self-dual", 10.0, c6_de_morgan),
    (7, "transfer spot checks", 60.0, c7_transfer),
    (8, "operator round trip", 5.0, c8_roundtrip),
    (9, "equality of internal reals", 10.0, c9_real_equality),
    (10, "spectral order iff full truth", 20.0, c10_spectral_order),
    (11, "experimental meaning of the order", 60.0, c11_measurement),
    (12, "absoluteness and elementary equivalence", 10.0, c12_absoluteness),
];

pub fn run_criterion(id: usize, cfg: &SuiteConfig) -> Option<CriterionResult> {
    let &(id, title, budget, body) = CRITERIA.iter().find(|c| c.0 == id)?;
    let t = Instant::now();
    let report = body(cfg);
    let elapsed = t.elapsed();
    Some(CriterionResult { id, title: title.to_string(), passed: report.ok(), budget_secs: budget, elapsed, report })
}

pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let criteria: Vec<CriterionResult> =
        CRITERIA.iter().map(|c| run_criterion(c.0, cfg).expect("listed criterion")).collect();
    SuiteReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg.clone(),
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    }
}

/// A separate deterministic stream per criterion.
fn stream(cfg: &SuiteConfig, id: u64) -> TestRng {
    rng(cfg.seed.wrapping_mul(1_000_003).wrapping_add(id))
}

fn finite_lattices() -> Vec<(&'static str, FiniteOml)> {
    vec![
        ("MO2", mo(2).expect("builtin")),
        ("MO3", mo(3).expect("builtin")),
        ("2^3", boolean(3).expect("builtin")),
    ]
}

fn elements(l: &FiniteOml) -> Vec<Element> {
    l.elements().collect()
}

fn nonzero(l: &FiniteOml) -> Vec<Element> {
    l.elements().filter(|e| *e != l.bot()).collect()
}

/// `count` projections in dimension `dim` with a nontrivial commutator
/// where the dimension allows one.
fn sample_projections(dim: usize, count: usize, r: &mut TestRng) -> Vec<Projection> {
    if dim < 3 {
        (0..count).map(|_| random_projection(dim, 1, r)).collect()
    } else {
        structured_projections(dim, count, r)
    }
}

fn snap(cfg: &SuiteConfig) -> SnapConfig {
    SnapConfig { cluster: Some(cfg.snap_tol), tol: cfg.snap_tol, ..SnapConfig::default() }
}

fn c1_commutators(cfg: &SuiteConfig) -> Report {
    let mut rep = Report::new("OML axioms and commutator agreement");
    let mut axioms = Law::new("OML axioms on MO2, MO3, 2^3");
    let mut pair_bf = Law::new("com(P,Q) four-meet form = largest-element characterization");
    let mut triple_bf = Law::new("com(P,Q,R) = largest-element characterization");
    for (name, l) in finite_lattices() {
        let v = verify_oml(&l.structure());
        axioms.record(v.ok, || format!("{name}: {}", v.failures().map(|c| c.axiom.clone()).collect::<Vec<_>>().join(", ")));
        let els = elements(&l);
        for &p in &els {
            for &q in &els {
                let c = commutator_pair(&l, &p, &q);
                let bf = l.commutator_bruteforce(&[p, q]);
                pair_bf.record(bf == Some(c) && l.commutator(&[p, q]) == c, || {
                    format!("{name}: P={} Q={}", l.name(p), l.name(q))
                });
                for &s in &els {
                    let c = commutator_set(&l, &[p, q, s]);
                    triple_bf.record(l.commutator_bruteforce(&[p, q, s]) == Some(c), || {
                        format!("{name}: {} {} {}", l.name(p), l.name(q), l.name(s))
                    });
                }
            }
        }
    }
    let mut r = stream(cfg, 1);
    let mut kernel_pair = Law::new("commutator_pair = kernel form on projection pairs");
    let mut kernel_set = Law::new("commutator_set = kernel form on projection triples");
    let mut om = Law::new("orthomodular law on sampled projections");
    for i in 0..cfg.hilbert_triples {
        let dim = 2 + i % 3;
        let l = ProjectionLattice::new(dim);
        let f = sample_projections(dim, 3, &mut r);
        let ker = l.commutator_by_kernel(&f);
        let d = commutator_set(&l, &f).distance(&ker);
        kernel_set.record(d <= cfg.agree_tol, || format!("dim {dim}: distance {d:.3e}"));
        let kp = l.commutator_by_kernel(&f[..2]);
        let d = commutator_pair(&l, &f[0], &f[1]).distance(&kp);
        kernel_pair.record(d <= cfg.agree_tol, || format!("dim {dim}: distance {d:.3e}"));
        let (p, q) = (l.meet(&f[0], &f[1]), l.join(&f[0], &f[1]));
        let back = l.join(&p, &l.meet(&q, &p.complement()));
        om.record(back.distance(&q) <= cfg.agree_tol, || format!("dim {dim}"));
    }
    for law in [axioms, pair_bf, triple_bf, kernel_pair, kernel_set, om] {
        rep.push(law);
    }
    rep
}

fn c2_material(_: &SuiteConfig) -> Report {
    let mut rep = Report::new("minimum implicative conditions");
    for (name, l) in finite_lattices() {
        let els = elements(&l);
        let passing: Vec<Kind> = Kind::ALL.into_iter().filter(|&k| check_material(&l, k, &els).ok()).collect();
        let expected: Vec<Kind> = if l.is_boolean() { Kind::ALL.to_vec() } else { vec![Kind::R, Kind::C, Kind::S] };
        let mut law = Law::new(format!("{name}: kinds passing (E), (MP), (MT)"));
        law.record(passing == expected, || {
            format!("passing {:?}", passing.iter().map(|k| k.label()).collect::<Vec<_>>())
        });
        rep.push(law);
        rep.note(format!("{name}: {}", passing.iter().map(|k| k.label()).collect::<Vec<_>>().join(" ")));
    }
    let l = mo(2).expect("builtin");
    let els = elements(&l);
    let mut t = Law::new("MO2: S, C, R are not transitive; the biconditional is");
    for k in MATERIAL {
        let c = check_transitivity_failure(&l, k, &els);
        t.record(c.witness.is_some() && c.report.ok(), || format!("kind {}", k.label()));
    }
    rep.push(t);
    rep
}

fn c3_identities(cfg: &SuiteConfig) -> Report {
    let mut rep = Report::new("identities among the conditionals");
    for (name, l) in finite_lattices().into_iter().take(2) {
        let mut sub = check_identities(&l, &all_pairs(&elements(&l)));
        for law in &mut sub.laws {
            law.name = format!("{name}: {}", law.name);
        }
        rep.merge(sub);
    }
    let mut r = stream(cfg, 3);
    let mut worst = Law::new("projection pairs: all identities within tolerance");
    let mut kernel = Law::new("projection pairs: S, C, R equal their kernel forms");
    for i in 0..cfg.identity_pairs {
        let dim = 2 + i % 3;
        let l = ProjectionLattice::with_tolerances(dim, crate::hilbert::KERNEL_TOL, cfg.agree_tol);
        let f = sample_projections(dim, 2, &mut r);
        let sub = check_identities(&l, &[(f[0].clone(), f[1].clone())]);
        worst.record(sub.ok(), || format!("dim {dim}: {}", sub.laws.iter().filter(|l| !l.ok()).map(|l| l.name.clone()).collect::<Vec<_>>().join("; ")));
        let ok = MATERIAL.iter().all(|&k| {
            let ker = l.conditional_via_kernel(k, &f[0], &f[1]).expect("material kind");
            ker.distance(&conditional(&l, k, &f[0], &f[1])) <= cfg.agree_tol
        });
        kernel.record(ok, || format!("dim {dim}"));
    }
    rep.push(worst);
    rep.push(kernel);
    rep
}

fn c4_counterexample(_: &SuiteConfig) -> Report {
    let mut rep = Report::new("equality counterexample on MO2");
    let l = mo(2).expect("builtin");
    let uni = Universe::new(l.clone());
    let cands = elements(&l);
    for k in MATERIAL {
        let ev = Evaluator::new(&uni, Interpretation::self_dual(k));
        let mut values = Law::new(format!("{}: truth values of the construction", k.label()));
        let mut refuted = Law::new(format!("{}: transitivity and substitution fail", k.label()));
        match counterexample_transitivity(&ev, &cands) {
            Ok(Some(w)) => {
                for v in &w.values {
                    values.record(v.matches, || format!("{} = {}, expected {}", v.name, v.computed, v.expected));
                }
                refuted.record(w.refutes(), || format!("{:?}", w.laws));
                if k == Kind::S {
                    for v in &w.values {
                        rep.note(format!("{} = {}", v.name, v.computed));
                    }
                }
            }
            other => {
                values.record(false, || format!("no witness: {other:?}").chars().take(200).collect());
            }
        }
        rep.push(values);
        rep.push(refuted);
    }
    rep
}

fn c5_first_order(_: &SuiteConfig) -> Report {
    let mut rep = Report::new("first-order equality on MO2 with |X| = 2");
    let l = mo(2).expect("builtin");
    let uni = Universe::new(l.clone());
    let vals = elements(&l);
    for k in MATERIAL {
        let ev = Evaluator::new(&uni, Interpretation::self_dual(k));
        match check_first_order(&ev, &vals, 2) {
            Ok(mut sub) => {
                for law in &mut sub.laws {
                    law.name = format!("{}: {}", k.label(), law.name);
                }
                rep.merge(sub);
            }
            Err(e) => {
                let mut law = Law::new(format!("{}: evaluation", k.label()));
                law.record(false, || e.to_string());
                rep.push(law);
            }
        }
    }
    rep
}

fn c6_de_morgan(cfg: &SuiteConfig) -> Report {
    let mut rep = Report::new("De Morgan laws on MO2");
    let l = mo(2).expect("builtin");
    let uni = Universe::new(l.clone());
    let samples = uni.enumerate(&nonzero(&l), 2, 2);
    rep.note(format!("{} sets of rank <= 2", samples.len()));
    let mut interps: Vec<Interpretation> = MATERIAL.iter().map(|&k| Interpretation::self_dual(k)).collect();
    interps.push(Interpretation::takeuti());
    for i in &cfg.extra_interpretations {
        if !interps.contains(i) {
            interps.push(*i);
        }
    }
    for i in interps {
        let ev = Evaluator::new(&uni, i);
        let sub = match check_de_morgan(&ev, &samples, 6) {
            Ok(s) => s,
            Err(e) => {
                let mut law = Law::new(format!("{i}: evaluation"));
                law.record(false, || e.to_string());
                rep.push(law);
                continue;
            }
        };
        let mut sub = sub;
        if !i.is_self_dual() {
            expect_bounded_de_morgan_failure(&mut sub);
        }
        for law in sub.laws {
            let mut law = law;
            law.name = format!("{i}: {}", law.name);
            rep.push(law);
        }
    }
    rep
}

fn c7_transfer(_: &SuiteConfig) -> Report {
    let mut rep = Report::new("transfer on MO2");
    let l = mo(2).expect("builtin");
    let uni = Universe::new(l.clone());
    let samples = uni.enumerate(&nonzero(&l), 2, 2);
    rep.note(format!("{} sets of rank <= 2 with at most two members", samples.len()));
    for k in MATERIAL {
        let ev = Evaluator::new(&uni, Interpretation::self_dual(k));
        match transfer_suite(&ev, &samples) {
            Ok(sub) => {
                for mut law in sub.laws {
                    law.name = format!("{}: {}", k.label(), law.name);
                    rep.push(law);
                }
            }
            Err(e) => {
                let mut law = Law::new(format!("{}: evaluation", k.label()));
                law.record(false, || e.to_string());
                rep.push(law);
            }
        }
    }
    rep
}

fn c8_roundtrip(cfg: &SuiteConfig) -> Report {
    let mut rep = Report::new("operator round trip");
    let mut r = stream(cfg, 8);
    let mut spectrum = Law::new("jump points are the distinct eigenvalues");
    let mut valid = Law::new("the image is a valid internal real");
    let mut there = Law::new("Psi(Phi(X)) = X");
    let mut back = Law::new("Phi(Psi(u)) = u");
    let mut worst: f64 = 0.0;
    for i in 0..cfg.roundtrips {
        let dim = 1 + i % 6;
        let (x, vals) = snapped_hermitian(dim, &mut r);
        let lat = ProjectionLattice::new(dim);
        let u = match operator_to_internal(&x, &SnapConfig::default()) {
            Ok(u) => u,
            Err(e) => {
                spectrum.record(false, || e.to_string());
                continue;
            }
        };
        let mut distinct = vals.clone();
        distinct.sort();
        distinct.dedup();
        spectrum.record(u.points().cloned().collect::<Vec<_>>() == distinct, || format!("dim {dim}"));
        valid.record(validate_internal_real(&lat, &u).ok(), || format!("dim {dim}"));
        let Ok(y) = internal_to_operator(&u) else {
            there.record(false, || format!("dim {dim}: reconstruction failed"));
            continue;
        };
        let d = (y.matrix() - x.matrix()).norm();
        worst = worst.max(d);
        there.record(d <= cfg.roundtrip_tol, || format!("dim {dim}: error {d:.3e}"));
        let ok = match operator_to_internal(&y, &SnapConfig::default()) {
            Ok(v) => {
                v.len() == u.len()
                    && v.jumps().iter().zip(u.jumps()).all(|((r1, e1), (r2, e2))| {
                        r1 == r2 && e1.distance(e2) <= cfg.roundtrip_tol
                    })
            }
            Err(_) => false,
        };
        back.record(ok, || format!("dim {dim}"));
    }
    rep.note(format!("largest reconstruction error {worst:.3e}"));
    for law in [spectrum, valid, there, back] {
        rep.push(law);
    }
    rep
}

/// Mostly pairs with a shared commuting block, so equality is a proper
/// projection; every third pair is unstructured.
fn equality_pair(i: usize, r: &mut TestRng) -> (usize, Observable, Observable) {
    let dim = 2 + i % 3;
    let (x, y) = if i % 3 == 2 {
        (random_hermitian(dim, r), random_hermitian(dim, r))
    } else {
        crate::hilbert::random::structured_observable_pair(dim, r)
    };
    (dim, x, y)
}

fn c9_real_equality(cfg: &SuiteConfig) -> Report {
    let mut rep = Report::new("equality of internal reals");
    let mut r = stream(cfg, 9);
    let mut kernel = Law::new("[u = v] = P{psi | u(x)psi = v(x)psi}");
    let mut bound = Law::new("[u = v] <= com(u, v)");
    let mut com_forms = Law::new("com(u, v) = kernel form");
    let mut kinds = Law::new("[u = v] is the same for S, C, R");
    let mut chain = Law::new("[u = v] & [v = u] = [u = v]");
    let mut proper = 0;
    let sc = snap(cfg);
    for i in 0..cfg.equality_pairs {
        let (dim, x, y) = equality_pair(i, &mut r);
        let lat = ProjectionLattice::with_tolerances(dim, crate::hilbert::KERNEL_TOL, cfg.agree_tol);
        let (Ok(u), Ok(v)) = (operator_to_internal(&x, &sc), operator_to_internal(&y, &sc)) else {
            kernel.record(false, || format!("dim {dim}: snapping failed"));
            continue;
        };
        let eq = truth_eq(&lat, &u, &v);
        if eq.rank() > 0 && eq.rank() < dim {
            proper += 1;
        }
        let d = eq.distance(&truth_eq_kernel(&lat, &u, &v));
        kernel.record(d <= cfg.agree_tol, || format!("dim {dim}: distance {d:.3e}"));
        let com = com_internal(&lat, &u, &v);
        bound.record(lat.leq(&eq, &com), || format!("dim {dim}"));
        let d = com.distance(&com_internal_kernel(&lat, &u, &v));
        com_forms.record(d <= cfg.agree_tol, || format!("dim {dim}: distance {d:.3e}"));
        let per_kind: Vec<Projection> = MATERIAL.iter().map(|&k| truth_eq_kind(&lat, k, &u, &v)).collect();
        let d = per_kind.iter().map(|p| p.distance(&eq)).fold(0.0, f64::max);
        kinds.record(d <= cfg.agree_tol, || format!("dim {dim}: distance {d:.3e}"));
        chain.record(lat.same(&chain_eq(&lat, &[u.clone(), v.clone(), u.clone()]), &eq), || format!("dim {dim}"));
    }
    rep.note(format!("{proper} of {} pairs have a proper equality value", cfg.equality_pairs));
    let mut kinds_exact = Law::new("[u = v] is the same for S, C, R on MO2 (exact)");
    let l = mo(2).expect("builtin");
    let reals = crate::reals::enumerate_reals(&l, &elements(&l), &[crate::reals::integer(0), crate::reals::integer(1)]);
    for u in &reals {
        for v in &reals {
            let e = truth_eq(&l, u, v);
            kinds_exact.record(MATERIAL.iter().all(|&k| truth_eq_kind(&l, k, u, v) == e), || "MO2".to_string());
        }
    }
    for law in [kernel, bound, com_forms, kinds, kinds_exact, chain] {
        rep.push(law);
    }
    rep
}

fn min_eigenvalue(m: &CMat) -> f64 {
    SymmetricEigen::new(m.clone()).eigenvalues.iter().fold(f64::INFINITY, |a, &b| a.min(b))
}

/// A commuting pair X ≼ Y in a common random basis.
fn commuting_chain(dim: usize, r: &mut TestRng) -> (Observable, Observable) {
    let u = crate::hilbert::random::random_unitary(dim, r);
    let mut xs: Vec<f64> = (0..dim).map(|_| r.random_range(0..4) as f64).collect();
    xs.sort_by(f64::total_cmp);
    let ys: Vec<f64> = xs.iter().map(|x| x + r.random_range(0..2) as f64).collect();
    (Observable::diagonal(&xs).conjugate(&u), Observable::diagonal(&ys).conjugate(&u))
}

fn c10_spectral_order(cfg: &SuiteConfig) -> Report {
    let mut rep = Report::new("spectral order and full truth of X <= Y");
    let mut r = stream(cfg, 10);
    let mut iff = Law::new("X <= Y spectrally iff [X <= Y] = 1, for S, C, R");
    let mut chains = Law::new("commuting chains are ordered");
    let mut power = Law::new("X <= Y spectrally implies X^n <= Y^n, n = 1..3");
    let (mut ordered, mut unordered, mut noncommuting) = (0, 0, 0);
    let sc = snap(cfg);
    let chain_count = cfg.order_pairs / 4;
    for i in 0..cfg.order_pairs + chain_count {
        let dim = 2 + i % 3;
        let lat = ProjectionLattice::with_tolerances(dim, crate::hilbert::KERNEL_TOL, cfg.agree_tol);
        let is_chain = i >= cfg.order_pairs;
        let (x, y, constructed) = if is_chain {
            let (x, y) = commuting_chain(dim, &mut r);
            (x, y, true)
        } else {
            match i % 4 {
                0 | 1 => {
                    let (x, y) = spectral_order_pair(dim, &mut r);
                    (x, y, true)
                }
                2 => {
                    let (x, y) = crate::hilbert::random::structured_observable_pair(dim, &mut r);
                    (x, y, false)
                }
                _ => (snapped_hermitian(dim, &mut r).0, snapped_hermitian(dim, &mut r).0, false),
            }
        };
        let (Ok(u), Ok(v)) = (operator_to_internal(&x, &sc), operator_to_internal(&y, &sc)) else {
            iff.record(false, || format!("dim {dim}: snapping failed"));
            continue;
        };
        let so = spectral_order(&lat, &u, &v);
        let full: Vec<bool> = MATERIAL.iter().map(|&k| lat.is_one(&truth_le(&lat, &u, &v, k))).collect();
        iff.record(full.iter().all(|&f| f == so), || format!("dim {dim}: spectral {so}, full truth {full:?}"));
        if is_chain {
            chains.record(so, || format!("dim {dim}"));
        }
        if so {
            ordered += 1;
        } else {
            unordered += 1;
        }
        if constructed && so {
            let (xm, ym) = (x.matrix(), y.matrix());
            if (xm * ym - ym * xm).norm() > cfg.agree_tol {
                noncommuting += 1;
            }
            let (mut xp, mut yp) = (xm.clone(), ym.clone());
            let mut ok = true;
            for _ in 0..3 {
                ok &= min_eigenvalue(&(&yp - &xp)) >= -cfg.power_tol;
                xp = &xp * xm;
                yp = &yp * ym;
            }
            power.record(ok, || format!("dim {dim}"));
        }
    }
    rep.note(format!("{ordered} ordered, {unordered} unordered, {noncommuting} ordered non-commuting pairs"));
    let mut both = Law::new("both outcomes occur");
    both.record(ordered > 0 && unordered > 0 && noncommuting > 0, || format!("{ordered} / {unordered} / {noncommuting}"));
    for law in [iff, chains, power, both] {
        rep.push(law);
    }
    rep
}

/// Observable pairs for the measurement checks: generic, ordered and
/// partly commuting in turn.
fn measurement_pair(dim: usize, i: usize, r: &mut TestRng) -> (Observable, Observable) {
    match i % 3 {
        0 => (snapped_hermitian(dim, r).0, snapped_hermitian(dim, r).0),
        1 => spectral_order_pair(dim, r),
        _ => crate::hilbert::random::structured_observable_pair(dim, r),
    }
}

fn c11_measurement(cfg: &SuiteConfig) -> Report {
    let mut rep = Report::new("experimental meaning of [X <= Y]");
    let mut r = stream(cfg, 11);
    let sc = snap(cfg);
    let mut summaries: Vec<MeasureSummary> = MATERIAL.iter().map(|&k| MeasureSummary::new(k)).collect();
    let mut inside = Law::new("states in the range reach probability 1");
    let mut outside = Law::new("states orthogonal to the range stay below 1");
    let mut total = Law::new("P(X <= Y) + P(X > Y) = 1");
    let runs = [(2usize, cfg.qubit_instances), (3usize, cfg.dim3_instances)];
    for (dim, n) in runs {
        for i in 0..n {
            let (x, y) = measurement_pair(dim, i, &mut r);
            let pair = match OrderPair::new(&x, &y, &sc) {
                Ok(p) => p,
                Err(e) => {
                    total.record(false, || e.to_string());
                    continue;
                }
            };
            let psi = haar_state(dim, &mut r);
            if let Ok(j) = crate::measurement::joint_successive(&pair.x, &pair.y, &psi) {
                total.record((j.total() - 1.0).abs() <= 1e-9, || format!("dim {dim}: total {}", j.total()));
            }
            for (s, &k) in summaries.iter_mut().zip(MATERIAL.iter()) {
                match pair.check(k, &psi, cfg.eps) {
                    Ok(mut v) => {
                        v.seed = Some(cfg.seed);
                        s.push(v, false);
                    }
                    Err(e) => {
                        total.record(false, || e.to_string());
                    }
                }
                let (a, b) = range_states(pair.truth(k), &mut r);
                for (state, want) in [(a, true), (b, false)] {
                    let Some(state) = state else { continue };
                    let Ok(mut v) = pair.check(k, &state, cfg.eps) else { continue };
                    v.seed = Some(cfg.seed);
                    let reached = match k {
                        Kind::K3 => v.p_yx >= 1.0 - cfg.eps,
                        Kind::K2 => v.p_xy >= 1.0 - cfg.eps,
                        _ => v.p_yx >= 1.0 - cfg.eps && v.p_xy >= 1.0 - cfg.eps,
                    };
                    let law = if want { &mut inside } else { &mut outside };
                    law.record(reached == want, || {
                        format!("dim {dim} kind {}: p_yx {:.9} p_xy {:.9}", k.label(), v.p_yx, v.p_xy)
                    });
                    s.push(v, false);
                }
            }
        }
    }
    for (s, k) in summaries.iter().zip(MATERIAL) {
        let mut law = Law::new(format!("kind {}: membership iff probability condition", k.label()));
        law.checked = s.total as u64;
        law.failures = (s.total - s.held) as u64;
        if let Some(v) = s.verdicts.first() {
            law.example = Some(format!("membership {} p_yx {:.9} p_xy {:.9}", v.membership, v.p_yx, v.p_xy));
        }
        rep.note(format!("kind {}: held in {}/{} cases, {} members", k.label(), s.held, s.total, s.members));
        rep.push(law);
    }
    for law in [inside, outside, total] {
        rep.push(law);
    }
    rep
}

const ABSOLUTE_FORMULAS: [&str; 4] = [
    "u = v | (exists x in u (x in v)) -> forall y in v (y sub u)",
    "forall x in u (x in v) <-> u sub v",
    "exists x in u (x = v) & !(v in v)",
    "forall x in u (exists y in v (x = y))",
];

const ELEMENTARY_FORMULAS: [&str; 5] = [
    "a in b",
    "a sub b & !(a = b)",
    "forall x in a (x in b | x = b)",
    "exists x in b (forall y in x (y in a))",
    "forall x in b (exists y in b (x in y) | x = a)",
];

fn c12_absoluteness(cfg: &SuiteConfig) -> Report {
    let mut rep = Report::new("absoluteness and elementary equivalence");
    let l = mo(2).expect("builtin");
    let a = l.elem("a").expect("MO2 has a");
    let block = l.generated(&[a]);
    let (sub, emb) = match l.sublattice(&block) {
        Ok(x) => x,
        Err(e) => {
            let mut law = Law::new("Boolean block");
            law.record(false, || e.to_string());
            rep.push(law);
            return rep;
        }
    };
    let mut boolean_block = Law::new("the block generated by a is Boolean");
    boolean_block.record(sub.is_boolean(), || "not Boolean".into());
    rep.push(boolean_block);
    let full = Universe::new(l.clone());
    let subu = Universe::new(sub.clone());
    let vals: Vec<Element> = emb.iter().copied().filter(|e| *e != l.bot()).collect();
    let samples: Vec<QSet<Element>> = full.enumerate(&vals, 2, 1);
    let restrict = |e: &Element| emb.iter().position(|x| x == e).map(|i| sub.at(i));
    let embed = |e: &Element| emb[e.index()];
    let mut abs = Law::new("sublogic value = ambient value");
    for k in MATERIAL {
        let ev = Evaluator::new(&full, Interpretation::self_dual(k));
        let sv = Evaluator::new(&subu, Interpretation::self_dual(k));
        for src in ABSOLUTE_FORMULAS {
            let f = parse(src).expect("fixed formula");
            for u in &samples {
                for v in &samples {
                    let env = Env::from([("u".to_string(), u.clone()), ("v".to_string(), v.clone())]);
                    match check_absoluteness(&ev, &sv, &f, &env, &restrict, &embed) {
                        Ok(o) => abs.record(o.equal, || format!("{src}: {} vs {}", o.in_sublogic, o.in_ambient)),
                        Err(e) => abs.record(false, || e.to_string()),
                    };
                }
            }
        }
    }
    rep.push(abs);
    let mut r = stream(cfg, 12);
    let uni = Universe::new(l.clone());
    let mut elem = Law::new("check-embedded values are 0 or 1 and match classical truth");
    let interps = [
        Interpretation::self_dual(Kind::S),
        Interpretation::self_dual(Kind::C),
        Interpretation::self_dual(Kind::R),
        Interpretation::takeuti(),
    ];
    for i in 0..cfg.hf_instances {
        let f = parse(ELEMENTARY_FORMULAS[i % ELEMENTARY_FORMULAS.len()]).expect("fixed formula");
        let a = random_hf(&mut r);
        let b = random_hf(&mut r);
        let args = [("a".to_string(), a), ("b".to_string(), b)];
        for interp in interps {
            let ev = Evaluator::new(&uni, interp);
            match check_elementary(&ev, &f, &args) {
                Ok(o) => elem.record(o.two_valued && o.agrees, || format!("{f} under {interp}: {o:?}")),
                Err(e) => elem.record(false, || e.to_string()),
            };
        }
    }
    rep.push(elem);
    rep
}

/// A small hereditarily finite set: a natural, a pair of naturals, or a set
/// of those.
fn random_hf(r: &mut TestRng) -> Hf {
    match r.random_range(0..3) {
        0 => Hf::nat(r.random_range(0..5)),
        1 => Hf::pair(Hf::nat(r.random_range(0..3)), Hf::nat(r.random_range(0..3))),
        _ => {
            let n = r.random_range(0..3);
            Hf::set((0..n).map(|_| Hf::nat(r.random_range(0..4))))
        }
    }
}

use super::checks::*;
use super::*;
use crate::connectives::{Interpretation, Kind};
use crate::formula::{parse, Formula};
use crate::oml::{boolean, builtin, mo, product, FiniteOml};
use proptest::prelude::*;

fn mo2() -> FiniteOml {
    mo(2).unwrap()
}

fn nonzero(l: &FiniteOml) -> Vec<crate::oml::Element> {
    l.elements().filter(|e| *e != l.bot()).collect()
}

fn material() -> [Interpretation; 3] {
    [Kind::S, Kind::C, Kind::R].map(Interpretation::self_dual)
}

#[test]
fn construction_and_interning() {
    let l = mo2();
    let uni = Universe::new(l.clone());
    let e = uni.empty();
    let a = l.elem("a").unwrap();
    let s1 = uni.set(vec![(e.clone(), a)]).unwrap();
    let s2 = uni.set(vec![(e.clone(), a)]).unwrap();
    assert_eq!(s1, s2);
    assert_eq!(s1.rank(), 1);
    assert_eq!(e.rank(), 0);
    assert_eq!(uni.set(vec![(e.clone(), a), (e.clone(), l.top())]).unwrap_err(), QvuError::DuplicateChild);
    let other = Universe::new(l.clone());
    assert_eq!(other.set(vec![(e.clone(), a)]).unwrap_err(), QvuError::MixedUniverse);
    let foreign = boolean(2).unwrap();
    assert_eq!(uni.set(vec![(e, foreign.top())]).unwrap_err(), QvuError::ForeignValue);
}

#[test]
fn support_and_check_embedding() {
    let l = mo2();
    let uni = Universe::new(l.clone());
    assert_eq!(uni.support(&uni.empty()), vec![l.bot()]);
    let three = uni.check(&Hf::nat(3)).unwrap();
    let mut sup = uni.support(&three);
    sup.sort();
    assert_eq!(sup, vec![l.bot(), l.top()]);
    assert_eq!(three.dom().len(), 3);
    assert_eq!(three.rank(), 3);
    let a = l.elem("a").unwrap();
    let b = l.elem("b").unwrap();
    let inner = uni.set(vec![(uni.empty(), b)]).unwrap();
    let u = uni.set(vec![(inner, a)]).unwrap();
    let mut s = uni.support(&u);
    s.sort();
    assert_eq!(s, vec![l.bot(), a, b]);
    assert_eq!(uni.com(&[u]), l.bot());
    let mut small = Universe::new(l);
    small.max_check_rank = 2;
    assert_eq!(small.check(&Hf::nat(3)).unwrap_err(), QvuError::TooDeep(2));
}

#[test]
fn enumeration_counts() {
    let l = mo2();
    let uni = Universe::new(l.clone());
    let vals = nonzero(&l);
    // 1 + 5 sets of rank <= 1; rank <= 2 adds all domains of size <= 2.
    assert_eq!(uni.enumerate(&vals, 1, 2).len(), 6);
    assert_eq!(uni.enumerate(&vals, 2, 2).len(), 1 + 6 * 5 + 15 * 25);
}

#[test]
fn equality_basics_on_mo2() {
    let l = mo2();
    let uni = Universe::new(l.clone());
    let samples = uni.enumerate(&nonzero(&l), 2, 1);
    for i in Interpretation::all() {
        let ev = Evaluator::new(&uni, i);
        for u in &samples {
            assert_eq!(ev.eq(u, u), l.top(), "{i}");
            for (x, ux) in u.dom() {
                assert!(l.le(*ux, ev.mem(x, u)));
            }
            for v in &samples {
                assert_eq!(ev.eq(u, v), ev.eq(v, u));
            }
        }
    }
}

#[test]
fn memo_agrees_with_plain_recursion() {
    let l = mo2();
    let uni = Universe::new(l.clone());
    let samples = uni.enumerate(&nonzero(&l), 2, 2);
    for i in [Interpretation::takeuti(), Interpretation::self_dual(Kind::R)] {
        let a = Evaluator::new(&uni, i);
        let b = Evaluator::without_memo(&uni, i);
        for u in samples.iter().step_by(7) {
            for v in samples.iter().step_by(5) {
                assert_eq!(a.eq(u, v), b.eq(u, v));
                assert_eq!(a.mem(u, v), b.mem(u, v));
                assert_eq!(a.subset(u, v), b.subset(u, v));
            }
        }
        assert!(a.memo_len() > 0);
        assert_eq!(b.memo_len(), 0);
    }
}

#[test]
fn child_evaluator_leaves_parent_cache_alone() {
    let l = mo2();
    let uni = Universe::new(l.clone());
    let ev = Evaluator::new(&uni, Interpretation::self_dual(Kind::S));
    let u = uni.check(&Hf::nat(2)).unwrap();
    ev.eq(&u, &u);
    let before = ev.memo_len();
    let p = uni.qset_of(&[u.clone(), uni.empty()]).unwrap();
    {
        let c = ev.child();
        assert_eq!(c.mem(&u, &p), l.top());
        assert!(c.memo_len() > 0);
    }
    assert_eq!(ev.memo_len(), before);
}

#[test]
fn padding_never_changes_truth_values() {
    let l = mo2();
    let uni = Universe::new(l.clone());
    let samples = uni.enumerate(&nonzero(&l), 2, 1);
    let extra = [uni.check(&Hf::nat(1)).unwrap(), uni.check(&Hf::nat(2)).unwrap()];
    let fs = ["u = v", "u in v", "v in u", "forall x in u (x in v)", "exists x in v (u = x)"];
    for i in material().into_iter().chain([Interpretation::takeuti()]) {
        let ev = Evaluator::new(&uni, i);
        for u in &samples {
            let pu = uni.pad(u, &extra[..1]).unwrap();
            for v in &samples {
                let pv = uni.pad(v, &extra).unwrap();
                for f in fs {
                    let mk = |a: &QSet<_>, b: &QSet<_>| {
                        Env::from([("u".to_string(), a.clone()), ("v".to_string(), b.clone())])
                    };
                    assert_eq!(ev.eval_str(f, &mk(u, v)).unwrap(), ev.eval_str(f, &mk(&pu, &pv)).unwrap(), "{f}");
                }
            }
        }
    }
}

#[test]
fn singleton_and_pair_laws() {
    let l = mo2();
    let uni = Universe::new(l.clone());
    let samples = uni.enumerate(&nonzero(&l), 2, 1);
    for i in material() {
        let ev = Evaluator::new(&uni, i);
        let r = check_equality_theorems(&ev, &samples, 12).unwrap();
        assert!(r.ok(), "{r}");
        assert!(r.law("com(u,v,w) & [u = v] & [v = w] <= [u = w]").unwrap().checked > 0);
    }
}

#[test]
fn equality_counterexample_values() {
    let l = mo2();
    let uni = Universe::new(l.clone());
    let cands: Vec<_> = l.elements().collect();
    for i in material() {
        let ev = Evaluator::new(&uni, i);
        let w = counterexample_transitivity(&ev, &cands).unwrap().expect("MO2 is not distributive");
        for v in &w.values {
            assert!(v.matches, "{i}: {} = {}, expected {}", v.name, v.computed, v.expected);
        }
        assert!(w.refutes(), "{i}: {:?}", w.laws);
        assert!(w.law("modified transitivity").unwrap().holds);
        assert!(w.law("as listed, into {w}").unwrap().holds);
        assert!(w.law("as listed, into {u}, {v}").unwrap().holds);
        assert_eq!(w.e, l.top());
    }
    let b = boolean(3).unwrap();
    let bu = Universe::new(b.clone());
    let ev = Evaluator::new(&bu, Interpretation::self_dual(Kind::S));
    let cands: Vec<_> = b.elements().collect();
    assert!(counterexample_transitivity(&ev, &cands).unwrap().is_none());
}

#[test]
fn counterexample_with_nontrivial_center() {
    // In MO2 x 2 the pair ((a,1),(b,1)) has com = (0,1), so E = (1,0).
    let l = product(&mo2(), &boolean(1).unwrap()).unwrap();
    let uni = Universe::new(l.clone());
    let q1 = l.elem("(a,1)").unwrap();
    let q2 = l.elem("(b,1)").unwrap();
    for i in material() {
        let ev = Evaluator::new(&uni, i);
        let w = transitivity_witness(&ev, &q1, &q2).unwrap();
        assert_eq!(l.name(w.e), "(1,0)");
        assert!(w.values_match(), "{:?}", w.values);
        assert!(w.refutes());
    }
}

#[test]
fn first_order_sets_on_mo2() {
    let l = mo2();
    let uni = Universe::new(l.clone());
    let vals: Vec<_> = l.elements().collect();
    for i in material() {
        let ev = Evaluator::new(&uni, i);
        let r = check_first_order(&ev, &vals, 2).unwrap();
        assert!(r.ok(), "{r}");
        assert!(r.law("[u sub v] & [v sub w] <= [u sub w]").unwrap().failures > 0);
    }
    let b = boolean(2).unwrap();
    let bu = Universe::new(b.clone());
    let ev = Evaluator::new(&bu, Interpretation::self_dual(Kind::C));
    let r = check_first_order(&ev, &b.elements().collect::<Vec<_>>(), 2).unwrap();
    assert!(r.ok(), "{r}");
    assert_eq!(r.law("[u sub v] & [v sub w] <= [u sub w]").unwrap().failures, 0);
}

#[test]
fn de_morgan_needs_self_duality() {
    let l = mo2();
    let uni = Universe::new(l.clone());
    let samples = uni.enumerate(&nonzero(&l), 2, 1);
    for i in material() {
        let ev = Evaluator::new(&uni, i);
        let r = check_de_morgan(&ev, &samples, 6).unwrap();
        assert!(r.ok(), "{r}");
    }
    let ev = Evaluator::new(&uni, Interpretation::takeuti());
    let mut r = check_de_morgan(&ev, &samples, 6).unwrap();
    assert!(r.law("M3").unwrap().failures > 0);
    assert!(r.law("M1").unwrap().ok());
    assert!(r.law("M5").unwrap().ok());
    expect_bounded_de_morgan_failure(&mut r);
    assert!(r.ok(), "{r}");

    let b = boolean(2).unwrap();
    let bu = Universe::new(b.clone());
    let bs = bu.enumerate(&nonzero(&b), 2, 1);
    let ev = Evaluator::new(&bu, Interpretation::takeuti());
    assert!(check_de_morgan(&ev, &bs, 4).unwrap().ok());
}

#[test]
fn every_self_dual_interpretation_keeps_de_morgan() {
    let l = mo2();
    let uni = Universe::new(l.clone());
    let samples = uni.enumerate(&nonzero(&l), 2, 1);
    for i in Interpretation::all() {
        let ev = Evaluator::new(&uni, i);
        let r = check_de_morgan(&ev, &samples, 4).unwrap();
        let bounded = r.law("M3").unwrap().ok() && r.law("M4").unwrap().ok();
        assert_eq!(bounded, i.is_self_dual(), "{i}");
    }
}

#[test]
fn transfer_suite_small() {
    let l = mo2();
    let uni = Universe::new(l.clone());
    let samples = uni.enumerate(&nonzero(&l), 2, 1);
    for i in material() {
        let ev = Evaluator::new(&uni, i);
        let r = transfer_suite(&ev, &samples).unwrap();
        assert!(r.ok(), "{r}");
        let t = r.laws.iter().map(|l| l.checked - l.trivial).sum::<u64>();
        assert!(t > 1000, "{r}");
    }
}

#[test]
fn transfer_single_instances() {
    let l = mo2();
    let uni = Universe::new(l.clone());
    let ev = Evaluator::new(&uni, Interpretation::self_dual(Kind::S));
    let w = transitivity_witness(&ev, &l.elem("a").unwrap(), &l.elem("b").unwrap()).unwrap();
    let env = Env::from([("u".to_string(), w.u.clone()), ("v".to_string(), w.v.clone()), ("w".to_string(), w.w.clone())]);
    let f = parse("u = v & v = w -> u = w").unwrap();
    let t = check_transfer(&ev, &f, &env).unwrap();
    assert!(t.holds);
    assert_eq!(t.com, "0");
    let u = Env::from([("u".to_string(), w.u.clone())]);
    let t = check_transfer(&ev, &parse("u = u").unwrap(), &u).unwrap();
    assert_eq!(t.truth, "1");
}

#[test]
fn elementary_equivalence_on_naturals() {
    let l = mo2();
    let uni = Universe::new(l);
    let fs = [
        "a in b",
        "a sub b",
        "a = b",
        "forall x in a (x in b)",
        "exists x in b (forall y in x (y in a))",
        "forall x in b (exists y in b (x in y) | x = a)",
    ];
    for i in [Interpretation::self_dual(Kind::S), Interpretation::takeuti()] {
        let ev = Evaluator::new(&uni, i);
        for f in fs {
            let f = parse(f).unwrap();
            for m in 0..4 {
                for n in 0..4 {
                    let args = [("a".to_string(), Hf::nat(m)), ("b".to_string(), Hf::nat(n))];
                    let o = check_elementary(&ev, &f, &args).unwrap();
                    assert!(o.two_valued && o.agrees, "{f} at {m}, {n}: {o:?}");
                }
            }
        }
    }
}

#[test]
fn absoluteness_over_a_boolean_block() {
    let l = mo2();
    let a = l.elem("a").unwrap();
    let block = l.generated(&[a]);
    let (sub, emb) = l.sublattice(&block).unwrap();
    assert!(sub.is_boolean());
    let full = Universe::new(l.clone());
    let subu = Universe::new(sub.clone());
    let vals: Vec<_> = emb.iter().copied().filter(|e| *e != l.bot()).collect();
    let samples = full.enumerate(&vals, 2, 1);
    let restrict = |e: &crate::oml::Element| emb.iter().position(|x| x == e).map(|i| sub.at(i));
    let embed = |e: &crate::oml::Element| emb[e.index()];
    let f = parse("u = v | (exists x in u (x in v)) -> forall y in v (y sub u)").unwrap();
    for i in material() {
        let ev = Evaluator::new(&full, i);
        let sv = Evaluator::new(&subu, i);
        for u in &samples {
            for v in samples.iter().step_by(3) {
                let env = Env::from([("u".to_string(), u.clone()), ("v".to_string(), v.clone())]);
                let o = check_absoluteness(&ev, &sv, &f, &env, &restrict, &embed).unwrap();
                assert!(o.equal, "{o:?}");
            }
        }
    }
    let b = full.set(vec![(full.empty(), l.elem("b").unwrap())]).unwrap();
    let env = Env::from([("u".to_string(), b.clone()), ("v".to_string(), b)]);
    let ev = Evaluator::new(&full, Interpretation::self_dual(Kind::S));
    let sv = Evaluator::new(&subu, Interpretation::self_dual(Kind::S));
    assert!(matches!(
        check_absoluteness(&ev, &sv, &f, &env, &restrict, &embed),
        Err(QvuError::NotInSublogic(_))
    ));
}

#[test]
fn derived_connectives_expand_consistently() {
    let l = mo2();
    let uni = Universe::new(l.clone());
    let samples = uni.enumerate(&nonzero(&l), 2, 1);
    let fs = ["u in v | v in u", "exists x in u (x = v)", "u sub v", "u = v <-> v in u"];
    let mut takeuti_diverges = false;
    for i in material().into_iter().chain([Interpretation::takeuti()]) {
        let ev = Evaluator::new(&uni, i);
        for f in fs {
            let f = parse(f).unwrap();
            let g = f.expand_derived();
            for u in &samples {
                for v in &samples {
                    let env = Env::from([("u".to_string(), u.clone()), ("v".to_string(), v.clone())]);
                    let a = ev.eval(&f, &env).unwrap();
                    let b = ev.eval(&g, &env).unwrap();
                    if i.is_self_dual() {
                        assert_eq!(a, b, "{i}: {f}");
                    } else if a != b {
                        takeuti_diverges = true;
                    }
                }
            }
        }
    }
    assert!(takeuti_diverges);
}

#[test]
fn literal_parsing() {
    let l = mo2();
    let uni = Universe::new(l.clone());
    let names = l.clone();
    let value_of = move |s: &str| names.elem(s).ok();
    let mut bound = HashMap::new();
    let u = parse_qset_literal(&uni, "{ {}: a, {{}: 1}: b' }", &bound, &value_of).unwrap();
    assert_eq!(u.dom().len(), 2);
    assert_eq!(uni.describe(&parse_qset_literal(&uni, &uni.describe(&u), &bound, &value_of).unwrap()), uni.describe(&u));
    bound.insert("u".to_string(), u.clone());
    let v = parse_qset_literal(&uni, "{$u: 1, #2: a'}", &bound, &value_of).unwrap();
    assert_eq!(v.value(&u), Some(&l.top()));
    assert_eq!(v.value(&uni.check(&Hf::nat(2)).unwrap()), Some(&l.elem("a'").unwrap()));
    for bad in ["{", "{{}: q}", "{{} a}", "{$w: 1}", "{}{}", "{#x: 1}"] {
        assert!(parse_qset_literal(&uni, bad, &bound, &value_of).is_err(), "{bad}");
    }
    let p = product(&mo2(), &boolean(1).unwrap()).unwrap();
    let pu = Universe::new(p.clone());
    let pv = move |s: &str| p.elem(s).ok();
    let s = parse_qset_literal(&pu, "{{}: (a,1), {{}: (1,1)}: (b',0)}", &HashMap::new(), &pv).unwrap();
    assert_eq!(s.dom().len(), 2);
}

#[test]
fn builtin_lattices_work_as_truth_values() {
    let l = builtin("mo3").unwrap();
    let uni = Universe::new(l.clone());
    let ev = Evaluator::new(&uni, Interpretation::self_dual(Kind::C));
    let cands: Vec<_> = l.elements().collect();
    let w = counterexample_transitivity(&ev, &cands).unwrap().unwrap();
    assert!(w.values_match() && w.refutes());
}

#[test]
fn unbound_names_are_reported() {
    let l = mo2();
    let uni = Universe::new(l);
    let ev = Evaluator::new(&uni, Interpretation::self_dual(Kind::S));
    let env = Env::from([("u".to_string(), uni.empty())]);
    assert_eq!(ev.eval_str("u = v", &env).unwrap_err(), QvuError::Unbound("v".into()));
    assert!(ev.eval(&Formula::True, &Env::new()).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn check_embedded_formulas_are_classical(m in 0usize..5, n in 0usize..5, k in 0usize..3, which in 0usize..4) {
        let fs = [
            "a in b & b in c",
            "forall x in a (x in b | x = c)",
            "exists x in c (a sub x)",
            "(a = b) <-> (forall x in a (x in b) & forall y in b (y in a))",
        ];
        let l = mo2();
        let uni = Universe::new(l);
        let ev = Evaluator::new(&uni, Interpretation::self_dual(Kind::R));
        let f = parse(fs[which]).unwrap();
        let args = [
            ("a".to_string(), Hf::nat(m)),
            ("b".to_string(), Hf::pair(Hf::nat(n), Hf::nat(k))),
            ("c".to_string(), Hf::nat(n + k)),
        ];
        let o = check_elementary(&ev, &f, &args).unwrap();
        prop_assert!(o.two_valued && o.agrees);
    }

    #[test]
    fn random_sets_satisfy_equality_bounds(seed in 0u64..1000, ki in 0usize..3) {
        use rand::{Rng, SeedableRng};
        let l = mo2();
        let uni = Universe::new(l.clone());
        let vals: Vec<_> = l.elements().collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut pool = vec![uni.empty()];
        for _ in 0..12 {
            let n = rng.random_range(0..=3usize);
            let mut entries: Vec<(QSet<_>, _)> = Vec::new();
            for _ in 0..n {
                let c = pool[rng.random_range(0..pool.len())].clone();
                if entries.iter().all(|(x, _)| *x != c) {
                    entries.push((c, vals[rng.random_range(0..vals.len())]));
                }
            }
            pool.push(uni.set(entries).unwrap());
        }
        let ev = Evaluator::new(&uni, material()[ki]);
        let mut cc = ComCache::new(&uni);
        for u in &pool {
            prop_assert_eq!(ev.eq(u, u), l.top());
            for v in &pool {
                for w in &pool {
                    let c = cc.com(&[u, v, w]);
                    prop_assert_eq!(c, uni.com(&[u.clone(), v.clone(), w.clone()]));
                    let lhs = l.m(c, l.m(ev.eq(u, v), ev.eq(v, w)));
                    prop_assert!(l.le(lhs, ev.eq(u, w)));
                }
            }
        }
    }
}

//! The six polynomially definable conditionals on an orthomodular lattice,
//! their dual conjunctions, and the interpretations built from them.

use crate::logic::{commutator_pair, Logic};
use crate::report::{Law, Report};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// One of the six conditionals K0..K5. `S`, `C` and `R` are K3, K2, K0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    K0,
    K1,
    K2,
    K3,
    K4,
    K5,
}

impl Kind {
    pub const ALL: [Kind; 6] = [Kind::K0, Kind::K1, Kind::K2, Kind::K3, Kind::K4, Kind::K5];
    /// Sasaki arrow.
    pub const S: Kind = Kind::K3;
    /// Contrapositive Sasaki arrow.
    pub const C: Kind = Kind::K2;
    /// Relevance arrow.
    pub const R: Kind = Kind::K0;

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Kind> {
        Kind::ALL.get(i).copied()
    }

    /// Short letter for S, C and R, otherwise `Kn`.
    pub fn label(self) -> String {
        match self {
            Kind::K3 => "S".into(),
            Kind::K2 => "C".into(),
            Kind::K0 => "R".into(),
            k => format!("K{}", k.index()),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K{}", self.index())
    }
}

impl FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "S" | "s" => Ok(Kind::S),
            "C" | "c" => Ok(Kind::C),
            "R" | "r" => Ok(Kind::R),
            t => t
                .strip_prefix(['K', 'k'])
                .and_then(|d| d.parse::<usize>().ok())
                .and_then(Kind::from_index)
                .ok_or_else(|| format!("unknown conditional `{s}` (use S, C, R or K0..K5)")),
        }
    }
}

/// The conditional Kk(P, Q) in its defining polynomial form.
pub fn conditional<L: Logic + ?Sized>(l: &L, k: Kind, p: &L::Elem, q: &L::Elem) -> L::Elem {
    let np = l.ortho(p);
    let nq = l.ortho(q);
    let or = |a: L::Elem, b: L::Elem| l.join(&a, &b);
    let and = |a: &L::Elem, b: &L::Elem| l.meet(a, b);
    match k {
        Kind::K0 => or(or(and(&np, &nq), and(&np, q)), and(p, q)),
        Kind::K1 => or(or(and(&np, &nq), and(&np, q)), and(p, &l.join(&np, q))),
        Kind::K2 => or(and(&np, &nq), q.clone()),
        Kind::K3 => or(np.clone(), and(p, q)),
        Kind::K4 => or(or(and(&l.join(&np, q), &nq), and(&np, q)), and(p, q)),
        Kind::K5 => l.join(&np, q),
    }
}

/// The normal form b(P,Q) joined with a kind-specific multiple of com(P,Q)⊥.
/// Equal to [`conditional`] on every orthomodular lattice.
pub fn normal_form<L: Logic + ?Sized>(l: &L, k: Kind, p: &L::Elem, q: &L::Elem) -> L::Elem {
    let np = l.ortho(p);
    let nq = l.ortho(q);
    let bn = l.join(&l.join(&l.meet(&np, &nq), &l.meet(&np, q)), &l.meet(p, q));
    let nc = l.ortho(&commutator_pair(l, p, q));
    let extra = match k {
        Kind::K0 => return bn,
        Kind::K1 => l.meet(p, &nc),
        Kind::K2 => l.meet(q, &nc),
        Kind::K3 => l.meet(&np, &nc),
        Kind::K4 => l.meet(&nq, &nc),
        Kind::K5 => nc,
    };
    l.join(&bn, &extra)
}

/// The conjunction dual to Kk: Jk(P, Q) = Kk(P, Q⊥)⊥, in closed form.
pub fn conjunction<L: Logic + ?Sized>(l: &L, k: Kind, p: &L::Elem, q: &L::Elem) -> L::Elem {
    let pq = l.meet(p, q);
    let nc = l.ortho(&commutator_pair(l, p, q));
    let extra = match k {
        Kind::K0 => nc,
        Kind::K1 => l.meet(&l.ortho(p), &nc),
        Kind::K2 => l.meet(q, &nc),
        Kind::K3 => l.meet(p, &nc),
        Kind::K4 => l.meet(&l.ortho(q), &nc),
        Kind::K5 => return pq,
    };
    l.join(&pq, &extra)
}

/// Jk computed directly from its definition through the conditional.
pub fn conjunction_by_duality<L: Logic + ?Sized>(
    l: &L,
    k: Kind,
    p: &L::Elem,
    q: &L::Elem,
) -> L::Elem {
    l.ortho(&conditional(l, k, p, &l.ortho(q)))
}

/// (P → Q) ∧ (Q → P).
pub fn biconditional<L: Logic + ?Sized>(l: &L, k: Kind, p: &L::Elem, q: &L::Elem) -> L::Elem {
    l.meet(&conditional(l, k, p, q), &conditional(l, k, q, p))
}

/// (P ∧ Q) ∨ (P⊥ ∧ Q⊥), the common value of the biconditional for S, C and R.
pub fn biconditional_closed<L: Logic + ?Sized>(l: &L, p: &L::Elem, q: &L::Elem) -> L::Elem {
    l.join(&l.meet(p, q), &l.meet(&l.ortho(p), &l.ortho(q)))
}

/// A pair (conditional, conjunction) used to interpret formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interpretation {
    pub cond: Kind,
    pub conj: Kind,
}

impl Interpretation {
    pub fn new(cond: Kind, conj: Kind) -> Self {
        Interpretation { cond, conj }
    }

    /// The interpretation pairing Kk with its own dual conjunction.
    pub fn self_dual(k: Kind) -> Self {
        Interpretation { cond: k, conj: k }
    }

    /// Sasaki conditional with the plain meet as conjunction.
    pub fn takeuti() -> Self {
        Interpretation { cond: Kind::K3, conj: Kind::K5 }
    }

    pub fn is_self_dual(&self) -> bool {
        self.cond == self.conj
    }

    /// All 36 pairs, conditional index major.
    pub fn all() -> Vec<Interpretation> {
        Kind::ALL
            .iter()
            .flat_map(|&c| Kind::ALL.iter().map(move |&j| Interpretation::new(c, j)))
            .collect()
    }

    pub fn implies<L: Logic + ?Sized>(&self, l: &L, p: &L::Elem, q: &L::Elem) -> L::Elem {
        conditional(l, self.cond, p, q)
    }

    pub fn and<L: Logic + ?Sized>(&self, l: &L, p: &L::Elem, q: &L::Elem) -> L::Elem {
        conjunction(l, self.conj, p, q)
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I({},J{})", self.cond, self.conj.index())
    }
}

impl FromStr for Interpretation {
    type Err = String;
    /// Accepts `S`, `C`, `R`, `K0`..`K5` (self-dual), `takeuti`, `Kj/Jk`, or
    /// the displayed form `I(Kj,Jk)`.
    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("takeuti") {
            return Ok(Interpretation::takeuti());
        }
        let pair = t.strip_prefix("I(").and_then(|r| r.strip_suffix(')')).and_then(|r| r.split_once(','));
        if let Some((a, b)) = pair.or_else(|| t.split_once('/')) {
            let cond: Kind = a.trim().parse()?;
            let conj: Kind = b.trim().replacen(['J', 'j'], "K", 1).parse()?;
            return Ok(Interpretation::new(cond, conj));
        }
        t.parse().map(Interpretation::self_dual)
    }
}

/// Outcome of checking (E), (MP) and (MT) for one conditional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImplicativeReport {
    pub kind: Kind,
    pub entailment: bool,
    pub modus_ponens: bool,
    pub modus_tollens: bool,
    pub witnesses: Vec<String>,
}

impl ImplicativeReport {
    pub fn all_hold(&self) -> bool {
        self.entailment && self.modus_ponens && self.modus_tollens
    }
}

/// Checks, over every pair of the given elements:
/// (E) P→Q = 1 iff P ≤ Q, (MP) P ∧ (P→Q) ≤ Q, (MT) Q⊥ ∧ (P→Q) ≤ P⊥.
pub fn check_implicative_conditions<L: Logic + ?Sized>(
    l: &L,
    k: Kind,
    elems: &[L::Elem],
) -> ImplicativeReport {
    let mut r = ImplicativeReport {
        kind: k,
        entailment: true,
        modus_ponens: true,
        modus_tollens: true,
        witnesses: Vec::new(),
    };
    for p in elems {
        for q in elems {
            let c = conditional(l, k, p, q);
            let tag = |law: &str| format!("{law}: P={} Q={}", l.show(p), l.show(q));
            if l.is_one(&c) != l.leq(p, q) {
                r.entailment = false;
                r.witnesses.push(tag("E"));
            }
            if !l.leq(&l.meet(p, &c), q) {
                r.modus_ponens = false;
                r.witnesses.push(tag("MP"));
            }
            if !l.leq(&l.meet(&l.ortho(q), &c), &l.ortho(p)) {
                r.modus_tollens = false;
                r.witnesses.push(tag("MT"));
            }
        }
    }
    r
}

/// [`check_implicative_conditions`] as a [`Report`], one law per condition.
pub fn check_material<L: Logic + ?Sized>(l: &L, k: Kind, elems: &[L::Elem]) -> Report {
    let mut e = Law::new("(E) P->Q = 1 iff P <= Q");
    let mut mp = Law::new("(MP) P & (P->Q) <= Q");
    let mut mt = Law::new("(MT) Q' & (P->Q) <= P'");
    for p in elems {
        for q in elems {
            let c = conditional(l, k, p, q);
            let tag = || format!("P={} Q={} P->Q={}", l.show(p), l.show(q), l.show(&c));
            e.record(l.is_one(&c) == l.leq(p, q), tag);
            mp.record(l.leq(&l.meet(p, &c), q), tag);
            mt.record(l.leq(&l.meet(&l.ortho(q), &c), &l.ortho(p)), tag);
        }
    }
    let mut r = Report::new(format!("minimum implicative conditions for {}", k.label()));
    r.push(e);
    r.push(mp);
    r.push(mt);
    r
}

/// Every ordered pair of the given elements.
pub fn all_pairs<E: Clone>(elems: &[E]) -> Vec<(E, E)> {
    elems.iter().flat_map(|p| elems.iter().map(move |q| (p.clone(), q.clone()))).collect()
}

/// The relations among the S, C and R conditionals and com(P, Q)⊥, and the
/// common biconditional, over the given pairs.
pub fn check_identities<L: Logic + ?Sized>(l: &L, pairs: &[(L::Elem, L::Elem)]) -> Report {
    let mut laws = [
        Law::new("P->S Q = (P->R Q) | (P' & com(P,Q)')"),
        Law::new("P->C Q = (P->R Q) | (Q & com(P,Q)')"),
        Law::new("P->S Q = Q' ->C P'"),
        Law::new("P->C Q = Q' ->S P'"),
        Law::new("P->R Q = (P->S Q) & (P->C Q)"),
        Law::new("P<->S Q = P<->C Q = P<->R Q = (P&Q) | (P'&Q')"),
    ];
    for (p, q) in pairs {
        let (np, nq) = (l.ortho(p), l.ortho(q));
        let nc = l.ortho(&commutator_pair(l, p, q));
        let s = conditional(l, Kind::S, p, q);
        let c = conditional(l, Kind::C, p, q);
        let r = conditional(l, Kind::R, p, q);
        let tag = || format!("P={} Q={}", l.show(p), l.show(q));
        laws[0].record(l.same(&s, &l.join(&r, &l.meet(&np, &nc))), tag);
        laws[1].record(l.same(&c, &l.join(&r, &l.meet(q, &nc))), tag);
        laws[2].record(l.same(&s, &conditional(l, Kind::C, &nq, &np)), tag);
        laws[3].record(l.same(&c, &conditional(l, Kind::S, &nq, &np)), tag);
        laws[4].record(l.same(&r, &l.meet(&s, &c)), tag);
        let bi = biconditional_closed(l, p, q);
        let all = [Kind::S, Kind::C, Kind::R].iter().all(|&k| l.same(&biconditional(l, k, p, q), &bi));
        laws[5].record(all, tag);
    }
    let mut rep = Report::new("identities among S, C and R");
    for law in laws {
        rep.push(law);
    }
    rep
}

/// Result of the transitivity search for one conditional.
#[derive(Clone, Debug)]
pub struct TransitivityCheck<E> {
    pub kind: Kind,
    /// A triple with (P→Q) ∧ (Q→R) ≰ (P→R), if any.
    pub witness: Option<[E; 3]>,
    /// Biconditional transitivity (P↔Q) ∧ (Q↔R) ≤ (P↔R), which always holds.
    pub report: Report,
}

/// Searches every triple for a failure of transitivity of →k and checks
/// transitivity of the biconditional on all of them.
pub fn check_transitivity_failure<L: Logic + ?Sized>(
    l: &L,
    k: Kind,
    elems: &[L::Elem],
) -> TransitivityCheck<L::Elem> {
    let mut witness = None;
    let mut bi = Law::new("(P<->Q) & (Q<->R) <= (P<->R)");
    let bic: Vec<Vec<L::Elem>> =
        elems.iter().map(|p| elems.iter().map(|q| biconditional_closed(l, p, q)).collect()).collect();
    let cond: Vec<Vec<L::Elem>> =
        elems.iter().map(|p| elems.iter().map(|q| conditional(l, k, p, q)).collect()).collect();
    for i in 0..elems.len() {
        for j in 0..elems.len() {
            for m in 0..elems.len() {
                let tag = || format!("P={} Q={} R={}", l.show(&elems[i]), l.show(&elems[j]), l.show(&elems[m]));
                bi.record(l.leq(&l.meet(&bic[i][j], &bic[j][m]), &bic[i][m]), tag);
                if witness.is_none() && !l.leq(&l.meet(&cond[i][j], &cond[j][m]), &cond[i][m]) {
                    witness = Some([elems[i].clone(), elems[j].clone(), elems[m].clone()]);
                }
            }
        }
    }
    let mut report = Report::new(format!("transitivity for {}", k.label()));
    match &witness {
        Some([p, q, r]) => report.note(format!(
            "->{} is not transitive: P={} Q={} R={}",
            k.label(),
            l.show(p),
            l.show(q),
            l.show(r)
        )),
        None => report.note(format!("->{} is transitive on every triple", k.label())),
    }
    report.push(bi);
    TransitivityCheck { kind: k, witness, report }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oml::{boolean, mo, product, FiniteOml};
    use proptest::prelude::*;

    fn lattices() -> Vec<FiniteOml> {
        vec![
            mo(2).unwrap(),
            mo(3).unwrap(),
            boolean(3).unwrap(),
            product(&mo(2).unwrap(), &boolean(1).unwrap()).unwrap(),
        ]
    }

    #[test]
    fn mo2_table() {
        let l = mo(2).unwrap();
        let (a, b) = (l.elem("a").unwrap(), l.elem("b").unwrap());
        let nm = |x| l.name(x).to_string();
        assert_eq!(nm(conditional(&l, Kind::S, &a, &b)), "a'");
        assert_eq!(nm(conditional(&l, Kind::C, &a, &b)), "b");
        assert_eq!(nm(conditional(&l, Kind::R, &a, &b)), "0");
        assert_eq!(nm(conditional(&l, Kind::K5, &a, &b)), "1");
        assert_eq!(nm(conditional(&l, Kind::K1, &a, &b)), "a");
        assert_eq!(nm(conditional(&l, Kind::K4, &a, &b)), "b'");
        assert_eq!(nm(conjunction(&l, Kind::S, &b, &a)), "b");
        assert_eq!(nm(conjunction(&l, Kind::C, &b, &a)), "a");
        assert_eq!(nm(conjunction(&l, Kind::R, &b, &a)), "1");
        assert_eq!(nm(conjunction(&l, Kind::K5, &b, &a)), "0");
    }

    #[test]
    fn exactly_s_c_r_are_implicative_on_mo() {
        for l in [mo(2).unwrap(), mo(3).unwrap()] {
            let els: Vec<_> = l.elements().collect();
            let good: Vec<Kind> = Kind::ALL
                .into_iter()
                .filter(|&k| check_implicative_conditions(&l, k, &els).all_hold())
                .collect();
            assert_eq!(good, vec![Kind::R, Kind::C, Kind::S]);
        }
    }

    #[test]
    fn all_six_agree_on_boolean() {
        let l = boolean(3).unwrap();
        let els: Vec<_> = l.elements().collect();
        for k in Kind::ALL {
            assert!(check_implicative_conditions(&l, k, &els).all_hold());
            for p in &els {
                for q in &els {
                    assert_eq!(conditional(&l, k, p, q), l.j(l.o(*p), *q));
                }
            }
        }
    }

    #[test]
    fn parse_kinds_and_interpretations() {
        assert_eq!("S".parse::<Kind>().unwrap(), Kind::K3);
        assert_eq!("K4".parse::<Kind>().unwrap(), Kind::K4);
        assert!("K6".parse::<Kind>().is_err());
        assert_eq!("takeuti".parse::<Interpretation>().unwrap(), Interpretation::takeuti());
        assert_eq!(
            "K3/J5".parse::<Interpretation>().unwrap(),
            Interpretation::new(Kind::K3, Kind::K5)
        );
        assert_eq!("R".parse::<Interpretation>().unwrap(), Interpretation::self_dual(Kind::R));
        for i in Interpretation::all() {
            assert_eq!(i.to_string().parse::<Interpretation>().unwrap(), i);
        }
        assert_eq!(Interpretation::all().len(), 36);
        assert_eq!(Interpretation::all().iter().filter(|i| i.is_self_dual()).count(), 6);
    }

    proptest! {
        #[test]
        fn normal_forms(which in 0usize..4, i in 0usize..100, j in 0usize..100, k in 0usize..6) {
            let l = &lattices()[which];
            let (p, q) = (l.at(i % l.size()), l.at(j % l.size()));
            let k = Kind::ALL[k];
            prop_assert_eq!(conditional(l, k, &p, &q), normal_form(l, k, &p, &q));
            prop_assert_eq!(conjunction(l, k, &p, &q), conjunction_by_duality(l, k, &p, &q));
        }

        #[test]
        fn relations_between_s_c_r(which in 0usize..4, i in 0usize..100, j in 0usize..100) {
            let l = &lattices()[which];
            let (p, q) = (l.at(i % l.size()), l.at(j % l.size()));
            let (np, nq) = (l.o(p), l.o(q));
            let nc = l.o(commutator_pair(l, &p, &q));
            let s = conditional(l, Kind::S, &p, &q);
            let c = conditional(l, Kind::C, &p, &q);
            let r = conditional(l, Kind::R, &p, &q);
            prop_assert_eq!(s, l.j(r, l.m(np, nc)));
            prop_assert_eq!(c, l.j(r, l.m(q, nc)));
            prop_assert_eq!(s, conditional(l, Kind::C, &nq, &np));
            prop_assert_eq!(c, conditional(l, Kind::S, &nq, &np));
            prop_assert_eq!(r, l.m(s, c));
            let bi = l.j(l.m(p, q), l.m(np, nq));
            for kind in [Kind::S, Kind::C, Kind::R] {
                prop_assert_eq!(biconditional(l, kind, &p, &q), bi);
            }
        }

        #[test]
        fn commuting_arguments_collapse(which in 0usize..4, i in 0usize..100, j in 0usize..100, k in 0usize..6) {
            let l = &lattices()[which];
            let (p, q) = (l.at(i % l.size()), l.at(j % l.size()));
            prop_assume!(l.commutes_with(p, q));
            let k = Kind::ALL[k];
            prop_assert_eq!(conditional(l, k, &p, &q), l.j(l.o(p), q));
            prop_assert_eq!(conjunction(l, k, &p, &q), l.m(p, q));
        }
    }

    #[test]
    fn material_reports() {
        let l = mo(2).unwrap();
        let els: Vec<_> = l.elements().collect();
        for k in [Kind::S, Kind::C, Kind::R] {
            let r = check_material(&l, k, &els);
            assert!(r.ok(), "{r}");
            assert_eq!(r.laws[0].checked, 36);
        }
        let r = check_material(&l, Kind::K5, &els);
        assert!(!r.laws[0].ok());
        assert!(r.laws[0].example.as_ref().unwrap().contains("P->Q=1"));
        let b = boolean(3).unwrap();
        let bels: Vec<_> = b.elements().collect();
        for k in Kind::ALL {
            assert!(check_material(&b, k, &bels).ok());
        }
    }

    #[test]
    fn identity_reports() {
        for l in lattices() {
            let els: Vec<_> = l.elements().collect();
            let r = check_identities(&l, &all_pairs(&els));
            assert!(r.ok(), "{r}");
            assert_eq!(r.laws.len(), 6);
        }
    }

    #[test]
    fn identities_on_projections() {
        use crate::hilbert::random::{random_projection, rng, structured_projections};
        use crate::hilbert::ProjectionLattice;
        let mut r = rng(21);
        for dim in 2..=4 {
            let l = ProjectionLattice::with_tolerances(dim, 1e-9, 1e-6);
            let pairs: Vec<_> = (0..10)
                .map(|_| {
                    let f = if dim < 3 {
                        vec![random_projection(dim, 1, &mut r), random_projection(dim, 1, &mut r)]
                    } else {
                        structured_projections(dim, 2, &mut r)
                    };
                    (f[0].clone(), f[1].clone())
                })
                .collect();
            let rep = check_identities(&l, &pairs);
            assert!(rep.ok(), "{rep}");
        }
    }

    #[test]
    fn transitivity() {
        let l = mo(2).unwrap();
        let els: Vec<_> = l.elements().collect();
        for k in [Kind::S, Kind::C, Kind::R] {
            let t = check_transitivity_failure(&l, k, &els);
            let [p, q, r] = t.witness.expect("witness on MO2");
            let c = |a, b| conditional(&l, k, &a, &b);
            assert!(!l.le(l.m(c(p, q), c(q, r)), c(p, r)));
            assert!(t.report.ok());
            assert_eq!(t.report.laws[0].checked, 216);
        }
        let b = boolean(2).unwrap();
        let bels: Vec<_> = b.elements().collect();
        for k in Kind::ALL {
            assert!(check_transitivity_failure(&b, k, &bels).witness.is_none());
        }
    }
}

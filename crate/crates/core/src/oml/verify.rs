use super::ElemSet;
use serde::Serialize;

/// An unvalidated finite ortholattice candidate: element names, the full
/// order matrix `leq[i][j] = (i <= j)` and the orthocomplement as indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmlStructure {
    pub names: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub ortho: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckOutcome {
    pub axiom: String,
    pub passed: bool,
    /// Up to a few offending tuples, named.
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OmlReport {
    pub ok: bool,
    pub size: usize,
    pub checks: Vec<CheckOutcome>,
}

impl OmlReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl std::fmt::Display for OmlReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let bad: Vec<String> = self
            .failures()
            .map(|c| format!("{} ({})", c.axiom, c.witnesses.join("; ")))
            .collect();
        if bad.is_empty() {
            write!(f, "all axioms hold")
        } else {
            write!(f, "{}", bad.join(", "))
        }
    }
}

const MAX_WITNESSES: usize = 4;

struct Collector {
    checks: Vec<CheckOutcome>,
}

impl Collector {
    fn run(&mut self, axiom: &str, found: Vec<String>) {
        self.checks.push(CheckOutcome {
            axiom: axiom.to_string(),
            passed: found.is_empty(),
            witnesses: found.into_iter().take(MAX_WITNESSES).collect(),
        });
    }
}

struct Sets {
    up: Vec<ElemSet>,
    down: Vec<ElemSet>,
}

impl Sets {
    fn glb(&self, a: usize, b: usize) -> Option<usize> {
        let lower = self.down[a].intersect(&self.down[b]);
        let r = lower.iter().find(|&c| lower.is_subset(&self.down[c]));
        r
    }

    fn lub(&self, a: usize, b: usize) -> Option<usize> {
        let upper = self.up[a].intersect(&self.up[b]);
        let r = upper.iter().find(|&c| upper.is_subset(&self.up[c]));
        r
    }
}

/// Checks every orthomodular lattice axiom and reports all failures.
pub fn verify_oml(s: &OmlStructure) -> OmlReport {
    let n = s.names.len();
    let nm = |i: usize| s.names.get(i).cloned().unwrap_or_else(|| format!("#{i}"));
    let mut c = Collector { checks: Vec::new() };

    let shape_ok = n > 0
        && n <= ElemSet::CAPACITY
        && s.leq.len() == n
        && s.leq.iter().all(|r| r.len() == n)
        && s.ortho.len() == n
        && s.ortho.iter().all(|&o| o < n);
    let mut shape = Vec::new();
    if n == 0 {
        shape.push("no elements".to_string());
    }
    if n > ElemSet::CAPACITY {
        shape.push(format!("{n} elements, at most {} supported", ElemSet::CAPACITY));
    } else if !shape_ok && n > 0 {
        shape.push("order matrix or orthocomplement table has the wrong size".to_string());
    }
    c.run("well-formed", shape);
    if !shape_ok {
        return OmlReport { ok: false, size: n, checks: c.checks };
    }

    let sets = Sets {
        up: (0..n).map(|i| (0..n).filter(|&j| s.leq[i][j]).collect()).collect(),
        down: (0..n).map(|i| (0..n).filter(|&j| s.leq[j][i]).collect()).collect(),
    };
    let pairs = || (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)));
    c.run(
        "reflexive",
        (0..n).filter(|&a| !s.leq[a][a]).map(nm).collect(),
    );
    c.run(
        "antisymmetric",
        pairs()
            .filter(|&(a, b)| a < b && s.leq[a][b] && s.leq[b][a])
            .map(|(a, b)| format!("{} {}", nm(a), nm(b)))
            .collect(),
    );
    let mut trans = Vec::new();
    for (a, b) in pairs() {
        if s.leq[a][b] && !sets.up[b].is_subset(&sets.up[a]) {
            let d = sets.up[b].iter().find(|&d| !s.leq[a][d]).unwrap();
            trans.push(format!("{} <= {} <= {}", nm(a), nm(b), nm(d)));
        }
    }
    c.run("transitive", trans);

    let bottom = (0..n).find(|&z| (0..n).all(|x| s.leq[z][x]));
    let top = (0..n).find(|&t| (0..n).all(|x| s.leq[x][t]));
    let mut bounds = Vec::new();
    if bottom.is_none() {
        bounds.push("no least element".into());
    }
    if top.is_none() {
        bounds.push("no greatest element".into());
    }
    c.run("bounded", bounds);

    let mut no_meet = Vec::new();
    let mut no_join = Vec::new();
    for (a, b) in pairs() {
        if a > b {
            continue;
        }
        if sets.glb(a, b).is_none() {
            no_meet.push(format!("{} {}", nm(a), nm(b)));
        }
        if sets.lub(a, b).is_none() {
            no_join.push(format!("{} {}", nm(a), nm(b)));
        }
    }
    let lattice = no_meet.is_empty() && no_join.is_empty();
    c.run("meets exist", no_meet);
    c.run("joins exist", no_join);

    let o = &s.ortho;
    c.run(
        "involution",
        (0..n).filter(|&a| o[o[a]] != a).map(nm).collect(),
    );
    c.run(
        "antitone",
        pairs()
            .filter(|&(a, b)| s.leq[a][b] && !s.leq[o[b]][o[a]])
            .map(|(a, b)| format!("{} <= {}", nm(a), nm(b)))
            .collect(),
    );

    if lattice && bottom.is_some() && top.is_some() {
        let (z, t) = (bottom.unwrap(), top.unwrap());
        c.run(
            "complement",
            (0..n)
                .filter(|&a| sets.glb(a, o[a]) != Some(z) || sets.lub(a, o[a]) != Some(t))
                .map(nm)
                .collect(),
        );
        let mut om = Vec::new();
        for (a, b) in pairs() {
            if !s.leq[a][b] {
                continue;
            }
            let r = sets.glb(b, o[a]).and_then(|m| sets.lub(a, m));
            if r != Some(b) {
                om.push(format!("{} <= {}", nm(a), nm(b)));
            }
        }
        c.run("orthomodular", om);
    } else {
        c.run("complement", vec!["not checked: not a bounded lattice".into()]);
        c.run("orthomodular", vec!["not checked: not a bounded lattice".into()]);
    }

    let ok = c.checks.iter().all(|x| x.passed);
    OmlReport { ok, size: n, checks: c.checks }
}

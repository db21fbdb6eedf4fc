//! The `qsets` command line: reproducible verification runs with human or
//! JSON reports.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for
//! usage or input errors.

use crate::connectives::{
    all_pairs, check_identities, check_material, check_transitivity_failure, conditional, Interpretation, Kind,
};
use crate::formula::parse;
use crate::hilbert::random::rng;
use crate::hilbert::{
    Observable, OperatorDoc, Projection, ProjectionLattice, StateDoc, CMat, EQ_TOL, KERNEL_TOL,
};
use crate::logic::Logic;
use crate::measurement::{random_states, MeasureSummary, OrderPair};
use crate::oml::{builtin, verify_oml, Element, FiniteOml, LatticeDoc, OmlReport};
use crate::qvu::checks::{
    check_de_morgan, check_first_order, counterexample_transitivity, expect_bounded_de_morgan_failure,
    transfer_suite,
};
use crate::qvu::{parse_qset_literal, Env, Evaluator, QSet, Universe};
use crate::reals::{
    internal_to_operator, operator_to_internal, spectral_order, truth_le, FamilyDoc, Grid,
    JumpValue, SnapConfig, StepFamily,
};
use crate::report::Report;
use crate::suite::{run_criterion, run_suite, SuiteConfig, CRITERIA, MATERIAL};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "qsets", version, about = "Quantum set theory: lattices, conditionals, Q-valued sets, internal reals")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Builtin lattice: mo1..mo4, bool1..bool8, 2^n, boolean:n.
    #[arg(long, global = true, value_name = "NAME")]
    pub builtin: Option<String>,
    /// Lattice document (JSON with elements, le, ortho).
    #[arg(long, global = true, value_name = "FILE")]
    pub lattice: Option<PathBuf>,
    /// S, C, R, K0..K5, takeuti, Kj/Jk, all36, or a comma-separated list.
    #[arg(long, global = true, value_name = "I")]
    pub interp: Option<String>,
    /// Numeric tolerance (probability threshold or matrix agreement).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Eigenvalue snapping tolerance.
    #[arg(long, global = true)]
    pub snap: Option<f64>,
    /// Seed for random instances (default 7).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Sample count or size bound; the meaning depends on the command.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Run configuration (JSON); command-line flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Check the OML axioms, the conditional identities and the material conditions.
    VerifyLattice,
    /// Evaluate a formula in the Q-valued universe.
    Eval {
        formula: String,
        /// name=LITERAL, e.g. u='{#0: a, #1: b}'.
        #[arg(long = "bind", value_name = "NAME=SET")]
        bind: Vec<String>,
        /// Bind a1, a2, u, v, w, u_t, v_t, w_t from the equality counterexample.
        #[arg(long)]
        witness: bool,
        /// name=FILE with an internal real; binds its grid form and q, the grid.
        #[arg(long = "real", value_name = "NAME=FILE")]
        real: Vec<String>,
    },
    /// Build and check the counterexample to transitivity of equality.
    Counterexample,
    /// Check the equality laws on first-order sets.
    FirstOrder,
    /// Check De Morgan's laws.
    Demorgan,
    /// Check provable formulas against the commutator bound.
    Transfer,
    /// Round trip between Hermitian operators and internal reals.
    TakeutiRoundtrip {
        /// A single operator document instead of random samples.
        #[arg(long, value_name = "FILE")]
        operator: Option<PathBuf>,
    },
    /// Compare two observables: [X <= Y] for S, C, R and the spectral order.
    OrderCompare { x: PathBuf, y: PathBuf },
    /// Check the measurement reading of [X <= Y].
    Measure {
        x: PathBuf,
        y: PathBuf,
        /// A state document.
        #[arg(long, value_name = "FILE")]
        state: Option<PathBuf>,
        /// Number of Haar-random states.
        #[arg(long, value_name = "N")]
        random: Option<usize>,
    },
    /// Run the acceptance suite.
    Suite {
        /// Run only these criteria.
        #[arg(long = "criterion", value_name = "N")]
        criterion: Vec<usize>,
    },
}

/// Options read from `--config`; unknown fields are rejected.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub builtin: Option<String>,
    pub lattice: Option<PathBuf>,
    pub interp: Option<String>,
    pub tol: Option<f64>,
    pub snap: Option<f64>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub suite: Option<SuiteConfig>,
}

impl RunConfig {
    /// The file's settings overridden by the command line.
    pub fn merge(mut self, c: &Common) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if c.$f.is_some() { self.$f = c.$f.clone(); } )* };
        }
        take!(builtin, lattice, interp, tol, snap, seed, samples);
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(7)
    }

    pub fn snap_config(&self) -> SnapConfig {
        match self.snap {
            Some(s) => SnapConfig { cluster: Some(s), tol: s, ..SnapConfig::default() },
            None => SnapConfig::default(),
        }
    }
}

/// A usage or input problem (exit code 2).
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = Result<Outcome, InputError>;

/// A finished command: human text, JSON result and verdict.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub passed: bool,
}

impl Outcome {
    fn from_report(r: &Report) -> Self {
        Outcome { text: r.to_string(), json: serde_json::to_value(r).expect("report serialises"), passed: r.ok() }
    }

    fn from_reports(rs: &[Report]) -> Self {
        Outcome {
            text: rs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n"),
            json: serde_json::to_value(rs).expect("report serialises"),
            passed: rs.iter().all(Report::ok),
        }
    }
}

/// Parses arguments, runs the command and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            code
        }
    }
}

pub fn run(cli: &Cli) -> i32 {
    let cfg = match load_config(&cli.common) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e.0);
            return 2;
        }
    };
    let name = command_name(&cli.cmd);
    let outcome = match dispatch(&cli.cmd, &cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}", e.0);
            return 2;
        }
    };
    let body = if cli.common.json {
        let doc = json!({
            "command": name,
            "version": env!("CARGO_PKG_VERSION"),
            "config": cfg,
            "seed": cfg.seed(),
            "passed": outcome.passed,
            "result": outcome.json,
        });
        serde_json::to_string_pretty(&doc).expect("json") + "\n"
    } else {
        let mut t = outcome.text;
        if !t.ends_with('\n') {
            t.push('\n');
        }
        t + &format!("{}: {}\n", name, if outcome.passed { "pass" } else { "FAIL" })
    };
    match &cli.common.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, body) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return 2;
            }
        }
        None => print!("{body}"),
    }
    if outcome.passed {
        0
    } else {
        1
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::VerifyLattice => "verify-lattice",
        Command::Eval { .. } => "eval",
        Command::Counterexample => "counterexample",
        Command::FirstOrder => "first-order",
        Command::Demorgan => "demorgan",
        Command::Transfer => "transfer",
        Command::TakeutiRoundtrip { .. } => "takeuti-roundtrip",
        Command::OrderCompare { .. } => "order-compare",
        Command::Measure { .. } => "measure",
        Command::Suite { .. } => "suite",
    }
}

fn read(p: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(p).map_err(|e| InputError(format!("cannot read {}: {e}", p.display())))
}

fn load_config(c: &Common) -> Result<RunConfig, InputError> {
    let base = match &c.config {
        Some(p) => serde_json::from_str::<RunConfig>(&read(p)?)
            .map_err(|e| InputError(format!("config {}: {e}", p.display())))?,
        None => RunConfig::default(),
    };
    Ok(base.merge(c))
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> CmdResult {
    match cmd {
        Command::VerifyLattice => cmd_verify_lattice(cfg),
        Command::Eval { formula, bind, witness, real } => cmd_eval(cfg, formula, bind, *witness, real),
        Command::Counterexample => cmd_counterexample(cfg),
        Command::FirstOrder => cmd_first_order(cfg),
        Command::Demorgan => cmd_demorgan(cfg),
        Command::Transfer => cmd_transfer(cfg),
        Command::TakeutiRoundtrip { operator } => cmd_roundtrip(cfg, operator.as_deref()),
        Command::OrderCompare { x, y } => cmd_order_compare(cfg, x, y),
        Command::Measure { x, y, state, random } => cmd_measure(cfg, x, y, state.as_deref(), *random),
        Command::Suite { criterion } => cmd_suite(cfg, criterion),
    }
}

/// Builtin names, with `boolean:n` and `mo:n` accepted as well.
fn builtin_named(name: &str) -> Result<FiniteOml, InputError> {
    Ok(builtin(&name.replace(':', ""))?)
}

fn lattice_doc(cfg: &RunConfig) -> Result<Option<LatticeDoc>, InputError> {
    if cfg.builtin.is_some() && cfg.lattice.is_some() {
        return Err(InputError("give either --builtin or --lattice, not both".into()));
    }
    match &cfg.lattice {
        Some(p) => Ok(Some(LatticeDoc::from_json(&read(p)?).map_err(|e| InputError(format!("{}: {e}", p.display())))?)),
        None => Ok(None),
    }
}

fn load_lattice(cfg: &RunConfig) -> Result<FiniteOml, InputError> {
    match lattice_doc(cfg)? {
        Some(d) => Ok(d.to_lattice()?),
        None => builtin_named(cfg.builtin.as_deref().unwrap_or("mo2")),
    }
}

/// Splits on commas outside parentheses, so `I(K3,J5),R` has two parts.
fn split_top_level(s: &str) -> Vec<&str> {
    let (mut parts, mut depth, mut start) = (Vec::new(), 0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// Comma-separated interpretations; `all36` expands to every pair.
pub fn parse_interps(src: Option<&str>, default: &[Interpretation]) -> Result<Vec<Interpretation>, InputError> {
    let Some(s) = src else { return Ok(default.to_vec()) };
    let mut out = Vec::new();
    for part in split_top_level(s).into_iter().map(str::trim).filter(|p| !p.is_empty()) {
        if part.eq_ignore_ascii_case("all36") {
            out.extend(Interpretation::all());
        } else {
            out.push(part.parse::<Interpretation>().map_err(InputError)?);
        }
    }
    if out.is_empty() {
        return Err(InputError("empty --interp".into()));
    }
    out.dedup();
    Ok(out)
}

fn material_interps() -> Vec<Interpretation> {
    MATERIAL.iter().map(|&k| Interpretation::self_dual(k)).collect()
}

fn material_kinds(cfg: &RunConfig) -> Result<Vec<Kind>, InputError> {
    let interps = parse_interps(cfg.interp.as_deref(), &material_interps())?;
    let mut kinds = Vec::new();
    for i in interps {
        if !MATERIAL.contains(&i.cond) {
            return Err(InputError(format!("{i}: this command needs the S, C or R conditional")));
        }
        if !kinds.contains(&i.cond) {
            kinds.push(i.cond);
        }
    }
    Ok(kinds)
}

fn cmd_verify_lattice(cfg: &RunConfig) -> CmdResult {
    let (name, structure) = match lattice_doc(cfg)? {
        Some(d) => (cfg.lattice.as_ref().map(|p| p.display().to_string()).unwrap_or_default(), d.to_structure()?),
        None => {
            let n = cfg.builtin.clone().unwrap_or_else(|| "mo2".into());
            let l = builtin_named(&n)?;
            (n, l.structure())
        }
    };
    let oml: OmlReport = verify_oml(&structure);
    let mut text = format!("lattice {name}\n{oml}\n");
    if !oml.ok {
        return Ok(Outcome { text, json: json!({ "oml": oml }), passed: false });
    }
    let l = FiniteOml::new(structure)?;
    let els: Vec<Element> = l.elements().collect();
    let identities = check_identities(&l, &all_pairs(&els));
    let mut material = Vec::new();
    let mut passing = Vec::new();
    for k in Kind::ALL {
        let r = check_material(&l, k, &els);
        if r.ok() {
            passing.push(k.label());
        }
        material.push(r);
    }
    let coincide = els.iter().all(|p| els.iter().all(|q| Kind::ALL.iter().all(|&k| conditional(&l, k, p, q) == l.j(l.o(*p), *q))));
    let mut summary = Report::new("conditionals");
    summary.note(format!("kinds satisfying (E), (MP), (MT): {}", passing.join(" ")));
    if coincide {
        summary.note("all six conditionals coincide");
    }
    let transitivity: Vec<Report> = MATERIAL.iter().map(|&k| check_transitivity_failure(&l, k, &els).report).collect();
    let srs_ok = MATERIAL.iter().all(|k| passing.contains(&k.label()));
    text.push_str(&format!("{identities}\n"));
    for r in material.iter().chain(&transitivity) {
        text.push_str(&format!("{r}"));
    }
    text.push_str(&format!("\n{summary}"));
    let passed = identities.ok() && srs_ok && transitivity.iter().all(Report::ok);
    Ok(Outcome {
        text,
        json: json!({
            "oml": oml,
            "identities": identities,
            "material": material,
            "material_kinds": passing,
            "all_six_coincide": coincide,
            "transitivity": transitivity,
        }),
        passed,
    })
}

fn parse_assignment(s: &str) -> Result<(String, String), InputError> {
    s.split_once('=')
        .map(|(a, b)| (a.trim().to_string(), b.trim().to_string()))
        .filter(|(a, _)| !a.is_empty())
        .ok_or_else(|| InputError(format!("expected NAME=VALUE, got `{s}`")))
}

fn is_hilbert_doc(d: &FamilyDoc) -> bool {
    d.jumps.iter().any(|(_, v)| matches!(v, JumpValue::Matrix(_)))
}

fn bind_reals<L: Logic>(
    uni: &Universe<L>,
    env: &mut Env<L::Elem>,
    reals: &[(String, StepFamily<L::Elem>)],
) -> Result<(), InputError> {
    if reals.is_empty() {
        return Ok(());
    }
    let refs: Vec<&StepFamily<L::Elem>> = reals.iter().map(|(_, u)| u).collect();
    let grid = Grid::for_families(&refs);
    for (name, u) in reals {
        env.insert(name.clone(), grid.materialize(uni, u)?);
    }
    env.entry("q".to_string()).or_insert(grid.rationals(uni)?);
    Ok(())
}

fn evaluate_all<L: Logic>(
    uni: &Universe<L>,
    interps: &[Interpretation],
    formula: &str,
    env: &Env<L::Elem>,
) -> Result<Vec<(Interpretation, L::Elem)>, InputError> {
    let f = parse(formula)?;
    let mut out = Vec::new();
    for &i in interps {
        let ev = Evaluator::new(uni, i);
        out.push((i, ev.eval(&f, env)?));
    }
    Ok(out)
}

fn cmd_eval(cfg: &RunConfig, formula: &str, bind: &[String], witness: bool, real: &[String]) -> CmdResult {
    let interps = parse_interps(cfg.interp.as_deref(), &[Interpretation::self_dual(Kind::S)])?;
    let mut docs = Vec::new();
    for r in real {
        let (name, path) = parse_assignment(r)?;
        docs.push((name, FamilyDoc::from_json(&read(Path::new(&path))?)?));
    }
    if !docs.is_empty() && docs.iter().all(|(_, d)| is_hilbert_doc(d)) {
        if witness {
            return Err(InputError("--witness needs a finite lattice".into()));
        }
        return eval_hilbert(cfg, formula, bind, &docs, &interps);
    }
    let l = load_lattice(cfg)?;
    let uni = Universe::new(l.clone());
    let mut env: Env<Element> = Env::new();
    if witness {
        let ev = Evaluator::new(&uni, interps[0]);
        let cands: Vec<Element> = l.elements().collect();
        let w = counterexample_transitivity(&ev, &cands)?
            .ok_or_else(|| InputError("every pair of elements commutes; there is no witness".into()))?;
        for (n, s) in [("a1", &w.a1), ("a2", &w.a2), ("u", &w.u), ("v", &w.v), ("w", &w.w), ("u_t", &w.u_t), ("v_t", &w.v_t), ("w_t", &w.w_t)] {
            env.insert(n.to_string(), s.clone());
        }
    }
    let value_of = |s: &str| l.elem(s).ok();
    for b in bind {
        let (name, lit) = parse_assignment(b)?;
        let s = parse_qset_literal(&uni, &lit, &env, &value_of)?;
        env.insert(name, s);
    }
    let mut reals = Vec::new();
    for (name, d) in &docs {
        reals.push((name.clone(), d.to_lattice(&l)?));
    }
    bind_reals(&uni, &mut env, &reals)?;
    let vals = evaluate_all(&uni, &interps, formula, &env)?;
    let text = vals.iter().map(|(i, v)| format!("{i}: {}", l.name(*v))).collect::<Vec<_>>().join("\n");
    let json = json!({
        "formula": formula,
        "values": vals.iter().map(|(i, v)| json!({"interpretation": i.to_string(), "value": l.name(*v)})).collect::<Vec<_>>(),
    });
    Ok(Outcome { text, json, passed: true })
}

fn eval_hilbert(
    cfg: &RunConfig,
    formula: &str,
    bind: &[String],
    docs: &[(String, FamilyDoc)],
    interps: &[Interpretation],
) -> CmdResult {
    let tol = cfg.tol.unwrap_or(1e-9);
    let mut reals = Vec::new();
    let mut lat: Option<ProjectionLattice> = None;
    for (name, d) in docs {
        let (l, u) = d.to_hilbert(tol)?;
        if let Some(prev) = &lat {
            if prev.dim() != l.dim() {
                return Err(InputError(format!("dimension mismatch: {} and {}", prev.dim(), l.dim())));
            }
        }
        lat = Some(l);
        reals.push((name.clone(), u));
    }
    let lat = lat.expect("at least one real");
    let uni = Universe::new(lat.clone());
    let mut env: Env<Projection> = Env::new();
    let dim = lat.dim();
    let value_of = |s: &str| match s {
        "0" => Some(Projection::zero(dim)),
        "1" => Some(Projection::identity(dim)),
        _ => None,
    };
    for b in bind {
        let (name, lit) = parse_assignment(b)?;
        let s = parse_qset_literal(&uni, &lit, &env, &value_of)?;
        env.insert(name, s);
    }
    bind_reals(&uni, &mut env, &reals)?;
    let vals = evaluate_all(&uni, interps, formula, &env)?;
    let text = vals.iter().map(|(i, v)| format!("{i}: rank {}\n{}", v.rank(), format_matrix(v.matrix()))).collect::<Vec<_>>().join("\n");
    let json = json!({
        "formula": formula,
        "values": vals.iter().map(|(i, v)| json!({"interpretation": i.to_string(), "rank": v.rank(), "value": OperatorDoc::from_matrix(v.matrix())})).collect::<Vec<_>>(),
    });
    Ok(Outcome { text, json, passed: true })
}

/// Rows of `re+imi` entries with six decimals; `-0` is printed as `0`.
pub fn format_matrix(m: &CMat) -> String {
    let f = |x: f64| {
        let x = if x.abs() < 5e-7 { 0.0 } else { x };
        format!("{x:+.6}")
    };
    (0..m.nrows())
        .map(|i| {
            let row: Vec<String> = (0..m.ncols()).map(|j| format!("{}{}i", f(m[(i, j)].re), f(m[(i, j)].im))).collect();
            format!("  [{}]", row.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn cmd_counterexample(cfg: &RunConfig) -> CmdResult {
    let l = load_lattice(cfg)?;
    let uni = Universe::new(l.clone());
    let interps = parse_interps(cfg.interp.as_deref(), &material_interps())?;
    let cands: Vec<Element> = l.elements().collect();
    let mut text = String::new();
    let mut results = Vec::new();
    let mut passed = true;
    for i in interps {
        let ev = Evaluator::new(&uni, i);
        match counterexample_transitivity(&ev, &cands)? {
            None => {
                text.push_str(&format!("{i}: every pair commutes, so equality is transitive\n"));
                results.push(json!({"interpretation": i.to_string(), "witness": null}));
            }
            Some(w) => {
                let ok = w.values_match() && w.refutes();
                if i.is_self_dual() {
                    passed &= ok;
                }
                text.push_str(&format!(
                    "{i}: Q1 = {}, Q2 = {}, E = {}, P1 = {}, P2 = {}\n",
                    l.name(w.q1),
                    l.name(w.q2),
                    l.name(w.e),
                    l.name(w.p1),
                    l.name(w.p2)
                ));
                text.push_str(&format!("  u = {}\n  v = {}\n  w = {}\n", uni.describe(&w.u), uni.describe(&w.v), uni.describe(&w.w)));
                for v in &w.values {
                    let mark = if v.matches { "" } else { "  MISMATCH" };
                    text.push_str(&format!("  {:<14} = {:<3} expected {}{mark}\n", v.name, v.computed, v.expected));
                }
                for law in &w.laws {
                    text.push_str(&format!("  {}: {} <= {}  {}\n", law.law, law.lhs, law.rhs, if law.holds { "holds" } else { "fails" }));
                }
                if !i.is_self_dual() {
                    text.push_str("  note: the construction is claimed only for self-dual interpretations; shown for information\n");
                }
                results.push(json!({
                    "interpretation": i.to_string(),
                    "q1": l.name(w.q1), "q2": l.name(w.q2), "e": l.name(w.e), "p1": l.name(w.p1), "p2": l.name(w.p2),
                    "values": w.values, "laws": w.laws, "refutes": w.refutes(), "claimed": i.is_self_dual(),
                }));
            }
        }
    }
    Ok(Outcome { text, json: Value::Array(results), passed })
}

fn cmd_first_order(cfg: &RunConfig) -> CmdResult {
    let l = load_lattice(cfg)?;
    let uni = Universe::new(l.clone());
    let vals: Vec<Element> = l.elements().collect();
    let n = cfg.samples.unwrap_or(2);
    let mut reports = Vec::new();
    for k in material_kinds(cfg)? {
        let ev = Evaluator::new(&uni, Interpretation::self_dual(k));
        reports.push(check_first_order(&ev, &vals, n)?);
    }
    Ok(Outcome::from_reports(&reports))
}

/// Every set of rank at most 2 with nonzero values and at most
/// `--samples` members (default 2).
fn sample_sets(cfg: &RunConfig, uni: &Universe<FiniteOml>) -> Vec<QSet<Element>> {
    let l = uni.logic();
    let vals: Vec<Element> = l.elements().filter(|e| *e != l.bot()).collect();
    uni.enumerate(&vals, 2, cfg.samples.unwrap_or(2))
}

fn cmd_demorgan(cfg: &RunConfig) -> CmdResult {
    let l = load_lattice(cfg)?;
    let uni = Universe::new(l.clone());
    let samples = sample_sets(cfg, &uni);
    let mut default = material_interps();
    default.push(Interpretation::takeuti());
    let mut reports = Vec::new();
    for i in parse_interps(cfg.interp.as_deref(), &default)? {
        let ev = Evaluator::new(&uni, i);
        let mut r = check_de_morgan(&ev, &samples, 6)?;
        if !i.is_self_dual() && !l.is_boolean() {
            expect_bounded_de_morgan_failure(&mut r);
        }
        reports.push(r);
    }
    Ok(Outcome::from_reports(&reports))
}

fn cmd_transfer(cfg: &RunConfig) -> CmdResult {
    let l = load_lattice(cfg)?;
    let uni = Universe::new(l.clone());
    let samples = sample_sets(cfg, &uni);
    let mut reports = Vec::new();
    for i in parse_interps(cfg.interp.as_deref(), &material_interps())? {
        let ev = Evaluator::new(&uni, i);
        reports.push(transfer_suite(&ev, &samples)?);
    }
    Ok(Outcome::from_reports(&reports))
}

fn load_observable(p: &Path) -> Result<Observable, InputError> {
    let d = OperatorDoc::from_json(&read(p)?).map_err(|e| InputError(format!("{}: {e}", p.display())))?;
    d.observable().map_err(|e| InputError(format!("{}: {e}", p.display())))
}

fn describe_family(u: &StepFamily<Projection>) -> String {
    u.jumps().iter().map(|(r, e)| format!("{r}: rank {}", e.rank())).collect::<Vec<_>>().join(", ")
}

fn family_json(u: &StepFamily<Projection>) -> Value {
    Value::Array(u.jumps().iter().map(|(r, e)| json!({"at": r.to_string(), "rank": e.rank()})).collect())
}

fn suite_config(cfg: &RunConfig) -> Result<SuiteConfig, InputError> {
    let mut s = cfg.suite.clone().unwrap_or_default();
    if let Some(seed) = cfg.seed {
        s.seed = seed;
    }
    if let Some(t) = cfg.tol {
        s.eps = t;
        s.agree_tol = t;
    }
    if let Some(t) = cfg.snap {
        s.snap_tol = t;
    }
    if cfg.interp.is_some() {
        s.extra_interpretations = parse_interps(cfg.interp.as_deref(), &[])?;
    }
    Ok(s)
}

fn cmd_roundtrip(cfg: &RunConfig, operator: Option<&Path>) -> CmdResult {
    let Some(p) = operator else {
        let mut s = suite_config(cfg)?;
        if let Some(n) = cfg.samples {
            s.roundtrips = n;
        }
        let c = run_criterion(8, &s).expect("criterion 8 exists");
        return Ok(Outcome::from_report(&c.report));
    };
    let x = load_observable(p)?;
    let snap = cfg.snap_config();
    let u = operator_to_internal(&x, &snap)?;
    let lat = ProjectionLattice::new(x.dim());
    let valid = crate::reals::validate_internal_real(&lat, &u);
    let y = internal_to_operator(&u)?;
    let err = (y.matrix() - x.matrix()).norm();
    let tol = cfg.tol.unwrap_or(1e-8);
    let passed = valid.ok() && err <= tol;
    let text = format!("jumps: {}\nreconstruction error {err:.3e} (tolerance {tol:e})\n{valid}", describe_family(&u));
    let json = json!({"jumps": family_json(&u), "error": err, "tol": tol, "valid": valid});
    Ok(Outcome { text, json, passed })
}

fn cmd_order_compare(cfg: &RunConfig, xp: &Path, yp: &Path) -> CmdResult {
    let (x, y) = (load_observable(xp)?, load_observable(yp)?);
    if x.dim() != y.dim() {
        return Err(InputError(format!("dimension mismatch: {} and {}", x.dim(), y.dim())));
    }
    let snap = cfg.snap_config();
    let lat = ProjectionLattice::with_tolerances(x.dim(), KERNEL_TOL, cfg.tol.unwrap_or(EQ_TOL));
    let u = operator_to_internal(&x, &snap)?;
    let v = operator_to_internal(&y, &snap)?;
    let so = spectral_order(&lat, &u, &v);
    let mut text = format!("X: {}\nY: {}\n", describe_family(&u), describe_family(&v));
    let mut rows = Vec::new();
    let mut consistent = true;
    for k in MATERIAL {
        let t = truth_le(&lat, &u, &v, k);
        let one = lat.is_one(&t);
        consistent &= one == so;
        text.push_str(&format!("[X <= Y]_{} rank {}{}\n{}\n", k.label(), t.rank(), if one { " = I" } else { "" }, format_matrix(t.matrix())));
        rows.push(json!({"kind": k.label(), "rank": t.rank(), "is_identity": one, "value": OperatorDoc::from_matrix(t.matrix())}));
    }
    text.push_str(&format!("spectral order X <= Y: {so}\n"));
    let json = json!({"x": family_json(&u), "y": family_json(&v), "truth": rows, "spectral_order": so});
    Ok(Outcome { text, json, passed: consistent })
}

fn cmd_measure(cfg: &RunConfig, xp: &Path, yp: &Path, state: Option<&Path>, random: Option<usize>) -> CmdResult {
    let (x, y) = (load_observable(xp)?, load_observable(yp)?);
    let pair = OrderPair::new(&x, &y, &cfg.snap_config())?;
    let eps = cfg.tol.unwrap_or(1e-7);
    let kinds = material_kinds(cfg)?;
    let seed = cfg.seed();
    let mut summaries: Vec<MeasureSummary> = Vec::new();
    match (state, random) {
        (Some(p), None) => {
            let d = StateDoc::from_json(&read(p)?).map_err(|e| InputError(format!("{}: {e}", p.display())))?;
            let psi = d.state().map_err(|e| InputError(format!("{}: {e}", p.display())))?;
            for &k in &kinds {
                let mut s = MeasureSummary::new(k);
                s.push(pair.check(k, &psi, eps)?, true);
                summaries.push(s);
            }
        }
        (None, n) => {
            let n = n.or(cfg.samples).unwrap_or(1000);
            for &k in &kinds {
                let mut r = rng(seed);
                summaries.push(random_states(&pair, k, n, eps, seed, &mut r)?);
            }
        }
        (Some(_), Some(_)) => return Err(InputError("give either --state or --random, not both".into())),
    }
    let mut text = String::new();
    for (s, k) in summaries.iter().zip(&kinds) {
        text.push_str(&format!("kind {}: biconditional held in {}/{} cases ({} in range)\n", k.label(), s.held, s.total, s.members));
        for v in &s.verdicts {
            text.push_str(&format!(
                "  membership {} P(Y,X)(X<=Y) = {:.9} P(X,Y)(X<=Y) = {:.9} {}\n",
                v.membership,
                v.p_yx,
                v.p_xy,
                if v.verdict { "holds" } else { "FAILS" }
            ));
        }
    }
    let passed = summaries.iter().all(MeasureSummary::ok);
    Ok(Outcome { text, json: serde_json::to_value(&summaries)?, passed })
}

fn cmd_suite(cfg: &RunConfig, only: &[usize]) -> CmdResult {
    let s = suite_config(cfg)?;
    for id in only {
        if !CRITERIA.iter().any(|c| c.0 == *id) {
            return Err(InputError(format!("no criterion {id} (1..=12)")));
        }
    }
    let mut rep = run_suite_subset(&s, only);
    rep.passed = rep.criteria.iter().all(|c| c.passed);
    let mut text = rep.to_string();
    for c in rep.criteria.iter().filter(|c| !c.passed) {
        text.push_str(&format!("\n{}", c.report));
    }
    Ok(Outcome { text, json: serde_json::to_value(&rep)?, passed: rep.passed })
}

fn run_suite_subset(s: &SuiteConfig, only: &[usize]) -> crate::suite::SuiteReport {
    if only.is_empty() {
        return run_suite(s);
    }
    let criteria = only.iter().filter_map(|&id| run_criterion(id, s)).collect::<Vec<_>>();
    crate::suite::SuiteReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: s.clone(),
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    }
}

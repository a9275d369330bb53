//! Regression corpus: named inputs with independently known answers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use algdiag::artin_mazur::am_verify;
use algdiag::denef_lipshitz::dl_rational;
use algdiag::diagonal::hadamard;
use algdiag::hensel::AlgebraicSeriesSpec;
use algdiag::hensel::{lift_root, lift_root_linear};
use algdiag::parser::{parse_poly, parse_ratfun, parse_rational};
use algdiag::resultant::{annihilator_prod, annihilator_sum};
use algdiag::weierstrass::{w_divide, w_prepare};
use algdiag::{eval_poly_at_series, Monomial, QPoly, QSeries, Rational, VarSet};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::commands::{code_with_series, diagonal, parse_representation, Report};
use crate::json::SeriesJson;
use crate::oracle::Oracle;
use crate::{CliError, DiagKind};

pub const BUILTIN: &str = include_str!("../corpus/builtin.json");

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    DiagonalIdentity,
    Lift,
    DlCertificate,
    AmCode,
    Weierstrass,
    Annihilator,
}

/// What a computed result is compared against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expected {
    Series(SeriesJson),
    /// A built-in evaluator; see [`crate::oracle`].
    Oracle(String),
    /// A self-check with no stored answer. `root-of-annihilator`: the lifted
    /// root is annihilated and agrees with the order-by-order lift.
    Check(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    pub kind: EntryKind,
    pub vars: Vec<String>,
    pub order: u32,
    pub inputs: BTreeMap<String, String>,
    pub expected: Expected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryResult {
    pub name: String,
    pub kind: EntryKind,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub passed: usize,
    pub failed: usize,
    pub entries: Vec<EntryResult>,
}

pub fn load(text: &str) -> Result<Vec<CorpusEntry>, CliError> {
    let entries: Vec<CorpusEntry> =
        serde_json::from_str(text).map_err(|e| CliError::Json(e.to_string()))?;
    let mut seen = BTreeSet::new();
    for e in &entries {
        if !seen.insert(e.name.as_str()) {
            return Err(CliError::Json(format!("duplicate entry name `{}`", e.name)));
        }
        if let Expected::Oracle(d) = &e.expected {
            Oracle::parse(d)?;
        }
    }
    Ok(entries)
}

pub fn builtin() -> Vec<CorpusEntry> {
    load(BUILTIN).expect("built-in corpus is well formed")
}

/// Random etale lifting entries, reproducible from `seed`.
pub fn random_entries(seed: u64, count: usize) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let names: Vec<String> = if rng.gen_bool(0.5) {
                vec!["x".into(), "t".into()]
            } else {
                vec!["x".into(), "y".into(), "t".into()]
            };
            let vars = VarSet::new(names.iter().cloned()).expect("fixed names");
            let n = vars.len();
            let mut terms = vec![(
                Monomial::var(n, n - 1, 1),
                Rational::from_integer(rng.gen_range(1..=3).into()),
            )];
            for _ in 0..rng.gen_range(1..=5) {
                let mut e = vec![0u32; n];
                e[n - 1] = rng.gen_range(0..=3);
                e[rng.gen_range(0..n - 1)] += rng.gen_range(1..=2);
                let c = Rational::new(rng.gen_range(-4..=4).into(), rng.gen_range(1..=3).into());
                terms.push((Monomial::new(e), c));
            }
            let p = QPoly::from_terms(&vars, terms);
            CorpusEntry {
                name: format!("random-lift-{i:03}"),
                kind: EntryKind::Lift,
                vars: names,
                order: 8,
                inputs: BTreeMap::from([("poly".to_string(), p.to_string())]),
                expected: Expected::Check("root-of-annihilator".into()),
            }
        })
        .collect()
}

/// Runs every entry, in parallel, and orders the results by name.
pub fn run(entries: &[CorpusEntry]) -> CorpusReport {
    let mut results: Vec<EntryResult> = entries
        .par_iter()
        .map(|e| {
            let outcome = std::panic::catch_unwind(|| run_entry(e))
                .unwrap_or_else(|_| Err("internal error (panic)".into()));
            let (pass, detail) = match outcome {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            EntryResult {
                name: e.name.clone(),
                kind: e.kind,
                pass,
                detail,
            }
        })
        .collect();
    results.sort_by(|a, b| a.name.cmp(&b.name));
    let passed = results.iter().filter(|r| r.pass).count();
    CorpusReport {
        passed,
        failed: results.len() - passed,
        entries: results,
    }
}

pub fn command(source: &str, random: usize, dump: bool, seed: u64) -> Result<Report, CliError> {
    if dump {
        let entries = builtin();
        let json = serde_json::to_string_pretty(&entries).expect("entries serialize");
        return Ok(Report {
            text: json.clone(),
            json,
            verified: true,
        });
    }
    let mut entries = if source == "builtin" {
        builtin()
    } else {
        let text = std::fs::read_to_string(source)
            .map_err(|e| CliError::Io(format!("cannot read {source}: {e}")))?;
        load(&text)?
    };
    entries.extend(random_entries(seed, random));
    let report = run(&entries);
    let text = table(&report);
    Ok(Report::new(&report, text, report.failed == 0))
}

fn table(report: &CorpusReport) -> String {
    let width = report
        .entries
        .iter()
        .map(|r| r.name.len())
        .max()
        .unwrap_or(4)
        .max(4);
    let mut out = String::new();
    let _ = writeln!(out, "{:<width$}  {:<17}  result  detail", "name", "kind");
    for r in &report.entries {
        let kind = serde_json::to_value(r.kind)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "{:<width$}  {:<17}  {:<6}  {}",
            r.name,
            kind,
            if r.pass { "PASS" } else { "FAIL" },
            r.detail
        );
    }
    let _ = write!(out, "{} passed, {} failed", report.passed, report.failed);
    out
}

type Outcome = Result<String, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

impl CorpusEntry {
    fn input(&self, key: &str) -> Result<&str, String> {
        self.inputs
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| format!("missing input `{key}`"))
    }

    fn list(&self, key: &str) -> Vec<String> {
        self.inputs
            .get(key)
            .map(|s| s.split(',').map(|p| p.trim().to_string()).collect())
            .unwrap_or_default()
    }

    fn expected_series(&self, vars: &VarSet) -> Result<QSeries, String> {
        match &self.expected {
            Expected::Series(j) => j.to_series().map_err(err),
            Expected::Oracle(d) => Oracle::parse(d)
                .and_then(|o| o.series(vars, self.order))
                .map_err(err),
            Expected::Check(c) => Err(format!(
                "check `{c}` does not apply to {:?} entries",
                self.kind
            )),
        }
    }
}

/// Agreement through the expected series' truncation.
fn compare(expected: &QSeries, computed: &QSeries) -> Outcome {
    if expected.vars() != computed.vars() {
        return Err(format!(
            "variables [{}] vs [{}]",
            expected.vars(),
            computed.vars()
        ));
    }
    let n = expected.bound();
    if computed.bound() < n {
        return Err(format!(
            "result exact only through degree {}, expected {n}",
            computed.bound()
        ));
    }
    match computed.first_mismatch(expected, n) {
        None => Ok(format!("agrees through degree {n}")),
        Some((m, got, want)) => Err(format!(
            "coefficient of {:?} is {got}, expected {want}",
            m.exps()
        )),
    }
}

fn run_entry(e: &CorpusEntry) -> Outcome {
    let vars = VarSet::new(e.vars.iter().cloned()).map_err(err)?;
    let n = e.order;
    match e.kind {
        EntryKind::DiagonalIdentity => {
            let f = parse_ratfun::<Rational>(e.input("expr")?, &vars).map_err(err)?;
            let computed = match e.input("diagonal")? {
                "small" => diagonal(&f, DiagKind::Small, n).map_err(err)?,
                "big" => diagonal(&f, DiagKind::Big, n).map_err(err)?,
                "hadamard" => {
                    let g = parse_ratfun::<Rational>(e.input("other")?, &vars).map_err(err)?;
                    hadamard(&f.expand(n).map_err(err)?, &g.expand(n).map_err(err)?).map_err(err)?
                }
                other => return Err(format!("unknown diagonal `{other}`")),
            };
            compare(&e.expected_series(computed.vars())?, &computed)
        }
        EntryKind::Lift => {
            let p = parse_poly::<Rational>(e.input("poly")?, &vars).map_err(err)?;
            let root = e
                .inputs
                .get("root")
                .map_or(Ok(Rational::zero()), |r| parse_rational(r))
                .map_err(err)?;
            let h = lift_root(&p, &root, n).map_err(err)?.series;
            if let Expected::Check(c) = &e.expected {
                if c != "root-of-annihilator" {
                    return Err(format!("unknown check `{c}`"));
                }
                let residual = eval_poly_at_series(&p, &h).map_err(err)?;
                if !residual.is_zero() {
                    return Err(format!("P(x, h) = {residual}"));
                }
                if lift_root_linear(&p, &root, n).map_err(err)? != h {
                    return Err("Newton and order-by-order lifts differ".into());
                }
                return Ok(format!("root annihilated through degree {n}"));
            }
            compare(&e.expected_series(h.vars())?, &h)
        }
        EntryKind::DlCertificate => {
            let spec = AlgebraicSeriesSpec::new(
                parse_poly::<Rational>(e.input("poly")?, &vars).map_err(err)?,
            )
            .map_err(err)?;
            let w = parse_representation(&spec.x_vars(), &e.list("num"), &e.list("den"))
                .map_err(err)?;
            let cert = dl_rational(&spec, &w, n).map_err(err)?;
            if !cert.verification.pass {
                return Err(cert.verification.to_string());
            }
            let computed = &cert.verification.computed;
            compare(&e.expected_series(computed.vars())?, computed)
        }
        EntryKind::AmCode => {
            let p = parse_poly::<Rational>(e.input("poly")?, &vars).map_err(err)?;
            let (code, f, h) =
                code_with_series(&p, &e.list("num"), &e.list("den"), n).map_err(err)?;
            let check = am_verify(&code, &f, &h, n).map_err(err)?;
            if !check.pass {
                return Err(check.to_string());
            }
            compare(&e.expected_series(f.vars())?, &f)
                .map(|d| format!("{d}; det J = {}", check.determinant))
        }
        EntryKind::Weierstrass => {
            let v = e.input("var")?;
            let g = parse_ratfun::<Rational>(e.input("g")?, &vars)
                .and_then(|g| g.expand(n))
                .map_err(err)?;
            match e.input("mode")? {
                "divide" => {
                    let f = parse_ratfun::<Rational>(e.input("f")?, &vars)
                        .and_then(|f| f.expand(n))
                        .map_err(err)?;
                    let d = w_divide(&f, &g, v).map_err(err)?;
                    if !d.reconstructs(&f, &g) {
                        return Err("q g + r != f".into());
                    }
                    compare(&e.expected_series(&vars)?, &d.remainder())
                }
                "prepare" => {
                    let p = w_prepare(&g, v).map_err(err)?;
                    if !p.reconstructs(&g) {
                        return Err("u p != g".into());
                    }
                    compare(&e.expected_series(&vars)?, &p.distinguished_poly())
                }
                other => Err(format!("unknown mode `{other}`")),
            }
        }
        EntryKind::Annihilator => {
            let p1 = parse_poly::<Rational>(e.input("p1")?, &vars).map_err(err)?;
            let p2 = parse_poly::<Rational>(e.input("p2")?, &vars).map_err(err)?;
            let a = match e.input("op")? {
                "add" => annihilator_sum(&p1, &p2),
                "mul" => annihilator_prod(&p1, &p2),
                other => return Err(format!("unknown op `{other}`")),
            }
            .map_err(err)?;
            let want = e.expected_series(&vars)?.to_poly();
            if same_up_to_scalar(&a, &want) {
                Ok(format!("{a}"))
            } else {
                Err(format!("got {a}, expected a multiple of {want}"))
            }
        }
    }
}

fn same_up_to_scalar(a: &QPoly, b: &QPoly) -> bool {
    let lead = |p: &QPoly| p.terms().last().map(|(_, c)| c.clone());
    match (lead(a), lead(b)) {
        (Some(la), Some(lb)) => {
            a * &QPoly::constant(a.vars(), lb) == b * &QPoly::constant(b.vars(), la)
        }
        _ => false,
    }
}

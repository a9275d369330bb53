use algdiag::artin_mazur::{
    am_code_from_representation, am_code_simple, am_verify, AMCode, CodeBranch,
};
use algdiag::denef_lipshitz::{dl_rational, VerificationRecord, WRepresentation};
use algdiag::diagonal::hadamard;
use algdiag::hensel::{lift_factorization, lift_root, AlgebraicSeriesSpec};
use algdiag::parser::{parse_poly, parse_ratfun, parse_rational};
use algdiag::resultant::{annihilator_prod, annihilator_sum};
use algdiag::weierstrass::{w_divide, w_prepare};
use algdiag::{QPoly, QSeries, Rational, RationalFunction, TruncSeries, VarSet};
use serde::{Deserialize, Serialize};

use crate::json::{PolyJson, SeriesJson};
use crate::{exit, AnnihilatorOp, Cli, CliError, Command, DiagKind, Format, WeierstrassMode};

/// Rendered output of one command.
#[derive(Clone, Debug)]
pub struct Report {
    pub text: String,
    pub json: String,
    /// False when a verification step ran and failed.
    pub verified: bool,
}

impl Report {
    pub fn new<T: Serialize>(value: &T, text: String, verified: bool) -> Self {
        let json = serde_json::to_string_pretty(value).expect("output types serialize");
        Report {
            text,
            json,
            verified,
        }
    }

    pub fn render(&self, format: Format) -> &str {
        match format {
            Format::Text => &self.text,
            Format::Json => &self.json,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.verified {
            exit::OK
        } else {
            exit::VERIFICATION_FAILED
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl RationalJson {
    pub fn new(c: &Rational) -> Self {
        RationalJson {
            num: c.numer().to_string(),
            den: c.denom().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftFactorJson {
    pub var: String,
    /// Coefficients of `t^0, t^1, ..`.
    pub p: Vec<SeriesJson>,
    pub q: Vec<SeriesJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchJson {
    pub exp: Vec<u32>,
    pub expected: RationalJson,
    pub computed: RationalJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationJson {
    pub order: u32,
    pub pass: bool,
    pub expected: SeriesJson,
    pub computed: SeriesJson,
    pub mismatch: Option<MismatchJson>,
}

impl VerificationJson {
    fn new(v: &VerificationRecord<Rational>) -> Self {
        VerificationJson {
            order: v.order,
            pass: v.pass,
            expected: SeriesJson::from_series(&v.expected),
            computed: SeriesJson::from_series(&v.computed),
            mismatch: v.mismatch.as_ref().map(|m| MismatchJson {
                exp: m.monomial.exps().to_vec(),
                expected: RationalJson::new(&m.expected),
                computed: RationalJson::new(&m.computed),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DlJson {
    /// `R` as a parseable expression.
    pub expression: String,
    pub numerator: PolyJson,
    pub denominator: PolyJson,
    pub verification: VerificationJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum WeierstrassJson {
    Divide {
        var: String,
        order: u32,
        window: u32,
        quotient: SeriesJson,
        /// Coefficients of `v^0 .. v^(d-1)`.
        remainder: Vec<SeriesJson>,
        reconstructs: bool,
    },
    Prepare {
        var: String,
        order: u32,
        window: u32,
        unit: SeriesJson,
        /// Coefficients of `v^0 .. v^(d-1)`; the leading `v^d` is implicit.
        distinguished: Vec<SeriesJson>,
        reconstructs: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeCheckJson {
    pub order: u32,
    pub pass: bool,
    pub series: SeriesJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmCodeJson {
    pub branch: String,
    pub first: PolyJson,
    pub second: PolyJson,
    pub jacobian: [[RationalJson; 2]; 2],
    pub determinant: RationalJson,
    pub verification: CodeCheckJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilatorJson {
    pub op: String,
    pub degree: u32,
    pub annihilator: PolyJson,
}

pub(crate) fn require_vars(cli: &Cli) -> Result<VarSet, CliError> {
    let list = cli
        .vars
        .as_deref()
        .ok_or_else(|| CliError::Usage("--vars is required for this command".into()))?;
    Ok(VarSet::parse(list)?)
}

fn x_vars(vars: &VarSet) -> Result<VarSet, CliError> {
    if vars.len() < 2 {
        return Err(CliError::Usage(
            "need at least one x variable and t in --vars".into(),
        ));
    }
    Ok(vars.without(vars.len() - 1))
}

/// Parses `W = (sum a_i t^i) / (sum b_j t^j)` from coefficient lists over the
/// x variables. No coefficients at all means `W = t`.
pub(crate) fn parse_representation(
    xv: &VarSet,
    num: &[String],
    den: &[String],
) -> Result<WRepresentation<Rational>, CliError> {
    if num.is_empty() && den.is_empty() {
        return Ok(WRepresentation::identity(xv));
    }
    let parse_all = |list: &[String]| -> Result<Vec<QPoly>, CliError> {
        list.iter().map(|s| Ok(parse_poly(s, xv)?)).collect()
    };
    let a = parse_all(num)?;
    let b = if den.is_empty() {
        vec![QPoly::one(xv)]
    } else {
        parse_all(den)?
    };
    Ok(WRepresentation::new(xv, a, b)?)
}

fn expand(text: &str, vars: &VarSet, order: u32) -> Result<QSeries, CliError> {
    Ok(parse_ratfun(text, vars)?.expand(order)?)
}

pub fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let n = cli.order;
    match &cli.command {
        Command::Diag { kind, expr } => {
            let f = parse_ratfun(expr, &require_vars(cli)?)?;
            let d = diagonal(&f, *kind, n)?;
            Ok(Report::new(
                &SeriesJson::from_series(&d),
                d.to_string(),
                true,
            ))
        }
        Command::Lift { poly, root, order } => {
            let p = parse_poly(poly, &require_vars(cli)?)?;
            let lambda = parse_rational(root)?;
            let h = lift_root(&p, &lambda, order.unwrap_or(n))?.series;
            Ok(Report::new(
                &SeriesJson::from_series(&h),
                h.to_string(),
                true,
            ))
        }
        Command::LiftFactor { f, p0, q0 } => {
            let vars = require_vars(cli)?;
            let (f, p0, q0) = (
                parse_poly(f, &vars)?,
                parse_poly(p0, &vars)?,
                parse_poly(q0, &vars)?,
            );
            let (p, q) = lift_factorization(&f, &p0, &q0, n)?;
            let coeffs = |s: &algdiag::hensel::SeriesPolynomial<Rational>| {
                s.coeffs().iter().map(SeriesJson::from_series).collect()
            };
            let out = LiftFactorJson {
                var: vars.name(vars.len() - 1).to_string(),
                p: coeffs(&p),
                q: coeffs(&q),
            };
            Ok(Report::new(&out, format!("p = {p}\nq = {q}"), true))
        }
        Command::Dl { poly, num, den } => {
            let vars = require_vars(cli)?;
            let spec = AlgebraicSeriesSpec::new(parse_poly(poly, &vars)?)?;
            let w = parse_representation(&x_vars(&vars)?, num, den)?;
            let cert = dl_rational(&spec, &w, n)?;
            let r = &cert.rational;
            let expression = format!("({})/({})", r.numerator(), r.denominator());
            let out = DlJson {
                expression: expression.clone(),
                numerator: PolyJson::from_poly(r.numerator()),
                denominator: PolyJson::from_poly(r.denominator()),
                verification: VerificationJson::new(&cert.verification),
            };
            let text = format!(
                "R = {expression}\nD(R) = {}\n{}",
                cert.verification.computed, cert.verification
            );
            Ok(Report::new(&out, text, cert.verification.pass))
        }
        Command::Weierstrass { mode, exprs, var } => {
            let vars = require_vars(cli)?;
            let v = var
                .clone()
                .unwrap_or_else(|| vars.name(vars.len() - 1).to_string());
            weierstrass(&vars, *mode, exprs, &v, n)
        }
        Command::AmCode { poly, num, den } => {
            let vars = require_vars(cli)?;
            let p = parse_poly(poly, &vars)?;
            am_code(&p, num, den, n)
        }
        Command::Annihilate { op, p1, p2 } => {
            let vars = require_vars(cli)?;
            let (p1, p2) = (parse_poly(p1, &vars)?, parse_poly(p2, &vars)?);
            let a = match op {
                AnnihilatorOp::Add => annihilator_sum(&p1, &p2)?,
                AnnihilatorOp::Mul => annihilator_prod(&p1, &p2)?,
            };
            let degree = a.degree_in(vars.len() - 1).unwrap_or(0);
            let out = AnnihilatorJson {
                op: match op {
                    AnnihilatorOp::Add => "add",
                    AnnihilatorOp::Mul => "mul",
                }
                .into(),
                degree,
                annihilator: PolyJson::from_poly(&a),
            };
            let text = format!("{a}\ndegree {degree} in {}", vars.name(vars.len() - 1));
            Ok(Report::new(&out, text, true))
        }
        Command::Hadamard { f, g } => {
            let vars = require_vars(cli)?;
            let h = hadamard(&expand(f, &vars, n)?, &expand(g, &vars, n)?)?;
            Ok(Report::new(
                &SeriesJson::from_series(&h),
                h.to_string(),
                true,
            ))
        }
        Command::Corpus {
            source,
            random,
            dump,
        } => crate::corpus::command(source, *random, *dump, cli.seed),
    }
}

pub(crate) fn diagonal(
    f: &RationalFunction<Rational>,
    kind: DiagKind,
    n: u32,
) -> Result<QSeries, CliError> {
    Ok(match kind {
        DiagKind::Small => f.small_diagonal(n)?,
        DiagKind::Big => f.big_diagonal(n)?,
    })
}

fn weierstrass(
    vars: &VarSet,
    mode: WeierstrassMode,
    exprs: &[String],
    v: &str,
    n: u32,
) -> Result<Report, CliError> {
    let all = |s: &[QSeries]| s.iter().map(SeriesJson::from_series).collect::<Vec<_>>();
    match (mode, exprs) {
        (WeierstrassMode::Divide, [f, g]) => {
            let (f, g) = (expand(f, vars, n)?, expand(g, vars, n)?);
            let d = w_divide(&f, &g, v)?;
            let ok = d.reconstructs(&f, &g);
            let text = format!(
                "q = {}\nr = {}\nexact through degree {}",
                d.quotient,
                d.remainder(),
                d.window
            );
            let out = WeierstrassJson::Divide {
                var: d.var.clone(),
                order: d.order,
                window: d.window,
                quotient: SeriesJson::from_series(&d.quotient),
                remainder: all(&d.remainder_coeffs),
                reconstructs: ok,
            };
            Ok(Report::new(&out, text, ok))
        }
        (WeierstrassMode::Prepare, [g]) => {
            let g = expand(g, vars, n)?;
            let p = w_prepare(&g, v)?;
            let ok = p.reconstructs(&g);
            let text = format!(
                "u = {}\np = {}\nexact through degree {}",
                p.unit,
                p.distinguished_poly(),
                p.window
            );
            let out = WeierstrassJson::Prepare {
                var: p.var.clone(),
                order: p.order,
                window: p.window,
                unit: SeriesJson::from_series(&p.unit),
                distinguished: all(&p.distinguished),
                reconstructs: ok,
            };
            Ok(Report::new(&out, text, ok))
        }
        (WeierstrassMode::Divide, _) => Err(CliError::Usage("divide takes F and G".into())),
        (WeierstrassMode::Prepare, _) => Err(CliError::Usage("prepare takes a single G".into())),
    }
}

/// Builds the code and the series `(f, h)` it should vanish on.
pub(crate) fn code_with_series(
    p: &QPoly,
    num: &[String],
    den: &[String],
    n: u32,
) -> Result<(AMCode<Rational>, QSeries, QSeries), CliError> {
    let xv = x_vars(p.vars())?;
    if num.is_empty() && den.is_empty() {
        let code = am_code_simple(p)?;
        let f = lift_root(p, &Rational::from_integer(0.into()), n)?.series;
        Ok((code, f, TruncSeries::zero(&xv, n)))
    } else {
        let rep = parse_representation(&xv, num, den)?;
        let code = am_code_from_representation(&rep, p)?;
        let h = AlgebraicSeriesSpec::etale(p.clone())?.etale_root(n)?;
        let f = rep.evaluate(&h)?;
        Ok((code, f, h))
    }
}

fn am_code(p: &QPoly, num: &[String], den: &[String], n: u32) -> Result<Report, CliError> {
    let (code, f, h) = code_with_series(p, num, den, n)?;
    let check = am_verify(&code, &f, &h, n)?;
    let j = &code.jacobian_at_origin;
    let branch = match code.branch {
        CodeBranch::Simple => "simple",
        CodeBranch::Representation => "representation",
    };
    let out = AmCodeJson {
        branch: branch.into(),
        first: PolyJson::from_poly(&code.first),
        second: PolyJson::from_poly(&code.second),
        jacobian: [
            [RationalJson::new(&j[0][0]), RationalJson::new(&j[0][1])],
            [RationalJson::new(&j[1][0]), RationalJson::new(&j[1][1])],
        ],
        determinant: RationalJson::new(&code.determinant()),
        verification: CodeCheckJson {
            order: n,
            pass: check.pass,
            series: SeriesJson::from_series(&f),
        },
    };
    let text = format!(
        "branch: {branch}\nP1 = {}\nP2 = {}\nJ(0) = [[{}, {}], [{}, {}]], det = {}\nf = {f}\n{check}",
        code.first,
        code.second,
        j[0][0],
        j[0][1],
        j[1][0],
        j[1][1],
        code.determinant()
    );
    Ok(Report::new(&out, text, check.pass))
}

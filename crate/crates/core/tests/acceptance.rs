//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use algdiag::artin_mazur::{am_code_from_representation, am_code_simple, am_verify};
use algdiag::denef_lipshitz::{dl_rational, monomial_diagonal_certificate, WRepresentation};
use algdiag::diagonal::small_diagonal;
use algdiag::hensel::{lift_factorization, lift_root, lift_root_linear, AlgebraicSeriesSpec};
use algdiag::parser::{parse_poly, parse_ratfun};
use algdiag::resultant::annihilator_sum;
use algdiag::weierstrass::{w_divide, w_prepare};
use algdiag::{eval_poly_at_series, Monomial, QPoly, QSeries, Rational, TruncSeries, VarSet};
use common::*;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = std::result::Result<String, String>;

fn x_vars() -> VarSet {
    VarSet::parse("x").unwrap()
}

fn xt_vars() -> VarSet {
    VarSet::parse("x,t").unwrap()
}

fn uni(coeffs: Vec<Rational>) -> QSeries {
    TruncSeries::univariate(&x_vars(), coeffs)
}

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: algdiag::Error) -> String {
    e.to_string()
}

fn within(elapsed: Duration, limit: Duration) -> std::result::Result<(), String> {
    ensure(
        elapsed < limit,
        format!("took {elapsed:.2?}, limit {limit:?}"),
    )
}

fn central_diagonal() -> std::result::Result<QSeries, String> {
    let r = parse_ratfun::<Rational>("1/(1-x-t)", &xt_vars()).map_err(err)?;
    r.big_diagonal(15).map_err(err)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let g = central_diagonal()?;
    let elapsed = start.elapsed();
    for n in 0..=15u32 {
        let want = Rational::from_integer(central_binomial(n as u64));
        ensure(
            g.get(&[n]) == Some(want.clone()),
            format!("coefficient {n}: got {:?}, want {want}", g.get(&[n])),
        )?;
    }
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("C(2n,n) for n <= 15 in {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let g = central_diagonal()?;
    let p: QPoly = parse_poly("(1-4*x)*t^2 - 1", &xt_vars()).map_err(err)?;
    let residual = eval_poly_at_series(&p, &g).map_err(err)?;
    ensure(g.bound() >= 15, "window below 15")?;
    ensure(residual.is_zero(), format!("residual {residual}"))?;
    Ok("(1-4x) g^2 - 1 = 0 through degree 15".into())
}

fn apery_check(kernel: &str, vars: &str, window: u32, terms: u32, limit: u64) -> Outcome {
    let v = VarSet::parse(vars).unwrap();
    let start = Instant::now();
    let r = parse_ratfun::<Rational>(kernel, &v).map_err(err)?;
    let expansion = r.expand(window).map_err(err)?;
    let d = small_diagonal(&expansion).map_err(err)?;
    let elapsed = start.elapsed();
    ensure(
        d.bound() >= terms,
        format!("diagonal window {} < {terms}", d.bound()),
    )?;
    for n in 0..=terms {
        let want = Rational::from_integer(apery(n as u64));
        ensure(
            d.get(&[n]) == Some(want.clone()),
            format!("t^{n}: got {:?}, want {want}", d.get(&[n])),
        )?;
    }
    within(elapsed, Duration::from_secs(limit))?;
    let shown: Vec<String> = (0..=terms)
        .map(|n| d.get(&[n]).unwrap().to_string())
        .collect();
    Ok(format!(
        "{} (window {window}, {elapsed:.2?})",
        shown.join(", ")
    ))
}

fn criterion_3() -> Outcome {
    apery_check(
        "1/((1-x1)*((1-x2)*(1-x3)*(1-x4)*(1-x5) - x1*x2*x3))",
        "x1,x2,x3,x4,x5",
        30,
        6,
        120,
    )
}

fn criterion_4() -> Outcome {
    apery_check(
        "1/((1-x1-x2)*(1-x3-x4) - x1*x2*x3*x4)",
        "x1,x2,x3,x4",
        32,
        8,
        60,
    )
}

/// `sqrt(1 + s x) - 1` from the binomial series.
fn sqrt_minus_one(s: i64, n: usize) -> Vec<Rational> {
    let mut c = binomial_series(&q(1, 2), s, n);
    c[0] = Rational::zero();
    c
}

fn criterion_5() -> Outcome {
    const N: usize = 10;
    let catalan_h: Vec<Rational> = {
        let mut c: Vec<Rational> = catalan(N).into_iter().map(Rational::from_integer).collect();
        c.insert(0, Rational::zero());
        c
    };
    let mut identity = vec![Rational::zero(); N + 1];
    identity[1] = Rational::one();
    let catalog: [(&str, Vec<Rational>); 4] = [
        ("t^2 + 2*t - x", sqrt_minus_one(1, N)),
        ("t^2 - t + x", catalan_h),
        ("t - x", identity),
        ("t^2 + 2*t + x", sqrt_minus_one(-1, N)),
    ];
    let mut cells = 0;
    for (text, h) in &catalog {
        let spec =
            AlgebraicSeriesSpec::etale(parse_poly(text, &xt_vars()).map_err(err)?).map_err(err)?;
        for i in 0..=3u32 {
            for j in 0..=3u32 {
                let rec = monomial_diagonal_certificate(&spec, &[i], j, N as u32).map_err(err)?;
                let mut want = vec![Rational::zero(); i as usize];
                want.extend(pow(h, j, N));
                want.truncate(N + 1);
                ensure(rec.pass, format!("{text}, i={i}, j={j}: {rec}"))?;
                ensure(
                    rec.computed == uni(want),
                    format!("{text}, i={i}, j={j}: differs from oracle"),
                )?;
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} certificates at N = {N}"))
}

fn criterion_6() -> Outcome {
    const N: u32 = 20;
    let spec = AlgebraicSeriesSpec::etale(parse_poly("t^2 + 2*t - x", &xt_vars()).map_err(err)?)
        .map_err(err)?;
    let xp: QPoly = parse_poly("x", &x_vars()).map_err(err)?;
    let rep = WRepresentation::new(&x_vars(), vec![xp.clone(), xp], vec![QPoly::one(&x_vars())])
        .map_err(err)?;
    let cert = dl_rational(&spec, &rep, N).map_err(err)?;
    let mut want = vec![Rational::zero()];
    want.extend(binomial_series(&q(1, 2), 1, N as usize - 1));
    ensure(cert.verification.pass, cert.verification.to_string())?;
    ensure(
        cert.verification.computed == uni(want),
        "D(R) differs from x sqrt(1+x)",
    )?;
    Ok(format!(
        "D(R) = x sqrt(1+x) through degree {N}, R = {}",
        cert.rational
    ))
}

fn criterion_7() -> Outcome {
    const N: u32 = 30;
    let v = xt_vars();
    let f: QPoly = parse_poly("t^2 - (1 + x)", &v).map_err(err)?;
    let p0: QPoly = parse_poly("t - 1", &v).map_err(err)?;
    let q0: QPoly = parse_poly("t + 1", &v).map_err(err)?;
    let (p, qf) = lift_factorization(&f, &p0, &q0, N).map_err(err)?;
    let product = p.mul(&qf);
    let want = algdiag::hensel::SeriesPolynomial::from_poly(&f, N);
    ensure(product.agrees_through(&want, N), "p q differs from f")?;
    let root = -p.coeffs()[0].clone();
    let shifted = &root - &TruncSeries::one(&x_vars(), N);
    ensure(
        shifted == uni(sqrt_minus_one(1, N as usize)),
        "root - 1 differs from sqrt(1+x) - 1",
    )?;
    Ok(format!(
        "p q = f through degree {N}; root of p is sqrt(1+x)"
    ))
}

fn criterion_8() -> Outcome {
    const N: usize = 12;
    let v = xt_vars();
    let sum: Vec<Rational> = binomial_series(&q(1, 2), 1, N)
        .into_iter()
        .zip(binomial_series(&q(1, 3), 1, N))
        .map(|(a, b)| a + b)
        .collect();
    let s = uni(sum);
    let sextic: QPoly = parse_poly(
        "t^6 - 3*(x+1)*t^4 - 2*(x+1)*t^3 + 3*(x+1)^2*t^2 - 6*(x+1)^2*t - x*(x+1)^2",
        &v,
    )
    .map_err(err)?;
    ensure(
        eval_poly_at_series(&sextic, &s).map_err(err)?.is_zero(),
        "sextic residual is nonzero",
    )?;
    let p1: QPoly = parse_poly("t^2 - (1+x)", &v).map_err(err)?;
    let p2: QPoly = parse_poly("t^3 - (1+x)", &v).map_err(err)?;
    let ann = annihilator_sum(&p1, &p2).map_err(err)?;
    ensure(
        ann.degree_in(1) == Some(6),
        "resultant is not of degree 6 in t",
    )?;
    ensure(
        eval_poly_at_series(&ann, &s).map_err(err)?.is_zero(),
        "resultant residual is nonzero",
    )?;
    let same = if ann == sextic {
        "equals"
    } else {
        "differs from"
    };
    Ok(format!(
        "both annihilate through degree {N}; the resultant {same} the explicit sextic"
    ))
}

fn random_series(
    rng: &mut ChaCha8Rng,
    vars: &VarSet,
    max_deg: u32,
    terms: usize,
    bound: u32,
) -> QSeries {
    let n = vars.len();
    let mut out = Vec::new();
    for _ in 0..terms {
        let mut exps = vec![0u32; n];
        let deg = rng.gen_range(0..=max_deg);
        for _ in 0..deg {
            exps[rng.gen_range(0..n)] += 1;
        }
        out.push((
            Monomial::new(exps),
            q(rng.gen_range(-5..=5), rng.gen_range(1..=3)),
        ));
    }
    TruncSeries::from_terms(vars, bound, out)
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let names = ["a", "b", "y"];
    let mut checked = 0;
    for case in 0..100 {
        let nv = rng.gen_range(1..=3);
        let vars = VarSet::new(names[3 - nv..].iter().copied()).unwrap();
        let vi = rng.gen_range(0..nv);
        let v = vars.name(vi).to_string();
        let d = rng.gen_range(0..=4u32);
        let g0 = random_series(&mut rng, &vars, 6, 8, 12);
        // Clear pure powers of v below d and make v^d a unit coefficient.
        let g = g0.filter(|m| !(m.degree() == m.exp(vi) && m.exp(vi) <= d));
        let lead = Monomial::var(nv, vi, d);
        let g = &g + &TruncSeries::from_terms(&vars, 12, [(lead, q(rng.gen_range(1..=4), 1))]);
        let g = if g.regular_order(&v).map_err(err)?.finite() == Some(d) {
            g
        } else {
            return Err(format!("case {case}: generator produced order != {d}"));
        };
        let f = random_series(&mut rng, &vars, 8, 10, 12);
        let div = w_divide(&f, &g, &v).map_err(err)?;
        ensure(
            div.reconstructs(&f, &g),
            format!("case {case}: q g + r != f"),
        )?;
        ensure(
            div.remainder_coeffs.len() == d as usize,
            format!("case {case}: remainder shape"),
        )?;
        let rem = div.remainder();
        ensure(
            rem.terms().all(|(m, _)| m.exp(vi) < d),
            format!("case {case}: deg_v r >= d"),
        )?;
        let prep = w_prepare(&g, &v).map_err(err)?;
        ensure(prep.reconstructs(&g), format!("case {case}: u p != g"))?;
        ensure(
            !prep.unit.constant_term().is_zero(),
            format!("case {case}: u(0) = 0"),
        )?;
        ensure(
            prep.distinguished
                .iter()
                .all(|a| a.constant_term().is_zero()),
            format!("case {case}: p not distinguished"),
        )?;
        ensure(
            prep.distinguished.len() == d as usize,
            format!("case {case}: deg p != d"),
        )?;
        checked += 1;
    }
    Ok(format!("{checked} random divisions and preparations"))
}

fn criterion_10() -> Outcome {
    const N: u32 = 12;
    let n = N as usize;
    let xv = x_vars();
    let binom: QPoly = parse_poly("t^2 + 2*t - x", &xt_vars()).map_err(err)?;
    let cat: QPoly = parse_poly("t^2 - t + x", &xt_vars()).map_err(err)?;
    let sqrt_h = uni(sqrt_minus_one(1, n));
    let catalan_h = {
        let mut c: Vec<Rational> = catalan(n).into_iter().map(Rational::from_integer).collect();
        c.insert(0, Rational::zero());
        uni(c)
    };
    let xp: QPoly = parse_poly("x", &xv).map_err(err)?;
    let node_f = &TruncSeries::from_poly(&xp, N) * &(&sqrt_h + &TruncSeries::one(&xv, N));

    let simple = am_code_simple(&binom).map_err(err)?;
    let node_rep =
        WRepresentation::new(&xv, vec![xp.clone(), xp], vec![QPoly::one(&xv)]).map_err(err)?;
    let node = am_code_from_representation(&node_rep, &binom).map_err(err)?;
    let square = am_code_from_representation(&WRepresentation::power(&xv, 2), &cat).map_err(err)?;
    let cases = [
        ("simple", &simple, sqrt_h.clone(), TruncSeries::zero(&xv, N)),
        ("node", &node, node_f, sqrt_h),
        ("square", &square, catalan_h.pow(2), catalan_h),
    ];
    let mut dets = Vec::new();
    for (name, code, f, h) in cases {
        let rec = am_verify(code, &f, &h, N).map_err(err)?;
        ensure(rec.pass, format!("{name}: {rec}"))?;
        ensure(!code.determinant().is_zero(), format!("{name}: singular"))?;
        dets.push(format!("{name} det {}", code.determinant()));
    }
    Ok(dets.join(", "))
}

fn random_etale(rng: &mut ChaCha8Rng) -> QPoly {
    let nx = rng.gen_range(1..=2);
    let names: Vec<String> = ["x", "z"][..nx]
        .iter()
        .map(|s| s.to_string())
        .chain(["t".to_string()])
        .collect();
    let vars = VarSet::new(names).unwrap();
    let n = vars.len();
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(2..=6) {
        let mut exps = vec![0u32; n];
        exps[n - 1] = rng.gen_range(0..=3);
        for _ in 0..rng.gen_range(0..=3) {
            exps[rng.gen_range(0..n - 1)] += 1;
        }
        terms.push((
            Monomial::new(exps),
            q(rng.gen_range(-4..=4), rng.gen_range(1..=2)),
        ));
    }
    let p = QPoly::from_terms(&vars, terms);
    let slope = Monomial::var(n, n - 1, 1);
    let p = &(&p - &QPoly::constant(&vars, p.constant_term()))
        - &QPoly::monomial(&vars, slope.clone(), p.coeff(&slope));
    let c = q(
        rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 },
        1,
    );
    &p + &QPoly::monomial(&vars, slope, c)
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    for case in 0..50 {
        let p = random_etale(&mut rng);
        let newton = lift_root(&p, &Rational::zero(), 16).map_err(err)?.series;
        let linear = lift_root_linear(&p, &Rational::zero(), 16).map_err(err)?;
        ensure(newton == linear, format!("case {case}: P = {p}"))?;
        ensure(
            eval_poly_at_series(&p, &newton).map_err(err)?.is_zero(),
            format!("case {case}: not a root"),
        )?;
    }
    Ok("50 random etale specs agree at bound 16".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("central binomial big diagonal", criterion_1),
        ("algebraicity witness (1-4x)g^2 - 1", criterion_2),
        ("Apery numbers, 5-variable kernel", criterion_3),
        ("Apery numbers, 4-variable kernel", criterion_4),
        ("monomial diagonal certificates", criterion_5),
        ("rational function for x sqrt(1+x)", criterion_6),
        ("Hensel factorization of t^2 - (1+x)", criterion_7),
        ("sextic annihilator of sqrt + cbrt", criterion_8),
        ("Weierstrass division/preparation suite", criterion_9),
        ("two-dimensional codes", criterion_10),
        ("Newton vs order-by-order lifting", criterion_11),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name}: {detail}", k + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {:>2}: {name}: {why}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}

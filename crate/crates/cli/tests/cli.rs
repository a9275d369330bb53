use std::process::{Command, Output};

use algdiag_cli::commands::{AmCodeJson, AnnihilatorJson, DlJson, LiftFactorJson, WeierstrassJson};
use algdiag_cli::corpus::{CorpusEntry, CorpusReport};
use algdiag_cli::json::{PolyJson, SeriesJson};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn algdiag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algdiag"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim_end().to_string()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json<T: DeserializeOwned>(args: &[&str]) -> (T, String) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = algdiag(&full);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    (serde_json::from_str(&text).expect("valid JSON"), text)
}

/// Ingesting the output and emitting it again gives the same text.
fn round_trips<T: DeserializeOwned + Serialize>(args: &[&str]) -> T {
    let (value, text) = json::<T>(args);
    assert_eq!(serde_json::to_string_pretty(&value).unwrap(), text);
    value
}

/// Coefficients of a univariate SeriesJson as `(num, den)` pairs, dense.
fn dense(s: &SeriesJson) -> Vec<(i128, i128)> {
    assert_eq!(s.vars.len(), 1);
    let mut out = vec![(0, 1); s.truncation as usize + 1];
    for t in &s.terms {
        out[t.exp[0] as usize] = (t.num.parse().unwrap(), t.den.parse().unwrap());
    }
    out
}

fn binomial(n: i128, k: i128) -> i128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn ints(v: &[i128]) -> Vec<(i128, i128)> {
    v.iter().map(|&n| (n, 1)).collect()
}

#[test]
fn big_diagonal_of_the_central_binomial_kernel() {
    let o = algdiag(&["--vars", "x,t", "--order", "5", "diag", "big", "1/(1-x-t)"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "1 + 2*x + 6*x^2 + 20*x^3 + 70*x^4 + 252*x^5 + O(deg 6)"
    );
    let s: SeriesJson =
        round_trips(&["--vars", "x,t", "--order", "10", "diag", "big", "1/(1-x-t)"]);
    let want: Vec<i128> = (0..=10).map(|n| binomial(2 * n, n)).collect();
    assert_eq!(dense(&s), ints(&want));
}

#[test]
fn small_diagonals() {
    let s: SeriesJson = round_trips(&["--vars", "x,y", "--order", "9", "diag", "small", "1"]);
    assert_eq!(s.vars, vec!["t"]);
    assert_eq!(dense(&s), ints(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0]));
    let kernel = "1/((1-x1)*((1-x2)*(1-x3)*(1-x4)*(1-x5) - x1*x2*x3))";
    let s: SeriesJson = round_trips(&[
        "--vars",
        "x1,x2,x3,x4,x5",
        "--order",
        "3",
        "diag",
        "small",
        kernel,
    ]);
    let apery: Vec<i128> = (0..=3)
        .map(|n| {
            (0..=n)
                .map(|k| (binomial(n, k) * binomial(n + k, k)).pow(2))
                .sum()
        })
        .collect();
    assert_eq!(dense(&s), ints(&apery));
    assert_eq!(apery, vec![1, 5, 73, 1445]);
}

#[test]
fn lifting_examples() {
    let s: SeriesJson = round_trips(&["--vars", "x,t", "lift", "t^2+2*t-x", "0", "4"]);
    assert_eq!(dense(&s), vec![(0, 1), (1, 2), (-1, 8), (1, 16), (-5, 128)]);
    let s: SeriesJson = round_trips(&["--vars", "x,t", "lift", "t-x", "0", "9"]);
    assert_eq!(s.truncation, 9);
    assert_eq!(s.terms.len(), 1);
    assert_eq!(
        (s.terms[0].exp.clone(), s.terms[0].num.as_str()),
        (vec![1], "1")
    );
    let s: SeriesJson = round_trips(&["--vars", "x,t", "lift", "t^2-t+x", "0", "6"]);
    // Catalan numbers by their recurrence, shifted by one.
    let mut cat = vec![1i128];
    for m in 1..6 {
        cat.push((0..m).map(|i| cat[i] * cat[m - 1 - i]).sum());
    }
    let mut want = vec![0];
    want.extend(cat);
    assert_eq!(dense(&s), ints(&want));
    let o = algdiag(&[
        "--vars",
        "x,t",
        "--order",
        "3",
        "lift",
        "(1-4*x)*t^2-1",
        "-1",
    ]);
    assert_eq!(stdout(&o), "-1 - 2*x - 6*x^2 - 20*x^3 + O(deg 4)");
}

#[test]
fn factorization_lifting() {
    let out: LiftFactorJson = round_trips(&[
        "--vars",
        "x,t",
        "--order",
        "6",
        "lift-factor",
        "t^3-(1+x)*t",
        "t",
        "t^2-1",
    ]);
    assert_eq!(out.var, "t");
    let poly = |coeffs: &[SeriesJson]| -> Vec<Vec<(Vec<u32>, String)>> {
        coeffs
            .iter()
            .map(|c| {
                c.terms
                    .iter()
                    .map(|t| (t.exp.clone(), format!("{}/{}", t.num, t.den)))
                    .collect()
            })
            .collect()
    };
    assert_eq!(poly(&out.p), vec![vec![], vec![(vec![0], "1/1".into())]]);
    assert_eq!(
        poly(&out.q),
        vec![
            vec![(vec![0], "-1/1".into()), (vec![1], "-1/1".into())],
            vec![],
            vec![(vec![0], "1/1".into())]
        ]
    );
}

#[test]
fn denef_lipshitz_certificates() {
    let out: DlJson = round_trips(&["--vars", "x,t", "--order", "4", "dl", "t^2-t+x"]);
    assert!(out.verification.pass);
    assert_eq!(dense(&out.verification.computed), ints(&[0, 1, 1, 2, 5]));
    assert_eq!(out.expression, "(2*t^2 - t)/(x + t - 1)");

    let out: DlJson = round_trips(&[
        "--vars",
        "x,t",
        "--order",
        "4",
        "dl",
        "t^2+2*t-x",
        "--num",
        "0,0,1",
    ]);
    assert_eq!(
        dense(&out.verification.computed),
        vec![(0, 1), (0, 1), (1, 4), (-1, 8), (5, 64)]
    );

    let out: DlJson = round_trips(&[
        "--vars",
        "x,t",
        "--order",
        "4",
        "dl",
        "t^2+2*t-x",
        "--num",
        "x,x",
    ]);
    assert_eq!(
        dense(&out.verification.computed),
        vec![(0, 1), (1, 1), (1, 2), (-1, 8), (1, 16)]
    );
    // The certificate's numerator and denominator reassemble the expression.
    let num = PolyJson::to_poly(&out.numerator).unwrap();
    let den = PolyJson::to_poly(&out.denominator).unwrap();
    assert_eq!(format!("({num})/({den})"), out.expression);
}

#[test]
fn weierstrass_modes() {
    let out: WeierstrassJson = round_trips(&[
        "--vars",
        "x,y",
        "--order",
        "8",
        "weierstrass",
        "divide",
        "y^3",
        "y^2-x",
    ]);
    match out {
        WeierstrassJson::Divide {
            order,
            remainder,
            quotient,
            reconstructs,
            ..
        } => {
            assert!(reconstructs);
            assert_eq!(order, 2);
            assert!(remainder[0].terms.is_empty());
            assert_eq!(remainder[1].terms.len(), 1);
            assert_eq!(remainder[1].terms[0].exp, vec![1]);
            assert_eq!(quotient.terms.len(), 1);
            assert_eq!(quotient.terms[0].exp, vec![0, 1]);
        }
        other => panic!("wrong mode {other:?}"),
    }
    let out: WeierstrassJson = round_trips(&[
        "--vars",
        "x,y",
        "--order",
        "8",
        "weierstrass",
        "prepare",
        "(1+x)*y^2-x",
        "--var",
        "y",
    ]);
    match out {
        WeierstrassJson::Prepare {
            unit,
            distinguished,
            ..
        } => {
            assert_eq!(unit.terms.len(), 2);
            assert_eq!(distinguished.len(), 2);
            // a_0 = -x/(1+x), exact through degree (8 - 0) / 2
            let signs: Vec<&str> = distinguished[0]
                .terms
                .iter()
                .map(|t| t.num.as_str())
                .collect();
            assert_eq!(signs, vec!["-1", "1", "-1", "1"]);
        }
        other => panic!("wrong mode {other:?}"),
    }
}

#[test]
fn artin_mazur_codes() {
    let out: AmCodeJson = round_trips(&["--vars", "x,t", "--order", "8", "am-code", "t^2+2*t-x"]);
    assert_eq!(out.branch, "simple");
    assert_eq!(
        (out.determinant.num.as_str(), out.determinant.den.as_str()),
        ("2", "1")
    );
    assert!(out.verification.pass);
    let out: AmCodeJson = round_trips(&[
        "--vars", "x,t", "--order", "8", "am-code", "t^2-t+x", "--num", "0,0,1",
    ]);
    assert_eq!(out.branch, "representation");
    assert_eq!(out.determinant.num, "-1");
    let o = algdiag(&["--vars", "x,t", "am-code", "t^2+x^3-x^2"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn annihilator_of_a_sum_is_the_sextic() {
    let out: AnnihilatorJson = round_trips(&[
        "--vars",
        "x,t",
        "annihilate",
        "add",
        "t^2-(1+x)",
        "t^3-(1+x)",
    ]);
    assert_eq!(out.degree, 6);
    let got = out.annihilator.to_poly().unwrap();
    let vars = algdiag::VarSet::parse("x,t").unwrap();
    let sextic = algdiag::parser::parse_poly::<algdiag::Rational>(
        "t^6 - 3*(x+1)*t^4 - 2*(x+1)*t^3 + 3*(x+1)^2*t^2 - 6*(x+1)^2*t - x*(x+1)^2",
        &vars,
    )
    .unwrap();
    assert_eq!(got, sextic);
    let out: AnnihilatorJson =
        round_trips(&["--vars", "x,t", "annihilate", "mul", "t^2-(1+x)", "t-2"]);
    assert_eq!(out.degree, 2);
}

#[test]
fn hadamard_identity() {
    let o = algdiag(&[
        "--vars",
        "x,t",
        "--order",
        "6",
        "hadamard",
        "1/(1-x-t)",
        "1/(1-x*t)",
    ]);
    assert_eq!(stdout(&o), "1 + 2*x*t + 6*x^2*t^2 + 20*x^3*t^3 + O(deg 7)");
    let s: SeriesJson = round_trips(&[
        "--vars",
        "x,t",
        "--order",
        "6",
        "hadamard",
        "1/(1-x-t)",
        "1/(1-x*t)",
    ]);
    assert_eq!(s.terms.len(), 4);
}

#[test]
fn series_json_ingests_to_the_same_series() {
    let (s, _) = json::<SeriesJson>(&["--vars", "x,y,t", "--order", "6", "lift", "t^2+2*t-x-y"]);
    let series = s.to_series().unwrap();
    assert_eq!(SeriesJson::from_series(&series), s);
}

#[test]
fn builtin_corpus_passes() {
    let o = algdiag(&["corpus"]);
    let text = stdout(&o);
    assert_eq!(code(&o), 0, "{text}");
    assert!(text.ends_with("0 failed"), "{text}");
    let report: CorpusReport = round_trips(&["corpus", "--random", "5", "--seed", "3"]);
    assert_eq!(report.failed, 0);
    let names: Vec<&str> = report.entries.iter().map(|e| e.name.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(names.contains(&"random-lift-004"));
}

#[test]
fn corpus_dump_round_trips() {
    let o = algdiag(&["corpus", "--dump"]);
    let text = stdout(&o);
    let entries: Vec<CorpusEntry> = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&entries).unwrap(), text);
    assert!(entries.len() >= 20);
}

#[test]
fn failing_corpus_entries_set_the_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"[
          {"name": "wrong", "kind": "lift", "vars": ["x", "t"], "order": 4,
           "inputs": {"poly": "t-x"}, "expected": {"oracle": "geometric"}},
          {"name": "right", "kind": "lift", "vars": ["x", "t"], "order": 4,
           "inputs": {"poly": "t-x*t-x"}, "expected": {"oracle": "geometric | minus-one"}}
        ]"#,
    )
    .unwrap();
    let o = algdiag(&["corpus", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(text.contains("right") && text.contains("PASS"));
    assert!(text.contains("wrong") && text.contains("FAIL"));

    let malformed = dir.path().join("malformed.json");
    std::fs::write(&malformed, r#"[{"name": "x", "kind": "nonsense"}]"#).unwrap();
    assert_eq!(code(&algdiag(&["corpus", malformed.to_str().unwrap()])), 2);
    assert_eq!(code(&algdiag(&["corpus", "/nonexistent/corpus.json"])), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(
        code(&algdiag(&["--vars", "x,t", "diag", "big", "1/(1-x-"])),
        2
    );
    assert_eq!(code(&algdiag(&["diag", "big", "1/(1-x-t)"])), 2);
    assert_eq!(
        code(&algdiag(&["--vars", "x,t", "diag", "big", "1/(1-z)"])),
        2
    );
    assert_eq!(code(&algdiag(&["--vars", "x,t", "diag", "big", "2x"])), 2);
    assert_eq!(code(&algdiag(&["--vars", "x,t", "frobnicate"])), 2);
    assert_eq!(
        code(&algdiag(&["--vars", "x,t", "diag", "big", "1/(x+t)"])),
        3
    );
    assert_eq!(code(&algdiag(&["--vars", "x,t", "lift", "t^2-x", "0"])), 3);
    assert_eq!(
        code(&algdiag(&["--vars", "x,t", "lift", "t^2-1-x", "2"])),
        3
    );
    assert_eq!(
        code(&algdiag(&["--vars", "x,y", "weierstrass", "prepare", "x"])),
        3
    );
    assert_eq!(code(&algdiag(&["--vars", "x,t", "dl", "t^2-x"])), 3);
    assert_eq!(
        code(&algdiag(&[
            "--vars", "x,t", "dl", "t-x", "--num", "0,1", "--den", "x"
        ])),
        3
    );
    assert_eq!(
        code(&algdiag(&[
            "--vars",
            "x,t",
            "lift-factor",
            "t^2-(1+x)",
            "t-1",
            "t-1"
        ])),
        3
    );
    assert_eq!(
        code(&algdiag(&["--vars", "x,t", "weierstrass", "divide", "y"])),
        2
    );
    assert_eq!(code(&algdiag(&["--help"])), 0);
}

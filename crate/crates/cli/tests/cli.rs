use std::process::{Command, Output};

use carlitz_core::{Carlitz, Field, FqPoly, RatFunc, XPoly};
use proptest::prelude::*;
use serde_json::Value;

fn carlitz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_carlitz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = carlitz(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    serde_json::from_str(&stdout(&all)).unwrap()
}

fn code(args: &[&str]) -> Option<i32> {
    carlitz(args).status.code()
}

#[test]
fn beta_examples() {
    assert_eq!(stdout(&["--q", "2", "beta", "--k", "2"]), "(X^2 + X)/(t^2 + t)\n");
    assert_eq!(stdout(&["--q", "2", "beta", "--k", "1"]), "X\n");
    assert_eq!(stdout(&["--q", "3", "beta", "--k", "0"]), "1\n");

    let v = json(&["--q", "2", "beta", "--k", "2"]);
    assert_eq!(v["G_k"], "X^2 + X");
    assert_eq!(v["g_k"], "t^2 + t");
    assert_eq!(v["degree"], 2);
    assert_eq!(v["leading_coefficient"], "1/(t^2 + t)");
}

#[test]
fn check_int_and_expand() {
    assert_eq!(
        stdout(&["--q", "2", "check-int", "--poly", "(X^2+X)/(t^2+t)"]),
        "true\n"
    );
    let v = json(&["--q", "2", "check-int", "--poly", "X^2/(t^2+t)"]);
    assert_eq!(v["integer_valued"], false);
    assert_eq!(v["offending_k"], 1);
    assert_eq!(v["offending_coefficient"], "1/(t^2 + t)");

    let v = json(&["--q", "2", "expand", "--poly", "X^2"]);
    assert_eq!(v["B"], serde_json::json!(["0", "1", "t^2 + t"]));
    assert_eq!(v["A"], serde_json::json!(["0", "1", "1"]));
    let text = stdout(&["--q", "2", "expand", "--poly", "X^2"]);
    assert!(text.contains("B = [0, 1, t^2 + t]"), "{text}");
}

#[test]
fn certificate_and_matrices() {
    let v = json(&["--q", "3", "cert", "--s", "2"]);
    assert_eq!(v["certified"], true);
    assert_eq!(v["rank"], 8);
    assert_eq!(v["matrix_shape"], serde_json::json!([8, 9]));
    let text = stdout(&["--q", "3", "cert", "--s", "2"]);
    assert!(
        text.contains("certified: true") && text.contains("rank: 8"),
        "{text}"
    );

    let v = json(&["--q", "2", "matrix-a", "--s", "2"]);
    assert_eq!(
        v["matrix"],
        serde_json::json!([
            ["-1", "1", "0", "0"],
            ["-2", "-1", "2", "1"],
            ["-2", "-1", "1", "2"]
        ])
    );
    assert_eq!(v["blocks"]["passed"], true);

    let v = json(&["--q", "3", "matrix-m", "--k", "2"]);
    assert_eq!(v["det"], "64");
    assert_eq!(v["nonsingular"], true);
}

#[test]
fn decompose_lemma_binom_power() {
    assert_eq!(
        stdout(&["--q", "2", "decompose", "--k", "6"]),
        "β_6 = β_2 · β_4, verified\n"
    );
    let v = json(&["--q", "2", "decompose", "--k", "8"]);
    assert_eq!(v["kind"], "irreducible");

    assert_eq!(
        stdout(&["--q", "2", "lemma2", "--s", "3"]),
        "9 values checked, 0 violations\nequality only at k ∈ {0, 8}\n"
    );

    let v = json(&["--q", "2", "binom", "--n", "3", "--k", "2"]);
    assert_eq!(v["is_one"], v["is_unit"]);

    let v = json(&["--q", "2", "power", "--k", "2", "--m", "2"]);
    assert_eq!(v["integer_valued"], true);
}

#[test]
fn explicit_modulus() {
    assert_eq!(
        stdout(&["--q", "4", "--modulus", "u^2+u+1", "beta", "--k", "4"]),
        "(X^4 + X)/(t^4 + t)\n"
    );
    assert_eq!(
        code(&["--q", "4", "--modulus", "u^2+1", "beta", "--k", "1"]),
        Some(1)
    );
    assert_eq!(
        code(&["--q", "4", "--modulus", "t^2+t+1", "beta", "--k", "1"]),
        Some(1)
    );
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["--q", "6", "beta", "--k", "1"]), Some(1));
    assert_eq!(code(&["beta", "--k", "1"]), Some(1));
    assert_eq!(code(&["--q", "2", "frobnicate"]), Some(1));
    assert_eq!(code(&["--q", "2", "check-int", "--poly", "X^2/(X+1)"]), Some(1));
    assert_eq!(code(&["--q", "2", "expand", "--poly", "(t"]), Some(1));
    assert_eq!(code(&["--q", "2", "beta", "--k", "100000"]), Some(2));
    assert_eq!(
        code(&["--q", "2", "--size-limit", "8", "cert", "--s", "4"]),
        Some(2)
    );
    assert_eq!(code(&["--q", "2", "lemma2", "--s", "40"]), Some(2));
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--q", "3", "matrix-a", "--s", "2", "--json"][..],
        &["--q", "4", "beta", "--k", "7"],
        &["--q", "3", "expand", "--poly", "X^5 + t X"],
    ] {
        assert_eq!(carlitz(args).stdout, carlitz(args).stdout, "{args:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn beta_json_round_trips(q in prop::sample::select(vec![2u64, 3, 4]), k in 0u64..30) {
        let field = Field::with_order(q, None).unwrap();
        let ctx = Carlitz::new(&field);
        let v = json(&["--q", &q.to_string(), "beta", "--k", &k.to_string()]);
        let s = |key: &str| v[key].as_str().unwrap().to_string();
        prop_assert_eq!(XPoly::parse(&field, &s("beta")).unwrap(), ctx.beta(k).unwrap());
        prop_assert_eq!(XPoly::parse(&field, &s("G_k")).unwrap(), ctx.big_g(k).unwrap());
        prop_assert_eq!(FqPoly::parse(&field, &s("g_k")).unwrap(), ctx.g(k).unwrap());
        prop_assert_eq!(
            RatFunc::parse(&field, &s("leading_coefficient")).unwrap(),
            ctx.beta(k).unwrap().leading().unwrap().clone()
        );
    }

    #[test]
    fn expand_json_round_trips(q in prop::sample::select(vec![2u64, 3]), coeffs in prop::collection::vec(0u64..9, 1..6)) {
        let field = Field::with_order(q, None).unwrap();
        let ctx = Carlitz::new(&field);
        // X-polynomial with t-polynomial coefficients read off the random codes
        let src: Vec<String> = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| format!("({})*X^{i}", FqPoly::from_codes(&field, vec![c % q, c / q % q, 1])))
            .collect();
        let src = src.join(" + ");
        let v = json(&["--q", &q.to_string(), "expand", "--poly", &src]);
        let f = XPoly::parse(&field, v["poly"].as_str().unwrap()).unwrap();
        prop_assert_eq!(&f, &XPoly::parse(&field, &src).unwrap());
        for (key, expected) in [("A", ctx.expand_g_basis(&f).unwrap()), ("B", ctx.expand_beta_basis(&f).unwrap())] {
            let parsed: Vec<RatFunc> = v[key]
                .as_array()
                .unwrap()
                .iter()
                .map(|c| RatFunc::parse(&field, c.as_str().unwrap()).unwrap())
                .collect();
            prop_assert_eq!(&parsed, &expected.coeffs);
        }
    }
}

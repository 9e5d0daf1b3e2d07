use marked_limits::cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let out = run(std::iter::once("marked-limits").chain(args.iter().copied()));
    (out.code, out.stdout, out.stderr)
}

fn json(args: &[&str]) -> Value {
    let mut v: Vec<&str> = args.to_vec();
    v.push("--json");
    let (code, out, err) = call(&v);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn word_problem() {
    let r = json(&["wp", "--group", "G[x-2]", "--word", "abABB"]);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["command"], "wp");
    assert_eq!(r["outputs"]["identity"], true);
    assert_eq!(r["inputs"]["group"], "G[x - 2]");
    let r = json(&["wp", "--group", "M[[x-2]]", "--word", "abABB"]);
    assert_eq!(r["outputs"]["identity"], false);
}

#[test]
fn house_summary() {
    let (code, out, _) = call(&["algnum", "house", "--poly", "x^2-x-1"]);
    assert_eq!(code, 0);
    assert!(out.contains("1.618033989"), "{out}");
    let r = json(&["algnum", "house", "--poly", "x^2-x-1", "--tol", "1e-6"]);
    let v = r["outputs"]["value"].as_f64().unwrap();
    assert!((v - 1.618034).abs() < 1e-6);
    assert!(r["outputs"]["error"].as_f64().unwrap() <= 1e-6);
}

#[test]
fn limit_with_verification() {
    let r = json(&["limit", "--lambda", "x-2", "--family", "k=1,l=n", "--verify"]);
    assert_eq!(r["outputs"]["summary"], "M[[x - 2]]");
    let v = &r["outputs"]["verification"];
    assert_eq!(v["nondecreasing"], true);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.iter().map(|r| r["n"].as_i64().unwrap()).collect::<Vec<_>>(), [2, 4, 8, 16]);
    assert_eq!(rows.last().unwrap()["agreement"], 6);
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["wp", "--group", "G[x-", "--word", "a"]).0, 2);
    assert_eq!(call(&["wp", "--group", "G[x-2]", "--word", "abq"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["limit", "--lambda", "x-2", "--family", "k=2,l=2n"]).0, 1);
    assert_eq!(call(&["ball", "--group", "G[x-2]", "--radius", "9"]).0, 1);
    assert_eq!(call(&["theory", "kernel", "--lambda", "x-1"]).0, 1);
    assert_eq!(call(&["algnum", "house", "--poly", "3"]).0, 1);
    assert_eq!(call(&["algnum", "house", "--poly", "x-2", "--tol", "0"]).0, 1);
    assert_eq!(call(&["dist", "--group", "G[x-2]"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn reports_are_deterministic_and_inputs_reparse() {
    let cases: &[&[&str]] = &[
        &["ball", "--group", "G[x-2]:(2,1)", "--radius", "4"],
        &["dist", "--group", "M[0]", "--group", "Z2"],
        &["pair", "--lambda", "x-2", "--k", "-3", "--l", "2"],
        &["closure", "--lambda", "x-2", "--radius", "3"],
        &["limit", "--lambda", "x^2+x+1", "--family", "k=n,l=n+1"],
        &["theory", "phi", "--group", "G[x-2]", "--poly", "x-2", "--triple", "b,a,a"],
        &["theory", "embedding", "--lambda", "x-2", "--radius", "3"],
        &["algnum", "info", "--lambda", "x^2-x-1"],
        &["algnum", "factor", "--poly", "x^4-1"],
        &["algnum", "cyclotomic", "--poly", "x^4-x^2+1"],
    ];
    for args in cases {
        let mut a = json(args);
        let mut b = json(args);
        a.as_object_mut().unwrap().remove("elapsed_ms");
        b.as_object_mut().unwrap().remove("elapsed_ms");
        assert_eq!(a, b, "{args:?}");
        let inputs = a["inputs"].as_object().unwrap().clone();
        // Feeding the normalized inputs back gives the same report.
        let mut again: Vec<String> = vec![args[0].to_string()];
        if matches!(args[0], "theory" | "algnum") {
            again.push(args[1].to_string());
        }
        for (k, v) in &inputs {
            let flag = if k == "other" { "group".to_string() } else { k.clone() };
            again.push(format!("--{flag}"));
            again.push(v.as_str().unwrap().to_string());
        }
        let refs: Vec<&str> = again.iter().map(String::as_str).collect();
        let mut c = json(&refs);
        c.as_object_mut().unwrap().remove("elapsed_ms");
        assert_eq!(a, c, "{args:?} vs {refs:?}");
    }
}

#[test]
fn distance_and_pair() {
    let r = json(&["dist", "--group", "G[x-2]", "--group", "M[[x-2]]"]);
    assert_eq!(r["outputs"]["agreement"], 4);
    let r = json(&["pair", "--lambda", "x-2", "--k", "1", "--l", "2"]);
    assert_eq!(r["outputs"]["words"][0], "a");
    assert_eq!(r["outputs"]["words"][1], "baa");
    assert_eq!(r["outputs"]["generating"], true);
}

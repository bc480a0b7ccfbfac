use std::io::Write;
use std::process::{Command, Output, Stdio};

use incidence::builtins::{builtin, NAMES};
use incidence_cli::commands::{cmd_builtin, cmd_cohomology, cmd_gram, Options};
use incidence_cli::report::to_text;
use incidence_cli::schema::from_json;
use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_incidence"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn concrete_names() -> Vec<String> {
    NAMES
        .iter()
        .map(|n| n.replace("(m)", "(3)").replace("(n)", "(2)"))
        .collect()
}

#[test]
fn builtins_round_trip() {
    for name in concrete_names() {
        let input = cmd_builtin(&name).unwrap();
        let parsed = from_json(&input.to_json()).unwrap();
        assert_eq!(parsed, input, "{name}");
        let a = parsed.validate().unwrap();
        assert_eq!(a.law, builtin(&name).unwrap().law, "{name}");
    }
}

#[test]
fn builtin_sl2_brackets() {
    let out = run(&["builtin", "sl2"], None);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["dim"], 3);
    assert_eq!(v["symmetry"], "skew");
    let has = |i: u64, j: u64, k: u64, c: &str| {
        v["law"].as_array().unwrap().iter().any(|e| e["i"] == i && e["j"] == j && e["k"] == k && e["c"] == c)
    };
    // [e,f] = h, [h,e] = 2e, [h,f] = −2f with e, h, f = 1, 2, 3
    assert!(has(2, 1, 3, "1") && has(1, 2, 1, "2") && has(3, 2, 3, "-2"));
}

#[test]
fn abelian_plane_cohomology() {
    let out = run(&["cohomology", "builtin:abelian(2)", "--format", "json"], None);
    assert!(out.status.success());
    let d = &json_of(&out)["cohomology"]["dims"];
    assert_eq!((d["h1"].as_u64(), d["h2"].as_u64(), d["h3"].as_u64()), (Some(4), Some(2), Some(0)));
}

#[test]
fn richardson_fast_reports_the_quotient() {
    let out = run(&["richardson", "7", "--format", "json"], None);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["ratios"]["quotient"], "-13/20");
    assert_eq!(v["ratios"]["r1"], "24024/5");
    assert_eq!(v["ratios"]["r2"], "-7392");
    assert_eq!(v["ratios"]["convention_probe"]["scalar"], "1");
}

#[test]
fn exit_codes() {
    let off = r#"{"dim": 3, "symmetry": "skew", "type": "lie", "law": [
        {"i": 3, "j": 1, "k": 2, "c": "1"}, {"i": 3, "j": 2, "k": 1, "c": "-1"},
        {"i": 2, "j": 2, "k": 3, "c": "1"}, {"i": 2, "j": 3, "k": 2, "c": "-1"},
        {"i": 1, "j": 1, "k": 3, "c": "1"}, {"i": 1, "j": 3, "k": 1, "c": "-1"}]}"#;
    assert_eq!(run(&["cohomology", "-"], Some(off)).status.code(), Some(2));
    let float = r#"{"dim": 2, "symmetry": "skew", "type": "lie", "law": [{"i": 1, "j": 1, "k": 2, "c": "0.5"}]}"#;
    assert_eq!(run(&["cohomology", "-"], Some(float)).status.code(), Some(3));
    let one_sided = r#"{"dim": 2, "symmetry": "skew", "type": "lie", "law": [{"i": 1, "j": 1, "k": 2, "c": "1"}]}"#;
    assert_eq!(run(&["cohomology", "-"], Some(one_sided)).status.code(), Some(3));
    let wrong_type = r#"{"dim": 2, "symmetry": "none", "type": "lie", "law": []}"#;
    assert_eq!(run(&["cohomology", "-"], Some(wrong_type)).status.code(), Some(3));
    assert_eq!(run(&["cohomology", "-"], Some("{")).status.code(), Some(3));
    assert_eq!(run(&["gram", "builtin:nope"], None).status.code(), Some(3));
    assert_eq!(run(&["cohomology"], None).status.code(), Some(3));
    assert_eq!(run(&["characters", "builtin:so3"], None).status.code(), Some(3));
    assert_eq!(run(&["gram", "builtin:t2"], None).status.code(), Some(0));
}

#[test]
fn custom_presentation_input() {
    // one quadric x·y on A_W = k² for a commutative law on k¹ is not possible, so use m = 1 with symmetry none
    let input = r#"{"dim": 1, "symmetry": "none", "type": "custom", "law": [{"i": 1, "j": 1, "k": 1, "c": "1"}],
        "custom_presentation": {"target_dim": 1, "entries": [{"a": 1, "p": 1, "q": 1, "c": "1"}]}}"#;
    // F(ν) = ν² is nonzero at ν = 1
    assert_eq!(run(&["cohomology", "-"], Some(input)).status.code(), Some(2));
    let zero = input.replace(r#"[{"i": 1, "j": 1, "k": 1, "c": "1"}]"#, "[]");
    let out = run(&["cohomology", "-", "--format", "json"], Some(&zero));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let d = &json_of(&out)["cohomology"]["dims"];
    // δ = 0 and Φ = 0 at the origin
    assert_eq!((d["h1"].as_u64(), d["h2"].as_u64(), d["h3"].as_u64()), (Some(1), Some(1), Some(1)));
}

#[test]
fn reports_are_deterministic() {
    for args in [
        ["anisotropy", "builtin:abelian(3)", "--seed", "4"],
        ["obstruction", "builtin:n4", "--seed", "9"],
        ["gram", "builtin:mat2", "--seed", "2"],
    ] {
        let a = run(&args, None);
        let b = run(&args, None);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

fn leaves(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(o) => o.values().for_each(|x| leaves(x, out)),
        Value::Array(a) => a.iter().for_each(|x| leaves(x, out)),
        Value::String(s) => out.push(s.clone()),
        Value::Number(n) => out.push(n.to_string()),
        Value::Bool(b) => out.push(b.to_string()),
        Value::Null => {}
    }
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    let opts = Options::default();
    for name in ["sl2", "kx2", "leib2", "n4"] {
        let a = cmd_builtin(name).unwrap().validate().unwrap();
        for report in [cmd_cohomology(&a, &opts).unwrap(), cmd_gram(&a, &opts).unwrap()] {
            let text = to_text(&report);
            let mut values = Vec::new();
            leaves(&Value::Object(report.clone()), &mut values);
            let mut rest = text.as_str();
            for v in values {
                let at = rest.find(&v).unwrap_or_else(|| panic!("{name}: {v} missing from text or out of order"));
                rest = &rest[at + v.len()..];
            }
        }
    }
}

#[test]
fn lift_with_explicit_alpha() {
    // [x, y] = z is a Lie deformation of the abelian algebra
    let out = run(
        &["lift", "builtin:abelian(3)", "--alpha", r#"[{"i": 3, "j": 1, "k": 2, "c": "1"}]"#, "--format", "json"],
        None,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json_of(&out)["lift"]["result"], "Lifted");
    // [x, y] = z, [y, z] = y has Jacobiator −z
    let alpha = r#"[{"i": 3, "j": 1, "k": 2, "c": "1"}, {"i": 2, "j": 2, "k": 3, "c": "1"}]"#;
    let out = run(&["lift", "builtin:abelian(3)", "--alpha", alpha, "--format", "json"], None);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["lift"]["result"], "Obstructed");
}

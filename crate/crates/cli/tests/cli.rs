use std::process::{Command, Output};

fn threeweb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_threeweb")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn normalize_prints_the_four_series() {
    let o = threeweb(&["normalize", "--f", "x + y + x^2 y", "--order", "6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for key in ["X(t) = ", "Y(t) = ", "Z(t) = ", "g = "] {
        assert!(text.contains(key), "{text}");
    }
}

#[test]
fn flat_web_has_zero_residual() {
    let o = threeweb(&["normalize", "--f", "x + y + x y", "--order", "8"]);
    assert!(stdout(&o).ends_with("g = 0\n"), "{}", stdout(&o));
}

#[test]
fn json_fractions_are_strings() {
    let o = threeweb(&["--json", "normalize", "--f", "x + y + 1/3 x y", "--order", "5"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let coeffs = v["X"]["coeffs"].as_array().unwrap();
    assert!(coeffs.iter().all(|c| c["coeff"].is_string()));
    assert_eq!(v["X"]["order"], 5);
}

#[test]
fn parse_error_exits_2_with_offset() {
    let o = threeweb(&["normalize", "--f", "x + * y"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("byte 4"), "{err}");
}

#[test]
fn precondition_violations_exit_3() {
    assert_eq!(threeweb(&["normalize", "--f", "1 + x + y"]).status.code(), Some(3));
    assert_eq!(threeweb(&["normalize", "--f", "x"]).status.code(), Some(3));
    assert_eq!(threeweb(&["circular", "lemma1", "--P", "x^2"]).status.code(), Some(3));
    assert_eq!(threeweb(&["circular", "example-thm3", "--order", "5"]).status.code(), Some(3));
    assert_eq!(threeweb(&["--max-order", "8", "curvature", "--f", "x+y", "--order", "9"]).status.code(), Some(3));
}

#[test]
fn verify_reports_permutations() {
    let f = "x + y + x y (x - y)(x^2 - y^2)";
    let o = threeweb(&["verify", "--f", f, "--phi", "y,x", "--order", "8"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("Vertical->Horizontal, Horizontal->Vertical, Level->Level"));
    let o = threeweb(&["verify", "--f", f, "--phi", "-x,-y", "--order", "8"]);
    assert!(stdout(&o).contains("simple symmetry"));
}

#[test]
fn verify_failure_exits_4() {
    let o = threeweb(&["verify", "--f", "x + y + x^2 y", "--phi", "y,x", "--order", "6"]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(stdout(&o), "not a symmetry\n");
}

#[test]
fn expressions_can_come_from_files() {
    let path = std::env::temp_dir().join(format!("threeweb-g-{}.txt", std::process::id()));
    std::fs::write(&path, "x^2 - y^2\n").unwrap();
    let arg = format!("@{}", path.display());
    let o = threeweb(&["classify", "--g", &arg, "--order", "6"]);
    std::fs::remove_file(&path).ok();
    let text = stdout(&o);
    assert!(text.contains("simple: IdAndInvolution"), "{text}");
    assert!(text.contains("swap mirror: true") && text.contains("antiswap mirror: true"), "{text}");
}

#[test]
fn circular_solve_accepts_mu_in_t() {
    let o = threeweb(&["--json", "circular", "solve", "--V", "y + x^2", "--mu", "t", "--order", "6"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["certified"], true);
    assert_eq!(v["B"]["text"].as_str().unwrap().split(" + ").next(), Some("y - x^2"));
}

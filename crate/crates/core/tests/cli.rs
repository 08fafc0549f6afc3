use std::path::PathBuf;
use std::process::{Command, Output};

fn bsinterp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bsinterp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn eval_words() {
    for (k, word, want) in [
        ("2", "inv(b) a b", "(2, 0)"),
        ("2", "", "(0, 0)"),
        ("2", "a^3 b^2", "(3, 2)"),
        ("2", "b a", "(1*2^-1, 1)"),
        ("3", "b a^-1 inv(b)", "(-1*3^-1, 0)"),
    ] {
        let o = bsinterp(&["eval", "-k", k, word]);
        assert!(o.status.success(), "{word}");
        assert_eq!(stdout(&o).trim(), want, "{word}");
    }
}

#[test]
fn eval_rejects_bad_input() {
    assert_eq!(bsinterp(&["eval", "-k", "1", "a"]).status.code(), Some(2));
    assert_eq!(bsinterp(&["eval", "a )"]).status.code(), Some(2));
    assert_eq!(bsinterp(&["eval", "c"]).status.code(), Some(2));
}

#[test]
fn facts_report_counts_divisibility_pairs() {
    let o = bsinterp(&["check", "facts", "--n-max", "8", "-k", "2,3"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    for r in reports {
        assert_eq!(r["suite"], "facts");
        assert_eq!(r["counts"]["fact1"], 17 * 17 - 17);
        assert_eq!(r["violations"].as_array().unwrap().len(), 0);
    }
}

#[test]
fn mutation_is_reported() {
    let o = bsinterp(&["check", "biinterp", "--mutate", "-k", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let reports: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let v = &reports[0]["violations"];
    assert!(!v.as_array().unwrap().is_empty());
    for field in ["check", "instance", "expected", "got"] {
        assert!(v[0][field].is_string(), "{field}");
    }
}

#[test]
fn bad_configuration_exits_two() {
    assert_eq!(bsinterp(&["check", "facts", "-k", "1"]).status.code(), Some(2));
    assert_eq!(bsinterp(&["check", "facts", "--n-max", "0"]).status.code(), Some(2));
    assert_eq!(bsinterp(&["check", "nothing"]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let (p1, p2) = (scratch("group-1.json"), scratch("group-2.json"));
    for p in [&p1, &p2] {
        let o = bsinterp(&[
            "check",
            "group",
            "-k",
            "3",
            "--samples",
            "100",
            "--seed",
            "7",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    let (a, b) = (std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn translations_reparse() {
    use bsinterp::fol::{parse_formula, Language};

    let group = scratch("alpha.txt");
    std::fs::write(&group, "A y . ([inv(y)*x*y, x] = e)\n").unwrap();
    let o = bsinterp(&["translate", group.to_str().unwrap(), "--code", "delta", "-k", "2"]);
    assert!(o.status.success());
    parse_formula(stdout(&o).trim(), Language::Ring).expect("ring formula");

    let ring = scratch("sum.txt");
    std::fs::write(&ring, "x + 1 = y * y").unwrap();
    let o = bsinterp(&["translate", ring.to_str().unwrap(), "--code", "gamma", "-k", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let f = parse_formula(text.trim(), Language::Group).expect("group formula");
    let free = f.free_vars();
    assert!(free.len() > 2, "parameter slots are free: {free:?}");

    let bad = scratch("bad.txt");
    std::fs::write(&bad, "x = = y").unwrap();
    let o = bsinterp(&["translate", bad.to_str().unwrap(), "--code", "delta"]);
    assert_eq!(o.status.code(), Some(2));
}

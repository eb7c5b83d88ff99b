//! Runs the binary on the documents in `tests/data` and compares stdout and
//! the exit code with `tests/golden`. `UPDATE_GOLDEN=1` rewrites the files.

use std::path::{Path, PathBuf};
use std::process::Command;

const CASES: &[(&str, &[&str], i32)] = &[
    ("check_c3", &["check", "c3.idm"], 0),
    ("check_all", &["check", "z12.idm"], 0),
    ("check_bad_arity", &["check", "bad_arity.idm"], 2),
    (
        "check_not_distributive",
        &["check", "not_distributive.idm"],
        1,
    ),
    ("spec_c3", &["spec", "c3.idm"], 0),
    ("spec_c3_dot", &["spec", "--dot", "c3.idm"], 0),
    ("spec_b4_json", &["--json", "spec", "b4.idm"], 0),
    ("dual_sierpinski", &["dual", "sierpinski.idm"], 0),
    (
        "dual_sierpinski_dot",
        &["dual", "--dot", "sierpinski.idm"],
        0,
    ),
    ("dual_b4", &["dual", "b4.idm"], 0),
    ("soberify_sierpinski", &["soberify", "sierpinski.idm"], 0),
    ("localize_c3_at_m", &["localize", "c3.idm", "--at", "m"], 0),
    (
        "localize_b4_prime_a",
        &["localize", "b4.idm", "--prime", "a"],
        0,
    ),
    (
        "localize_b4_sigma",
        &["localize", "b4.idm", "--sigma", "a,b"],
        0,
    ),
    ("radical_c3", &["radical", "c3.idm", "--of", "m"], 0),
    ("quotient_b4", &["quotient", "b4.idm", "--pairs", "a=0"], 0),
    (
        "glue_b4",
        &[
            "glue", "b4.idm", "--over", "1", "--part", "a:a", "--part", "b:0",
        ],
        0,
    ),
    (
        "glue_c3_incompatible",
        &[
            "glue", "c3.idm", "--over", "1", "--part", "m:0", "--part", "1:1",
        ],
        1,
    ),
    ("tensor_c2_c3", &["tensor", "modules.idm", "C2", "C3"], 0),
    ("scheme_z12", &["scheme", "z12.idm"], 0),
    (
        "scheme_truncated",
        &["scheme", "truncated.idm", "--sections"],
        0,
    ),
    (
        "scheme_c3_json",
        &["--json", "scheme", "c3.idm", "--type", "semiring"],
        0,
    ),
    (
        "scheme_truncated_verify",
        &["scheme", "truncated.idm", "--verify"],
        0,
    ),
    (
        "scheme_type_mismatch",
        &["scheme", "c3.idm", "--type", "ring"],
        2,
    ),
    ("enumerate_posets_4", &["enumerate", "posets", "4"], 0),
    (
        "enumerate_idealic_3",
        &["enumerate", "semirings", "3", "--idealic", "--emit"],
        0,
    ),
    ("enumerate_too_big", &["enumerate", "posets", "6"], 2),
    ("unknown_suite", &["verify", "nope"], 2),
    (
        "guard_exceeded",
        &[
            "--max-tensor-pairs",
            "4",
            "tensor",
            "modules.idm",
            "C2",
            "C3",
        ],
        2,
    ),
];

fn dir(sub: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join(sub)
}

fn run(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_idemspec"))
        .args(args)
        .current_dir(dir("data"))
        .env_remove("IDEMSPEC_MAX_CARRIER")
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf-8 output"),
        out.status.code().expect("exit code"),
    )
}

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for &(name, args, code) in CASES {
        let (stdout, status) = run(args);
        if status != code {
            failures.push(format!("{name}: exit {status}, expected {code}"));
        }
        let path = dir("golden").join(format!("{name}.out"));
        if update {
            std::fs::write(&path, &stdout).unwrap();
            continue;
        }
        let expected =
            std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        if stdout != expected {
            failures.push(format!(
                "{name}: output differs\n--- expected\n{expected}--- got\n{stdout}"
            ));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn emitted_blocks_parse_back() {
    for args in [
        &["dual", "sierpinski.idm"][..],
        &["soberify", "sierpinski.idm"],
        &["localize", "c3.idm", "--at", "m"],
        &["tensor", "modules.idm", "C2", "C3"],
        &["enumerate", "posets", "3", "--emit"],
    ] {
        let (text, code) = run(args);
        assert_eq!(code, 0);
        let doc = idemspec::text::parse(&text).unwrap();
        let blocks: String = text
            .lines()
            .filter(|l| !l.starts_with('#'))
            .map(|l| format!("{l}\n"))
            .collect();
        assert_eq!(idemspec::text::emit(&doc), blocks, "{args:?}");
    }
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_idemspec"))
        .args(["radical", "-", "--of", "m"])
        .current_dir(dir("data"))
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write as _;
    let text = std::fs::read_to_string(dir("data").join("c3.idm")).unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(text.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "m\n");
}

#[test]
fn env_var_sets_the_guards() {
    let out = Command::new(env!("CARGO_BIN_EXE_idemspec"))
        .args(["tensor", "modules.idm", "C2", "C3"])
        .current_dir(dir("data"))
        .env("IDEMSPEC_MAX_CARRIER", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("limit is 2"), "{err}");
}

#[test]
fn verify_suites_pass_on_the_corpus() {
    for suite in [
        "duality",
        "adjunction",
        "localization-oracle",
        "sheaf",
        "patching",
        "tensor",
    ] {
        let (out, code) = run(&["verify", suite, "--bound", "3"]);
        assert_eq!(code, 0, "{suite}: {out}");
        let last = out.lines().last().unwrap();
        assert!(
            last.starts_with(&format!("{suite}: ")) && last.contains(" 0 failed"),
            "{last}"
        );
    }
    // a document narrows the suite to its blocks
    let (out, code) = run(&["verify", "localization-oracle", "c3.idm"]);
    assert_eq!(
        (code, out.lines().next().unwrap()),
        (0, "PASS localization C3")
    );
}

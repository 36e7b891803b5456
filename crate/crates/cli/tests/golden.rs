//! Runs every `golden/*.args` case twice and compares stdout, stderr and the
//! exit code with `golden/*.out`. Set `HOPF_BLESS=1` to rewrite expectations.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use hopf_core::combinatorial::graphs::GraphClass;
use hopf_core::combinatorial::trees::Forest;

fn cases() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut out: Vec<PathBuf> = fs::read_dir(&dir)
        .expect("golden directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "args"))
        .collect();
    out.sort();
    out
}

fn args_of(case: &Path) -> Vec<String> {
    fs::read_to_string(case).expect("args file").lines().map(str::to_string).collect()
}

fn run(args: &[String]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_hopf")).args(args).output().expect("binary runs");
    format!(
        "{}--- stderr\n{}--- exit {}\n",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr),
        out.status.code().unwrap_or(-1)
    )
}

#[test]
fn corpus_is_large_enough() {
    assert!(cases().len() >= 20);
}

#[test]
fn outputs_match_and_are_deterministic() {
    let bless = std::env::var_os("HOPF_BLESS").is_some();
    let mut mismatched = Vec::new();
    for case in cases() {
        let args = args_of(&case);
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first, second, "two runs differ for {}", case.display());
        let expected_path = case.with_extension("out");
        if bless {
            fs::write(&expected_path, &first).expect("write golden");
            continue;
        }
        let expected = fs::read_to_string(&expected_path).unwrap_or_default();
        if expected != first {
            mismatched.push(format!("{}:\n{first}", case.display()));
        }
    }
    assert!(mismatched.is_empty(), "golden mismatches:\n{}", mismatched.join("\n"));
}

#[test]
fn literals_in_the_corpus_round_trip() {
    for case in cases() {
        let args = args_of(&case);
        for pair in args.windows(2) {
            match pair[0].as_str() {
                "--tree" => {
                    if let Ok(f) = Forest::parse(&pair[1]) {
                        assert_eq!(f.to_string(), pair[1]);
                    }
                }
                "--graph" | "--key" if pair[1].starts_with('[') => {
                    let c = GraphClass::parse(&pair[1]).expect("graph literal");
                    assert_eq!(c.to_string(), pair[1]);
                }
                _ => {}
            }
        }
    }
}

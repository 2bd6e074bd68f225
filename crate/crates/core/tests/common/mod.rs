//! CLI golden cases shared by the `cli` and `acceptance` test targets.
//!
//! Each case runs the binary from `tests/fixtures` and compares exit code,
//! standard output and standard error byte-for-byte with
//! `tests/golden/<name>.out` and `tests/golden/<name>.err`. Set
//! `ASSOCARRAY_BLESS=1` to rewrite the golden files from the current binary.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub code: i32,
}

const fn case(name: &'static str, args: &'static [&'static str], code: i32) -> Case {
    Case { name, args, code }
}

pub const CASES: &[Case] = &[
    case(
        "adjacency_path",
        &["adjacency", "--algebra", "natural", "--input", "path.tsv"],
        0,
    ),
    case(
        "adjacency_path_full",
        &[
            "adjacency",
            "--algebra",
            "natural",
            "--input",
            "path.tsv",
            "--force-full-matmul",
        ],
        0,
    ),
    case(
        "adjacency_weighted",
        &[
            "adjacency",
            "--algebra",
            "natural",
            "--input",
            "weighted.tsv",
        ],
        0,
    ),
    case(
        "adjacency_inverse_pair",
        &[
            "adjacency",
            "--algebra",
            "integer-ring",
            "--input",
            "inverse_pair.tsv",
        ],
        0,
    ),
    case(
        "adjacency_missing",
        &[
            "adjacency",
            "--algebra",
            "natural",
            "--input",
            "missing.tsv",
        ],
        2,
    ),
    case(
        "adjacency_non_member",
        &[
            "adjacency",
            "--algebra",
            "natural",
            "--input",
            "inverse_pair.tsv",
        ],
        2,
    ),
    case(
        "adjacency_zero_weight",
        &[
            "adjacency",
            "--algebra",
            "natural",
            "--input",
            "zero_weight.tsv",
        ],
        2,
    ),
    case(
        "reverse_path",
        &[
            "reverse-adjacency",
            "--algebra",
            "natural",
            "--input",
            "path.tsv",
        ],
        0,
    ),
    case(
        "reverse_weighted",
        &[
            "reverse-adjacency",
            "--algebra",
            "natural",
            "--input",
            "weighted.tsv",
        ],
        0,
    ),
    case(
        "reverse_empty",
        &[
            "reverse-adjacency",
            "--algebra",
            "natural",
            "--input",
            "empty.tsv",
        ],
        0,
    ),
    case(
        "reverse_symmetric",
        &[
            "reverse-adjacency",
            "--algebra",
            "natural",
            "--input",
            "symmetric.tsv",
        ],
        0,
    ),
    case(
        "adjacency_symmetric",
        &[
            "adjacency",
            "--algebra",
            "natural",
            "--input",
            "symmetric.tsv",
        ],
        0,
    ),
    case("validate_natural", &["validate", "--algebra", "natural"], 0),
    case(
        "validate_powerset",
        &["validate", "--algebra", "powerset", "--universe", "x,y"],
        1,
    ),
    case(
        "validate_chain",
        &["validate", "--algebra", "max_min_chain", "--levels", "4"],
        0,
    ),
    case(
        "validate_boolean_file",
        &["validate", "--algebra", "boolean.alg"],
        0,
    ),
    case(
        "validate_leaky_file",
        &["validate", "--algebra", "leaky.alg"],
        1,
    ),
    case(
        "validate_ragged_file",
        &["validate", "--algebra", "ragged.alg"],
        2,
    ),
    case(
        "validate_unknown_flag",
        &["validate", "--algebra", "natural", "--frobnicate"],
        2,
    ),
    case(
        "witness_integer_ring",
        &["witness", "--algebra", "integer-ring", "--criterion", "1"],
        0,
    ),
    case(
        "witness_powerset",
        &[
            "witness",
            "--algebra",
            "powerset",
            "--universe",
            "x,y",
            "--criterion",
            "2",
        ],
        0,
    ),
    case(
        "witness_leaky",
        &["witness", "--algebra", "leaky.alg", "--criterion", "3"],
        0,
    ),
    case(
        "witness_natural",
        &["witness", "--algebra", "natural", "--criterion", "1"],
        1,
    ),
    case(
        "doc_adjacency",
        &["doc-adjacency", "--input", "docs.tsv"],
        0,
    ),
    case(
        "doc_adjacency_inconsistent",
        &["doc-adjacency", "--input", "docs_inconsistent.tsv"],
        1,
    ),
    case(
        "doc_adjacency_empty",
        &["doc-adjacency", "--input", "empty.tsv"],
        0,
    ),
];

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn golden() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_assocarray"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .expect("run assocarray");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

/// Runs one case against its golden files.
pub fn check_case(case: &Case) -> Result<(), String> {
    let (code, stdout, stderr) = run_cli(case.args);
    let out_path = golden().join(format!("{}.out", case.name));
    let err_path = golden().join(format!("{}.err", case.name));
    if std::env::var_os("ASSOCARRAY_BLESS").is_some() {
        std::fs::write(&out_path, &stdout).unwrap();
        std::fs::write(&err_path, &stderr).unwrap();
    }
    let read =
        |p: &PathBuf| std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()));
    let mut problems = Vec::new();
    if code != case.code {
        problems.push(format!("exit code {code}, expected {}", case.code));
    }
    if stdout != read(&out_path)? {
        problems.push(format!("stdout differs:\n{stdout}"));
    }
    if stderr != read(&err_path)? {
        problems.push(format!("stderr differs:\n{stderr}"));
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(format!("{}: {}", case.name, problems.join("; ")))
    }
}

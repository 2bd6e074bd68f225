mod common;

use assocarray::algebra::{make_builtin, BuiltinParams};
use assocarray::graph::Graph;
use assocarray::io;
use common::{check_case, fixtures, run_cli, CASES};

#[test]
fn golden_cases() {
    let failures: Vec<String> = CASES.iter().filter_map(|c| check_case(c).err()).collect();
    assert!(failures.is_empty(), "{}", failures.join("\n\n"));
}

#[test]
fn adjacency_output_matches_library_pipeline() {
    let alg = make_builtin("natural", &BuiltinParams::default()).unwrap();
    for file in ["path.tsv", "weighted.tsv", "symmetric.tsv", "empty.tsv"] {
        let text = std::fs::read_to_string(fixtures().join(file)).unwrap();
        let g: Graph = io::parse_edge_list(&text, &alg).unwrap();
        let pair = g.incidence_arrays(&alg).unwrap();
        let forward = io::serialize_triples(&pair.adjacency(&alg));
        let reverse = io::serialize_triples(&pair.reverse_adjacency(&alg));
        let input = fixtures().join(file);
        let input = input.to_str().unwrap();
        assert_eq!(
            run_cli(&["adjacency", "--algebra", "natural", "--input", input]).1,
            forward
        );
        assert_eq!(
            run_cli(&[
                "reverse-adjacency",
                "--algebra",
                "natural",
                "--input",
                input
            ])
            .1,
            reverse
        );
    }
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("adj.tsv");
    let (code, stdout, _) = run_cli(&[
        "adjacency",
        "--algebra",
        "natural",
        "--input",
        "path.tsv",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "");
    assert_eq!(std::fs::read_to_string(out).unwrap(), "a\tb\t1\nb\tc\t1\n");
}

#[test]
fn force_full_matmul_never_changes_certified_output() {
    for (alg, extra) in [
        ("natural", &[][..]),
        ("max_min_chain", &["--levels", "3"][..]),
        ("boolean.alg", &[][..]),
    ] {
        for file in ["path.tsv", "weighted.tsv", "symmetric.tsv"] {
            if alg != "natural" && file == "weighted.tsv" {
                continue;
            }
            let mut args = vec!["adjacency", "--algebra", alg, "--input", file];
            args.extend(extra);
            let fast = run_cli(&args);
            args.push("--force-full-matmul");
            assert_eq!(run_cli(&args), fast, "{alg} {file}");
        }
    }
}

#[test]
fn seed_flag_is_accepted() {
    let (code, out, _) = run_cli(&["validate", "--algebra", "integer_ring", "--seed", "17"]);
    assert_eq!(code, 1);
    assert!(out.contains("crit1\tfail\t1\t-1\n"));
}

#[test]
fn canonical_fixtures_round_trip() {
    let read = |name: &str| std::fs::read_to_string(fixtures().join(name)).unwrap();
    for name in ["boolean.alg", "leaky.alg"] {
        let text = read(name);
        assert_eq!(
            io::serialize_finite_algebra(&io::parse_finite_algebra(&text).unwrap()),
            text
        );
    }
    let z = make_builtin("integer_ring", &BuiltinParams::default()).unwrap();
    let text = read("inverse_pair.tsv");
    assert_eq!(
        io::serialize_edge_list(&io::parse_edge_list(&text, &z).unwrap()),
        text
    );
    let text = read("docs.tsv");
    assert_eq!(
        io::serialize_triples(&io::parse_document_triples(&text).unwrap().0),
        text
    );
}

use std::path::Path;

use arbodom::cli::main_with_args;
use arbodom::graph::{parse_graph, parse_roles};
use arbodom::mds_det::DominatingSetResult;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["arbodom"];
    full.extend_from_slice(args);
    let code = main_with_args(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_writes_expected_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let star = dir.path().join("star.txt");
    assert_eq!(
        run(&["gen", "--family", "star", "--delta", "4", "--out", p(&star)]).0,
        0
    );
    assert_eq!(
        parse_graph(&std::fs::read_to_string(&star).unwrap())
            .unwrap()
            .n(),
        5
    );

    let tree = dir.path().join("tree.txt");
    assert_eq!(
        run(&["gen", "--family", "tree", "--n", "1", "--out", p(&tree)]).0,
        0
    );
    assert_eq!(
        parse_graph(&std::fs::read_to_string(&tree).unwrap())
            .unwrap()
            .n(),
        1
    );

    let h = dir.path().join("h.txt");
    let (code, out, _) = run(&[
        "gen",
        "--family",
        "lower-bound",
        "--base",
        "K4",
        "--out",
        p(&h),
    ]);
    assert_eq!(code, 0, "{out}");
    let g = parse_graph(&std::fs::read_to_string(&h).unwrap()).unwrap();
    assert_eq!((g.n(), g.m()), (94, 144));
    let roles =
        parse_roles(&std::fs::read_to_string(dir.path().join("h.txt.roles")).unwrap()).unwrap();
    assert_eq!(roles.len(), 94);
}

#[test]
fn lb_construct_reports_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c5.txt");
    let (code, text, _) = run(&["lb-construct", "--base", "C5", "--out", p(&out)]);
    assert_eq!(code, 0);
    // Δ = 2: 4 * (5 + 5) + 5 nodes, 4 * (10 + 5) edges
    assert!(text.contains("45 nodes, 60 edges"), "{text}");
}

#[test]
fn empty_seed_range_gives_header_only() {
    let (code, out, _) = run(&[
        "run", "--family", "star", "--delta", "3", "--algo", "det", "--eps", "1/2", "--seeds", "0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 1);
    assert!(out.starts_with("seed,trial,algo,n,m,alpha,delta,ds_weight,opt_weight,ratio,bound"));
}

#[test]
fn deterministic_rows_are_within_bound_and_repeat() {
    let args = [
        "run",
        "--family",
        "arboricity",
        "--n",
        "14",
        "--alpha",
        "2",
        "--weight-max",
        "8",
        "--algo",
        "det",
        "--eps",
        "1/10",
        "--seeds",
        "6",
    ];
    let (code, first, _) = run(&args);
    assert_eq!(code, 0);
    let mut reader = csv::Reader::from_reader(first.as_bytes());
    let headers = reader.headers().unwrap().clone();
    let within = headers.iter().position(|h| h == "within_bound").unwrap();
    let rows: Vec<_> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| &r[within] == "true"));
    assert_eq!(run(&args).1, first);
}

#[test]
fn randomized_trials_produce_one_row_each() {
    let (code, out, _) = run(&[
        "run", "--family", "star", "--delta", "8", "--algo", "rand", "--t", "1", "--trials", "100",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 101);
}

#[test]
fn json_config_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("exp.json");
    let csv_path = dir.path().join("out.csv");
    let json = serde_json::json!({
        "generator": {"family": "arboricity", "n": 10, "alpha": 2, "weight_max": 8},
        "algorithm": {"name": "general", "k": 2},
        "seeds": {"start": 3, "end": 6},
        "trials": 2,
        "output": csv_path,
    });
    std::fs::write(&config, json.to_string()).unwrap();
    assert_eq!(run(&["run", "--config", p(&config)]).0, 0);
    let from_config = std::fs::read_to_string(&csv_path).unwrap();
    let (_, from_flags, _) = run(&[
        "run",
        "--family",
        "arboricity",
        "--n",
        "10",
        "--alpha",
        "2",
        "--weight-max",
        "8",
        "--algo",
        "general",
        "--k",
        "2",
        "--seed",
        "3",
        "--seeds",
        "3",
        "--trials",
        "2",
    ]);
    assert_eq!(from_config, from_flags);
    assert_eq!(from_config.lines().count(), 7);
}

#[test]
fn algorithm_errors_stay_in_their_rows() {
    // unit weights are required by the unweighted variant
    let (code, out, _) = run(&[
        "run",
        "--family",
        "arboricity",
        "--n",
        "8",
        "--alpha",
        "1",
        "--weight-max",
        "8",
        "--algo",
        "unweighted",
        "--eps",
        "1/2",
        "--seeds",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);
    assert!(out.contains("unit-weighted"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["run", "--algo", "nope"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["run", "--family", "star", "--algo", "det"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn verify_accepts_and_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    let result = dir.path().join("r.json");
    let gen = [
        "--family",
        "arboricity",
        "--n",
        "12",
        "--alpha",
        "2",
        "--weight-max",
        "8",
    ];
    let mut args = vec!["gen"];
    args.extend(gen);
    args.extend(["--seed", "4", "--out", p(&graph)]);
    assert_eq!(run(&args).0, 0);
    let mut args = vec!["run"];
    args.extend(gen);
    args.extend([
        "--seed",
        "4",
        "--algo",
        "det",
        "--eps",
        "1/2",
        "--result",
        p(&result),
    ]);
    assert_eq!(run(&args).0, 0);

    let (code, out, _) = run(&["verify", "--graph", p(&graph), "--result", p(&result)]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().all(|l| l.starts_with("PASS")));

    let original: DominatingSetResult =
        serde_json::from_str(&std::fs::read_to_string(&result).unwrap()).unwrap();

    let mut dropped = original.clone();
    let removed = dropped.members.remove(0);
    dropped.total_weight -= parse_graph(&std::fs::read_to_string(&graph).unwrap())
        .unwrap()
        .weight(removed);
    std::fs::write(&result, serde_json::to_string(&dropped).unwrap()).unwrap();
    let (code, out, _) = run(&["verify", "--graph", p(&graph), "--result", p(&result)]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL dominating"), "{out}");

    let mut inflated = original.clone();
    let cert = inflated.certificate.as_mut().unwrap();
    cert.entries[0].tau = 1000;
    std::fs::write(&result, serde_json::to_string(&inflated).unwrap()).unwrap();
    let (code, out, _) = run(&["verify", "--graph", p(&graph), "--result", p(&result)]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL packing_feasible"), "{out}");
}

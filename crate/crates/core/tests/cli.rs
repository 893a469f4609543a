//! End-to-end runs of the `hybridparam` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use hybridparam::decomp::{Forest, TreeDecomposition};
use hybridparam::graph::named::{cycle, path};
use hybridparam::io::{write_graph, write_td};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hybridparam")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn solve_cycle_with_both_engines() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("c5.gr");
    std::fs::write(&g, write_graph(&cycle(5))).unwrap();
    for engine in ["brute", "td-dp"] {
        let v = json(&["solve", "--problem", "vc", "--engine", engine, "--graph", p(&g)]);
        assert_eq!(v["value"], 3, "{v}");
    }
    let v = json(&["solve", "--problem", "bwds", "--engine", "td-dp", "--graph", p(&g), "--blue", "1,2"]);
    assert_eq!(v["value"], 3);
}

#[test]
fn gen_validate_approx_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path();
    for (spec, problem, param, flag) in [("vc-mod", "vc", "mod", "--modulator"), ("fvs-twh", "fvs", "twh", "--htd")] {
        let g = json(&["gen", "--spec", spec, "--seed", "3", "--out", p(out)]);
        let graph = g["graph"].as_str().unwrap().to_string();
        let side = g["structure"].as_str().unwrap().to_string();
        if param == "twh" {
            assert!(run(&["validate", "--graph", &graph, "--htd", &side]).status.success());
        }
        let a = json(&["approx", "--problem", problem, "--param", param, "--eps", "0.5", "--graph", &graph, flag, &side]);
        assert!(a["value"].as_u64().is_some(), "{a}");
    }
}

#[test]
fn broken_decomposition_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("p3.gr");
    let td = dir.path().join("p3.td");
    std::fs::write(&g, write_graph(&path(3))).unwrap();
    // edge 2-3 lies in no bag
    let broken = TreeDecomposition {
        tree: Forest::from_parents(vec![None, Some(0)]).unwrap(),
        bags: vec![[0, 1].into(), [2].into()],
    };
    std::fs::write(&td, write_td(&broken, 3)).unwrap();
    let out = run(&["validate", "--graph", p(&g), "--td", p(&td)]);
    assert!(!out.status.success());
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["solve", "--problem", "vc"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("k2.gr");
    let m = dir.path().join("k2.mod");
    std::fs::write(&g, write_graph(&path(2))).unwrap();
    std::fs::write(&m, "1\n").unwrap();
    let out = run(&["approx", "--problem", "sivc", "--param", "mod", "--eps", "0.5", "--graph", p(&g), "--modulator", p(&m)]);
    assert_eq!(out.status.code(), Some(2));
}

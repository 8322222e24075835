use kintree::io::read_instance;
use kintree::validate_solution;
use kintree_web::{generate_kit, kernelize_json, parse_json, solve_json};
use serde_json::Value;

const C6: &str = "p kit 6 6 2\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 1 6\nt 1\nt 4\n";

fn value(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn solve_returns_a_checkable_witness() {
    let v = value(&solve_json(C6, "auto").unwrap());
    assert_eq!(v["answer"], "YES");
    let w: Vec<usize> = serde_json::from_value(v["witness"].clone()).unwrap();
    let inst = read_instance(C6).unwrap();
    assert!(validate_solution(&inst.graph, inst.terminals(), &w).unwrap());
    for m in ["treewidth", "cluster", "cocluster", "oracle"] {
        assert_eq!(value(&solve_json(C6, m).unwrap())["answer"], "YES", "{m}");
    }
    assert!(solve_json(C6, "nope").is_err());
    assert!(solve_json("garbage", "auto").is_err());
}

#[test]
fn parse_and_kernelize() {
    let v = value(&parse_json(C6).unwrap());
    assert_eq!(v["n"], 6);
    assert_eq!(v["edges"].as_array().unwrap().len(), 6);
    assert_eq!(v["terminals"], serde_json::json!([0, 3]));
    let k = value(&kernelize_json(C6).unwrap());
    assert_eq!(k["q"], 1);
    let out = read_instance(k["kit"].as_str().unwrap()).unwrap();
    assert!(out.graph.n() <= 16);
}

#[test]
fn generators_emit_kit_text() {
    let dp = read_instance(&generate_kit("dp", "k4").unwrap()).unwrap();
    assert_eq!(dp.graph.n(), 28);
    read_instance(&generate_kit("orcomp", "k33, prism").unwrap()).unwrap();
    assert!(generate_kit("dp", "k5").is_err());
    assert!(generate_kit("xyz", "k4").is_err());
}

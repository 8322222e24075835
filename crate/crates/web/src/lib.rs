//! wasm-bindgen bindings behind the demo page in `www/`. Everything speaks
//! `.kit` text in and JSON text out; vertex ids in JSON are 0-based.

use kintree::generators::{cubic, gen_dp_graph, gen_or_composition, gen_rep_graph};
use kintree::io::{read_instance, write_instance};
use kintree::kernel::{kernelize, KernelOptions};
use kintree::{solve, Graph, Instance, Method, SolveOptions};
use serde_json::json;
use wasm_bindgen::prelude::*;

#[derive(Debug, thiserror::Error)]
pub enum DemoError {
    #[error(transparent)]
    Kit(#[from] kintree::error::Error),
    #[error("unknown cubic graph {0:?}")]
    UnknownHost(String),
    #[error("unknown generator {0:?}")]
    UnknownKind(String),
    #[error("{0}")]
    Method(String),
}

type Result<T> = std::result::Result<T, DemoError>;

fn shape(inst: &Instance) -> serde_json::Value {
    json!({
        "n": inst.graph.n(),
        "edges": inst.graph.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
        "terminals": inst.terminals(),
    })
}

/// `{n, edges, terminals}` for drawing.
pub fn parse_json(kit: &str) -> Result<String> {
    Ok(shape(&read_instance(kit)?).to_string())
}

/// `{answer, method, witness, q_fes, width, modulator_size}`.
pub fn solve_json(kit: &str, method: &str) -> Result<String> {
    let inst = read_instance(kit)?;
    let method: Method = method
        .parse()
        .map_err(|e| DemoError::Method(format!("{e}")))?;
    let opts = SolveOptions {
        method,
        witness: true,
        ..SolveOptions::default()
    };
    let r = solve(&inst, &opts)?;
    Ok(json!({
        "answer": if r.outcome.answer.is_yes() { "YES" } else { "NO" },
        "method": r.method.to_string(),
        "witness": r.outcome.witness,
        "q_fes": r.q_fes,
        "width": r.width,
        "modulator_size": r.modulator_size,
    })
    .to_string())
}

/// `{kit, graph, log, q, swaps, bound}` where `bound` is `[vertices, edges]`.
pub fn kernelize_json(kit: &str) -> Result<String> {
    let t = kernelize(&read_instance(kit)?, KernelOptions::default())?;
    let (nb, mb) = t.bound();
    Ok(json!({
        "kit": write_instance(&t.instance),
        "graph": shape(&t.instance),
        "log": t.log.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "q": t.q,
        "swaps": t.swaps,
        "bound": [nb, mb],
    })
    .to_string())
}

/// `kind` is `dp`, `rep` or `orcomp`; `hosts` a comma separated list of
/// named cubic graphs. Returns `.kit` text.
pub fn generate_kit(kind: &str, hosts: &str) -> Result<String> {
    let hosts: Vec<Graph> = hosts
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| cubic(s).ok_or_else(|| DemoError::UnknownHost(s.to_string())))
        .collect::<Result<_>>()?;
    let first = || {
        hosts
            .first()
            .ok_or_else(|| DemoError::UnknownHost(String::new()))
    };
    let out = match kind {
        "dp" => gen_dp_graph(first()?)?,
        "rep" => gen_rep_graph(first()?)?,
        "orcomp" => gen_or_composition(&hosts)?,
        other => return Err(DemoError::UnknownKind(other.to_string())),
    };
    Ok(write_instance(&out.instance))
}

fn js(e: DemoError) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub fn parse(kit: &str) -> std::result::Result<String, JsError> {
    parse_json(kit).map_err(js)
}

#[wasm_bindgen(js_name = solve)]
pub fn solve_js(kit: &str, method: &str) -> std::result::Result<String, JsError> {
    solve_json(kit, method).map_err(js)
}

#[wasm_bindgen(js_name = kernelize)]
pub fn kernelize_js(kit: &str) -> std::result::Result<String, JsError> {
    kernelize_json(kit).map_err(js)
}

#[wasm_bindgen]
pub fn generate(kind: &str, hosts: &str) -> std::result::Result<String, JsError> {
    generate_kit(kind, hosts).map_err(js)
}

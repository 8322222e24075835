//! One entry point over all solvers.

use std::fmt;
use std::str::FromStr;

use crate::cluster::{solve_kit_cluster, solve_kit_cocluster, ClusterOptions};
use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph, Instance, SolveOutcome};
use crate::oracle::{solve_oracle, DEFAULT_MAX_N};
use crate::structure::{
    build_tree_decomposition, make_nice, smallest_cluster_modulator, smallest_cocluster_modulator,
    validate_td, TreeDecomposition,
};
use crate::tw::{solve_kit_tw, solve_kit_tw_witness, DpOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Auto,
    Oracle,
    Treewidth,
    Cluster,
    Cocluster,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Auto => "auto",
            Method::Oracle => "oracle",
            Method::Treewidth => "treewidth",
            Method::Cluster => "cluster",
            Method::Cocluster => "cocluster",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => Method::Auto,
            "oracle" => Method::Oracle,
            "treewidth" | "tw" => Method::Treewidth,
            "cluster" => Method::Cluster,
            "cocluster" => Method::Cocluster,
            _ => return Err(Error::input(format!("unknown algorithm {s:?}"))),
        })
    }
}

/// Thresholds for [`Method::Auto`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AutoPolicy {
    /// Use the exhaustive solver up to this many vertices.
    pub oracle_max_n: usize,
    /// Largest cluster / co-cluster modulator worth searching for.
    pub modulator_max: usize,
}

impl Default for AutoPolicy {
    fn default() -> Self {
        AutoPolicy {
            oracle_max_n: 18,
            modulator_max: 12,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub method: Method,
    /// Decomposition for the treewidth solver; built by min-fill if absent.
    pub td: Option<TreeDecomposition>,
    /// Modulator for the cluster solvers; searched for if absent.
    pub modulator: Option<Vec<usize>>,
    pub witness: bool,
    pub threads: usize,
    pub reduce: bool,
    pub policy: AutoPolicy,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            method: Method::Auto,
            td: None,
            modulator: None,
            witness: false,
            threads: 1,
            reduce: true,
            policy: AutoPolicy::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub outcome: SolveOutcome,
    /// The solver that produced the answer (never `Auto`).
    pub method: Method,
    pub q_fes: usize,
    pub width: Option<usize>,
    pub modulator_size: Option<usize>,
}

/// `m - n + c`.
pub fn feedback_edge_number(g: &Graph) -> usize {
    g.m() + connected_components(g).len() - g.n()
}

pub fn solve(inst: &Instance, opts: &SolveOptions) -> Result<SolveReport> {
    let g = &inst.graph;
    let mut report = SolveReport {
        outcome: SolveOutcome::no(),
        method: opts.method,
        q_fes: feedback_edge_number(g),
        width: None,
        modulator_size: None,
    };
    let copts = ClusterOptions {
        reduce: opts.reduce,
        threads: opts.threads.max(1),
        ..ClusterOptions::default()
    };
    let search = |cluster: bool, max: usize| {
        if cluster {
            smallest_cluster_modulator(g, max)
        } else {
            smallest_cocluster_modulator(g, max)
        }
    };
    let mut modulator = opts.modulator.clone();
    if opts.method == Method::Auto {
        report.method = if g.n() <= opts.policy.oracle_max_n {
            Method::Oracle
        } else if let Some(u) = search(true, opts.policy.modulator_max) {
            modulator = Some(u);
            Method::Cluster
        } else if let Some(u) = search(false, opts.policy.modulator_max) {
            modulator = Some(u);
            Method::Cocluster
        } else {
            Method::Treewidth
        };
    }
    report.outcome = match report.method {
        Method::Auto => unreachable!("resolved above"),
        Method::Oracle => {
            let mut out = solve_oracle(inst, DEFAULT_MAX_N)?;
            if !opts.witness {
                out.witness = None;
            }
            out
        }
        Method::Treewidth => {
            let td = match &opts.td {
                Some(td) => {
                    if !validate_td(g, td) {
                        return Err(Error::input("invalid tree decomposition"));
                    }
                    td.clone()
                }
                None => build_tree_decomposition(g),
            };
            report.width = Some(td.width());
            let dp = DpOptions {
                reduce: opts.reduce,
            };
            if opts.witness {
                solve_kit_tw_witness(inst, &td, dp)?
            } else {
                let nice = make_nice(g, &td, inst.terminals()[0])?;
                solve_kit_tw(inst, &nice, dp)?
            }
        }
        Method::Cluster | Method::Cocluster => {
            let cluster = report.method == Method::Cluster;
            let u = match modulator {
                Some(u) => u,
                None => search(cluster, g.n()).expect("every vertex set is a modulator"),
            };
            report.modulator_size = Some(u.len());
            if cluster {
                solve_kit_cluster(inst, &u, copts, opts.witness)?
            } else {
                solve_kit_cocluster(inst, &u, copts, opts.witness)?
            }
        }
    };
    Ok(report)
}

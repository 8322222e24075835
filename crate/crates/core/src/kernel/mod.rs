//! Polynomial kernel in the feedback edge number.
//!
//! The pipeline drops terminal-free components, removes degree-one vertices,
//! picks a feedback edge set whose forest has as many leaves as the swap
//! rules can produce, then shortens the long induced paths that remain.

mod leaves;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use leaves::{maximize_leaves, FPairContext, FPath, Swap};

use crate::error::Result;
use crate::graph::{connected_components, Graph, Instance};

/// One logged rule application. Vertex ids are stable across the run: the
/// input's own ids, then fresh ids from `n` upwards for created vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleApplication {
    pub rule: u8,
    pub vertices: Vec<usize>,
}

impl fmt::Display for RuleApplication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}", self.rule)?;
        for v in &self.vertices {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct KernelOptions {
    /// Keep a copy of the instance after every change to the graph.
    pub snapshots: bool,
}

#[derive(Debug, Clone)]
pub struct KernelTrace {
    pub instance: Instance,
    pub log: Vec<RuleApplication>,
    /// Feedback edge number of the instance once terminal-free components
    /// are gone.
    pub q: usize,
    pub swaps: usize,
    pub snapshots: Vec<Instance>,
}

impl KernelTrace {
    /// `(vertices, edges)` the output is guaranteed to stay within.
    pub fn bound(&self) -> (usize, usize) {
        ((16 * self.q).max(1), 17 * self.q)
    }
}

/// Two isolated terminals.
pub fn canonical_no() -> Instance {
    Instance::new(Graph::new(2), vec![0, 1]).expect("two terminals")
}

/// A single terminal.
pub fn canonical_yes() -> Instance {
    Instance::new(Graph::new(1), vec![0]).expect("one terminal")
}

/// Mutable graph keyed by stable ids.
#[derive(Debug, Clone)]
struct WorkGraph {
    adj: BTreeMap<usize, BTreeSet<usize>>,
    terminals: BTreeSet<usize>,
    next_id: usize,
}

impl WorkGraph {
    fn new(inst: &Instance, keep: &[usize]) -> Self {
        let g = &inst.graph;
        let mut adj = BTreeMap::new();
        for &v in keep {
            adj.insert(v, g.neighbors(v).iter().copied().collect());
        }
        let terminals = keep
            .iter()
            .copied()
            .filter(|&v| inst.is_terminal(v))
            .collect();
        WorkGraph {
            adj,
            terminals,
            next_id: g.n(),
        }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[&v].len()
    }

    fn remove(&mut self, v: usize) {
        if let Some(ns) = self.adj.remove(&v) {
            for u in ns {
                self.adj.get_mut(&u).expect("symmetric").remove(&v);
            }
        }
        self.terminals.remove(&v);
    }

    fn fresh(&mut self, terminal: bool) -> usize {
        let v = self.next_id;
        self.next_id += 1;
        self.adj.insert(v, BTreeSet::new());
        if terminal {
            self.terminals.insert(v);
        }
        v
    }

    fn link(&mut self, u: usize, v: usize) {
        self.adj.get_mut(&u).expect("live").insert(v);
        self.adj.get_mut(&v).expect("live").insert(u);
    }

    /// The graph on live ids in increasing order, and that order.
    fn compact(&self) -> (Instance, Vec<usize>) {
        let ids: Vec<usize> = self.adj.keys().copied().collect();
        let pos = |v: usize| ids.binary_search(&v).expect("live");
        let mut g = Graph::new(ids.len());
        for (&u, ns) in &self.adj {
            for &v in ns {
                if u < v {
                    g.add_edge(pos(u), pos(v)).expect("fresh edge");
                }
            }
        }
        let t = self.terminals.iter().map(|&v| pos(v)).collect();
        (Instance::new(g, t).expect("terminals survive"), ids)
    }
}

struct Run {
    opts: KernelOptions,
    log: Vec<RuleApplication>,
    snapshots: Vec<Instance>,
}

impl Run {
    fn record(&mut self, rule: u8, vertices: Vec<usize>, w: &WorkGraph) {
        self.log.push(RuleApplication { rule, vertices });
        self.snap(w);
    }

    fn snap(&mut self, w: &WorkGraph) {
        if self.opts.snapshots {
            self.snapshots.push(w.compact().0);
        }
    }
}

/// Deletes degree-one vertices, smallest id first. A deleted terminal makes
/// its neighbour a terminal.
fn rule1(w: &mut WorkGraph, run: &mut Run) {
    let mut queue: BTreeSet<usize> = w
        .adj
        .keys()
        .copied()
        .filter(|&v| w.degree(v) == 1)
        .collect();
    while let Some(v) = queue.pop_first() {
        if w.len() <= 1 || !w.adj.contains_key(&v) || w.degree(v) != 1 {
            continue;
        }
        let u = *w.adj[&v].first().expect("degree one");
        if w.terminals.contains(&v) {
            w.terminals.insert(u);
        }
        w.remove(v);
        if w.degree(u) == 1 {
            queue.insert(u);
        }
        run.record(1, vec![v, u], w);
    }
}

/// Rule 6 along `inner` (from the `u` end), then rule 7 if at least four
/// inner vertices remain.
fn compress(w: &mut WorkGraph, u: usize, f: usize, inner: &[usize], run: &mut Run) {
    let mut inner = inner.to_vec();
    let mut i = 0;
    while i + 1 < inner.len() {
        let (a, b) = (inner[i], inner[i + 1]);
        let ta = w.terminals.contains(&a);
        if ta != w.terminals.contains(&b) {
            i += 1;
            continue;
        }
        let prev = if i == 0 { u } else { inner[i - 1] };
        let next = if i + 2 < inner.len() { inner[i + 2] } else { f };
        w.remove(a);
        w.remove(b);
        let star = w.fresh(ta);
        w.link(prev, star);
        w.link(star, next);
        inner.splice(i..i + 2, [star]);
        run.record(6, vec![a, b, star], w);
    }
    if inner.len() >= 4 {
        let any = inner.iter().any(|v| w.terminals.contains(v));
        for &v in &inner {
            w.remove(v);
        }
        let a = w.fresh(false);
        let t = w.fresh(any);
        let b = w.fresh(false);
        w.link(u, a);
        w.link(a, t);
        w.link(t, b);
        w.link(b, f);
        run.record(7, vec![u, f, a, t, b], w);
    }
}

/// Runs the whole pipeline.
pub fn kernelize(inst: &Instance, opts: KernelOptions) -> Result<KernelTrace> {
    let mut run = Run {
        opts,
        log: Vec::new(),
        snapshots: Vec::new(),
    };
    if opts.snapshots {
        run.snapshots.push(inst.clone());
    }
    let g = &inst.graph;
    let comps: Vec<Vec<usize>> = connected_components(g)
        .into_iter()
        .filter(|c| c.iter().any(|&v| inst.is_terminal(v)))
        .collect();
    let finish = |run: Run, instance: Instance, q: usize, swaps: usize| {
        let mut snapshots = run.snapshots;
        if opts.snapshots && snapshots.last() != Some(&instance) {
            snapshots.push(instance.clone());
        }
        Ok(KernelTrace {
            instance,
            log: run.log,
            q,
            swaps,
            snapshots,
        })
    };
    if comps.len() > 1 {
        let mut keep: Vec<usize> = comps.concat();
        keep.sort_unstable();
        let q = g.induced_edge_count(&keep) + comps.len() - keep.len();
        return finish(run, canonical_no(), q, 0);
    }
    let mut keep = comps.into_iter().next().expect("at least one terminal");
    keep.sort_unstable();
    let q = g.induced_edge_count(&keep) + 1 - keep.len();
    let mut w = WorkGraph::new(inst, &keep);
    run.snap(&w);

    rule1(&mut w, &mut run);
    if w.len() <= 1 {
        return finish(run, canonical_yes(), q, 0);
    }

    let (compact, ids) = w.compact();
    let (ctx, swaps) = maximize_leaves(FPairContext::new(compact.graph));
    for s in &swaps {
        run.log.push(RuleApplication {
            rule: s.rule,
            vertices: vec![ids[s.out.0], ids[s.out.1], ids[s.into.0], ids[s.into.1]],
        });
    }

    let mut targets = Vec::new();
    for p in ctx.paths() {
        let vs: Vec<usize> = p.vertices.iter().map(|&v| ids[v]).collect();
        let (i, j) = if p.strict {
            (0, vs.len() - 1)
        } else if let Some(win) = p.strict_window {
            win
        } else {
            continue;
        };
        if j > i + 1 {
            targets.push((vs[i], vs[j], vs[i + 1..j].to_vec()));
        }
    }
    for (u, f, inner) in targets {
        compress(&mut w, u, f, &inner, &mut run);
    }
    let instance = w.compact().0;
    finish(run, instance, q, swaps.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn tree_collapses_to_yes() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let inst = Instance::new(g, vec![0, 4]).unwrap();
        let t = kernelize(&inst, KernelOptions::default()).unwrap();
        assert_eq!(t.instance, canonical_yes());
        assert!(t.log.iter().all(|r| r.rule == 1));
    }

    #[test]
    fn split_terminals_give_no() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let inst = Instance::new(g, vec![0, 3]).unwrap();
        let t = kernelize(&inst, KernelOptions::default()).unwrap();
        assert_eq!(t.instance, canonical_no());
    }

    #[test]
    fn long_cycle_shrinks() {
        let inst = Instance::new(cycle(100), vec![10, 11]).unwrap();
        let t = kernelize(&inst, KernelOptions { snapshots: true }).unwrap();
        assert_eq!(t.q, 1);
        assert!(t.instance.graph.n() <= 16);
        assert!(t.instance.graph.m() <= 17);
        assert!(t.log.iter().any(|r| r.rule == 6));
        assert_eq!(t.snapshots.last(), Some(&t.instance));

        let inst = Instance::new(cycle(100), vec![10, 50]).unwrap();
        let t = kernelize(&inst, KernelOptions::default()).unwrap();
        assert!(t.log.iter().any(|r| r.rule == 7));
        assert_eq!(t.instance.graph.n(), 5);
        assert_eq!(t.instance.k(), 1);
    }

    #[test]
    fn log_lines() {
        let r = RuleApplication {
            rule: 6,
            vertices: vec![3, 4, 9],
        };
        assert_eq!(r.to_string(), "R6 3 4 9");
    }
}

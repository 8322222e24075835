use std::fmt;

use crate::graph::Graph;
use crate::structure::{feedback_edge_set, FeedbackEdgeSet, TreeClass};

/// A maximal path of `T(F)` whose inner vertices all have tree degree 2 and
/// whose ends do not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FPath {
    /// From the smaller end to the larger one.
    pub vertices: Vec<usize>,
    /// Every inner vertex also has degree 2 in `G`.
    pub strict: bool,
    /// Index range `(i, j)` into `vertices` of the longest sub-path whose
    /// inner vertices all have degree 2 in `G` (first one on ties), if it has
    /// any inner vertex.
    pub strict_window: Option<(usize, usize)>,
}

impl FPath {
    pub fn inner(&self) -> &[usize] {
        &self.vertices[1..self.vertices.len() - 1]
    }
}

/// A connected graph with a minimum feedback edge set and its forest.
#[derive(Debug, Clone)]
pub struct FPairContext {
    pub graph: Graph,
    pub fes: FeedbackEdgeSet,
}

/// One exchange of an F-edge for a tree edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Swap {
    pub rule: u8,
    pub out: (usize, usize),
    pub into: (usize, usize),
}

impl fmt::Display for Swap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "R{} {} {} {} {}",
            self.rule, self.out.0, self.out.1, self.into.0, self.into.1
        )
    }
}

impl FPairContext {
    pub fn new(graph: Graph) -> Self {
        let fes = feedback_edge_set(&graph);
        FPairContext { graph, fes }
    }

    fn is_d2(&self, v: usize) -> bool {
        self.fes.class(v) == TreeClass::D2
    }

    fn is_leaf(&self, v: usize) -> bool {
        self.fes.class(v) == TreeClass::Leaf
    }

    /// All maximal tree paths between vertices outside `D2`.
    pub fn paths(&self) -> Vec<FPath> {
        let g = &self.graph;
        let mut out = Vec::new();
        for a in 0..g.n() {
            if self.is_d2(a) {
                continue;
            }
            for &first in self.fes.tree_neighbors(a) {
                let mut vertices = vec![a, first];
                let mut prev = a;
                let mut cur = first;
                while self.is_d2(cur) {
                    let next = *self
                        .fes
                        .tree_neighbors(cur)
                        .iter()
                        .find(|&&x| x != prev)
                        .expect("D2 vertices have two tree neighbours");
                    prev = cur;
                    cur = next;
                    vertices.push(cur);
                }
                if a > cur {
                    continue;
                }
                let deg2: Vec<bool> = vertices.iter().map(|&v| g.degree(v) == 2).collect();
                let last = vertices.len() - 1;
                let strict = deg2[1..last].iter().all(|&d| d);
                let mut best: Option<(usize, usize)> = None;
                let mut i = 1;
                while i < last {
                    if !deg2[i] {
                        i += 1;
                        continue;
                    }
                    let start = i;
                    while i < last && deg2[i] {
                        i += 1;
                    }
                    let window = (start - 1, i);
                    if best.is_none_or(|(s, e)| window.1 - window.0 > e - s) {
                        best = Some(window);
                    }
                }
                out.push(FPath {
                    vertices,
                    strict,
                    strict_window: best,
                });
            }
        }
        out
    }

    /// Inner vertices at distance at least 3 from both ends of their path
    /// that still have an F-edge.
    pub fn deep_degree_violations(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for p in self.paths() {
            let last = p.vertices.len() - 1;
            for i in 3..last.saturating_sub(2) {
                let w = p.vertices[i];
                if self.graph.degree(w) != self.fes.tree_degree(w) {
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn rule2(&self) -> Option<Swap> {
        for &(a, b) in self.fes.edges() {
            for (f, w1) in [(a, b), (b, a)] {
                if self.is_leaf(w1) {
                    continue;
                }
                let path = self.fes.tree_path(f, w1)?;
                let last = path.len() - 1;
                if last >= 2 && path[1..last].iter().all(|&x| self.is_d2(x)) {
                    return Some(Swap {
                        rule: 2,
                        out: (f, w1),
                        into: (f, path[1]),
                    });
                }
            }
        }
        None
    }

    fn rules345(&self) -> Option<Swap> {
        for &(a, b) in self.fes.edges() {
            for (x, y) in [(a, b), (b, a)] {
                let path = self.fes.tree_path(x, y)?;
                let last = path.len() - 1;
                if self.is_leaf(y) {
                    continue;
                }
                // rule 3: x in D2 and its tree neighbour towards y too
                if self.is_d2(x) && self.is_d2(path[1]) && path[1] != y {
                    return Some(Swap {
                        rule: 3,
                        out: (x, y),
                        into: (x, path[1]),
                    });
                }
                if !self.is_leaf(x) {
                    continue;
                }
                let z = path[1];
                // rule 4: leaf hanging from a D2 vertex
                if self.is_d2(z) {
                    return Some(Swap {
                        rule: 4,
                        out: (x, y),
                        into: (x, z),
                    });
                }
                // rule 5: leaf hanging from D*, two D2 vertices before y
                if self.fes.class(z) == TreeClass::DStar {
                    let u = (0..last).rev().find(|&i| !self.is_d2(path[i]))?;
                    if last - u >= 3 {
                        return Some(Swap {
                            rule: 5,
                            out: (x, y),
                            into: (path[u + 1], path[u + 2]),
                        });
                    }
                }
            }
        }
        None
    }

    /// The first applicable swap: the rule 2 scan, then rules 3, 4, 5 per
    /// F-edge in increasing order.
    pub fn next_swap(&self) -> Option<Swap> {
        self.rule2().or_else(|| self.rules345())
    }

    pub fn apply(&mut self, s: Swap) {
        self.fes = self
            .fes
            .swap(&self.graph, s.out, s.into)
            .expect("swaps exchange an F-edge for an edge on its cycle");
    }
}

/// Applies swaps until none matches. Every swap turns at least one more
/// vertex into a leaf of `T(F)`, so at most `2q` swaps happen.
pub fn maximize_leaves(mut ctx: FPairContext) -> (FPairContext, Vec<Swap>) {
    let mut done = Vec::new();
    while let Some(s) = ctx.next_swap() {
        let before = ctx.fes.leaf_count();
        ctx.apply(s);
        debug_assert!(ctx.fes.leaf_count() > before);
        done.push(s);
    }
    (ctx, done)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_is_a_fixpoint() {
        let edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let ctx = FPairContext::new(Graph::from_edges(6, &edges).unwrap());
        let (ctx, swaps) = maximize_leaves(ctx);
        assert!(swaps.is_empty());
        let paths = ctx.paths();
        assert_eq!(paths.len(), 1);
        assert!(paths[0].strict);
        assert_eq!(paths[0].inner().len(), 4);
    }

    #[test]
    fn chord_gets_moved() {
        // a 9-cycle with a chord from 0 into the middle of the long side
        let mut edges: Vec<_> = (0..9).map(|i| (i, (i + 1) % 9)).collect();
        edges.push((0, 5));
        let g = Graph::from_edges(9, &edges).unwrap();
        let q = g.m() - g.n() + 1;
        let ctx = FPairContext::new(g);
        let leaves = ctx.fes.leaf_count();
        let (ctx, swaps) = maximize_leaves(ctx);
        assert!(swaps.len() <= 2 * q);
        assert!(ctx.fes.leaf_count() >= leaves + swaps.len());
        assert!(ctx.deep_degree_violations().is_empty());
        assert_eq!(ctx.fes.len(), q);
    }
}

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Position of a vertex in the spanning forest `T(F) = G - F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeClass {
    Isolated,
    Leaf,
    /// Tree degree exactly 2.
    D2,
    /// Tree degree at least 3.
    DStar,
}

/// A feedback edge set `F` together with its spanning forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeedbackEdgeSet {
    edges: Vec<(usize, usize)>,
    tree_adj: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
}

fn norm((u, v): (usize, usize)) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Non-tree edges of a depth-first forest, rooted at vertex 0 and then at
/// the smallest unvisited vertex of each further component.
pub fn feedback_edge_set(g: &Graph) -> FeedbackEdgeSet {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut tree = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, i) = *top;
            if i == g.degree(v) {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let w = g.neighbors(v)[i];
            if !seen[w] {
                seen[w] = true;
                tree.push(norm((v, w)));
                stack.push((w, 0));
            }
        }
    }
    tree.sort_unstable();
    let f: Vec<(usize, usize)> = g
        .edges()
        .filter(|e| tree.binary_search(e).is_err())
        .collect();
    FeedbackEdgeSet::from_edges(g, f).expect("DFS forest is acyclic")
}

impl FeedbackEdgeSet {
    /// Builds the forest `G - F` for a given edge set; fails if `F` is not a
    /// set of edges of `g` or `G - F` still has a cycle.
    pub fn from_edges(g: &Graph, f: Vec<(usize, usize)>) -> Result<Self> {
        let n = g.n();
        let mut edges: Vec<(usize, usize)> = f.into_iter().map(norm).collect();
        edges.sort_unstable();
        edges.dedup();
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| !g.has_edge(u, v)) {
            return Err(Error::contract(format!("({u}, {v}) is not an edge")));
        }
        let mut tree_adj = vec![Vec::new(); n];
        for (u, v) in g.edges() {
            if edges.binary_search(&(u, v)).is_err() {
                tree_adj[u].push(v);
                tree_adj[v].push(u);
            }
        }
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        for root in 0..n {
            if depth[root] != usize::MAX {
                continue;
            }
            depth[root] = 0;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &w in &tree_adj[v] {
                    if Some(w) == parent[v] {
                        continue;
                    }
                    if depth[w] != usize::MAX {
                        return Err(Error::contract("G - F contains a cycle"));
                    }
                    depth[w] = depth[v] + 1;
                    parent[w] = Some(v);
                    stack.push(w);
                }
            }
        }
        Ok(FeedbackEdgeSet {
            edges,
            tree_adj,
            parent,
            depth,
        })
    }

    /// The edges of `F`, normalised to `u < v` and sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&norm((u, v))).is_ok()
    }

    pub fn tree_neighbors(&self, v: usize) -> &[usize] {
        &self.tree_adj[v]
    }

    pub fn tree_degree(&self, v: usize) -> usize {
        self.tree_adj[v].len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn class(&self, v: usize) -> TreeClass {
        match self.tree_degree(v) {
            0 => TreeClass::Isolated,
            1 => TreeClass::Leaf,
            2 => TreeClass::D2,
            _ => TreeClass::DStar,
        }
    }

    pub fn leaf_count(&self) -> usize {
        (0..self.tree_adj.len())
            .filter(|&v| self.tree_degree(v) == 1)
            .count()
    }

    /// Vertices of the forest path from `u` to `v`, both included; `None`
    /// when they lie in different trees.
    pub fn tree_path(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        let (mut a, mut b) = (u, v);
        let mut left = Vec::new();
        let mut right = Vec::new();
        while self.depth[a] > self.depth[b] {
            left.push(a);
            a = self.parent[a]?;
        }
        while self.depth[b] > self.depth[a] {
            right.push(b);
            b = self.parent[b]?;
        }
        while a != b {
            left.push(a);
            right.push(b);
            a = self.parent[a]?;
            b = self.parent[b]?;
        }
        left.push(a);
        left.extend(right.into_iter().rev());
        Some(left)
    }

    /// Exchanges the F-edge `out` for the tree edge `into`.
    pub fn swap(&self, g: &Graph, out: (usize, usize), into: (usize, usize)) -> Result<Self> {
        let out = norm(out);
        let into = norm(into);
        if !self.contains(out.0, out.1) {
            return Err(Error::contract("swapped-out edge is not in F"));
        }
        if self.contains(into.0, into.1) || !g.has_edge(into.0, into.1) {
            return Err(Error::contract("swapped-in edge is not a tree edge"));
        }
        let mut f: Vec<(usize, usize)> = self.edges.iter().copied().filter(|&e| e != out).collect();
        f.push(into);
        Self::from_edges(g, f)
    }
}

//! Simple undirected graphs, terminal instances and solution checking.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// A finite simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are kept sorted, so `has_edge` is a binary search and
/// iteration order is deterministic.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds the edge `uv`. Self-loops, parallel edges and out-of-range
    /// endpoints are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::input(format!(
                "edge ({u}, {v}) out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::input(format!("self-loop at vertex {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::input(format!("duplicate edge ({u}, {v})"))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.m += 1;
                Ok(())
            }
        }
    }

    /// Adds a fresh isolated vertex and returns its index.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// The subgraph induced by `keep`, relabelled so that `keep[i]` becomes
    /// vertex `i`. `keep` must be duplicate-free and in range.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            let mut nb: Vec<usize> = self.adj[v]
                .iter()
                .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                .collect();
            nb.sort_unstable();
            g.m += nb.iter().filter(|&&w| w > i).count();
            g.adj[i] = nb;
        }
        g
    }

    /// Number of edges with both endpoints in `set`.
    pub fn induced_edge_count(&self, set: &[usize]) -> usize {
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v] = true;
        }
        set.iter()
            .map(|&v| self.adj[v].iter().filter(|&&w| inside[w]).count())
            .sum::<usize>()
            / 2
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut g = Graph::new(n);
        for u in 0..n {
            let nb: Vec<usize> = (0..n)
                .filter(|&v| v != u && self.adj[u].binary_search(&v).is_err())
                .collect();
            g.m += nb.iter().filter(|&&v| v > u).count();
            g.adj[u] = nb;
        }
        g
    }

    /// Whether the vertices of `set` are pairwise adjacent.
    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    fn check_vertices(&self, set: &[usize], what: &str) -> Result<()> {
        match set.iter().find(|&&v| v >= self.n()) {
            Some(v) => Err(Error::input(format!(
                "{what} vertex {v} out of range for {} vertices",
                self.n()
            ))),
            None => Ok(()),
        }
    }
}

/// Connected components of `g`, each sorted, ordered by their minimum vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        let mut comp = Vec::new();
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// A graph together with a non-empty terminal set `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    terminals: Vec<usize>,
}

impl Instance {
    /// Terminals are sorted; duplicates are rejected, as is an empty set.
    pub fn new(graph: Graph, mut terminals: Vec<usize>) -> Result<Self> {
        if terminals.is_empty() {
            return Err(Error::input("terminal set must be non-empty"));
        }
        graph.check_vertices(&terminals, "terminal")?;
        terminals.sort_unstable();
        if let Some(w) = terminals.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::input(format!("duplicate terminal {}", w[0])));
        }
        Ok(Instance { graph, terminals })
    }

    pub fn terminals(&self) -> &[usize] {
        &self.terminals
    }

    pub fn is_terminal(&self, v: usize) -> bool {
        self.terminals.binary_search(&v).is_ok()
    }

    pub fn k(&self) -> usize {
        self.terminals.len()
    }

    /// The instance induced by `keep` (sorted, containing every terminal),
    /// relabelled like [`Graph::induced_subgraph`].
    pub fn induced(&self, keep: &[usize]) -> Result<Instance> {
        let terminals = self
            .terminals
            .iter()
            .map(|t| {
                keep.binary_search(t)
                    .map_err(|_| Error::contract(format!("terminal {t} not kept")))
            })
            .collect::<Result<Vec<_>>>()?;
        Instance::new(self.graph.induced_subgraph(keep), terminals)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Answer::Yes
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub answer: Answer,
    /// Sorted vertex set of an induced tree containing every terminal.
    pub witness: Option<Vec<usize>>,
}

impl SolveOutcome {
    pub fn no() -> Self {
        SolveOutcome {
            answer: Answer::No,
            witness: None,
        }
    }

    pub fn yes(witness: Option<Vec<usize>>) -> Self {
        SolveOutcome {
            answer: Answer::Yes,
            witness,
        }
    }
}

/// Whether `s` contains every terminal and induces a tree in `g`.
pub fn validate_solution(g: &Graph, terminals: &[usize], s: &[usize]) -> Result<bool> {
    g.check_vertices(terminals, "terminal")?;
    g.check_vertices(s, "solution")?;
    let mut inside = vec![false; g.n()];
    let mut size = 0;
    for &v in s {
        if !inside[v] {
            inside[v] = true;
            size += 1;
        }
    }
    if terminals.iter().any(|&t| !inside[t]) {
        return Ok(false);
    }
    if size == 0 {
        return Ok(false);
    }
    let edges: usize = (0..g.n())
        .filter(|&v| inside[v])
        .map(|v| g.neighbors(v).iter().filter(|&&w| inside[w]).count())
        .sum::<usize>()
        / 2;
    if edges != size - 1 {
        return Ok(false);
    }
    // connectivity of g[s]
    let start = s[0];
    let mut seen = vec![false; g.n()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if inside[w] && !seen[w] {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    Ok(reached == size)
}

/// Recovers a solution from any decision procedure by self-reduction.
///
/// `decide` receives an induced sub-instance together with the (sorted)
/// original vertex ids it keeps. Non-terminals are tried for permanent
/// deletion in increasing index order. A vertex that cannot be deleted stays
/// undeletable in every later subgraph, so a single pass reaches the fixpoint,
/// and in the fixpoint graph every solution is the whole vertex set.
pub fn extract_witness<D>(inst: &Instance, mut decide: D) -> Result<Vec<usize>>
where
    D: FnMut(&Instance, &[usize]) -> Result<bool>,
{
    let all: Vec<usize> = (0..inst.graph.n()).collect();
    if !decide(inst, &all)? {
        return Err(Error::contract(
            "witness extraction requires a YES instance",
        ));
    }
    let mut keep = all;
    for v in 0..inst.graph.n() {
        if inst.is_terminal(v) {
            continue;
        }
        let trial: Vec<usize> = keep.iter().copied().filter(|&w| w != v).collect();
        let sub = inst.induced(&trial)?;
        if decide(&sub, &trial)? {
            keep = trial;
        }
    }
    if !validate_solution(&inst.graph, inst.terminals(), &keep)? {
        return Err(Error::contract(
            "decision procedure is inconsistent on induced subgraphs",
        ));
    }
    Ok(keep)
}

//! Instance generators built from the hardness constructions.
//!
//! Every generator returns the instance together with a role per vertex so
//! tests (and the CLI sidecar) can refer to gadget parts by name.

mod gadgets;

use std::fmt;

pub use gadgets::{
    construct_hampath_witness, gen_dp_graph, gen_or_composition, gen_rep_graph, label_edges,
    lift_rep_witness, rep_emerge, EdgeKey, EdgeLabels, HamTarget, Label,
};

use crate::error::{Error, Result};
use crate::graph::{Graph, Instance};

/// What a generated vertex stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    /// Vertex of the colored host graph.
    Host(usize),
    /// The terminal adjacent to the whole host graph.
    Hub,
    /// Terminal attached to color class `i` (1-based, like the classes).
    ClassHub(usize),
    /// Vertex `v` of member instance `i` in an AND-composition.
    Member(usize, usize),
    /// Gray terminal of vertex gadget `i`.
    Gray(usize),
    Black(usize, Label),
    /// White vertex of gadget `i` between the two given blacks.
    White(usize, Label, Label),
    EdgeP(EdgeKey),
    EdgeS(EdgeKey),
    EdgeQ(EdgeKey),
    EdgeG(EdgeKey),
    /// Selector vertex for member `l` (0-based).
    Selector(usize),
    /// The selector terminal adjacent to every selector vertex.
    SelectorX,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Host(v) => write!(f, "host {v}"),
            Role::Hub => write!(f, "hub"),
            Role::ClassHub(i) => write!(f, "class {i}"),
            Role::Member(i, v) => write!(f, "member {i} {v}"),
            Role::Gray(i) => write!(f, "s {i}"),
            Role::Black(i, a) => write!(f, "{a} {i}"),
            Role::White(i, a, b) => write!(f, "{a}{b} {i}"),
            Role::EdgeP(e) => write!(f, "p {e}"),
            Role::EdgeS(e) => write!(f, "s {e}"),
            Role::EdgeQ(e) => write!(f, "q {e}"),
            Role::EdgeG(e) => write!(f, "g {e}"),
            Role::Selector(l) => write!(f, "y {l}"),
            Role::SelectorX => write!(f, "x"),
        }
    }
}

/// A generated instance with one role per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub instance: Instance,
    pub roles: Vec<Role>,
}

impl Generated {
    pub fn vertex(&self, role: Role) -> Option<usize> {
        self.roles.iter().position(|&r| r == role)
    }

    /// One line per vertex: 1-based index, then the role.
    pub fn sidecar(&self) -> String {
        let mut out = String::new();
        for (v, r) in self.roles.iter().enumerate() {
            out.push_str(&format!("{} {r}\n", v + 1));
        }
        out
    }
}

/// A graph whose vertices are split into color classes, each a clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    graph: Graph,
    classes: Vec<Vec<usize>>,
}

impl ColoredGraph {
    pub fn new(graph: Graph, mut classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; graph.n()];
        for c in &mut classes {
            c.sort_unstable();
            for &v in c.iter() {
                if v >= graph.n() || std::mem::replace(&mut seen[v], true) {
                    return Err(Error::input(format!(
                        "vertex {v} is out of range or colored twice"
                    )));
                }
            }
            if !graph.is_clique(c) {
                return Err(Error::input("color classes must be cliques"));
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::input(format!("vertex {v} has no color")));
        }
        Ok(ColoredGraph { graph, classes })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }
}

/// Host graph, then a hub adjacent to all of it, then one terminal per class
/// adjacent to exactly that class. Terminals: the hub and the class vertices.
pub fn gen_from_mis(cg: &ColoredGraph) -> Generated {
    let h = cg.graph();
    let n = h.n();
    let l = cg.classes().len();
    let mut g = Graph::new(n + 1 + l);
    for (u, v) in h.edges() {
        g.add_edge(u, v).expect("host edge");
    }
    for v in 0..n {
        g.add_edge(n, v).expect("hub edge");
    }
    for (i, class) in cg.classes().iter().enumerate() {
        for &v in class {
            g.add_edge(n + 1 + i, v).expect("class edge");
        }
    }
    let mut roles: Vec<Role> = (0..n).map(Role::Host).collect();
    roles.push(Role::Hub);
    roles.extend((1..=l).map(Role::ClassHub));
    let instance = Instance::new(g, (n..n + 1 + l).collect()).expect("terminals in range");
    Generated { instance, roles }
}

/// Chains the members: their disjoint union plus an edge from the second
/// lowest terminal of member `i` to the lowest terminal of member `i + 1`.
pub fn gen_and_composition(insts: &[Instance]) -> Result<Generated> {
    let first = insts
        .first()
        .ok_or_else(|| Error::input("AND-composition needs at least one member"))?;
    let n = first.graph.n();
    if let Some(i) = insts.iter().position(|x| x.graph.n() != n) {
        return Err(Error::input(format!(
            "member {i} has a different vertex count"
        )));
    }
    if let Some(i) = insts.iter().position(|x| x.k() < 2) {
        return Err(Error::input(format!(
            "member {i} has fewer than two terminals"
        )));
    }
    let mut g = Graph::new(n * insts.len());
    let mut terminals = Vec::new();
    let mut roles = Vec::new();
    for (i, x) in insts.iter().enumerate() {
        let base = i * n;
        for (u, v) in x.graph.edges() {
            g.add_edge(base + u, base + v).expect("member edge");
        }
        terminals.extend(x.terminals().iter().map(|t| base + t));
        roles.extend((0..n).map(|v| Role::Member(i, v)));
        if i > 0 {
            let v2 = (i - 1) * n + insts[i - 1].terminals()[1];
            let v1 = base + x.terminals()[0];
            g.add_edge(v2, v1).expect("bridge edge");
        }
    }
    let instance = Instance::new(g, terminals)?;
    Ok(Generated { instance, roles })
}

pub fn is_cubic(h: &Graph) -> bool {
    (0..h.n()).all(|v| h.degree(v) == 3)
}

/// Built-in cubic graphs: `k4`, `k33`, `prism`, `petersen`.
pub fn cubic(name: &str) -> Option<Graph> {
    let edges: Vec<(usize, usize)> = match name {
        "k4" => vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        "k33" => (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect(),
        "prism" => vec![
            (0, 1),
            (1, 2),
            (0, 2),
            (3, 4),
            (4, 5),
            (3, 5),
            (0, 3),
            (1, 4),
            (2, 5),
        ],
        "petersen" => (0..5)
            .flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)])
            .collect(),
        _ => return None,
    };
    let n = edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0) + 1;
    Graph::from_edges(n, &edges).ok()
}

pub const CUBIC_NAMES: [&str; 4] = ["k4", "k33", "prism", "petersen"];

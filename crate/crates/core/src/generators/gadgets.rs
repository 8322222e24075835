use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{is_cubic, Generated, Role};
use crate::error::{Error, Result};
use crate::graph::{Graph, Instance};

/// Black vertex of a vertex gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    A,
    B,
    C,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::A => "a",
            Label::B => "b",
            Label::C => "c",
        })
    }
}

const LABELS: [Label; 3] = [Label::A, Label::B, Label::C];
const WHITES: [(Label, Label); 3] = [
    (Label::A, Label::B),
    (Label::B, Label::C),
    (Label::A, Label::C),
];

/// Edge gadget for the host edge `v_i v_j`, `i < j`, whose ends are black
/// `alpha` of gadget `i` and black `beta` of gadget `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeKey {
    pub i: usize,
    pub j: usize,
    pub alpha: Label,
    pub beta: Label,
}

impl fmt::Display for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.i, self.j, self.alpha, self.beta)
    }
}

/// Host edge `(i, j)`, `i < j`, to the labels of its two ends.
pub type EdgeLabels = BTreeMap<(usize, usize), (Label, Label)>;

fn white_offset(x: Label, y: Label) -> usize {
    let pair = if x < y { (x, y) } else { (y, x) };
    4 + WHITES
        .iter()
        .position(|&w| w == pair)
        .expect("distinct labels")
}

fn black_offset(x: Label) -> usize {
    1 + x as usize
}

/// Each vertex hands out a, b, c to its incident edges in order of the
/// neighbour index.
pub fn label_edges(h: &Graph) -> Result<EdgeLabels> {
    if !is_cubic(h) {
        return Err(Error::input("host graph is not cubic"));
    }
    let label =
        |v: usize, w: usize| LABELS[h.neighbors(v).iter().position(|&x| x == w).expect("edge")];
    Ok(h.edges()
        .map(|(i, j)| ((i, j), (label(i, j), label(j, i))))
        .collect())
}

/// Adds the `n` vertex gadgets at indices `7i..7i + 7`.
fn vertex_gadgets(g: &mut Graph, roles: &mut Vec<Role>, n: usize) {
    for i in 0..n {
        let base = 7 * i;
        roles.push(Role::Gray(i));
        roles.extend(LABELS.iter().map(|&x| Role::Black(i, x)));
        roles.extend(WHITES.iter().map(|&(x, y)| Role::White(i, x, y)));
        for &(x, y) in &WHITES {
            let w = base + white_offset(x, y);
            g.add_edge(base, w).expect("gadget edge");
            g.add_edge(w, base + black_offset(x)).expect("gadget edge");
            g.add_edge(w, base + black_offset(y)).expect("gadget edge");
        }
    }
}

/// Adds `p, s, q, g` for `e` at the next four indices; returns `s`.
fn edge_gadget(g: &mut Graph, roles: &mut Vec<Role>, e: EdgeKey) -> usize {
    let base = g.n();
    for _ in 0..4 {
        g.add_vertex();
    }
    let (p, s, q, gc) = (base, base + 1, base + 2, base + 3);
    roles.extend([
        Role::EdgeP(e),
        Role::EdgeS(e),
        Role::EdgeQ(e),
        Role::EdgeG(e),
    ]);
    for (u, v) in [
        (7 * e.i + black_offset(e.alpha), p),
        (p, s),
        (s, q),
        (q, 7 * e.j + black_offset(e.beta)),
        (gc, p),
        (gc, s),
        (gc, q),
        (gc, 7 * e.j),
    ] {
        g.add_edge(u, v).expect("edge gadget");
    }
    s
}

fn edge_keys(labels: &EdgeLabels) -> BTreeSet<EdgeKey> {
    labels
        .iter()
        .map(|(&(i, j), &(alpha, beta))| EdgeKey { i, j, alpha, beta })
        .collect()
}

/// One 7-vertex gadget per host vertex, blacks joined along host edges.
pub fn gen_dp_graph(h: &Graph) -> Result<Generated> {
    let labels = label_edges(h)?;
    let n = h.n();
    let mut g = Graph::new(7 * n);
    let mut roles = Vec::with_capacity(7 * n);
    vertex_gadgets(&mut g, &mut roles, n);
    for e in edge_keys(&labels) {
        g.add_edge(
            7 * e.i + black_offset(e.alpha),
            7 * e.j + black_offset(e.beta),
        )
        .expect("host edge");
    }
    let instance = Instance::new(g, (0..n).map(|i| 7 * i).collect())?;
    Ok(Generated { instance, roles })
}

/// The gadget graph with every black-black edge replaced by an edge gadget,
/// gadgets in key order after the vertex gadgets.
pub fn gen_rep_graph(h: &Graph) -> Result<Generated> {
    let labels = label_edges(h)?;
    let n = h.n();
    let mut g = Graph::new(7 * n);
    let mut roles = Vec::new();
    vertex_gadgets(&mut g, &mut roles, n);
    let mut terminals: Vec<usize> = (0..n).map(|i| 7 * i).collect();
    for e in edge_keys(&labels) {
        terminals.push(edge_gadget(&mut g, &mut roles, e));
    }
    let instance = Instance::new(g, terminals)?;
    Ok(Generated { instance, roles })
}

/// Shared vertex gadgets, the union of all members' edge gadgets, then the
/// selector vertices `y_0..y_{t-1}` and the terminal `x`. The selector is a
/// `K_{2,t}` between `{x, s_0}` and the `y`s; `y_l` is also complete to every
/// edge gadget member `l` does not use.
pub fn gen_or_composition(hs: &[Graph]) -> Result<Generated> {
    let first = hs
        .first()
        .ok_or_else(|| Error::input("OR-composition needs at least one member"))?;
    let n = first.n();
    if hs.iter().any(|h| h.n() != n) {
        return Err(Error::input("members differ in vertex count"));
    }
    let used: Vec<BTreeSet<EdgeKey>> = hs
        .iter()
        .map(|h| label_edges(h).map(|l| edge_keys(&l)))
        .collect::<Result<_>>()?;
    let all: BTreeSet<EdgeKey> = used.iter().flatten().copied().collect();

    let mut g = Graph::new(7 * n);
    let mut roles = Vec::new();
    vertex_gadgets(&mut g, &mut roles, n);
    let mut terminals: Vec<usize> = (0..n).map(|i| 7 * i).collect();
    let mut gadget_base = BTreeMap::new();
    for &e in &all {
        gadget_base.insert(e, g.n());
        terminals.push(edge_gadget(&mut g, &mut roles, e));
    }
    let ys: Vec<usize> = (0..hs.len()).map(|_| g.add_vertex()).collect();
    roles.extend((0..hs.len()).map(Role::Selector));
    let x = g.add_vertex();
    roles.push(Role::SelectorX);
    terminals.push(x);
    for (l, &y) in ys.iter().enumerate() {
        g.add_edge(x, y).expect("selector");
        g.add_edge(0, y).expect("selector");
        for (e, &base) in &gadget_base {
            if !used[l].contains(e) {
                for v in base..base + 4 {
                    g.add_edge(y, v).expect("selector");
                }
            }
        }
    }
    let instance = Instance::new(g, terminals)?;
    Ok(Generated { instance, roles })
}

/// Deletes every selector vertex, `x`, and every vertex in a triangle with
/// `y_l`. The first gadget terminal stays.
pub fn rep_emerge(comp: &Generated, l: usize) -> Result<Generated> {
    let y = comp
        .vertex(Role::Selector(l))
        .ok_or_else(|| Error::input(format!("no selector vertex {l}")))?;
    let g = &comp.instance.graph;
    let ny = g.neighbors(y);
    let in_triangle = |w: usize| ny.contains(&w) && g.neighbors(w).iter().any(|u| ny.contains(u));
    let keep: Vec<usize> = (0..g.n())
        .filter(|&v| !matches!(comp.roles[v], Role::Selector(_) | Role::SelectorX))
        .filter(|&v| !in_triangle(v))
        .collect();
    let terminals = comp
        .instance
        .terminals()
        .iter()
        .filter_map(|t| keep.binary_search(t).ok())
        .collect();
    let instance = Instance::new(g.induced_subgraph(&keep), terminals)?;
    let roles = keep.iter().map(|&v| comp.roles[v]).collect();
    Ok(Generated { instance, roles })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HamTarget {
    Dp,
    Rep,
}

/// The solution read off a Hamiltonian path of `h`, as vertices of
/// `gen_dp_graph(h)` or `gen_rep_graph(h)`.
pub fn construct_hampath_witness(
    h: &Graph,
    path: &[usize],
    target: HamTarget,
) -> Result<Vec<usize>> {
    let labels = label_edges(h)?;
    let n = h.n();
    let mut seen = vec![false; n];
    for &v in path {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::input(
                "not a Hamiltonian path: repeated or unknown vertex",
            ));
        }
    }
    if path.len() != n || path.windows(2).any(|w| !h.has_edge(w[0], w[1])) {
        return Err(Error::input("not a Hamiltonian path"));
    }
    // label of the end at `v` of host edge vw
    let end_label = |v: usize, w: usize| {
        let (a, b) = labels[&(v.min(w), v.max(w))];
        if v < w {
            a
        } else {
            b
        }
    };
    let mut roles = Vec::new();
    for (k, &v) in path.iter().enumerate() {
        roles.push(Role::Gray(v));
        let mut ends: Vec<Label> = Vec::new();
        if k > 0 {
            ends.push(end_label(v, path[k - 1]));
        }
        if k + 1 < n {
            ends.push(end_label(v, path[k + 1]));
        }
        match ends[..] {
            [x, y] => {
                roles.extend([Role::Black(v, x), Role::Black(v, y)]);
                let (p, q) = if x < y { (x, y) } else { (y, x) };
                roles.push(Role::White(v, p, q));
            }
            [x] => {
                roles.push(Role::Black(v, x));
                let &(p, q) = WHITES
                    .iter()
                    .find(|&&(p, q)| p == x || q == x)
                    .expect("two whites");
                roles.push(Role::White(v, p, q));
            }
            _ => {}
        }
    }
    let out = match target {
        HamTarget::Dp => gen_dp_graph(h)?,
        HamTarget::Rep => {
            let on_path: BTreeSet<(usize, usize)> = path
                .windows(2)
                .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
                .collect();
            for e in edge_keys(&labels) {
                if on_path.contains(&(e.i, e.j)) {
                    roles.extend([Role::EdgeP(e), Role::EdgeS(e), Role::EdgeQ(e)]);
                } else {
                    roles.extend([Role::EdgeS(e), Role::EdgeG(e)]);
                }
            }
            gen_rep_graph(h)?
        }
    };
    let mut w: Vec<usize> = roles
        .into_iter()
        .map(|r| out.vertex(r).expect("role exists"))
        .collect();
    w.sort_unstable();
    Ok(w)
}

/// Maps a solution of member `l`'s representative graph into the
/// composition and adds `y_l`, `x` and the terminal of every edge gadget
/// member `l` does not use (those hang off `y_l`).
pub fn lift_rep_witness(
    comp: &Generated,
    rep: &Generated,
    l: usize,
    w: &[usize],
) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(w.len() + 2);
    for &v in w {
        let role = *rep
            .roles
            .get(v)
            .ok_or_else(|| Error::input(format!("vertex {v} out of range")))?;
        out.push(
            comp.vertex(role)
                .ok_or_else(|| Error::input(format!("role {role} missing from the composition")))?,
        );
    }
    for role in [Role::Selector(l), Role::SelectorX] {
        out.push(
            comp.vertex(role)
                .ok_or_else(|| Error::input(format!("no {role}")))?,
        );
    }
    let own: BTreeSet<Role> = rep.roles.iter().copied().collect();
    out.extend(
        comp.roles
            .iter()
            .enumerate()
            .filter(|(_, r)| matches!(r, Role::EdgeS(_)) && !own.contains(r))
            .map(|(v, _)| v),
    );
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::cubic;
    use super::*;
    use crate::graph::validate_solution;

    #[test]
    fn dp_of_k4_counts() {
        let out = gen_dp_graph(&cubic("k4").unwrap()).unwrap();
        let g = &out.instance.graph;
        assert_eq!(g.n(), 28);
        assert_eq!(g.m(), 4 * 9 + 6);
        assert_eq!(out.instance.k(), 4);
        assert!((0..g.n()).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn rep_of_k4_counts() {
        let out = gen_rep_graph(&cubic("k4").unwrap()).unwrap();
        let g = &out.instance.graph;
        assert_eq!(g.n(), 28 + 4 * 6);
        assert_eq!(out.instance.k(), 4 + 6);
        for (v, r) in out.roles.iter().enumerate() {
            if let Role::EdgeS(_) = r {
                assert_eq!(g.degree(v), 3);
            }
        }
    }

    #[test]
    fn k4_path_witness() {
        let h = cubic("k4").unwrap();
        for target in [HamTarget::Dp, HamTarget::Rep] {
            let w = construct_hampath_witness(&h, &[2, 0, 3, 1], target).unwrap();
            let out = match target {
                HamTarget::Dp => gen_dp_graph(&h),
                HamTarget::Rep => gen_rep_graph(&h),
            }
            .unwrap();
            assert!(validate_solution(&out.instance.graph, out.instance.terminals(), &w).unwrap());
        }
        assert!(construct_hampath_witness(&h, &[0, 1, 2], HamTarget::Dp).is_err());
    }

    #[test]
    fn non_cubic_rejected() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(gen_dp_graph(&c4).is_err());
        assert!(gen_or_composition(&[cubic("k33").unwrap(), cubic("k4").unwrap()]).is_err());
    }
}

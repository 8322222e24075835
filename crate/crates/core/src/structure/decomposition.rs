use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Bags are sorted and deduplicated; nothing else is checked here, see
    /// [`validate_td`].
    pub fn new(mut bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Self {
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        TreeDecomposition { bags, edges }
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Largest bag size minus one (0 for an empty decomposition).
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Decomposition of the subgraph induced by `keep` (sorted), relabelled
    /// the same way as [`Graph::induced_subgraph`].
    pub fn restrict(&self, keep: &[usize]) -> TreeDecomposition {
        let bags = self
            .bags
            .iter()
            .map(|b| {
                b.iter()
                    .filter_map(|v| keep.binary_search(v).ok())
                    .collect()
            })
            .collect();
        TreeDecomposition::new(bags, self.edges.clone())
    }

    fn tree_adjacency(&self) -> Option<Vec<Vec<usize>>> {
        let nb = self.bags.len();
        if nb == 0 {
            return self.edges.is_empty().then(Vec::new);
        }
        if self.edges.len() != nb - 1 {
            return None;
        }
        let mut adj = vec![Vec::new(); nb];
        for &(i, j) in &self.edges {
            if i >= nb || j >= nb || i == j {
                return None;
            }
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut seen = vec![false; nb];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        (count == nb).then_some(adj)
    }
}

/// Checks that the bags form a tree, cover every vertex and edge, and that
/// the bags containing any one vertex are connected in the tree.
pub fn validate_td(g: &Graph, td: &TreeDecomposition) -> bool {
    if td.tree_adjacency().is_none() {
        return false;
    }
    let n = g.n();
    if td.bags.iter().flatten().any(|&v| v >= n) {
        return false;
    }
    if td.bags.is_empty() {
        return n == 0;
    }
    let mut holders = vec![Vec::new(); n];
    for (i, b) in td.bags.iter().enumerate() {
        for &v in b {
            holders[v].push(i);
        }
    }
    if holders.iter().any(Vec::is_empty) {
        return false;
    }
    let covered = g.edges().all(|(u, v)| {
        holders[u]
            .iter()
            .any(|&i| td.bags[i].binary_search(&v).is_ok())
    });
    if !covered {
        return false;
    }
    // a vertex's bags form a subtree iff they span |holders| - 1 tree edges
    let mut inner_edges = vec![0usize; n];
    for &(i, j) in &td.edges {
        let (a, b) = (&td.bags[i], &td.bags[j]);
        for &v in a {
            if b.binary_search(&v).is_ok() {
                inner_edges[v] += 1;
            }
        }
    }
    (0..n).all(|v| inner_edges[v] + 1 == holders[v].len())
}

/// Min-fill elimination ordering heuristic. The bag of `v` is `v` together
/// with its neighbours at elimination time; it hangs below the bag of the
/// first of those neighbours to be eliminated later. Roots of different
/// components are chained together.
pub fn build_tree_decomposition(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let mut bags = Vec::with_capacity(n);
    let fill = |adj: &[BTreeSet<usize>], v: usize| -> usize {
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        let mut missing = 0;
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if !adj[a].contains(&b) {
                    missing += 1;
                }
            }
        }
        missing
    };
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (fill(&adj, v), adj[v].len(), v))
            .expect("a vertex remains");
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &nb {
            adj[a].remove(&v);
        }
        alive[v] = false;
        let mut bag = nb;
        bag.push(v);
        bags.push(bag);
        order.push(v);
    }
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, bag) in bags.iter().enumerate() {
        let v = order[i];
        match bag.iter().filter(|&&w| w != v).map(|&w| position[w]).min() {
            Some(p) => edges.push((i, p)),
            None => roots.push(i),
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition::new(bags, edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// A nice tree decomposition stored in post-order: children always have
/// smaller indices than their parent and the root is the last node. The root
/// is the node forgetting the designated vertex `r`, so its bag is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceDecomposition {
    nodes: Vec<NiceNode>,
    r: usize,
}

impl NiceDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|x| x.bag.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// The plain decomposition underlying the nice one.
    pub fn to_td(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|x| x.bag.clone()).collect();
        let edges = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(i, x)| x.children.iter().map(move |&c| (c, i)))
            .collect();
        TreeDecomposition::new(bags, edges)
    }

    /// Local node-type constraints plus validity of the whole decomposition
    /// for `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |i: usize, msg: &str| Err(Error::contract(format!("nice node {i}: {msg}")));
        if self.nodes.is_empty() {
            return Err(Error::contract("empty nice decomposition"));
        }
        let root = &self.nodes[self.root()];
        if root.kind != NiceKind::Forget(self.r) || !root.bag.is_empty() {
            return bad(self.root(), "root must forget r and have an empty bag");
        }
        let mut has_parent = vec![false; self.nodes.len()];
        for (i, x) in self.nodes.iter().enumerate() {
            if x.bag.windows(2).any(|w| w[0] >= w[1]) {
                return bad(i, "bag not sorted");
            }
            for &c in &x.children {
                if c >= i || has_parent[c] {
                    return bad(i, "children must precede their parent and be unique");
                }
                has_parent[c] = true;
            }
            let child_bag = |k: usize| &self.nodes[x.children[k]].bag;
            match x.kind {
                NiceKind::Leaf => {
                    if !x.children.is_empty() || !x.bag.is_empty() {
                        return bad(i, "leaf must be childless with an empty bag");
                    }
                }
                NiceKind::Introduce(v) | NiceKind::Forget(v) => {
                    if x.children.len() != 1 {
                        return bad(i, "introduce/forget needs one child");
                    }
                    let (big, small) = match x.kind {
                        NiceKind::Introduce(_) => (&x.bag, child_bag(0)),
                        _ => (child_bag(0), &x.bag),
                    };
                    let mut expect = small.clone();
                    match expect.binary_search(&v) {
                        Ok(_) => return bad(i, "vertex already present"),
                        Err(p) => expect.insert(p, v),
                    }
                    if &expect != big {
                        return bad(i, "bags differ by more than the vertex");
                    }
                }
                NiceKind::Join => {
                    if x.children.len() != 2 || child_bag(0) != &x.bag || child_bag(1) != &x.bag {
                        return bad(i, "join needs two children with equal bags");
                    }
                }
            }
        }
        if has_parent[..self.root()].iter().any(|&p| !p) {
            return Err(Error::contract("nice decomposition is not a single tree"));
        }
        if !validate_td(g, &self.to_td()) {
            return Err(Error::contract("not a tree decomposition of the graph"));
        }
        Ok(())
    }
}

fn intro_order(mut vs: Vec<usize>, r: usize) -> Vec<usize> {
    vs.sort_unstable_by_key(|&v| (v == r, v));
    vs
}

/// Converts a valid decomposition into a nice one whose root forgets `r`.
///
/// The decomposition is rooted at the first bag containing `r`; between a
/// bag and its parent, vanishing vertices are forgotten and then new ones
/// introduced (ascending, `r` last); children of a branching bag are joined
/// left to right. Above the root bag every vertex is forgotten, `r` last.
pub fn make_nice(g: &Graph, td: &TreeDecomposition, r: usize) -> Result<NiceDecomposition> {
    if r >= g.n() {
        return Err(Error::input(format!("root vertex {r} out of range")));
    }
    if !validate_td(g, td) {
        return Err(Error::input("invalid tree decomposition"));
    }
    let adj = td.tree_adjacency().expect("validated");
    let top = td
        .bags
        .iter()
        .position(|b| b.binary_search(&r).is_ok())
        .expect("validated decompositions cover every vertex");

    // BFS order from the top bag; reversed, it lists children first
    let nb = td.bags.len();
    let mut parent = vec![usize::MAX; nb];
    let mut order = vec![top];
    parent[top] = top;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for &y in &adj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                order.push(y);
            }
        }
        i += 1;
    }
    let mut children = vec![Vec::new(); nb];
    for &x in &order[1..] {
        children[parent[x]].push(x);
    }
    for c in &mut children {
        c.sort_unstable();
    }

    let mut nodes: Vec<NiceNode> = Vec::new();
    let push = |nodes: &mut Vec<NiceNode>, kind, bag, children| {
        nodes.push(NiceNode {
            kind,
            bag,
            children,
        });
        nodes.len() - 1
    };
    // morphs the node `at` with bag `from` into one with bag `to`
    let transition = |nodes: &mut Vec<NiceNode>, mut at: usize, to: &[usize]| -> usize {
        let from = nodes[at].bag.clone();
        let gone: Vec<usize> = from
            .iter()
            .copied()
            .filter(|v| to.binary_search(v).is_err())
            .collect();
        let new: Vec<usize> = to
            .iter()
            .copied()
            .filter(|v| from.binary_search(v).is_err())
            .collect();
        let mut bag = from;
        for v in intro_order(gone, r) {
            bag.retain(|&w| w != v);
            at = push(nodes, NiceKind::Forget(v), bag.clone(), vec![at]);
        }
        for v in intro_order(new, r) {
            let p = bag.binary_search(&v).unwrap_err();
            bag.insert(p, v);
            at = push(nodes, NiceKind::Introduce(v), bag.clone(), vec![at]);
        }
        at
    };

    let mut built = vec![usize::MAX; nb];
    for &x in order.iter().rev() {
        let bag = &td.bags[x];
        let mut subs: Vec<usize> = children[x]
            .iter()
            .map(|&c| transition(&mut nodes, built[c], bag))
            .collect();
        if subs.is_empty() {
            let leaf = push(&mut nodes, NiceKind::Leaf, Vec::new(), Vec::new());
            subs.push(transition(&mut nodes, leaf, bag));
        }
        let mut acc = subs[0];
        for &s in &subs[1..] {
            acc = push(&mut nodes, NiceKind::Join, bag.clone(), vec![acc, s]);
        }
        built[x] = acc;
    }
    transition(&mut nodes, built[top], &[]);
    let out = NiceDecomposition { nodes, r };
    debug_assert!(out.validate(g).is_ok());
    Ok(out)
}

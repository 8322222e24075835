//! Dynamic programming over a nice tree decomposition.
//!
//! For every node `x`, vertex set `S` of its bag and size `l`, the table
//! holds weighted partitions of `S`: a pair `(p, w)` stands for a vertex set
//! `X` of the graph below `x` with `X ∩ B_x = S`, `|X| = l`, containing the
//! terminals seen so far, whose components all meet `S` and connect `S` as
//! `p`. The weight counts the edges of `G[X]` charged so far: an edge is
//! charged when its first endpoint is forgotten.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{extract_witness, Instance, SolveOutcome};
use crate::partition::{Partition, WeightedPartitionSet};
use crate::structure::{make_nice, NiceDecomposition, NiceKind, TreeDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpOptions {
    /// Apply the rank-based reduction after every operation.
    pub reduce: bool,
}

impl Default for DpOptions {
    fn default() -> Self {
        DpOptions { reduce: true }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DpStats {
    pub nodes: usize,
    /// Largest stored set, indexed by `|S|`.
    pub max_set_len: Vec<usize>,
}

/// `l -> set` for one `S`.
type Cell = BTreeMap<usize, WeightedPartitionSet>;
/// Keyed by `S` as a bitmask over bag positions.
type Table = BTreeMap<u32, Cell>;

/// A table with `S` spelled out in vertex ids, as returned by [`lcis_tables`].
pub type NodeTable = BTreeMap<(Vec<usize>, usize), WeightedPartitionSet>;

struct Dp<'a> {
    inst: &'a Instance,
    nice: &'a NiceDecomposition,
    opts: DpOptions,
    cap: usize,
    stats: DpStats,
}

fn members(bag: &[usize], mask: u32) -> Vec<usize> {
    bag.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &v)| v)
        .collect()
}

/// Inserts a zero bit at position `p`.
fn widen(mask: u32, p: usize) -> u32 {
    let lo = mask & ((1 << p) - 1);
    lo | (mask >> p) << (p + 1)
}

/// Deletes bit `p`.
fn narrow(mask: u32, p: usize) -> u32 {
    let lo = mask & ((1 << p) - 1);
    lo | (mask >> (p + 1)) << p
}

impl Dp<'_> {
    fn finish(&mut self, set: WeightedPartitionSet) -> Result<WeightedPartitionSet> {
        let set = if self.opts.reduce { set.reduce()? } else { set };
        let s = set.ground().len();
        if self.stats.max_set_len.len() <= s {
            self.stats.max_set_len.resize(s + 1, 0);
        }
        self.stats.max_set_len[s] = self.stats.max_set_len[s].max(set.len());
        Ok(set)
    }

    fn store(table: &mut Table, mask: u32, l: usize, set: WeightedPartitionSet) {
        if set.is_empty() {
            return;
        }
        let cell = table.entry(mask).or_default();
        match cell.get_mut(&l) {
            Some(old) => old.absorb(set),
            None => {
                cell.insert(l, set);
            }
        }
    }

    fn reduce_all(&mut self, table: Table) -> Result<Table> {
        let mut out = Table::new();
        for (m, cell) in table {
            for (l, set) in cell {
                let set = self.finish(set)?;
                Self::store(&mut out, m, l, set);
            }
        }
        Ok(out)
    }

    fn node(&mut self, x: usize, mut child_tables: Vec<Table>) -> Result<Table> {
        let node = &self.nice.nodes()[x];
        let g = &self.inst.graph;
        match node.kind {
            NiceKind::Leaf => {
                let mut t = Table::new();
                let empty = Partition::bottom(&[])?;
                Self::store(&mut t, 0, 0, WeightedPartitionSet::singleton(empty, 0));
                Ok(t)
            }
            NiceKind::Introduce(v) => {
                let ty = child_tables.pop().expect("one child");
                let p = node
                    .bag
                    .binary_search(&v)
                    .expect("introduced vertex in bag");
                let mut out = Table::new();
                let terminal = self.inst.is_terminal(v);
                for (my, cell) in ty {
                    let without = widen(my, p);
                    let with = without | 1 << p;
                    let s = members(&node.bag, with);
                    let glue: Vec<usize> = s
                        .iter()
                        .copied()
                        .filter(|&u| u == v || g.has_edge(u, v))
                        .collect();
                    for (l, a) in &cell {
                        if l + 1 > self.cap {
                            continue;
                        }
                        let b = self.finish(a.insert(&[v])?.glue(&glue, 0)?)?;
                        Self::store(&mut out, with, l + 1, b);
                    }
                    if !terminal {
                        for (l, a) in cell {
                            Self::store(&mut out, without, l, a);
                        }
                    }
                }
                Ok(out)
            }
            NiceKind::Forget(v) => {
                let ty = child_tables.pop().expect("one child");
                let child = &self.nice.nodes()[node.children[0]];
                let p = child
                    .bag
                    .binary_search(&v)
                    .expect("forgotten vertex in child bag");
                let mut out = Table::new();
                for (my, cell) in ty {
                    let mx = narrow(my, p);
                    if my >> p & 1 == 0 {
                        for (l, a) in cell {
                            Self::store(&mut out, mx, l, a);
                        }
                        continue;
                    }
                    let s = members(&node.bag, mx);
                    let d = s.iter().filter(|&&u| g.has_edge(u, v)).count() as u64;
                    for (l, a) in cell {
                        let b = self.finish(a.project(&[v])?.shift(d))?;
                        Self::store(&mut out, mx, l, b);
                    }
                }
                self.reduce_all(out)
            }
            NiceKind::Join => {
                let tz = child_tables.pop().expect("two children");
                let ty = child_tables.pop().expect("two children");
                let mut out = Table::new();
                for (m, cy) in &ty {
                    let Some(cz) = tz.get(m) else { continue };
                    let s = m.count_ones() as usize;
                    for (l1, a) in cy {
                        for (l2, b) in cz {
                            let l = l1 + l2 - s;
                            if l > self.cap {
                                continue;
                            }
                            let j = self.finish(a.join(b)?)?;
                            Self::store(&mut out, *m, l, j);
                        }
                    }
                }
                self.reduce_all(out)
            }
        }
    }

    /// Runs bottom-up; returns the table of the root's child, plus every
    /// table when `keep` is set.
    fn run(&mut self, keep: bool) -> Result<(Table, Vec<Table>)> {
        let nodes = self.nice.nodes();
        if nodes.iter().any(|x| x.bag.len() > 31) {
            return Err(Error::Capacity("bags larger than 31 vertices".into()));
        }
        let mut tables: Vec<Option<Table>> = vec![None; nodes.len()];
        let mut kept = Vec::new();
        let reading = nodes[self.nice.root()].children[0];
        for x in 0..=reading {
            let kids = nodes[x]
                .children
                .iter()
                .map(|&c| {
                    if keep {
                        tables[c].clone().expect("children precede parents")
                    } else {
                        tables[c].take().expect("children precede parents")
                    }
                })
                .collect();
            let t = self.node(x, kids)?;
            self.stats.nodes += 1;
            tables[x] = Some(t);
        }
        if keep {
            kept = tables
                .iter()
                .map(|t| t.clone().unwrap_or_default())
                .collect();
        }
        Ok((tables[reading].take().expect("computed"), kept))
    }
}

fn check(inst: &Instance, nice: &NiceDecomposition) -> Result<()> {
    if !inst.is_terminal(nice.r()) {
        return Err(Error::input(
            "the decomposition must be rooted at a terminal",
        ));
    }
    nice.validate(&inst.graph)
}

/// Weight of `({{r}}, w)` for each size `l`, read below the forget of `r`.
fn root_weights(table: &Table) -> BTreeMap<usize, u64> {
    let mut out = BTreeMap::new();
    if let Some(cell) = table.get(&1) {
        for (&l, set) in cell {
            if let Some((_, w)) = set.iter().next() {
                out.insert(l, w);
            }
        }
    }
    out
}

/// Light connecting induced subgraph: is there a connected induced subgraph
/// with exactly `ell + |K|` vertices, containing K, with at most `f` edges?
pub fn solve_lcis_tw(
    inst: &Instance,
    nice: &NiceDecomposition,
    ell: usize,
    f: usize,
    opts: DpOptions,
) -> Result<bool> {
    check(inst, nice)?;
    let target = ell + inst.k();
    let mut dp = Dp {
        inst,
        nice,
        opts,
        cap: target,
        stats: DpStats::default(),
    };
    let (table, _) = dp.run(false)?;
    Ok(root_weights(&table)
        .get(&target)
        .is_some_and(|&w| w <= f as u64))
}

/// Decision version of k-in-a-tree with statistics.
pub fn decide_kit_tw(
    inst: &Instance,
    nice: &NiceDecomposition,
    opts: DpOptions,
) -> Result<(bool, DpStats)> {
    check(inst, nice)?;
    let mut dp = Dp {
        inst,
        nice,
        opts,
        cap: inst.graph.n(),
        stats: DpStats::default(),
    };
    let (table, _) = dp.run(false)?;
    // a connected graph on l vertices has at least l - 1 edges, with
    // equality exactly for trees
    let yes = root_weights(&table)
        .iter()
        .any(|(&l, &w)| w + 1 == l as u64);
    Ok((yes, dp.stats))
}

pub fn solve_kit_tw(
    inst: &Instance,
    nice: &NiceDecomposition,
    opts: DpOptions,
) -> Result<SolveOutcome> {
    let (yes, _) = decide_kit_tw(inst, nice, opts)?;
    Ok(if yes {
        SolveOutcome::yes(None)
    } else {
        SolveOutcome::no()
    })
}

/// Solves with a plain decomposition rooted at the smallest terminal and,
/// on YES, recovers a witness by self-reduction using restricted
/// decompositions.
pub fn solve_kit_tw_witness(
    inst: &Instance,
    td: &TreeDecomposition,
    opts: DpOptions,
) -> Result<SolveOutcome> {
    let decide = |sub: &Instance, keep: &[usize]| -> Result<bool> {
        let t = td.restrict(keep);
        let nice = make_nice(&sub.graph, &t, sub.terminals()[0])?;
        Ok(decide_kit_tw(sub, &nice, opts)?.0)
    };
    let all: Vec<usize> = (0..inst.graph.n()).collect();
    if !decide(inst, &all)? {
        return Ok(SolveOutcome::no());
    }
    Ok(SolveOutcome::yes(Some(extract_witness(inst, decide)?)))
}

/// All node tables, for inspection; `S` is given in vertex ids.
pub fn lcis_tables(
    inst: &Instance,
    nice: &NiceDecomposition,
    cap: usize,
    opts: DpOptions,
) -> Result<Vec<NodeTable>> {
    check(inst, nice)?;
    let mut dp = Dp {
        inst,
        nice,
        opts,
        cap,
        stats: DpStats::default(),
    };
    let (_, all) = dp.run(true)?;
    Ok(all
        .into_iter()
        .enumerate()
        .map(|(x, t)| {
            let bag = &nice.nodes()[x].bag;
            t.into_iter()
                .flat_map(|(m, cell)| {
                    let s = members(bag, m);
                    cell.into_iter().map(move |(l, set)| ((s.clone(), l), set))
                })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::structure::build_tree_decomposition;

    fn nice_for(inst: &Instance) -> NiceDecomposition {
        let td = build_tree_decomposition(&inst.graph);
        make_nice(&inst.graph, &td, inst.terminals()[0]).unwrap()
    }

    #[test]
    fn masks() {
        assert_eq!(widen(0b101, 1), 0b1001);
        assert_eq!(narrow(0b1001, 1), 0b101);
        assert_eq!(narrow(0b1011, 1), 0b101);
    }

    #[test]
    fn path_lcis() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let inst = Instance::new(g, vec![0, 2]).unwrap();
        let nice = nice_for(&inst);
        assert!(solve_lcis_tw(&inst, &nice, 1, 2, DpOptions::default()).unwrap());
        assert!(!solve_lcis_tw(&inst, &nice, 1, 1, DpOptions::default()).unwrap());
        assert!(!solve_lcis_tw(&inst, &nice, 0, 9, DpOptions::default()).unwrap());
        assert!(solve_kit_tw(&inst, &nice, DpOptions::default())
            .unwrap()
            .answer
            .is_yes());
    }

    #[test]
    fn triangle_all_terminals() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let inst = Instance::new(g, vec![0, 1, 2]).unwrap();
        let nice = nice_for(&inst);
        assert!(solve_lcis_tw(&inst, &nice, 0, 3, DpOptions::default()).unwrap());
        assert!(!solve_lcis_tw(&inst, &nice, 0, 2, DpOptions::default()).unwrap());
        assert!(!solve_kit_tw(&inst, &nice, DpOptions::default())
            .unwrap()
            .answer
            .is_yes());
    }

    #[test]
    fn disconnected_terminals() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let inst = Instance::new(g, vec![0, 3]).unwrap();
        let nice = nice_for(&inst);
        assert!(!solve_kit_tw(&inst, &nice, DpOptions::default())
            .unwrap()
            .answer
            .is_yes());
    }

    #[test]
    fn root_must_be_terminal() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let inst = Instance::new(g.clone(), vec![0, 2]).unwrap();
        let nice = make_nice(&g, &build_tree_decomposition(&g), 1).unwrap();
        assert!(solve_kit_tw(&inst, &nice, DpOptions::default()).is_err());
    }

    #[test]
    fn witness_on_cycle() {
        let edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let inst = Instance::new(Graph::from_edges(6, &edges).unwrap(), vec![0, 3]).unwrap();
        let td = build_tree_decomposition(&inst.graph);
        let out = solve_kit_tw_witness(&inst, &td, DpOptions::default()).unwrap();
        assert_eq!(out.witness, Some(vec![0, 3, 4, 5]));
    }
}

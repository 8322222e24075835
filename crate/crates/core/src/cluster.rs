//! Dynamic programs parameterized by the distance to a cluster graph and to
//! a co-cluster graph.
//!
//! For a guessed set `S` of modulator vertices in the solution, the cliques
//! of `G - U` are processed one at a time. Each clique contributes at most
//! two vertices to an induced tree; table entries are weighted partitions of
//! `S` recording which parts of `S` are already connected, weighted by the
//! number of induced edges so far.

use std::collections::BTreeMap;
use std::thread;

use crate::error::{Error, Result};
use crate::graph::{extract_witness, validate_solution, Graph, Instance, SolveOutcome};
use crate::partition::{Partition, WeightedPartitionSet};
use crate::structure::{cocluster_parts, maximal_cliques_of_cluster};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClusterOptions {
    pub reduce: bool,
    /// Worker threads for the guesses of `S`; 0 or 1 runs inline.
    pub threads: usize,
    /// Keep one vertex per true-twin class in each clique.
    pub shrink_twins: bool,
}

impl Default for ClusterOptions {
    fn default() -> Self {
        ClusterOptions {
            reduce: true,
            threads: 1,
            shrink_twins: true,
        }
    }
}

struct Clique {
    terminals: Vec<usize>,
    /// Non-terminal candidates after twin shrinking.
    free: Vec<usize>,
}

struct Prepared<'a> {
    inst: &'a Instance,
    modulator: Vec<usize>,
    cliques: Vec<Clique>,
}

fn sorted_modulator(g: &Graph, modulator: &[usize]) -> Result<Vec<usize>> {
    let mut u = modulator.to_vec();
    u.sort_unstable();
    u.dedup();
    if let Some(&v) = u.iter().find(|&&v| v >= g.n()) {
        return Err(Error::input(format!("modulator vertex {v} out of range")));
    }
    Ok(u)
}

fn prepare<'a>(
    inst: &'a Instance,
    modulator: &[usize],
    opts: ClusterOptions,
) -> Result<Prepared<'a>> {
    let g = &inst.graph;
    let modulator = sorted_modulator(g, modulator)?;
    let mut cliques = Vec::new();
    for c in maximal_cliques_of_cluster(g, &modulator)? {
        let terminals: Vec<usize> = c.iter().copied().filter(|&v| inst.is_terminal(v)).collect();
        let mut free = Vec::new();
        let mut seen: Vec<Vec<usize>> = Vec::new();
        for &v in c.iter().filter(|&&v| !inst.is_terminal(v)) {
            if opts.shrink_twins {
                let sig: Vec<usize> = g
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|w| modulator.binary_search(w).is_ok())
                    .collect();
                if seen.contains(&sig) {
                    continue;
                }
                seen.push(sig);
            }
            free.push(v);
        }
        cliques.push(Clique { terminals, free });
    }
    Ok(Prepared {
        inst,
        modulator,
        cliques,
    })
}

fn finish(set: WeightedPartitionSet, reduce: bool) -> Result<WeightedPartitionSet> {
    if reduce {
        set.reduce()
    } else {
        Ok(set)
    }
}

impl Prepared<'_> {
    /// Is there a solution whose intersection with the modulator is `s`?
    fn decide_for(&self, s: &[usize], reduce: bool) -> Result<bool> {
        let inst = self.inst;
        let g = &inst.graph;
        let k = inst.terminals();
        if s.is_empty() {
            // everything lies in one clique, and a tree inside a clique has at
            // most two vertices
            return Ok(match k.len() {
                1 => true,
                2 => self.cliques.iter().any(|c| c.terminals.len() == 2),
                _ => false,
            });
        }
        let mut in_s = vec![false; g.n()];
        for &v in s {
            in_s[v] = true;
        }
        let mut in_sk = in_s.clone();
        for &t in k {
            in_sk[t] = true;
        }
        let sk: Vec<usize> = (0..g.n()).filter(|&v| in_sk[v]).collect();

        // base: components of G[S], also merged through a common terminal
        // neighbour, weighted by all edges of G[S ∪ K]
        let mut base = Partition::bottom(s)?;
        for (i, &a) in s.iter().enumerate() {
            for &b in &s[i + 1..] {
                let linked =
                    g.has_edge(a, b) || k.iter().any(|&t| g.has_edge(t, a) && g.has_edge(t, b));
                if linked {
                    base = base.join(&Partition::merged(s, &[a, b])?)?;
                }
            }
        }
        let mut table: BTreeMap<usize, WeightedPartitionSet> = BTreeMap::new();
        table.insert(
            sk.len(),
            WeightedPartitionSet::singleton(base, g.induced_edge_count(&sk) as u64),
        );

        let neighbors_in_s = |y: &[usize]| -> Vec<usize> {
            let mut out: Vec<usize> = y
                .iter()
                .flat_map(|&v| g.neighbors(v).iter().copied().filter(|&w| in_s[w]))
                .collect();
            out.sort_unstable();
            out.dedup();
            out
        };

        for clique in &self.cliques {
            let kt = &clique.terminals;
            let mut choices: Vec<Vec<usize>> = Vec::new();
            if kt.len() <= 2 {
                choices.push(Vec::new());
            }
            if kt.len() <= 1 {
                choices.extend(clique.free.iter().map(|&x| vec![x]));
            }
            if kt.is_empty() {
                for (i, &a) in clique.free.iter().enumerate() {
                    for &b in &clique.free[i + 1..] {
                        choices.push(vec![a, b]);
                    }
                }
            }
            let mut next: BTreeMap<usize, WeightedPartitionSet> = BTreeMap::new();
            for x in choices {
                let mut y = x.clone();
                y.extend_from_slice(kt);
                let glue = neighbors_in_s(&y);
                if !y.is_empty() && glue.is_empty() {
                    // this clique's part of the solution would float free
                    continue;
                }
                let w: usize = x
                    .iter()
                    .map(|&v| g.neighbors(v).iter().filter(|&&u| in_sk[u]).count())
                    .sum::<usize>()
                    + g.induced_edge_count(&x);
                for (&l, a) in &table {
                    let b = finish(a.glue(&glue, w as u64)?, reduce)?;
                    if b.is_empty() {
                        continue;
                    }
                    match next.get_mut(&(l + x.len())) {
                        Some(old) => old.absorb(b),
                        None => {
                            next.insert(l + x.len(), b);
                        }
                    }
                }
            }
            table = next
                .into_iter()
                .map(|(l, a)| Ok((l, finish(a, reduce)?)))
                .collect::<Result<_>>()?;
            if table.is_empty() {
                return Ok(false);
            }
        }
        let single = Partition::bottom(s)?;
        for (&l, a) in &table {
            if a.opt(&single)? == Some(l as u64 - 1) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn guesses(&self) -> Vec<Vec<usize>> {
        let forced: Vec<usize> = self
            .modulator
            .iter()
            .copied()
            .filter(|&v| self.inst.is_terminal(v))
            .collect();
        let optional: Vec<usize> = self
            .modulator
            .iter()
            .copied()
            .filter(|&v| !self.inst.is_terminal(v))
            .collect();
        (0u64..1 << optional.len())
            .map(|mask| {
                let mut s = forced.clone();
                s.extend(
                    optional
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &v)| v),
                );
                s.sort_unstable();
                s
            })
            .collect()
    }

    fn decide(&self, opts: ClusterOptions) -> Result<bool> {
        if self.cliques.iter().any(|c| c.terminals.len() >= 3) {
            return Ok(false);
        }
        if self.modulator.len() > 40 {
            return Err(Error::Capacity(format!(
                "modulator of {} vertices",
                self.modulator.len()
            )));
        }
        let guesses = self.guesses();
        let workers = opts.threads.max(1).min(guesses.len().max(1));
        if workers == 1 {
            for s in &guesses {
                if self.decide_for(s, opts.reduce)? {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        let results: Vec<Result<bool>> = thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let guesses = &guesses;
                    scope.spawn(move || -> Result<bool> {
                        for s in guesses.iter().skip(w).step_by(workers) {
                            if self.decide_for(s, opts.reduce)? {
                                return Ok(true);
                            }
                        }
                        Ok(false)
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        });
        let mut any = false;
        for r in results {
            any |= r?;
        }
        Ok(any)
    }
}

/// Decides k-in-a-tree given `U` such that `G - U` is a cluster graph.
pub fn decide_kit_cluster(
    inst: &Instance,
    modulator: &[usize],
    opts: ClusterOptions,
) -> Result<bool> {
    prepare(inst, modulator, opts)?.decide(opts)
}

fn restrict_modulator(modulator: &[usize], keep: &[usize]) -> Vec<usize> {
    modulator
        .iter()
        .filter_map(|v| keep.binary_search(v).ok())
        .collect()
}

fn with_witness<D>(inst: &Instance, witness: bool, mut decide: D) -> Result<SolveOutcome>
where
    D: FnMut(&Instance, &[usize]) -> Result<bool>,
{
    let all: Vec<usize> = (0..inst.graph.n()).collect();
    if !decide(inst, &all)? {
        return Ok(SolveOutcome::no());
    }
    if !witness {
        return Ok(SolveOutcome::yes(None));
    }
    Ok(SolveOutcome::yes(Some(extract_witness(inst, decide)?)))
}

pub fn solve_kit_cluster(
    inst: &Instance,
    modulator: &[usize],
    opts: ClusterOptions,
    witness: bool,
) -> Result<SolveOutcome> {
    let modulator = sorted_modulator(&inst.graph, modulator)?;
    with_witness(inst, witness, |sub, keep| {
        decide_kit_cluster(sub, &restrict_modulator(&modulator, keep), opts)
    })
}

/// Decides k-in-a-tree given `U` such that `G - U` is complete multipartite.
///
/// Outside `U` an induced tree meets at most one part plus one further
/// vertex (three parts would give a triangle), so every candidate
/// `G[U ∪ I_j ∪ {v}]` is handled by the cluster solver with modulator
/// `U ∪ {v}`.
pub fn decide_kit_cocluster(
    inst: &Instance,
    modulator: &[usize],
    opts: ClusterOptions,
) -> Result<bool> {
    let g = &inst.graph;
    let modulator = sorted_modulator(g, modulator)?;
    let parts = cocluster_parts(g, &modulator)?;
    let in_u = |v: usize| modulator.binary_search(&v).is_ok();
    let outside: Vec<usize> = inst
        .terminals()
        .iter()
        .copied()
        .filter(|&t| !in_u(t))
        .collect();
    let part_of = |v: usize| parts.iter().position(|p| p.binary_search(&v).is_ok());
    let mut hit: Vec<usize> = outside.iter().filter_map(|&t| part_of(t)).collect();
    hit.sort_unstable();
    hit.dedup();

    if hit.len() >= 3 {
        // only G[S ∪ K] itself could work, and it is never a tree here
        let forced: Vec<usize> = modulator
            .iter()
            .copied()
            .filter(|&v| inst.is_terminal(v))
            .collect();
        let optional: Vec<usize> = modulator
            .iter()
            .copied()
            .filter(|&v| !inst.is_terminal(v))
            .collect();
        for mask in 0u64..1 << optional.len() {
            let mut s: Vec<usize> = forced.clone();
            s.extend(
                optional
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v),
            );
            s.extend_from_slice(&outside);
            if validate_solution(g, inst.terminals(), &s)? {
                return Ok(true);
            }
        }
        return Ok(false);
    }

    let rest: Vec<usize> = parts.iter().flatten().copied().collect();
    let mut part_choices: Vec<Option<usize>> = vec![None];
    part_choices.extend((0..parts.len()).map(Some));
    for j in part_choices {
        let part: &[usize] = j.map_or(&[], |j| &parts[j]);
        let mut extras: Vec<Option<usize>> = vec![None];
        extras.extend(
            rest.iter()
                .copied()
                .filter(|v| part.binary_search(v).is_err())
                .map(Some),
        );
        for v in extras {
            let covered = outside
                .iter()
                .all(|&t| part.binary_search(&t).is_ok() || Some(t) == v);
            if !covered {
                continue;
            }
            let mut keep: Vec<usize> = modulator.clone();
            keep.extend_from_slice(part);
            let mut sub_mod = modulator.clone();
            if let Some(v) = v {
                keep.push(v);
                sub_mod.push(v);
            }
            keep.sort_unstable();
            sub_mod.sort_unstable();
            let sub = inst.induced(&keep)?;
            let local = restrict_modulator(&sub_mod, &keep);
            if decide_kit_cluster(&sub, &local, opts)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

pub fn solve_kit_cocluster(
    inst: &Instance,
    modulator: &[usize],
    opts: ClusterOptions,
    witness: bool,
) -> Result<SolveOutcome> {
    let modulator = sorted_modulator(&inst.graph, modulator)?;
    with_witness(inst, witness, |sub, keep| {
        decide_kit_cocluster(sub, &restrict_modulator(&modulator, keep), opts)
    })
}

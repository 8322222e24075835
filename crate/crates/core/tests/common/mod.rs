#![allow(dead_code)]

use kintree::partition::{Partition, WeightedPartitionSet};
use kintree::{Graph, Instance};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

pub fn terminals(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(k.min(n));
    all
}

pub fn random_instance(rng: &mut ChaCha8Rng, n: usize, p: f64, k: usize) -> Instance {
    let g = gnp(rng, n, p);
    let t = terminals(rng, n, k);
    Instance::new(g, t).unwrap()
}

/// A random spanning tree plus independent extra edges.
pub fn random_connected_instance(rng: &mut ChaCha8Rng, n: usize, p: f64, k: usize) -> Instance {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut g = Graph::new(n);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        g.add_edge(order[i], order[j]).unwrap();
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    let t = terminals(rng, n, k);
    Instance::new(g, t).unwrap()
}

/// Disjoint cliques on `n - q` vertices plus `q` randomly attached modulator
/// vertices, with vertex labels shuffled. Returns the modulator.
pub fn cluster_instance(
    rng: &mut ChaCha8Rng,
    n: usize,
    q: usize,
    k: usize,
) -> (Instance, Vec<usize>) {
    let base = n - q;
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut g = Graph::new(n);
    let mut i = 0;
    while i < base {
        let size = rng.gen_range(1..=4).min(base - i);
        for a in i..i + size {
            for b in a + 1..i + size {
                g.add_edge(labels[a], labels[b]).unwrap();
            }
        }
        i += size;
    }
    let p = rng.gen_range(0.2..0.7);
    for a in base..n {
        for b in 0..a {
            if rng.gen_bool(p) {
                g.add_edge(labels[a], labels[b]).unwrap();
            }
        }
    }
    let mut modulator: Vec<usize> = labels[base..].to_vec();
    modulator.sort_unstable();
    let t = terminals(rng, n, k);
    (Instance::new(g, t).unwrap(), modulator)
}

/// Complement of a cluster base (complete multipartite) plus `q` randomly
/// attached modulator vertices.
pub fn cocluster_instance(
    rng: &mut ChaCha8Rng,
    n: usize,
    q: usize,
    k: usize,
) -> (Instance, Vec<usize>) {
    let (inst, modulator) = cluster_instance(rng, n, q, k);
    let c = inst.graph.complement();
    // re-randomise edges at the modulator so they are not complements too
    let mut g = Graph::new(n);
    let p = rng.gen_range(0.2..0.8);
    for (u, v) in c.edges() {
        let touches = modulator.contains(&u) || modulator.contains(&v);
        if !touches {
            g.add_edge(u, v).unwrap();
        }
    }
    for &a in &modulator {
        for b in 0..n {
            if b != a && !g.has_edge(a, b) && (!modulator.contains(&b) || b > a) && rng.gen_bool(p)
            {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    let t = inst.terminals().to_vec();
    (Instance::new(g, t).unwrap(), modulator)
}

pub fn random_code(rng: &mut ChaCha8Rng, ground: &[usize]) -> Partition {
    let blocks = rng.gen_range(1..=ground.len().max(1));
    let labels: Vec<usize> = ground.iter().map(|_| rng.gen_range(0..blocks)).collect();
    let mut grouped: Vec<Vec<usize>> = vec![Vec::new(); blocks];
    for (e, l) in ground.iter().zip(labels) {
        grouped[l].push(*e);
    }
    grouped.retain(|b| !b.is_empty());
    if grouped.is_empty() {
        return Partition::bottom(&[]).unwrap();
    }
    Partition::from_blocks(&grouped).unwrap()
}

pub fn random_wps(
    rng: &mut ChaCha8Rng,
    ground: &[usize],
    max_entries: usize,
) -> WeightedPartitionSet {
    let count = rng.gen_range(0..=max_entries);
    let mut a = WeightedPartitionSet::empty(ground).unwrap();
    for _ in 0..count {
        let p = random_code(rng, ground);
        a.add(&p, rng.gen_range(0..20)).unwrap();
    }
    a
}

/// `0..n` as a ground set.
pub fn ground(n: usize) -> Vec<usize> {
    (0..n).collect()
}

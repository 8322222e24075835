mod common;

use common::*;
use kintree::kernel::{kernelize, maximize_leaves, FPairContext, KernelOptions};
use kintree::oracle::{solve_oracle, DEFAULT_MAX_N};
use kintree::structure::TreeClass;
use kintree::{connected_components, Graph, Instance};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn oracle_yes(inst: &Instance) -> bool {
    solve_oracle(inst, DEFAULT_MAX_N).unwrap().answer.is_yes()
}

/// A random tree plus `extra` chords, with some pendant paths left in.
fn sparse_instance(rng: &mut ChaCha8Rng, n: usize, extra: usize, k: usize) -> Instance {
    let mut g = Graph::new(n);
    for i in 1..n {
        // mostly long paths so there is something to compress
        let j = if rng.gen_bool(0.8) {
            i - 1
        } else {
            rng.gen_range(0..i)
        };
        g.add_edge(i, j).unwrap();
    }
    let mut tries = 0;
    let mut added = 0;
    while added < extra && tries < 1000 {
        tries += 1;
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && !g.has_edge(u, v) {
            g.add_edge(u, v).unwrap();
            added += 1;
        }
    }
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let edges: Vec<_> = g.edges().map(|(u, v)| (labels[u], labels[v])).collect();
    let g = Graph::from_edges(n, &edges).unwrap();
    Instance::new(g, terminals(rng, n, k)).unwrap()
}

fn feedback_number(g: &Graph) -> usize {
    g.m() + connected_components(g).len() - g.n()
}

#[test]
fn kernel_preserves_answers() {
    let mut rng = rng(21);
    for i in 0..300 {
        let n = rng.gen_range(1..=16);
        let k = rng.gen_range(1..=4.min(n));
        let inst = if i % 3 == 0 {
            random_instance(&mut rng, n, 0.2, k)
        } else {
            let extra = rng.gen_range(0..=4);
            sparse_instance(&mut rng, n, extra, k)
        };
        let t = kernelize(&inst, KernelOptions::default()).unwrap();
        assert_eq!(
            oracle_yes(&t.instance),
            oracle_yes(&inst),
            "{inst:?}\n{:?}",
            t.log
        );
    }
}

#[test]
fn every_rule_step_preserves_answers() {
    let mut rng = rng(22);
    for _ in 0..120 {
        let n = rng.gen_range(4..=14);
        let k = rng.gen_range(1..=4);
        let extra = rng.gen_range(1..=3);
        let inst = sparse_instance(&mut rng, n, extra, k);
        let t = kernelize(&inst, KernelOptions { snapshots: true }).unwrap();
        let want = oracle_yes(&inst);
        for (step, s) in t.snapshots.iter().enumerate() {
            assert_eq!(oracle_yes(s), want, "step {step} of {inst:?}\n{:?}", t.log);
        }
    }
}

#[test]
fn size_bounds_hold() {
    let mut rng = rng(23);
    for _ in 0..200 {
        let n = rng.gen_range(2..=200);
        let k = rng.gen_range(1..=6.min(n));
        let extra = rng.gen_range(0..=8);
        let inst = sparse_instance(&mut rng, n, extra, k);
        let t = kernelize(&inst, KernelOptions::default()).unwrap();
        assert_eq!(t.q, feedback_number(&inst.graph));
        let (nb, mb) = t.bound();
        let g = &t.instance.graph;
        assert!(g.n() <= nb, "n={} bound={nb}", g.n());
        assert!(t.q == 0 || g.m() <= mb, "m={} bound={mb}", g.m());
        assert!(t.swaps <= 2 * t.q);
    }
}

#[test]
fn leaf_swaps_reach_the_degree_fixpoint() {
    let mut rng = rng(24);
    for _ in 0..200 {
        let n = rng.gen_range(3..=80);
        let extra = rng.gen_range(1..=10);
        let inst = sparse_instance(&mut rng, n, extra, 1);
        // only 2-cores are meaningful here: strip pendant trees by hand
        let mut alive: Vec<usize> = (0..n).collect();
        let g = loop {
            let h = inst.graph.induced_subgraph(&alive);
            let drop: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) < 2).collect();
            if drop.is_empty() {
                break h;
            }
            alive = (0..h.n())
                .filter(|v| !drop.contains(v))
                .map(|v| alive[v])
                .collect();
        };
        if g.n() == 0 || connected_components(&g).len() != 1 {
            continue;
        }
        let q = feedback_number(&g);
        let ctx = FPairContext::new(g);
        let before = ctx.fes.leaf_count();
        let (ctx, swaps) = maximize_leaves(ctx);
        assert!(swaps.len() <= 2 * q);
        assert_eq!(ctx.fes.leaf_count(), before + swaps.len());
        assert_eq!(ctx.fes.len(), q);
        assert!(ctx.next_swap().is_none());
        assert!(ctx.deep_degree_violations().is_empty());
        // direct scan, independent of the path bookkeeping
        let g = &ctx.graph;
        let d2 = |v: usize| ctx.fes.class(v) == TreeClass::D2;
        for w in 0..g.n() {
            if !d2(w) || g.degree(w) == 2 {
                continue;
            }
            let mut ends = Vec::new();
            for &start in ctx.fes.tree_neighbors(w) {
                let (mut prev, mut cur, mut dist) = (w, start, 1);
                while d2(cur) {
                    let next = *ctx
                        .fes
                        .tree_neighbors(cur)
                        .iter()
                        .find(|&&x| x != prev)
                        .unwrap();
                    prev = cur;
                    cur = next;
                    dist += 1;
                }
                ends.push(dist);
            }
            assert!(
                ends.iter().any(|&d| d < 3),
                "vertex {w} at distances {ends:?}"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_output_is_connected_and_idempotent_in_size(seed in any::<u64>(), n in 2usize..40, extra in 0usize..6) {
        let mut rng = rng(seed);
        let k = rng.gen_range(1..=3.min(n));
        let inst = sparse_instance(&mut rng, n, extra, k);
        let t = kernelize(&inst, KernelOptions::default()).unwrap();
        let g = &t.instance.graph;
        let is_no_constant = t.instance.k() == 2 && g.n() == 2 && g.m() == 0;
        if !is_no_constant {
            prop_assert_eq!(connected_components(g).len(), 1);
            let again = kernelize(&t.instance, KernelOptions::default()).unwrap();
            prop_assert!(again.instance.graph.n() <= g.n());
            prop_assert_eq!(again.q, t.q.min(feedback_number(g)));
        }
    }
}

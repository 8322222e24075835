mod common;

use common::*;
use kintree::generators::{
    construct_hampath_witness, cubic, gen_and_composition, gen_dp_graph, gen_from_mis,
    gen_or_composition, gen_rep_graph, lift_rep_witness, rep_emerge, ColoredGraph, HamTarget, Role,
};
use kintree::io::{read_instance, write_instance};
use kintree::oracle::{solve_oracle, DEFAULT_MAX_N};
use kintree::{validate_solution, Graph, Instance};
use rand::Rng;

fn oracle_yes(inst: &Instance) -> bool {
    solve_oracle(inst, DEFAULT_MAX_N).unwrap().answer.is_yes()
}

/// Every Hamiltonian path of `h`, by brute force over permutations.
fn hamiltonian_paths(h: &Graph) -> Vec<Vec<usize>> {
    fn extend(h: &Graph, path: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if path.len() == h.n() {
            out.push(path.clone());
            return;
        }
        let last = *path.last().unwrap();
        for &w in h.neighbors(last) {
            if !used[w] {
                used[w] = true;
                path.push(w);
                extend(h, path, used, out);
                path.pop();
                used[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..h.n() {
        let mut used = vec![false; h.n()];
        used[s] = true;
        extend(h, &mut vec![s], &mut used, &mut out);
    }
    out
}

fn has_mis(cg: &ColoredGraph) -> bool {
    let classes = cg.classes();
    let mut pick = vec![0usize; classes.len()];
    loop {
        let chosen: Vec<usize> = pick.iter().zip(classes).map(|(&i, c)| c[i]).collect();
        if chosen
            .iter()
            .enumerate()
            .all(|(a, &u)| chosen[a + 1..].iter().all(|&v| !cg.graph().has_edge(u, v)))
        {
            return true;
        }
        let mut i = 0;
        loop {
            if i == pick.len() {
                return false;
            }
            pick[i] += 1;
            if pick[i] < classes[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn mis_small_examples() {
    let apart = ColoredGraph::new(Graph::new(2), vec![vec![0], vec![1]]).unwrap();
    assert!(oracle_yes(&gen_from_mis(&apart).instance));
    let joined = ColoredGraph::new(
        Graph::from_edges(2, &[(0, 1)]).unwrap(),
        vec![vec![0], vec![1]],
    )
    .unwrap();
    assert!(!oracle_yes(&gen_from_mis(&joined).instance));
}

#[test]
fn mis_random_agreement() {
    let mut rng = rng(31);
    for _ in 0..200 {
        let l = rng.gen_range(1..=3);
        let sizes: Vec<usize> = (0..l).map(|_| rng.gen_range(1..=3)).collect();
        let n: usize = sizes.iter().sum();
        let mut g = gnp(&mut rng, n, 0.4);
        let mut classes = Vec::new();
        let mut at = 0;
        for s in sizes {
            let c: Vec<usize> = (at..at + s).collect();
            for &u in &c {
                for &v in &c {
                    if u < v && !g.has_edge(u, v) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            classes.push(c);
            at += s;
        }
        let cg = ColoredGraph::new(g, classes).unwrap();
        assert_eq!(
            oracle_yes(&gen_from_mis(&cg).instance),
            has_mis(&cg),
            "{cg:?}"
        );
    }
}

#[test]
fn gadget_degrees_and_counts() {
    for name in ["k4", "k33", "prism", "petersen"] {
        let h = cubic(name).unwrap();
        let n = h.n();
        let dp = gen_dp_graph(&h).unwrap();
        assert_eq!(dp.instance.graph.n(), 7 * n);
        assert_eq!(dp.instance.graph.m(), 9 * n + 3 * n / 2);
        assert!((0..7 * n).all(|v| dp.instance.graph.degree(v) == 3));
        // each vertex hands out a, b, c exactly once
        for i in 0..n {
            let mut across: Vec<usize> = ["a", "b", "c"]
                .iter()
                .enumerate()
                .map(|(o, _)| {
                    let b = 7 * i + 1 + o;
                    dp.instance
                        .graph
                        .neighbors(b)
                        .iter()
                        .filter(|&&w| w / 7 != i)
                        .count()
                })
                .collect();
            across.sort_unstable();
            assert_eq!(across, vec![1, 1, 1]);
        }
        let rep = gen_rep_graph(&h).unwrap();
        assert_eq!(rep.instance.graph.n(), 7 * n + 4 * (3 * n / 2));
        assert_eq!(rep.instance.k(), n + 3 * n / 2);
        for (v, r) in rep.roles.iter().enumerate() {
            if let Role::EdgeS(_) = r {
                assert_eq!(rep.instance.graph.degree(v), 3);
            }
        }
    }
}

#[test]
fn hampath_witnesses_validate_on_small_cubic_graphs() {
    for name in ["k4", "k33", "prism"] {
        let h = cubic(name).unwrap();
        let paths = hamiltonian_paths(&h);
        assert!(!paths.is_empty());
        let dp = gen_dp_graph(&h).unwrap();
        let rep = gen_rep_graph(&h).unwrap();
        for p in &paths {
            let w = construct_hampath_witness(&h, p, HamTarget::Dp).unwrap();
            assert!(validate_solution(&dp.instance.graph, dp.instance.terminals(), &w).unwrap());
            let w = construct_hampath_witness(&h, p, HamTarget::Rep).unwrap();
            assert!(validate_solution(&rep.instance.graph, rep.instance.terminals(), &w).unwrap());
        }
    }
    let h = cubic("prism").unwrap();
    assert!(construct_hampath_witness(&h, &[0, 1, 2, 3, 4, 5], HamTarget::Rep).is_err());
}

#[test]
fn or_composition_emerges_per_member() {
    let members = vec![cubic("k33").unwrap(), cubic("prism").unwrap()];
    let comp = gen_or_composition(&members).unwrap();
    let x = comp.vertex(Role::SelectorX).unwrap();
    let s1 = comp.vertex(Role::Gray(0)).unwrap();
    let g = &comp.instance.graph;
    for (l, h) in members.iter().enumerate() {
        let rep = gen_rep_graph(h).unwrap();
        let got = rep_emerge(&comp, l).unwrap();
        assert_eq!(got.instance, rep.instance);
        assert_eq!(got.roles, rep.roles);
        // a member's own solution lifts into the composition
        let p = &hamiltonian_paths(h)[0];
        let w = construct_hampath_witness(h, p, HamTarget::Rep).unwrap();
        let lifted = lift_rep_witness(&comp, &rep, l, &w).unwrap();
        assert!(validate_solution(g, comp.instance.terminals(), &lifted).unwrap());
    }
    // two selectors close an induced C4
    let y0 = comp.vertex(Role::Selector(0)).unwrap();
    let y1 = comp.vertex(Role::Selector(1)).unwrap();
    let mut c4 = vec![x, y0, s1, y1];
    c4.sort_unstable();
    let h = g.induced_subgraph(&c4);
    assert_eq!(h.m(), 4);
    assert!((0..4).all(|v| h.degree(v) == 2));
}

#[test]
fn single_member_composition() {
    let h = cubic("k4").unwrap();
    let comp = gen_or_composition(std::slice::from_ref(&h)).unwrap();
    let rep = gen_rep_graph(&h).unwrap();
    assert_eq!(comp.instance.graph.n(), rep.instance.graph.n() + 2);
    assert_eq!(comp.instance.k(), rep.instance.k() + 1);
    let p = &hamiltonian_paths(&h)[0];
    let w = construct_hampath_witness(&h, p, HamTarget::Rep).unwrap();
    let lifted = lift_rep_witness(&comp, &rep, 0, &w).unwrap();
    assert!(validate_solution(&comp.instance.graph, comp.instance.terminals(), &lifted).unwrap());
}

#[test]
fn and_composition_is_a_conjunction() {
    let mut rng = rng(32);
    let mut checked = [0usize; 2];
    for _ in 0..150 {
        let t = rng.gen_range(2..=3);
        let n = rng.gen_range(3..=5);
        let members: Vec<Instance> = (0..t)
            .map(|_| {
                let k = rng.gen_range(2..=3.min(n));
                random_connected_instance(&mut rng, n, 0.3, k)
            })
            .collect();
        let comp = gen_and_composition(&members).unwrap();
        assert_eq!(comp.instance.graph.n(), t * n);
        let want = members.iter().all(oracle_yes);
        checked[want as usize] += 1;
        assert_eq!(oracle_yes(&comp.instance), want, "{members:?}");
    }
    assert!(checked[0] > 0 && checked[1] > 0);
}

#[test]
fn generated_instances_round_trip() {
    let h = cubic("prism").unwrap();
    let cg = ColoredGraph::new(
        Graph::from_edges(3, &[(0, 1)]).unwrap(),
        vec![vec![0, 1], vec![2]],
    )
    .unwrap();
    let p3 = Instance::new(Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap(), vec![0, 2]).unwrap();
    let all = [
        gen_from_mis(&cg),
        gen_dp_graph(&h).unwrap(),
        gen_rep_graph(&h).unwrap(),
        gen_or_composition(&[h.clone(), cubic("k33").unwrap()]).unwrap(),
        gen_and_composition(&[p3.clone(), p3]).unwrap(),
    ];
    for out in all {
        let text = write_instance(&out.instance);
        assert_eq!(read_instance(&text).unwrap(), out.instance);
        assert_eq!(out.sidecar().lines().count(), out.instance.graph.n());
    }
}

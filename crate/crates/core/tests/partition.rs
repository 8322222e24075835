mod common;

use common::*;
use kintree::partition::{Partition, WeightedPartitionSet};
use proptest::prelude::*;
use rand::Rng;

/// Minimum weight of an entry whose blocks, glued with those of `q`, connect
/// the whole ground set. Union-find, independent of the library's join.
fn opt_oracle(a: &WeightedPartitionSet, q: &Partition) -> Option<u64> {
    let ground = a.ground();
    let pos = |e: usize| ground.binary_search(&e).unwrap();
    a.iter()
        .filter(|(p, _)| {
            let mut parent: Vec<usize> = (0..ground.len()).collect();
            fn find(parent: &mut [usize], x: usize) -> usize {
                let mut r = x;
                while parent[r] != r {
                    r = parent[r];
                }
                parent[x] = r;
                r
            }
            for blocks in [p.blocks(), q.blocks()] {
                for b in blocks {
                    for w in b.windows(2) {
                        let (x, y) = (find(&mut parent, pos(w[0])), find(&mut parent, pos(w[1])));
                        parent[x] = y;
                    }
                }
            }
            let r = find(&mut parent, 0);
            (0..ground.len()).all(|i| find(&mut parent, i) == r)
        })
        .map(|(_, w)| w)
        .min()
}

fn same_opts(a: &WeightedPartitionSet, b: &WeightedPartitionSet) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.ground(), b.ground());
    for q in Partition::enumerate(a.ground()).unwrap() {
        prop_assert_eq!(opt_oracle(a, &q), opt_oracle(b, &q), "q = {:?}", q.blocks());
        prop_assert_eq!(a.opt(&q).unwrap(), opt_oracle(a, &q));
    }
    Ok(())
}

#[test]
fn partition_counts_are_bell_numbers() {
    for (n, bell) in [1usize, 1, 2, 5, 15, 52].iter().enumerate() {
        assert_eq!(Partition::enumerate(&ground(n)).unwrap().len(), *bell);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduce_keeps_every_optimum(seed in any::<u64>(), u in 1usize..=5, max in 0usize..=40) {
        let mut rng = rng(seed);
        let a = random_wps(&mut rng, &ground(u), max);
        let r = a.reduce().unwrap();
        prop_assert!(r.len() <= 1 << (u - 1));
        prop_assert!(r.iter().all(|(p, w)| a.weight_of(&p) == Some(w)));
        same_opts(&a, &r)?;
    }

    #[test]
    fn reduce_is_idempotent(seed in any::<u64>(), u in 1usize..=5) {
        let mut rng = rng(seed);
        let a = random_wps(&mut rng, &ground(u), 30);
        let r = a.reduce().unwrap();
        prop_assert_eq!(r.reduce().unwrap(), r);
    }

    #[test]
    fn operators_commute_with_reduce(seed in any::<u64>(), u in 1usize..=4) {
        let mut rng = rng(seed);
        let g = ground(u);
        let a = random_wps(&mut rng, &g, 25);
        let b = random_wps(&mut rng, &g, 25);
        let (ra, rb) = (a.reduce().unwrap(), b.reduce().unwrap());

        same_opts(&a.union(&b).unwrap(), &ra.union(&rb).unwrap())?;
        same_opts(&a.shift(3), &ra.shift(3))?;
        same_opts(&a.insert(&[u]).unwrap(), &ra.insert(&[u]).unwrap())?;
        let x: Vec<usize> = g.iter().copied().filter(|_| rng.gen_bool(0.5)).chain([u]).collect();
        same_opts(&a.glue(&x, 2).unwrap(), &ra.glue(&x, 2).unwrap())?;
        if u > 1 {
            let drop = [rng.gen_range(0..u)];
            same_opts(&a.project(&drop).unwrap(), &ra.project(&drop).unwrap())?;
        }
        // join across overlapping grounds
        let other: Vec<usize> = (1..=u).collect();
        let c = random_wps(&mut rng, &other, 20);
        let rc = c.reduce().unwrap();
        same_opts(&a.join(&c).unwrap(), &ra.join(&rc).unwrap())?;
    }

    #[test]
    fn glue_then_project_is_neutral(seed in any::<u64>(), u in 1usize..=5) {
        let mut rng = rng(seed);
        let a = random_wps(&mut rng, &ground(u), 20);
        let anchor = rng.gen_range(0..u);
        let back = a.glue(&[anchor, u], 0).unwrap().project(&[u]).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn union_keeps_minimum_weights(seed in any::<u64>(), u in 1usize..=4) {
        let mut rng = rng(seed);
        let a = random_wps(&mut rng, &ground(u), 15);
        let b = random_wps(&mut rng, &ground(u), 15);
        let c = a.union(&b).unwrap();
        for (p, w) in c.iter() {
            let best = [a.weight_of(&p), b.weight_of(&p)].into_iter().flatten().min();
            prop_assert_eq!(Some(w), best);
        }
        prop_assert_eq!(c.len(), a.iter().chain(b.iter()).map(|(p, _)| p).collect::<std::collections::BTreeSet<_>>().len());
    }
}

//! Exhaustive baseline solver over vertex bitmasks.

use crate::error::{Error, Result};
use crate::graph::{Instance, SolveOutcome};

pub const DEFAULT_MAX_N: usize = 26;

struct Masks {
    adj: Vec<u64>,
    terminals: u64,
    free: Vec<usize>,
}

fn masks(inst: &Instance, max_n: usize) -> Result<Masks> {
    let n = inst.graph.n();
    if n > max_n.min(63) {
        return Err(Error::Capacity(format!(
            "oracle handles at most {} vertices, instance has {n}",
            max_n.min(63)
        )));
    }
    let adj = (0..n)
        .map(|v| {
            inst.graph
                .neighbors(v)
                .iter()
                .fold(0u64, |m, &w| m | 1 << w)
        })
        .collect();
    let terminals = inst.terminals().iter().fold(0u64, |m, &t| m | 1 << t);
    let free = (0..n).filter(|&v| !inst.is_terminal(v)).collect();
    Ok(Masks {
        adj,
        terminals,
        free,
    })
}

impl Masks {
    fn edges(&self, s: u64) -> u32 {
        let mut rest = s;
        let mut twice = 0;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            twice += (self.adj[v] & s).count_ones();
        }
        twice / 2
    }

    fn connected(&self, s: u64) -> bool {
        if s == 0 {
            return false;
        }
        let mut reached = s & s.wrapping_neg();
        let mut frontier = reached;
        while frontier != 0 {
            let mut next = 0;
            let mut rest = frontier;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                next |= self.adj[v];
            }
            frontier = next & s & !reached;
            reached |= frontier;
        }
        reached == s
    }

    fn spread(&self, sub: u64) -> u64 {
        let mut out = self.terminals;
        let mut rest = sub;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= 1 << self.free[i];
        }
        out
    }

    /// Calls `visit` on every superset of K adding exactly `size` free
    /// vertices, in increasing mask order; stops at the first `true`.
    fn each_of_size(&self, size: usize, mut visit: impl FnMut(u64) -> bool) -> Option<u64> {
        let f = self.free.len();
        if size > f {
            return None;
        }
        if size == 0 {
            return visit(self.terminals).then_some(self.terminals);
        }
        let limit = 1u64 << f;
        let mut sub = (1u64 << size) - 1;
        while sub < limit {
            let s = self.spread(sub);
            if visit(s) {
                return Some(s);
            }
            // Gosper's hack: next integer with the same popcount
            let c = sub & sub.wrapping_neg();
            let r = sub + c;
            sub = (((r ^ sub) >> 2) / c) | r;
        }
        None
    }
}

fn to_vertices(s: u64) -> Vec<usize> {
    (0..64).filter(|&v| s >> v & 1 == 1).collect()
}

/// Decides the instance by enumerating vertex sets containing K in order of
/// size; the witness is a smallest solution with the least mask.
pub fn solve_oracle(inst: &Instance, max_n: usize) -> Result<SolveOutcome> {
    let m = masks(inst, max_n)?;
    for size in 0..=m.free.len() {
        let want = (inst.k() + size - 1) as u32;
        if let Some(s) = m.each_of_size(size, |s| m.edges(s) == want && m.connected(s)) {
            return Ok(SolveOutcome::yes(Some(to_vertices(s))));
        }
    }
    Ok(SolveOutcome::no())
}

/// Whether some connected induced subgraph with exactly `ell + |K|` vertices
/// containing K has at most `f` edges.
pub fn solve_lcis_oracle(inst: &Instance, ell: usize, f: usize, max_n: usize) -> Result<bool> {
    let m = masks(inst, max_n)?;
    Ok(
        m.each_of_size(ell, |s| m.edges(s) as usize <= f && m.connected(s))
            .is_some(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{validate_solution, Answer, Graph};

    #[test]
    fn examples() {
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let inst = Instance::new(tri, vec![0, 1, 2]).unwrap();
        assert_eq!(
            solve_oracle(&inst, DEFAULT_MAX_N).unwrap(),
            SolveOutcome::no()
        );

        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let inst = Instance::new(star, vec![1, 2, 3]).unwrap();
        let out = solve_oracle(&inst, DEFAULT_MAX_N).unwrap();
        assert_eq!(out.answer, Answer::Yes);
        assert_eq!(out.witness, Some(vec![0, 1, 2, 3]));

        let single = Instance::new(Graph::new(1), vec![0]).unwrap();
        assert_eq!(solve_oracle(&single, 26).unwrap().witness, Some(vec![0]));
    }

    #[test]
    fn smallest_witness_first() {
        // C6 with terminals 0 and 2: the short side {0,1,2} wins
        let edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let inst = Instance::new(Graph::from_edges(6, &edges).unwrap(), vec![0, 2]).unwrap();
        let w = solve_oracle(&inst, 26).unwrap().witness.unwrap();
        assert_eq!(w, vec![0, 1, 2]);
        assert!(validate_solution(&inst.graph, inst.terminals(), &w).unwrap());
    }

    #[test]
    fn lcis_examples() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let inst = Instance::new(p3, vec![0, 2]).unwrap();
        assert!(solve_lcis_oracle(&inst, 1, 2, 26).unwrap());
        assert!(!solve_lcis_oracle(&inst, 1, 1, 26).unwrap());
        assert!(!solve_lcis_oracle(&inst, 0, 5, 26).unwrap());

        let mut k4 = Graph::new(4);
        for u in 0..4 {
            for v in u + 1..4 {
                k4.add_edge(u, v).unwrap();
            }
        }
        let inst = Instance::new(k4, vec![0, 1]).unwrap();
        assert!(!solve_lcis_oracle(&inst, 0, 0, 26).unwrap());
        assert!(solve_lcis_oracle(&inst, 0, 1, 26).unwrap());
    }

    #[test]
    fn capacity() {
        let inst = Instance::new(Graph::new(30), vec![0]).unwrap();
        assert!(matches!(solve_oracle(&inst, 26), Err(Error::Capacity(_))));
    }
}

use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph};

/// First induced P3 `(u, v, w)` (middle `v`) among vertices not in `gone`,
/// scanning middles ascending and then neighbour pairs `u < w`.
fn first_p3(g: &Graph, gone: &[bool]) -> Option<(usize, usize, usize)> {
    for v in 0..g.n() {
        if gone[v] {
            continue;
        }
        let nb: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&x| !gone[x])
            .collect();
        for (i, &u) in nb.iter().enumerate() {
            for &w in &nb[i + 1..] {
                if !g.has_edge(u, w) {
                    return Some((u, v, w));
                }
            }
        }
    }
    None
}

/// Size of a greedy packing of vertex-disjoint induced P3s; every modulator
/// hits each of them.
fn p3_packing(g: &Graph, gone: &[bool]) -> usize {
    let mut used = gone.to_vec();
    let mut count = 0;
    // any P3 among unused vertices is still induced in the remaining graph
    while let Some((u, v, w)) = first_p3(g, &used) {
        used[u] = true;
        used[v] = true;
        used[w] = true;
        count += 1;
    }
    count
}

fn branch(g: &Graph, gone: &mut Vec<bool>, picked: &mut Vec<usize>, budget: usize) -> bool {
    let Some((u, v, w)) = first_p3(g, gone) else {
        return true;
    };
    if budget == 0 || p3_packing(g, gone) > budget {
        return false;
    }
    for x in [u, v, w] {
        gone[x] = true;
        picked.push(x);
        if branch(g, gone, picked, budget - 1) {
            return true;
        }
        picked.pop();
        gone[x] = false;
    }
    false
}

pub fn is_cluster_graph(g: &Graph) -> bool {
    first_p3(g, &vec![false; g.n()]).is_none()
}

/// A set `U` with `|U| <= q` such that `g - U` is a disjoint union of
/// cliques, found by branching three ways on the first induced P3.
pub fn cluster_modulator(g: &Graph, q: usize) -> Option<Vec<usize>> {
    let mut gone = vec![false; g.n()];
    let mut picked = Vec::new();
    branch(g, &mut gone, &mut picked, q).then(|| {
        picked.sort_unstable();
        picked
    })
}

/// Like [`cluster_modulator`] on the complement: `g - U` becomes complete
/// multipartite.
pub fn cocluster_modulator(g: &Graph, q: usize) -> Option<Vec<usize>> {
    cluster_modulator(&g.complement(), q)
}

/// Iterative deepening over the budget; returns a minimum modulator of size
/// at most `max_q`.
pub fn smallest_cluster_modulator(g: &Graph, max_q: usize) -> Option<Vec<usize>> {
    (0..=max_q).find_map(|q| cluster_modulator(g, q))
}

pub fn smallest_cocluster_modulator(g: &Graph, max_q: usize) -> Option<Vec<usize>> {
    let c = g.complement();
    (0..=max_q).find_map(|q| cluster_modulator(&c, q))
}

fn rest(g: &Graph, modulator: &[usize]) -> Result<Vec<usize>> {
    let mut inside = vec![false; g.n()];
    for &u in modulator {
        if u >= g.n() {
            return Err(Error::input(format!("modulator vertex {u} out of range")));
        }
        inside[u] = true;
    }
    Ok((0..g.n()).filter(|&v| !inside[v]).collect())
}

/// The cliques of the cluster graph `g - U`, in original vertex ids and
/// ordered by minimum vertex.
pub fn maximal_cliques_of_cluster(g: &Graph, modulator: &[usize]) -> Result<Vec<Vec<usize>>> {
    let keep = rest(g, modulator)?;
    let h = g.induced_subgraph(&keep);
    let comps = connected_components(&h);
    if comps.iter().any(|c| !h.is_clique(c)) {
        return Err(Error::contract(
            "graph minus the modulator is not a cluster graph",
        ));
    }
    Ok(comps
        .into_iter()
        .map(|c| c.into_iter().map(|i| keep[i]).collect())
        .collect())
}

/// The parts (maximal independent sets) of the complete multipartite graph
/// `g - U`.
pub fn cocluster_parts(g: &Graph, modulator: &[usize]) -> Result<Vec<Vec<usize>>> {
    let keep = rest(g, modulator)?;
    let h = g.induced_subgraph(&keep).complement();
    let comps = connected_components(&h);
    if comps.iter().any(|c| !h.is_clique(c)) {
        return Err(Error::contract(
            "graph minus the modulator is not a co-cluster graph",
        ));
    }
    Ok(comps
        .into_iter()
        .map(|c| c.into_iter().map(|i| keep[i]).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cluster_examples() {
        let two_triangles =
            Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(cluster_modulator(&two_triangles, 0), Some(vec![]));
        assert_eq!(
            maximal_cliques_of_cluster(&two_triangles, &[]).unwrap(),
            vec![vec![0, 1, 2], vec![3, 4, 5]]
        );
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(cluster_modulator(&p3, 0), None);
        let u = cluster_modulator(&p3, 1).unwrap();
        assert_eq!(u.len(), 1);
        assert_eq!(
            maximal_cliques_of_cluster(&p3, &[1]).unwrap(),
            vec![vec![0], vec![2]]
        );
        assert!(maximal_cliques_of_cluster(&p3, &[]).is_err());
    }

    #[test]
    fn cocluster_examples() {
        // K_{2,3}
        let g = Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(cocluster_modulator(&g, 0), Some(vec![]));
        assert_eq!(
            cocluster_parts(&g, &[]).unwrap(),
            vec![vec![0, 1], vec![2, 3, 4]]
        );
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            cocluster_modulator(&two_k2, 1),
            cluster_modulator(&two_k2.complement(), 1)
        );
        assert!(cocluster_parts(&two_k2, &[]).is_err());
    }
}

//! Spanning-subgraph embedding by backtracking.

use super::{bits, Graph};
use crate::error::{domain, Result};

/// True iff some bijection of the vertices maps every edge of `h` onto an
/// edge of `host`.
pub fn embeds_as_spanning_subgraph(h: &Graph, host: &Graph) -> Result<bool> {
    Ok(find_spanning_embedding(h, host)?.is_some())
}

/// Returns `map` with `map[v]` the host vertex of `v`, if one exists.
pub fn find_spanning_embedding(h: &Graph, host: &Graph) -> Result<Option<Vec<usize>>> {
    let n = h.n();
    if n != host.n() {
        return domain(format!(
            "embedding needs equal orders, got {} and {}",
            n,
            host.n()
        ));
    }
    if h.edge_count() > host.edge_count() {
        return Ok(None);
    }
    let h_deg: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    let host_deg: Vec<usize> = (0..n).map(|v| host.degree(v)).collect();
    {
        let mut a = h_deg.clone();
        let mut b = host_deg.clone();
        a.sort_unstable_by(|x, y| y.cmp(x));
        b.sort_unstable_by(|x, y| y.cmp(x));
        if a.iter().zip(&b).any(|(x, y)| x > y) {
            return Ok(None);
        }
    }
    // place high-degree vertices first, then prefer vertices with many
    // already-placed neighbours
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u32;
    while order.len() < n {
        let v = (0..n)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| {
                (
                    (h.neighbors(v) & placed).count_ones(),
                    h_deg[v],
                    usize::MAX - v,
                )
            })
            .expect("unplaced vertex remains");
        placed |= 1 << v;
        order.push(v);
    }
    let mut map = vec![usize::MAX; n];
    let found = extend(h, host, &order, 0, &mut map, 0, &h_deg, &host_deg);
    Ok(found.then_some(map))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    h: &Graph,
    host: &Graph,
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: u32,
    h_deg: &[usize],
    host_deg: &[usize],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    let mut allowed = host.vertex_mask() & !used;
    for u in bits(h.neighbors(v)) {
        if map[u] != usize::MAX {
            allowed &= host.neighbors(map[u]);
        }
    }
    for x in bits(allowed) {
        if host_deg[x] < h_deg[v] {
            continue;
        }
        map[v] = x;
        if extend(
            h,
            host,
            order,
            depth + 1,
            map,
            used | 1 << x,
            h_deg,
            host_deg,
        ) {
            return true;
        }
    }
    map[v] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphFamily;
    use crate::testutil::{all_graphs, all_permutations};

    fn fam(f: GraphFamily) -> Graph {
        Graph::make(f).unwrap()
    }

    #[test]
    fn named_examples() {
        let p4 = fam(GraphFamily::Path(4));
        let c4 = fam(GraphFamily::Cycle(4));
        let claw = fam(GraphFamily::Star(3));
        let k22 = fam(GraphFamily::CompleteBipartite(2, 2));
        assert!(embeds_as_spanning_subgraph(&p4, &c4).unwrap());
        assert!(!embeds_as_spanning_subgraph(&claw, &p4).unwrap());
        assert!(embeds_as_spanning_subgraph(&c4, &k22).unwrap());
        assert!(embeds_as_spanning_subgraph(&k22, &c4).unwrap());
        assert!(embeds_as_spanning_subgraph(&p4, &p4.complement()).unwrap());
        assert!(embeds_as_spanning_subgraph(&p4, &Graph::empty(3).unwrap()).is_err());
    }

    #[test]
    fn returned_map_is_valid() {
        let pet = Graph::petersen();
        // Petersen is traceable but not Hamiltonian
        let p10 = fam(GraphFamily::Path(10));
        let c10 = fam(GraphFamily::Cycle(10));
        assert!(!embeds_as_spanning_subgraph(&c10, &pet).unwrap());
        let map = find_spanning_embedding(&p10, &pet).unwrap().unwrap();
        for e in p10.edges() {
            assert!(pet.has_edge(map[e.lo()], map[e.hi()]));
        }
    }

    #[test]
    fn agrees_with_brute_force_on_five() {
        let perms = all_permutations(5);
        let graphs: Vec<Graph> = all_graphs(5).step_by(7).collect();
        for h in &graphs {
            for host in graphs.iter().step_by(5) {
                let brute = perms
                    .iter()
                    .any(|p| h.edges().all(|e| host.has_edge(p[e.lo()], p[e.hi()])));
                assert_eq!(embeds_as_spanning_subgraph(h, host).unwrap(), brute);
            }
        }
    }
}

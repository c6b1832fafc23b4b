use crate::error::Result;
use crate::graph::{bits, Graph};

use super::{check_order, limits, WidthCertificate};

const INF: u8 = u8::MAX;

/// Exact tree-width by dynamic programming over elimination prefixes,
/// pruned by a greedy upper bound and a degeneracy lower bound.
pub fn treewidth(g: &Graph) -> Result<(usize, WidthCertificate)> {
    check_order(g, "tree-width", limits::TREEWIDTH)?;
    let n = g.n();
    let (ub, greedy) = min_fill_ordering(g);
    if n == 0 || degeneracy(g) == ub {
        return Ok((ub, WidthCertificate::EliminationOrdering { order: greedy }));
    }

    // tw[s]: best width of eliminating exactly the set s first, INF when
    // every such prefix already reaches the greedy bound.
    let size = 1usize << n;
    let mut tw = vec![INF; size];
    tw[0] = 0;
    for s in 1..size as u32 {
        let mut best = INF;
        for v in bits(s) {
            let rest = s & !(1 << v);
            let prev = tw[rest as usize];
            if prev >= best {
                continue;
            }
            let q = elimination_degree(g, rest, v);
            best = best.min(prev.max(q));
        }
        tw[s as usize] = if (best as usize) < ub { best } else { INF };
    }

    let all = g.vertex_mask();
    if tw[all as usize] == INF {
        return Ok((ub, WidthCertificate::EliminationOrdering { order: greedy }));
    }

    let mut order = Vec::with_capacity(n);
    let mut s = all;
    while s != 0 {
        let target = tw[s as usize];
        let v = bits(s)
            .find(|&v| {
                let rest = s & !(1 << v);
                tw[rest as usize] != INF
                    && tw[rest as usize].max(elimination_degree(g, rest, v)) == target
            })
            .expect("treewidth table is consistent");
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    Ok((
        tw[all as usize] as usize,
        WidthCertificate::EliminationOrdering { order },
    ))
}

/// Number of not-yet-eliminated vertices adjacent to `v` in the filled
/// graph after eliminating `done`.
fn elimination_degree(g: &Graph, done: u32, v: usize) -> u8 {
    let comp = g.reach(1 << v, done | 1 << v);
    let mut nb = 0u32;
    for u in bits(comp) {
        nb |= g.neighbors(u);
    }
    (nb & !done & !(1 << v)).count_ones() as u8
}

/// Greedy min-fill elimination; returns its width and ordering.
fn min_fill_ordering(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.n();
    let mut adj: Vec<u32> = g.rows().to_vec();
    let mut left = g.vertex_mask();
    let mut order = Vec::with_capacity(n);
    let mut width = 0;
    while left != 0 {
        let mut pick = usize::MAX;
        let mut pick_key = (usize::MAX, usize::MAX);
        for v in bits(left) {
            let nb = adj[v] & left;
            let mut fill = 0;
            for u in bits(nb) {
                fill += (nb & !adj[u] & !(1 << u)).count_ones() as usize;
            }
            let key = (fill / 2, nb.count_ones() as usize);
            if key < pick_key {
                pick_key = key;
                pick = v;
            }
        }
        let nb = adj[pick] & left;
        width = width.max(nb.count_ones() as usize);
        for u in bits(nb) {
            adj[u] |= nb & !(1 << u);
        }
        left &= !(1 << pick);
        order.push(pick);
    }
    (width, order)
}

/// Largest minimum degree over all subgraphs, a lower bound on tree-width.
pub(crate) fn degeneracy(g: &Graph) -> usize {
    let mut left = g.vertex_mask();
    let mut best = 0;
    while left != 0 {
        let v = bits(left)
            .min_by_key(|&v| (g.neighbors(v) & left).count_ones())
            .unwrap();
        best = best.max((g.neighbors(v) & left).count_ones() as usize);
        left &= !(1 << v);
    }
    best
}

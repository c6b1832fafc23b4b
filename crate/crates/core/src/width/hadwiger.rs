use std::collections::HashSet;

use crate::error::Result;
use crate::graph::{bits, canonical_code, CanonCode, Graph};

use super::clique::max_clique_unchecked;
use super::{check_order, limits, WidthCertificate};

/// Hadwiger number with branch sets of a largest clique minor.
///
/// Works per component. A connected graph has a `K_k` minor exactly when
/// it contracts onto `K_k`, so the decision search only contracts edges.
pub fn hadwiger(g: &Graph) -> Result<(usize, WidthCertificate)> {
    check_order(g, "Hadwiger number", limits::HADWIGER)?;
    let mut best: Vec<Vec<usize>> = if g.n() > 0 { vec![vec![0]] } else { Vec::new() };
    for comp in g.components() {
        if comp.count_ones() < 2 {
            continue;
        }
        let verts: Vec<usize> = bits(comp).collect();
        let h = g.induced_subgraph(comp)?;
        let sets = connected_hadwiger(&h);
        if sets.len() > best.len() {
            best = sets
                .into_iter()
                .map(|s| bits(s).map(|i| verts[i]).collect())
                .collect();
        }
    }
    Ok((best.len(), WidthCertificate::BranchSets { sets: best }))
}

fn connected_hadwiger(g: &Graph) -> Vec<u32> {
    let omega = max_clique_unchecked(g);
    let mut best: Vec<u32> = bits(omega).map(|v| 1 << v).collect();
    let groups: Vec<u32> = (0..g.n()).map(|v| 1 << v).collect();
    let m = g.edge_count();
    let mut k = best.len() + 1;
    while k * (k - 1) / 2 <= m && k <= g.n() {
        let mut failed = HashSet::new();
        match contracts_to(g, &groups, k, &mut failed) {
            Some(sets) => best = sets,
            None => break,
        }
        k += 1;
    }
    best
}

/// Searches for a sequence of contractions turning `g` into a graph with a
/// `k`-clique; `groups[v]` holds the original vertices merged into `v`.
fn contracts_to(
    g: &Graph,
    groups: &[u32],
    k: usize,
    failed: &mut HashSet<CanonCode>,
) -> Option<Vec<u32>> {
    let n = g.n();
    if n < k || g.edge_count() < k * (k - 1) / 2 {
        return None;
    }
    let clique = max_clique_unchecked(g);
    if clique.count_ones() as usize >= k {
        return Some(bits(clique).take(k).map(|v| groups[v]).collect());
    }
    if n == k {
        return None;
    }
    let code = canonical_code(g);
    if failed.contains(&code) {
        return None;
    }

    // a vertex of degree below k - 1 cannot be a branch set on its own
    let low = (0..n)
        .filter(|&v| g.degree(v) + 1 < k)
        .min_by_key(|&v| g.degree(v));
    let mut edges: Vec<(usize, usize)> = match low {
        Some(x) => bits(g.neighbors(x)).map(|y| (x, y)).collect(),
        None => g.edges().map(|e| (e.lo(), e.hi())).collect(),
    };
    edges.sort_by_key(|&(a, b)| ((g.neighbors(a) & g.neighbors(b)).count_ones(), a, b));

    for (a, b) in edges {
        let (h, merged) = contract(g, groups, a, b);
        if let Some(sets) = contracts_to(&h, &merged, k, failed) {
            return Some(sets);
        }
    }
    failed.insert(code);
    None
}

/// Contracts edge `ab`, keeping the smaller label and shifting the rest down.
fn contract(g: &Graph, groups: &[u32], a: usize, b: usize) -> (Graph, Vec<u32>) {
    let (keep, gone) = if a < b { (a, b) } else { (b, a) };
    let n = g.n();
    let map = |v: usize| {
        if v > gone {
            v - 1
        } else if v == gone {
            keep
        } else {
            v
        }
    };
    let mut edges = Vec::new();
    for e in g.edges() {
        let (x, y) = (map(e.lo()), map(e.hi()));
        if x != y {
            edges.push((x, y));
        }
    }
    let h = Graph::from_edges(n - 1, &edges).expect("contraction stays in range");
    let mut merged: Vec<u32> = Vec::with_capacity(n - 1);
    for v in 0..n {
        if v == gone {
            continue;
        }
        let mut s = groups[v];
        if v == keep {
            s |= groups[gone];
        }
        merged.push(s);
    }
    (h, merged)
}

use crate::error::Result;
use crate::graph::{bits, Graph};

use super::{check_order, limits};

pub fn clique_number(g: &Graph) -> Result<usize> {
    max_clique(g).map(|(w, _)| w)
}

/// Maximum clique by pivoting Bron-Kerbosch; returns its size and vertex mask.
pub fn max_clique(g: &Graph) -> Result<(usize, u32)> {
    check_order(g, "clique number", limits::CLIQUE)?;
    let mut best = 0u32;
    expand(g, 0, g.vertex_mask(), 0, &mut best);
    Ok((best.count_ones() as usize, best))
}

pub(crate) fn max_clique_unchecked(g: &Graph) -> u32 {
    let mut best = 0u32;
    expand(g, 0, g.vertex_mask(), 0, &mut best);
    best
}

fn expand(g: &Graph, r: u32, mut p: u32, mut x: u32, best: &mut u32) {
    if p == 0 {
        if x == 0 && r.count_ones() > best.count_ones() {
            *best = r;
        }
        return;
    }
    if r.count_ones() + p.count_ones() <= best.count_ones() {
        return;
    }
    let pivot = bits(p | x)
        .max_by_key(|&u| (g.neighbors(u) & p).count_ones())
        .unwrap();
    for v in bits(p & !g.neighbors(pivot)) {
        let nv = g.neighbors(v);
        expand(g, r | 1 << v, p & nv, x & nv, best);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

pub fn chromatic_number(g: &Graph) -> Result<usize> {
    coloring(g).map(|(k, _)| k)
}

/// Optimal proper colouring, colours numbered from 0.
pub fn coloring(g: &Graph) -> Result<(usize, Vec<usize>)> {
    check_order(g, "chromatic number", limits::CHROMATIC)?;
    let n = g.n();
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let lower = max_clique_unchecked(g).count_ones() as usize;
    let mut k = lower.max(1);
    loop {
        let mut colors = vec![usize::MAX; n];
        if color_with(g, k, &mut colors, 0) {
            return Ok((k, colors));
        }
        k += 1;
    }
}

/// Backtracking k-colouring, always branching on the most saturated vertex.
fn color_with(g: &Graph, k: usize, colors: &mut [usize], used: usize) -> bool {
    let n = colors.len();
    let mut pick = None;
    let mut pick_key = (0, 0);
    for v in 0..n {
        if colors[v] != usize::MAX {
            continue;
        }
        let mut seen = 0u32;
        for u in bits(g.neighbors(v)) {
            if colors[u] != usize::MAX {
                seen |= 1 << colors[u];
            }
        }
        let key = (seen.count_ones() as usize + 1, g.degree(v) + 1);
        if pick.is_none() || key > pick_key {
            pick = Some((v, seen));
            pick_key = key;
        }
    }
    let Some((v, seen)) = pick else {
        return true;
    };
    // a fresh colour is interchangeable with every other unused one
    let limit = k.min(used + 1);
    for c in 0..limit {
        if seen >> c & 1 == 1 {
            continue;
        }
        colors[v] = c;
        if color_with(g, k, colors, used.max(c + 1)) {
            return true;
        }
    }
    colors[v] = usize::MAX;
    false
}

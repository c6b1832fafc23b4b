//! Helpers shared by unit tests.

use rand::Rng;

use crate::graph::{pair_count, Graph};

pub(crate) fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    for j in 1..n {
        for i in 0..j {
            if rng.gen_bool(p) {
                g.set_edge(i, j);
            }
        }
    }
    g
}

/// Every labeled graph on `n <= 6` vertices.
pub(crate) fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    (0..1u128 << pair_count(n)).map(move |m| Graph::from_edge_bits(n, m).unwrap())
}

pub(crate) fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn adjacent(g: &Graph, a: usize, b: usize) -> bool {
    g.neighbors(a) >> b & 1 == 1
}

/// Tree-width by trying every elimination ordering.
pub(crate) fn brute_treewidth(g: &Graph) -> usize {
    let n = g.n();
    let mut best = n.saturating_sub(1);
    for order in all_permutations(n) {
        let mut adj: Vec<Vec<bool>> = (0..n)
            .map(|a| (0..n).map(|b| adjacent(g, a, b)).collect())
            .collect();
        let mut width = 0;
        for (i, &v) in order.iter().enumerate() {
            let later: Vec<usize> = order[i + 1..]
                .iter()
                .copied()
                .filter(|&u| adj[v][u])
                .collect();
            width = width.max(later.len());
            for &a in &later {
                for &b in &later {
                    adj[a][b] |= a != b;
                }
            }
        }
        best = best.min(width);
    }
    best
}

/// Path-width by trying every layout.
pub(crate) fn brute_pathwidth(g: &Graph) -> usize {
    let n = g.n();
    let mut best = n.saturating_sub(1);
    for order in all_permutations(n) {
        let mut width = 0;
        for i in 0..n {
            let count = order[..=i]
                .iter()
                .filter(|&&u| order[i + 1..].iter().any(|&w| adjacent(g, u, w)))
                .count();
            width = width.max(count);
        }
        best = best.min(width);
    }
    best
}

/// Largest clique minor by trying every partition into branch sets plus a
/// block of deleted vertices.
pub(crate) fn brute_hadwiger(g: &Graph) -> usize {
    fn connected(g: &Graph, set: u32) -> bool {
        let start = set & set.wrapping_neg();
        g.reach(start, set) == set
    }
    fn rec(g: &Graph, v: usize, blocks: &mut Vec<u32>, best: &mut usize) {
        if v == g.n() {
            if blocks.len() <= *best || !blocks.iter().all(|&b| connected(g, b)) {
                return;
            }
            for i in 0..blocks.len() {
                for j in i + 1..blocks.len() {
                    let touch =
                        crate::graph::bits(blocks[i]).any(|a| g.neighbors(a) & blocks[j] != 0);
                    if !touch {
                        return;
                    }
                }
            }
            *best = blocks.len();
            return;
        }
        rec(g, v + 1, blocks, best);
        for i in 0..blocks.len() {
            blocks[i] |= 1 << v;
            rec(g, v + 1, blocks, best);
            blocks[i] &= !(1 << v);
        }
        blocks.push(1 << v);
        rec(g, v + 1, blocks, best);
        blocks.pop();
    }
    let mut best = 0;
    rec(g, 0, &mut Vec::new(), &mut best);
    best
}

/// Every host graph (as neighbourhood rows) of the given shape on `n`
/// labeled vertices, generated straight from the construction rules.
/// `rule`: 0 caterpillar, 1 linear, 2 two-sided.
pub(crate) fn all_hosts(n: usize, k: usize, rule: u8) -> std::collections::HashSet<Vec<u32>> {
    use std::collections::HashSet;
    struct Gen {
        n: usize,
        k: usize,
        rule: u8,
        out: HashSet<Vec<u32>>,
    }
    impl Gen {
        fn step(
            &mut self,
            adj: &mut Vec<u32>,
            present: u32,
            newest: u32,
            prev: Option<usize>,
            used: &mut Vec<u32>,
        ) {
            if present.count_ones() as usize == self.n {
                self.out.insert(adj.clone());
                return;
            }
            for f in 0u32..1 << self.n {
                if f.count_ones() as usize != self.k || f & !present != 0 {
                    continue;
                }
                if crate::graph::bits(f).any(|a| f & !(1 << a) & !adj[a] != 0) {
                    continue;
                }
                let ok = match self.rule {
                    0 => f & !newest == 0,
                    1 => f & !newest == 0 && (self.k == 0 || prev.is_none_or(|p| f >> p & 1 == 1)),
                    _ => {
                        self.k == 0
                            || used.contains(&f)
                            || crate::graph::bits(f).any(|a| adj[a].count_ones() as usize == self.k)
                    }
                };
                if !ok {
                    continue;
                }
                for w in 0..self.n {
                    if present >> w & 1 == 1 {
                        continue;
                    }
                    for a in crate::graph::bits(f) {
                        adj[a] |= 1 << w;
                    }
                    adj[w] = f;
                    let fresh = !used.contains(&f);
                    if fresh {
                        used.push(f);
                    }
                    self.step(adj, present | 1 << w, f | 1 << w, Some(w), used);
                    if fresh {
                        used.pop();
                    }
                    adj[w] = 0;
                    for a in crate::graph::bits(f) {
                        adj[a] &= !(1 << w);
                    }
                }
            }
        }
    }
    let mut gen = Gen {
        n,
        k,
        rule,
        out: HashSet::new(),
    };
    for seed in 0u32..1 << n {
        if seed.count_ones() as usize != k + 1 {
            continue;
        }
        let mut adj = vec![0u32; n];
        for a in crate::graph::bits(seed) {
            adj[a] = seed & !(1 << a);
        }
        gen.step(&mut adj, seed, seed, None, &mut Vec::new());
    }
    gen.out
}

/// Smallest k whose host family contains `g`, from precomputed host sets.
pub(crate) fn smallest_host_width(
    g: &Graph,
    hosts: &[std::collections::HashSet<Vec<u32>>],
) -> usize {
    let rows = g.rows();
    for (k, set) in hosts.iter().enumerate() {
        if set
            .iter()
            .any(|h| rows.iter().zip(h).all(|(r, hr)| r & !hr == 0))
        {
            return k;
        }
    }
    unreachable!("K_n is in every family")
}

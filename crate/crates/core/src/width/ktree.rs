//! Search for a k-tree host of a restricted shape containing a graph as a
//! spanning subgraph.
//!
//! A host is grown from a seed clique `K_{k+1}` by repeatedly adding a
//! vertex adjacent to a k-clique (a facet). The three rules restrict which
//! facets may be used:
//!
//! * caterpillar: any facet of the most recently created (k+1)-clique;
//! * linear: as caterpillar, but the facet must contain the vertex added
//!   in the previous step;
//! * two-sided: a facet that holds a vertex of degree k, or one that has
//!   already been used.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::graph::{bits, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HostRule {
    Caterpillar,
    Linear,
    TwoSided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HostStep {
    pub vertex: usize,
    pub facet: Vec<usize>,
}

/// Construction sequence of a k-tree host on the graph's own vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTreeHost {
    pub rule: HostRule,
    pub k: usize,
    pub seed: Vec<usize>,
    pub steps: Vec<HostStep>,
}

/// Finds a host of the given shape and width `k`, if one exists.
pub fn find_host(g: &Graph, k: usize, rule: HostRule) -> Option<KTreeHost> {
    let n = g.n();
    if n == 0 || n < k + 1 {
        return None;
    }
    let host_edges = k * (k + 1) / 2 + (n - k - 1) * k;
    if g.edge_count() > host_edges {
        return None;
    }
    if k == 0 {
        if g.has_edges() {
            return None;
        }
        return Some(KTreeHost {
            rule,
            k,
            seed: vec![0],
            steps: (1..n)
                .map(|v| HostStep {
                    vertex: v,
                    facet: Vec::new(),
                })
                .collect(),
        });
    }

    let mut search = Search {
        g,
        rule,
        full: g.vertex_mask(),
        failed: HashSet::new(),
        path: Vec::new(),
    };
    let mut seed = (1u32 << (k + 1)) - 1;
    let limit = 1u64 << n;
    while (seed as u64) < limit {
        let start = State {
            placed: seed,
            clique: seed,
            last: None,
            persistent: Vec::new(),
            leaves: vec![(seed, seed)],
        };
        if search.dfs(&start) {
            return Some(KTreeHost {
                rule,
                k,
                seed: bits(seed).collect(),
                steps: search
                    .path
                    .iter()
                    .map(|&(v, f)| HostStep {
                        vertex: v,
                        facet: bits(f).collect(),
                    })
                    .collect(),
            });
        }
        seed = next_same_popcount(seed);
    }
    None
}

/// Next larger integer with the same number of set bits.
fn next_same_popcount(x: u32) -> u32 {
    let c = x & x.wrapping_neg();
    let r = x.wrapping_add(c);
    if r == 0 {
        return u32::MAX;
    }
    (((r ^ x) >> 2) / c) | r
}

#[derive(Clone, Debug)]
struct State {
    placed: u32,
    // caterpillar and linear
    clique: u32,
    last: Option<usize>,
    // two-sided: facets used so far, and (k+1)-cliques that still have a
    // vertex of degree k together with those vertices
    persistent: Vec<u32>,
    leaves: Vec<(u32, u32)>,
}

#[derive(Clone, Copy, Debug)]
enum Facet {
    Drop,
    Persistent,
    Leaf(usize, usize),
}

struct Search<'a> {
    g: &'a Graph,
    rule: HostRule,
    full: u32,
    failed: HashSet<Vec<u32>>,
    path: Vec<(usize, u32)>,
}

impl Search<'_> {
    fn open(&self, placed: u32) -> u32 {
        bits(placed)
            .filter(|&u| self.g.neighbors(u) & !placed != 0)
            .fold(0, |acc, u| acc | 1 << u)
    }

    fn facets(&self, st: &State) -> Vec<(u32, Facet)> {
        let mut out = Vec::new();
        match self.rule {
            HostRule::Caterpillar | HostRule::Linear => {
                for u in bits(st.clique) {
                    if self.rule == HostRule::Linear && st.last == Some(u) {
                        continue;
                    }
                    out.push((st.clique & !(1 << u), Facet::Drop));
                }
            }
            HostRule::TwoSided => {
                for &f in &st.persistent {
                    out.push((f, Facet::Persistent));
                }
                for (i, &(c, d)) in st.leaves.iter().enumerate() {
                    for x in bits(c) {
                        let f = c & !(1 << x);
                        if f & d != 0 {
                            out.push((f, Facet::Leaf(i, x)));
                        }
                    }
                }
            }
        }
        out
    }

    fn apply(&self, st: &State, f: u32, facet: Facet, w: usize) -> State {
        let mut next = st.clone();
        next.placed |= 1 << w;
        match facet {
            Facet::Drop => {
                next.clique = f | 1 << w;
                next.last = Some(w);
            }
            Facet::Persistent => {
                next.leaves.push((f | 1 << w, 1 << w));
            }
            Facet::Leaf(i, x) => {
                let (c, d) = next.leaves.swap_remove(i);
                if d >> x & 1 == 1 {
                    next.leaves.push((c, 1 << x));
                }
                if !next.persistent.contains(&f) {
                    next.persistent.push(f);
                }
                next.leaves.push((f | 1 << w, 1 << w));
            }
        }
        next
    }

    /// Memo key: vertices whose neighbourhood is fully placed can never
    /// matter again, so only their number inside each clique is kept.
    fn key(&self, st: &State, open: u32) -> Vec<u32> {
        let mut key = vec![st.placed];
        match self.rule {
            HostRule::Caterpillar => key.push(st.clique & open),
            HostRule::Linear => {
                key.push(st.clique & open);
                key.push(match st.last {
                    None => u32::MAX,
                    Some(l) if open >> l & 1 == 1 => l as u32,
                    Some(_) => u32::MAX - 1,
                });
            }
            HostRule::TwoSided => {
                let mut pers: Vec<u32> = st.persistent.iter().map(|f| f & open).collect();
                pers.sort_unstable();
                pers.dedup();
                key.extend(pers);
                key.push(u32::MAX);
                let mut leaves: Vec<(u32, u32, u32)> = st
                    .leaves
                    .iter()
                    .map(|&(c, d)| (c & open, d & open, (d & !open).count_ones()))
                    .collect();
                leaves.sort_unstable();
                for (a, b, c) in leaves {
                    key.extend([a, b, c]);
                }
            }
        }
        key
    }

    fn dfs(&mut self, st: &State) -> bool {
        if st.placed == self.full {
            return true;
        }
        let open = self.open(st.placed);
        let facets = self.facets(st);
        let reachable = facets.iter().fold(0, |acc, &(f, _)| acc | f);
        if open & !reachable != 0 {
            return false;
        }
        let key = self.key(st, open);
        if self.failed.contains(&key) {
            return false;
        }

        let mut cands: Vec<(usize, u32)> = bits(self.full & !st.placed)
            .map(|w| (w, self.g.neighbors(w) & st.placed))
            .collect();
        cands.sort_by_key(|&(w, need)| (std::cmp::Reverse(need.count_ones()), w));
        for (w, need) in cands {
            for &(f, facet) in &facets {
                if need & !f != 0 {
                    continue;
                }
                let next = self.apply(st, f, facet, w);
                self.path.push((w, f));
                if self.dfs(&next) {
                    return true;
                }
                self.path.pop();
            }
        }
        self.failed.insert(key);
        false
    }
}

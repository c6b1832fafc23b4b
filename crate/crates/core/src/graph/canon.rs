//! Canonical labeling by equitable refinement and individualization.
//!
//! The search tree is the usual one: refine the ordered partition to an
//! equitable one, individualize each vertex of the first smallest
//! non-singleton cell in turn, recurse. Leaves are discrete partitions and
//! the canonical code is the least relabeled adjacency matrix over all
//! leaves. Two prunings keep symmetric graphs cheap:
//!
//! * a leaf equivalent to the first leaf yields an automorphism, and the
//!   search backs up to the level where the two paths diverge;
//! * children in the same orbit of the automorphisms found so far that fix
//!   the current prefix pointwise are skipped.

use std::fmt;

use super::{bits, Graph, MAX_ORDER};

/// Isomorphism-class key: the relabeled adjacency rows of the canonical
/// labeling. Two graphs have equal codes iff they are isomorphic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonCode {
    n: u8,
    rows: [u32; MAX_ORDER],
}

impl CanonCode {
    pub fn order(&self) -> usize {
        self.n as usize
    }

    /// The canonical representative graph.
    pub fn to_graph(&self) -> Graph {
        Graph::from_rows(&self.rows[..self.order()]).expect("canonical rows are a valid graph")
    }

    /// Byte-string form: order, then each row little-endian in
    /// `ceil(n/8)` bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        let n = self.order();
        let width = n.div_ceil(8);
        let mut out = Vec::with_capacity(1 + n * width);
        out.push(self.n);
        for &row in &self.rows[..n] {
            out.extend_from_slice(&row.to_le_bytes()[..width]);
        }
        out
    }
}

impl fmt::Debug for CanonCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonCode({})", self.to_graph())
    }
}

pub fn canonical_code(g: &Graph) -> CanonCode {
    canonical_form(g).0
}

/// Canonical code together with the labeling that produces it:
/// `labeling[p]` is the vertex of `g` placed at position `p`.
pub fn canonical_form(g: &Graph) -> (CanonCode, Vec<usize>) {
    let n = g.n();
    if n == 1 {
        return (
            CanonCode {
                n: 1,
                rows: [0; MAX_ORDER],
            },
            vec![0],
        );
    }
    let mut search = Search {
        g,
        n,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    let mut cells = Cells::unit(g.vertex_mask());
    let mut prefix = Vec::with_capacity(n);
    search.node(&mut cells, &mut prefix);
    let (code, lab) = search.best.expect("search visits at least one leaf");
    (code, lab[..n].iter().map(|&v| v as usize).collect())
}

/// Ordered partition with each cell stored as a vertex mask.
#[derive(Clone)]
struct Cells {
    len: usize,
    cell: [u32; MAX_ORDER],
}

impl Cells {
    fn unit(all: u32) -> Self {
        let mut cell = [0; MAX_ORDER];
        cell[0] = all;
        Cells { len: 1, cell }
    }

    fn is_discrete(&self, n: usize) -> bool {
        self.len == n
    }

    /// Splits cells by neighbour counts into splitter cells until the
    /// partition is equitable. Fragments are ordered by ascending count, so
    /// the result depends only on structure and the incoming cell order.
    fn refine(&mut self, g: &Graph) {
        let mut splitter = 0;
        while splitter < self.len {
            let w = self.cell[splitter];
            let mut out = [0u32; MAX_ORDER];
            let mut out_len = 0;
            let mut split_any = false;
            for c in 0..self.len {
                let cell = self.cell[c];
                if cell.count_ones() == 1 {
                    out[out_len] = cell;
                    out_len += 1;
                    continue;
                }
                // counts are at most 32; bucket by count
                let mut buckets = [0u32; MAX_ORDER + 1];
                let mut used = 0u64;
                for v in bits(cell) {
                    let k = (g.neighbors(v) & w).count_ones() as usize;
                    buckets[k] |= 1 << v;
                    used |= 1 << k;
                }
                if used.count_ones() > 1 {
                    split_any = true;
                }
                let mut u = used;
                while u != 0 {
                    let k = u.trailing_zeros() as usize;
                    u &= u - 1;
                    out[out_len] = buckets[k];
                    out_len += 1;
                }
            }
            if split_any {
                self.cell = out;
                self.len = out_len;
                splitter = 0;
            } else {
                splitter += 1;
            }
        }
    }

    fn target(&self) -> usize {
        let mut best = usize::MAX;
        let mut best_size = u32::MAX;
        for c in 0..self.len {
            let size = self.cell[c].count_ones();
            if size > 1 && size < best_size {
                best = c;
                best_size = size;
            }
        }
        best
    }

    fn individualize(&self, target: usize, v: usize) -> Cells {
        let mut out = Cells {
            len: self.len + 1,
            cell: [0; MAX_ORDER],
        };
        out.cell[..target].copy_from_slice(&self.cell[..target]);
        out.cell[target] = 1 << v;
        out.cell[target + 1] = self.cell[target] & !(1 << v);
        out.cell[target + 2..self.len + 1].copy_from_slice(&self.cell[target + 1..self.len]);
        out
    }
}

type Labeling = [u8; MAX_ORDER];

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    first: Option<(CanonCode, Labeling, Vec<usize>)>,
    best: Option<(CanonCode, Labeling)>,
    /// Automorphisms as vertex maps.
    autos: Vec<Labeling>,
}

enum Outcome {
    Continue,
    /// Abandon every node deeper than the given level.
    BackTo(usize),
}

impl Search<'_> {
    fn node(&mut self, cells: &mut Cells, prefix: &mut Vec<usize>) -> Outcome {
        cells.refine(self.g);
        if cells.is_discrete(self.n) {
            return self.leaf(cells, prefix);
        }
        let depth = prefix.len();
        let target = cells.target();
        let candidates = cells.cell[target];
        let mut tried = 0u32;
        for v in bits(candidates) {
            if tried != 0 && self.equivalent_to_tried(prefix, tried, v) {
                continue;
            }
            tried |= 1 << v;
            let mut child = cells.individualize(target, v);
            prefix.push(v);
            let out = self.node(&mut child, prefix);
            prefix.pop();
            if let Outcome::BackTo(level) = out {
                if level < depth {
                    return out;
                }
            }
        }
        Outcome::Continue
    }

    fn equivalent_to_tried(&self, prefix: &[usize], tried: u32, v: usize) -> bool {
        // union-find over the generators that fix the prefix pointwise
        let mut parent: Labeling = [0; MAX_ORDER];
        for (i, p) in parent.iter_mut().enumerate().take(self.n) {
            *p = i as u8;
        }
        fn find(parent: &mut Labeling, mut x: usize) -> usize {
            while parent[x] as usize != x {
                parent[x] = parent[parent[x] as usize];
                x = parent[x] as usize;
            }
            x
        }
        let mut any = false;
        for gamma in &self.autos {
            if prefix.iter().any(|&p| gamma[p] as usize != p) {
                continue;
            }
            any = true;
            for x in 0..self.n {
                let a = find(&mut parent, x);
                let b = find(&mut parent, gamma[x] as usize);
                if a != b {
                    parent[a] = b as u8;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        bits(tried).any(|u| find(&mut parent, u) == root)
    }

    fn leaf(&mut self, cells: &Cells, prefix: &[usize]) -> Outcome {
        let mut lab: Labeling = [0; MAX_ORDER];
        let mut pos: Labeling = [0; MAX_ORDER];
        for p in 0..self.n {
            let v = cells.cell[p].trailing_zeros() as usize;
            lab[p] = v as u8;
            pos[v] = p as u8;
        }
        let mut rows = [0u32; MAX_ORDER];
        for p in 0..self.n {
            let mut row = 0u32;
            for u in bits(self.g.neighbors(lab[p] as usize)) {
                row |= 1 << pos[u];
            }
            rows[p] = row;
        }
        let code = CanonCode {
            n: self.n as u8,
            rows,
        };
        let Some((first_code, first_lab, first_prefix)) = &self.first else {
            self.first = Some((code, lab, prefix.to_vec()));
            self.best = Some((code, lab));
            return Outcome::Continue;
        };
        if code == *first_code {
            let gamma = compose(first_lab, &lab, self.n);
            self.autos.push(gamma);
            let diverge = first_prefix
                .iter()
                .zip(prefix)
                .position(|(a, b)| a != b)
                .unwrap_or(prefix.len().min(first_prefix.len()));
            return Outcome::BackTo(diverge);
        }
        let (best_code, best_lab) = self.best.as_ref().expect("best set with first");
        if code == *best_code {
            let gamma = compose(best_lab, &lab, self.n);
            self.autos.push(gamma);
        } else if code < *best_code {
            self.best = Some((code, lab));
        }
        Outcome::Continue
    }
}

/// Map sending `from[p]` to `to[p]` for every position `p`.
fn compose(from: &Labeling, to: &Labeling, n: usize) -> Labeling {
    let mut gamma: Labeling = [0; MAX_ORDER];
    for p in 0..n {
        gamma[from[p] as usize] = to[p];
    }
    gamma
}

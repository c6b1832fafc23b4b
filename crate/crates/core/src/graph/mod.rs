//! Small simple graphs stored as one neighbourhood word per vertex.

mod canon;
mod embed;
mod graph6;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub use canon::{canonical_code, canonical_form, CanonCode};
pub use embed::{embeds_as_spanning_subgraph, find_spanning_embedding};
pub use graph6::{graph6_emit, graph6_parse};

/// Storage capacity of [`Graph`]. Individual solvers enforce tighter limits.
pub const MAX_ORDER: usize = 32;

/// Iterates the positions of the set bits of `mask`, lowest first.
#[inline]
pub fn bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Mask with the lowest `n` bits set.
#[inline]
pub const fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Number of vertex pairs of an `n`-vertex graph.
#[inline]
pub const fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// An undirected edge `{i, j}` stored with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId {
    i: u8,
    j: u8,
}

impl EdgeId {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return domain(format!("self-loop at vertex {a}"));
        }
        if a.max(b) >= MAX_ORDER {
            return Err(Error::Capacity {
                what: "edge endpoint",
                requested: a.max(b) + 1,
                limit: MAX_ORDER,
            });
        }
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        Ok(EdgeId {
            i: i as u8,
            j: j as u8,
        })
    }

    pub fn lo(self) -> usize {
        self.i as usize
    }

    pub fn hi(self) -> usize {
        self.j as usize
    }

    /// Position of the edge in colex order: `(0,1), (0,2), (1,2), (0,3), ...`.
    ///
    /// The edges of the subgraph induced by `{0..k-1}` are exactly the first
    /// `k(k-1)/2` indices, which the orderly enumeration relies on.
    pub fn colex_index(self) -> usize {
        pair_count(self.hi()) + self.lo()
    }

    pub fn from_colex_index(idx: usize) -> Self {
        let mut j = 1;
        while pair_count(j + 1) <= idx {
            j += 1;
        }
        EdgeId {
            i: (idx - pair_count(j)) as u8,
            j: j as u8,
        }
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.i, self.j)
    }
}

/// Named graph families used throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphFamily {
    Complete(usize),
    Empty(usize),
    Path(usize),
    Cycle(usize),
    CompleteBipartite(usize, usize),
    /// `K_{1,leaves}` with the centre at vertex 0.
    Star(usize),
}

impl GraphFamily {
    pub fn order(&self) -> usize {
        match *self {
            GraphFamily::Complete(n)
            | GraphFamily::Empty(n)
            | GraphFamily::Path(n)
            | GraphFamily::Cycle(n) => n,
            GraphFamily::CompleteBipartite(a, b) => a + b,
            GraphFamily::Star(k) => k + 1,
        }
    }
}

/// Labeled simple graph on `n <= 32` vertices.
///
/// Bit `j` of `adj[i]` is set iff `{i, j}` is an edge. Rows beyond `n` are
/// zero so that derived equality and hashing are structural.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: u8,
    adj: [u32; MAX_ORDER],
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return domain("graphs need at least one vertex");
        }
        if n > MAX_ORDER {
            return Err(Error::Capacity {
                what: "graph",
                requested: n,
                limit: MAX_ORDER,
            });
        }
        Ok(Graph {
            n: n as u8,
            adj: [0; MAX_ORDER],
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        let all = full_mask(n);
        for v in 0..n {
            g.adj[v] = all & !(1 << v);
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(a, b) in edges {
            if a >= n || b >= n {
                return domain(format!("edge ({a},{b}) out of range for order {n}"));
            }
            g.add_edge(EdgeId::new(a, b)?);
        }
        Ok(g)
    }

    /// Builds a graph from raw rows, validating symmetry and irreflexivity.
    pub fn from_rows(rows: &[u32]) -> Result<Self> {
        let mut g = Graph::empty(rows.len())?;
        let n = rows.len();
        g.adj[..n].copy_from_slice(rows);
        g.check_invariants()?;
        Ok(g)
    }

    pub fn make(family: GraphFamily) -> Result<Self> {
        let n = family.order();
        let positive = match family {
            GraphFamily::CompleteBipartite(a, b) => a >= 1 && b >= 1,
            GraphFamily::Star(k) => k >= 1,
            GraphFamily::Cycle(n) => n >= 3,
            _ => n >= 1,
        };
        if !positive {
            return domain(format!("invalid family parameters {family:?}"));
        }
        if n > MAX_ORDER {
            return Err(Error::Capacity {
                what: "graph family",
                requested: n,
                limit: MAX_ORDER,
            });
        }
        let mut g = Graph::empty(n)?;
        match family {
            GraphFamily::Complete(_) => g = Graph::complete(n)?,
            GraphFamily::Empty(_) => {}
            GraphFamily::Path(_) => {
                for i in 1..n {
                    g.set_edge(i - 1, i);
                }
            }
            GraphFamily::Cycle(_) => {
                for i in 0..n {
                    g.set_edge(i, (i + 1) % n);
                }
            }
            GraphFamily::CompleteBipartite(a, b) => {
                for i in 0..a {
                    for j in a..a + b {
                        g.set_edge(i, j);
                    }
                }
            }
            GraphFamily::Star(k) => {
                for leaf in 1..=k {
                    g.set_edge(0, leaf);
                }
            }
        }
        Ok(g)
    }

    /// The Petersen graph: outer 5-cycle `0..4`, inner pentagram `5..9`.
    pub fn petersen() -> Self {
        let mut g = Graph::empty(10).expect("order 10 fits");
        for i in 0..5 {
            g.set_edge(i, (i + 1) % 5);
            g.set_edge(i, i + 5);
            g.set_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn vertex_mask(&self) -> u32 {
        full_mask(self.n())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u32 {
        self.adj[v]
    }

    pub fn rows(&self) -> &[u32] {
        &self.adj[..self.n()]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n() && (self.adj[a] >> b) & 1 == 1
    }

    /// Sets `{a,b}`; callers guarantee `a != b` and both are in range.
    #[inline]
    pub(crate) fn set_edge(&mut self, a: usize, b: usize) {
        debug_assert!(a != b && a < self.n() && b < self.n());
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    #[inline]
    pub(crate) fn clear_edge(&mut self, a: usize, b: usize) {
        self.adj[a] &= !(1 << b);
        self.adj[b] &= !(1 << a);
    }

    pub fn add_edge(&mut self, e: EdgeId) {
        assert!(e.hi() < self.n(), "edge {e} out of range");
        self.set_edge(e.lo(), e.hi());
    }

    pub fn remove_edge(&mut self, e: EdgeId) {
        if e.hi() < self.n() {
            self.clear_edge(e.lo(), e.hi());
        }
    }

    pub fn edge_count(&self) -> usize {
        self.rows()
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn has_edges(&self) -> bool {
        self.rows().iter().any(|&r| r != 0)
    }

    /// Edges in colex order.
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (1..self.n()).flat_map(move |j| {
            bits(self.adj[j] & full_mask(j)).map(move |i| EdgeId {
                i: i as u8,
                j: j as u8,
            })
        })
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == pair_count(self.n())
    }

    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n();
        for i in 0..MAX_ORDER {
            let row = self.adj[i];
            if i >= n {
                if row != 0 {
                    return domain(format!("row {i} beyond order {n} is non-zero"));
                }
                continue;
            }
            if row & !full_mask(n) != 0 {
                return domain(format!("row {i} has bits beyond order {n}"));
            }
            if (row >> i) & 1 == 1 {
                return domain(format!("self-loop at vertex {i}"));
            }
            for j in bits(row) {
                if (self.adj[j] >> i) & 1 == 0 {
                    return domain(format!("asymmetric adjacency between {i} and {j}"));
                }
            }
        }
        Ok(())
    }

    pub fn complement(&self) -> Graph {
        let mut g = *self;
        let all = self.vertex_mask();
        for v in 0..self.n() {
            g.adj[v] = !self.adj[v] & all & !(1 << v);
        }
        g
    }

    /// Subgraph induced by `set`, relabeled `0..|set|-1` in ascending order.
    pub fn induced_subgraph(&self, set: u32) -> Result<Graph> {
        let set = set & self.vertex_mask();
        if set == 0 {
            return domain("induced subgraph on an empty vertex set");
        }
        let verts: Vec<usize> = bits(set).collect();
        let mut g = Graph::empty(verts.len())?;
        for (a, &u) in verts.iter().enumerate() {
            for (b, &w) in verts.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, w) {
                    g.set_edge(a, b);
                }
            }
        }
        Ok(g)
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let mut g = Graph {
            n: self.n,
            adj: [0; MAX_ORDER],
        };
        for e in self.edges() {
            g.set_edge(perm[e.lo()], perm[e.hi()]);
        }
        g
    }

    /// Vertex masks of the connected components, ordered by least vertex.
    pub fn components(&self) -> Vec<u32> {
        let mut seen = 0u32;
        let mut out = Vec::new();
        for v in 0..self.n() {
            if seen >> v & 1 == 1 {
                continue;
            }
            let comp = self.reach(1 << v, self.vertex_mask());
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: u32, within: u32) -> u32 {
        let mut comp = start & within;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for u in bits(frontier) {
                next |= self.adj[u];
            }
            next &= within & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.reach(1, self.vertex_mask()) == self.vertex_mask()
    }

    /// Edge set as a bit vector over colex indices; needs `n <= 16`.
    pub fn edge_bits(&self) -> u128 {
        debug_assert!(self.n() <= 16);
        let mut out = 0u128;
        for e in self.edges() {
            out |= 1u128 << e.colex_index();
        }
        out
    }

    /// Inverse of [`Graph::edge_bits`].
    pub fn from_edge_bits(n: usize, mut edges: u128) -> Result<Graph> {
        if n > 16 {
            return Err(Error::Capacity {
                what: "edge-bit encoding",
                requested: n,
                limit: 16,
            });
        }
        let mut g = Graph::empty(n)?;
        while edges != 0 {
            let idx = edges.trailing_zeros() as usize;
            edges &= edges - 1;
            if idx >= pair_count(n) {
                return domain(format!("edge index {idx} out of range for order {n}"));
            }
            let e = EdgeId::from_colex_index(idx);
            g.set_edge(e.lo(), e.hi());
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (k, e) in self.edges().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}-{}", e.lo(), e.hi())?;
        }
        write!(f, "])")
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&graph6_emit(self))
    }
}

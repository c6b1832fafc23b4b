//! Orderly generation of edge colourings of K_n.
//!
//! A colouring is the vector of edge colours in colex order
//! `01, 02, 12, 03, 13, 23, ...`, so the colours among vertices `0..k` form
//! a prefix of length `C(k, 2)`. The representative of an orbit is its
//! lexicographically least vector. The least vector of an orbit restricts
//! to the least vector of the restriction, so representatives are built one
//! vertex at a time and an extension is kept iff it is itself least.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::constructions::Decomposition;
use crate::error::{domain, Error, Result};
use crate::graph::{pair_count, MAX_ORDER};

/// Group acting on colourings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryMode {
    /// Every labelled colouring.
    None,
    /// Orbits under vertex relabelling.
    Vertices,
    /// Orbits under vertex relabelling and colour permutation.
    #[default]
    Full,
}

impl fmt::Display for SymmetryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymmetryMode::None => "none",
            SymmetryMode::Vertices => "vertices",
            SymmetryMode::Full => "full",
        })
    }
}

impl FromStr for SymmetryMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" | "off" => Ok(SymmetryMode::None),
            "vertices" => Ok(SymmetryMode::Vertices),
            "full" | "on" => Ok(SymmetryMode::Full),
            _ => domain(format!("unknown symmetry mode '{s}'")),
        }
    }
}

/// Default ceiling on estimated search states; `NGW_MAX_STATES` overrides.
pub const DEFAULT_MAX_STATES: u64 = 50_000_000;

pub fn max_states_from_env() -> u64 {
    std::env::var("NGW_MAX_STATES")
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|v| *v >= 1.0)
        .map_or(DEFAULT_MAX_STATES, |v| v as u64)
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Rough count of extension tests the generation performs.
pub fn estimate_states(n: usize, r: usize, mode: SymmetryMode) -> f64 {
    let r = r as f64;
    let nodes = |k: usize| -> f64 {
        let all = r.powi(pair_count(k) as i32);
        let sym = match mode {
            SymmetryMode::None => 1.0,
            SymmetryMode::Vertices => factorial(k),
            SymmetryMode::Full => factorial(k) * factorial(r as usize).min(all.max(1.0)),
        };
        (all / sym).max(1.0)
    };
    (1..=n).map(|k| nodes(k - 1) * r.powi(k as i32 - 1)).sum()
}

pub(crate) fn check_capacity(n: usize, r: usize, mode: SymmetryMode, limit: u64) -> Result<f64> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::Capacity {
            what: "enumeration order",
            requested: n,
            limit: MAX_ORDER,
        });
    }
    if r == 0 || r > u8::MAX as usize {
        return domain(format!("r must be in 1..=255, got {r}"));
    }
    let estimated = estimate_states(n, r, mode);
    if estimated > limit as f64 {
        return Err(Error::StateLimit { estimated, limit });
    }
    Ok(estimated)
}

/// Whether the colouring of K_k given by `vec` is least in its orbit.
pub fn is_canonical(vec: &[u8], k: usize, r: usize, mode: SymmetryMode) -> bool {
    if mode == SymmetryMode::None || k <= 1 {
        return true;
    }
    let mut s = Least {
        vec,
        k,
        full: mode == SymmetryMode::Full,
        order: Vec::with_capacity(k),
        used: 0,
        sigma: vec![u8::MAX; r],
        next_color: 0,
    };
    !s.finds_smaller(0)
}

struct Least<'a> {
    vec: &'a [u8],
    k: usize,
    full: bool,
    /// `order[j]` is the original vertex put at position `j`.
    order: Vec<usize>,
    used: u32,
    sigma: Vec<u8>,
    next_color: u8,
}

fn colex(a: usize, b: usize) -> usize {
    let (i, j) = if a < b { (a, b) } else { (b, a) };
    pair_count(j) + i
}

impl Least<'_> {
    /// Looks for a relabelling whose vector beats `vec`, extending the
    /// current prefix that ties with it.
    fn finds_smaller(&mut self, j: usize) -> bool {
        if j == self.k {
            return false;
        }
        for v in 0..self.k {
            if self.used >> v & 1 == 1 {
                continue;
            }
            let mut assigned = Vec::new();
            let mut verdict = std::cmp::Ordering::Equal;
            for i in 0..j {
                let mut c = self.vec[colex(self.order[i], v)];
                if self.full {
                    if self.sigma[c as usize] == u8::MAX {
                        self.sigma[c as usize] = self.next_color;
                        self.next_color += 1;
                        assigned.push(c);
                    }
                    c = self.sigma[c as usize];
                }
                verdict = c.cmp(&self.vec[pair_count(j) + i]);
                if verdict.is_ne() {
                    break;
                }
            }
            let smaller = match verdict {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Equal => {
                    self.order.push(v);
                    self.used |= 1 << v;
                    let found = self.finds_smaller(j + 1);
                    self.order.pop();
                    self.used &= !(1 << v);
                    found
                }
            };
            for c in assigned {
                self.sigma[c as usize] = u8::MAX;
                self.next_color -= 1;
            }
            if smaller {
                return true;
            }
        }
        false
    }
}

/// Depth-first generation below a fixed prefix, in lexicographic order.
pub struct Colorings {
    n: usize,
    r: usize,
    mode: SymmetryMode,
    base: usize,
    depth: usize,
    vec: Vec<u8>,
    counters: Vec<u64>,
    done: bool,
    accepted: u64,
}

impl Colorings {
    /// All representatives of colourings of K_n.
    pub fn new(n: usize, r: usize, mode: SymmetryMode) -> Self {
        Self::below(n, r, mode, Vec::new(), 0)
    }

    /// Representatives extending `prefix`, a representative on `depth` vertices.
    pub(crate) fn below(
        n: usize,
        r: usize,
        mode: SymmetryMode,
        prefix: Vec<u8>,
        depth: usize,
    ) -> Self {
        debug_assert_eq!(prefix.len(), pair_count(depth));
        Colorings {
            n,
            r,
            mode,
            base: depth,
            depth,
            vec: prefix,
            counters: vec![0; n + 1],
            done: false,
            accepted: 0,
        }
    }

    /// Number of accepted extensions so far, leaves included.
    pub fn accepted(&self) -> u64 {
        self.accepted
    }

    fn pop(&mut self) {
        self.depth -= 1;
        self.vec.truncate(pair_count(self.depth));
    }
}

impl Iterator for Colorings {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        if self.base == self.n {
            self.done = true;
            return Some(self.vec.clone());
        }
        loop {
            let k = self.depth;
            if k == self.n {
                self.pop();
                continue;
            }
            let total = (self.r as u64).saturating_pow(k as u32);
            let idx = self.counters[k];
            if idx == total {
                if k == self.base {
                    self.done = true;
                    return None;
                }
                self.pop();
                continue;
            }
            self.counters[k] += 1;
            let start = self.vec.len();
            let mut x = idx;
            self.vec.resize(start + k, 0);
            for i in (0..k).rev() {
                self.vec[start + i] = (x % self.r as u64) as u8;
                x /= self.r as u64;
            }
            if is_canonical(&self.vec, k + 1, self.r, self.mode) {
                self.accepted += 1;
                self.depth = k + 1;
                if k + 1 == self.n {
                    return Some(self.vec.clone());
                }
                self.counters[k + 1] = 0;
            } else {
                self.vec.truncate(start);
            }
        }
    }
}

pub(crate) fn uses_every_color(vec: &[u8], r: usize) -> bool {
    let mut seen = vec![false; r];
    for &c in vec {
        seen[c as usize] = true;
    }
    seen.into_iter().all(|b| b)
}

pub(crate) fn to_decomposition(n: usize, r: usize, vec: &[u8]) -> Decomposition {
    Decomposition::from_assignment(n, r, |e| vec[e.colex_index()] as usize)
        .expect("colour vector is a valid assignment")
}

/// Representative colour vectors, after the capacity guard.
pub fn enumerate_colorings(
    n: usize,
    r: usize,
    nondegenerate: bool,
    mode: SymmetryMode,
) -> Result<impl Iterator<Item = Vec<u8>>> {
    check_capacity(n, r, mode, max_states_from_env())?;
    Ok(Colorings::new(n, r, mode).filter(move |v| !nondegenerate || uses_every_color(v, r)))
}

/// Every r-decomposition of K_n once (or once per orbit).
pub fn enumerate_decompositions(
    n: usize,
    r: usize,
    nondegenerate: bool,
    mode: SymmetryMode,
) -> Result<impl Iterator<Item = Decomposition>> {
    Ok(enumerate_colorings(n, r, nondegenerate, mode)?.map(move |v| to_decomposition(n, r, &v)))
}

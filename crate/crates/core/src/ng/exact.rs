//! Exhaustive optimum over decompositions, split into fixed work units.

use std::cmp::Ordering;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::{
    check_capacity, max_states_from_env, to_decomposition, uses_every_color, Colorings,
    SymmetryMode,
};
use super::NgQuery;
use crate::bounds::Direction;
use crate::constructions::{combine, Decomposition};
use crate::error::{Error, Result};
use crate::graph::{pair_count, EdgeId, Graph};
use crate::width::{check_order, SolverCache, ValueInterval};

/// Units are the representatives on the first few vertices; this many at
/// least, when the tree is that wide.
const MIN_UNITS: usize = 64;
/// Units per checkpoint.
const CHUNK: usize = 16;

#[derive(Clone, Debug, Default)]
pub struct NgOptions {
    pub symmetry: SymmetryMode,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Overrides `NGW_MAX_STATES`.
    pub max_states: Option<u64>,
    /// Progress file; an existing file for the same query is resumed.
    pub checkpoint: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NgResult {
    pub query: NgQuery,
    pub symmetry: SymmetryMode,
    /// Exact when `lo == hi`; for mu, nu, xi the optimum of each endpoint.
    pub value: ValueInterval,
    /// Optimal decomposition: attains the lower endpoint for maxima and
    /// the upper endpoint for minima. Least colour vector among ties.
    pub witness: Decomposition,
    pub witness_values: Vec<ValueInterval>,
    pub witness_aggregate: ValueInterval,
    pub states_explored: u64,
    pub decompositions_evaluated: u64,
    pub work_units: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct Best {
    lo: u64,
    hi: u64,
    witness: Vec<u8>,
    witness_value: ValueInterval,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
struct Progress {
    best: Option<Best>,
    states: u64,
    evaluated: u64,
}

fn better(dir: Direction, a: u64, b: u64) -> u64 {
    match dir {
        Direction::Upper => a.max(b),
        Direction::Lower => a.min(b),
    }
}

fn inner(dir: Direction, v: ValueInterval) -> u64 {
    match dir {
        Direction::Upper => v.lo,
        Direction::Lower => v.hi,
    }
}

fn merge_best(dir: Direction, a: Option<Best>, b: Option<Best>) -> Option<Best> {
    let (a, b) = match (a, b) {
        (None, x) | (x, None) => return x,
        (Some(a), Some(b)) => (a, b),
    };
    let (ka, kb) = (inner(dir, a.witness_value), inner(dir, b.witness_value));
    let order = match dir {
        Direction::Upper => kb.cmp(&ka),
        Direction::Lower => ka.cmp(&kb),
    }
    .then_with(|| a.witness.cmp(&b.witness));
    let (lo, hi) = (better(dir, a.lo, b.lo), better(dir, a.hi, b.hi));
    let mut w = if order != Ordering::Greater { a } else { b };
    w.lo = lo;
    w.hi = hi;
    Some(w)
}

impl Progress {
    fn merge(self, dir: Direction, other: Progress) -> Progress {
        Progress {
            best: merge_best(dir, self.best, other.best),
            states: self.states + other.states,
            evaluated: self.evaluated + other.evaluated,
        }
    }
}

struct Evaluator<'a> {
    q: &'a NgQuery,
    edges: Vec<EdgeId>,
    cache: &'a SolverCache,
}

impl Evaluator<'_> {
    fn parts(&self, vec: &[u8]) -> Result<Vec<Graph>> {
        let mut parts = vec![Graph::empty(self.q.n)?; self.q.r];
        for (e, &c) in self.edges.iter().zip(vec) {
            parts[c as usize].add_edge(*e);
        }
        Ok(parts)
    }

    fn aggregate(&self, vec: &[u8]) -> Result<ValueInterval> {
        let values = self
            .parts(vec)?
            .iter()
            .map(|g| self.cache.get_or_compute(self.q.param, g))
            .collect::<Result<Vec<_>>>()?;
        Ok(combine(self.q.aggregate, &values))
    }

    fn unit(&self, mode: SymmetryMode, prefix: &[u8], depth: usize) -> Result<Progress> {
        let q = self.q;
        let mut it = Colorings::below(q.n, q.r, mode, prefix.to_vec(), depth);
        let mut best: Option<Best> = None;
        let mut evaluated = 0;
        for vec in it.by_ref() {
            if q.nondegenerate && !uses_every_color(&vec, q.r) {
                continue;
            }
            evaluated += 1;
            let v = self.aggregate(&vec)?;
            let cand = Best {
                lo: v.lo,
                hi: v.hi,
                witness: vec,
                witness_value: v,
            };
            best = merge_best(q.direction, best, Some(cand));
        }
        Ok(Progress {
            best,
            states: it.accepted(),
            evaluated,
        })
    }
}

/// Representatives on the first `d` vertices, with `d` the first depth
/// having at least [`MIN_UNITS`] of them (or `n`).
fn work_units(n: usize, r: usize, mode: SymmetryMode) -> (usize, Vec<Vec<u8>>, u64) {
    for d in 1..=n {
        let mut it = Colorings::new(d, r, mode);
        let units: Vec<Vec<u8>> = it.by_ref().collect();
        if units.len() >= MIN_UNITS || d == n {
            return (d, units, it.accepted());
        }
    }
    unreachable!("n >= 1")
}

/// Exact Nordhaus-Gaddum optimum over all (or all non-degenerate)
/// r-decompositions of K_n.
pub fn ng_exact(q: &NgQuery, opts: &NgOptions) -> Result<NgResult> {
    q.validate()?;
    check_order(&Graph::empty(q.n)?, q.param.name(), q.param.order_limit())?;
    let limit = opts.max_states.unwrap_or_else(max_states_from_env);
    check_capacity(q.n, q.r, opts.symmetry, limit)?;
    if q.nondegenerate && q.r > pair_count(q.n) {
        return Err(Error::Infeasible(format!(
            "K_{} has {} edges, too few for {} non-empty parts",
            q.n,
            pair_count(q.n),
            q.r
        )));
    }

    let cache = SolverCache::new();
    let ev = Evaluator {
        q,
        edges: (0..pair_count(q.n)).map(EdgeId::from_colex_index).collect(),
        cache: &cache,
    };
    let mode = opts.symmetry;
    let (depth, units, prefix_states) = work_units(q.n, q.r, mode);

    let mut progress = Progress {
        states: prefix_states,
        ..Progress::default()
    };
    let mut next = 0;
    if let Some(path) = &opts.checkpoint {
        if let Some((n, p)) = load_checkpoint(path, q, mode, units.len())? {
            next = n;
            progress = p;
        }
    }

    let run = |range: &[Vec<u8>]| -> Result<Progress> {
        let parts = range
            .par_iter()
            .map(|prefix| ev.unit(mode, prefix, depth))
            .collect::<Result<Vec<_>>>()?;
        Ok(parts
            .into_iter()
            .fold(Progress::default(), |acc, p| acc.merge(q.direction, p)))
    };
    let mut drive = || -> Result<()> {
        match &opts.checkpoint {
            None => {
                let p = run(&units[next..])?;
                progress = std::mem::take(&mut progress).merge(q.direction, p);
            }
            Some(path) => {
                while next < units.len() {
                    let end = (next + CHUNK).min(units.len());
                    let p = run(&units[next..end])?;
                    progress = std::mem::take(&mut progress).merge(q.direction, p);
                    next = end;
                    save_checkpoint(path, q, mode, units.len(), next, &progress)?;
                }
            }
        }
        Ok(())
    };
    match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Io(e.to_string()))?
            .install(drive)?,
        None => drive()?,
    }

    let best = progress
        .best
        .ok_or_else(|| Error::Infeasible("no decomposition satisfies the query".to_string()))?;
    let witness = to_decomposition(q.n, q.r, &best.witness);
    let witness_values = witness.values(q.param, Some(&cache))?;
    Ok(NgResult {
        query: *q,
        symmetry: mode,
        value: ValueInterval {
            lo: best.lo,
            hi: best.hi,
        },
        witness_aggregate: best.witness_value,
        witness,
        witness_values,
        states_explored: progress.states,
        decompositions_evaluated: progress.evaluated,
        work_units: units.len(),
    })
}

const CHECKPOINT_MAGIC: &str = "ngw-checkpoint 1";

fn save_checkpoint(
    path: &Path,
    q: &NgQuery,
    mode: SymmetryMode,
    units: usize,
    next: usize,
    p: &Progress,
) -> Result<()> {
    let json = |e: serde_json::Result<String>| e.map_err(|e| Error::Io(e.to_string()));
    let text = format!(
        "{CHECKPOINT_MAGIC}\nquery {}\nsymmetry {mode}\nunits {units}\nnext {next}\nprogress {}\n",
        json(serde_json::to_string(q))?,
        json(serde_json::to_string(p))?,
    );
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn load_checkpoint(
    path: &Path,
    q: &NgQuery,
    mode: SymmetryMode,
    units: usize,
) -> Result<Option<(usize, Progress)>> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let bad = |why: &str| Error::Domain(format!("checkpoint {}: {why}", path.display()));
    let mut lines = text.lines();
    if lines.next() != Some(CHECKPOINT_MAGIC) {
        return Err(bad("unknown format"));
    }
    let mut field = |key: &str| -> Result<String> {
        let line = lines.next().ok_or_else(|| bad("truncated"))?;
        line.strip_prefix(key)
            .and_then(|s| s.strip_prefix(' '))
            .map(str::to_string)
            .ok_or_else(|| bad(&format!("expected '{key}'")))
    };
    let stored: NgQuery =
        serde_json::from_str(&field("query")?).map_err(|e| bad(&e.to_string()))?;
    let stored_mode: SymmetryMode = field("symmetry")?.parse()?;
    let stored_units: usize = field("units")?.parse().map_err(|_| bad("bad unit count"))?;
    if stored != *q || stored_mode != mode || stored_units != units {
        return Err(bad("written for a different query"));
    }
    let next: usize = field("next")?.parse().map_err(|_| bad("bad cursor"))?;
    let progress: Progress =
        serde_json::from_str(&field("progress")?).map_err(|e| bad(&e.to_string()))?;
    if next > units {
        return Err(bad("cursor past the end"));
    }
    Ok(Some((next, progress)))
}

/// Replays a result: the witness is a valid decomposition of the right
/// shape whose recomputed aggregate matches.
pub fn replay(res: &NgResult) -> Result<()> {
    let q = &res.query;
    let w = &res.witness;
    if w.n() != q.n || w.r() != q.r || (q.nondegenerate && !w.is_nondegenerate()) {
        return Err(Error::Disagreement("witness has the wrong shape".into()));
    }
    let v = w.aggregate(q.param, q.aggregate, None)?;
    if v != res.witness_aggregate || inner(q.direction, v) != inner(q.direction, res.value) {
        return Err(Error::Disagreement(format!(
            "witness replays to {v}, reported {}",
            res.value
        )));
    }
    Ok(())
}

impl NgQuery {
    pub(crate) fn validate(&self) -> Result<()> {
        if self.r == 0 || self.n == 0 {
            return Err(Error::Domain("need r >= 1 and n >= 1".into()));
        }
        Ok(())
    }
}

//! Uniformly random decompositions, checked against the bound catalogue.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::NgQuery;
use crate::bounds::{theorem_bound_table, Aggregate, BoundRow, Direction};
use crate::constructions::{combine, random_decomposition_stream, Decomposition};
use crate::error::{Error, Result};
use crate::graph::{graph6_emit, Graph};
use crate::width::{check_order, ParamKind, SolverCache, ValueInterval};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub min: u64,
    pub mean: f64,
    pub max: u64,
}

impl Stats {
    fn of(xs: impl Iterator<Item = u64> + Clone) -> Stats {
        let count = xs.clone().count().max(1) as f64;
        Stats {
            min: xs.clone().min().unwrap_or(0),
            mean: xs.clone().map(|x| x as f64).sum::<f64>() / count,
            max: xs.max().unwrap_or(0),
        }
    }
}

/// Statistics of both interval endpoints (equal for exact parameters).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleStats {
    pub lo: Stats,
    pub hi: Stats,
}

impl SampleStats {
    fn of(vs: &[ValueInterval]) -> Self {
        SampleStats {
            lo: Stats::of(vs.iter().map(|v| v.lo)),
            hi: Stats::of(vs.iter().map(|v| v.hi)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McSummary {
    pub param: ParamKind,
    pub r: usize,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub nondegenerate_samples: usize,
    pub part: SampleStats,
    pub sum: SampleStats,
    pub product: SampleStats,
    /// Sample-checkable catalogue rows tested, summed over samples.
    pub bound_checks: u64,
}

/// Catalogue rows that constrain every decomposition (or every
/// non-degenerate one, when `nondegenerate`).
pub fn sample_rows(
    param: ParamKind,
    aggregate: Aggregate,
    direction: Direction,
    r: usize,
    n: usize,
    nondegenerate: bool,
) -> Vec<BoundRow> {
    let q = |nd| {
        NgQuery {
            param,
            aggregate,
            direction,
            r,
            n,
            nondegenerate: nd,
        }
        .bound_query()
    };
    let mut rows = theorem_bound_table(&q(false));
    if nondegenerate {
        rows.extend(theorem_bound_table(&q(true)));
    }
    rows
}

fn parts_text(d: &Decomposition) -> String {
    d.parts()
        .iter()
        .map(graph6_emit)
        .collect::<Vec<_>>()
        .join(",")
}

/// Samples decomposition `i` from stream `i` of `seed`, evaluates `param`
/// on every part and checks each sample against all assertable rows.
/// A violated row is returned as [`Error::BoundViolation`] naming the sample.
pub fn monte_carlo(
    param: ParamKind,
    r: usize,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<McSummary> {
    check_order(&Graph::empty(n.max(1))?, param.name(), param.order_limit())?;
    if r == 0 || n == 0 {
        return Err(Error::Domain("need r >= 1 and n >= 1".into()));
    }
    let cache = SolverCache::new();
    let per_sample = (0..samples as u64)
        .into_par_iter()
        .map(|i| -> Result<(Vec<ValueInterval>, bool, u64)> {
            let d = random_decomposition_stream(n, r, seed, i)?;
            let values = d.values(param, Some(&cache))?;
            let nd = d.is_nondegenerate();
            let mut checks = 0;
            for aggregate in [Aggregate::Sum, Aggregate::Prod] {
                let total = combine(aggregate, &values);
                for direction in [Direction::Upper, Direction::Lower] {
                    for row in sample_rows(param, aggregate, direction, r, n, nd) {
                        match row.sample_consistent(direction, total) {
                            Some(true) => checks += 1,
                            Some(false) => {
                                return Err(Error::BoundViolation(format!(
                                    "sample {i} (seed {seed}, parts {}) has {param} {aggregate} {total}, \
                                     against {} {direction} row '{}' ({:?} {})",
                                    parts_text(&d),
                                    aggregate,
                                    row.id,
                                    row.relation,
                                    row.effective.unwrap_or_default()
                                )))
                            }
                            None => {}
                        }
                    }
                }
            }
            Ok((values, nd, checks))
        })
        .collect::<Result<Vec<_>>>()?;

    let parts: Vec<ValueInterval> = per_sample
        .iter()
        .flat_map(|s| s.0.iter().copied())
        .collect();
    let sums: Vec<ValueInterval> = per_sample
        .iter()
        .map(|s| combine(Aggregate::Sum, &s.0))
        .collect();
    let prods: Vec<ValueInterval> = per_sample
        .iter()
        .map(|s| combine(Aggregate::Prod, &s.0))
        .collect();
    Ok(McSummary {
        param,
        r,
        n,
        samples,
        seed,
        nondegenerate_samples: per_sample.iter().filter(|s| s.1).count(),
        part: SampleStats::of(&parts),
        sum: SampleStats::of(&sums),
        product: SampleStats::of(&prods),
        bound_checks: per_sample.iter().map(|s| s.2).sum(),
    })
}

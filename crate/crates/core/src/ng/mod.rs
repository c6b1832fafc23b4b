//! Nordhaus-Gaddum optima by exhaustive enumeration, and random sampling.

mod enumerate;
mod exact;
mod montecarlo;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bounds::{Aggregate, BoundQuery, Direction};
use crate::error::{domain, Result};
use crate::graph::pair_count;
use crate::width::{ParamKind, ValueInterval};

pub use enumerate::{
    enumerate_colorings, enumerate_decompositions, estimate_states, is_canonical,
    max_states_from_env, Colorings, SymmetryMode, DEFAULT_MAX_STATES,
};
pub use exact::{ng_exact, replay, NgOptions, NgResult};
pub use montecarlo::{monte_carlo, sample_rows, McSummary, SampleStats, Stats};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NgQuery {
    pub param: ParamKind,
    pub aggregate: Aggregate,
    pub direction: Direction,
    pub r: usize,
    pub n: usize,
    pub nondegenerate: bool,
}

impl NgQuery {
    pub fn bound_query(&self) -> BoundQuery {
        BoundQuery {
            param: self.param,
            aggregate: self.aggregate,
            direction: self.direction,
            r: self.r as u64,
            n: self.n as u64,
            nondegenerate: self.nondegenerate,
        }
    }
}

/// Degenerate optimum from the non-degenerate optima with `l` parts,
/// `l = 1..=min(r, C(n, 2))`: the other `r - l` parts are edgeless.
pub fn degenerate_adjust(
    param: ParamKind,
    aggregate: Aggregate,
    direction: Direction,
    r: usize,
    n: usize,
    nondegenerate_values: &BTreeMap<usize, ValueInterval>,
) -> Result<ValueInterval> {
    if r == 0 || n == 0 {
        return domain("need r >= 1 and n >= 1");
    }
    let b = param.edgeless_value(n);
    let top = r.min(pair_count(n));
    let mut vals = Vec::with_capacity(top);
    for l in 1..=top {
        match nondegenerate_values.get(&l) {
            Some(v) => vals.push(*v),
            None => return domain(format!("missing non-degenerate value for {l} parts")),
        }
    }
    let end = |pick: fn(&ValueInterval) -> u64| -> u64 {
        adjust(
            aggregate,
            direction,
            r,
            b,
            top,
            &vals.iter().map(pick).collect::<Vec<_>>(),
        )
    };
    Ok(ValueInterval {
        lo: end(|v| v.lo),
        hi: end(|v| v.hi),
    })
}

fn adjust(
    aggregate: Aggregate,
    direction: Direction,
    r: usize,
    b: u64,
    top: usize,
    v: &[u64],
) -> u64 {
    let r64 = r as u64;
    if top == 0 {
        return match aggregate {
            Aggregate::Sum => r64 * b,
            Aggregate::Prod => b.saturating_pow(r as u32),
        };
    }
    let opt = |it: &mut dyn Iterator<Item = u64>| match direction {
        Direction::Upper => it.max().unwrap(),
        Direction::Lower => it.min().unwrap(),
    };
    match (aggregate, b) {
        (Aggregate::Sum, _) => opt(&mut (1..=top).map(|l| v[l - 1] + (r - l) as u64 * b)),
        (Aggregate::Prod, 1) => opt(&mut v.iter().copied()),
        (Aggregate::Prod, _) => match direction {
            // any edgeless part zeroes the product
            Direction::Upper if r == top => v[r - 1],
            Direction::Upper => 0,
            Direction::Lower if r == 1 => v[0],
            Direction::Lower => 0,
        },
    }
}

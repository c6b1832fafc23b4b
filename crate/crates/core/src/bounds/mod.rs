//! Closed-form bound evaluators and the bound catalogue.

mod catalog;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub use catalog::{
    catalog, theorem_bound_table, BoundKind, BoundQuery, BoundRow, BoundStatus, CatalogEntry,
    Relation, Variant,
};
pub(crate) use catalog::{four_block_g3_edges, four_block_sizes};

/// How per-part values are combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregate {
    Sum,
    Prod,
}

/// Whether the extremum over decompositions is a maximum (upper) or a
/// minimum (lower).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Upper,
    Lower,
}

impl fmt::Display for Aggregate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Aggregate::Sum => "sum",
            Aggregate::Prod => "prod",
        })
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Upper => "upper",
            Direction::Lower => "lower",
        })
    }
}

impl FromStr for Aggregate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(Aggregate::Sum),
            "prod" | "product" => Ok(Aggregate::Prod),
            _ => domain(format!("unknown aggregate '{s}'")),
        }
    }
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upper" | "max" => Ok(Direction::Upper),
            "lower" | "min" => Ok(Direction::Lower),
            _ => domain(format!("unknown direction '{s}'")),
        }
    }
}

/// Smallest `t` with `r <= t(t+1)/2`, the ceiling of the triangular root.
pub fn triangular_root_ceil(r: u64) -> Result<u64> {
    if r == 0 {
        return domain("triangular root needs r >= 1");
    }
    let tri = |t: u64| t as u128 * (t as u128 + 1) / 2;
    let mut t = ((2.0 * r as f64).sqrt() as u64).max(1);
    while tri(t) < r as u128 {
        t += 1;
    }
    while t > 1 && tri(t - 1) >= r as u128 {
        t -= 1;
    }
    Ok(t)
}

/// Edge count of any k-tree on `n` vertices.
pub fn ktree_edge_count(n: u64, k: u64) -> Result<u64> {
    if k >= n {
        return domain(format!("a {k}-tree needs more than {k} vertices, got {n}"));
    }
    Ok(k * k.saturating_sub(1) / 2 + (n - k) * k)
}

/// Lower bound on the minimum tree-width sum from the k-tree edge count,
/// as the raw real value and its ceiling.
pub fn tw_sum_lower_bound(r: u64, n: u64) -> (f64, i64) {
    let (r, n) = (r as f64, n as f64);
    let disc = (r * r - r) * n * n - (r * r - r) * n + 0.25 * r * r;
    let v = r * n - 0.5 * r - disc.sqrt();
    (v, ceil_tol(v))
}

pub(crate) fn ceil_tol(v: f64) -> i64 {
    (v - 1e-9).ceil() as i64
}

pub(crate) fn floor_tol(v: f64) -> i64 {
    (v + 1e-9).floor() as i64
}

/// Minimum of `a_1 * ... * a_r` over integers `1 <= a_i <= n` summing to `sigma`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumProductWitness {
    pub sigma: u64,
    pub q: u64,
    pub rho: u64,
    pub min_product: u128,
}

pub fn min_product_given_sum(r: u64, n: u64, sigma: u64) -> Result<SumProductWitness> {
    if n < 2 || r < 1 {
        return domain("need n >= 2 and r >= 1");
    }
    if sigma < r || sigma > r * n {
        return domain(format!("sum {sigma} is outside [{r}, {}]", r * n));
    }
    let q = (sigma - r) / (n - 1);
    let rho = sigma - r - q * (n - 1) + 1;
    let min_product = (n as u128)
        .checked_pow(q as u32)
        .and_then(|p| p.checked_mul(rho as u128))
        .unwrap_or(u128::MAX);
    Ok(SumProductWitness {
        sigma,
        q,
        rho,
        min_product,
    })
}

/// Turns a non-degenerate sum lower value `s` into a product lower value.
pub fn sum_to_prod_lower(r: u64, n: u64, s: u64) -> Result<u64> {
    if s >= n + r - 1 {
        return Err(Error::Inapplicable(format!(
            "sum value {s} is not below n + r - 1 = {}",
            n + r - 1
        )));
    }
    if s < r {
        return Err(Error::Inapplicable(format!(
            "sum value {s} is below r = {r}, so some part would have value 0"
        )));
    }
    Ok(s - r + 1)
}

/// One row of the limsup table: `(r, r / ceil(trt(r)), sqrt(r))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Table1Row {
    pub r: u64,
    pub lower: f64,
    pub upper: f64,
}

pub fn table1(r_max: u64) -> Result<Vec<Table1Row>> {
    if r_max < 3 {
        return domain("the table starts at r = 3");
    }
    (3..=r_max)
        .map(|r| {
            let t = triangular_root_ceil(r)?;
            Ok(Table1Row {
                r,
                lower: r as f64 / t as f64,
                upper: (r as f64).sqrt(),
            })
        })
        .collect()
}

/// Five decimals, trailing zeros dropped but at least one kept.
pub fn format_decimal(x: f64) -> String {
    let s = format!("{x:.5}");
    let s = s.trim_end_matches('0');
    if s.ends_with('.') {
        format!("{s}0")
    } else {
        s.to_string()
    }
}

pub fn table1_csv(rows: &[Table1Row]) -> String {
    let mut out = String::from("r,r_over_t,sqrt_r\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{}\n",
            row.r,
            format_decimal(row.lower),
            format_decimal(row.upper)
        ));
    }
    out
}

pub fn table1_text(rows: &[Table1Row]) -> String {
    let mut out = format!("{:>4}  {:>10}  {:>10}\n", "r", "r/t", "sqrt(r)");
    for row in rows {
        out.push_str(&format!(
            "{:>4}  {:>10}  {:>10}\n",
            row.r,
            format_decimal(row.lower),
            format_decimal(row.upper)
        ));
    }
    out
}

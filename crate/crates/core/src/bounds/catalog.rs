use serde::{Deserialize, Serialize};

use super::{ceil_tol, floor_tol, triangular_root_ceil, tw_sum_lower_bound, Aggregate, Direction};
use crate::width::{ParamKind, ValueInterval};

use ParamKind::*;

const TW_FAMILY: &[ParamKind] = &[Tw, La, Pw, Ppw];
const CDV: &[ParamKind] = &[Mu, Nu, Xi];
const ETA: &[ParamKind] = &[Eta];
const ETA_CDV: &[ParamKind] = &[Eta, Mu, Nu, Xi];
const ALL: &[ParamKind] = &[Tw, La, Pw, Ppw, Eta, Mu, Nu, Xi];
const SUM_LOWER_CAP: &[ParamKind] = &[Tw, La, Pw, Ppw, Mu, Nu, Xi];

/// Which decompositions a formula speaks about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Degenerate,
    NonDegenerate,
    Both,
}

/// How the Nordhaus-Gaddum quantity relates to the formula value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Exact,
    AtLeast,
    AtMost,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Exact,
    LowerBound,
    UpperBound,
    /// Holds only for n large enough with no explicit threshold; reported,
    /// never asserted.
    AsymptoticOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    Satisfied,
    Violated,
    Undetermined,
    AsymptoticOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundQuery {
    pub param: ParamKind,
    pub aggregate: Aggregate,
    pub direction: Direction,
    pub r: u64,
    pub n: u64,
    pub nondegenerate: bool,
}

#[derive(Clone, Copy, Debug)]
enum Val {
    Int(i128),
    Real(f64),
}

struct Formula {
    id: &'static str,
    formula: &'static str,
    window: &'static str,
    params: &'static [ParamKind],
    aggregate: Aggregate,
    direction: Direction,
    variant: Variant,
    relation: Relation,
    asymptotic: bool,
    applies: fn(u64, u64) -> bool,
    eval: fn(ParamKind, u64, u64) -> Val,
}

/// An evaluated catalogue row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub id: String,
    pub formula: String,
    pub relation: Relation,
    pub kind: BoundKind,
    pub value: f64,
    /// Integer consequence of `value`: ceiling for lower bounds, floor for
    /// upper bounds. Absent for asymptotic rows.
    pub effective: Option<i128>,
}

/// Catalogue metadata with the applicability window of each formula.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub formula: String,
    pub window: String,
    pub params: Vec<ParamKind>,
    pub aggregate: Aggregate,
    pub direction: Direction,
    pub variant: Variant,
    pub relation: Relation,
    pub kind: BoundKind,
}

fn ipow(b: i128, e: u64) -> i128 {
    let mut acc: i128 = 1;
    for _ in 0..e {
        acc = acc.saturating_mul(b);
    }
    acc
}

fn t_of(r: u64) -> u64 {
    triangular_root_ceil(r.max(1)).unwrap()
}

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

fn n_ge_two_sqrt_r(r: u64, n: u64) -> bool {
    r >= 2 && n * n >= 4 * r
}

/// Part sizes of the four-block construction: the first `n mod 4` sets get
/// one extra vertex.
pub(crate) fn four_block_sizes(n: u64) -> [u64; 4] {
    let (p, l) = (n / 4, n % 4);
    [0, 1, 2, 3].map(|i| p + u64::from(i < l))
}

/// Edges of the third four-block part.
pub(crate) fn four_block_g3_edges(n: u64) -> u64 {
    let s = four_block_sizes(n);
    s[0] * s[3] + s[1] * s[2]
}

fn eta_or_tw_single(p: ParamKind, _r: u64, n: u64) -> Val {
    Val::Int(if p == Eta { n as i128 } else { n as i128 - 1 })
}

fn ln_ratio(n: u64) -> f64 {
    n as f64 / (n as f64).ln().sqrt()
}

static FORMULAS: &[Formula] = &[
    Formula {
        id: "single-part",
        formula: "r = 1: the only decomposition is K_n",
        window: "r = 1, n >= 2",
        params: &[Tw, La, Pw, Ppw, Eta],
        aggregate: Aggregate::Sum,
        direction: Direction::Upper,
        variant: Variant::Both,
        relation: Relation::Exact,
        asymptotic: false,
        applies: |r, n| r == 1 && n >= 2,
        eval: eta_or_tw_single,
    },
    Formula {
        id: "single-part",
        formula: "r = 1: the only decomposition is K_n",
        window: "r = 1, n >= 2",
        params: &[Tw, La, Pw, Ppw, Eta],
        aggregate: Aggregate::Sum,
        direction: Direction::Lower,
        variant: Variant::Both,
        relation: Relation::Exact,
        asymptotic: false,
        applies: |r, n| r == 1 && n >= 2,
        eval: eta_or_tw_single,
    },
    Formula {
        id: "single-part",
        formula: "r = 1: the only decomposition is K_n",
        window: "r = 1, n >= 2",
        params: &[Tw, La, Pw, Ppw, Eta],
        aggregate: Aggregate::Prod,
        direction: Direction::Upper,
        variant: Variant::Both,
        relation: Relation::Exact,
        asymptotic: false,
        applies: |r, n| r == 1 && n >= 2,
        eval: eta_or_tw_single,
    },
    Formula {
        id: "single-part",
        formula: "r = 1: the only decomposition is K_n",
        window: "r = 1, n >= 2",
        params: &[Tw, La, Pw, Ppw, Eta],
        aggregate: Aggregate::Prod,
        direction: Direction::Lower,
        variant: Variant::Both,
        relation: Relation::Exact,
        asymptotic: false,
        applies: |r, n| r == 1 && n >= 2,
        eval: eta_or_tw_single,
    },
    // sum upper
    Formula {
        id: "order-sum",
        formula: "r n",
        window: "r >= 1, n >= 1",
        params: ALL,
        aggregate: Aggregate::Sum,
        direction: Direction::Upper,
        variant: Variant::Both,
        relation: Relation::AtMost,
        asymptotic: false,
        applies: |_, _| true,
        eval: |_, r, n| Val::Int(r as i128 * n as i128),
    },
    Formula {
        id: "edge-count-cdv",
        formula: "sqrt(r) n",
        window: "r >= 2, n >= 2 sqrt(r)",
        params: CDV,
        aggregate: Aggregate::Sum,
        direction: Direction::Upper,
        variant: Variant::Both,
        relation: Relation::AtMost,
        asymptotic: false,
        applies: n_ge_two_sqrt_r,
        eval: |_, r, n| Val::Real((r as f64).sqrt() * n as f64),
    },
    Formula {
        id: "edge-count-eta",
        formula: "sqrt(r) n + r",
        window: "r >= 2, n >= 2 sqrt(r)",
        params: ETA,
        aggregate: Aggregate::Sum,
        direction: Direction::Upper,
        variant: Variant::Both,
        relation: Relation::AtMost,
        asymptotic: false,
        applies: n_ge_two_sqrt_r,
        eval: |_, r, n| Val::Real((r as f64).sqrt() * n as f64 + r as f64),
    },
    Formula {
        id: "clique-blowup-eta",
        formula: "r s + (r - t), t = ceil(trt(r)), s = floor(n / t)",
        window: "r >= 2, n >= t",
        params: ETA,
        aggregate: Aggregate::Sum,
        direction: Direction::Upper,
        variant: Variant::Degenerate,
        relation: Relation::AtLeast,
        asymptotic: false,
        applies: |r, n| r >= 2 && n >= t_of(r),
        eval: |_, r, n| {
            let t = t_of(r);
            Val::Int(r as i128 * (n / t) as i128 + r as i128 - t as i128)
        },
    },
    Formula {
        id: "clique-blowup-cdv",
        formula: "r s - t, t = ceil(trt(r)), s = floor(n / t)",
        window: "r >= 2, n >= max(t, 2)",
        params: CDV,
        aggregate: Aggregate::Sum,
        direction: Direction::Upper,
        variant: Variant::Degenerate,
        relation: Relation::AtLeast,
        asymptotic: false,
        applies: |r, n| r >= 2 && n >= t_of(r).max(2),
        eval: |_, r, n| {
            let t = t_of(r);
            Val::Int(r as i128 * (n / t) as i128 - t as i128)
        },
    },
    Formula {
        id: "kostochka-sum",
        formula: "floor(6 n / 5)",
        window: "r = 2, n >= 5",
        params: ETA,
        aggregate: Aggregate::Sum,
        direction: Direction::Upper,
        variant: Variant::Degenerate,
        relation: Relation::Exact,
        asymptotic: false,
        applies: |r, n| r == 2 && n >= 5,
        eval: |_, _, n| Val::Int((6 * n / 5) as i128),
    },
    Formula {
        id: "random-sum",
        formula: "r n - o(n)",
        window: "fixed r >= 2, n large",
        params: TW_FAMILY,
        aggregate: Aggregate::Sum,
        direction: Direction::Upper,
        variant: Variant::Both,
        relation: Relation::Exact,
        asymptotic: true,
        applies: |r, _| r >= 2,
        eval: |_, r, n| Val::Int(r as i128 * n as i128),
    },
    Formula {
        id: "blowup-limsup",
        formula: "(r / t) n - o(n)",
        window: "fixed r >= 2, n large",
        params: ETA_CDV,
        aggregate: Aggregate::Sum,
        direction: Direction::Upper,
        variant: Variant::Both,
        relation: Relation::AtLeast,
        asymptotic: true,
        applies: |r, _| r >= 2,
        eval: |_, r, n| Val::Real(r as f64 / t_of(r) as f64 * n as f64),
    },
    // sum lower
    Formula {
        id: "two-part-sum",
        formula: "n - 2",
        window: "r = 2, n >= 4",
        params: TW_FAMILY,
        aggregate: Aggregate::Sum,
        direction: Direction::Lower,
        variant: Variant::Both,
        relation: Relation::Exact,
        asymptotic: false,
        applies: |r, n| r == 2 && n >= 4,
        eval: |_, _, n| Val::Int(n as i128 - 2),
    },
    Formula {
        id: "ktree-edge-count",
        formula: "r n - r/2 - sqrt((r^2 - r) n^2 - (r^2 - r) n + r^2/4)",
        window: "r >= 1, n >= 1",
        params: TW_FAMILY,
        aggregate: Aggregate::Sum,
        direction: Direction::Lower,
        variant: Variant::Both,
        relation: Relation::AtLeast,
        asymptotic: false,
        applies: |r, n| r >= 1 && n >= 1,
        eval: |_, r, n| Val::Real(tw_sum_lower_bound(r, n).0),
    },
    Formula {
        id: "four-block",
        formula: "3 ceil(n / 4), plus r for ppw",
        window: "r >= 3, n >= 1",
        params: TW_FAMILY,
        aggregate: Aggregate::Sum,
        direction: Direction::Lower,
        variant: Variant::Degenerate,
        relation: Relation::AtMost,
        asymptotic: false,
        applies: |r, n| r >= 3 && n >= 1,
        eval: |p, r, n| {
            let base = 3 * ceil_div(n, 4) as i128;
            Val::Int(if p == Ppw { base + r as i128 } else { base })
        },
    },
    Formula {
        id: "four-block-nondegenerate",
        formula: "3 ceil(n / 4) + r - 3 (tw, la, pw, nu); 3 ceil(n / 4) + 2r - 3 (ppw, mu, xi)",
        window: "r >= 3, n >= 4, third block has at least r - 2 edges",
        params: SUM_LOWER_CAP,
        aggregate: Aggregate::Sum,
        direction: Direction::Lower,
        variant: Variant::Both,
        relation: Relation::AtMost,
        asymptotic: false,
        applies: |r, n| r >= 3 && n >= 4 && four_block_g3_edges(n) + 2 >= r,
        eval: |p, r, n| {
            let base = 3 * ceil_div(n, 4) as i128 + r as i128 - 3;
            Val::Int(if matches!(p, Ppw | Mu | Xi) {
                base + r as i128
            } else {
                base
            })
        },
    },
    Formula {
        id: "paths-plus-remainder",
        formula: "n - r",
        window: "r >= 2, n >= 2r",
        params: SUM_LOWER_CAP,
        aggregate: Aggregate::Sum,
        direction: Direction::Lower,
        variant: Variant::Both,
        relation: Relation::AtMost,
        asymptotic: false,
        applies: |r, n| r >= 2 && n >= 2 * r,
        eval: |_, r, n| Val::Int(n as i128 - r as i128),
    },
    Formula {
        id: "dense-part-cdv",
        formula: "n / (570 r sqrt(ln n)) - r",
        window: "r >= 3, n >= 19",
        params: CDV,
        aggregate: Aggregate::Sum,
        direction: Direction::Lower,
        variant: Variant::Both,
        relation: Relation::AtLeast,
        asymptotic: false,
        applies: |r, n| r >= 3 && n >= 19,
        eval: |_, r, n| Val::Real(ln_ratio(n) / (570.0 * r as f64) - r as f64),
    },
    Formula {
        id: "dense-part-eta",
        formula: "n / (570 r sqrt(ln n))",
        window: "fixed r >= 2, n large",
        params: ETA,
        aggregate: Aggregate::Sum,
        direction: Direction::Lower,
        variant: Variant::Both,
        relation: Relation::AtLeast,
        asymptotic: true,
        applies: |r, n| r >= 2 && n >= 2,
        eval: |_, r, n| Val::Real(ln_ratio(n) / (570.0 * r as f64)),
    },
    Formula {
        id: "random-sum-eta",
        formula: "r n / sqrt(ln n)",
        window: "fixed r >= 2, n large",
        params: ETA,
        aggregate: Aggregate::Sum,
        direction: Direction::Lower,
        variant: Variant::Both,
        relation: Relation::AtMost,
        asymptotic: true,
        applies: |r, n| r >= 2 && n >= 2,
        eval: |_, r, n| Val::Real(r as f64 * ln_ratio(n)),
    },
    Formula {
        id: "ktree-liminf",
        formula: "(r - sqrt(r^2 - r)) n - o(n)",
        window: "fixed r >= 2, n large",
        params: TW_FAMILY,
        aggregate: Aggregate::Sum,
        direction: Direction::Lower,
        variant: Variant::Both,
        relation: Relation::AtLeast,
        asymptotic: true,
        applies: |r, _| r >= 2,
        eval: |_, r, n| {
            let r = r as f64;
            Val::Real((r - (r * r - r).sqrt()) * n as f64)
        },
    },
    // product upper
    Formula {
        id: "order-product",
        formula: "n^r",
        window: "r >= 1, n >= 1",
        params: ALL,
        aggregate: Aggregate::Prod,
        direction: Direction::Upper,
        variant: Variant::Both,
        relation: Relation::AtMost,
        asymptotic: false,
        applies: |_, _| true,
        eval: |_, r, n| Val::Int(ipow(n as i128, r)),
    },
    Formula {
        id: "am-gm-cdv",
        formula: "(n / sqrt(r))^r",
        window: "r >= 2, n >= 2 sqrt(r)",
        params: CDV,
        aggregate: Aggregate::Prod,
        direction: Direction::Upper,
        variant: Variant::Both,
        relation: Relation::AtMost,
        asymptotic: false,
        applies: n_ge_two_sqrt_r,
        eval: |_, r, n| Val::Real((n as f64 / (r as f64).sqrt()).powi(r as i32)),
    },
    Formula {
        id: "am-gm-eta",
        formula: "((sqrt(r) n + r) / r)^r",
        window: "r >= 2, n >= 2 sqrt(r)",
        params: ETA,
        aggregate: Aggregate::Prod,
        direction: Direction::Upper,
        variant: Variant::Both,
        relation: Relation::AtMost,
        asymptotic: false,
        applies: n_ge_two_sqrt_r,
        eval: |_, r, n| {
            let rf = r as f64;
            Val::Real(((rf.sqrt() * n as f64 + rf) / rf).powi(r as i32))
        },
    },
    Formula {
        id: "kostochka-product",
        formula: "floor(floor(6 n / 5)^2 / 4)",
        window: "r = 2, n >= 5",
        params: ETA,
        aggregate: Aggregate::Prod,
        direction: Direction::Upper,
        variant: Variant::Degenerate,
        relation: Relation::Exact,
        asymptotic: false,
        applies: |r, n| r == 2 && n >= 5,
        eval: |_, _, n| {
            let s = (6 * n / 5) as i128;
            Val::Int(s * s / 4)
        },
    },
    Formula {
        id: "blowup-product",
        formula: "(floor(n / t) - 1)^r",
        window: "r >= 2, n >= t",
        params: ETA_CDV,
        aggregate: Aggregate::Prod,
        direction: Direction::Upper,
        variant: Variant::Degenerate,
        relation: Relation::AtLeast,
        asymptotic: false,
        applies: |r, n| r >= 2 && n >= t_of(r),
        eval: |_, r, n| Val::Int(ipow((n / t_of(r)) as i128 - 1, r)),
    },
    Formula {
        id: "random-product",
        formula: "n^r - o(n^r)",
        window: "fixed r >= 2, n large",
        params: TW_FAMILY,
        aggregate: Aggregate::Prod,
        direction: Direction::Upper,
        variant: Variant::Both,
        relation: Relation::Exact,
        asymptotic: true,
        applies: |r, _| r >= 2,
        eval: |_, r, n| Val::Int(ipow(n as i128, r)),
    },
    // product lower
    Formula {
        id: "edgeless-part",
        formula: "0",
        window: "r >= 2",
        params: TW_FAMILY,
        aggregate: Aggregate::Prod,
        direction: Direction::Lower,
        variant: Variant::Degenerate,
        relation: Relation::Exact,
        asymptotic: false,
        applies: |r, _| r >= 2,
        eval: |_, _, _| Val::Int(0),
    },
    Formula {
        id: "two-part-product",
        formula: "n - 3",
        window: "r = 2, n >= 4",
        params: TW_FAMILY,
        aggregate: Aggregate::Prod,
        direction: Direction::Lower,
        variant: Variant::NonDegenerate,
        relation: Relation::Exact,
        asymptotic: false,
        applies: |r, n| r == 2 && n >= 4,
        eval: |_, _, n| Val::Int(n as i128 - 3),
    },
    Formula {
        id: "paths-product",
        formula: "n - 2r + 1",
        window: "r >= 2, n >= 2r",
        params: SUM_LOWER_CAP,
        aggregate: Aggregate::Prod,
        direction: Direction::Lower,
        variant: Variant::NonDegenerate,
        relation: Relation::AtMost,
        asymptotic: false,
        applies: |r, n| r >= 2 && n >= 2 * r,
        eval: |_, r, n| Val::Int(n as i128 - 2 * r as i128 + 1),
    },
    Formula {
        id: "sum-to-product",
        formula: "n / 2 - r + 1",
        window: "fixed r >= 3, n large",
        params: TW_FAMILY,
        aggregate: Aggregate::Prod,
        direction: Direction::Lower,
        variant: Variant::NonDegenerate,
        relation: Relation::AtLeast,
        asymptotic: true,
        applies: |r, _| r >= 3,
        eval: |_, r, n| Val::Real(n as f64 / 2.0 - r as f64 + 1.0),
    },
    Formula {
        id: "complete-plus-empty",
        formula: "n",
        window: "r = 2, n >= 1",
        params: ETA,
        aggregate: Aggregate::Prod,
        direction: Direction::Lower,
        variant: Variant::Degenerate,
        relation: Relation::Exact,
        asymptotic: false,
        applies: |r, n| r == 2 && n >= 1,
        eval: |_, _, n| Val::Int(n as i128),
    },
    Formula {
        id: "complete-plus-empty",
        formula: "n",
        window: "r >= 2, n >= 1",
        params: ETA,
        aggregate: Aggregate::Prod,
        direction: Direction::Lower,
        variant: Variant::Degenerate,
        relation: Relation::AtMost,
        asymptotic: false,
        applies: |r, n| r >= 2 && n >= 1,
        eval: |_, _, n| Val::Int(n as i128),
    },
    Formula {
        id: "three-halves",
        formula: "ceil((3n - 5) / 2)",
        window: "r = 2, n >= 3",
        params: ETA,
        aggregate: Aggregate::Prod,
        direction: Direction::Lower,
        variant: Variant::NonDegenerate,
        relation: Relation::AtLeast,
        asymptotic: false,
        applies: |r, n| r == 2 && n >= 3,
        eval: |_, _, n| Val::Int((3 * n as i128 - 5 + 1).div_euclid(2)),
    },
    Formula {
        id: "clique-cover-product",
        formula: "0.513^(r - 2) n",
        window: "r >= 2, n >= 1",
        params: ETA,
        aggregate: Aggregate::Prod,
        direction: Direction::Lower,
        variant: Variant::Both,
        relation: Relation::AtLeast,
        asymptotic: false,
        applies: |r, n| r >= 2 && n >= 1,
        eval: |_, r, n| Val::Real(0.513f64.powi(r as i32 - 2) * n as f64),
    },
    Formula {
        id: "paths-product-eta",
        formula: "2^(r - 1) (n - 2r + 2)",
        window: "r >= 2, n >= 2r",
        params: ETA,
        aggregate: Aggregate::Prod,
        direction: Direction::Lower,
        variant: Variant::NonDegenerate,
        relation: Relation::AtMost,
        asymptotic: false,
        applies: |r, n| r >= 2 && n >= 2 * r,
        eval: |_, r, n| Val::Int(ipow(2, r - 1) * (n as i128 - 2 * r as i128 + 2)),
    },
    Formula {
        id: "halved-eta-cdv",
        formula: "n / 2^(2r - 2)",
        window: "r >= 2, n >= 2r",
        params: CDV,
        aggregate: Aggregate::Prod,
        direction: Direction::Lower,
        variant: Variant::NonDegenerate,
        relation: Relation::AtLeast,
        asymptotic: false,
        applies: |r, n| r >= 2 && n >= 2 * r,
        eval: |_, r, n| Val::Real(n as f64 / 2f64.powi(2 * r as i32 - 2)),
    },
];

fn kind_of(f: &Formula) -> BoundKind {
    if f.asymptotic {
        return BoundKind::AsymptoticOnly;
    }
    match f.relation {
        Relation::Exact => BoundKind::Exact,
        Relation::AtLeast => BoundKind::LowerBound,
        Relation::AtMost => BoundKind::UpperBound,
    }
}

fn variant_matches(v: Variant, nondegenerate: bool) -> bool {
    match v {
        Variant::Both => true,
        Variant::Degenerate => !nondegenerate,
        Variant::NonDegenerate => nondegenerate,
    }
}

/// Every catalogue formula applicable to the query, evaluated.
pub fn theorem_bound_table(q: &BoundQuery) -> Vec<BoundRow> {
    FORMULAS
        .iter()
        .filter(|f| {
            f.params.contains(&q.param)
                && f.aggregate == q.aggregate
                && f.direction == q.direction
                && variant_matches(f.variant, q.nondegenerate)
                && q.r >= 1
                && q.n >= 1
                && (f.applies)(q.r, q.n)
        })
        .map(|f| {
            let v = (f.eval)(q.param, q.r, q.n);
            let value = match v {
                Val::Int(i) => i as f64,
                Val::Real(x) => x,
            };
            let effective = if f.asymptotic {
                None
            } else {
                Some(match (v, f.relation) {
                    (Val::Int(i), _) => i,
                    (Val::Real(x), Relation::AtLeast) => ceil_tol(x) as i128,
                    (Val::Real(x), Relation::AtMost) => floor_tol(x) as i128,
                    (Val::Real(x), Relation::Exact) => x.round() as i128,
                })
            };
            BoundRow {
                id: f.id.to_string(),
                formula: f.formula.to_string(),
                relation: f.relation,
                kind: kind_of(f),
                value,
                effective,
            }
        })
        .collect()
}

/// Metadata of all formulas, for the JSON catalogue dump.
pub fn catalog() -> Vec<CatalogEntry> {
    FORMULAS
        .iter()
        .map(|f| CatalogEntry {
            id: f.id.to_string(),
            formula: f.formula.to_string(),
            window: f.window.to_string(),
            params: f.params.to_vec(),
            aggregate: f.aggregate,
            direction: f.direction,
            variant: f.variant,
            relation: f.relation,
            kind: kind_of(f),
        })
        .collect()
}

impl BoundRow {
    pub fn is_assertable(&self) -> bool {
        self.kind != BoundKind::AsymptoticOnly
    }

    /// Status against the exact (or bracketed) Nordhaus-Gaddum value.
    pub fn status(&self, v: ValueInterval) -> BoundStatus {
        let Some(e) = self.effective else {
            return BoundStatus::AsymptoticOnly;
        };
        let (lo, hi) = (v.lo as i128, v.hi as i128);
        let (ok, bad) = match self.relation {
            Relation::Exact => (lo == e && hi == e, e < lo || e > hi),
            Relation::AtLeast => (lo >= e, hi < e),
            Relation::AtMost => (hi <= e, lo > e),
        };
        if bad {
            BoundStatus::Violated
        } else if ok {
            BoundStatus::Satisfied
        } else {
            BoundStatus::Undetermined
        }
    }

    /// Whether a single decomposition with aggregate `v` is consistent with
    /// this row. `None` when the row says nothing about individual
    /// decompositions (e.g. a lower bound on a maximum).
    pub fn sample_consistent(&self, direction: Direction, v: ValueInterval) -> Option<bool> {
        let e = self.effective?;
        let (lo, hi) = (v.lo as i128, v.hi as i128);
        match (direction, self.relation) {
            // every decomposition is at most the maximum
            (Direction::Upper, Relation::AtMost | Relation::Exact) => Some(lo <= e),
            // and at least the minimum
            (Direction::Lower, Relation::AtLeast | Relation::Exact) => Some(hi >= e),
            _ => None,
        }
    }
}

//! The verification suite behind `ngw verify`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    format_decimal, min_product_given_sum, table1, tw_sum_lower_bound, Aggregate, Direction,
};
use crate::constructions::{
    blowup_decomposition, four_block_decomposition, path_plus_remainder_decomposition,
};
use crate::error::{domain, Error, Result};
use crate::graph::{graph6_emit, Graph, GraphFamily};
use crate::ng::{monte_carlo, ng_exact, replay, NgOptions, NgQuery, NgResult, SymmetryMode};
use crate::report::{CheckOutcome, Outcome, Report};
use crate::width::{
    caterpillar_width, chromatic_number, hadwiger, param_value, vertex_separation, ParamKind,
    ValueInterval,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyLevel {
    Smoke,
    Desk,
    Extended,
}

impl fmt::Display for VerifyLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerifyLevel::Smoke => "smoke",
            VerifyLevel::Desk => "desk",
            VerifyLevel::Extended => "extended",
        })
    }
}

impl FromStr for VerifyLevel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smoke" => Ok(VerifyLevel::Smoke),
            "desk" => Ok(VerifyLevel::Desk),
            "extended" => Ok(VerifyLevel::Extended),
            _ => domain(format!("unknown verify level '{s}'")),
        }
    }
}

/// Per-level sizes. Each level covers everything the previous one does.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelCaps {
    pub eta_sum_orders: Vec<usize>,
    pub tw_sum_orders: Vec<usize>,
    pub tw_prod_orders: Vec<usize>,
    pub eta_prod_orders: Vec<usize>,
    pub floor_pairs: Vec<(usize, usize)>,
    pub chain_order: usize,
    pub chi_samples: usize,
    pub mc_runs: Vec<(usize, usize, usize)>,
    pub mc_params: Vec<ParamKind>,
    pub determinism_max_n: usize,
}

impl VerifyLevel {
    pub fn caps(self) -> LevelCaps {
        use ParamKind::*;
        match self {
            VerifyLevel::Smoke => LevelCaps {
                eta_sum_orders: vec![5],
                tw_sum_orders: vec![4, 5],
                tw_prod_orders: vec![4, 5],
                eta_prod_orders: vec![4, 5],
                floor_pairs: vec![(2, 4), (2, 5), (3, 4)],
                chain_order: 5,
                chi_samples: 1000,
                mc_runs: vec![(2, 10, 20), (3, 8, 10)],
                mc_params: vec![Tw, Eta],
                determinism_max_n: 4,
            },
            VerifyLevel::Desk => LevelCaps {
                eta_sum_orders: vec![5, 6, 7],
                tw_sum_orders: vec![4, 5, 6, 7],
                tw_prod_orders: vec![4, 5, 6],
                eta_prod_orders: vec![4, 5],
                floor_pairs: vec![(2, 4), (2, 5), (2, 6), (3, 4), (3, 5)],
                chain_order: 6,
                chi_samples: 10_000,
                mc_runs: vec![(2, 10, 100), (3, 8, 50)],
                mc_params: vec![Tw, Pw, Eta],
                determinism_max_n: 5,
            },
            VerifyLevel::Extended => LevelCaps {
                eta_sum_orders: vec![5, 6, 7, 8, 9],
                tw_sum_orders: vec![4, 5, 6, 7, 8],
                tw_prod_orders: vec![4, 5, 6, 7],
                eta_prod_orders: vec![4, 5, 6],
                floor_pairs: vec![(2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (3, 6), (4, 5)],
                chain_order: 7,
                chi_samples: 50_000,
                mc_runs: vec![(2, 10, 400), (3, 8, 200), (4, 8, 50)],
                mc_params: vec![Tw, La, Pw, Ppw, Eta, Mu],
                determinism_max_n: 5,
            },
        }
    }
}

fn mismatch<T>(msg: String) -> Result<T> {
    Err(Error::BoundViolation(msg))
}

fn query(
    param: ParamKind,
    aggregate: Aggregate,
    direction: Direction,
    r: usize,
    n: usize,
    nondegenerate: bool,
) -> NgQuery {
    NgQuery {
        param,
        aggregate,
        direction,
        r,
        n,
        nondegenerate,
    }
}

struct Ctx {
    jobs: Option<usize>,
}

impl Ctx {
    fn exact(&self, q: &NgQuery) -> Result<NgResult> {
        let res = ng_exact(
            q,
            &NgOptions {
                jobs: self.jobs,
                ..NgOptions::default()
            },
        )?;
        replay(&res)?;
        Ok(res)
    }

    fn expect_values(&self, qs: Vec<(NgQuery, u64)>) -> Result<String> {
        let mut seen = Vec::new();
        for (q, want) in qs {
            let got = self.exact(&q)?.value;
            if got != ValueInterval::exact(want) {
                return mismatch(format!("n = {}: got {got}, expected {want}", q.n));
            }
            seen.push(format!("n={}:{want}", q.n));
        }
        Ok(seen.join(" "))
    }
}

fn eta_sum(ctx: &Ctx, caps: &LevelCaps) -> Result<String> {
    ctx.expect_values(
        caps.eta_sum_orders
            .iter()
            .map(|&n| {
                (
                    query(
                        ParamKind::Eta,
                        Aggregate::Sum,
                        Direction::Upper,
                        2,
                        n,
                        false,
                    ),
                    6 * n as u64 / 5,
                )
            })
            .collect(),
    )
}

fn tw_sum(ctx: &Ctx, caps: &LevelCaps) -> Result<String> {
    ctx.expect_values(
        caps.tw_sum_orders
            .iter()
            .map(|&n| {
                (
                    query(ParamKind::Tw, Aggregate::Sum, Direction::Lower, 2, n, false),
                    n as u64 - 2,
                )
            })
            .collect(),
    )
}

fn tw_prod(ctx: &Ctx, caps: &LevelCaps) -> Result<String> {
    ctx.expect_values(
        caps.tw_prod_orders
            .iter()
            .map(|&n| {
                (
                    query(ParamKind::Tw, Aggregate::Prod, Direction::Lower, 2, n, true),
                    n as u64 - 3,
                )
            })
            .collect(),
    )
}

fn eta_prod(ctx: &Ctx, caps: &LevelCaps) -> Result<String> {
    ctx.expect_values(
        caps.eta_prod_orders
            .iter()
            .map(|&n| {
                (
                    query(
                        ParamKind::Eta,
                        Aggregate::Prod,
                        Direction::Lower,
                        2,
                        n,
                        false,
                    ),
                    n as u64,
                )
            })
            .collect(),
    )
}

fn ktree_floor(ctx: &Ctx, caps: &LevelCaps) -> Result<String> {
    let mut seen = Vec::new();
    for &(r, n) in &caps.floor_pairs {
        let floor = tw_sum_lower_bound(r as u64, n as u64).1;
        let got = ctx
            .exact(&query(
                ParamKind::Tw,
                Aggregate::Sum,
                Direction::Lower,
                r,
                n,
                false,
            ))?
            .value;
        if (got.lo as i64) < floor {
            return mismatch(format!("(r, n) = ({r}, {n}): value {got} below {floor}"));
        }
        seen.push(format!("({r},{n}):{floor}<={got}"));
    }
    Ok(seen.join(" "))
}

fn constructions() -> Result<String> {
    let pw: Vec<u64> = four_block_decomposition(8, 3, false)?
        .decomposition
        .values(ParamKind::Pw, None)?
        .iter()
        .map(|v| v.lo)
        .collect();
    if pw != [2, 2, 2] {
        return mismatch(format!("four-block n=8 r=3 path-widths {pw:?}"));
    }
    let c = path_plus_remainder_decomposition(6, 2)?;
    c.verify(None)?;
    let ppw: Vec<u64> = c
        .decomposition
        .values(ParamKind::Ppw, None)?
        .iter()
        .map(|v| v.lo)
        .collect();
    if ppw != [1, 3] {
        return mismatch(format!(
            "paths-plus-remainder n=6 r=2 proper path-widths {ppw:?}"
        ));
    }
    let c = blowup_decomposition(6, 3)?;
    c.verify(None)?;
    let eta: u64 = c
        .decomposition
        .values(ParamKind::Eta, None)?
        .iter()
        .map(|v| v.lo)
        .sum();
    if eta < 10 {
        return mismatch(format!("blowup n=6 r=3 Hadwiger sum {eta}"));
    }
    Ok(format!("pw {pw:?}, ppw {ppw:?}, eta sum {eta}"))
}

fn min_product() -> Result<String> {
    fn brute(left: u64, parts: u64, n: u64) -> Option<u128> {
        if parts == 0 {
            return (left == 0).then_some(1);
        }
        (1..=n.min(left))
            .filter_map(|a| brute(left - a, parts - 1, n).map(|p| p * a as u128))
            .min()
    }
    let mut cases = 0;
    for r in 1..=4u64 {
        for n in 2..=6u64 {
            for sigma in r..=r * n {
                let w = min_product_given_sum(r, n, sigma)?;
                if Some(w.min_product) != brute(sigma, r, n) {
                    return mismatch(format!("r={r} n={n} sigma={sigma}: {}", w.min_product));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases"))
}

/// Reference rows `(r, r / t, sqrt r)` for r = 3..10.
const LIMSUP_TABLE: [(u64, &str, &str); 8] = [
    (3, "1.5", "1.73205"),
    (4, "1.33333", "2.0"),
    (5, "1.66667", "2.23607"),
    (6, "2.0", "2.44949"),
    (7, "1.75", "2.64575"),
    (8, "2.0", "2.82843"),
    (9, "2.25", "3.0"),
    (10, "2.5", "3.16228"),
];

fn limsup_table() -> Result<String> {
    let rows = table1(10)?;
    for (row, (r, lo, hi)) in rows.iter().zip(LIMSUP_TABLE) {
        let got = (row.r, format_decimal(row.lower), format_decimal(row.upper));
        if got != (r, lo.to_string(), hi.to_string()) {
            return mismatch(format!("row {r}: {got:?}"));
        }
    }
    Ok("r = 3..10".into())
}

fn ground_truths() -> Result<String> {
    let value = |k: ParamKind, g: &Graph| param_value(k, g).map(|v| v.lo);
    for p in 2..=4 {
        let g = Graph::make(GraphFamily::CompleteBipartite(p, p))?;
        if value(ParamKind::Pw, &g)? != p as u64 || value(ParamKind::Eta, &g)? != p as u64 + 1 {
            return mismatch(format!("K_{{{p},{p}}}"));
        }
    }
    for n in 1..=8 {
        if value(ParamKind::Tw, &Graph::complete(n)?)? != n as u64 - 1 {
            return mismatch(format!("tw(K_{n})"));
        }
    }
    for n in 2..=12 {
        if value(ParamKind::Ppw, &Graph::make(GraphFamily::Path(n))?)? != 1 {
            return mismatch(format!("ppw(P_{n})"));
        }
    }
    Ok("K_{p,p}, K_n, P_n".into())
}

fn width_chain(order: usize) -> Result<String> {
    let m = order * (order - 1) / 2;
    (0..1u128 << m)
        .into_par_iter()
        .try_for_each(|bits| -> Result<()> {
            let g = Graph::from_edge_bits(order, bits)?;
            let w = |k| param_value(k, &g).map(|v| v.lo);
            let (tw, la, pw, ppw) = (
                w(ParamKind::Tw)?,
                w(ParamKind::La)?,
                w(ParamKind::Pw)?,
                w(ParamKind::Ppw)?,
            );
            if !(tw <= la && la <= pw && pw <= ppw && la <= tw + 1 && ppw <= pw + 1) {
                return mismatch(format!(
                    "{}: tw {tw} la {la} pw {pw} ppw {ppw}",
                    graph6_emit(&g)
                ));
            }
            if vertex_separation(&g)?.0 != caterpillar_width(&g)?.0 {
                return Err(Error::Disagreement(format!(
                    "{}: path-width algorithms differ",
                    graph6_emit(&g)
                )));
            }
            Ok(())
        })?;
    Ok(format!("{} labelled graphs on {order} vertices", 1u64 << m))
}

fn chromatic_vs_hadwiger(samples: usize, seed: u64) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graphs: Vec<Graph> = (0..samples)
        .map(|_| {
            let n = rng.gen_range(1..=7);
            let p: f64 = rng.gen();
            let mut g = Graph::empty(n).expect("small order");
            for j in 1..n {
                for i in 0..j {
                    if rng.gen::<f64>() < p {
                        g.add_edge(crate::graph::EdgeId::new(i, j).expect("in range"));
                    }
                }
            }
            g
        })
        .collect();
    graphs.par_iter().try_for_each(|g| -> Result<()> {
        let chi = chromatic_number(g)?;
        let eta = hadwiger(g)?.0;
        if chi > eta {
            return mismatch(format!("chi {chi} > eta {eta} on {}", graph6_emit(g)));
        }
        Ok(())
    })?;
    Ok(format!("{samples} random graphs, seed {seed}"))
}

fn sampled_floors(caps: &LevelCaps, seed: u64) -> Result<String> {
    let mut checks = 0;
    for &(r, n, samples) in &caps.mc_runs {
        for &p in &caps.mc_params {
            checks += monte_carlo(p, r, n, samples, seed)?.bound_checks;
        }
    }
    Ok(format!("{checks} row checks"))
}

fn determinism(ctx: &Ctx, caps: &LevelCaps) -> Result<String> {
    let mut qs = Vec::new();
    for n in 4..=caps.determinism_max_n {
        qs.push(query(
            ParamKind::Eta,
            Aggregate::Sum,
            Direction::Upper,
            2,
            n,
            false,
        ));
        qs.push(query(
            ParamKind::Tw,
            Aggregate::Sum,
            Direction::Lower,
            2,
            n,
            false,
        ));
        qs.push(query(
            ParamKind::Tw,
            Aggregate::Prod,
            Direction::Lower,
            2,
            n,
            true,
        ));
        qs.push(query(
            ParamKind::Eta,
            Aggregate::Prod,
            Direction::Lower,
            2,
            n,
            false,
        ));
    }
    for q in &qs {
        let run = |symmetry, jobs| {
            ng_exact(
                q,
                &NgOptions {
                    symmetry,
                    jobs,
                    ..NgOptions::default()
                },
            )
        };
        let base = run(SymmetryMode::Full, Some(1))?;
        for (mode, jobs) in [
            (SymmetryMode::Full, ctx.jobs),
            (SymmetryMode::Vertices, ctx.jobs),
            (SymmetryMode::None, ctx.jobs),
            (SymmetryMode::None, Some(1)),
        ] {
            let other = run(mode, jobs)?;
            if other.value != base.value || other.witness != base.witness {
                return Err(Error::Disagreement(format!(
                    "{q:?}: {mode} with {jobs:?} workers gives {} (full, 1 worker: {})",
                    other.value, base.value
                )));
            }
        }
    }
    Ok(format!("{} queries", qs.len()))
}

type CheckFn<'a> = Box<dyn Fn() -> Result<String> + 'a>;

/// Runs every check at the level's sizes. Deterministic apart from timing.
pub fn verify_suite(level: VerifyLevel, seed: u64, jobs: Option<usize>) -> Report {
    let caps = level.caps();
    let ctx = Ctx { jobs };
    let start = Instant::now();
    let mut report = Report::new(
        "verify",
        seed,
        serde_json::json!({ "level": level, "caps": &caps, "jobs": jobs }),
    );
    let checks: Vec<(&str, &str, CheckFn)> = vec![
        (
            "eta-sum-two-parts",
            "maximum Hadwiger sum over 2-decompositions is floor(6n/5)",
            Box::new(|| eta_sum(&ctx, &caps)),
        ),
        (
            "tw-sum-two-parts",
            "minimum tree-width sum over 2-decompositions is n - 2",
            Box::new(|| tw_sum(&ctx, &caps)),
        ),
        (
            "tw-product-two-parts",
            "minimum non-degenerate tree-width product over 2-decompositions is n - 3",
            Box::new(|| tw_prod(&ctx, &caps)),
        ),
        (
            "eta-product-two-parts",
            "minimum Hadwiger product over 2-decompositions is n",
            Box::new(|| eta_prod(&ctx, &caps)),
        ),
        (
            "ktree-floor",
            "k-tree edge-count floor never exceeds the minimum tree-width sum",
            Box::new(|| ktree_floor(&ctx, &caps)),
        ),
        (
            "constructions",
            "four-block, paths-plus-remainder and blowup decompositions realize their values",
            Box::new(constructions),
        ),
        (
            "min-product",
            "closed-form minimum product matches exhaustive search",
            Box::new(min_product),
        ),
        (
            "limsup-table",
            "r / ceil(trt(r)) and sqrt(r) for r = 3..10 to 5 decimals",
            Box::new(limsup_table),
        ),
        (
            "ground-truths",
            "solver values on complete, complete bipartite and path graphs",
            Box::new(ground_truths),
        ),
        (
            "width-chain",
            "tw <= la <= pw <= ppw, la <= tw + 1, ppw <= pw + 1, two path-width algorithms agree",
            Box::new(|| width_chain(caps.chain_order)),
        ),
        (
            "chi-below-eta",
            "chromatic number at most Hadwiger number on random graphs",
            Box::new(|| chromatic_vs_hadwiger(caps.chi_samples, seed)),
        ),
        (
            "sampled-floors",
            "random decompositions respect every assertable catalogue row",
            Box::new(|| sampled_floors(&caps, seed)),
        ),
        (
            "determinism",
            "values and witnesses independent of symmetry mode and workers",
            Box::new(|| determinism(&ctx, &caps)),
        ),
    ];
    for (id, description, f) in checks {
        let t = Instant::now();
        let (passed, outcome, detail) = match f() {
            Ok(d) => (true, Outcome::Ok, d),
            Err(e) => (false, Outcome::of_error(&e), e.to_string()),
        };
        report.outcome = report.outcome.worst(outcome);
        report
            .timing
            .checks_ms
            .insert(id.to_string(), t.elapsed().as_secs_f64() * 1e3);
        report.checks.push(CheckOutcome {
            id: id.to_string(),
            description: description.to_string(),
            passed,
            outcome,
            detail,
        });
    }
    let passed = report.checks.iter().filter(|c| c.passed).count();
    report.result = serde_json::json!({ "passed": passed, "total": report.checks.len() });
    report.timing.total_ms = start.elapsed().as_secs_f64() * 1e3;
    report
}

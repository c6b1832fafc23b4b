//! End-to-end acceptance checks. Each criterion prints one line and carries
//! a pinned time limit; the run exits non-zero if any criterion fails.
//! Runs without the libtest harness so the lines are never captured.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use ngw::bounds::{min_product_given_sum, table1, tw_sum_lower_bound, Aggregate, Direction};
use ngw::constructions::{
    blowup_decomposition, four_block_decomposition, path_plus_remainder_decomposition,
    random_decomposition_stream,
};
use ngw::graph::graph6_emit;
use ngw::ng::{monte_carlo, ng_exact, replay, NgOptions, NgQuery, NgResult, SymmetryMode};
use ngw::width::{
    caterpillar_width, certify, chromatic_number, hadwiger, param_value, solve, vertex_separation,
};
use ngw::{EdgeId, Graph, GraphFamily, ParamKind, ValueInterval};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, f64, fn() -> Outcome);

/// Reference rows `(r, r / t, sqrt r)`, five decimals.
const TABLE: [(u64, f64, f64); 8] = [
    (3, 1.5, 1.73205),
    (4, 1.33333, 2.0),
    (5, 1.66667, 2.23607),
    (6, 2.0, 2.44949),
    (7, 1.75, 2.64575),
    (8, 2.0, 2.82843),
    (9, 2.25, 3.0),
    (10, 2.5, 3.16228),
];
const TABLE_TOL: f64 = 5e-6;
const SEED: u64 = 0;
const WORKERS: usize = 4;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(param: ParamKind, aggregate: Aggregate, direction: Direction, n: usize, nd: bool) -> NgQuery {
    q_r(param, aggregate, direction, 2, n, nd)
}

fn q_r(
    param: ParamKind,
    aggregate: Aggregate,
    direction: Direction,
    r: usize,
    n: usize,
    nd: bool,
) -> NgQuery {
    NgQuery {
        param,
        aggregate,
        direction,
        r,
        n,
        nondegenerate: nd,
    }
}

fn exact(query: &NgQuery, symmetry: SymmetryMode, jobs: Option<usize>) -> Result<NgResult, String> {
    let res = ng_exact(
        query,
        &NgOptions {
            symmetry,
            jobs,
            ..NgOptions::default()
        },
    )
    .map_err(|e| e.to_string())?;
    replay(&res).map_err(|e| e.to_string())?;
    Ok(res)
}

// Independent oracles, small orders only.

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn go(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            go(k + 1, p, out);
            p.swap(k, i);
        }
    }
    go(0, &mut p, &mut out);
    out
}

fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    (0..n)
        .map(|a| (0..n).map(|b| g.has_edge(a, b)).collect())
        .collect()
}

/// Tree-width as the best elimination ordering.
fn tw_oracle(g: &Graph) -> usize {
    let n = g.n();
    permutations(n)
        .iter()
        .map(|order| {
            let mut adj = adjacency(g);
            let mut gone = vec![false; n];
            let mut width = 0;
            for &v in order {
                let nb: Vec<usize> = (0..n).filter(|&u| !gone[u] && adj[v][u]).collect();
                width = width.max(nb.len());
                for &a in &nb {
                    for &b in &nb {
                        if a != b {
                            adj[a][b] = true;
                        }
                    }
                }
                gone[v] = true;
            }
            width
        })
        .min()
        .unwrap_or(0)
}

/// Path-width as the best vertex separation over all layouts.
fn pw_oracle(g: &Graph) -> usize {
    let n = g.n();
    let adj = adjacency(g);
    permutations(n)
        .iter()
        .map(|order| {
            (1..n)
                .map(|i| {
                    order[..i]
                        .iter()
                        .filter(|&&v| order[i..].iter().any(|&u| adj[v][u]))
                        .count()
                })
                .max()
                .unwrap_or(0)
        })
        .min()
        .unwrap_or(0)
}

/// Hadwiger number by vertex deletions and edge contractions.
fn eta_oracle(adj: Vec<Vec<bool>>, memo: &mut HashMap<Vec<Vec<bool>>, usize>) -> usize {
    let n = adj.len();
    if (0..n).all(|a| (0..n).all(|b| a == b || adj[a][b])) {
        return n;
    }
    if let Some(&v) = memo.get(&adj) {
        return v;
    }
    // drop vertex u, first merging its neighbourhood into v when given
    let shrink = |u: usize, into: Option<usize>| -> Vec<Vec<bool>> {
        let keep: Vec<usize> = (0..n).filter(|&x| x != u).collect();
        let edge = |a: usize, b: usize| {
            let via = |x: usize, y: usize| Some(x) == into && adj[u][y];
            a != b && (adj[a][b] || via(a, b) || via(b, a))
        };
        keep.iter()
            .map(|&a| keep.iter().map(|&b| edge(a, b)).collect())
            .collect()
    };
    let mut best = 0;
    for u in 0..n {
        best = best.max(eta_oracle(shrink(u, None), memo));
        for v in 0..n {
            if adj[u][v] {
                best = best.max(eta_oracle(shrink(u, Some(v)), memo));
            }
        }
    }
    memo.insert(adj, best);
    best
}

fn eta_of(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    eta_oracle(adjacency(g), &mut HashMap::new())
}

fn part_values(res: &NgResult, f: impl Fn(&Graph) -> usize) -> Vec<u64> {
    res.witness.parts().iter().map(|g| f(g) as u64).collect()
}

fn agg(a: Aggregate, xs: &[u64]) -> u64 {
    match a {
        Aggregate::Sum => xs.iter().sum(),
        Aggregate::Prod => xs.iter().product(),
    }
}

/// Checks the optimum against `want(n)` and re-evaluates the witness with
/// an oracle.
fn exact_series(
    param: ParamKind,
    aggregate: Aggregate,
    direction: Direction,
    nd: bool,
    orders: &[usize],
    want: impl Fn(usize) -> u64,
    oracle: impl Fn(&Graph) -> usize,
) -> Outcome {
    let mut seen = Vec::new();
    for &n in orders {
        let res = exact(
            &q(param, aggregate, direction, n, nd),
            SymmetryMode::Full,
            None,
        )?;
        ensure(res.value == ValueInterval::exact(want(n)), || {
            format!("n = {n}: got {}, expected {}", res.value, want(n))
        })?;
        let parts = part_values(&res, &oracle);
        ensure(agg(aggregate, &parts) == want(n), || {
            format!("n = {n}: witness re-evaluates to {parts:?}")
        })?;
        seen.push(format!("n={n}:{}", want(n)));
    }
    Ok(seen.join(" "))
}

fn c1() -> Outcome {
    exact_series(
        ParamKind::Eta,
        Aggregate::Sum,
        Direction::Upper,
        false,
        &[5, 6, 7],
        |n| 6 * n as u64 / 5,
        eta_of,
    )
}

fn c2() -> Outcome {
    exact_series(
        ParamKind::Tw,
        Aggregate::Sum,
        Direction::Lower,
        false,
        &[4, 5, 6, 7],
        |n| n as u64 - 2,
        tw_oracle,
    )
}

fn c3() -> Outcome {
    exact_series(
        ParamKind::Tw,
        Aggregate::Prod,
        Direction::Lower,
        true,
        &[4, 5, 6],
        |n| n as u64 - 3,
        tw_oracle,
    )
}

fn c4() -> Outcome {
    exact_series(
        ParamKind::Eta,
        Aggregate::Prod,
        Direction::Lower,
        false,
        &[4, 5],
        |n| n as u64,
        eta_of,
    )
}

fn c5() -> Outcome {
    let mut seen = Vec::new();
    for (r, n) in [(2, 4), (2, 5), (2, 6), (3, 4), (3, 5)] {
        let (raw, floor) = tw_sum_lower_bound(r as u64, n as u64);
        ensure(
            floor == raw.ceil() as i64 || (raw - raw.round()).abs() < 1e-9,
            || format!("({r}, {n}): floor {floor} is not the ceiling of {raw}"),
        )?;
        let res = exact(
            &q_r(ParamKind::Tw, Aggregate::Sum, Direction::Lower, r, n, false),
            SymmetryMode::Full,
            None,
        )?;
        ensure(res.value.lo as i64 >= floor, || {
            format!("({r}, {n}): {} < {floor}", res.value)
        })?;
        seen.push(format!("({r},{n}):{floor}<={}", res.value));
    }
    Ok(seen.join(" "))
}

fn c6() -> Outcome {
    let e = |x: ngw::Error| x.to_string();
    let fb = four_block_decomposition(8, 3, false).map_err(e)?;
    fb.verify(None).map_err(e)?;
    let pw: Vec<usize> = fb.decomposition.parts().iter().map(pw_oracle).collect();
    ensure(pw == [2, 2, 2], || format!("four-block path-widths {pw:?}"))?;

    let pr = path_plus_remainder_decomposition(6, 2).map_err(e)?;
    pr.verify(None).map_err(e)?;
    let mut ppw = Vec::new();
    for g in pr.decomposition.parts() {
        let (v, cert) = solve(ParamKind::Ppw, g).map_err(e)?;
        certify::check(ParamKind::Ppw, g, v, &cert).map_err(e)?;
        let p = pw_oracle(g) as u64;
        ensure(p <= v && v <= p + 1, || {
            format!("ppw {v} outside [pw, pw + 1] = [{p}, {}]", p + 1)
        })?;
        ppw.push(v);
    }
    ensure(ppw == [1, 3] && ppw.iter().sum::<u64>() == 4, || {
        format!("paths-plus-remainder {ppw:?}")
    })?;

    let bu = blowup_decomposition(6, 3).map_err(e)?;
    bu.verify(None).map_err(e)?;
    let eta: usize = bu.decomposition.parts().iter().map(eta_of).sum();
    ensure(eta >= 10, || format!("blowup Hadwiger sum {eta}"))?;
    Ok(format!("pw {pw:?}, ppw {ppw:?}, eta sum {eta}"))
}

fn c7() -> Outcome {
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
                let got = min_product_given_sum(r, n, sigma)
                    .map_err(|e| e.to_string())?
                    .min_product;
                ensure(Some(got) == brute(sigma, r, n), || {
                    format!("r={r} n={n} sigma={sigma}: {got}")
                })?;
                cases += 1;
            }
        }
    }
    ensure(cases == 170, || format!("{cases} cases"))?;
    Ok(format!("{cases} feasible (r, n, sigma)"))
}

fn c8() -> Outcome {
    let rows = table1(10).map_err(|e| e.to_string())?;
    ensure(rows.len() == TABLE.len(), || format!("{} rows", rows.len()))?;
    for (row, (r, lo, hi)) in rows.iter().zip(TABLE) {
        ensure(
            row.r == r
                && (row.lower - lo).abs() <= TABLE_TOL
                && (row.upper - hi).abs() <= TABLE_TOL,
            || format!("row {r}: ({}, {}, {})", row.r, row.lower, row.upper),
        )?;
    }
    Ok(format!("r = 3..10 within {TABLE_TOL:e}"))
}

fn c9() -> Outcome {
    let v = |k, g: &Graph| param_value(k, g).map(|v| v.lo).map_err(|e| e.to_string());
    for p in 2..=4usize {
        let g = Graph::make(GraphFamily::CompleteBipartite(p, p)).unwrap();
        ensure(v(ParamKind::Pw, &g)? == p as u64, || {
            format!("pw(K_{{{p},{p}}})")
        })?;
        ensure(v(ParamKind::Eta, &g)? == p as u64 + 1, || {
            format!("eta(K_{{{p},{p}}})")
        })?;
        ensure(eta_of(&g) == p + 1, || format!("oracle eta(K_{{{p},{p}}})"))?;
    }
    for n in 1..=8usize {
        ensure(
            v(ParamKind::Tw, &Graph::complete(n).unwrap())? == n as u64 - 1,
            || format!("tw(K_{n})"),
        )?;
    }
    for n in 2..=12usize {
        ensure(
            v(ParamKind::Ppw, &Graph::make(GraphFamily::Path(n)).unwrap())? == 1,
            || format!("ppw(P_{n})"),
        )?;
    }
    Ok("pw(K_p,p) = p, eta(K_s,s) = s + 1, tw(K_n) = n - 1, ppw(P_n) = 1".into())
}

fn c10() -> Outcome {
    let e = |x: ngw::Error| x.to_string();
    let mut count = 0;
    for bits in 0..1u128 << 15 {
        let g = Graph::from_edge_bits(6, bits).map_err(e)?;
        let w = |k| param_value(k, &g).map(|v| v.lo).map_err(e);
        let (tw, la, pw, ppw) = (
            w(ParamKind::Tw)?,
            w(ParamKind::La)?,
            w(ParamKind::Pw)?,
            w(ParamKind::Ppw)?,
        );
        ensure(
            tw <= la && la <= pw && pw <= ppw && la <= tw + 1 && ppw <= pw + 1,
            || format!("{}: {tw} {la} {pw} {ppw}", graph6_emit(&g)),
        )?;
        let (a, b) = (
            vertex_separation(&g).map_err(e)?.0,
            caterpillar_width(&g).map_err(e)?.0,
        );
        ensure(a == b, || {
            format!("{}: separation {a} vs caterpillar {b}", graph6_emit(&g))
        })?;
        count += 1;
    }
    ensure(count == 32_768, || format!("{count} graphs"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=7);
        let p: f64 = rng.gen();
        let mut g = Graph::empty(n).unwrap();
        for j in 1..n {
            for i in 0..j {
                if rng.gen::<f64>() < p {
                    g.add_edge(EdgeId::new(i, j).unwrap());
                }
            }
        }
        let (chi, eta) = (chromatic_number(&g).map_err(e)?, hadwiger(&g).map_err(e)?.0);
        ensure(chi <= eta, || {
            format!("chi {chi} > eta {eta} on {}", graph6_emit(&g))
        })?;
    }
    Ok("32768 graphs on 6 vertices, 10000 random graphs".into())
}

fn c11() -> Outcome {
    let e = |x: ngw::Error| x.to_string();
    let mut checks = 0;
    for (r, n, samples) in [(2, 10, 100), (3, 8, 50)] {
        for param in ParamKind::ALL {
            checks += monte_carlo(param, r, n, samples, SEED)
                .map_err(e)?
                .bound_checks;
        }
        // the two floors named explicitly, evaluated without the catalogue
        for i in 0..samples as u64 {
            let d = random_decomposition_stream(n, r, SEED, i).map_err(e)?;
            let tw: u64 = d
                .values(ParamKind::Tw, None)
                .map_err(e)?
                .iter()
                .map(|v| v.lo)
                .sum();
            if r == 2 {
                ensure(tw >= n as u64 - 2, || format!("sample {i}: tw sum {tw}"))?;
            }
            let eta: u64 = d
                .values(ParamKind::Eta, None)
                .map_err(e)?
                .iter()
                .map(|v| v.lo)
                .product();
            ensure(eta as f64 >= 0.513f64.powi(r as i32 - 2) * n as f64, || {
                format!("sample {i}: eta product {eta}")
            })?;
        }
    }
    Ok(format!("{checks} catalogue row checks"))
}

fn c12() -> Outcome {
    let mut count = 0;
    for n in 4..=5 {
        for query in [
            q(ParamKind::Eta, Aggregate::Sum, Direction::Upper, n, false),
            q(ParamKind::Tw, Aggregate::Sum, Direction::Lower, n, false),
            q(ParamKind::Tw, Aggregate::Prod, Direction::Lower, n, true),
            q(ParamKind::Eta, Aggregate::Prod, Direction::Lower, n, false),
        ] {
            let base = exact(&query, SymmetryMode::Full, Some(1))?;
            for (mode, jobs) in [
                (SymmetryMode::Full, Some(WORKERS)),
                (SymmetryMode::None, Some(1)),
                (SymmetryMode::None, Some(WORKERS)),
                (SymmetryMode::Vertices, Some(WORKERS)),
            ] {
                let other = exact(&query, mode, jobs)?;
                ensure(
                    other.value == base.value && other.witness == base.witness,
                    || format!("{query:?} under {mode} with {jobs:?} workers"),
                )?;
            }
            count += 1;
        }
    }
    Ok(format!(
        "{count} queries, symmetry full/vertices/none, 1 and {WORKERS} workers"
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        (1, "max eta sum, r = 2, n = 5..7", 600.0, c1),
        (2, "min tw sum, r = 2, n = 4..7", 600.0, c2),
        (
            3,
            "min non-degenerate tw product, r = 2, n = 4..6",
            600.0,
            c3,
        ),
        (4, "min eta product, r = 2, n = 4, 5", 120.0, c4),
        (5, "k-tree floor below min tw sum", 900.0, c5),
        (6, "constructions realize their widths", 180.0, c6),
        (7, "min product given sum vs exhaustive", 60.0, c7),
        (8, "limsup table, r = 3..10", 1.0, c8),
        (9, "solver ground truths", 60.0, c9),
        (10, "width chain, dual path-width, chi <= eta", 1800.0, c10),
        (
            11,
            "random decompositions respect the catalogue",
            1200.0,
            c11,
        ),
        (12, "symmetry and worker independence", 600.0, c12),
    ];
    let mut failed = Vec::new();
    for (id, name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let outcome = outcome.and_then(|d| {
            if secs <= limit {
                Ok(d)
            } else {
                Err(format!("{d}; took {secs:.1} s, limit {limit} s"))
            }
        });
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => ("FAIL", d.clone()),
        };
        println!("criterion {id:>2} {tag} {name} [{secs:.2} s <= {limit} s]: {detail}");
        if outcome.is_err() {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}

//! Certificate replay. These checkers work on plain adjacency matrices and
//! do not call into the solvers.

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::{HostRule, KTreeHost, ParamKind, WidthCertificate};

fn fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Disagreement(msg.into()))
}

fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    (0..n)
        .map(|a| (0..n).map(|b| g.has_edge(a, b)).collect())
        .collect()
}

fn check_permutation(n: usize, order: &[usize]) -> Result<Vec<usize>> {
    if order.len() != n {
        return fail(format!(
            "ordering has {} entries for {n} vertices",
            order.len()
        ));
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return fail(format!("ordering is not a permutation at entry {i}"));
        }
        pos[v] = i;
    }
    Ok(pos)
}

/// Width of an elimination ordering: largest number of later neighbours
/// met in the filled graph.
pub fn elimination_width(g: &Graph, order: &[usize]) -> Result<usize> {
    let n = g.n();
    let pos = check_permutation(n, order)?;
    let mut adj = matrix(g);
    let mut width = 0;
    for &v in order {
        let later: Vec<usize> = (0..n).filter(|&u| adj[v][u] && pos[u] > pos[v]).collect();
        width = width.max(later.len());
        for &a in &later {
            for &b in &later {
                if a != b {
                    adj[a][b] = true;
                }
            }
        }
    }
    Ok(width)
}

/// Vertex separation of a layout.
pub fn separation_width(g: &Graph, order: &[usize]) -> Result<usize> {
    let n = g.n();
    let pos = check_permutation(n, order)?;
    let adj = matrix(g);
    let mut width = 0;
    for i in 0..n {
        let count = (0..n)
            .filter(|&u| pos[u] <= i && (0..n).any(|w| adj[u][w] && pos[w] > i))
            .count();
        width = width.max(count);
    }
    Ok(width)
}

/// Replays a host construction, checks its shape rule and that it contains
/// every edge of `g`. Returns the host width `k`.
pub fn host_width(g: &Graph, host: &KTreeHost) -> Result<usize> {
    let n = g.n();
    let k = host.k;
    if host.seed.len() != k + 1 {
        return fail(format!(
            "seed has {} vertices, expected {}",
            host.seed.len(),
            k + 1
        ));
    }
    let mut order = host.seed.clone();
    order.extend(host.steps.iter().map(|s| s.vertex));
    check_permutation(n, &order)?;

    let mut adj = vec![vec![false; n]; n];
    let mut present = vec![false; n];
    for &a in &host.seed {
        present[a] = true;
        for &b in &host.seed {
            if a != b {
                adj[a][b] = true;
            }
        }
    }
    let degree = |adj: &Vec<Vec<bool>>, v: usize| adj[v].iter().filter(|&&x| x).count();
    let sorted = |s: &[usize]| {
        let mut s = s.to_vec();
        s.sort_unstable();
        s
    };

    let mut newest: Vec<usize> = sorted(&host.seed);
    let mut prev: Option<usize> = None;
    let mut used: Vec<Vec<usize>> = Vec::new();
    for (i, step) in host.steps.iter().enumerate() {
        let facet = sorted(&step.facet);
        if facet.len() != k || facet.windows(2).any(|w| w[0] == w[1]) {
            return fail(format!("step {i}: facet must have {k} distinct vertices"));
        }
        for (x, &a) in facet.iter().enumerate() {
            if !present[a] {
                return fail(format!("step {i}: facet vertex {a} is not in the host yet"));
            }
            if facet[x + 1..].iter().any(|&b| !adj[a][b]) {
                return fail(format!("step {i}: facet is not a clique"));
            }
        }
        let allowed = match host.rule {
            HostRule::Caterpillar => facet.iter().all(|v| newest.contains(v)),
            HostRule::Linear => {
                facet.iter().all(|v| newest.contains(v))
                    && (k == 0 || prev.is_none_or(|p| facet.contains(&p)))
            }
            HostRule::TwoSided => {
                k == 0 || used.contains(&facet) || facet.iter().any(|&v| degree(&adj, v) == k)
            }
        };
        if !allowed {
            return fail(format!(
                "step {i}: facet {facet:?} breaks the {:?} rule",
                host.rule
            ));
        }
        let w = step.vertex;
        present[w] = true;
        for &a in &facet {
            adj[a][w] = true;
            adj[w][a] = true;
        }
        if !used.contains(&facet) {
            used.push(facet.clone());
        }
        newest = facet;
        newest.push(w);
        newest.sort_unstable();
        prev = Some(w);
    }

    for a in 0..n {
        for b in a + 1..n {
            if g.has_edge(a, b) && !adj[a][b] {
                return fail(format!("edge {a}-{b} is missing from the host"));
            }
        }
    }
    Ok(k)
}

/// Checks branch sets are disjoint, connected and pairwise adjacent;
/// returns their number.
pub fn minor_order(g: &Graph, sets: &[Vec<usize>]) -> Result<usize> {
    let n = g.n();
    let mut owner = vec![usize::MAX; n];
    for (i, s) in sets.iter().enumerate() {
        if s.is_empty() {
            return fail(format!("branch set {i} is empty"));
        }
        for &v in s {
            if v >= n || owner[v] != usize::MAX {
                return fail(format!("vertex {v} is out of range or reused"));
            }
            owner[v] = i;
        }
        let mut seen = vec![s[0]];
        let mut stack = vec![s[0]];
        while let Some(v) = stack.pop() {
            for &u in s {
                if g.has_edge(u, v) && !seen.contains(&u) {
                    seen.push(u);
                    stack.push(u);
                }
            }
        }
        if seen.len() != s.len() {
            return fail(format!("branch set {i} is not connected"));
        }
    }
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let touch = sets[i]
                .iter()
                .any(|&a| sets[j].iter().any(|&b| g.has_edge(a, b)));
            if !touch {
                return fail(format!("branch sets {i} and {j} are not adjacent"));
            }
        }
    }
    Ok(sets.len())
}

pub fn clique_size(g: &Graph, vertices: &[usize]) -> Result<usize> {
    for (x, &a) in vertices.iter().enumerate() {
        if a >= g.n() {
            return fail(format!("vertex {a} out of range"));
        }
        if vertices[x + 1..]
            .iter()
            .any(|&b| a == b || !g.has_edge(a, b))
        {
            return fail("vertex set is not a clique");
        }
    }
    Ok(vertices.len())
}

/// Number of colours of a proper colouring.
pub fn coloring_size(g: &Graph, colors: &[usize]) -> Result<usize> {
    if colors.len() != g.n() {
        return fail("colouring length differs from the order");
    }
    for e in g.edges() {
        if colors[e.lo()] == colors[e.hi()] {
            return fail(format!("edge {e} is monochromatic"));
        }
    }
    let mut distinct = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    Ok(distinct.len())
}

/// Replays `cert` and checks it attains `value` for `kind`. Certificates
/// only witness one side of an optimum; optimality is the solver's claim.
pub fn check(kind: ParamKind, g: &Graph, value: u64, cert: &WidthCertificate) -> Result<()> {
    let got = match (kind, cert) {
        (ParamKind::Tw, WidthCertificate::EliminationOrdering { order }) => {
            elimination_width(g, order)?
        }
        (ParamKind::Pw, WidthCertificate::VertexOrdering { order }) => separation_width(g, order)?,
        (ParamKind::Pw, WidthCertificate::Host { host }) if host.rule == HostRule::Caterpillar => {
            host_width(g, host)?
        }
        (ParamKind::Ppw, WidthCertificate::Host { host }) if host.rule == HostRule::Linear => {
            host_width(g, host)?
        }
        (ParamKind::La, WidthCertificate::Host { host }) if host.rule == HostRule::TwoSided => {
            host_width(g, host)?
        }
        (ParamKind::Eta, WidthCertificate::BranchSets { sets }) => minor_order(g, sets)?,
        (ParamKind::Omega, WidthCertificate::Clique { vertices }) => clique_size(g, vertices)?,
        (ParamKind::Chi, WidthCertificate::Coloring { colors }) => coloring_size(g, colors)?,
        _ => return fail(format!("certificate kind does not fit {kind}")),
    };
    if got as u64 != value {
        return fail(format!(
            "{kind} certificate replays to {got}, claimed {value}"
        ));
    }
    Ok(())
}

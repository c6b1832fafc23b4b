//! Explicit r-decompositions of K_n with the bound each one realizes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    four_block_g3_edges, four_block_sizes, triangular_root_ceil, Aggregate, Relation,
};
use crate::error::{domain, Error, Result};
use crate::graph::{graph6_emit, graph6_parse, pair_count, EdgeId, Graph, MAX_ORDER};
use crate::width::{
    certify, HostRule, HostStep, KTreeHost, ParamKind, SolverCache, ValueInterval, WidthCertificate,
};

/// An ordered edge partition of K_n into `r` spanning subgraphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "DecompositionJson", try_from = "DecompositionJson")]
pub struct Decomposition {
    n: usize,
    parts: Vec<Graph>,
}

#[derive(Serialize, Deserialize)]
struct DecompositionJson {
    n: usize,
    r: usize,
    parts: Vec<String>,
}

impl From<Decomposition> for DecompositionJson {
    fn from(d: Decomposition) -> Self {
        DecompositionJson {
            n: d.n,
            r: d.parts.len(),
            parts: d.parts.iter().map(graph6_emit).collect(),
        }
    }
}

impl TryFrom<DecompositionJson> for Decomposition {
    type Error = Error;
    fn try_from(j: DecompositionJson) -> Result<Self> {
        if j.parts.len() != j.r {
            return domain(format!("r = {} but {} parts given", j.r, j.parts.len()));
        }
        let parts = j
            .parts
            .iter()
            .map(|s| graph6_parse(s))
            .collect::<Result<Vec<_>>>()?;
        Decomposition::new(j.n, parts)
    }
}

impl Decomposition {
    /// Validates that the parts have order `n`, are edge-disjoint and
    /// cover every edge of K_n.
    pub fn new(n: usize, parts: Vec<Graph>) -> Result<Self> {
        if parts.is_empty() {
            return domain("a decomposition needs at least one part");
        }
        let mut seen = vec![0u32; n];
        for (i, g) in parts.iter().enumerate() {
            if g.n() != n {
                return domain(format!("part {i} has {} vertices, expected {n}", g.n()));
            }
            for (v, row) in g.rows().iter().enumerate() {
                if seen[v] & row != 0 {
                    return domain(format!("part {i} reuses an edge at vertex {v}"));
                }
                seen[v] |= row;
            }
        }
        let full = Graph::complete(n)?;
        if seen != full.rows() {
            return domain("parts do not cover every edge of K_n");
        }
        Ok(Decomposition { n, parts })
    }

    /// Builds a decomposition from an edge labelling `assign(e) < r`.
    pub fn from_assignment(
        n: usize,
        r: usize,
        mut assign: impl FnMut(EdgeId) -> usize,
    ) -> Result<Self> {
        if r == 0 {
            return domain("r must be at least 1");
        }
        let mut parts = vec![Graph::empty(n)?; r];
        for idx in 0..pair_count(n) {
            let e = EdgeId::from_colex_index(idx);
            let i = assign(e);
            if i >= r {
                return domain(format!("edge {e} assigned to part {i} of {r}"));
            }
            parts[i].add_edge(e);
        }
        Ok(Decomposition { n, parts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[Graph] {
        &self.parts
    }

    /// True when every part has at least one edge.
    pub fn is_nondegenerate(&self) -> bool {
        self.parts.iter().all(Graph::has_edges)
    }

    pub fn values(
        &self,
        kind: ParamKind,
        cache: Option<&SolverCache>,
    ) -> Result<Vec<ValueInterval>> {
        self.parts
            .iter()
            .map(|g| match cache {
                Some(c) => c.get_or_compute(kind, g),
                None => crate::width::param_value(kind, g),
            })
            .collect()
    }

    pub fn aggregate(
        &self,
        kind: ParamKind,
        aggregate: Aggregate,
        cache: Option<&SolverCache>,
    ) -> Result<ValueInterval> {
        Ok(combine(aggregate, &self.values(kind, cache)?))
    }
}

/// Sum or product of part values, endpoint by endpoint (saturating).
pub fn combine(aggregate: Aggregate, values: &[ValueInterval]) -> ValueInterval {
    let fold = |f: fn(&ValueInterval) -> u64| -> u64 {
        match aggregate {
            Aggregate::Sum => values.iter().map(f).fold(0u64, u64::saturating_add),
            Aggregate::Prod => values.iter().map(f).fold(1u64, u64::saturating_mul),
        }
    };
    ValueInterval {
        lo: fold(|v| v.lo),
        hi: fold(|v| v.hi),
    }
}

/// A claim about one decomposition: `aggregate` of `param` over its parts
/// is at least / at most `value`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guarantee {
    pub param: ParamKind,
    pub aggregate: Aggregate,
    pub relation: Relation,
    pub value: u64,
}

impl Guarantee {
    fn at_least(param: ParamKind, aggregate: Aggregate, value: u64) -> Self {
        Guarantee {
            param,
            aggregate,
            relation: Relation::AtLeast,
            value,
        }
    }

    fn at_most(param: ParamKind, aggregate: Aggregate, value: u64) -> Self {
        Guarantee {
            param,
            aggregate,
            relation: Relation::AtMost,
            value,
        }
    }

    /// Whether an (interval) aggregate certainly satisfies the claim.
    pub fn holds(&self, v: ValueInterval) -> bool {
        match self.relation {
            Relation::AtLeast => v.lo >= self.value,
            Relation::AtMost => v.hi <= self.value,
            Relation::Exact => v.lo == self.value && v.hi == self.value,
        }
    }

    /// Recomputes the aggregate with the exact solvers and compares.
    pub fn verify(&self, d: &Decomposition, cache: Option<&SolverCache>) -> Result<bool> {
        Ok(self.holds(d.aggregate(self.param, self.aggregate, cache)?))
    }
}

/// Certificate for the value of one part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartCertificate {
    pub part: usize,
    pub param: ParamKind,
    pub value: u64,
    pub certificate: WidthCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionResult {
    #[serde(flatten)]
    pub decomposition: Decomposition,
    pub provenance: String,
    pub guarantees: Vec<Guarantee>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<PartCertificate>,
}

impl ConstructionResult {
    /// Checks every guarantee with the solvers and replays every certificate
    /// (as an upper bound on the part's value).
    pub fn verify(&self, cache: Option<&SolverCache>) -> Result<()> {
        let d = &self.decomposition;
        for c in &self.certificates {
            let part = d
                .parts
                .get(c.part)
                .ok_or_else(|| Error::Domain(format!("certificate for missing part {}", c.part)))?;
            let width = match &c.certificate {
                WidthCertificate::Host { host } => certify::host_width(part, host)? as u64,
                other => {
                    certify::check(c.param, part, c.value, other)?;
                    c.value
                }
            };
            if width > c.value {
                return Err(Error::Disagreement(format!(
                    "certificate for part {} has width {width} above {}",
                    c.part, c.value
                )));
            }
        }
        for g in &self.guarantees {
            if !g.verify(d, cache)? {
                let v = d.aggregate(g.param, g.aggregate, cache)?;
                return Err(Error::BoundViolation(format!(
                    "{} guarantee {:?} {:?} {} fails: value {v}",
                    self.provenance, g.param, g.relation, g.value
                )));
            }
        }
        Ok(())
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::Capacity {
            what: "decomposition order",
            requested: n,
            limit: MAX_ORDER,
        });
    }
    Ok(())
}

/// Each edge goes to a uniform part, independently. Stream `0` of the seed.
pub fn random_decomposition(n: usize, r: usize, seed: u64) -> Result<Decomposition> {
    random_decomposition_stream(n, r, seed, 0)
}

/// Same as [`random_decomposition`] on an independent stream of the seed,
/// so sample `i` of a parallel run does not depend on scheduling.
pub fn random_decomposition_stream(
    n: usize,
    r: usize,
    seed: u64,
    stream: u64,
) -> Result<Decomposition> {
    check_n(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    Decomposition::from_assignment(n, r, |_| rng.gen_range(0..r))
}

/// Vertex classes and chosen blocks of the clique blow-up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupPlan {
    pub t: usize,
    pub classes: Vec<Vec<usize>>,
    /// `(i, i)` is the clique on class `i`, `(i, j)` the complete bipartite
    /// graph between classes `i < j`. Part `x` is `blocks[x]`.
    pub blocks: Vec<(usize, usize)>,
    /// Part receiving every edge outside the chosen blocks.
    pub sink: usize,
}

impl BlowupPlan {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if r < 2 {
            return domain("blow-up needs r >= 2");
        }
        let t = triangular_root_ceil(r as u64)? as usize;
        if n < t {
            return domain(format!("blow-up for r = {r} needs n >= {t}"));
        }
        let (s, extra) = (n / t, n % t);
        let mut classes = Vec::with_capacity(t);
        let mut next = 0;
        for i in 0..t {
            let size = s + usize::from(i < extra);
            classes.push((next..next + size).collect());
            next += size;
        }
        let mut blocks: Vec<(usize, usize)> = (0..t).map(|i| (i, i)).collect();
        for i in 0..t {
            for j in i + 1..t {
                if blocks.len() < r {
                    blocks.push((i, j));
                }
            }
        }
        Ok(BlowupPlan {
            t,
            classes,
            blocks,
            sink: 0,
        })
    }
}

/// Clique blow-up: classes of near-equal size, one part per chosen block,
/// leftovers in the first part.
pub fn blowup_decomposition(n: usize, r: usize) -> Result<ConstructionResult> {
    check_n(n)?;
    let plan = BlowupPlan::new(n, r)?;
    let mut class = vec![0; n];
    for (i, c) in plan.classes.iter().enumerate() {
        for &v in c {
            class[v] = i;
        }
    }
    let decomposition = Decomposition::from_assignment(n, r, |e| {
        let key = (class[e.lo()], class[e.hi()]);
        plan.blocks
            .iter()
            .position(|&b| b == key)
            .unwrap_or(plan.sink)
    })?;
    let (r64, t, s) = (r as u64, plan.t as u64, (n / plan.t) as u64);
    // cliques give s, bipartite blocks at least s + 1
    let guarantees = vec![
        Guarantee::at_least(ParamKind::Eta, Aggregate::Sum, r64 * s + r64 - t),
        Guarantee::at_least(
            ParamKind::Eta,
            Aggregate::Prod,
            (s - 1).saturating_pow(r as u32),
        ),
    ];
    Ok(ConstructionResult {
        decomposition,
        provenance: "blowup".into(),
        guarantees,
        certificates: Vec::new(),
    })
}

/// Four vertex classes; parts 1 to 3 as in the shaded block pattern, extra
/// parts either empty or holding one edge taken from part 3.
pub fn four_block_decomposition(
    n: usize,
    r: usize,
    nondegenerate: bool,
) -> Result<ConstructionResult> {
    check_n(n)?;
    if r < 3 || n < 4 {
        return domain("four-block construction needs r >= 3 and n >= 4");
    }
    if nondegenerate && (four_block_g3_edges(n as u64) as usize) < r - 2 {
        return Err(Error::Infeasible(format!(
            "third block has {} edges, fewer than r - 2 = {}",
            four_block_g3_edges(n as u64),
            r - 2
        )));
    }
    let sizes = four_block_sizes(n as u64);
    let mut class = Vec::with_capacity(n);
    for (i, &s) in sizes.iter().enumerate() {
        class.extend(std::iter::repeat_n(i, s as usize));
    }
    let block = |a: usize, b: usize| -> usize {
        match (a.min(b), a.max(b)) {
            (0, 0) | (3, 3) | (0, 1) | (2, 3) => 0,
            (1, 1) | (2, 2) | (0, 2) | (1, 3) => 1,
            _ => 2,
        }
    };
    let mut moved = 0;
    let decomposition = Decomposition::from_assignment(n, r, |e| {
        let p = block(class[e.lo()], class[e.hi()]);
        if p == 2 && nondegenerate && moved < r - 3 {
            moved += 1;
            return 2 + moved;
        }
        p
    })?;
    let base = 3 * (n as u64).div_ceil(4);
    let bound = if nondegenerate {
        base + r as u64 - 3
    } else {
        base
    };
    Ok(ConstructionResult {
        decomposition,
        provenance: if nondegenerate {
            "four-block-nondegenerate".into()
        } else {
            "four-block".into()
        },
        guarantees: vec![Guarantee::at_most(ParamKind::Pw, Aggregate::Sum, bound)],
        certificates: Vec::new(),
    })
}

/// `r` edge-disjoint Hamiltonian paths of K_{2r}, as vertex sequences. The
/// last one is `0, 1, ..., 2r - 1`.
pub fn hamiltonian_path_partition(r: usize) -> Result<Vec<Vec<usize>>> {
    if r == 0 || 2 * r > MAX_ORDER {
        return domain(format!("path partition needs 1 <= r <= {}", MAX_ORDER / 2));
    }
    let m = 2 * r;
    // zigzag j, j+1, j-1, j+2, j-2, ..., j+r
    let zigzag = |j: usize| -> Vec<usize> {
        let mut p = vec![j];
        for i in 1..r {
            p.push((j + i) % m);
            p.push((j + m - i) % m);
        }
        p.push((j + r) % m);
        p
    };
    let paths: Vec<Vec<usize>> = (0..r).map(zigzag).collect();
    let mut relabel = vec![0; m];
    for (i, &v) in paths[r - 1].iter().enumerate() {
        relabel[v] = i;
    }
    Ok(paths
        .into_iter()
        .map(|p| p.into_iter().map(|v| relabel[v]).collect())
        .collect())
}

/// `r - 1` Hamiltonian paths of K_{2r} padded with isolated vertices, and
/// one part with every remaining edge, which embeds in a linear
/// `(n - 2r + 1)`-tree.
pub fn path_plus_remainder_decomposition(n: usize, r: usize) -> Result<ConstructionResult> {
    check_n(n)?;
    if r < 2 || n < 2 * r {
        return domain(format!(
            "paths-plus-remainder needs r >= 2 and n >= 2r, got n = {n}, r = {r}"
        ));
    }
    let paths = hamiltonian_path_partition(r)?;
    let mut owner = vec![vec![r - 1; n]; n];
    for (i, p) in paths[..r - 1].iter().enumerate() {
        for w in p.windows(2) {
            owner[w[0]][w[1]] = i;
            owner[w[1]][w[0]] = i;
        }
    }
    let decomposition = Decomposition::from_assignment(n, r, |e| owner[e.lo()][e.hi()])?;

    let k = n - 2 * r + 1;
    let tail: Vec<usize> = (2 * r..n).collect();
    let mut seed = vec![2 * r - 2, 2 * r - 1];
    seed.extend(&tail);
    let steps = (1..=2 * r - 2)
        .map(|i| {
            let mut facet = vec![2 * r - 1 - i];
            facet.extend(&tail);
            HostStep {
                vertex: 2 * r - 2 - i,
                facet,
            }
        })
        .collect();
    let host = KTreeHost {
        rule: HostRule::Linear,
        k,
        seed,
        steps,
    };
    Ok(ConstructionResult {
        decomposition,
        provenance: "paths-plus-remainder".into(),
        guarantees: vec![Guarantee::at_most(
            ParamKind::Ppw,
            Aggregate::Sum,
            (n - r) as u64,
        )],
        certificates: vec![PartCertificate {
            part: r - 1,
            param: ParamKind::Ppw,
            value: k as u64,
            certificate: WidthCertificate::Host { host },
        }],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::width::param_value;

    fn values(d: &Decomposition, kind: ParamKind) -> Vec<u64> {
        d.values(kind, None).unwrap().iter().map(|v| v.lo).collect()
    }

    #[test]
    fn validation_rejects_overlaps_and_gaps() {
        let k3 = Graph::complete(3).unwrap();
        let e3 = Graph::empty(3).unwrap();
        assert!(Decomposition::new(3, vec![k3, e3]).is_ok());
        assert!(Decomposition::new(3, vec![k3, k3]).is_err());
        assert!(Decomposition::new(3, vec![e3, e3]).is_err());
        assert!(Decomposition::new(4, vec![k3]).is_err());
        assert!(Decomposition::new(3, vec![]).is_err());
    }

    #[test]
    fn random_decomposition_is_seeded() {
        let d = random_decomposition(5, 2, 7).unwrap();
        let total: usize = d.parts().iter().map(Graph::edge_count).sum();
        assert_eq!(total, 10);
        assert_eq!(d, random_decomposition(5, 2, 7).unwrap());
        assert_ne!(
            random_decomposition_stream(12, 3, 7, 1).unwrap(),
            random_decomposition_stream(12, 3, 7, 2).unwrap()
        );
        let one = random_decomposition(4, 1, 99).unwrap();
        assert_eq!(one.parts()[0], Graph::complete(4).unwrap());
        let big = random_decomposition(30, 3, 1).unwrap();
        for g in big.parts() {
            assert!((100..=190).contains(&g.edge_count()), "{}", g.edge_count());
        }
    }

    #[test]
    fn json_round_trip() {
        let c = path_plus_remainder_decomposition(7, 3).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains("\"parts\":[") && s.contains("\"r\":3"));
        let back: ConstructionResult = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        let bad = s.replace("\"r\":3", "\"r\":2");
        assert!(serde_json::from_str::<ConstructionResult>(&bad).is_err());
    }

    #[test]
    fn blowup_examples() {
        let c = blowup_decomposition(6, 3).unwrap();
        let plan = BlowupPlan::new(6, 3).unwrap();
        assert_eq!(plan.classes, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(c.guarantees[0].value, 10);
        let eta = values(&c.decomposition, ParamKind::Eta);
        assert!(eta.iter().sum::<u64>() >= 10, "{eta:?}");

        let c = blowup_decomposition(4, 2).unwrap();
        assert_eq!(c.guarantees[0].value, 4);

        let plan = BlowupPlan::new(8, 6).unwrap();
        assert_eq!(plan.t, 3);
        assert_eq!(
            plan.blocks,
            vec![(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)]
        );
        assert_eq!(blowup_decomposition(8, 6).unwrap().guarantees[1].value, 1);
        assert!(blowup_decomposition(2, 6).is_err());
        assert!(blowup_decomposition(5, 1).is_err());
    }

    #[test]
    fn blowup_sum_inequality() {
        for (r, n) in [(2, 4), (3, 6), (3, 8), (4, 8)] {
            let c = blowup_decomposition(n, r).unwrap();
            let t = triangular_root_ceil(r as u64).unwrap();
            let s = n as u64 / t;
            let sum: u64 = values(&c.decomposition, ParamKind::Eta).iter().sum();
            assert!(
                sum >= r as u64 * s + r as u64 - t,
                "(r, n) = ({r}, {n}): {sum}"
            );
        }
    }

    #[test]
    fn four_block_examples() {
        let c = four_block_decomposition(8, 3, false).unwrap();
        assert_eq!(values(&c.decomposition, ParamKind::Pw), vec![2, 2, 2]);
        let c = four_block_decomposition(4, 3, false).unwrap();
        assert_eq!(values(&c.decomposition, ParamKind::Pw), vec![1, 1, 1]);
        let c = four_block_decomposition(10, 3, false).unwrap();
        assert!(values(&c.decomposition, ParamKind::Pw).iter().sum::<u64>() <= 9);
        assert_eq!(c.guarantees[0].value, 9);

        let c = four_block_decomposition(6, 5, false).unwrap();
        assert!(!c.decomposition.is_nondegenerate());
        let c = four_block_decomposition(6, 5, true).unwrap();
        assert!(c.decomposition.is_nondegenerate());
        assert_eq!(c.guarantees[0].value, 8);
        // n = 4: the third block has two edges
        assert!(four_block_decomposition(4, 4, true).is_ok());
        assert!(matches!(
            four_block_decomposition(4, 5, true),
            Err(Error::Infeasible(_))
        ));
    }

    fn is_hamiltonian_path(p: &[usize], m: usize) -> bool {
        let mut seen = vec![false; m];
        p.len() == m
            && p.iter()
                .all(|&v| v < m && !std::mem::replace(&mut seen[v], true))
    }

    #[test]
    fn hamiltonian_paths_partition_the_edges() {
        assert_eq!(hamiltonian_path_partition(1).unwrap(), vec![vec![0, 1]]);
        for r in 1..=8 {
            let m = 2 * r;
            let paths = hamiltonian_path_partition(r).unwrap();
            assert_eq!(paths.len(), r);
            assert_eq!(paths[r - 1], (0..m).collect::<Vec<_>>());
            let mut count = vec![vec![0; m]; m];
            for p in &paths {
                assert!(is_hamiltonian_path(p, m), "{p:?}");
                let edges: Vec<(usize, usize)> = p.windows(2).map(|w| (w[0], w[1])).collect();
                let g = Graph::from_edges(m, &edges).unwrap();
                assert!(g.is_connected() && g.max_degree() <= 2);
                assert_eq!((0..m).filter(|&v| g.degree(v) == 1).count(), 2);
                for (a, b) in edges {
                    count[a][b] += 1;
                    count[b][a] += 1;
                }
            }
            for a in 0..m {
                for b in 0..m {
                    assert_eq!(count[a][b], usize::from(a != b), "r = {r}, edge {a}-{b}");
                }
            }
        }
    }

    #[test]
    fn path_plus_remainder_examples() {
        let c = path_plus_remainder_decomposition(6, 2).unwrap();
        assert_eq!(values(&c.decomposition, ParamKind::Ppw), vec![1, 3]);
        c.verify(None).unwrap();
        let c = path_plus_remainder_decomposition(8, 3).unwrap();
        assert!(values(&c.decomposition, ParamKind::Ppw).iter().sum::<u64>() <= 5);
        let c = path_plus_remainder_decomposition(8, 4).unwrap();
        assert_eq!(values(&c.decomposition, ParamKind::Ppw), vec![1, 1, 1, 1]);
        assert!(path_plus_remainder_decomposition(5, 3).is_err());
    }

    #[test]
    fn guarantees_hold_up_to_ten_vertices() {
        let cache = SolverCache::new();
        for n in 1..=10 {
            for r in 1..=4 {
                let mut built = Vec::new();
                built.extend(blowup_decomposition(n, r).ok());
                built.extend(four_block_decomposition(n, r, false).ok());
                built.extend(four_block_decomposition(n, r, true).ok());
                built.extend(path_plus_remainder_decomposition(n, r).ok());
                for c in built {
                    c.verify(Some(&cache))
                        .unwrap_or_else(|e| panic!("{} n = {n} r = {r}: {e}", c.provenance));
                }
            }
        }
    }

    #[test]
    fn remainder_host_replays() {
        for r in 2..=5 {
            for n in 2 * r..=14 {
                let c = path_plus_remainder_decomposition(n, r).unwrap();
                let cert = &c.certificates[0];
                let WidthCertificate::Host { host } = &cert.certificate else {
                    panic!()
                };
                let last = &c.decomposition.parts()[r - 1];
                assert_eq!(certify::host_width(last, host).unwrap(), n - 2 * r + 1);
                if n <= 10 {
                    assert!(param_value(ParamKind::Ppw, last).unwrap().hi <= cert.value);
                }
            }
        }
    }
}

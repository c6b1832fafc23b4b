//! Exact width parameters and their certificates.
//!
//! Every exact solver returns a [`WidthCertificate`]; the [`certify`]
//! module replays certificates with code that shares nothing with the
//! solvers.

mod cache;
pub mod certify;
mod clique;
mod hadwiger;
mod ktree;
mod pathwidth;
mod treewidth;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::graph::Graph;

pub use cache::SolverCache;
pub use clique::{chromatic_number, clique_number};
pub use hadwiger::hadwiger;
pub use ktree::{find_host, HostRule, HostStep, KTreeHost};
pub use pathwidth::{caterpillar_width, pathwidth, vertex_separation};
pub use treewidth::treewidth;

/// Per-solver order limits.
pub mod limits {
    pub const TREEWIDTH: usize = 16;
    pub const PATHWIDTH: usize = 16;
    pub const PROPER_PATHWIDTH: usize = 12;
    pub const LARGEUR: usize = 12;
    pub const HADWIGER: usize = 14;
    pub const CLIQUE: usize = 16;
    pub const CHROMATIC: usize = 14;
    pub const CDV: usize = 12;
}

pub(crate) fn check_order(g: &Graph, what: &'static str, limit: usize) -> Result<()> {
    if g.n() > limit {
        return Err(Error::Capacity {
            what,
            requested: g.n(),
            limit,
        });
    }
    Ok(())
}

/// The graph parameters handled by the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamKind {
    Tw,
    La,
    Pw,
    Ppw,
    Eta,
    Omega,
    Chi,
    Mu,
    Nu,
    Xi,
}

impl ParamKind {
    pub const ALL: [ParamKind; 10] = [
        ParamKind::Tw,
        ParamKind::La,
        ParamKind::Pw,
        ParamKind::Ppw,
        ParamKind::Eta,
        ParamKind::Omega,
        ParamKind::Chi,
        ParamKind::Mu,
        ParamKind::Nu,
        ParamKind::Xi,
    ];

    /// Colin de Verdière type parameters are only bracketed here.
    pub fn is_interval(self) -> bool {
        matches!(self, ParamKind::Mu | ParamKind::Nu | ParamKind::Xi)
    }

    pub fn is_tw_family(self) -> bool {
        matches!(
            self,
            ParamKind::Tw | ParamKind::La | ParamKind::Pw | ParamKind::Ppw
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            ParamKind::Tw => "tw",
            ParamKind::La => "la",
            ParamKind::Pw => "pw",
            ParamKind::Ppw => "ppw",
            ParamKind::Eta => "eta",
            ParamKind::Omega => "omega",
            ParamKind::Chi => "chi",
            ParamKind::Mu => "mu",
            ParamKind::Nu => "nu",
            ParamKind::Xi => "xi",
        }
    }

    /// Value on the edgeless graph of order `n`.
    pub fn edgeless_value(self, n: usize) -> u64 {
        match self {
            ParamKind::Tw | ParamKind::La | ParamKind::Pw | ParamKind::Ppw => 0,
            ParamKind::Eta | ParamKind::Omega | ParamKind::Chi => 1,
            ParamKind::Nu | ParamKind::Xi => 1,
            // mu(K_1) is not pinned down; 0 is the recorded convention
            ParamKind::Mu => u64::from(n >= 2),
        }
    }

    /// The largest order the solver behind this parameter accepts.
    pub fn order_limit(self) -> usize {
        match self {
            ParamKind::Tw => limits::TREEWIDTH,
            ParamKind::Pw => limits::PATHWIDTH,
            ParamKind::Ppw => limits::PROPER_PATHWIDTH,
            ParamKind::La => limits::LARGEUR,
            ParamKind::Eta => limits::HADWIGER,
            ParamKind::Omega => limits::CLIQUE,
            ParamKind::Chi => limits::CHROMATIC,
            ParamKind::Mu | ParamKind::Nu | ParamKind::Xi => limits::CDV,
        }
    }
}

impl fmt::Display for ParamKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ParamKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let p = match s.to_ascii_lowercase().as_str() {
            "tw" | "treewidth" => ParamKind::Tw,
            "la" | "largeur" => ParamKind::La,
            "pw" | "pathwidth" => ParamKind::Pw,
            "ppw" | "proper_pathwidth" => ParamKind::Ppw,
            "eta" | "hadwiger" | "h" => ParamKind::Eta,
            "omega" | "clique" => ParamKind::Omega,
            "chi" | "chromatic" => ParamKind::Chi,
            "mu" => ParamKind::Mu,
            "nu" => ParamKind::Nu,
            "xi" => ParamKind::Xi,
            other => return domain(format!("unknown parameter '{other}'")),
        };
        Ok(p)
    }
}

/// Closed integer interval; exact values have `lo == hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ValueInterval {
    pub lo: u64,
    pub hi: u64,
}

impl ValueInterval {
    pub fn exact(v: u64) -> Self {
        ValueInterval { lo: v, hi: v }
    }

    pub fn new(lo: u64, hi: u64) -> Result<Self> {
        if lo > hi {
            return domain(format!("interval [{lo}, {hi}] is empty"));
        }
        Ok(ValueInterval { lo, hi })
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: u64) -> bool {
        self.lo <= v && v <= self.hi
    }
}

impl fmt::Display for ValueInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// Witness that replays to a claimed parameter value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WidthCertificate {
    /// Tree-width: eliminating in this order never meets more than `width`
    /// later neighbours in the filled graph.
    EliminationOrdering {
        order: Vec<usize>,
    },
    /// Path-width: vertex separation of this layout.
    VertexOrdering {
        order: Vec<usize>,
    },
    /// Proper path-width, largeur d'arborescence (and k-caterpillars).
    Host {
        host: KTreeHost,
    },
    /// Hadwiger number: disjoint connected, pairwise adjacent vertex sets.
    BranchSets {
        sets: Vec<Vec<usize>>,
    },
    Clique {
        vertices: Vec<usize>,
    },
    Coloring {
        colors: Vec<usize>,
    },
}

/// Exact value of a non-interval parameter with its certificate.
pub fn solve(kind: ParamKind, g: &Graph) -> Result<(u64, WidthCertificate)> {
    match kind {
        ParamKind::Tw => treewidth(g).map(|(w, c)| (w as u64, c)),
        ParamKind::Pw => pathwidth(g).map(|(w, c)| (w as u64, c)),
        ParamKind::Ppw => proper_pathwidth(g).map(|(w, c)| (w as u64, c)),
        ParamKind::La => largeur(g).map(|(w, c)| (w as u64, c)),
        ParamKind::Eta => hadwiger(g).map(|(w, c)| (w as u64, c)),
        ParamKind::Omega => {
            let (w, set) = clique::max_clique(g)?;
            Ok((
                w as u64,
                WidthCertificate::Clique {
                    vertices: crate::graph::bits(set).collect(),
                },
            ))
        }
        ParamKind::Chi => {
            let (k, colors) = clique::coloring(g)?;
            Ok((k as u64, WidthCertificate::Coloring { colors }))
        }
        ParamKind::Mu | ParamKind::Nu | ParamKind::Xi => {
            domain(format!("{kind} is interval-valued; use cdv_interval"))
        }
    }
}

/// Value of any parameter as an interval, exact except for mu, nu, xi.
/// Edgeless graphs get the conventional values of [`ParamKind::edgeless_value`].
pub fn param_value(kind: ParamKind, g: &Graph) -> Result<ValueInterval> {
    check_order(g, kind.name(), kind.order_limit())?;
    if !g.has_edges() {
        return Ok(ValueInterval::exact(kind.edgeless_value(g.n())));
    }
    if kind.is_interval() {
        return cdv_interval(g, kind);
    }
    solve(kind, g).map(|(v, _)| ValueInterval::exact(v))
}

/// Proper path-width: `pw(G)` when `G` embeds in a linear `pw(G)`-tree,
/// otherwise `pw(G) + 1`.
pub fn proper_pathwidth(g: &Graph) -> Result<(usize, WidthCertificate)> {
    check_order(g, "proper path-width", limits::PROPER_PATHWIDTH)?;
    let (k0, _) = vertex_separation(g)?;
    embed_in_family(g, k0, HostRule::Linear, "linear k-tree")
}

/// Largeur d'arborescence: `tw(G)` when `G` embeds in a two-sided
/// `tw(G)`-tree, otherwise `tw(G) + 1`.
pub fn largeur(g: &Graph) -> Result<(usize, WidthCertificate)> {
    check_order(g, "largeur d'arborescence", limits::LARGEUR)?;
    let (k0, _) = treewidth(g)?;
    let (w, cert) = embed_in_family(g, k0, HostRule::TwoSided, "two-sided k-tree")?;
    let (pw, _) = vertex_separation(g)?;
    if w > pw {
        return Err(Error::Disagreement(format!(
            "largeur {w} exceeds path-width {pw}"
        )));
    }
    Ok((w, cert))
}

fn embed_in_family(
    g: &Graph,
    k0: usize,
    rule: HostRule,
    what: &str,
) -> Result<(usize, WidthCertificate)> {
    let n = g.n();
    for k in [k0, k0 + 1] {
        // K_n is a host of every family with k = n - 1
        let k = k.min(n - 1);
        if let Some(host) = find_host(g, k, rule) {
            return Ok((k, WidthCertificate::Host { host }));
        }
    }
    Err(Error::Disagreement(format!(
        "no {what} host of width {} or {}",
        k0,
        k0 + 1
    )))
}

/// Sandwich interval for mu, nu or xi: `[eta - 1, la]` for nu and
/// `[eta - 1, ppw]` for mu and xi.
pub fn cdv_interval(g: &Graph, kind: ParamKind) -> Result<ValueInterval> {
    if !kind.is_interval() {
        return domain(format!("{kind} is not a Colin de Verdière type parameter"));
    }
    check_order(g, "Colin de Verdière interval", limits::CDV)?;
    if !g.has_edges() {
        return domain("the sandwich chain needs a graph with an edge");
    }
    let (eta, _) = hadwiger(g)?;
    let upper = match kind {
        ParamKind::Nu => largeur(g)?.0,
        _ => proper_pathwidth(g)?.0,
    };
    ValueInterval::new(eta as u64 - 1, upper as u64)
        .map_err(|_| Error::Disagreement(format!("eta - 1 = {} exceeds {upper}", eta - 1)))
}

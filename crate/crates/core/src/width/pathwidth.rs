use crate::error::{Error, Result};
use crate::graph::{bits, Graph};

use super::ktree::{find_host, HostRule, KTreeHost};
use super::{check_order, limits, WidthCertificate};

/// Path-width from the vertex-separation DP, cross-checked against the
/// k-caterpillar host search when the graph is small enough for it.
pub fn pathwidth(g: &Graph) -> Result<(usize, WidthCertificate)> {
    check_order(g, "path-width", limits::PATHWIDTH)?;
    let (w, order) = vertex_separation(g)?;
    if g.n() > 0 && g.n() <= limits::LARGEUR {
        let fits = find_host(g, w, HostRule::Caterpillar).is_some();
        let tighter = w > 0 && find_host(g, w - 1, HostRule::Caterpillar).is_some();
        if !fits || tighter {
            return Err(Error::Disagreement(format!(
                "vertex separation gives {w}, caterpillar search disagrees on {}",
                g
            )));
        }
    }
    Ok((w, WidthCertificate::VertexOrdering { order }))
}

/// Smallest k such that the graph is a spanning subgraph of a
/// k-caterpillar, with the host. Equals path-width.
pub fn caterpillar_width(g: &Graph) -> Result<(usize, KTreeHost)> {
    check_order(g, "caterpillar search", limits::LARGEUR)?;
    if g.n() == 0 {
        return Err(Error::Domain("caterpillar search needs a vertex".into()));
    }
    for k in 0..g.n() {
        if let Some(h) = find_host(g, k, HostRule::Caterpillar) {
            return Ok((k, h));
        }
    }
    unreachable!("K_n hosts every graph on n vertices")
}

/// Minimum vertex separation with an optimal layout.
pub fn vertex_separation(g: &Graph) -> Result<(usize, Vec<usize>)> {
    check_order(g, "path-width", limits::PATHWIDTH)?;
    let n = g.n();
    let size = 1usize << n;
    // vs[s]: best max boundary over layouts whose prefix is exactly s
    let mut vs = vec![0u8; size];
    for s in 1..size as u32 {
        let mut best = u8::MAX;
        for v in bits(s) {
            best = best.min(vs[(s & !(1 << v)) as usize]);
        }
        vs[s as usize] = best.max(boundary(g, s));
    }
    let all = g.vertex_mask();
    let mut order = Vec::with_capacity(n);
    let mut s = all;
    while s != 0 {
        let v = bits(s)
            .min_by_key(|&v| vs[(s & !(1 << v)) as usize])
            .unwrap();
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    Ok((vs[all as usize] as usize, order))
}

fn boundary(g: &Graph, s: u32) -> u8 {
    bits(s).filter(|&u| g.neighbors(u) & !s != 0).count() as u8
}

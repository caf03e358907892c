//! Maximal cliques and the fractional clique cover number `θ*`.

use crate::channel::{Channel, Graph, Labels};
use crate::error::{Error, Result};

use super::{fractional_packing, LpConfig, LpResult};

#[derive(Debug, Clone)]
pub struct CliqueConfig {
    /// At most 128 (one machine word per vertex set).
    pub max_vertices: usize,
    pub max_cliques: usize,
    pub lp: LpConfig,
}

impl Default for CliqueConfig {
    fn default() -> Self {
        CliqueConfig { max_vertices: 128, max_cliques: 100_000, lp: LpConfig::default() }
    }
}

/// All maximal cliques of `g`, each sorted, in the order Bron–Kerbosch with
/// pivoting reports them.
pub fn maximal_cliques(g: &Graph, config: &CliqueConfig) -> Result<Vec<Vec<usize>>> {
    let n = g.num_vertices();
    let cap = config.max_vertices.min(128);
    if n > cap {
        return Err(Error::CapExceeded { what: "clique enumeration vertices", size: n, cap });
    }
    let adj: Vec<u128> = (0..n).map(|v| g.neighbors(v).fold(0u128, |m, u| m | 1 << u)).collect();
    let mut out = Vec::new();
    let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    if n > 0 {
        bron_kerbosch(&adj, 0, all, 0, &mut out, config.max_cliques)?;
    }
    Ok(out)
}

fn bron_kerbosch(adj: &[u128], r: u128, mut p: u128, mut x: u128, out: &mut Vec<Vec<usize>>, cap: usize) -> Result<()> {
    if p == 0 && x == 0 {
        if out.len() >= cap {
            return Err(Error::CapExceeded { what: "maximal clique count", size: out.len() + 1, cap });
        }
        out.push(bits(r));
        return Ok(());
    }
    // Pivot with the most neighbors in P.
    let pivot = bits(p | x)
        .into_iter()
        .max_by_key(|&u| ((adj[u] & p).count_ones(), std::cmp::Reverse(u)))
        .expect("p|x nonempty");
    let mut cand = p & !adj[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        bron_kerbosch(adj, r | 1 << v, p & adj[v], x & adj[v], out, cap)?;
        p &= !(1 << v);
        x |= 1 << v;
    }
    Ok(())
}

fn bits(mut m: u128) -> Vec<usize> {
    let mut v = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        v.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    v
}

/// Vertex/maximal-clique incidence: inputs are vertices, outputs cliques.
pub fn clique_channel(g: &Graph, config: &CliqueConfig) -> Result<Channel> {
    let cliques = maximal_cliques(g, config)?;
    let edges = cliques.iter().enumerate().flat_map(|(c, k)| k.iter().map(move |&v| (v, c)));
    let ch = Channel::new(g.num_vertices(), cliques.len(), edges)?;
    let outputs = cliques.iter().map(|k| format!("{k:?}")).collect();
    let inputs = (0..g.num_vertices()).map(|v| v.to_string()).collect();
    Ok(ch.with_labels(Labels::Explicit { inputs, outputs }))
}

/// `θ*(G)`: the least total weight on maximal cliques covering every vertex.
/// The primal is a fractional vertex packing, the dual the clique cover.
pub fn theta_star(g: &Graph, config: &CliqueConfig) -> Result<LpResult> {
    if g.num_vertices() == 0 {
        return Err(Error::InvalidParameter("graph has no vertices".into()));
    }
    fractional_packing(&clique_channel(g, config)?, &config.lp)
}

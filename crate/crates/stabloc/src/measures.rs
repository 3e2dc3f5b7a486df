//! Entanglement quantifiers for graph states and GD states.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gd::{walsh_hadamard, GDState};
use crate::graph::{gf2_rank, Graph};
use crate::reduction::{reduce, Axis, PauliSetup};
use crate::vertex_cover::min_vertex_cover;

pub const RANK_LIMIT: usize = 24;
pub const PERSISTENCY_LIMIT: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchmidtBounds {
    pub lower: usize,
    pub upper: usize,
}

/// max over bipartitions of rank Γ_AB.
pub fn schmidt_lower(g: &Graph) -> Result<usize> {
    let n = g.n_nodes();
    if n > RANK_LIMIT {
        return Err(Error::Limit { what: "Schmidt lower bound", got: n, limit: RANK_LIMIT });
    }
    if n < 2 {
        return Ok(0);
    }
    let adj = g.rows64();
    // node n−1 is kept in B, so each bipartition is visited once
    let best = (1u64..1 << (n - 1))
        .into_par_iter()
        .map(|a| {
            let rows = (0..n).filter(|&i| (a >> i) & 1 == 0).map(|i| adj[i] & a).collect();
            gf2_rank(rows)
        })
        .max()
        .unwrap_or(0);
    Ok(best)
}

/// min over all full-graph Pauli setups of the minimum vertex cover of the
/// reduced graph.
pub fn schmidt_upper(g: &Graph) -> Result<usize> {
    let n = g.n_nodes();
    if n > PERSISTENCY_LIMIT {
        return Err(Error::Limit { what: "Pauli persistency", got: n, limit: PERSISTENCY_LIMIT });
    }
    let total = 3usize.pow(n as u32);
    (0..total)
        .into_par_iter()
        .map(|code| {
            let mut c = code;
            let axes = (0..n)
                .map(|_| {
                    let a = Axis::ALL[c % 3];
                    c /= 3;
                    Some(a)
                })
                .collect();
            let rr = reduce(g, &PauliSetup::from_axes(axes))?;
            Ok(min_vertex_cover(&rr.reduced.graph).len())
        })
        .try_reduce(|| usize::MAX, |a, b| Ok(a.min(b)))
}

pub fn schmidt_bounds(g: &Graph) -> Result<SchmidtBounds> {
    Ok(SchmidtBounds { lower: schmidt_lower(g)?, upper: schmidt_upper(g)? })
}

/// Negativity of a GD state across A:B (`part_a` is a ψ mask), exact and
/// without leaving the graph basis: the partial transpose is diagonal there.
pub fn gd_negativity(gd: &GDState, part_a: usize) -> Result<f64> {
    let n = gd.n_qubits();
    let len = 1usize << n;
    if part_a == 0 || part_a >= len - 1 {
        return Err(Error::BadBipartition);
    }
    let nb: Vec<usize> = (0..n).map(|i| gd.basis_graph.neighbors(i).fold(0, |m, j| m | 1 << j)).collect();
    let mut c = gd.lambdas.clone();
    walsh_hadamard(&mut c);
    for (x, cx) in c.iter_mut().enumerate() {
        // stabilizer element g^x carries X^x Z^{Γx}; each Y on A flips the sign
        let zx = (0..n).filter(|&i| (x >> i) & 1 == 1).fold(0, |m, i| m ^ nb[i]);
        if (x & zx & part_a).count_ones() % 2 == 1 {
            *cx = -*cx;
        }
    }
    walsh_hadamard(&mut c);
    let trace_norm: f64 = c.iter().map(|v| (v / len as f64).abs()).sum();
    Ok((trace_norm - 1.0) / 2.0)
}

/// Populations and anti-diagonal coherences of a star-basis GD state seen as
/// a GHZ-diagonal X state. Entry `b` is the pair (|0,b⟩, |1,b̄⟩) over the
/// leaves; the returned tuples are (population of each member, coherence).
pub fn star_x_state(gd: &GDState) -> Result<Vec<(f64, f64)>> {
    let n = gd.n_qubits();
    let hub = star_hub(&gd.basis_graph).ok_or_else(|| Error::Basis("not a star graph".into()))?;
    let leaves: Vec<usize> = (0..n).filter(|&i| i != hub).collect();
    Ok((0..1usize << leaves.len())
        .map(|b| {
            let psi = leaves.iter().enumerate().fold(0, |m, (k, &l)| m | ((b >> k) & 1) << l);
            let (l0, l1) = (gd.lambdas[psi], gd.lambdas[psi | 1 << hub]);
            ((l0 + l1) / 2.0, (l0 - l1) / 2.0)
        })
        .collect())
}

/// Hub of a star graph (for two nodes, node 0).
pub fn star_hub(g: &Graph) -> Option<usize> {
    let n = g.n_nodes();
    if n < 2 || g.n_edges() != n - 1 {
        return None;
    }
    (0..n).find(|&i| g.degree(i) == n - 1)
}

/// GMC of an X state given as (population pair, coherence) tuples.
pub fn gmc_x_state(pairs: &[(f64, f64, f64)]) -> f64 {
    let geo: Vec<f64> = pairs.iter().map(|&(a, b, _)| (a * b).max(0.0).sqrt()).collect();
    let sum: f64 = geo.iter().sum();
    let best = pairs
        .iter()
        .zip(&geo)
        .map(|(&(_, _, c), g)| c.abs() - (sum - g))
        .fold(f64::NEG_INFINITY, f64::max);
    2.0 * best.max(0.0)
}

fn star_pairs(gd: &GDState) -> Result<Vec<(f64, f64, f64)>> {
    Ok(star_x_state(gd)?.into_iter().map(|(p, c)| (p, p, c)).collect())
}

/// GMC of a GD state in a star basis.
pub fn gd_gmc(gd: &GDState) -> Result<f64> {
    Ok(gmc_x_state(&star_pairs(gd)?))
}

/// Largest |coherence| minus the other pairs' geometric means; positive iff
/// the GHZ-diagonal criterion detects GME.
pub fn ghzd_margin(gd: &GDState) -> Result<f64> {
    let pairs = star_pairs(gd)?;
    let sum: f64 = pairs.iter().map(|p| p.0).sum();
    Ok(pairs.iter().map(|p| p.2.abs() - (sum - p.0)).fold(f64::NEG_INFINITY, f64::max))
}

/// GME test for GHZ-diagonal states. Every coherence is tried at the corner,
/// which makes the test independent of the Z-string frame.
pub fn ghzd_gme_test(gd: &GDState) -> Result<bool> {
    Ok(ghzd_margin(gd)? > 0.0)
}

/// Largest violation over both four-qubit cluster inequalities. `f[ψ]` is
/// the fidelity with bit 0 ↔ qubit 1 (an edge qubit) … bit 3 ↔ qubit 4.
pub fn cluster4_margin(f: &[f64]) -> Result<f64> {
    if f.len() != 16 {
        return Err(Error::Basis("cluster test needs 16 fidelities".into()));
    }
    let at = |a: usize, i: usize, j: usize, d: usize| f[a | i << 1 | j << 2 | d << 3];
    let block = |a: usize, d: usize| -> f64 {
        (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| at(a, i, j, d)).sum()
    };
    let mut worst = f64::NEG_INFINITY;
    for a in 0..2 {
        for d in 0..2 {
            let rhs1 = 0.5 * (block(a, d) + block(1 - a, d) + block(a, 1 - d));
            let rhs2 = rhs1 + 0.5 * block(1 - a, 1 - d);
            for bc in 0..4 {
                let lhs = at(a, bc & 1, bc >> 1, d);
                worst = worst.max(lhs - rhs1);
                for mn in 0..4 {
                    worst = worst.max(lhs + at(1 - a, mn & 1, mn >> 1, 1 - d) - rhs2);
                }
            }
        }
    }
    Ok(worst)
}

pub fn cluster4_gme_test(f: &[f64]) -> Result<bool> {
    Ok(cluster4_margin(f)? > 0.0)
}

/// Which biseparability criterion applies to a connected four-node GD state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FourQubitClass {
    Star,
    Cluster,
}

/// GME margin of a GD state on a connected graph of 2–4 nodes: mapped into
/// the star (GHZ criterion) or the 4-path (cluster criterion) basis.
pub fn gd_gme_margin(gd: &GDState) -> Result<(FourQubitClass, f64)> {
    let n = gd.n_qubits();
    if !(2..=4).contains(&n) || !gd.basis_graph.is_connected() {
        return Err(Error::Basis("need a connected graph on 2 to 4 nodes".into()));
    }
    let star = Graph::star(n);
    if let Ok(s) = gd.to_basis(&star) {
        return Ok((FourQubitClass::Star, ghzd_margin(&s)?));
    }
    let c = gd.to_basis(&Graph::path(4))?;
    Ok((FourQubitClass::Cluster, cluster4_margin(&c.lambdas)?))
}

//! Exhaustive sweeps over Pauli setups on S′.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measures::{schmidt_lower, schmidt_upper};
use crate::oracle;
use crate::orbit::{canonical_form, lc_orbit, Canonical, ORBIT_LIMIT};
use crate::reduction::{reduce, Axis, PauliSetup};

pub const SWEEP_LIMIT: usize = 16;

/// Setup number `code` in the lexicographic order over S′ (first node most
/// significant, X < Y < Z).
pub fn setup_from_code(n: usize, s_prime: &[usize], code: usize) -> PauliSetup {
    let mut axes = vec![None; n];
    let mut c = code;
    for &j in s_prime.iter().rev() {
        axes[j] = Some(Axis::ALL[c % 3]);
        c /= 3;
    }
    PauliSetup::from_axes(axes)
}

/// Inverse of [`setup_from_code`].
pub fn code_of_setup(setup: &PauliSetup, s_prime: &[usize]) -> usize {
    s_prime
        .iter()
        .fold(0, |c, &j| 3 * c + setup.axis(j).map_or(0, |a| a.index() as usize - 1))
}

fn check_sweep(m: usize) -> Result<usize> {
    if m > SWEEP_LIMIT {
        return Err(Error::Limit { what: "sweep size |S′|", got: m, limit: SWEEP_LIMIT });
    }
    Ok(3usize.pow(m as u32))
}

/// All 3^|S′| setups in lexicographic order.
pub fn enumerate_setups(n: usize, s_prime: &[usize]) -> Result<impl Iterator<Item = PauliSetup> + '_> {
    let total = check_sweep(s_prime.len())?;
    Ok((0..total).map(move |c| setup_from_code(n, s_prime, c)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Measure {
    Schmidt,
    Ggm,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub setup: PauliSetup,
    pub connected: bool,
    pub orbit: Option<Canonical>,
    pub value: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitSummary {
    /// Smallest canonical form in the LC orbit.
    pub id: Canonical,
    /// Distinct labelled subgraphs on S in this orbit (packed codes).
    pub members: Vec<u64>,
    pub schmidt_lower: usize,
    pub schmidt_upper: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Census {
    pub s: Vec<usize>,
    pub setups: usize,
    pub connected_setups: usize,
    /// Distinct connected labelled subgraphs on S and the first setup code
    /// producing each.
    pub subgraphs: BTreeMap<u64, usize>,
}

impl Census {
    pub fn m(&self) -> usize {
        self.subgraphs.len()
    }
}

/// Distinct connected subgraphs G^α_S over every setup on S′ = V \ S.
pub fn subgraph_census(g: &Graph, s: &[usize]) -> Result<Census> {
    let n = g.n_nodes();
    if s.len() > 11 {
        return Err(Error::Limit { what: "census subsystem", got: s.len(), limit: 11 });
    }
    let mut s = s.to_vec();
    s.sort_unstable();
    let s_prime: Vec<usize> = (0..n).filter(|i| !s.contains(i)).collect();
    let total = check_sweep(s_prime.len())?;
    let (subgraphs, connected) = (0..total)
        .into_par_iter()
        .try_fold(
            || (BTreeMap::new(), 0usize),
            |(mut map, mut conn), code| {
                let rr = reduce(g, &setup_from_code(n, &s_prime, code))?;
                let gs = rr.subgraph_on_s();
                if gs.is_connected() {
                    conn += 1;
                    map.entry(gs.code()).or_insert(code);
                }
                Ok::<_, Error>((map, conn))
            },
        )
        .try_reduce(
            || (BTreeMap::new(), 0),
            |(mut a, ca), (b, cb)| {
                for (k, v) in b {
                    let e = a.entry(k).or_insert(v);
                    *e = (*e).min(v);
                }
                Ok((a, ca + cb))
            },
        )?;
    Ok(Census { s, setups: total, connected_setups: connected, subgraphs })
}

/// Census merged over several node labellings of the same graph. Each
/// labelling maps old node → new label. The reduction makes ordered choices,
/// so one labelling can reach a graph while its mirror image under a lattice
/// symmetry needs another; the union is labelling independent for lattices
/// whose symmetries the labellings cover. Subgraphs and setup codes are
/// reported in the original labels.
pub fn census_union(g: &Graph, s: &[usize], labellings: &[Vec<usize>]) -> Result<Census> {
    let n = g.n_nodes();
    let mut out = subgraph_census(g, s)?;
    let s_prime: Vec<usize> = (0..n).filter(|i| !out.s.contains(i)).collect();
    for lab in labellings {
        let mut inv = vec![usize::MAX; n];
        for (old, &new) in lab.iter().enumerate() {
            if new >= n || inv[new] != usize::MAX {
                return Err(Error::Parameter("labelling is not a permutation".into()));
            }
            inv[new] = old;
        }
        let mut h = Graph::empty(n);
        for (a, b) in g.edges() {
            h.set_edge(lab[a], lab[b], true);
        }
        let s_new: Vec<usize> = out.s.iter().map(|&v| lab[v]).collect();
        let c = subgraph_census(&h, &s_new)?;
        // c.s is sorted in new labels; k-th entry is original node inv[c.s[k]]
        let pos: Vec<usize> = c.s.iter().map(|&v| out.s.binary_search(&inv[v]).unwrap()).collect();
        let sp_new: Vec<usize> = (0..n).filter(|i| !c.s.contains(i)).collect();
        for (code, setup_code) in c.subgraphs {
            let sub = Graph::from_code(s.len(), code);
            let mut back = Graph::empty(s.len());
            for (a, b) in sub.edges() {
                back.set_edge(pos[a], pos[b], true);
            }
            let su = setup_from_code(n, &sp_new, setup_code);
            let orig = PauliSetup::from_axes((0..n).map(|v| su.axis(lab[v])).collect());
            let oc = code_of_setup(&orig, &s_prime);
            let e = out.subgraphs.entry(back.code()).or_insert(oc);
            *e = (*e).min(oc);
        }
    }
    Ok(out)
}

/// Groups census subgraphs into LC orbits (up to isomorphism).
pub fn orbits(census: &Census) -> Result<Vec<OrbitSummary>> {
    let n = census.s.len();
    let mut by_orbit: BTreeMap<Canonical, Vec<u64>> = BTreeMap::new();
    let mut known: BTreeMap<Canonical, Canonical> = BTreeMap::new();
    for &code in census.subgraphs.keys() {
        let g = Graph::from_code(n, code);
        let c = canonical_form(&g)?;
        let id = match known.get(&c) {
            Some(id) => *id,
            None => {
                let orbit: BTreeSet<Canonical> = lc_orbit(&g)?;
                let id = *orbit.iter().next().unwrap();
                for m in orbit {
                    known.insert(m, id);
                }
                id
            }
        };
        by_orbit.entry(id).or_default().push(code);
    }
    by_orbit
        .into_iter()
        .map(|(id, members)| {
            let rep = id.graph();
            Ok(OrbitSummary {
                id,
                members,
                schmidt_lower: schmidt_lower(&rep)?,
                schmidt_upper: schmidt_upper(&rep)?,
            })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct LgmeResult {
    /// None when no setup gives a connected subgraph.
    pub value: Option<f64>,
    pub best: Vec<SweepRecord>,
    pub census: Census,
    pub orbits: Vec<OrbitSummary>,
}

/// Largest measure over connected subgraphs reachable on S. For the Schmidt
/// measure the value is the orbit's common bound; when the bounds differ
/// the lower bound is reported.
pub fn lgme_pure(g: &Graph, s: &[usize], measure: Measure) -> Result<LgmeResult> {
    lgme_over(g, s, measure, &[])
}

/// [`lgme_pure`] on a census merged over extra labellings (see [`census_union`]).
pub fn lgme_over(g: &Graph, s: &[usize], measure: Measure, labellings: &[Vec<usize>]) -> Result<LgmeResult> {
    let census = census_union(g, s, labellings)?;
    let n = g.n_nodes();
    let k = census.s.len();
    // orbit grouping only saves work; past the canonical-form limit every
    // subgraph is scored on its own
    let (orbits, candidates): (Vec<OrbitSummary>, Vec<(u64, Option<Canonical>, Graph)>) = if k <= ORBIT_LIMIT {
        let orbits = orbits(&census)?;
        let c = orbits.iter().map(|o| (o.members[0], Some(o.id), o.id.graph())).collect();
        (orbits, c)
    } else {
        (vec![], census.subgraphs.keys().map(|&c| (c, None, Graph::from_code(k, c))).collect())
    };
    let mut value: Option<f64> = None;
    let mut best = Vec::new();
    let s_prime: Vec<usize> = (0..n).filter(|i| !census.s.contains(i)).collect();
    for (code, orbit, rep) in candidates {
        let v = match measure {
            Measure::Schmidt => schmidt_lower(&rep)? as f64,
            Measure::Ggm => oracle::ggm_pure(&oracle::dense_graph_state(&rep)?)?,
        };
        let rec = SweepRecord {
            setup: setup_from_code(n, &s_prime, census.subgraphs[&code]),
            connected: true,
            orbit,
            value: Some(v),
        };
        match value {
            Some(b) if v < b - 1e-12 => {}
            Some(b) if (v - b).abs() <= 1e-12 => best.push(rec),
            _ => {
                value = Some(v);
                best = vec![rec];
            }
        }
    }
    Ok(LgmeResult { value, best, census, orbits })
}

/// M(n) for legs of `n` nodes starting at `start` on a ladder, one entry per
/// size, with the least-squares line log₁₀M = a + b·n.
pub fn leg_census(rungs: usize, start: usize, sizes: &[usize]) -> Result<(Vec<(usize, usize)>, (f64, f64))> {
    let lat = super::lattice::LatticeSpec::ladder(rungs);
    let g = lat.graph()?;
    let mut rows = Vec::new();
    for &n in sizes {
        let s = super::lattice::ladder_leg(rungs, start, n)?;
        rows.push((n, census_union(&g, &s, &lat.labellings())?.m()));
    }
    let x: Vec<f64> = rows.iter().map(|r| r.0 as f64).collect();
    let y: Vec<f64> = rows.iter().map(|r| (r.1 as f64).log10()).collect();
    let c = super::noisy::polyfit(&x, &y, 1)?;
    Ok((rows, (c[0], c[1])))
}

//! Noisy lower bounds for a fixed setup and the critical noise strength.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gd::{noisy_gd_spectrum, noisy_gd_state, GDState};
use crate::graph::Graph;
use crate::measures::{gd_gme_margin, gd_negativity, ghzd_margin, star_hub};
use crate::noise::{ChannelKind, ChannelSpec, Frame, PauliProbs};
use crate::reduction::{reduce, Axis, PauliSetup, ReductionResult};
use crate::tags::CliffordTag;

use super::lattice::{LatticeKind, LatticeSpec, Placement, SubsystemSpec};
use super::toric::ToricCode;

pub const QC_STEP: f64 = 1e-3;
pub const QC_TOL: f64 = 1e-6;
/// Reported when GME is never lost on the scanned range.
pub const QC_SENTINEL: f64 = 1.0;

const LINE: usize = 4;
const FLOOR: f64 = 1e-12;

/// Quantity whose sign decides entanglement of the localized state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Criterion {
    /// GHZ-diagonal test on star bases, cluster test on four-node paths.
    Gme,
    /// Negativity across a bipartition, as a mask over sorted S.
    Negativity(usize),
}

impl Criterion {
    pub fn margin(self, gd: &GDState) -> Result<f64> {
        match self {
            Criterion::Negativity(a) => gd_negativity(gd, a),
            Criterion::Gme if star_hub(&gd.basis_graph).is_some() => ghzd_margin(gd),
            Criterion::Gme => Ok(gd_gme_margin(gd)?.1),
        }
    }
}

/// A graph, a Γ setup with connected subgraph on S, and per-node frames
/// relating the lattice's physical qubits to the graph state.
#[derive(Clone, Debug)]
pub struct NoisyProblem {
    pub rr: ReductionResult,
    pub node_frames: Vec<CliffordTag>,
    pub criterion: Criterion,
}

impl NoisyProblem {
    pub fn new(g: &Graph, setup: &PauliSetup, criterion: Criterion) -> Result<Self> {
        let rr = reduce(g, setup)?;
        if !rr.is_gamma() {
            return Err(Error::NotGamma);
        }
        if !rr.subgraph_on_s().is_connected() {
            return Err(Error::Invalid(format!("setup {setup} leaves S disconnected")));
        }
        let node_frames = vec![CliffordTag::I; g.n_nodes()];
        Ok(NoisyProblem { rr, node_frames, criterion })
    }

    /// Channels act on U_i|G⟩ with U_i = H on the given nodes.
    pub fn with_hadamards(mut self, on: &[bool]) -> Self {
        for (t, &h) in self.node_frames.iter_mut().zip(on) {
            *t = if h { CliffordTag::H } else { CliffordTag::I };
        }
        self
    }

    pub fn node_probs(&self, spec: &ChannelSpec) -> Vec<PauliProbs> {
        let p = spec.probs();
        self.node_frames.iter().map(|&t| Frame::of(t).conjugate_probs(&p)).collect()
    }

    /// Localized GD state for the all-+1 outcome.
    pub fn state(&self, spec: &ChannelSpec) -> Result<GDState> {
        noisy_gd_state(&self.rr, &self.node_probs(spec), 0)
    }

    pub fn spectrum(&self, spec: &ChannelSpec) -> Result<Vec<f64>> {
        noisy_gd_spectrum(&self.rr, &self.node_probs(spec), 0)
    }

    /// Star coherence of pair `psi` (hub bit clear) from the spectrum, exact
    /// to relative precision even where it vanishes.
    fn star_coherence(&self, spec: &ChannelSpec, hub: usize, psi: usize) -> Result<f64> {
        let chi = self.spectrum(spec)?;
        let sum: f64 = chi
            .iter()
            .enumerate()
            .filter(|(x, _)| (x >> hub) & 1 == 1)
            .map(|(x, v)| if (x & psi).count_ones() % 2 == 1 { -v } else { *v })
            .sum();
        Ok(sum / chi.len() as f64)
    }

    pub fn margin(&self, kind: ChannelKind, q: f64, eps: f64) -> Result<f64> {
        self.criterion.margin(&self.state(&ChannelSpec::new(kind, q, eps)?)?)
    }
}

/// Localized state and its criterion value for one channel.
pub fn noisy_lower_bound(problem: &NoisyProblem, spec: &ChannelSpec) -> Result<(GDState, f64)> {
    let gd = problem.state(spec)?;
    let v = problem.criterion.margin(&gd)?;
    Ok((gd, v))
}

/// Smallest q at which the localized state stops passing the criterion.
/// A touching zero (margin positive on both sides) also counts.
pub fn critical_noise(problem: &NoisyProblem, kind: ChannelKind, eps: f64) -> Result<f64> {
    let q_max = ChannelSpec::q_max(kind, eps);
    let steps = (q_max / QC_STEP).floor() as usize;
    let mut grid: Vec<f64> = (0..=steps).map(|k| k as f64 * QC_STEP).collect();
    if q_max - grid[steps] > 1e-12 {
        grid.push(q_max);
    }
    let f = |q: f64| problem.margin(kind, q, eps);
    let margins: Vec<f64> = grid.par_iter().map(|&q| f(q)).collect::<Result<_>>()?;
    // margins within rounding of zero are not a transition on their own
    if let Some(k) = margins.iter().position(|&m| m < -FLOOR) {
        if k == 0 {
            return Ok(0.0);
        }
        let (mut lo, mut hi) = (grid[k - 1], grid[k]);
        while hi - lo > QC_TOL / 4.0 {
            let mid = 0.5 * (lo + hi);
            if f(mid)? >= -FLOOR {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return Ok(0.5 * (lo + hi));
    }
    let k = (1..grid.len() - 1)
        .filter(|&k| margins[k] <= margins[k - 1] && margins[k] <= margins[k + 1])
        .min_by(|&a, &b| margins[a].total_cmp(&margins[b]));
    let Some(k) = k else { return Ok(QC_SENTINEL) };
    // an n-fold zero becomes a kink under x^(1/n), which golden section finds
    let n = problem.rr.regions.s.len();
    let basis = problem.rr.subgraph_on_s();
    let q = match (problem.criterion, star_hub(&basis)) {
        (Criterion::Gme, Some(hub)) => {
            let at = |q: f64| ChannelSpec::new(kind, q, eps);
            let spec = at(grid[k])?;
            let psi = (0..1usize << n)
                .filter(|p| (p >> hub) & 1 == 0)
                .map(|p| Ok((p, problem.star_coherence(&spec, hub, p)?.abs())))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .map_or(0, |(p, _)| p);
            let g = |q: f64| Ok(problem.star_coherence(&at(q)?, hub, psi)?.abs().powf(1.0 / n as f64));
            // grid margins near an n-fold zero sit at the rounding floor,
            // so k is only known to a few steps
            let (lo, hi) = (grid[k.saturating_sub(20)], grid[(k + 20).min(grid.len() - 1)]);
            golden_min(&g, lo, hi, 1e-13)?
        }
        _ => {
            let g = |q: f64| f(q).map(|m| m.max(0.0).powf(1.0 / n as f64));
            golden_min(&g, grid[k - 1], grid[k + 1], 1e-13)?
        }
    };
    if f(q)? < 1e-9 {
        return Ok(q);
    }
    Ok(QC_SENTINEL)
}

fn golden_min(f: &impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    Ok(0.5 * (a + b))
}

#[derive(Clone, Debug, PartialEq)]
pub struct QcCurve {
    pub kind: ChannelKind,
    pub eps: Vec<f64>,
    pub q_c: Vec<f64>,
    /// a_0, a_1, … of the least-squares fit q_c ≈ Σ a_i ε^i.
    pub coeffs: Vec<f64>,
}

pub fn fit_degree(kind: ChannelKind) -> usize {
    if kind == ChannelKind::DP {
        3
    } else {
        2
    }
}

pub fn qc_curve(problem: &NoisyProblem, kind: ChannelKind, eps: &[f64]) -> Result<QcCurve> {
    let q_c = eps.iter().map(|&e| critical_noise(problem, kind, e)).collect::<Result<Vec<_>>>()?;
    let coeffs = polyfit(eps, &q_c, fit_degree(kind))?;
    Ok(QcCurve { kind, eps: eps.to_vec(), q_c, coeffs })
}

pub fn polyfit(x: &[f64], y: &[f64], degree: usize) -> Result<Vec<f64>> {
    if x.len() != y.len() || x.len() <= degree {
        return Err(Error::Parameter(format!("need more than {degree} points for the fit")));
    }
    let a = DMatrix::from_fn(x.len(), degree + 1, |i, j| x[i].powi(j as i32));
    let b = DVector::from_column_slice(y);
    let sol = a.svd(true, true).solve(&b, 1e-12).map_err(|e| Error::Invalid(e.to_string()))?;
    Ok(sol.iter().copied().collect())
}

/// Subsystem and setup for a four-node linear GD state: S is four
/// consecutive nodes along a line and all of S′ is measured in σ³, so
/// G_S is the path s0 s1 s2 s3. Nodes beyond the σ³ ring around S cannot
/// influence the state on S, whatever they are measured in.
pub fn alpha_c(lattice: &LatticeSpec, at: Placement) -> Result<(Vec<usize>, PauliSetup)> {
    let n = lattice.n_nodes();
    let centered = |len: usize| -> Result<usize> {
        if len < LINE + 2 {
            return Err(Error::Parameter(format!("{lattice} is too short for a bulk placement")));
        }
        Ok((len - LINE) / 2)
    };
    let line: Vec<usize> = match (lattice.kind, at) {
        (LatticeKind::Linear | LatticeKind::Ladder, Placement::Corner) => {
            return Err(Error::Parameter(format!("{lattice} has no corner placement")));
        }
        (LatticeKind::Linear | LatticeKind::Ladder, _) => {
            let len = lattice.dims[0];
            let start = if at == Placement::Bulk { centered(len)? } else { 0 };
            if start + LINE > len {
                return Err(Error::Parameter(format!("{lattice} is too short")));
            }
            (start..start + LINE).collect()
        }
        (LatticeKind::Square, _) => {
            let (rows, cols) = (lattice.dims[0], lattice.dims[1]);
            let (r, c) = match at {
                Placement::Corner => (0, 0),
                Placement::Boundary => (0, centered(cols)?),
                Placement::Bulk => {
                    if rows < 3 {
                        return Err(Error::Parameter(format!("{lattice} has no bulk row")));
                    }
                    (rows / 2, centered(cols)?)
                }
            };
            if c + LINE > cols {
                return Err(Error::Parameter(format!("{lattice} is too narrow")));
            }
            (c..c + LINE).map(|k| r * cols + k).collect()
        }
        _ => return Err(Error::Parameter(format!("no line placement on {lattice}"))),
    };
    let mut axes = vec![Some(Axis::Z); n];
    for &i in &line {
        axes[i] = None;
    }
    let s = line.clone();
    Ok((s, PauliSetup::from_axes(axes)))
}

/// The four-node line problem on a lattice placement.
pub fn lattice_problem(lattice: &LatticeSpec, at: Placement) -> Result<NoisyProblem> {
    let (_, setup) = alpha_c(lattice, at)?;
    NoisyProblem::new(&lattice.graph()?, &setup, Criterion::Gme)
}

/// A horizontal loop of the toric code, channels acting on code qubits.
pub fn toric_loop_problem(np: usize, row: usize) -> Result<NoisyProblem> {
    let tc = ToricCode::new(np)?;
    Ok(NoisyProblem::new(&tc.graph, &tc.loop_alpha_c(row), Criterion::Gme)?.with_hadamards(&tc.controls))
}

/// Two loops on rows 0 and `d`, scored by negativity across the loops.
/// `d` is the torus distance between the loops, so at most N_P/2; a larger
/// row offset is a shorter distance reached the long way round.
pub fn two_loop_problem(np: usize, d: usize) -> Result<NoisyProblem> {
    let tc = ToricCode::new(np)?;
    if d == 0 || d > np / 2 {
        return Err(Error::Parameter(format!("loop distance {d} outside 1..={} for N_P = {np}", np / 2)));
    }
    let (a, _, setup) = tc.two_loop_alpha_c(0, d)?;
    let mut p = NoisyProblem::new(&tc.graph, &setup, Criterion::Gme)?.with_hadamards(&tc.controls);
    let mask = p.rr.regions.s.iter().enumerate().filter(|(_, i)| a.contains(i)).fold(0, |m, (k, _)| m | 1 << k);
    p.criterion = Criterion::Negativity(mask);
    Ok(p)
}

/// The noisy problem behind a placement: `line:*` on linear, ladder and
/// square lattices, `loop:ROW` and `loops:D` on the toric code.
pub fn placement_problem(lattice: &LatticeSpec, sub: &SubsystemSpec) -> Result<NoisyProblem> {
    match (sub, lattice.kind) {
        (SubsystemSpec::Line(at), _) => lattice_problem(lattice, *at),
        (SubsystemSpec::Loop(r), LatticeKind::Toric) => toric_loop_problem(lattice.dims[0], *r),
        (SubsystemSpec::Loops(d), LatticeKind::Toric) => two_loop_problem(lattice.dims[0], *d),
        _ => Err(Error::Parameter(format!(
            "no noisy setup for {sub:?} on {lattice}; supported: line:PLACEMENT on linear/ladder/square, loop:ROW and loops:D on toric"
        ))),
    }
}

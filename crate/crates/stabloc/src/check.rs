//! Oracle-equivalence suites shared by the `check` command and the tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::gd::noisy_gd_state;
use crate::graph::{random_connected, Graph};
use crate::noise::{ChannelKind, ChannelSpec, PauliProbs};
use crate::oracle;
use crate::reduction::{classify_outcomes, measure_graph, reduce, Axis, OutcomeKind, PauliSetup};

#[derive(Clone, Debug, Default)]
pub struct PureReport {
    pub graphs: usize,
    pub setups: usize,
    pub outcomes: usize,
    pub min_fidelity: f64,
    pub max_prob_err: f64,
    pub forbidden_mismatches: usize,
    pub failure: Option<String>,
}

/// Every setup on a random S′ of at most `max_measured` nodes, every outcome.
pub fn pure_case(g: &Graph, s: &[usize], rep: &mut PureReport) -> Result<()> {
    let n = g.n_nodes();
    let measured: Vec<usize> = (0..n).filter(|i| !s.contains(i)).collect();
    let psi = oracle::dense_graph_state(g)?;
    let rho = psi.density();
    for code in 0..3usize.pow(measured.len() as u32) {
        let mut c = code;
        let assign: Vec<(usize, Axis)> = measured
            .iter()
            .map(|&j| {
                let a = Axis::ALL[c % 3];
                c /= 3;
                (j, a)
            })
            .collect();
        let setup = PauliSetup::new(n, &assign)?;
        let rr = reduce(g, &setup)?;
        let class = classify_outcomes(&rr)?;
        rep.setups += 1;
        for k in 0..1u64 << measured.len() {
            rep.outcomes += 1;
            let pm = measure_graph(&rr, k)?;
            let (p, rho_s) = oracle::project_and_condition(&rho, &setup, k)?;
            rep.max_prob_err = rep.max_prob_err.max((p - pm.probability).abs());
            let oracle_forbidden = p < 1e-14;
            let listed = class.kind == OutcomeKind::GammaBar && class.forbidden.contains(&k);
            if oracle_forbidden != pm.forbidden || listed != pm.forbidden {
                rep.forbidden_mismatches += 1;
                rep.failure.get_or_insert_with(|| format!("forbidden mismatch: {:?} {setup} outcome {k}", g.edges()));
            }
            if pm.forbidden {
                continue;
            }
            let pred = oracle::dense_tagged_state(&pm.subgraph_on_s, &pm.correction)?.density();
            let f = fidelity_pure(&pred, &rho_s);
            if f < rep.min_fidelity {
                rep.min_fidelity = f;
                if f < 1.0 - 1e-10 {
                    rep.failure.get_or_insert_with(|| format!("fidelity {f}: {:?} {setup} outcome {k}", g.edges()));
                }
            }
        }
    }
    Ok(())
}

/// Tr(σρ) for pure σ.
fn fidelity_pure(sigma: &oracle::DenseDensity, rho: &oracle::DenseDensity) -> f64 {
    (&sigma.m * &rho.m).trace().re
}

pub fn pure_suite(seed: u64, n_graphs: usize, max_n: usize, max_measured: usize) -> Result<PureReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = PureReport { min_fidelity: 1.0, ..Default::default() };
    for _ in 0..n_graphs {
        let n = rng.gen_range(2..=max_n);
        let p = rng.gen_range(0.25..0.8);
        let g = random_connected(&mut rng, n, p);
        let m = rng.gen_range(1..=max_measured.min(n - 1));
        let mut nodes: Vec<usize> = (0..n).collect();
        nodes.shuffle(&mut rng);
        let mut s: Vec<usize> = nodes[m..].to_vec();
        s.sort_unstable();
        pure_case(&g, &s, &mut rep)?;
        rep.graphs += 1;
    }
    Ok(rep)
}

#[derive(Clone, Debug, Default)]
pub struct NoisyReport {
    pub cases: usize,
    pub max_lambda_err: f64,
    pub max_offdiag: f64,
    pub max_prob_err: f64,
    pub failure: Option<String>,
}

fn random_probs<R: Rng>(rng: &mut R) -> PauliProbs {
    let kind = ChannelKind::ALL[rng.gen_range(0..4)];
    let q = rng.gen_range(0.0..0.4);
    let eps = rng.gen_range(0.0..1.0);
    ChannelSpec::new(kind, q, eps).map(|s| s.probs()).unwrap_or([1.0, 0.0, 0.0, 0.0])
}

/// Random Γ setups with random per-node channels: the GD engine against the
/// dense density matrix, every outcome.
pub fn noisy_suite(seed: u64, n_cases: usize, max_n: usize) -> Result<NoisyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = NoisyReport::default();
    while rep.cases < n_cases {
        let n = rng.gen_range(3..=max_n);
        let p = rng.gen_range(0.3..0.8);
        let g = random_connected(&mut rng, n, p);
        let ns = rng.gen_range(1..=3.min(n - 1));
        let mut nodes: Vec<usize> = (0..n).collect();
        nodes.shuffle(&mut rng);
        let s: Vec<usize> = nodes[..ns].to_vec();
        let assign: Vec<(usize, Axis)> =
            (0..n).filter(|i| !s.contains(i)).map(|j| (j, Axis::ALL[rng.gen_range(0..3)])).collect();
        let setup = PauliSetup::new(n, &assign)?;
        let rr = reduce(&g, &setup)?;
        if !rr.is_gamma() {
            continue;
        }
        let probs: Vec<PauliProbs> = (0..n).map(|_| random_probs(&mut rng)).collect();
        let m = assign.len();
        let rho = oracle::apply_channels(&oracle::dense_graph_state(&g)?.density(), &probs)?;
        for k in 0..1u64 << m {
            let gd = noisy_gd_state(&rr, &probs, k)?;
            let (p, rho_s) = oracle::project_and_condition(&rho, &setup, k)?;
            rep.max_prob_err = rep.max_prob_err.max((p - 0.5f64.powi(m as i32)).abs());
            let (diag, off) = oracle::graph_basis_matrix(&rho_s, &gd.basis_graph, &gd.frame)?;
            let err = diag.iter().zip(&gd.lambdas).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            rep.max_lambda_err = rep.max_lambda_err.max(err);
            rep.max_offdiag = rep.max_offdiag.max(off);
            if err > 1e-10 || off > 1e-10 {
                rep.failure.get_or_insert_with(|| format!("GD mismatch {err:e}/{off:e}: {:?} {setup} outcome {k}", g.edges()));
            }
        }
        rep.cases += 1;
    }
    Ok(rep)
}

//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stabloc::check::pure_suite;
use stabloc::gd::{mixing_vector, noise_on_s_gd, partition_subclasses, xor_compose};
use stabloc::graph::random_connected;
use stabloc::localizer::lattice::{ladder_leg, ladder_rungs, linear_segment, plaquette, Placement};
use stabloc::localizer::noisy::{critical_noise, lattice_problem, toric_loop_problem, two_loop_problem};
use stabloc::localizer::{census_union, leg_census, lgme_over, noisy_lower_bound, LatticeSpec, Measure};
use stabloc::reduction::{classify_outcomes, measure_graph, reduce};
use stabloc::{oracle, Axis, ChannelKind, ChannelSpec, Graph, PauliSetup};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn oracle_equivalence() -> Outcome {
    let rep = pure_suite(2024, 200, 7, 4).map_err(s)?;
    if let Some(f) = rep.failure {
        return Err(f);
    }
    ensure(rep.min_fidelity >= 1.0 - 1e-10, || format!("fidelity {}", rep.min_fidelity))?;
    ensure(rep.max_prob_err <= 1e-12, || format!("probability error {:e}", rep.max_prob_err))?;
    Ok(format!(
        "{} graphs, {} setups, {} outcomes, min fidelity {:.12}",
        rep.graphs, rep.setups, rep.outcomes, rep.min_fidelity
    ))
}

/// (subgraph count, orbit count, LGME value) on a lattice.
fn lattice_lgme(lat: &LatticeSpec, nodes: &[usize]) -> Result<(usize, usize, f64), String> {
    let g = lat.graph().map_err(s)?;
    let r = lgme_over(&g, nodes, Measure::Schmidt, &lat.labellings()).map_err(s)?;
    Ok((r.census.m(), r.orbits.len(), r.value.unwrap_or(-1.0)))
}

fn pure_lattice_values() -> Outcome {
    for n in 2..=10 {
        for at in [Placement::Boundary, Placement::Bulk] {
            let lat = LatticeSpec::linear(n + 4);
            let seg = linear_segment(n + 4, n, at).map_err(s)?;
            let g = lat.graph().map_err(s)?;
            let r = lgme_over(&g, &seg, Measure::Schmidt, &[]).map_err(s)?;
            ensure(r.value == Some((n / 2) as f64), || format!("linear n={n} {at:?}: {:?}", r.value))?;
            for &code in r.census.subgraphs.keys() {
                let h = Graph::from_code(n, code);
                let linear = h.n_edges() == n - 1 && (0..n).all(|i| h.degree(i) <= 2) && h.is_connected();
                ensure(linear, || format!("linear n={n}: non-linear subgraph {:?}", h.edges()))?;
            }
        }
    }
    let want = [
        ("square corner", Placement::Corner, 13, 1, 2.0),
        ("square boundary", Placement::Boundary, 38, 2, 2.0),
        ("square bulk", Placement::Bulk, 38, 2, 2.0),
    ];
    let sq = LatticeSpec::square(4, 4);
    for (name, at, m, o, v) in want {
        let got = lattice_lgme(&sq, &plaquette(4, 4, at).map_err(s)?)?;
        ensure(got == (m, o, v), || format!("{name}: got {got:?}, want {:?}", (m, o, v)))?;
    }
    let ladders = [
        ("ladder R=2 boundary", 2, 6, Placement::Boundary, 3, 2.0),
        ("ladder R=2 bulk", 2, 6, Placement::Bulk, 7, 2.0),
        ("ladder R=3 bulk", 3, 7, Placement::Bulk, 9, 3.0),
        ("ladder R=4 bulk", 4, 8, Placement::Bulk, 9, 4.0),
    ];
    for (name, r, rungs, at, m, v) in ladders {
        let lat = LatticeSpec::ladder(rungs);
        let got = lattice_lgme(&lat, &ladder_rungs(rungs, r, at).map_err(s)?)?;
        ensure((got.0, got.2) == (m, v), || format!("{name}: got {got:?}, want M={m} value {v}"))?;
    }
    Ok("linear n=2..10, square 13/38/38, ladder 3/7/9/9 all match".into())
}

fn census_scaling() -> Outcome {
    let sizes: Vec<usize> = (2..=8).collect();
    let (rows, (a, b)) = leg_census(8, 0, &sizes).map_err(s)?;
    let ms: Vec<usize> = rows.iter().map(|r| r.1).collect();
    ensure((b - 0.481).abs() <= 0.02 && (a + 0.78).abs() <= 0.05, || {
        format!("fit a = {a:.4}, b = {b:.4}, M = {ms:?}")
    })?;
    // the lattice census also covers single legs
    let lat = LatticeSpec::ladder(8);
    let m4 = census_union(&lat.graph().map_err(s)?, &ladder_leg(8, 0, 4).map_err(s)?, &lat.labellings())
        .map_err(s)?
        .m();
    ensure(m4 == ms[2], || format!("leg n=4: {m4} vs {}", ms[2]))?;
    Ok(format!("a = {a:.4}, b = {b:.4}, M = {ms:?}"))
}

fn kite_golden_vectors() -> Outcome {
    // a = 0, b = 1 form S; qubits 1 and 2 of the example are nodes 2 and 3
    let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).map_err(s)?;
    let mut worst = 0.0f64;
    let mut close = |got: f64, want: f64, what: &str| -> Result<(), String> {
        worst = worst.max((got - want).abs());
        ensure((got - want).abs() <= 1e-12, || format!("{what}: {got} vs {want}"))
    };
    for q in [0.1, 0.3, 0.7] {
        let probs = vec![ChannelSpec::new(ChannelKind::BPF, q, 0.0).map_err(s)?.probs(); 4];
        let (a, b) = (1.0 - q + q * q / 2.0, q - q * q / 2.0);

        let zz = PauliSetup::new(4, &[(2, Axis::Z), (3, Axis::Z)]).map_err(s)?;
        let rr = reduce(&g, &zz).map_err(s)?;
        ensure(rr.is_gamma(), || "ZZ setup should be Γ".into())?;
        let sub = mixing_vector(&partition_subclasses(&rr, &probs).map_err(s)?);
        let pm = measure_graph(&rr, 0).map_err(s)?;
        let on_s = noise_on_s_gd(&pm.subgraph_on_s, &probs[..2], &pm.correction).map_err(s)?;
        for (v, what) in [(&sub, "measured-side λ"), (&on_s.lambdas, "on-S λ")] {
            for (k, want) in [a, 0.0, 0.0, b].into_iter().enumerate() {
                close(v[k], want, what)?;
            }
        }
        let sub_gd = stabloc::GDState { lambdas: sub.clone(), ..on_s.clone() };
        let composed = xor_compose(&on_s, &sub_gd).map_err(s)?;
        for (k, want) in [a * a + b * b, 0.0, 0.0, 2.0 * a * b].into_iter().enumerate() {
            close(composed.lambdas[k], want, "composed λ")?;
        }
        // other outcomes are the same state up to the Z-string W^L
        for k in 0..4 {
            let full = stabloc::gd::noisy_gd_state(&rr, &probs, k).map_err(s)?;
            let shift = rr.z_shift_mask(k);
            for (j, want) in [a * a + b * b, 0.0, 0.0, 2.0 * a * b].into_iter().enumerate() {
                close(full.lambdas[j ^ shift], want, "engine λ")?;
            }
        }

        let xx = PauliSetup::new(4, &[(2, Axis::X), (3, Axis::X)]).map_err(s)?;
        let rr = reduce(&g, &xx).map_err(s)?;
        let class = classify_outcomes(&rr).map_err(s)?;
        // outcome bit t belongs to the t-th measured node; (+1)(−1) is k = 2
        ensure(class.forbidden == vec![1, 2], || format!("forbidden set {:?}", class.forbidden))?;
        let conditioned = |k: u64| -> Result<(f64, Vec<f64>), String> {
            let pm = measure_graph(&rr, k).map_err(s)?;
            let (p, rho) = oracle::noisy_post_measurement(&g, &probs, &xx, k).map_err(s)?;
            let lam = oracle::graph_basis_fidelities(&rho, &pm.subgraph_on_s, &pm.correction).map_err(s)?;
            Ok((p, lam))
        };
        let (p00, l00) = conditioned(0)?;
        close(p00, a / 2.0, "Γ̄ probability of (+1)(+1)")?;
        let d = a;
        let w00 = [
            1.0 - q + q * q / 4.0 + b * (q * q / 4.0) / d,
            0.0,
            0.0,
            q * q / 4.0 + b * (1.0 - q + q * q / 4.0) / d,
        ];
        for k in 0..4 {
            close(l00[k], w00[k], "Γ̄ (+1)(+1) state")?;
        }
        let (p01, l01) = conditioned(2)?;
        close(p01, q * (1.0 - q / 2.0) / 2.0, "Γ̄ probability of (+1)(−1)")?;
        for (k, want) in [0.5, 0.0, 0.0, 0.5].into_iter().enumerate() {
            close(l01[k], want, "Γ̄ (+1)(−1) state")?;
        }
    }
    Ok(format!("q ∈ {{0.1, 0.3, 0.7}}, max deviation {worst:.1e}"))
}

fn toric_closed_form() -> Outcome {
    let mut worst = 0.0f64;
    for k in 1..=10 {
        let eps = k as f64 / 10.0;
        let want = (1.0 + eps - (1.0 + eps * eps).sqrt()) / eps;
        let mut first = None;
        for np in [3, 4, 5] {
            let p = toric_loop_problem(np, 0).map_err(s)?;
            let qc = critical_noise(&p, ChannelKind::BF, eps).map_err(s)?;
            worst = worst.max((qc - want).abs());
            ensure((qc - want).abs() <= 1e-5, || format!("N_P={np} ε={eps}: {qc} vs {want}"))?;
            let f = *first.get_or_insert(qc);
            ensure((qc - f).abs() <= 1e-6, || format!("ε={eps}: N_P={np} gives {qc}, N_P=3 gives {f}"))?;
        }
    }
    Ok(format!("ε = 0.1..1, N_P = 3, 4, 5, max deviation {worst:.1e}"))
}

fn eps_grid() -> Vec<f64> {
    (0..=10).map(|k| k as f64 / 10.0).collect()
}

fn qc_series(p: &stabloc::localizer::NoisyProblem, kind: ChannelKind) -> Result<Vec<f64>, String> {
    eps_grid().into_iter().map(|e| critical_noise(p, kind, e).map_err(s)).collect()
}

fn non_increasing(v: &[f64], tol: f64) -> bool {
    v.windows(2).all(|w| w[1] <= w[0] + tol)
}

fn monotonicity() -> Outcome {
    const TOL: f64 = 1e-9;
    let families: Vec<(&str, LatticeSpec, Vec<Placement>)> = vec![
        ("linear", LatticeSpec::linear(9), vec![Placement::Boundary, Placement::Bulk]),
        ("ladder", LatticeSpec::ladder(9), vec![Placement::Boundary, Placement::Bulk]),
        ("square", LatticeSpec::square(5, 9), vec![Placement::Corner, Placement::Boundary, Placement::Bulk]),
    ];
    let mut pd_ref: Option<Vec<f64>> = None;
    let mut checks = 0;
    for (name, lat, places) in &families {
        for kind in ChannelKind::ALL {
            // ordered corner, boundary, bulk
            let mut series = Vec::new();
            for &at in places {
                let p = lattice_problem(lat, at).map_err(s)?;
                let v = qc_series(&p, kind)?;
                ensure(non_increasing(&v, TOL), || format!("{name} {at:?} {kind:?} not monotone in ε: {v:?}"))?;
                checks += 1;
                if kind == ChannelKind::PD {
                    let r = pd_ref.get_or_insert_with(|| v.clone());
                    let dev = v.iter().zip(r.iter()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                    ensure(dev <= 1e-6, || format!("PD {name} {at:?} deviates by {dev:e}"))?;
                }
                series.push((at, v));
            }
            if kind != ChannelKind::PD {
                for w in series.windows(2) {
                    let ((a0, outer), (a1, inner)) = (&w[0], &w[1]);
                    for (e, (o, i)) in eps_grid().iter().zip(outer.iter().zip(inner)) {
                        ensure(*i <= o + TOL, || format!("{name} {kind:?} ε={e}: {a1:?} {i} > {a0:?} {o}"))?;
                    }
                }
            }
        }
    }
    for kind in ChannelKind::ALL {
        let mut prev: Option<Vec<f64>> = None;
        for np in 3..=6 {
            let v = qc_series(&toric_loop_problem(np, 0).map_err(s)?, kind)?;
            ensure(non_increasing(&v, TOL), || format!("toric N_P={np} {kind:?} not monotone in ε: {v:?}"))?;
            checks += 1;
            if kind != ChannelKind::BF {
                if let Some(p) = &prev {
                    for (e, (a, b)) in eps_grid().iter().zip(p.iter().zip(&v)) {
                        ensure(*b <= a + TOL, || format!("toric {kind:?} ε={e}: N_P={np} {b} > {a}"))?;
                    }
                }
            }
            prev = Some(v);
        }
    }
    let pd0 = pd_ref.map(|v| v[0]).unwrap_or(f64::NAN);
    Ok(format!("{checks} q_c curves checked, PD q_c(ε=0) = {pd0:.6} on every placement"))
}

fn complexity_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut graphs: Vec<Graph> = (0..100)
        .map(|_| {
            let n = rng.gen_range(2..=24);
            let p = rng.gen_range(0.1..0.9);
            random_connected(&mut rng, n, p)
        })
        .collect();
    graphs.push(Graph::complete(24));
    let mut cases = 0;
    let mut tightest = 0.0f64;
    for g in &graphs {
        let n = g.n_nodes();
        for m in 1..n {
            let mut nodes: Vec<usize> = (0..n).collect();
            // the complete graph is symmetric; random graphs get random Y sets
            if n != 24 || g.n_edges() != 24 * 23 / 2 {
                nodes.shuffle(&mut rng);
            }
            let assign: Vec<(usize, Axis)> = nodes[..m].iter().map(|&j| (j, Axis::Y)).collect();
            let setup = PauliSetup::new(n, &assign).map_err(s)?;
            let rr = reduce(g, &setup).map_err(s)?;
            let bound = (m * (n * n - n + 6)) as u64;
            tightest = tightest.max(rr.op_count as f64 / bound as f64);
            ensure(rr.op_count <= bound, || format!("N={n} m={m}: op_count {} > {bound}", rr.op_count))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases, largest op_count/bound = {tightest:.3}"))
}

fn two_loop_negativity() -> Outcome {
    let qs = [0.0, 0.1, 0.2, 0.3];
    let mut lines = 0;
    for np in 3..=6 {
        for kind in ChannelKind::ALL {
            for eps in [0.0, 0.5, 1.0] {
                let mut prev: Option<Vec<f64>> = None;
                for d in 1..=np / 2 {
                    let p = two_loop_problem(np, d).map_err(s)?;
                    let mut e = Vec::new();
                    for &q in &qs {
                        let spec = ChannelSpec::new(kind, q, eps).map_err(s)?;
                        e.push(noisy_lower_bound(&p, &spec).map_err(s)?.1);
                    }
                    ensure(e[0] > 0.0, || format!("N_P={np} d={d}: E(0) = {}", e[0]))?;
                    if let Some(pv) = &prev {
                        for (k, (a, b)) in pv.iter().zip(&e).enumerate() {
                            ensure(*b <= a + 1e-12, || {
                                format!("N_P={np} {kind:?} ε={eps} q={}: d={d} gives {b} > {a}", qs[k])
                            })?;
                        }
                    }
                    prev = Some(e);
                    lines += 1;
                }
            }
        }
    }
    Ok(format!("{lines} (N_P, kind, ε, d) curves, E(q=0) > 0 and non-increasing in d"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 oracle equivalence", oracle_equivalence),
        ("2 pure-state lattice values", pure_lattice_values),
        ("3 census scaling", census_scaling),
        ("4 kite golden vectors", kite_golden_vectors),
        ("5 toric BF closed form", toric_closed_form),
        ("6 q_c monotonicity", monotonicity),
        ("7 complexity bound", complexity_bound),
        ("8 two-loop negativity", two_loop_negativity),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        let r = f();
        let dt = t.elapsed();
        match r {
            Ok(msg) => println!("PASS criterion {name}: {msg} ({dt:.1?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} ({dt:.1?})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

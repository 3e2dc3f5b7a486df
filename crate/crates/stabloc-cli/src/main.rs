use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use stabloc::check::{noisy_suite, pure_suite};
use stabloc::io::{fmt9, parse_graph, parse_pms, write_graph};
use stabloc::localizer::{
    critical_noise, leg_census, lgme_over, noisy_lower_bound, placement_problem, qc_curve, LatticeSpec, Measure,
    SubsystemSpec,
};
use stabloc::measures::{gd_gmc, star_hub};
use stabloc::reduction::{classify_outcomes, outcome_string, reduce, reduce_graph, OutcomeKind};
use stabloc::{ChannelKind, ChannelSpec, Graph};

#[derive(Parser)]
#[command(name = "stabloc", version, about = "Localizable multiparty entanglement on graph and stabilizer states")]
struct Cli {
    /// Worker threads for parallel sweeps.
    #[arg(long, global = true, env = "STABLOC_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduce a graph for one measurement setup.
    Reduce {
        #[arg(long)]
        graph: PathBuf,
        /// e.g. "pms: 2:X 3:Y 4:Z"
        #[arg(long)]
        pms: String,
    },
    /// Pure-state LGME over every setup on S′.
    Lgme {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "schmidt")]
        measure: MeasureArg,
    },
    /// Noisy curve `q,E` for a placement's fixed setup.
    Sweep {
        #[command(flatten)]
        target: Target,
        /// Channel kind and ε; q comes from --q-grid.
        #[arg(long)]
        noise: String,
        #[arg(long, default_value = "0:1:0.05")]
        q_grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Critical noise per ε as `eps,q_c`, plus the polynomial fit.
    Qc {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        noise: String,
        #[arg(long, default_value = "0:1:0.1")]
        eps_grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Connected-subgraph counts `n,log10M` for ladder legs.
    Census {
        #[arg(long, default_value = "ladder:8")]
        lattice: String,
        /// First rung of the leg segment.
        #[arg(long, default_value_t = 0)]
        start: usize,
        #[arg(long, default_value = "2:8")]
        sizes: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graph calculus against the dense oracle on random graphs.
    Check {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        graphs: usize,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_measured: usize,
        #[arg(long, default_value_t = 100)]
        noisy_cases: usize,
        /// Validate a deliberately corrupted graph first (self-loop).
        #[arg(long)]
        inject_self_loop: bool,
    },
}

#[derive(clap::Args)]
struct Target {
    #[arg(long, conflicts_with = "lattice")]
    graph: Option<PathBuf>,
    #[arg(long)]
    lattice: Option<String>,
    /// Node list or placement, e.g. 0,1,4 or plaquette:bulk or line:bulk.
    #[arg(long)]
    subsystem: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Schmidt,
    Ggm,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().ok();
    }
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Reduce { graph, pms } => reduce_cmd(&graph, &pms),
        Cmd::Lgme { target, measure } => lgme_cmd(&target, measure),
        Cmd::Sweep { target, noise, q_grid, out } => sweep_cmd(&target, &noise, &q_grid, out),
        Cmd::Qc { target, noise, eps_grid, out } => qc_cmd(&target, &noise, &eps_grid, out),
        Cmd::Census { lattice, start, sizes, out } => census_cmd(&lattice, start, &sizes, out),
        Cmd::Check { seed, graphs, max_n, max_measured, noisy_cases, inject_self_loop } => {
            check_cmd(seed, graphs, max_n, max_measured, noisy_cases, inject_self_loop)
        }
    }
}

fn read_graph(path: &PathBuf) -> Result<stabloc::AttributedGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("in {}", path.display()))
}

fn reduce_cmd(path: &PathBuf, pms: &str) -> Result<ExitCode> {
    let ag = read_graph(path)?;
    let setup = parse_pms(pms, ag.n_nodes())?;
    // a tagged file is taken as already rotated to Z
    let rr = if ag.tags.iter().all(|t| *t == stabloc::CliffordTag::I) {
        reduce(&ag.graph, &setup)?
    } else {
        reduce_graph(&ag, &setup)?
    };
    print!("{}", write_graph(&rr.reduced));
    println!("S {:?}", rr.regions.s);
    println!("S1 {:?}", rr.regions.s1);
    println!("S2 {:?}", rr.regions.s2);
    println!("op_count {}", rr.op_count);
    let class = classify_outcomes(&rr)?;
    match class.kind {
        OutcomeKind::Gamma => println!("outcomes gamma"),
        OutcomeKind::GammaBar => {
            let m = setup.measured().len();
            let f: Vec<String> = class.forbidden.iter().map(|&k| outcome_string(k, m)).collect();
            println!("outcomes gamma-bar forbidden {}", f.join(" "));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn target_graph(t: &Target) -> Result<(Graph, Option<LatticeSpec>, SubsystemSpec)> {
    let sub: SubsystemSpec = t.subsystem.parse()?;
    match (&t.graph, &t.lattice) {
        (Some(p), None) => Ok((read_graph(p)?.graph, None, sub)),
        (None, Some(l)) => {
            let lat: LatticeSpec = l.parse()?;
            Ok((lat.graph()?, Some(lat), sub))
        }
        _ => bail!("give exactly one of --graph or --lattice"),
    }
}

fn lgme_cmd(t: &Target, measure: MeasureArg) -> Result<ExitCode> {
    let (g, lat, sub) = target_graph(t)?;
    let (s, labellings) = match (&lat, &sub) {
        (Some(l), _) => (sub.nodes(l)?, l.labellings()),
        (None, SubsystemSpec::Nodes(v)) => (v.clone(), vec![]),
        _ => bail!("placements need --lattice"),
    };
    let m = match measure {
        MeasureArg::Schmidt => Measure::Schmidt,
        MeasureArg::Ggm => Measure::Ggm,
    };
    let r = lgme_over(&g, &s, m, &labellings)?;
    match r.value {
        Some(v) => println!("lgme {}", fmt9(v)),
        None => println!("lgme none (no connected subgraph on S)"),
    }
    println!("setups {} connected {} subgraphs {} orbits {}", r.census.setups, r.census.connected_setups, r.census.m(), r.orbits.len());
    for o in &r.orbits {
        println!(
            "orbit {:?} members {} schmidt {}..{}",
            o.id.graph().edges(),
            o.members.len(),
            o.schmidt_lower,
            o.schmidt_upper
        );
    }
    for b in &r.best {
        println!("best {}", b.setup);
    }
    Ok(ExitCode::SUCCESS)
}

/// `a:b:step`, endpoints included.
fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let v: Vec<f64> = s
        .split(':')
        .map(|t| t.trim().parse::<f64>().with_context(|| format!("bad grid value {t:?}")))
        .collect::<Result<_>>()?;
    let [a, b, step] = v[..] else { bail!("grid must be a:b:step, got {s:?}") };
    if step <= 0.0 || b < a {
        bail!("grid {s:?} is empty");
    }
    let k = ((b - a) / step + 1e-9).floor() as usize;
    Ok((0..=k).map(|i| a + i as f64 * step).collect())
}

fn noise_kind_eps(s: &str) -> Result<(ChannelKind, f64)> {
    let spec: ChannelSpec = s.parse()?;
    Ok((spec.kind, spec.eps))
}

fn sink(out: Option<PathBuf>, header: &str, rows: &[String]) -> Result<()> {
    let mut text = format!("{header}\n");
    for r in rows {
        text.push_str(r);
        text.push('\n');
    }
    match out {
        Some(p) => fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn noisy_target(t: &Target) -> Result<stabloc::localizer::NoisyProblem> {
    let Some(l) = &t.lattice else { bail!("noisy commands need --lattice") };
    let lat: LatticeSpec = l.parse()?;
    Ok(placement_problem(&lat, &t.subsystem.parse()?)?)
}

fn sweep_cmd(t: &Target, noise: &str, q_grid: &str, out: Option<PathBuf>) -> Result<ExitCode> {
    let p = noisy_target(t)?;
    let (kind, eps) = noise_kind_eps(noise)?;
    let mut rows = Vec::new();
    for q in parse_grid(q_grid)? {
        let spec = ChannelSpec::new(kind, q, eps)?;
        let (gd, margin) = noisy_lower_bound(&p, &spec)?;
        // negativity for two regions, GMC on stars, the cluster margin otherwise
        let e = match p.criterion {
            stabloc::localizer::Criterion::Negativity(_) => margin,
            _ if star_hub(&gd.basis_graph).is_some() => gd_gmc(&gd)?,
            _ => margin,
        };
        rows.push(format!("{},{}", fmt9(q), fmt9(e)));
    }
    sink(out, "q,E", &rows)?;
    Ok(ExitCode::SUCCESS)
}

fn qc_cmd(t: &Target, noise: &str, eps_grid: &str, out: Option<PathBuf>) -> Result<ExitCode> {
    let p = noisy_target(t)?;
    let (kind, _) = noise_kind_eps(noise)?;
    let eps = parse_grid(eps_grid)?;
    let rows: Vec<String>;
    if eps.len() > stabloc::localizer::noisy::fit_degree(kind) {
        let curve = qc_curve(&p, kind, &eps)?;
        rows = curve.eps.iter().zip(&curve.q_c).map(|(e, q)| format!("{},{}", fmt9(*e), fmt9(*q))).collect();
        let c: Vec<String> = curve.coeffs.iter().map(|x| fmt9(*x)).collect();
        eprintln!("fit q_c = sum a_i eps^i, a = [{}]", c.join(", "));
    } else {
        rows = eps
            .iter()
            .map(|&e| Ok(format!("{},{}", fmt9(e), fmt9(critical_noise(&p, kind, e)?))))
            .collect::<Result<_>>()?;
    }
    sink(out, "eps,q_c", &rows)?;
    Ok(ExitCode::SUCCESS)
}

fn census_cmd(lattice: &str, start: usize, sizes: &str, out: Option<PathBuf>) -> Result<ExitCode> {
    let lat: LatticeSpec = lattice.parse()?;
    if lat.kind != stabloc::localizer::LatticeKind::Ladder {
        bail!("census runs on ladder legs; got {lat}");
    }
    let [a, b] = sizes.split(':').map(|t| t.trim().parse::<usize>()).collect::<Result<Vec<_>, _>>()?[..] else {
        bail!("sizes must be a:b");
    };
    let sizes: Vec<usize> = (a..=b).collect();
    let (rows, (icpt, slope)) = leg_census(lat.dims[0], start, &sizes)?;
    let rows: Vec<String> = rows.iter().map(|(n, m)| format!("{n},{}", fmt9((*m as f64).log10()))).collect();
    sink(out, "n,log10M", &rows)?;
    eprintln!("fit log10M = {} + {} n", fmt9(icpt), fmt9(slope));
    Ok(ExitCode::SUCCESS)
}

fn check_cmd(seed: u64, graphs: usize, max_n: usize, max_measured: usize, noisy: usize, inject: bool) -> Result<ExitCode> {
    let mut ok = true;
    if inject {
        let mut g = Graph::path(3);
        g.corrupt_bit(1, 1);
        match g.validate() {
            Err(e) => {
                println!("invariant FAIL: {e} in {:?}", g.edges());
                ok = false;
            }
            Ok(()) => println!("invariant ok"),
        }
    }
    let t = Instant::now();
    let pure = pure_suite(seed, graphs, max_n, max_measured)?;
    let pure_ok = pure.failure.is_none() && pure.min_fidelity >= 1.0 - 1e-10 && pure.max_prob_err <= 1e-12;
    println!(
        "pure {} graphs {} setups {} outcomes {} min_fidelity {} max_prob_err {:e} ({:.1?})",
        if pure_ok { "PASS" } else { "FAIL" },
        pure.graphs,
        pure.setups,
        pure.outcomes,
        fmt9(pure.min_fidelity),
        pure.max_prob_err,
        t.elapsed()
    );
    if let Some(f) = &pure.failure {
        println!("  first failure: {f}");
    }
    let t = Instant::now();
    let nz = noisy_suite(seed, noisy, max_n.min(7))?;
    let noisy_ok = nz.failure.is_none() && nz.max_lambda_err <= 1e-10 && nz.max_offdiag <= 1e-10;
    println!(
        "noisy {} cases {} max_lambda_err {:e} max_offdiag {:e} ({:.1?})",
        if noisy_ok { "PASS" } else { "FAIL" },
        nz.cases,
        nz.max_lambda_err,
        nz.max_offdiag,
        t.elapsed()
    );
    if let Some(f) = &nz.failure {
        println!("  first failure: {f}");
    }
    ok &= pure_ok && noisy_ok;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

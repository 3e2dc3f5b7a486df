//! Pauli measurements on graph states through graph transformations.
//!
//! A setup is first rotated so every measured node is read out in Z
//! (`rotate_setup_to_z`), then the tagged graph is simplified by the B.1/B.2
//! moves until the measured region splits into S1 (red, touching S) and S2.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};
use crate::tags::{AttributedGraph, CliffordTag, Gate, Work};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Pauli index 1, 2 or 3.
    pub fn index(self) -> u8 {
        match self {
            Axis::X => 1,
            Axis::Y => 2,
            Axis::Z => 3,
        }
    }

    pub fn from_index(k: u8) -> Result<Axis> {
        match k {
            1 => Ok(Axis::X),
            2 => Ok(Axis::Y),
            3 => Ok(Axis::Z),
            _ => Err(Error::Parameter(format!("axis {k} not in 1..=3"))),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }
}

/// Measurement axis per node; `None` marks the unmeasured region S.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliSetup {
    axes: Vec<Option<Axis>>,
}

impl PauliSetup {
    pub fn new(n: usize, assignments: &[(usize, Axis)]) -> Result<Self> {
        let mut axes = vec![None; n];
        for &(i, a) in assignments {
            if i >= n {
                return Err(Error::NodeOutOfRange { node: i, n });
            }
            axes[i] = Some(a);
        }
        Ok(PauliSetup { axes })
    }

    pub fn from_axes(axes: Vec<Option<Axis>>) -> Self {
        PauliSetup { axes }
    }

    /// Same axis on every node outside `s`.
    pub fn uniform(n: usize, s: &[usize], axis: Axis) -> Self {
        let mut axes = vec![Some(axis); n];
        for &i in s {
            axes[i] = None;
        }
        PauliSetup { axes }
    }

    pub fn n_nodes(&self) -> usize {
        self.axes.len()
    }

    pub fn axis(&self, i: usize) -> Option<Axis> {
        self.axes[i]
    }

    pub fn axes(&self) -> &[Option<Axis>] {
        &self.axes
    }

    /// Measured nodes S′ in ascending order.
    pub fn measured(&self) -> Vec<usize> {
        (0..self.axes.len()).filter(|&i| self.axes[i].is_some()).collect()
    }

    pub fn unmeasured(&self) -> Vec<usize> {
        (0..self.axes.len()).filter(|&i| self.axes[i].is_none()).collect()
    }

    /// Axis digits over S′, e.g. `2131`.
    pub fn label(&self) -> String {
        self.axes.iter().flatten().map(|a| char::from(b'0' + a.index())).collect()
    }

    pub fn count(&self, axis: Axis) -> usize {
        self.axes.iter().filter(|a| **a == Some(axis)).count()
    }
}

impl fmt::Display for PauliSetup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pms:")?;
        for (i, a) in self.axes.iter().enumerate() {
            if let Some(a) = a {
                write!(f, " {i}:{}", a.letter())?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regions {
    pub s: Vec<usize>,
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ReductionResult {
    pub reduced: AttributedGraph,
    pub regions: Regions,
    pub setup: PauliSetup,
    pub op_count: u64,
    /// Measured nodes read out in Z in the reduced frame.
    pub z_set: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutcomeKind {
    Gamma,
    GammaBar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutcomeClassification {
    pub kind: OutcomeKind,
    /// Forbidden outcomes; bit t is the result on the t-th measured node
    /// (ascending), 0 ↔ +1 and 1 ↔ −1.
    pub forbidden: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct PostMeasurement {
    pub subgraph_on_s: Graph,
    /// Local Clifford on each S node: the state is ⊗ correction_i |G_S⟩.
    pub correction: Vec<CliffordTag>,
    pub probability: f64,
    pub forbidden: bool,
}

/// Step A: tag H on X-measured nodes and H·R on Y-measured nodes.
pub fn rotate_setup_to_z(g: &Graph, setup: &PauliSetup) -> Result<AttributedGraph> {
    Ok(rotate(g, setup)?.ag)
}

fn rotate(g: &Graph, setup: &PauliSetup) -> Result<Work> {
    if setup.n_nodes() != g.n_nodes() {
        return Err(Error::Invalid(format!(
            "setup covers {} nodes, graph has {}",
            setup.n_nodes(),
            g.n_nodes()
        )));
    }
    let mut w = Work::new(AttributedGraph::new(g.clone()));
    for (i, a) in setup.axes.iter().enumerate() {
        match a {
            Some(Axis::X) => w.gate(i, Gate::H),
            Some(Axis::Y) => {
                w.gate(i, Gate::R);
                w.gate(i, Gate::H);
            }
            _ => {}
        }
    }
    Ok(w)
}

fn white_diamonds(ag: &AttributedGraph) -> Vec<usize> {
    (0..ag.n_nodes()).filter(|&i| ag.tags[i].is_white_diamond()).collect()
}

fn white_circle_links(ag: &AttributedGraph) -> Vec<(usize, usize)> {
    ag.graph
        .edges()
        .into_iter()
        .filter(|&(i, j)| ag.tags[i].is_white_circle() && ag.tags[j].is_white_circle())
        .collect()
}

fn simplify(w: &mut Work, s: &NodeSet) -> Result<()> {
    let n = w.ag.n_nodes();
    let cap = 4 * n * n;
    let mut passes = 0;
    loop {
        let dw = white_diamonds(&w.ag);
        let lcw = white_circle_links(&w.ag);
        if dw.is_empty() && lcw.is_empty() {
            break;
        }
        passes += 1;
        if passes > cap.max(4) {
            return Err(Error::NonTermination(cap));
        }
        for i in dw {
            if w.ag.tags[i].is_white_diamond() {
                w.b1(i);
            }
        }
        for (i, j) in lcw {
            let t = &w.ag.tags;
            if w.ag.graph.has_edge(i, j) && t[i].is_white_circle() && t[j].is_white_circle() {
                w.b2(i, j);
            }
        }
    }
    // clear white circles in S′ that touch S
    let s_nodes: Vec<usize> = s.to_vec();
    for i in 0..n {
        if s.contains(i) {
            continue;
        }
        for &j in &s_nodes {
            if w.ag.graph.has_edge(i, j) && w.ag.tags[i].is_white_circle() {
                if w.ag.tags[j].diamond {
                    w.b1(j);
                    w.b1(i);
                } else {
                    w.b2(i, j);
                }
            }
        }
    }
    Ok(())
}

fn regions(ag: &AttributedGraph, setup: &PauliSetup) -> Regions {
    let s = setup.unmeasured();
    let s_set = NodeSet::from_nodes(ag.n_nodes(), &s);
    let (s1, s2) = setup
        .measured()
        .into_iter()
        .partition(|&j| ag.graph.degree_in(j, &s_set) > 0);
    Regions { s, s1, s2 }
}

/// Steps A and B for a graph and a setup.
pub fn reduce(g: &Graph, setup: &PauliSetup) -> Result<ReductionResult> {
    let w = rotate(g, setup)?;
    finish(w, setup)
}

/// Step B on an already rotated graph.
pub fn reduce_graph(ag: &AttributedGraph, setup: &PauliSetup) -> Result<ReductionResult> {
    finish(Work::new(ag.clone()), setup)
}

fn finish(mut w: Work, setup: &PauliSetup) -> Result<ReductionResult> {
    let n = w.ag.n_nodes();
    let s = NodeSet::from_nodes(n, &setup.unmeasured());
    simplify(&mut w, &s)?;
    let regions = regions(&w.ag, setup);
    let z_set = setup.measured().into_iter().filter(|&j| !w.ag.tags[j].white).collect();
    let rr = ReductionResult {
        reduced: w.ag,
        regions,
        setup: setup.clone(),
        op_count: w.ops,
        z_set,
    };
    debug_assert!(rr.check_properties().is_ok(), "{:?}", rr.check_properties());
    Ok(rr)
}

impl ReductionResult {
    /// Properties P1–P3 of the reduced graph.
    pub fn check_properties(&self) -> Result<()> {
        let t = &self.reduced.tags;
        for &j in &self.regions.s1 {
            if t[j].white {
                return Err(Error::Invalid(format!("S1 node {j} carries {}", t[j])));
            }
        }
        for &j in &self.regions.s2 {
            if t[j].is_white_diamond() {
                return Err(Error::Invalid(format!("S2 node {j} carries {}", t[j])));
            }
            if t[j].white && self.reduced.graph.neighbors(j).any(|k| t[k].white) {
                return Err(Error::Invalid(format!("white S2 node {j} has a white neighbor")));
            }
        }
        Ok(())
    }

    pub fn measured(&self) -> Vec<usize> {
        self.setup.measured()
    }

    /// Induced subgraph of the reduced graph on S; outcome independent.
    pub fn subgraph_on_s(&self) -> Graph {
        self.reduced.graph.induced(&self.regions.s)
    }

    /// White (H/HZ) nodes of S2, whose outcomes are fixed by their neighbors.
    pub fn deterministic_nodes(&self) -> Vec<usize> {
        self.regions
            .s2
            .iter()
            .copied()
            .filter(|&j| self.reduced.tags[j].white)
            .collect()
    }

    pub fn is_gamma(&self) -> bool {
        self.deterministic_nodes().is_empty()
    }

    /// Outcome bits in the reduced frame, indexed by node. Measured nodes
    /// past the 64th always read +1.
    fn frame_bits(&self, outcome: u64) -> Vec<bool> {
        let mut b = vec![false; self.reduced.n_nodes()];
        for (t, j) in self.measured().into_iter().enumerate() {
            // H·R is U† only up to a Z, which inverts Y outcomes
            b[j] = outcome_bit(outcome, t) ^ (self.setup.axis(j) == Some(Axis::Y));
        }
        b
    }

    fn allowed_with(&self, b: &[bool]) -> bool {
        self.deterministic_nodes().into_iter().all(|j| {
            let parity = self.reduced.graph.neighbors(j).fold(false, |acc, k| acc ^ b[k]);
            (b[j] ^ self.reduced.tags[j].minus) == parity
        })
    }

    pub fn is_allowed(&self, outcome: u64) -> bool {
        self.allowed_with(&self.frame_bits(outcome))
    }

    /// Z string on S induced by the Z-measured neighbors: w_i for each S node.
    pub fn z_shift(&self, outcome: u64) -> Vec<bool> {
        let b = self.frame_bits(outcome);
        self.regions
            .s
            .iter()
            .map(|&i| {
                self.regions
                    .s1
                    .iter()
                    .filter(|&&j| self.reduced.graph.has_edge(i, j))
                    .fold(false, |acc, &j| acc ^ b[j])
            })
            .collect()
    }

    /// Same as [`z_shift`](Self::z_shift) packed as a ψ index (bit a ↔ a-th S node).
    pub fn z_shift_mask(&self, outcome: u64) -> usize {
        self.z_shift(outcome)
            .iter()
            .enumerate()
            .fold(0, |m, (a, &w)| m | (usize::from(w) << a))
    }
}

pub fn measure_graph(rr: &ReductionResult, outcome: u64) -> Result<PostMeasurement> {
    let m = rr.measured().len();
    if m < 64 && outcome >> m != 0 {
        return Err(Error::OutcomeLength { got: 64 - outcome.leading_zeros() as usize, expected: m });
    }
    let allowed = rr.is_allowed(outcome);
    let free = m - rr.deterministic_nodes().len();
    let probability = if allowed { 0.5f64.powi(free as i32) } else { 0.0 };
    let w = rr.z_shift(outcome);
    let correction = rr
        .regions
        .s
        .iter()
        .zip(&w)
        .map(|(&i, &wi)| {
            let t = rr.reduced.tags[i];
            if wi {
                t.flipped_sign()
            } else {
                t
            }
        })
        .collect();
    Ok(PostMeasurement {
        subgraph_on_s: rr.subgraph_on_s(),
        correction,
        probability,
        forbidden: !allowed,
    })
}

pub const CLASSIFY_LIMIT: usize = 24;

pub fn classify_outcomes(rr: &ReductionResult) -> Result<OutcomeClassification> {
    if rr.is_gamma() {
        return Ok(OutcomeClassification { kind: OutcomeKind::Gamma, forbidden: Vec::new() });
    }
    let m = rr.measured().len();
    if m > CLASSIFY_LIMIT {
        return Err(Error::Limit { what: "outcome enumeration", got: m, limit: CLASSIFY_LIMIT });
    }
    let forbidden = (0..1u64 << m).filter(|&k| !rr.is_allowed(k)).collect();
    Ok(OutcomeClassification { kind: OutcomeKind::GammaBar, forbidden })
}

fn outcome_bit(outcome: u64, t: usize) -> bool {
    t < 64 && (outcome >> t) & 1 == 1
}

/// Formats an outcome as a `+`/`-` string over `m` measured nodes.
pub fn outcome_string(outcome: u64, m: usize) -> String {
    (0..m).map(|t| if outcome_bit(outcome, t) { '-' } else { '+' }).collect()
}

pub fn parse_outcome(s: &str) -> Result<u64> {
    s.chars().enumerate().try_fold(0u64, |acc, (t, c)| match c {
        '+' => Ok(acc),
        '-' if t < 64 => Ok(acc | 1 << t),
        '-' => Err(Error::Parameter("a '-' past the 64th measured node cannot be encoded".into())),
        _ => Err(Error::Parameter(format!("bad outcome symbol {c:?}"))),
    })
}

/// Graph after a σ¹ measurement on `j`, using the lowest-index neighbor as
/// the helper node: O_a(O_j(O_a(G))) with `j` isolated. Returns the graph and
/// the helper, or `None` as helper for an isolated node.
pub fn x_measure(g: &Graph, j: usize) -> Result<(Graph, Option<usize>)> {
    g.check_node(j)?;
    let Some(a) = g.neighbors(j).next() else {
        return Ok((g.clone(), None));
    };
    let mut h = g.local_complement(a)?;
    h = h.local_complement(j)?;
    h.isolate(j);
    h = h.local_complement(a)?;
    Ok((h, Some(a)))
}

/// Graph after a σ³ measurement on `j`.
pub fn z_measure(g: &Graph, j: usize) -> Result<Graph> {
    g.check_node(j)?;
    let mut h = g.clone();
    h.isolate(j);
    Ok(h)
}

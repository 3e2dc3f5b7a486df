//! Graph-diagonal states produced by Pauli noise followed by Pauli measurements.
//!
//! λ vectors are indexed by ψ, a bitmask over the nodes of S in ascending
//! order: bit `a` set means Z on the `a`-th node of S.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::noise::{flip_probability, Frame, PauliProbs};
use crate::orbit;
use crate::reduction::ReductionResult;
use crate::tags::CliffordTag;

pub const SUBCLASS_LIMIT: usize = 20;
pub const GD_LIMIT: usize = 24;

/// ρ = Σ_ψ λ_ψ · V Z^ψ |G⟩⟨G| Z^ψ V† with V the product of `frame` tags.
#[derive(Clone, Debug, PartialEq)]
pub struct GDState {
    pub basis_graph: Graph,
    pub frame: Vec<CliffordTag>,
    pub lambdas: Vec<f64>,
    /// Corner coherence ρ_{0…0,1…1} in the GHZ picture; star bases only.
    pub coherence: Option<f64>,
}

impl GDState {
    pub fn new(basis_graph: Graph, lambdas: Vec<f64>) -> Result<Self> {
        let n = basis_graph.n_nodes();
        if lambdas.len() != 1 << n {
            return Err(Error::Invalid(format!("{} lambdas for {n} nodes", lambdas.len())));
        }
        Ok(GDState { frame: vec![CliffordTag::I; n], basis_graph, lambdas, coherence: None })
    }

    /// The pure graph state, λ = δ_{ψ,0}.
    pub fn pure(basis_graph: Graph) -> Self {
        let n = basis_graph.n_nodes();
        let mut lambdas = vec![0.0; 1 << n];
        lambdas[0] = 1.0;
        GDState { frame: vec![CliffordTag::I; n], basis_graph, lambdas, coherence: None }
    }

    pub fn n_qubits(&self) -> usize {
        self.basis_graph.n_nodes()
    }

    pub fn total(&self) -> f64 {
        self.lambdas.iter().sum()
    }

    pub fn is_probability_vector(&self, tol: f64) -> bool {
        self.lambdas.iter().all(|&x| x >= -tol) && (self.total() - 1.0).abs() <= tol
    }

    /// λ′(ψ) = λ(ψ ⊕ shift), the state after the Z string `shift`.
    pub fn shifted(&self, shift: usize) -> GDState {
        let lambdas = (0..self.lambdas.len()).map(|psi| self.lambdas[psi ^ shift]).collect();
        GDState { lambdas, ..self.clone() }
    }

    /// Same state expressed in the basis of the locally complemented graph.
    /// The frame absorbs the local unitary and is reset to identity.
    pub fn local_complement(&self, i: usize) -> Result<GDState> {
        let g = self.basis_graph.local_complement(i)?;
        let nb: usize = self.basis_graph.neighbors(i).fold(0, |m, j| m | 1 << j);
        let mut lambdas = vec![0.0; self.lambdas.len()];
        for (psi, &l) in self.lambdas.iter().enumerate() {
            let to = if (psi >> i) & 1 == 1 { psi ^ nb } else { psi };
            lambdas[to] = l;
        }
        Ok(GDState { basis_graph: g, frame: vec![CliffordTag::I; self.n_qubits()], lambdas, coherence: None })
    }

    /// Relabels node `a` as `perm[a]`.
    pub fn relabel(&self, perm: &[usize]) -> GDState {
        let n = self.n_qubits();
        let mut g = Graph::empty(n);
        for (i, j) in self.basis_graph.edges() {
            g.set_edge(perm[i], perm[j], true);
        }
        let mut lambdas = vec![0.0; self.lambdas.len()];
        for (psi, &l) in self.lambdas.iter().enumerate() {
            let to = (0..n).filter(|&a| (psi >> a) & 1 == 1).fold(0, |m, a| m | 1 << perm[a]);
            lambdas[to] = l;
        }
        let mut frame = vec![CliffordTag::I; n];
        for a in 0..n {
            frame[perm[a]] = self.frame[a];
        }
        GDState { basis_graph: g, frame, lambdas, coherence: self.coherence }
    }

    /// Re-expresses the state in the basis of `target`, which must be
    /// LC-equivalent to the current basis graph up to isomorphism.
    pub fn to_basis(&self, target: &Graph) -> Result<GDState> {
        let (path, iso) = orbit::lc_path(&self.basis_graph, target)?
            .ok_or_else(|| Error::Basis("graphs are not LC-equivalent".into()))?;
        let mut gd = self.clone();
        for i in path {
            gd = gd.local_complement(i)?;
        }
        let out = gd.relabel(&iso);
        debug_assert_eq!(out.basis_graph, *target);
        Ok(out)
    }
}

/// Subclass of S″₁: measured nodes sharing one S-neighborhood.
#[derive(Clone, Debug, PartialEq)]
pub struct Subclass {
    /// N ∩ S as a ψ mask.
    pub mask: usize,
    pub nodes: Vec<usize>,
    /// Flip probability of each member.
    pub q_n: Vec<f64>,
}

impl Subclass {
    /// class index m = |N ∩ S|
    pub fn class(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Probability that an odd number of members flip.
    pub fn odd_probability(&self) -> f64 {
        0.5 * (1.0 - self.q_n.iter().map(|q| 1.0 - 2.0 * q).product::<f64>())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubclassPartition {
    pub n: usize,
    pub subclasses: Vec<Subclass>,
}

impl SubclassPartition {
    /// Number of subclasses in classes m ≥ 2.
    pub fn d(&self) -> usize {
        self.subclasses.iter().filter(|c| c.class() >= 2).count()
    }

    pub fn members(&self) -> usize {
        self.subclasses.iter().map(|c| c.nodes.len()).sum()
    }
}

/// Groups the S1 nodes whose outcome can be flipped by noise. `probs` holds
/// one Pauli probability vector per node of the original graph.
pub fn partition_subclasses(rr: &ReductionResult, probs: &[PauliProbs]) -> Result<SubclassPartition> {
    let s = &rr.regions.s;
    if probs.len() != rr.reduced.n_nodes() {
        return Err(Error::Invalid("one channel per node required".into()));
    }
    let mut subclasses: Vec<Subclass> = Vec::new();
    for &j in &rr.regions.s1 {
        let axis = rr.setup.axis(j).expect("S1 nodes are measured");
        let q = flip_probability(&probs[j], axis);
        if q == 0.0 {
            continue;
        }
        let mask = s
            .iter()
            .enumerate()
            .filter(|&(_, &i)| rr.reduced.graph.has_edge(i, j))
            .fold(0usize, |m, (a, _)| m | 1 << a);
        match subclasses.iter_mut().find(|c| c.mask == mask) {
            Some(c) => {
                c.nodes.push(j);
                c.q_n.push(q);
            }
            None => subclasses.push(Subclass { mask, nodes: vec![j], q_n: vec![q] }),
        }
    }
    subclasses.sort_by_key(|c| (c.class(), c.mask));
    Ok(SubclassPartition { n: s.len(), subclasses })
}

/// λ_ψ from the subclass sum: enumerate the parities of the m ≥ 2
/// subclasses, the single-node subclasses are then fixed by ψ.
pub fn mixing_probabilities(part: &SubclassPartition, psi: usize) -> Result<f64> {
    let multi: Vec<&Subclass> = part.subclasses.iter().filter(|c| c.class() >= 2).collect();
    if multi.len() > SUBCLASS_LIMIT {
        return Err(Error::Limit { what: "subclass count D", got: multi.len(), limit: SUBCLASS_LIMIT });
    }
    let mut single = vec![None; part.n];
    for c in part.subclasses.iter().filter(|c| c.class() == 1) {
        single[c.mask.trailing_zeros() as usize] = Some(c.odd_probability());
    }
    let p_multi: Vec<f64> = multi.iter().map(|c| c.odd_probability()).collect();
    let mut total = 0.0;
    for gamma in 0..1usize << multi.len() {
        let mut rest = psi;
        let mut w = 1.0;
        for (r, c) in multi.iter().enumerate() {
            if (gamma >> r) & 1 == 1 {
                rest ^= c.mask;
                w *= p_multi[r];
            } else {
                w *= 1.0 - p_multi[r];
            }
        }
        for (a, p) in single.iter().enumerate() {
            let odd = (rest >> a) & 1 == 1;
            w *= match (p, odd) {
                (Some(p), true) => *p,
                (Some(p), false) => 1.0 - p,
                (None, true) => 0.0,
                (None, false) => 1.0,
            };
        }
        total += w;
    }
    Ok(total)
}

/// In-place Walsh–Hadamard transform (unnormalized).
pub fn walsh_hadamard(v: &mut [f64]) {
    let mut h = 1;
    while h < v.len() {
        for i in (0..v.len()).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (v[j], v[j + h]);
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Walsh spectrum of the XOR of independent random masks, each given as a
/// list of (mask, probability) outcomes. A product, so zeros stay exact.
fn spectrum_of_independent(n: usize, parts: &[Vec<(usize, f64)>]) -> Vec<f64> {
    let len = 1usize << n;
    let mut spec = vec![1.0; len];
    for part in parts {
        let mut d = vec![0.0; len];
        for &(m, p) in part {
            d[m] += p;
        }
        walsh_hadamard(&mut d);
        for (s, x) in spec.iter_mut().zip(&d) {
            *s *= x;
        }
    }
    spec
}

/// Distribution of the XOR of independent random masks.
fn xor_of_independent(n: usize, parts: &[Vec<(usize, f64)>]) -> Vec<f64> {
    let mut spec = spectrum_of_independent(n, parts);
    walsh_hadamard(&mut spec);
    let len = spec.len() as f64;
    spec.iter().map(|x| (x / len).max(0.0)).collect()
}

/// All λ_ψ of the S″₁ mixing at once via the Walsh–Hadamard transform.
pub fn mixing_vector(part: &SubclassPartition) -> Vec<f64> {
    let parts: Vec<_> = part
        .subclasses
        .iter()
        .map(|c| {
            let p = c.odd_probability();
            vec![(0, 1.0 - p), (c.mask, p)]
        })
        .collect();
    xor_of_independent(part.n, &parts)
}

/// XOR convolution of two λ vectors on the same basis.
pub fn xor_compose(a: &GDState, b: &GDState) -> Result<GDState> {
    if a.lambdas.len() != b.lambdas.len() || a.basis_graph != b.basis_graph {
        return Err(Error::Invalid("xor_compose needs a common basis".into()));
    }
    let mut x = a.lambdas.clone();
    let mut y = b.lambdas.clone();
    walsh_hadamard(&mut x);
    walsh_hadamard(&mut y);
    let mut z: Vec<f64> = x.iter().zip(&y).map(|(p, q)| p * q).collect();
    walsh_hadamard(&mut z);
    let len = z.len() as f64;
    Ok(GDState { lambdas: z.iter().map(|v| (v / len).max(0.0)).collect(), ..a.clone() })
}

fn on_s_parts(basis: &Graph, probs: &[PauliProbs], frame: &[CliffordTag]) -> Vec<Vec<(usize, f64)>> {
    (0..basis.n_nodes())
        .map(|a| {
            let p = Frame::of(frame[a]).conjugate_probs(&probs[a]);
            let nb: usize = basis.neighbors(a).fold(0, |m, j| m | 1 << j);
            // X → Z on N_a, Y → Z_a Z on N_a, Z → Z_a
            vec![(0, p[0]), (nb, p[1]), (nb | 1 << a, p[2]), (1 << a, p[3])]
        })
        .collect()
}

/// λ induced by Pauli noise acting directly on ⊗V_i |G_S⟩. `probs[a]` is
/// the channel on the a-th node and `frame[a]` its tag V_a.
pub fn noise_on_s_gd(basis: &Graph, probs: &[PauliProbs], frame: &[CliffordTag]) -> Result<GDState> {
    let n = basis.n_nodes();
    if probs.len() != n || frame.len() != n {
        return Err(Error::Invalid("one channel and tag per S node required".into()));
    }
    if n > GD_LIMIT {
        return Err(Error::Limit { what: "GD qubits", got: n, limit: GD_LIMIT });
    }
    let mut gd = GDState::new(basis.clone(), xor_of_independent(n, &on_s_parts(basis, probs, frame)))?;
    gd.frame = frame.to_vec();
    Ok(gd)
}

/// Basis, frame and independent flip masks behind a noisy Γ setup.
fn noisy_parts(rr: &ReductionResult, probs: &[PauliProbs]) -> Result<(Graph, Vec<CliffordTag>, Vec<Vec<(usize, f64)>>)> {
    if !rr.is_gamma() {
        return Err(Error::NotGamma);
    }
    let s = &rr.regions.s;
    if s.len() > GD_LIMIT {
        return Err(Error::Limit { what: "GD qubits", got: s.len(), limit: GD_LIMIT });
    }
    let part = partition_subclasses(rr, probs)?;
    let basis = rr.subgraph_on_s();
    let frame: Vec<CliffordTag> = s.iter().map(|&i| rr.reduced.tags[i]).collect();
    let s_probs: Vec<PauliProbs> = s.iter().map(|&i| probs[i]).collect();
    let mut parts = on_s_parts(&basis, &s_probs, &frame);
    parts.extend(part.subclasses.iter().map(|c| {
        let p = c.odd_probability();
        vec![(0, 1.0 - p), (c.mask, p)]
    }));
    Ok((basis, frame, parts))
}

/// GD state on S for a Γ setup after independent Pauli noise on every node
/// (`probs` indexed by node of the original graph), for the given outcome.
pub fn noisy_gd_state(rr: &ReductionResult, probs: &[PauliProbs], outcome: u64) -> Result<GDState> {
    let (basis, frame, parts) = noisy_parts(rr, probs)?;
    let mut gd = GDState::new(basis, xor_of_independent(rr.regions.s.len(), &parts))?;
    gd.frame = frame;
    Ok(gd.shifted(rr.z_shift_mask(outcome)))
}

/// Walsh spectrum χ(x) = Σ_ψ λ_ψ (−1)^{x·ψ} of [`noisy_gd_state`], built as
/// a product so that it keeps full relative precision near its zeros.
pub fn noisy_gd_spectrum(rr: &ReductionResult, probs: &[PauliProbs], outcome: u64) -> Result<Vec<f64>> {
    let (_, _, parts) = noisy_parts(rr, probs)?;
    let shift = rr.z_shift_mask(outcome);
    let mut spec = spectrum_of_independent(rr.regions.s.len(), &parts);
    for (x, v) in spec.iter_mut().enumerate() {
        if (x & shift).count_ones() % 2 == 1 {
            *v = -*v;
        }
    }
    Ok(spec)
}

/// GHZ state under non-Markovian phase damping, written on the star graph
/// (hub 0) with Hadamards on the leaves.
pub fn ghz_pd_closed_form(n_qubits: usize, q: f64, eps: f64) -> Result<GDState> {
    if n_qubits < 2 {
        return Err(Error::Parameter("need at least two qubits".into()));
    }
    let f = q * (1.0 + eps * (1.0 - q / 2.0));
    let c = (1.0 - f).powi(n_qubits as i32) / 2.0;
    let mut gd = GDState::new(Graph::star(n_qubits), vec![0.0; 1 << n_qubits])?;
    gd.lambdas[0] = 0.5 + c;
    gd.lambdas[1] = 0.5 - c;
    gd.frame = (0..n_qubits).map(|i| if i == 0 { CliffordTag::I } else { CliffordTag::H }).collect();
    gd.coherence = Some(c);
    Ok(gd)
}

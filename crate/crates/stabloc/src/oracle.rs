//! Dense state-vector and density-matrix reference simulator.
//!
//! Qubit `i` is bit `i` of a basis index. Everything here is exponential in
//! the number of qubits and exists only to cross-check the graph calculus.

use nalgebra::DMatrix;
use num_complex::Complex64 as C;

use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph};
use crate::reduction::{Axis, PauliSetup};
use crate::tags::CliffordTag;

pub const ORACLE_LIMIT: usize = 12;

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);

pub type Mat2 = [[C; 2]; 2];

pub fn pauli(k: u8) -> Mat2 {
    let i = C::new(0.0, 1.0);
    match k {
        0 => [[ONE, ZERO], [ZERO, ONE]],
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -i], [i, ZERO]],
        _ => [[ONE, ZERO], [ZERO, -ONE]],
    }
}

pub fn hadamard() -> Mat2 {
    let h = C::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

pub fn phase_r() -> Mat2 {
    [[ONE, ZERO], [ZERO, C::new(0.0, 1.0)]]
}

pub fn matmul2(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

pub fn adjoint2(a: &Mat2) -> Mat2 {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

/// The unitary H^f R^s Z^sg of a tag.
pub fn tag_unitary(t: CliffordTag) -> Mat2 {
    let mut u = pauli(0);
    if t.white {
        u = matmul2(&u, &hadamard());
    }
    if t.diamond {
        u = matmul2(&u, &phase_r());
    }
    if t.minus {
        u = matmul2(&u, &pauli(3));
    }
    u
}

fn check_size(n: usize) -> Result<()> {
    if n > ORACLE_LIMIT {
        Err(Error::Limit { what: "oracle qubits", got: n, limit: ORACLE_LIMIT })
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct DenseState {
    pub n: usize,
    pub amps: Vec<C>,
}

impl DenseState {
    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn apply_1q(&mut self, q: usize, u: &Mat2) {
        let bit = 1 << q;
        for x in 0..self.amps.len() {
            if x & bit == 0 {
                let (a, b) = (self.amps[x], self.amps[x | bit]);
                self.amps[x] = u[0][0] * a + u[0][1] * b;
                self.amps[x | bit] = u[1][0] * a + u[1][1] * b;
            }
        }
    }

    pub fn apply_tags(&mut self, tags: &[CliffordTag]) {
        for (q, &t) in tags.iter().enumerate() {
            self.apply_1q(q, &tag_unitary(t));
        }
    }

    pub fn apply_z_string(&mut self, psi: usize) {
        for (x, a) in self.amps.iter_mut().enumerate() {
            if (x & psi).count_ones() % 2 == 1 {
                *a = -*a;
            }
        }
    }

    pub fn inner(&self, other: &DenseState) -> C {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// |⟨a|b⟩|² for normalized inputs.
    pub fn fidelity(&self, other: &DenseState) -> f64 {
        self.inner(other).norm_sqr() / (self.norm_sqr() * other.norm_sqr())
    }

    pub fn density(&self) -> DenseDensity {
        let d = self.amps.len();
        let m = DMatrix::from_fn(d, d, |r, c| self.amps[r] * self.amps[c].conj());
        DenseDensity { n: self.n, m }
    }
}

pub fn dense_graph_state(g: &Graph) -> Result<DenseState> {
    let n = g.n_nodes();
    check_size(n)?;
    let amp = C::new(0.5f64.powf(n as f64 / 2.0), 0.0);
    let edges = g.edges();
    let amps = (0..1usize << n)
        .map(|x| {
            let odd = edges.iter().filter(|&&(i, j)| (x >> i) & (x >> j) & 1 == 1).count() % 2;
            if odd == 1 {
                -amp
            } else {
                amp
            }
        })
        .collect();
    Ok(DenseState { n, amps })
}

/// ⊗ tags_i |G⟩.
pub fn dense_tagged_state(g: &Graph, tags: &[CliffordTag]) -> Result<DenseState> {
    let mut s = dense_graph_state(g)?;
    s.apply_tags(tags);
    Ok(s)
}

#[derive(Clone, Debug)]
pub struct DenseDensity {
    pub n: usize,
    pub m: DMatrix<C>,
}

impl DenseDensity {
    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    pub fn check(&self) -> Result<()> {
        let h = (&self.m - self.m.adjoint()).norm();
        if h > 1e-10 {
            return Err(Error::Invalid(format!("non-Hermitian density ({h:e})")));
        }
        Ok(())
    }

    /// ρ → U ρ U† on qubit q.
    pub fn apply_1q(&mut self, q: usize, u: &Mat2) {
        let d = self.m.nrows();
        let bit = 1 << q;
        for c in 0..d {
            for r in 0..d {
                if r & bit == 0 {
                    let (a, b) = (self.m[(r, c)], self.m[(r | bit, c)]);
                    self.m[(r, c)] = u[0][0] * a + u[0][1] * b;
                    self.m[(r | bit, c)] = u[1][0] * a + u[1][1] * b;
                }
            }
        }
        let ud = adjoint2(u);
        for r in 0..d {
            for c in 0..d {
                if c & bit == 0 {
                    let (a, b) = (self.m[(r, c)], self.m[(r, c | bit)]);
                    self.m[(r, c)] = a * ud[0][0] + b * ud[1][0];
                    self.m[(r, c | bit)] = a * ud[0][1] + b * ud[1][1];
                }
            }
        }
    }

    /// Pauli channel Σ_s q_s σ^s ρ σ^s on one qubit.
    pub fn apply_pauli_channel(&mut self, q: usize, probs: &[f64; 4]) {
        let mut acc = DMatrix::<C>::zeros(self.m.nrows(), self.m.ncols());
        for (s, &p) in probs.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            let mut t = self.clone();
            t.apply_1q(q, &pauli(s as u8));
            acc += t.m * C::new(p, 0.0);
        }
        self.m = acc;
    }

    pub fn partial_transpose(&self, a: &Bipartition) -> DMatrix<C> {
        let mask: usize = a.part_a().iter().fold(0, |m, i| m | 1 << i);
        let d = self.m.nrows();
        DMatrix::from_fn(d, d, |r, c| {
            let swap = (r ^ c) & mask;
            self.m[(r ^ swap, c ^ swap)]
        })
    }
}

/// Independent Pauli channels, one probability vector per qubit.
pub fn apply_channels(rho: &DenseDensity, channels: &[[f64; 4]]) -> Result<DenseDensity> {
    if channels.len() != rho.n {
        return Err(Error::Invalid("one channel per qubit required".into()));
    }
    let mut out = rho.clone();
    for (q, p) in channels.iter().enumerate() {
        let s: f64 = p.iter().sum();
        if p.iter().any(|&x| x < 0.0) || (s - 1.0).abs() > 1e-12 {
            return Err(Error::Parameter(format!("invalid Pauli probabilities {p:?}")));
        }
        if p[0] != 1.0 {
            out.apply_pauli_channel(q, p);
        }
    }
    Ok(out)
}

/// Eigenvector of σ^axis with eigenvalue (−1)^bit, as a 2-vector.
fn axis_eigvec(axis: Axis, bit: bool) -> [C; 2] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let sg = if bit { -1.0 } else { 1.0 };
    match axis {
        Axis::Z if !bit => [ONE, ZERO],
        Axis::Z => [ZERO, ONE],
        Axis::X => [C::new(s, 0.0), C::new(sg * s, 0.0)],
        Axis::Y => [C::new(s, 0.0), C::new(0.0, sg * s)],
    }
}

/// Projects the measured qubits and returns the probability and the
/// normalized state on the unmeasured qubits (in ascending order).
pub fn project_and_condition(
    rho: &DenseDensity,
    setup: &PauliSetup,
    outcome: u64,
) -> Result<(f64, DenseDensity)> {
    check_size(rho.n)?;
    let measured = setup.measured();
    let keep = setup.unmeasured();
    // ⟨m| ρ |m⟩ contracted over the measured qubits, one qubit at a time
    let mut cur = rho.m.clone();
    let mut qubits: Vec<usize> = (0..rho.n).collect();
    for (t, &j) in measured.iter().enumerate() {
        let v = axis_eigvec(setup.axis(j).unwrap(), (outcome >> t) & 1 == 1);
        let pos = qubits.iter().position(|&q| q == j).unwrap();
        let d = cur.nrows() / 2;
        let low = (1 << pos) - 1;
        let expand = |x: usize, b: usize| (x & low) | (b << pos) | ((x & !low) << 1);
        cur = DMatrix::from_fn(d, d, |r, c| {
            let mut acc = ZERO;
            for br in 0..2 {
                for bc in 0..2 {
                    acc += v[br].conj() * cur[(expand(r, br), expand(c, bc))] * v[bc];
                }
            }
            acc
        });
        qubits.remove(pos);
    }
    debug_assert_eq!(qubits, keep);
    let p = cur.trace().re;
    if p > 1e-14 {
        cur /= C::new(p, 0.0);
    }
    Ok((p.max(0.0), DenseDensity { n: keep.len(), m: cur }))
}

/// Diagonal of ρ in the basis ⊗tags · Z^ψ |G⟩ (plain graph basis for identity tags).
pub fn graph_basis_fidelities(rho: &DenseDensity, basis: &Graph, tags: &[CliffordTag]) -> Result<Vec<f64>> {
    let (diag, _) = graph_basis_matrix(rho, basis, tags)?;
    Ok(diag)
}

/// Diagonal and largest off-diagonal magnitude of ρ in a tagged graph basis.
pub fn graph_basis_matrix(rho: &DenseDensity, basis: &Graph, tags: &[CliffordTag]) -> Result<(Vec<f64>, f64)> {
    let n = basis.n_nodes();
    check_size(n)?;
    let base = dense_graph_state(basis)?;
    let vecs: Vec<DenseState> = (0..1usize << n)
        .map(|psi| {
            let mut s = base.clone();
            s.apply_z_string(psi);
            s.apply_tags(tags);
            s
        })
        .collect();
    let mat = DMatrix::from_fn(1 << n, 1 << n, |r, c| vecs[r].amps[c].conj());
    let inb = &mat * &rho.m * mat.adjoint();
    let diag = (0..1 << n).map(|k| inb[(k, k)].re).collect();
    let mut off = 0.0f64;
    for r in 0..1 << n {
        for c in 0..1 << n {
            if r != c {
                off = off.max(inb[(r, c)].norm());
            }
        }
    }
    Ok((diag, off))
}

/// Eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &DMatrix<C>) -> Vec<f64> {
    m.clone().symmetric_eigenvalues().iter().copied().collect()
}

/// (‖ρ^{T_A}‖₁ − 1)/2.
pub fn negativity(rho: &DenseDensity, p: &Bipartition) -> Result<f64> {
    rho.check()?;
    let pt = rho.partial_transpose(p);
    let tn: f64 = hermitian_eigenvalues(&pt).iter().map(|x| x.abs()).sum();
    Ok((tn - 1.0) / 2.0)
}

/// Squared Schmidt coefficients of a pure state across a bipartition.
pub fn schmidt_coefficients(state: &DenseState, a: &[usize]) -> Vec<f64> {
    let n = state.n;
    let b: Vec<usize> = (0..n).filter(|i| !a.contains(i)).collect();
    let m = DMatrix::from_fn(1 << a.len(), 1 << b.len(), |r, c| {
        let mut x = 0;
        for (k, &q) in a.iter().enumerate() {
            x |= ((r >> k) & 1) << q;
        }
        for (k, &q) in b.iter().enumerate() {
            x |= ((c >> k) & 1) << q;
        }
        state.amps[x]
    });
    m.singular_values().iter().map(|s| s * s).collect()
}

/// Generalized geometric measure 1 − max_{A:B} λ²_max of a pure state.
pub fn ggm_pure(state: &DenseState) -> Result<f64> {
    let n = state.n;
    check_size(n)?;
    if (state.norm_sqr() - 1.0).abs() > 1e-10 {
        return Err(Error::Invalid("state not normalized".into()));
    }
    let mut best = 0.0f64;
    for mask in 1..(1usize << (n - 1)) {
        let a: Vec<usize> = (0..n).filter(|&i| (mask >> i) & 1 == 1).collect();
        let top = schmidt_coefficients(state, &a).into_iter().fold(0.0, f64::max);
        best = best.max(top);
    }
    Ok(1.0 - best)
}

/// Reference ρ_S after noise and a Pauli measurement on a graph state.
pub fn noisy_post_measurement(
    g: &Graph,
    channels: &[[f64; 4]],
    setup: &PauliSetup,
    outcome: u64,
) -> Result<(f64, DenseDensity)> {
    let rho = dense_graph_state(g)?.density();
    let rho = apply_channels(&rho, channels)?;
    project_and_condition(&rho, setup, outcome)
}

//! Toric code on an N_P × N_P periodic lattice, mapped to a graph state.
//!
//! Qubits sit on edges: `h(r, c)` joins vertices (r, c) and (r, c+1),
//! `v(r, c)` joins (r, c) and (r+1, c). The code state is fixed by the
//! Z plaquettes, the X vertex stars and both Z logical loops. Picking a
//! spanning tree T, Hadamards on the cotree edges (the controls) turn it
//! into a graph state: cotree edge e is linked to the tree edges of its
//! fundamental cycle.
//!
//! The tree used here keeps every row of horizontal edges except
//! `h(r, N_P − 1)` and the column-0 verticals `v(r, 0)` for r < N_P − 1.
//! Each horizontal loop then becomes a star whose hub is its missing edge.

use crate::error::{Error, Result};
use crate::graph::{gf2_rank, Graph};
use crate::noise::{Frame, PauliProbs};
use crate::reduction::{Axis, PauliSetup};
use crate::tags::CliffordTag;

#[derive(Clone, Debug)]
pub struct ToricCode {
    pub np: usize,
    pub graph: Graph,
    pub controls: Vec<bool>,
}

impl ToricCode {
    pub fn new(np: usize) -> Result<Self> {
        if np < 2 {
            return Err(Error::Parameter("toric code needs N_P ≥ 2".into()));
        }
        let n = 2 * np * np;
        let mut tc = ToricCode { np, graph: Graph::empty(n), controls: vec![false; n] };
        for c in 0..np {
            for r in 0..np {
                let h = tc.h(r, c);
                let v = tc.v(r, c);
                tc.controls[h] = c == np - 1;
                tc.controls[v] = c != 0 || r == np - 1;
            }
        }
        for e in 0..n {
            if tc.controls[e] {
                for t in tc.fundamental_cycle(e) {
                    tc.graph.set_edge(e, t, true);
                }
            }
        }
        Ok(tc)
    }

    pub fn n_qubits(&self) -> usize {
        2 * self.np * self.np
    }

    pub fn h(&self, r: usize, c: usize) -> usize {
        (r % self.np) * self.np + c % self.np
    }

    pub fn v(&self, r: usize, c: usize) -> usize {
        self.np * self.np + (r % self.np) * self.np + c % self.np
    }

    fn endpoints(&self, e: usize) -> ((usize, usize), (usize, usize)) {
        let np = self.np;
        let k = e % (np * np);
        let (r, c) = (k / np, k % np);
        if e < np * np {
            ((r, c), (r, (c + 1) % np))
        } else {
            ((r, c), ((r + 1) % np, c))
        }
    }

    /// Tree path from vertex (r, c) to (r′, c′): along row r to column 0,
    /// down column 0, then along row r′.
    fn tree_path(&self, a: (usize, usize), b: (usize, usize)) -> Vec<usize> {
        let mut edges = Vec::new();
        let mut toggle = |e: usize| {
            if let Some(p) = edges.iter().position(|&x| x == e) {
                edges.swap_remove(p);
            } else {
                edges.push(e);
            }
        };
        for (r, c) in [a, b] {
            for k in 0..c {
                toggle(self.h(r, k));
            }
            for k in 0..r {
                toggle(self.v(k, 0));
            }
        }
        edges.sort_unstable();
        edges
    }

    /// Tree edges closing a cycle with the cotree edge `e`.
    pub fn fundamental_cycle(&self, e: usize) -> Vec<usize> {
        let (a, b) = self.endpoints(e);
        self.tree_path(a, b)
    }

    /// The horizontal loop on row `r`; its hub is the last entry.
    pub fn row_loop(&self, r: usize) -> Vec<usize> {
        (0..self.np).map(|c| self.h(r, c)).collect()
    }

    /// Graph-frame axis for a measurement of σ^axis in the code frame.
    pub fn to_graph_axis(&self, q: usize, axis: Axis) -> Axis {
        if !self.controls[q] {
            return axis;
        }
        match axis {
            Axis::X => Axis::Z,
            Axis::Z => Axis::X,
            Axis::Y => Axis::Y,
        }
    }

    /// Graph-frame channel for a code-frame channel on qubit `q`.
    pub fn to_graph_probs(&self, q: usize, probs: &PauliProbs) -> PauliProbs {
        if self.controls[q] {
            Frame::of(CliffordTag::H).conjugate_probs(probs)
        } else {
            *probs
        }
    }

    /// Code-frame setup written in the graph frame.
    pub fn setup_to_graph(&self, code_axes: &[Option<Axis>]) -> PauliSetup {
        PauliSetup::from_axes(
            code_axes.iter().enumerate().map(|(q, a)| a.map(|a| self.to_graph_axis(q, a))).collect(),
        )
    }

    /// σ¹ on the controls and σ³ elsewhere (code frame), everything off the
    /// loop measured. In the graph frame this is all-Z.
    pub fn loop_alpha_c(&self, row: usize) -> PauliSetup {
        let s = self.row_loop(row);
        let code: Vec<Option<Axis>> = (0..self.n_qubits())
            .map(|q| {
                if s.contains(&q) {
                    None
                } else if self.controls[q] {
                    Some(Axis::X)
                } else {
                    Some(Axis::Z)
                }
            })
            .collect();
        self.setup_to_graph(&code)
    }

    /// Graph-frame path between the loops on rows `ra` < `rb`: alternating
    /// controls v(r, 1) and tree edges h(r, 0).
    pub fn connecting_path(&self, ra: usize, rb: usize) -> Vec<usize> {
        let mut path = vec![self.v(ra, 1)];
        for r in ra + 1..rb {
            path.push(self.h(r, 0));
            path.push(self.v(r, 1));
        }
        path
    }

    /// Two-loop setup in the graph frame: σ² on the edge node next to the
    /// first loop, σ¹ along the rest of the path, σ³ elsewhere.
    pub fn two_loop_alpha_c(&self, ra: usize, rb: usize) -> Result<(Vec<usize>, Vec<usize>, PauliSetup)> {
        if !(ra < rb && rb < self.np) {
            return Err(Error::Parameter(format!("loop rows {ra}, {rb} invalid for N_P = {}", self.np)));
        }
        let a = self.row_loop(ra);
        let b = self.row_loop(rb);
        let path = self.connecting_path(ra, rb);
        let mut axes = vec![Some(Axis::Z); self.n_qubits()];
        for &q in a.iter().chain(&b) {
            axes[q] = None;
        }
        for (k, &q) in path.iter().enumerate() {
            axes[q] = Some(if k == 0 { Axis::Y } else { Axis::X });
        }
        Ok((a, b, PauliSetup::from_axes(axes)))
    }

    /// Code-frame stabilizer generators as (x, z) bit rows: plaquettes,
    /// vertex stars and the two Z logical loops.
    pub fn code_stabilizers(&self) -> Vec<(Vec<bool>, Vec<bool>)> {
        let n = self.n_qubits();
        let np = self.np;
        let mut out = Vec::new();
        let row = |qs: &[usize]| {
            let mut b = vec![false; n];
            for &q in qs {
                b[q] ^= true;
            }
            b
        };
        for r in 0..np {
            for c in 0..np {
                let plaq = row(&[self.h(r, c), self.h(r + 1, c), self.v(r, c), self.v(r, c + 1)]);
                out.push((vec![false; n], plaq));
                let star = row(&[self.h(r, c), self.h(r, c + np - 1), self.v(r, c), self.v(r + np - 1, c)]);
                out.push((star, vec![false; n]));
            }
        }
        out.push((vec![false; n], row(&self.row_loop(0))));
        let col: Vec<usize> = (0..np).map(|r| self.v(r, 0)).collect();
        out.push((vec![false; n], row(&col)));
        out
    }

    /// Checks, over GF(2), that the graph stabilizers conjugated by H on the
    /// controls generate the code stabilizer group (signs not compared).
    pub fn stabilizers_match(&self) -> bool {
        let n = self.n_qubits();
        if 2 * n > 64 * 4 {
            return false;
        }
        let pack = |x: &[bool], z: &[bool]| -> Vec<u64> {
            let mut w = vec![0u64; (2 * n).div_ceil(64)];
            for q in 0..n {
                if x[q] {
                    w[q / 64] |= 1 << (q % 64);
                }
                if z[q] {
                    w[(n + q) / 64] |= 1 << ((n + q) % 64);
                }
            }
            w
        };
        let mut graph_rows = Vec::new();
        for i in 0..n {
            let mut x = vec![false; n];
            let mut z = vec![false; n];
            x[i] = true;
            for j in self.graph.neighbors(i) {
                z[j] = true;
            }
            for q in 0..n {
                if self.controls[q] {
                    std::mem::swap(&mut x[q], &mut z[q]);
                }
            }
            graph_rows.push(pack(&x, &z));
        }
        let code_rows: Vec<Vec<u64>> = self.code_stabilizers().iter().map(|(x, z)| pack(x, z)).collect();
        let r_graph = rank_wide(graph_rows.clone());
        let r_code = rank_wide(code_rows.clone());
        let r_both = rank_wide(graph_rows.into_iter().chain(code_rows).collect());
        r_graph == n && r_code == n && r_both == n
    }
}

fn rank_wide(rows: Vec<Vec<u64>>) -> usize {
    if rows.first().is_some_and(|r| r.len() == 1) {
        return gf2_rank(rows.into_iter().map(|r| r[0]).collect());
    }
    let width = rows.first().map_or(0, |r| r.len());
    let mut rows = rows;
    let mut rank = 0;
    for col in 0..width * 64 {
        let (w, b) = (col / 64, col % 64);
        let Some(p) = (rank..rows.len()).find(|&k| (rows[k][w] >> b) & 1 == 1) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for k in 0..rows.len() {
            if k != rank && (rows[k][w] >> b) & 1 == 1 {
                for (x, y) in rows[k].iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

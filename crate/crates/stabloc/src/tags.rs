//! Clifford node attributes: V = H^fill · R^shape · Z^sign.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// One of the eight node tags {I, Z, H, HZ, R, RZ, HR, HRZ}.
///
/// `white` is the fill (H present), `diamond` the shape (R present) and
/// `minus` the sign (Z present).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct CliffordTag {
    pub white: bool,
    pub diamond: bool,
    pub minus: bool,
}

impl CliffordTag {
    pub const I: Self = Self::new(false, false, false);
    pub const Z: Self = Self::new(false, false, true);
    pub const H: Self = Self::new(true, false, false);
    pub const HZ: Self = Self::new(true, false, true);
    pub const R: Self = Self::new(false, true, false);
    pub const RZ: Self = Self::new(false, true, true);
    pub const HR: Self = Self::new(true, true, false);
    pub const HRZ: Self = Self::new(true, true, true);

    pub const ALL: [Self; 8] =
        [Self::I, Self::Z, Self::H, Self::HZ, Self::R, Self::RZ, Self::HR, Self::HRZ];

    pub const fn new(white: bool, diamond: bool, minus: bool) -> Self {
        CliffordTag { white, diamond, minus }
    }

    pub fn name(self) -> &'static str {
        match (self.white, self.diamond, self.minus) {
            (false, false, false) => "I",
            (false, false, true) => "Z",
            (true, false, false) => "H",
            (true, false, true) => "HZ",
            (false, true, false) => "R",
            (false, true, true) => "RZ",
            (true, true, false) => "HR",
            (true, true, true) => "HRZ",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name() == s)
    }

    pub fn is_white_circle(self) -> bool {
        self.white && !self.diamond
    }

    pub fn is_white_diamond(self) -> bool {
        self.white && self.diamond
    }

    pub fn flipped_fill(self) -> Self {
        Self { white: !self.white, ..self }
    }

    pub fn flipped_shape(self) -> Self {
        Self { diamond: !self.diamond, ..self }
    }

    pub fn flipped_sign(self) -> Self {
        Self { minus: !self.minus, ..self }
    }

    /// Right-multiplication by R: circle → diamond, diamond → circle with a
    /// sign flip (R·R = Z).
    pub fn reshaped(self) -> Self {
        if self.diamond {
            Self { diamond: false, minus: !self.minus, ..self }
        } else {
            Self { diamond: true, ..self }
        }
    }

    pub fn apply(self, op: AttributeOp) -> Self {
        match op {
            AttributeOp::FlipShape => self.flipped_shape(),
            AttributeOp::FlipFill => self.flipped_fill(),
            AttributeOp::FlipSign => self.flipped_sign(),
            AttributeOp::Reshape => self.reshaped(),
        }
    }
}

impl fmt::Display for CliffordTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AttributeOp {
    FlipShape,
    FlipFill,
    FlipSign,
    Reshape,
}

/// Single-qubit Clifford generators that act on a tagged graph from the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    Z,
    H,
    R,
}

/// A graph with a Clifford tag per node, representing ⊗V_i |G⟩ up to phase.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AttributedGraph {
    pub graph: Graph,
    pub tags: Vec<CliffordTag>,
}

impl AttributedGraph {
    pub fn new(graph: Graph) -> Self {
        let n = graph.n_nodes();
        AttributedGraph { graph, tags: vec![CliffordTag::I; n] }
    }

    pub fn with_tags(graph: Graph, tags: Vec<CliffordTag>) -> Result<Self> {
        if tags.len() != graph.n_nodes() {
            return Err(Error::Invalid(format!(
                "{} tags for {} nodes",
                tags.len(),
                graph.n_nodes()
            )));
        }
        Ok(AttributedGraph { graph, tags })
    }

    pub fn n_nodes(&self) -> usize {
        self.graph.n_nodes()
    }

    pub fn apply_attribute_op(&self, i: usize, op: AttributeOp) -> Result<Self> {
        self.graph.check_node(i)?;
        let mut out = self.clone();
        out.tags[i] = out.tags[i].apply(op);
        Ok(out)
    }

    pub fn apply_clifford_tag(&self, i: usize, u: Gate) -> Result<Self> {
        self.graph.check_node(i)?;
        let mut w = Work::new(self.clone());
        w.gate(i, u);
        Ok(w.ag)
    }
}

/// Mutable working copy used by the reduction; counts elementary operations.
pub(crate) struct Work {
    pub ag: AttributedGraph,
    pub ops: u64,
}

impl Work {
    pub fn new(ag: AttributedGraph) -> Self {
        Work { ag, ops: 0 }
    }

    pub fn lc(&mut self, i: usize) {
        self.ops += self.ag.graph.lc_in_place(i);
    }

    fn map(&mut self, i: usize, f: impl Fn(CliffordTag) -> CliffordTag) {
        self.ag.tags[i] = f(self.ag.tags[i]);
        self.ops += 1;
    }

    pub fn flip_fill(&mut self, i: usize) {
        self.map(i, CliffordTag::flipped_fill)
    }

    pub fn flip_shape(&mut self, i: usize) {
        self.map(i, CliffordTag::flipped_shape)
    }

    pub fn flip_sign(&mut self, i: usize) {
        self.map(i, CliffordTag::flipped_sign)
    }

    pub fn reshape(&mut self, i: usize) {
        self.map(i, CliffordTag::reshaped)
    }

    fn neighbors(&self, i: usize) -> Vec<usize> {
        self.ag.graph.neighbors(i).collect()
    }

    fn reshape_neighbors(&mut self, i: usize, flip_sign: bool) {
        for j in self.neighbors(i) {
            self.reshape(j);
            if flip_sign {
                self.flip_sign(j);
            }
        }
    }

    fn flip_neighbor_signs(&mut self, i: usize) {
        for j in self.neighbors(i) {
            self.flip_sign(j);
        }
    }

    /// Left-multiplies node `i` by `u` (rules A.1–A.9).
    pub fn gate(&mut self, i: usize, u: Gate) {
        let t = self.ag.tags[i];
        match u {
            Gate::H => self.flip_fill(i),
            Gate::R if !t.white => self.reshape(i),
            Gate::R => {
                if t.diamond {
                    self.flip_fill(i);
                    self.flip_shape(i);
                }
                self.lc(i);
                // white circle: A.3 (+) / A.4 (−); white diamond: A.5 (+) / A.6 (−)
                self.reshape_neighbors(i, t.minus != t.diamond);
            }
            Gate::Z if !t.white => self.flip_sign(i),
            Gate::Z => {
                if t.diamond {
                    self.flip_sign(i);
                }
                self.flip_neighbor_signs(i);
            }
        }
    }

    /// B.1 on a diamond node.
    pub fn b1(&mut self, i: usize) {
        debug_assert!(self.ag.tags[i].diamond);
        self.flip_fill(i);
        self.lc(i);
        self.reshape_neighbors(i, false);
        self.flip_sign(i);
        if self.ag.tags[i].minus {
            self.flip_neighbor_signs(i);
        }
    }

    /// B.2 on an edge joining two circle nodes.
    pub fn b2(&mut self, i: usize, j: usize) {
        debug_assert!(!self.ag.tags[i].diamond && !self.ag.tags[j].diamond);
        debug_assert!(self.ag.graph.has_edge(i, j));
        self.flip_fill(i);
        self.flip_fill(j);
        self.lc(i);
        self.lc(j);
        self.lc(i);
        let g = &self.ag.graph;
        let common: Vec<usize> = (0..g.n_nodes())
            .filter(|&k| g.has_edge(i, k) && g.has_edge(j, k))
            .collect();
        for k in common {
            self.flip_sign(k);
        }
        // both signs are read before either correction is applied
        let minus: Vec<usize> = [i, j].into_iter().filter(|&x| self.ag.tags[x].minus).collect();
        for x in minus {
            self.flip_sign(x);
            self.flip_neighbor_signs(x);
        }
    }
}

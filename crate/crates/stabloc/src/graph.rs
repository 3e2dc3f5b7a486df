//! Simple undirected graphs stored as GF(2) adjacency bit-rows.

use crate::error::{Error, Result};

const W: usize = 64;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(W).max(1)
}

/// A set of node indices packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet {
    words: Vec<u64>,
}

impl NodeSet {
    pub fn empty(n: usize) -> Self {
        NodeSet { words: vec![0; words_for(n)] }
    }

    pub fn from_nodes(n: usize, nodes: &[usize]) -> Self {
        let mut s = Self::empty(n);
        for &i in nodes {
            s.insert(i);
        }
        s
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words
            .get(i / W)
            .is_some_and(|w| (w >> (i % W)) & 1 == 1)
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / W] |= 1 << (i % W);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / W] &= !(1 << (i % W));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        iter_bits(&self.words)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn intersect(&self, other: &NodeSet) -> NodeSet {
        NodeSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn complement(&self, n: usize) -> NodeSet {
        let mut s = NodeSet::full(n);
        for (w, x) in s.words.iter_mut().zip(&self.words) {
            *w &= !x;
        }
        s
    }
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(k, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(k * W + t)
        })
    })
}

/// Undirected simple graph. Row `i` of the adjacency matrix is the
/// neighborhood of node `i` as a bitset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Graph { n, words, bits: vec![0; n * words] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(i, j) in edges {
            g.check_node(i)?;
            g.check_node(j)?;
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            g.set_edge(i, j, true);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &e).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        let mut e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n > 2 {
            e.push((n - 1, 0));
        }
        Self::from_edges(n, &e).unwrap()
    }

    /// Star with hub 0.
    pub fn star(n: usize) -> Self {
        let e: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Self::from_edges(n, &e).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.set_edge(i, j, true);
            }
        }
        g
    }

    /// Builds a graph from a packed upper-triangle code (see [`Graph::code`]).
    pub fn from_code(n: usize, code: u64) -> Self {
        let mut g = Self::empty(n);
        let mut b = 0;
        for i in 0..n {
            for j in i + 1..n {
                if (code >> b) & 1 == 1 {
                    g.set_edge(i, j, true);
                }
                b += 1;
            }
        }
        g
    }

    /// Upper-triangle adjacency packed row by row. Only valid for n ≤ 11.
    pub fn code(&self) -> u64 {
        debug_assert!(self.n <= 11);
        let mut code = 0u64;
        let mut b = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    code |= 1 << b;
                }
                b += 1;
            }
        }
        code
    }

    #[inline]
    pub fn n_nodes(&self) -> usize {
        self.n
    }

    pub(crate) fn check_node(&self, i: usize) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node: i, n: self.n })
        }
    }

    #[inline]
    pub(crate) fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        (self.bits[i * self.words + j / W] >> (j % W)) & 1 == 1
    }

    #[inline]
    fn put(&mut self, i: usize, j: usize, on: bool) {
        let w = &mut self.bits[i * self.words + j / W];
        if on {
            *w |= 1 << (j % W);
        } else {
            *w &= !(1 << (j % W));
        }
    }

    pub fn set_edge(&mut self, i: usize, j: usize, on: bool) {
        self.put(i, j, on);
        self.put(j, i, on);
    }

    pub fn toggle_edge(&mut self, i: usize, j: usize) {
        let on = !self.has_edge(i, j);
        self.set_edge(i, j, on);
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(i))
    }

    pub fn neighbor_set(&self, i: usize) -> NodeSet {
        NodeSet { words: self.row(i).to_vec() }
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn n_edges(&self) -> usize {
        (0..self.n).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in self.neighbors(i) {
                if j > i {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Number of neighbors of `i` inside `set`.
    pub fn degree_in(&self, i: usize, set: &NodeSet) -> usize {
        self.row(i)
            .iter()
            .zip(set.words())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// In-place local complementation; returns the number of toggled edges.
    pub(crate) fn lc_in_place(&mut self, i: usize) -> u64 {
        let nb: Vec<u64> = self.row(i).to_vec();
        let mut deg = 0u64;
        for j in iter_bits(&nb) {
            deg += 1;
            let base = j * self.words;
            for (k, w) in nb.iter().enumerate() {
                self.bits[base + k] ^= w;
            }
            self.put(j, j, false);
        }
        deg * deg.saturating_sub(1) / 2
    }

    pub fn local_complement(&self, i: usize) -> Result<Graph> {
        self.check_node(i)?;
        let mut g = self.clone();
        g.lc_in_place(i);
        Ok(g)
    }

    pub fn local_complement_edge(&self, i: usize, j: usize) -> Result<Graph> {
        self.check_node(i)?;
        self.check_node(j)?;
        if !self.has_edge(i, j) {
            return Err(Error::MissingEdge(i, j));
        }
        let mut g = self.clone();
        g.lc_in_place(i);
        g.lc_in_place(j);
        g.lc_in_place(i);
        Ok(g)
    }

    /// Removes every edge touching `j` (the effect of a Z measurement).
    pub fn isolate(&mut self, j: usize) {
        let nb: Vec<usize> = self.neighbors(j).collect();
        for k in nb {
            self.set_edge(j, k, false);
        }
    }

    /// Induced subgraph, nodes relabelled in the given order.
    pub fn induced(&self, nodes: &[usize]) -> Graph {
        let mut g = Graph::empty(nodes.len());
        for (a, &i) in nodes.iter().enumerate() {
            for (b, &j) in nodes.iter().enumerate().skip(a + 1) {
                if self.has_edge(i, j) {
                    g.set_edge(a, b, true);
                }
            }
        }
        g
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = NodeSet::empty(self.n);
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            let mut comp = vec![s];
            let mut k = 0;
            while k < comp.len() {
                let v = comp[k];
                k += 1;
                for u in self.neighbors(v) {
                    if !seen.contains(u) {
                        seen.insert(u);
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    /// Verifies symmetry and the empty diagonal.
    pub fn validate(&self) -> Result<()> {
        for i in 0..self.n {
            if self.has_edge(i, i) {
                return Err(Error::SelfLoop(i));
            }
            for j in self.neighbors(i) {
                if j >= self.n {
                    return Err(Error::NodeOutOfRange { node: j, n: self.n });
                }
                if !self.has_edge(j, i) {
                    return Err(Error::Asymmetric(i, j));
                }
            }
        }
        Ok(())
    }

    /// Sets a raw adjacency bit without keeping symmetry. Only for exercising
    /// [`Graph::validate`] on corrupted input.
    pub fn corrupt_bit(&mut self, i: usize, j: usize) {
        self.put(i, j, true);
    }

    /// Adjacency rows as `u64` masks; requires n ≤ 64.
    pub(crate) fn rows64(&self) -> Vec<u64> {
        assert!(self.n <= 64);
        (0..self.n).map(|i| self.row(i)[0]).collect()
    }
}

/// Part A of a bipartition; part B is the complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    n: usize,
    mask: NodeSet,
}

impl Bipartition {
    pub fn new(n: usize, part_a: &[usize]) -> Result<Self> {
        let mask = NodeSet::from_nodes(n, part_a);
        let a = mask.len();
        if a == 0 || a >= n || part_a.iter().any(|&i| i >= n) {
            return Err(Error::BadBipartition);
        }
        Ok(Bipartition { n, mask })
    }

    pub fn part_a(&self) -> &NodeSet {
        &self.mask
    }

    pub fn complement(&self) -> Bipartition {
        Bipartition { n: self.n, mask: self.mask.complement(self.n) }
    }
}

/// Rank over GF(2) of `rows`, each row a bitmask.
pub fn gf2_rank(mut rows: Vec<u64>) -> usize {
    let mut rank = 0;
    while let Some(p) = (rank..rows.len()).find(|&k| rows[k] != 0) {
        rows.swap(rank, p);
        let pivot = rows[rank];
        let low = pivot & pivot.wrapping_neg();
        for r in rows.iter_mut().skip(rank + 1) {
            if *r & low != 0 {
                *r ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of the off-diagonal block Γ_AB.
pub fn gf2_rank_offdiagonal(g: &Graph, p: &Bipartition) -> Result<usize> {
    if p.n != g.n_nodes() {
        return Err(Error::BadBipartition);
    }
    let a: Vec<usize> = p.mask.iter().collect();
    let rows: Vec<Vec<u64>> = (0..g.n)
        .filter(|i| !p.mask.contains(*i))
        .map(|i| {
            let mut r = vec![0u64; words_for(a.len())];
            for (c, &j) in a.iter().enumerate() {
                if g.has_edge(i, j) {
                    r[c / W] |= 1 << (c % W);
                }
            }
            r
        })
        .collect();
    Ok(gf2_rank_wide(rows))
}

fn gf2_rank_wide(mut rows: Vec<Vec<u64>>) -> usize {
    if rows.first().is_some_and(|r| r.len() == 1) {
        return gf2_rank(rows.into_iter().map(|r| r[0]).collect());
    }
    let cols = rows.first().map_or(0, |r| r.len() * W);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&k| (rows[k][c / W] >> (c % W)) & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for k in 0..rows.len() {
            if k != rank && (rows[k][c / W] >> (c % W)) & 1 == 1 {
                for (x, y) in rows[k].iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Erdős–Rényi graph conditioned on connectivity (rejection sampling).
pub fn random_connected<R: rand::Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    loop {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    g.set_edge(i, j, true);
                }
            }
        }
        if g.is_connected() {
            return g;
        }
    }
}

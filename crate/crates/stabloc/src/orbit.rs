//! Canonical labelling of small graphs and local-complementation orbits.

use std::collections::{BTreeSet, VecDeque};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const ORBIT_LIMIT: usize = 8;

/// Isomorphism class representative: the lexicographically smallest packed
/// upper triangle over all relabellings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Canonical {
    pub n: usize,
    pub code: u64,
}

impl Canonical {
    pub fn graph(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        let mut b = 0;
        for a in 0..self.n {
            for c in a + 1..self.n {
                b += 1;
                if (self.code >> (63 - b)) & 1 == 1 {
                    g.set_edge(a, c, true);
                }
            }
        }
        g
    }
}

fn permutations(n: usize) -> &'static [Vec<u8>] {
    static CACHE: [OnceLock<Vec<Vec<u8>>>; ORBIT_LIMIT + 1] = [const { OnceLock::new() }; ORBIT_LIMIT + 1];
    CACHE[n].get_or_init(|| {
        let mut out = Vec::new();
        let mut p: Vec<u8> = (0..n as u8).collect();
        heap(n, &mut p, &mut out);
        out
    })
}

fn heap(k: usize, p: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k - 1 {
        heap(k - 1, p, out);
        if k % 2 == 0 {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
    heap(k - 1, p, out);
}

pub fn canonical_form(g: &Graph) -> Result<Canonical> {
    let n = g.n_nodes();
    if n > ORBIT_LIMIT {
        return Err(Error::Limit { what: "canonical form", got: n, limit: ORBIT_LIMIT });
    }
    let adj: Vec<u64> = g.rows64();
    let mut best = u64::MAX;
    for p in permutations(n) {
        // p maps new label -> old label; bits are filled most significant first
        // so the comparison is lexicographic in reading order
        let mut code = 0u64;
        let mut b = 0;
        for a in 0..n {
            let row = adj[p[a] as usize];
            for c in a + 1..n {
                b += 1;
                if (row >> p[c]) & 1 == 1 {
                    code |= 1 << (63 - b);
                }
                if code > best {
                    break;
                }
            }
            if code > best {
                break;
            }
        }
        best = best.min(code);
    }
    Ok(Canonical { n, code: best })
}

/// All isomorphism classes reachable from `g` by local complementation.
pub fn lc_orbit(g: &Graph) -> Result<BTreeSet<Canonical>> {
    let start = canonical_form(g)?;
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([g.clone()]);
    while let Some(h) = queue.pop_front() {
        for i in 0..h.n_nodes() {
            let next = h.local_complement(i)?;
            if seen.insert(canonical_form(&next)?) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

/// A sequence of local complementations mapping `from` onto a graph that is
/// isomorphic to `to`, together with the isomorphism (result node → `to`
/// node). `None` if the two are not LC-equivalent.
pub fn lc_path(from: &Graph, to: &Graph) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let n = from.n_nodes();
    if n != to.n_nodes() {
        return Ok(None);
    }
    let target = canonical_form(to)?;
    let mut seen = BTreeSet::from([from.clone().edges()]);
    let mut queue = VecDeque::from([(from.clone(), Vec::new())]);
    while let Some((h, path)) = queue.pop_front() {
        if canonical_form(&h)? == target {
            let iso = isomorphism(&h, to).expect("same canonical form");
            return Ok(Some((path, iso)));
        }
        for i in 0..n {
            let next = h.local_complement(i)?;
            if seen.insert(next.edges()) {
                let mut p = path.clone();
                p.push(i);
                queue.push_back((next, p));
            }
        }
    }
    Ok(None)
}

/// Some permutation `p` with edge (i,j) in `a` iff (p[i],p[j]) in `b`.
pub fn isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    let n = a.n_nodes();
    if n != b.n_nodes() || n > ORBIT_LIMIT {
        return None;
    }
    permutations(n).iter().find_map(|p| {
        let ok = (0..n).all(|i| {
            (i + 1..n).all(|j| a.has_edge(i, j) == b.has_edge(p[i] as usize, p[j] as usize))
        });
        ok.then(|| p.iter().map(|&x| x as usize).collect())
    })
}

//! Exact minimum vertex cover for small graphs.

use crate::graph::Graph;

/// A minimum vertex cover, by branch and bound with degree-0/1 reductions.
/// Intended for graphs of up to a few dozen nodes.
pub fn min_vertex_cover(g: &Graph) -> Vec<usize> {
    let adj = g.rows64();
    let alive = (0..adj.len()).fold(0u64, |m, i| m | 1 << i);
    let mut best = alive;
    search(&adj, alive, 0, &mut best);
    (0..adj.len()).filter(|&i| (best >> i) & 1 == 1).collect()
}

fn search(adj: &[u64], mut alive: u64, mut cover: u64, best: &mut u64) {
    // reductions: drop isolated nodes, take the neighbor of a pendant node
    loop {
        let mut changed = false;
        let mut rest = alive;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (alive >> v) & 1 == 0 {
                continue;
            }
            let nb = adj[v] & alive;
            match nb.count_ones() {
                0 => {
                    alive &= !(1 << v);
                    changed = true;
                }
                1 => {
                    let u = nb.trailing_zeros() as usize;
                    cover |= 1 << u;
                    alive &= !(1 << u) & !(1 << v);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    let size = cover.count_ones();
    if size >= best.count_ones() {
        return;
    }
    if alive == 0 {
        *best = cover;
        return;
    }
    // every remaining edge needs a distinct endpoint: a matching bound
    let mut matched = 0u32;
    let mut free = alive;
    while free != 0 {
        let v = free.trailing_zeros() as usize;
        free &= !(1 << v);
        let nb = adj[v] & free;
        if nb != 0 {
            free &= !(1 << nb.trailing_zeros());
            matched += 1;
        }
    }
    if size + matched >= best.count_ones() {
        return;
    }
    // branch on a maximum-degree node: take it, or take all its neighbors
    let v = (0..adj.len())
        .filter(|&i| (alive >> i) & 1 == 1)
        .max_by_key(|&i| (adj[i] & alive).count_ones())
        .unwrap();
    let nb = adj[v] & alive;
    search(adj, alive & !(1 << v), cover | 1 << v, best);
    search(adj, alive & !(1 << v) & !nb, cover | nb, best);
}

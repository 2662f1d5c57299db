use super::Graph;
use crate::error::Result;

/// Exact chromatic number by DSATUR-ordered backtracking, trying
/// `k = omega, omega+1, ...` until a proper `k`-colouring exists.
pub fn chromatic_number(g: &Graph, bound: usize) -> Result<usize> {
    g.check_bound(bound, "graph")?;
    let n = g.n();
    if n == 0 {
        return Ok(0);
    }
    let adj: Vec<u64> = (0..n).map(|v| g.mask(v)).collect();
    let lower = super::clique_number(g, bound)?;
    for k in lower..=n {
        let mut classes = vec![0u64; k];
        if colour(&adj, &mut classes, 0, super::full_mask(n)) {
            return Ok(k);
        }
    }
    Ok(n)
}

fn colour(adj: &[u64], classes: &mut [u64], used: usize, uncoloured: u64) -> bool {
    if uncoloured == 0 {
        return true;
    }
    // most saturated vertex, ties broken by uncoloured degree
    let mut best = usize::MAX;
    let mut best_key = (0u32, 0u32);
    let mut rest = uncoloured;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let sat = classes[..used].iter().filter(|&&c| adj[v] & c != 0).count() as u32;
        let deg = (adj[v] & uncoloured).count_ones();
        if best == usize::MAX || (sat, deg) > best_key {
            best = v;
            best_key = (sat, deg);
        }
    }
    let v = best;
    let bit = 1u64 << v;
    // colours beyond `used` are interchangeable, so only the first fresh one is tried
    let limit = (used + 1).min(classes.len());
    for c in 0..limit {
        if adj[v] & classes[c] == 0 {
            classes[c] |= bit;
            if colour(adj, classes, used.max(c + 1), uncoloured & !bit) {
                return true;
            }
            classes[c] &= !bit;
        }
    }
    false
}

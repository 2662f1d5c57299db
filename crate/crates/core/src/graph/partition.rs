use super::{full_mask, Graph};
use crate::error::Result;

/// Size of a largest clique.
pub fn clique_number(g: &Graph, bound: usize) -> Result<usize> {
    g.check_bound(bound, "graph")?;
    let adj: Vec<u64> = (0..g.n()).map(|v| g.mask(v)).collect();
    let mut best = 0;
    max_clique(&adj, 0, full_mask(g.n()), &mut best);
    Ok(best)
}

/// Size of a largest independent set.
pub fn independence_number(g: &Graph, bound: usize) -> Result<usize> {
    clique_number(&g.complement(), bound)
}

fn max_clique(adj: &[u64], size: usize, mut cand: u64, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    while cand != 0 {
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        max_clique(adj, size + 1, cand & adj[v], best);
    }
    *best = (*best).max(size);
}

/// Whether `V(g)` splits into at most `r` independent sets and at most `s`
/// cliques, i.e. whether `g` embeds into the all-gray CRG `K(r, s)`.
pub fn partitionable(g: &Graph, r: usize, s: usize, bound: usize) -> Result<bool> {
    g.check_bound(bound, "graph")?;
    let n = g.n();
    if n == 0 {
        return Ok(true);
    }
    if r + s == 0 {
        return Ok(false);
    }
    // r, s beyond n only add empty parts
    let (r, s) = (r.min(n), s.min(n));
    let alpha = independence_number(g, bound)?;
    let omega = clique_number(g, bound)?;
    if r * alpha + s * omega < n {
        return Ok(false);
    }
    let mut search = PartitionSearch {
        n,
        adj: (0..n).map(|v| g.mask(v)).collect(),
        indep_nbrs: vec![0; r],
        indep_used: 0,
        clique_common: vec![0; s],
        clique_used: 0,
    };
    Ok(search.place(0))
}

/// Backtracking state. Parts of one kind are interchangeable, so a vertex may
/// only open the first empty part of each kind; this keeps non-empty parts a
/// prefix and forces vertex 0 into part 0 of whichever kind it joins.
struct PartitionSearch {
    n: usize,
    adj: Vec<u64>,
    /// Union of neighbourhoods of each independent part's members.
    indep_nbrs: Vec<u64>,
    indep_used: usize,
    /// Common neighbourhood of each clique part's members.
    clique_common: Vec<u64>,
    clique_used: usize,
}

impl PartitionSearch {
    fn place(&mut self, v: usize) -> bool {
        if v == self.n {
            return true;
        }
        if !self.all_placeable(v) {
            return false;
        }
        let bit = 1u64 << v;
        let r = self.indep_nbrs.len();
        let s = self.clique_common.len();

        for i in 0..(self.indep_used + 1).min(r) {
            let fresh = i == self.indep_used;
            if !fresh && self.indep_nbrs[i] & bit != 0 {
                continue;
            }
            let saved = self.indep_nbrs[i];
            self.indep_nbrs[i] |= self.adj[v];
            if fresh {
                self.indep_used += 1;
            }
            if self.place(v + 1) {
                return true;
            }
            if fresh {
                self.indep_used -= 1;
            }
            self.indep_nbrs[i] = saved;
        }

        for j in 0..(self.clique_used + 1).min(s) {
            let fresh = j == self.clique_used;
            if !fresh && self.clique_common[j] & bit == 0 {
                continue;
            }
            let saved = self.clique_common[j];
            self.clique_common[j] = if fresh {
                self.adj[v]
            } else {
                saved & self.adj[v]
            };
            if fresh {
                self.clique_used += 1;
            }
            if self.place(v + 1) {
                return true;
            }
            if fresh {
                self.clique_used -= 1;
            }
            self.clique_common[j] = saved;
        }
        false
    }

    /// Forward check: every vertex from `v` on still has some part to join.
    fn all_placeable(&self, v: usize) -> bool {
        if self.indep_used < self.indep_nbrs.len() || self.clique_used < self.clique_common.len() {
            return true;
        }
        let remaining = full_mask(self.n) & !((1u64 << v) - 1);
        let mut ok = 0u64;
        for &nb in &self.indep_nbrs[..self.indep_used] {
            ok |= !nb;
        }
        for &c in &self.clique_common[..self.clique_used] {
            ok |= c;
        }
        remaining & !ok == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{power_cycle, PowerCycleParams, DEFAULT_EXACT_BOUND as B};

    /// Independent oracle: try every assignment of vertices to `r + s`
    /// labelled parts.
    fn brute_partitionable(g: &Graph, r: usize, s: usize) -> bool {
        let n = g.n();
        let k = r + s;
        if n == 0 {
            return true;
        }
        if k == 0 {
            return false;
        }
        let total = (k as u64).pow(n as u32);
        'outer: for code in 0..total {
            let mut c = code;
            let mut parts = vec![Vec::new(); k];
            for v in 0..n {
                parts[(c % k as u64) as usize].push(v);
                c /= k as u64;
            }
            for (idx, part) in parts.iter().enumerate() {
                let ok = if idx < r {
                    g.is_independent(part)
                } else {
                    g.is_clique(part)
                };
                if !ok {
                    continue 'outer;
                }
            }
            return true;
        }
        false
    }

    #[test]
    fn c5_examples() {
        let c5 = power_cycle(5, 1).unwrap();
        assert!(!partitionable(&c5, 1, 1, B).unwrap());
        assert!(partitionable(&c5, 1, 2, B).unwrap());
        assert!(!brute_partitionable(&c5, 1, 1));
        assert!(brute_partitionable(&c5, 1, 2));
    }

    #[test]
    fn singletons_always_work() {
        for h in 3..12 {
            let g = power_cycle(h, 2).unwrap();
            assert!(partitionable(&g, h, 0, B).unwrap());
        }
        assert!(partitionable(&Graph::empty(0), 0, 0, B).unwrap());
        assert!(!partitionable(&Graph::empty(1), 0, 0, B).unwrap());
    }

    #[test]
    fn agrees_with_brute_force_on_small_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(1..=7);
            let mut g = Graph::empty(n);
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(i, j);
                    }
                }
            }
            for r in 0..=3 {
                for s in 0..=3 {
                    if (r + s) as u32 > 0 && ((r + s) as u64).pow(n as u32) > 200_000 {
                        continue;
                    }
                    assert_eq!(
                        partitionable(&g, r, s, B).unwrap(),
                        brute_partitionable(&g, r, s),
                        "{:?} r={r} s={s}",
                        g.edges()
                    );
                }
            }
        }
    }

    #[test]
    fn clique_and_independence_numbers() {
        let g = power_cycle(13, 2).unwrap();
        assert_eq!(clique_number(&g, B).unwrap(), 3);
        assert_eq!(independence_number(&g, B).unwrap(), 4);
        assert_eq!(clique_number(&Graph::empty(0), B).unwrap(), 0);
    }

    #[test]
    fn spectrum_boundary_both_directions() {
        for t in 1..=2 {
            for h in (t * (t + 1)).max(4)..=14 {
                let params = PowerCycleParams::new(h, t).unwrap();
                let g = params.graph();
                for a in 0..=t {
                    let l = params.ell(a);
                    assert!(
                        !partitionable(&g, a, l - 1, B).unwrap(),
                        "h={h} t={t} a={a}"
                    );
                    assert!(partitionable(&g, a, l, B).unwrap(), "h={h} t={t} a={a}");
                }
            }
        }
    }
}

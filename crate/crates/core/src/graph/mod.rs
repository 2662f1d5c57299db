//! Simple undirected graphs, powers of cycles, and the exact exponential-time
//! searches used as ground truth.

mod coloring;
mod partition;
mod witness;

pub use coloring::chromatic_number;
pub use partition::{clique_number, independence_number, partitionable};
pub use witness::{spectrum_partition_witness, CliquePartition};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{ceil_div, floor_div, q, Q};

/// Largest graph the exact searches accept unless overridden.
pub const DEFAULT_EXACT_BOUND: usize = 24;

/// Hard ceiling for any bitmask search.
pub(crate) const MASK_BITS: usize = 64;

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Simple graph on vertices `0..n`, stored as dense adjacency bit rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(i, j) in edges {
            if i == j {
                return Err(Error::Parse(format!("self-loop at vertex {i}")));
            }
            if i >= n || j >= n {
                return Err(Error::Parse(format!(
                    "edge ({i},{j}) out of range for n = {n}"
                )));
            }
            g.add_edge(i, j);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        assert!(i != j && i < self.n && j < self.n, "bad edge ({i},{j})");
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
        self.bits[j * self.words + i / 64] |= 1 << (i % 64);
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.bits[v * self.words..(v + 1) * self.words]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.has_edge(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Neighbourhood as a single word. Only valid for `n <= 64`.
    pub(crate) fn mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= MASK_BITS);
        self.bits[v * self.words]
    }

    pub(crate) fn check_bound(&self, bound: usize, what: &'static str) -> Result<()> {
        if self.n > bound.min(MASK_BITS) {
            return Err(Error::SizeExceeded {
                what,
                size: self.n,
                bound: bound.min(MASK_BITS),
            });
        }
        Ok(())
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(k, &i)| set[k + 1..].iter().all(|&j| !self.has_edge(i, j)))
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(k, &i)| set[k + 1..].iter().all(|&j| i != j && self.has_edge(i, j)))
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        let edges: Vec<_> = json.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(json.n, &edges)
    }
}

/// Wire format: `{"n": 5, "edges": [[0,1], ...]}` with `i < j`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

/// The `t`-th power of the `h`-cycle: `i ~ j` iff their cyclic distance is at most `t`.
pub fn power_cycle(h: usize, t: usize) -> Result<Graph> {
    if h < 3 || t < 1 {
        return Err(Error::Domain(format!(
            "power_cycle needs h >= 3 and t >= 1, got h = {h}, t = {t}"
        )));
    }
    let mut g = Graph::empty(h);
    for i in 0..h {
        for j in i + 1..h {
            let d = j - i;
            if d.min(h - d) <= t {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// Derived quantities of `C_h^t`, computed once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerCycleParams {
    pub h: usize,
    pub t: usize,
    /// `ell[a] = ceil(h / (t + a + 1))` for `a = 0..=t`.
    pub ell: Vec<usize>,
    /// `1 / ell[t]`.
    pub p0: Q,
    pub chi: usize,
    /// `floor(h / t)`.
    pub big_l: usize,
}

impl PowerCycleParams {
    pub fn new(h: usize, t: usize) -> Result<Self> {
        if h < 3 || t < 1 {
            return Err(Error::Domain(format!(
                "C_h^t needs h >= 3 and t >= 1, got h = {h}, t = {t}"
            )));
        }
        let (hi, ti) = (h as i64, t as i64);
        let ell: Vec<usize> = (0..=ti)
            .map(|a| ceil_div(hi, ti + a + 1) as usize)
            .collect();
        let p0 = q(1, ell[t] as i64);
        Ok(PowerCycleParams {
            h,
            t,
            p0,
            chi: chromatic_formula(h, t),
            big_l: floor_div(hi, ti) as usize,
            ell,
        })
    }

    pub fn ell(&self, a: usize) -> usize {
        self.ell[a]
    }

    pub fn divisible(&self) -> bool {
        self.h.is_multiple_of(self.t + 1)
    }

    pub fn graph(&self) -> Graph {
        power_cycle(self.h, self.t).expect("params validated")
    }
}

/// `chi(C_h^t) = t + ceil(r/q) + 1` with `h = q(t+1) + r`; `h` itself when
/// `h <= t` (the graph is complete).
pub fn chromatic_formula(h: usize, t: usize) -> usize {
    if h <= t {
        return h;
    }
    let qq = h / (t + 1);
    let r = h % (t + 1);
    t + r.div_ceil(qq) + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c5_is_the_cycle() {
        let g = power_cycle(5, 1).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert!((0..5).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn c8_cubed_is_cocktail_party() {
        let g = power_cycle(8, 3).unwrap();
        assert!((0..8).all(|v| g.degree(v) == 6));
        // the only non-edges are antipodal pairs
        for i in 0..8 {
            for j in i + 1..8 {
                assert_eq!(g.has_edge(i, j), j - i != 4);
            }
        }
    }

    #[test]
    fn small_h_gives_complete_graph() {
        for t in 1..5 {
            for h in 3..=2 * t + 1 {
                assert_eq!(power_cycle(h, t).unwrap(), Graph::complete(h));
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(power_cycle(2, 1), Err(Error::Domain(_))));
        assert!(matches!(power_cycle(5, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn degrees_are_uniform() {
        for h in 3..30 {
            for t in 1..6 {
                let g = power_cycle(h, t).unwrap();
                assert!((0..h).all(|v| g.degree(v) == (2 * t).min(h - 1)));
            }
        }
    }

    #[test]
    fn params_invariants() {
        for t in 1..=8 {
            for h in 3..200 {
                let p = PowerCycleParams::new(h, t).unwrap();
                assert!(p.ell.windows(2).all(|w| w[0] >= w[1]));
                assert!(p.ell[t] >= 1);
                if h >= (t * (t + 1)).max(3) {
                    let expect = if h % (t + 1) == 0 { t + 1 } else { t + 2 };
                    assert_eq!(p.chi, expect, "h={h} t={t}");
                }
            }
        }
        let p = PowerCycleParams::new(13, 2).unwrap();
        assert_eq!(p.ell, vec![5, 4, 3]);
        assert_eq!(p.p0, q(1, 3));
        assert_eq!(p.chi, 4);
        assert_eq!(p.big_l, 6);
    }

    #[test]
    fn json_is_sorted() {
        let g = Graph::from_edges(4, &[(2, 3), (1, 0), (0, 2)]).unwrap();
        let j = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(j, r#"{"n":4,"edges":[[0,1],[0,2],[2,3]]}"#);
        let back = Graph::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, g);
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(3, &[(1, 3)]).is_err());
    }

    #[test]
    fn wide_graphs_use_multiple_words() {
        let g = power_cycle(130, 2).unwrap();
        assert!(g.has_edge(0, 129) && g.has_edge(64, 66) && !g.has_edge(63, 66));
        assert_eq!(g.edge_count(), 260);
    }
}

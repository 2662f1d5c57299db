//! The embedding relation `H -> K` between a graph and a CRG.
//!
//! `phi : V(H) -> V(K)` must send every edge of `H` to a black vertex (both
//! ends on it) or a black/gray pair, and every non-edge to a white vertex or
//! a white/gray pair.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::crg::{Crg, EdgeColor, VertexColor};
use crate::error::{Error, Result};
use crate::graph::{Graph, PowerCycleParams};

pub const DEFAULT_GRAPH_BOUND: usize = 40;
pub const DEFAULT_CRG_BOUND: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbedOptions {
    pub graph_bound: usize,
    pub crg_bound: usize,
    pub timeout: Duration,
}

impl Default for EmbedOptions {
    fn default() -> Self {
        EmbedOptions {
            graph_bound: DEFAULT_GRAPH_BOUND,
            crg_bound: DEFAULT_CRG_BOUND,
            timeout: Duration::from_secs(10),
        }
    }
}

/// Witness JSON: `{"phi": [k-vertex per h-vertex]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingAssignment {
    pub phi: Vec<usize>,
}

impl EmbeddingAssignment {
    pub fn is_valid(&self, h: &Graph, k: &Crg) -> bool {
        if self.phi.len() != h.n() || self.phi.iter().any(|&u| u >= k.n()) {
            return false;
        }
        let table = Feasibility::new(k);
        for i in 0..h.n() {
            for j in i + 1..h.n() {
                let (a, b) = (self.phi[i], self.phi[j]);
                let allowed = if h.has_edge(i, j) {
                    table.edge_ok[a]
                } else {
                    table.nonedge_ok[a]
                };
                if allowed >> b & 1 == 0 {
                    return false;
                }
            }
        }
        true
    }
}

/// For each CRG vertex `u`, the vertices `w` an H-edge (resp. non-edge) may
/// join `u` to, including `w = u`.
struct Feasibility {
    edge_ok: Vec<u32>,
    nonedge_ok: Vec<u32>,
}

impl Feasibility {
    fn new(k: &Crg) -> Self {
        let n = k.n();
        let mut edge_ok = vec![0u32; n];
        let mut nonedge_ok = vec![0u32; n];
        for u in 0..n {
            for w in 0..n {
                let (e, ne) = if u == w {
                    (
                        k.vertex(u) == VertexColor::Black,
                        k.vertex(u) == VertexColor::White,
                    )
                } else {
                    match k.edge(u, w) {
                        EdgeColor::Gray => (true, true),
                        EdgeColor::Black => (true, false),
                        EdgeColor::White => (false, true),
                    }
                };
                edge_ok[u] |= (e as u32) << w;
                nonedge_ok[u] |= (ne as u32) << w;
            }
        }
        Feasibility {
            edge_ok,
            nonedge_ok,
        }
    }
}

/// Decides `H -> K`, returning a verified witness when it exists.
pub fn embeds(h: &Graph, k: &Crg, opts: EmbedOptions) -> Result<Option<EmbeddingAssignment>> {
    h.check_bound(opts.graph_bound, "graph")?;
    if k.n() > opts.crg_bound.min(32) {
        return Err(Error::SizeExceeded {
            what: "CRG",
            size: k.n(),
            bound: opts.crg_bound.min(32),
        });
    }
    let n = h.n();
    if n == 0 {
        return Ok(Some(EmbeddingAssignment { phi: Vec::new() }));
    }
    if k.n() == 0 {
        return Ok(None);
    }
    let mut search = Search {
        adj: (0..n).map(|v| h.mask(v)).collect(),
        table: Feasibility::new(k),
        phi: vec![0; n],
        started: Instant::now(),
        timeout: opts.timeout,
        nodes: 0,
    };
    let domains = vec![(1u32 << k.n()) - 1; n];
    if !search.extend(0, domains)? {
        return Ok(None);
    }
    let witness = EmbeddingAssignment { phi: search.phi };
    assert!(
        witness.is_valid(h, k),
        "search produced an invalid embedding"
    );
    Ok(Some(witness))
}

struct Search {
    adj: Vec<u64>,
    table: Feasibility,
    phi: Vec<usize>,
    started: Instant,
    timeout: Duration,
    nodes: u64,
}

impl Search {
    /// Vertices are mapped in index order; `domains[w]` holds the CRG
    /// vertices still compatible with everything mapped so far.
    fn extend(&mut self, v: usize, domains: Vec<u32>) -> Result<bool> {
        let n = self.adj.len();
        if v == n {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && self.started.elapsed() > self.timeout {
            return Err(Error::Timeout {
                seconds: self.timeout.as_secs_f64(),
            });
        }
        let mut options = domains[v];
        while options != 0 {
            let u = options.trailing_zeros() as usize;
            options &= options - 1;
            let mut next = domains.clone();
            let mut dead = false;
            for (w, dom) in next.iter_mut().enumerate().skip(v + 1) {
                *dom &= if self.adj[v] >> w & 1 == 1 {
                    self.table.edge_ok[u]
                } else {
                    self.table.nonedge_ok[u]
                };
                if *dom == 0 {
                    dead = true;
                    break;
                }
            }
            if dead {
                continue;
            }
            self.phi[v] = u;
            if self.extend(v + 1, next)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// `a` white vertices joined by gray edges to everything, plus `k` black
/// vertices whose gray edges form a `k`-cycle (a single gray edge when
/// `k = 2`); all other black pairs are white.
pub fn lemma_one_crg(a: usize, k: usize) -> Result<Crg> {
    if k < 2 {
        return Err(Error::Domain(format!(
            "gray cycle length must be at least 2, got {k}"
        )));
    }
    let mut vertices = vec![VertexColor::White; a];
    vertices.extend(std::iter::repeat_n(VertexColor::Black, k));
    let mut crg = Crg::new(vertices, EdgeColor::Gray);
    for i in 0..k {
        for j in i + 1..k {
            let cyclic_neighbours = j == i + 1 || (i == 0 && j == k - 1);
            if !cyclic_neighbours {
                crg.set_edge(a + i, a + j, EdgeColor::White);
            }
        }
    }
    Ok(crg)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaOneReport {
    pub h: usize,
    pub t: usize,
    pub a: usize,
    /// `(k, embeds)` for every `k` in `ell[a] ..= floor(h/t)`; all must embed.
    pub required: Vec<(usize, bool)>,
    /// Verdicts just outside the interval, recorded without requirement.
    /// `None` when the instance exceeds the search bounds.
    pub outside: Vec<(usize, Option<bool>)>,
}

impl LemmaOneReport {
    pub fn passed(&self) -> bool {
        self.required.iter().all(|&(_, ok)| ok)
    }
}

/// Checks that `C_h^t` embeds into `lemma_one_crg(a, k)` for every forbidden
/// gray-cycle length `k` in `{ell[a], ..., floor(h/t)}`.
pub fn verify_lemma_one(
    params: &PowerCycleParams,
    a: usize,
    opts: EmbedOptions,
) -> Result<LemmaOneReport> {
    let (h, t) = (params.h, params.t);
    if t == 0 || a + 1 > t || h < (t * t - t).max(2 * t + 2) {
        return Err(Error::Domain(format!(
            "gray-cycle check needs 0 <= a <= t-1 and h >= max(t^2 - t, 2t + 2); got h = {h}, t = {t}, a = {a}"
        )));
    }
    let g = params.graph();
    let lo = params.ell(a);
    let hi = params.big_l;
    let mut required = Vec::new();
    for k in lo..=hi {
        let crg = lemma_one_crg(a, k)?;
        required.push((k, embeds(&g, &crg, opts)?.is_some()));
    }
    let mut outside = Vec::new();
    for k in [lo.saturating_sub(1), hi + 1] {
        if k < 2 || (k >= lo && k <= hi) {
            continue;
        }
        let crg = lemma_one_crg(a, k)?;
        let verdict = match embeds(&g, &crg, opts) {
            Ok(w) => Some(w.is_some()),
            Err(Error::SizeExceeded { .. }) => None,
            Err(e) => return Err(e),
        };
        outside.push((k, verdict));
    }
    Ok(LemmaOneReport {
        h,
        t,
        a,
        required,
        outside,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{partitionable, power_cycle, DEFAULT_EXACT_BOUND};

    fn gray_triangle() -> Crg {
        Crg::k_rs(0, 3).unwrap()
    }

    #[test]
    fn c8_into_small_crgs() {
        let c8 = power_cycle(8, 1).unwrap();
        assert!(embeds(&c8, &gray_triangle(), Default::default())
            .unwrap()
            .is_none());
        let w = embeds(&c8, &lemma_one_crg(0, 4).unwrap(), Default::default())
            .unwrap()
            .unwrap();
        assert!(w.is_valid(&c8, &lemma_one_crg(0, 4).unwrap()));
    }

    #[test]
    fn lemma_one_crg_shapes() {
        assert_eq!(lemma_one_crg(0, 3).unwrap(), gray_triangle());
        let k = lemma_one_crg(1, 2).unwrap();
        assert_eq!(k, Crg::k_rs(1, 2).unwrap());
        let k = lemma_one_crg(2, 4).unwrap();
        assert_eq!(k.count_vertices(VertexColor::White), 2);
        assert_eq!(k.edges_of(EdgeColor::White), vec![(2, 4), (3, 5)]);
        assert_eq!(k.edges_of(EdgeColor::Gray).len(), 15 - 2);
        assert!(lemma_one_crg(1, 1).is_err());
    }

    #[test]
    fn gray_cycle_examples() {
        let r =
            verify_lemma_one(&PowerCycleParams::new(8, 1).unwrap(), 0, Default::default()).unwrap();
        assert_eq!(
            r.required.iter().map(|x| x.0).collect::<Vec<_>>(),
            vec![4, 5, 6, 7, 8]
        );
        assert!(r.passed());
        assert!(r.outside.contains(&(3, Some(false))));

        let r = verify_lemma_one(
            &PowerCycleParams::new(13, 2).unwrap(),
            0,
            Default::default(),
        )
        .unwrap();
        assert_eq!(r.required, vec![(5, true), (6, true)]);
        let r = verify_lemma_one(
            &PowerCycleParams::new(13, 2).unwrap(),
            1,
            Default::default(),
        )
        .unwrap();
        assert_eq!(r.required, vec![(4, true), (5, true), (6, true)]);
    }

    #[test]
    fn agrees_with_partition_search_on_k_rs() {
        for (h, t) in [(5, 1), (7, 1), (8, 1), (9, 2), (13, 2)] {
            let g = power_cycle(h, t).unwrap();
            for r in 0..4 {
                for s in 0..6 {
                    if r + s == 0 {
                        continue;
                    }
                    let crg = Crg::k_rs(r, s).unwrap();
                    assert_eq!(
                        embeds(&g, &crg, Default::default()).unwrap().is_some(),
                        partitionable(&g, r, s, DEFAULT_EXACT_BOUND).unwrap(),
                        "h={h} t={t} r={r} s={s}"
                    );
                }
            }
        }
    }

    #[test]
    fn invalid_witness_detected() {
        let c5 = power_cycle(5, 1).unwrap();
        let k = Crg::k_rs(1, 2).unwrap();
        assert!(!EmbeddingAssignment { phi: vec![0; 5] }.is_valid(&c5, &k));
        assert!(!EmbeddingAssignment { phi: vec![0; 4] }.is_valid(&c5, &k));
    }

    #[test]
    fn size_and_domain_errors() {
        let big = power_cycle(41, 1).unwrap();
        assert!(matches!(
            embeds(&big, &gray_triangle(), Default::default()),
            Err(Error::SizeExceeded { .. })
        ));
        let p = PowerCycleParams::new(8, 1).unwrap();
        assert!(verify_lemma_one(&p, 1, Default::default()).is_err());
    }

    #[test]
    fn timeout_is_distinct_from_false() {
        let g = power_cycle(40, 3).unwrap();
        let k = Crg::k_rs(3, 5).unwrap();
        let opts = EmbedOptions {
            timeout: Duration::from_nanos(1),
            ..Default::default()
        };
        match embeds(&g, &k, opts) {
            Err(Error::Timeout { .. }) | Ok(Some(_)) => {}
            other => panic!("unexpected {other:?}"),
        }
    }
}

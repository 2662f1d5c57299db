//! Verification suites shared by the command-line tool and the test suite.

use std::time::Duration;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::closed::{g0_bound, gamma_closed};
use crate::crg::{Crg, EdgeColor, VertexColor};
use crate::embedding::{embeds, verify_lemma_one, EmbedOptions};
use crate::error::{Error, Result};
use crate::facts::{verify_facts, FactsRanges, Tally};
use crate::graph::PowerCycleParams;
use crate::par;
use crate::qp::{degree_report, g_exact, is_p_core, ExactOptions, DEFAULT_PCORE_BOUND};
use crate::rational::{fmt_q, q, qi, Q};
use crate::spectrum::{gamma, power_cycle_spectrum};

/// `(t, h)` pairs for the spectrum cross-validation.
pub fn spectrum_pairs() -> Vec<(usize, usize)> {
    (5..=12)
        .map(|h| (1, h))
        .chain((13..=18).map(|h| (2, h)))
        .collect()
}

/// `(h, t, a)` triples for the gray-cycle embedding sweep.
pub fn gray_cycle_cases() -> Vec<(usize, usize, usize)> {
    vec![
        (8, 1, 0),
        (9, 1, 0),
        (13, 2, 0),
        (13, 2, 1),
        (25, 3, 0),
        (25, 3, 1),
        (25, 3, 2),
    ]
}

/// Pareto-maximal pairs of `{(a, ell[a]-1)} ∪ {(chi-1, 0)}`.
pub fn expected_extreme_points(params: &PowerCycleParams) -> Vec<(usize, usize)> {
    let mut cand: Vec<(usize, usize)> = (0..=params.t).map(|a| (a, params.ell(a) - 1)).collect();
    cand.push((params.chi - 1, 0));
    cand.sort();
    cand.dedup();
    let dominated = |&(r, s): &(usize, usize)| {
        cand.iter()
            .any(|&(r2, s2)| (r2, s2) != (r, s) && r2 >= r && s2 >= s)
    };
    cand.iter().copied().filter(|x| !dominated(x)).collect()
}

/// Uniform grid `k/den` for `k = 1..den` (open interval).
pub fn open_grid(den: i64) -> Vec<Q> {
    (1..den).map(|k| q(k, den)).collect()
}

/// Spectrum extreme points against the closed description, then
/// search-based `gamma` against `gamma_closed` on `grid`.
pub fn spectrum_cross_check(
    pairs: &[(usize, usize)],
    grid: &[Q],
    bound: usize,
) -> Result<[Tally; 2]> {
    let mut ext = Tally::new("spectrum_extreme_points");
    let mut eq = Tally::new("gamma_search_vs_closed");
    for &(t, h) in pairs {
        let params = PowerCycleParams::new(h, t)?;
        let spec = power_cycle_spectrum(&params, bound)?;
        let got = spec.extreme_points();
        let want = expected_extreme_points(&params);
        ext.check(!spec.truncated && got == want, || {
            format!("h={h} t={t}: got {got:?}, want {want:?}")
        });
        ext.check(spec.is_ferrers(), || {
            format!("h={h} t={t}: not a Ferrers diagram")
        });
        for p in grid {
            let a = gamma(&spec, p)?.0;
            let b = gamma_closed(&params, p)?.0;
            eq.check(a == b, || {
                format!(
                    "h={h} t={t} p={}: search {} vs closed {}",
                    fmt_q(p),
                    fmt_q(&a),
                    fmt_q(&b)
                )
            });
        }
    }
    Ok([ext, eq])
}

/// Gray-cycle embeddings for each case, plus the `K(t, ell[t])` /
/// `K(t, ell[t]-1)` boundary and `K(t+1, 1)` when `(t+1)` does not divide `h`.
pub fn gray_cycle_sweep(cases: &[(usize, usize, usize)], opts: EmbedOptions) -> Result<Tally> {
    let mut out = Tally::new("gray_cycles");
    let mut seen = Vec::new();
    for &(h, t, a) in cases {
        let params = PowerCycleParams::new(h, t)?;
        let report = verify_lemma_one(&params, a, opts)?;
        for &(k, ok) in &report.required {
            out.check(ok, || {
                format!("h={h} t={t} a={a} k={k}: gray cycle does not embed")
            });
        }
        for &(k, v) in &report.outside {
            out.notes.push(format!(
                "h={h} t={t} a={a} k={k}: outside interval, embeds = {v:?}"
            ));
        }
        if seen.contains(&(h, t)) {
            continue;
        }
        seen.push((h, t));
        let g = params.graph();
        let lt = params.ell(t);
        out.check(embeds(&g, &Crg::k_rs(t, lt)?, opts)?.is_some(), || {
            format!("h={h} t={t}: K(t, ell_t) rejects")
        });
        out.check(embeds(&g, &Crg::k_rs(t, lt - 1)?, opts)?.is_none(), || {
            format!("h={h} t={t}: K(t, ell_t - 1) accepts")
        });
        if !params.divisible() {
            out.check(embeds(&g, &Crg::k_rs(t + 1, 1)?, opts)?.is_some(), || {
                format!("h={h} t={t}: K(t+1, 1) rejects")
            });
        }
    }
    Ok(out)
}

/// Seeded random CRGs with `1..=max_n` vertices. Gray density cycles through
/// all-gray, mostly gray and mixed so that p-cores appear at every size.
pub fn random_corpus(seed: u64, count: usize, max_n: usize) -> Vec<Crg> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gray_probs = [1.0, 0.9, 0.75, 0.5, 1.0 / 3.0];
    (0..count)
        .map(|i| {
            let n = rng.gen_range(1..=max_n);
            let gray = gray_probs[i % gray_probs.len()];
            let vertices = (0..n)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        VertexColor::White
                    } else {
                        VertexColor::Black
                    }
                })
                .collect();
            let mut k = Crg::new(vertices, EdgeColor::Gray);
            for a in 0..n {
                for b in a + 1..n {
                    if !rng.gen_bool(gray) {
                        k.set_edge(
                            a,
                            b,
                            if rng.gen_bool(0.5) {
                                EdgeColor::White
                            } else {
                                EdgeColor::Black
                            },
                        );
                    }
                }
            }
            k
        })
        .collect()
}

/// `1/g(K) = sum 1/g(component)` compared with the undecomposed solve.
pub fn recombination(corpus: &[Crg], ps: &[Q]) -> Result<Tally> {
    let whole = ExactOptions {
        decompose: false,
        ..Default::default()
    };
    let parts = par::try_map(corpus, |k| -> Result<Tally> {
        let mut out = Tally::new("component_recombination");
        for p in ps {
            let g = g_exact(k, p, whole)?.value;
            let mut inv = Q::zero();
            for c in k.components() {
                inv += g_exact(&c, p, whole)?.value.recip();
            }
            out.check(g.recip() == inv, || format!("{k:?} p={}", fmt_q(p)));
        }
        Ok(out)
    })?;
    let mut out = Tally::new("component_recombination");
    parts.into_iter().for_each(|t| out.merge(t));
    Ok(out)
}

/// No black edge and no white edge at a white vertex below 1/2, mirrored
/// above, and only gray edges at 1/2.
pub fn structure_ok(k: &Crg, p: &Q) -> bool {
    let half = q(1, 2);
    let n = k.n();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let e = k.edge(i, j);
            let (vi, vj) = (k.vertex(i), k.vertex(j));
            if *p == half {
                e == EdgeColor::Gray
            } else if *p < half {
                e != EdgeColor::Black
                    && !(e == EdgeColor::White
                        && (vi == VertexColor::White || vj == VertexColor::White))
            } else {
                e != EdgeColor::White
                    && !(e == EdgeColor::Black
                        && (vi == VertexColor::Black || vj == VertexColor::Black))
            }
        })
    })
}

/// Weight identities at an optimum of a p-core CRG. Below 1/2: white `v`
/// has `x(v) = g/p`; black `v` has `d_G(v) = (p-g)/p + ((1-2p)/p) x(v)` and
/// `x(v) <= g/(1-p)`. Colors and `p <-> 1-p` swap above 1/2.
pub fn weight_identities(k: &Crg, p: &Q, g: &Q, x: &[Q]) -> std::result::Result<(), String> {
    let one = Q::one();
    let below = *p <= q(1, 2);
    // the "light" color takes the role of white below 1/2
    let (pp, light) = if below {
        (p.clone(), VertexColor::White)
    } else {
        (&one - p, VertexColor::Black)
    };
    let qq = &one - &pp;
    let deg = degree_report(k, x);
    for v in 0..k.n() {
        if k.vertex(v) == light {
            if x[v] != g / &pp {
                return Err(format!(
                    "v={v}: x = {} but g/p = {}",
                    fmt_q(&x[v]),
                    fmt_q(&(g / &pp))
                ));
            }
        } else {
            let want = (&pp - g) / &pp + (&one - qi(2) * &pp) / &pp * &x[v];
            if deg.d_gray[v] != want {
                return Err(format!(
                    "v={v}: d_G = {} but identity gives {}",
                    fmt_q(&deg.d_gray[v]),
                    fmt_q(&want)
                ));
            }
            if x[v] > g / &qq {
                return Err(format!(
                    "v={v}: x = {} exceeds g/(1-p) = {}",
                    fmt_q(&x[v]),
                    fmt_q(&(g / &qq))
                ));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PCoreReport {
    pub weights: Tally,
    pub structure: Tally,
    /// p-core instances with at least two vertices.
    pub asserted: u64,
    /// Single-vertex instances, p-core only because no proper sub-CRG exists.
    pub vacuous: u64,
    pub degree_lemma: Tally,
}

pub const MIN_ASSERTED_PCORES: u64 = 10;

impl PCoreReport {
    pub fn passed(&self) -> bool {
        self.weights.ok() && self.structure.ok() && self.asserted >= MIN_ASSERTED_PCORES
    }
}

/// Degree lower bound for all-black p-cores with `g < g_0(a, t; p)`,
/// counted as applicable instances; any violation is recorded as a note.
fn degree_lemma_notes(k: &Crg, p: &Q, g: &Q, params: &[PowerCycleParams], out: &mut Tally) {
    if *p >= q(1, 2) || k.count_vertices(VertexColor::White) > 0 {
        return;
    }
    for pr in params {
        for a in 0..pr.t {
            let Ok(g0) = g0_bound(pr, a, p) else { continue };
            if *g >= g0 {
                continue;
            }
            out.checked += 1;
            out.passed += 1;
            let deg = degree_report(k, &vec![Q::zero(); k.n()]).deg_gray;
            if let Some(v) = (0..k.n()).find(|&v| deg[v] < pr.ell(a + 1)) {
                out.notes.push(format!(
                    "h={} t={} a={a} p={} n={}: deg_G({v}) = {} < {}",
                    pr.h,
                    pr.t,
                    fmt_q(p),
                    k.n(),
                    deg[v],
                    pr.ell(a + 1)
                ));
            }
        }
    }
}

/// Runs every p-core check over `corpus` at each `p`.
pub fn p_core_suite(
    corpus: &[Crg],
    ps: &[Q],
    degree_params: &[PowerCycleParams],
) -> Result<PCoreReport> {
    let per = par::try_map(corpus, |k| -> Result<(Tally, Tally, Tally, u64, u64)> {
        let mut w = Tally::new("weight_identities");
        let mut s = Tally::new("p_core_structure");
        let mut d = Tally::new("degree_lemma");
        let (mut asserted, mut vacuous) = (0, 0);
        for p in ps {
            if !is_p_core(k, p, DEFAULT_PCORE_BOUND)? {
                continue;
            }
            s.check(structure_ok(k, p), || format!("{k:?} p={}", fmt_q(p)));
            if k.n() == 1 {
                vacuous += 1;
                continue;
            }
            if *p == q(1, 2) {
                continue;
            }
            asserted += 1;
            let opt = g_exact(k, p, ExactOptions::default())?;
            let res = weight_identities(k, p, &opt.value, &opt.weights);
            w.check(res.is_ok(), || {
                format!("{k:?} p={}: {}", fmt_q(p), res.clone().unwrap_err())
            });
            degree_lemma_notes(k, p, &opt.value, degree_params, &mut d);
        }
        Ok((w, s, d, asserted, vacuous))
    })?;
    let mut report = PCoreReport {
        weights: Tally::new("weight_identities"),
        structure: Tally::new("p_core_structure"),
        asserted: 0,
        vacuous: 0,
        degree_lemma: Tally::new("degree_lemma"),
    };
    for (w, s, d, a, v) in per {
        report.weights.merge(w);
        report.structure.merge(s);
        report.degree_lemma.merge(d);
        report.asserted += a;
        report.vacuous += v;
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Facts,
    Lemma1,
    Theorem1,
    Weights,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub h_max: usize,
    pub t_max: usize,
    pub seed: u64,
    /// Largest `h` handed to the exact spectrum search per `t`.
    pub spectrum_h_cap: usize,
    pub corpus_size: usize,
    pub embed_timeout: Duration,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            suite: Suite::All,
            h_max: 400,
            t_max: 8,
            seed: 0,
            spectrum_h_cap: 18,
            corpus_size: 200,
            embed_timeout: Duration::from_secs(10),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suites: Vec<Tally>,
    pub asserted_p_cores: Option<u64>,
    pub vacuous_p_cores: Option<u64>,
    pub passed: bool,
}

fn runs(cfg: &VerifyConfig, s: Suite) -> bool {
    cfg.suite == Suite::All || cfg.suite == s
}

pub fn run(cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.h_max < 3 || cfg.t_max < 1 {
        return Err(Error::Domain(
            "h-max must be at least 3 and t-max at least 1".into(),
        ));
    }
    let mut suites = Vec::new();
    let mut passed = true;
    let (mut asserted, mut vacuous) = (None, None);
    if runs(cfg, Suite::Facts) {
        let ranges = FactsRanges {
            h_max: cfg.h_max,
            t_max: cfg.t_max,
            ..Default::default()
        };
        let rep = verify_facts(&ranges);
        passed &= rep.passed();
        suites.extend(rep.facts);
    }
    if runs(cfg, Suite::Theorem1) {
        let pairs: Vec<(usize, usize)> = (1..=cfg.t_max)
            .flat_map(|t| {
                let lo = (t * (t + 1)).max(4);
                (lo..=cfg.h_max.min(cfg.spectrum_h_cap)).map(move |h| (t, h))
            })
            .collect();
        let [a, b] = spectrum_cross_check(&pairs, &open_grid(100), cfg.spectrum_h_cap)?;
        passed &= a.ok() && b.ok();
        suites.extend([a, b]);
    }
    if runs(cfg, Suite::Lemma1) {
        let cases: Vec<_> = gray_cycle_cases()
            .into_iter()
            .filter(|&(h, t, _)| h <= cfg.h_max && t <= cfg.t_max)
            .collect();
        let opts = EmbedOptions {
            timeout: cfg.embed_timeout,
            ..Default::default()
        };
        let tally = gray_cycle_sweep(&cases, opts)?;
        passed &= tally.ok();
        suites.push(tally);
    }
    if runs(cfg, Suite::Weights) {
        let corpus = random_corpus(cfg.seed, cfg.corpus_size, 8);
        let ps = [q(1, 4), q(1, 2), q(3, 4)];
        let rec = recombination(&corpus, &ps)?;
        let degree_params: Vec<PowerCycleParams> = gray_cycle_cases()
            .into_iter()
            .map(|(h, t, _)| PowerCycleParams::new(h, t))
            .collect::<Result<_>>()?;
        let rep = p_core_suite(&corpus, &ps, &degree_params)?;
        passed &= rec.ok() && rep.passed();
        asserted = Some(rep.asserted);
        vacuous = Some(rep.vacuous);
        suites.extend([rec, rep.weights, rep.structure, rep.degree_lemma]);
    }
    Ok(VerifyReport {
        suites,
        asserted_p_cores: asserted,
        vacuous_p_cores: vacuous,
        passed,
    })
}

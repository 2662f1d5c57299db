//! Location and value of the maximum of a concave curve on `[0, 1]`.

use serde::Serialize;

use crate::closed::gamma_closed;
use crate::error::{Error, Result};
use crate::graph::PowerCycleParams;

pub const SEARCH_TOL: f64 = 1e-12;
const CONCAVITY_SAMPLES: usize = 1001;
const CONCAVITY_TOL: f64 = 1e-12;
const CANDIDATE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    TernarySearch,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxPoint {
    pub p_star: f64,
    pub d_star: f64,
    pub method: Method,
}

/// Fails with `NotConcave` at the first grid midpoint lying below its chord.
pub fn check_concave<F: Fn(f64) -> f64>(curve: &F, samples: usize) -> Result<()> {
    let n = samples.max(3);
    let step = 1.0 / (n - 1) as f64;
    let ys: Vec<f64> = (0..n).map(|i| curve(i as f64 * step)).collect();
    for i in 1..n - 1 {
        if ys[i] < 0.5 * (ys[i - 1] + ys[i + 1]) - CONCAVITY_TOL {
            return Err(Error::NotConcave { p: i as f64 * step });
        }
    }
    Ok(())
}

/// Ternary search on `[0, 1]`, then any `candidates` within reach of the
/// search result that do at least as well replace it.
pub fn max_point<F: Fn(f64) -> f64>(curve: F, candidates: &[f64]) -> Result<MaxPoint> {
    check_concave(&curve, CONCAVITY_SAMPLES)?;
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    while hi - lo > SEARCH_TOL {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if curve(m1) < curve(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    let p = 0.5 * (lo + hi);
    let mut best = MaxPoint {
        p_star: p,
        d_star: curve(p),
        method: Method::TernarySearch,
    };
    for &c in candidates {
        if !(0.0..=1.0).contains(&c) || (c - p).abs() > CANDIDATE_TOL {
            continue;
        }
        let v = curve(c);
        if v >= best.d_star - CONCAVITY_TOL {
            best = MaxPoint {
                p_star: c,
                d_star: v,
                method: Method::ClosedForm,
            };
            break;
        }
    }
    Ok(best)
}

/// The two closed-form maximisers for `Forb(C_h)`:
/// `1/(ceil(h/2) - ceil(h/3) + 1)` and `1/(1 + sqrt(ceil(h/3) - 1))`.
pub fn cycle_candidates(h: usize) -> [f64; 2] {
    let c2 = h.div_ceil(2) as f64;
    let c3 = h.div_ceil(3) as f64;
    [1.0 / (c2 - c3 + 1.0), 1.0 / (1.0 + (c3 - 1.0).sqrt())]
}

/// Maximum of `gamma_H` for `H = C_h^t`.
pub fn power_cycle_max_point(params: &PowerCycleParams) -> Result<MaxPoint> {
    gamma_closed(params, &0.5_f64)?;
    let candidates = if params.t == 1 {
        cycle_candidates(params.h).to_vec()
    } else {
        Vec::new()
    };
    max_point(
        |p: f64| gamma_closed(params, &p).map(|g| g.0).unwrap_or(f64::NAN),
        &candidates,
    )
}

//! Clique spectra and `gamma_H(p)` computed by search, independently of the
//! closed forms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{chromatic_number, partitionable, Graph, PowerCycleParams};
use crate::par;
use crate::rational::{Scalar, Q};

/// `g_{K(r,s)}(p) = p(1-p) / (r(1-p) + s p)`, extended to `p in {0, 1}` by
/// evaluating the quadratic program there. `None` for `r = s = 0`.
pub fn krs_g<T: Scalar>(r: usize, s: usize, p: &T) -> Option<T> {
    if r + s == 0 {
        return None;
    }
    let one = T::one();
    let q = one.sub(p);
    let (rt, st) = (T::from_int(r as i64), T::from_int(s as i64));
    let den = rt.mul(&q).add(&st.mul(p));
    if den.is_zero() {
        // p = 0 with r = 0, or p = 1 with s = 0: a gray clique with unit diagonal
        let count = if p.is_zero() { st } else { rt };
        return Some(one.div(&count));
    }
    Some(p.mul(&q).div(&den))
}

/// The Ferrers diagram `{(r, s) : H does not embed in K(r, s)}` restricted to
/// `r <= r_max`, `s <= s_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSpectrum {
    pub r_max: usize,
    pub s_max: usize,
    /// `row_len[r]`: number of `s` values in row `r`, i.e. the least `s` with
    /// `H -> K(r, s)`, capped at `s_max + 1`.
    pub row_len: Vec<usize>,
    pub truncated: bool,
}

impl CliqueSpectrum {
    pub fn contains(&self, r: usize, s: usize) -> bool {
        r <= self.r_max && s < self.row_len[r]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.row_len
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |s| (r, s)))
            .collect()
    }

    /// Pairs `(r, s)` in the spectrum with `(r+1, s)` and `(r, s+1)` outside.
    pub fn extreme_points(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..=self.r_max {
            let len = self.row_len[r];
            if len == 0 {
                continue;
            }
            let next = self.row_len.get(r + 1).copied().unwrap_or(0);
            if next < len {
                out.push((r, len - 1));
            }
        }
        out
    }

    pub fn is_ferrers(&self) -> bool {
        self.row_len.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn to_json(&self) -> SpectrumJson {
        SpectrumJson {
            pairs: self.pairs().into_iter().map(|(r, s)| [r, s]).collect(),
            extreme: self
                .extreme_points()
                .into_iter()
                .map(|(r, s)| [r, s])
                .collect(),
            truncated: self.truncated,
        }
    }
}

/// Wire format: `{"pairs": [[r,s],...], "extreme": [[r,s],...], "truncated": bool}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub pairs: Vec<[usize; 2]>,
    pub extreme: Vec<[usize; 2]>,
    pub truncated: bool,
}

/// Computes each row by binary search on `s`, using monotonicity of
/// `partitionable` in `s`.
pub fn clique_spectrum(
    h: &Graph,
    r_max: usize,
    s_max: usize,
    bound: usize,
) -> Result<CliqueSpectrum> {
    h.check_bound(bound, "graph")?;
    let rows: Vec<usize> = (0..=r_max).collect();
    let row_len = par::try_map(&rows, |&r| {
        let (mut lo, mut hi) = (0, s_max + 1);
        // invariant: partitionable at hi (or hi = s_max + 1), not below lo
        while lo < hi {
            let mid = (lo + hi) / 2;
            if partitionable(h, r, mid, bound)? {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Ok::<_, Error>(lo)
    })?;
    let truncated = row_len[0] > s_max || row_len[r_max] > 0;
    Ok(CliqueSpectrum {
        r_max,
        s_max,
        row_len,
        truncated,
    })
}

/// Spectrum with bounds chosen to certify closure: `r_max = chi(H)` and
/// `s_max` doubled until row 0 closes.
pub fn clique_spectrum_auto(h: &Graph, bound: usize) -> Result<CliqueSpectrum> {
    let chi = chromatic_number(h, bound)?;
    let mut s_max = 2;
    loop {
        let spec = clique_spectrum(h, chi, s_max, bound)?;
        if !spec.truncated || s_max > h.n() {
            return Ok(spec);
        }
        s_max *= 2;
    }
}

/// Spectrum of `C_h^t` with `r_max = chi` and `s_max = ell[0] + 1`.
pub fn power_cycle_spectrum(params: &PowerCycleParams, bound: usize) -> Result<CliqueSpectrum> {
    clique_spectrum(&params.graph(), params.chi, params.ell(0) + 1, bound)
}

fn min_over<'a, T: Scalar>(
    points: impl Iterator<Item = &'a (usize, usize)>,
    p: &T,
) -> Result<(T, (usize, usize))> {
    let mut best: Option<(T, (usize, usize))> = None;
    for &(r, s) in points {
        let Some(v) = krs_g(r, s, p) else { continue };
        let better = match &best {
            None => true,
            Some((bv, bl)) => v < *bv || (v == *bv && (r, s) < *bl),
        };
        if better {
            best = Some((v, (r, s)));
        }
    }
    best.ok_or_else(|| Error::Domain("spectrum has no pair with r + s >= 1".into()))
}

/// `gamma_H(p)` as the minimum of `g_{K(r,s)}(p)` over extreme points, with
/// the minimising pair (lexicographically least on ties).
pub fn gamma<T: Scalar>(spec: &CliqueSpectrum, p: &T) -> Result<(T, (usize, usize))> {
    if spec.truncated {
        return Err(Error::Truncated(format!(
            "bounds r <= {}, s <= {} do not certify all extreme points",
            spec.r_max, spec.s_max
        )));
    }
    min_over(spec.extreme_points().iter(), p)
}

/// The same minimum taken over every pair of the spectrum.
pub fn gamma_all_pairs<T: Scalar>(spec: &CliqueSpectrum, p: &T) -> Result<(T, (usize, usize))> {
    if spec.truncated {
        return Err(Error::Truncated("spectrum truncated".into()));
    }
    min_over(spec.pairs().iter(), p)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSample {
    pub p: Q,
    pub gamma: Q,
    pub branch: (usize, usize),
}

pub fn gamma_curve(spec: &CliqueSpectrum, grid: &[Q]) -> Result<Vec<SpectrumSample>> {
    par::try_map(grid, |p| {
        let (gamma, branch) = gamma(spec, p)?;
        Ok(SpectrumSample {
            p: p.clone(),
            gamma,
            branch,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{power_cycle, DEFAULT_EXACT_BOUND as B};
    use crate::rational::{q, qi};

    #[test]
    fn c5_extreme_points() {
        let spec = clique_spectrum_auto(&power_cycle(5, 1).unwrap(), B).unwrap();
        assert!(!spec.truncated);
        assert_eq!(spec.extreme_points(), vec![(0, 2), (1, 1), (2, 0)]);
        let (g, _) = gamma(&spec, &q(1, 2)).unwrap();
        assert_eq!(g, q(1, 4));
    }

    #[test]
    fn c13_squared_extreme_points() {
        let p = PowerCycleParams::new(13, 2).unwrap();
        let spec = power_cycle_spectrum(&p, B).unwrap();
        assert_eq!(spec.extreme_points(), vec![(0, 4), (1, 3), (2, 2), (3, 0)]);
    }

    #[test]
    fn k4_gives_p_over_3() {
        let spec = clique_spectrum(&Graph::complete(4), 8, 8, B).unwrap();
        assert!(!spec.truncated);
        assert_eq!(spec.extreme_points(), vec![(3, 0)]);
        for k in 0..=10 {
            let p = q(k, 10);
            assert_eq!(gamma(&spec, &p).unwrap().0, &p / qi(3));
        }
    }

    #[test]
    fn truncation_is_reported() {
        let spec = clique_spectrum(&power_cycle(12, 1).unwrap(), 1, 2, B).unwrap();
        assert!(spec.truncated);
        assert!(matches!(gamma(&spec, &q(1, 2)), Err(Error::Truncated(_))));
    }

    #[test]
    fn c8_curve_switches_branch() {
        let spec = clique_spectrum_auto(&power_cycle(8, 1).unwrap(), B).unwrap();
        let curve = gamma_curve(&spec, &[q(1, 4), q(1, 2), q(3, 4)]).unwrap();
        assert_eq!(curve[0].branch, (1, 2));
        assert_eq!(curve[2].branch, (0, 3));
        assert!(gamma_curve(&spec, &[]).unwrap().is_empty());
    }

    #[test]
    fn krs_endpoints() {
        assert_eq!(krs_g(1, 0, &qi(0)), Some(qi(0)));
        assert_eq!(krs_g(0, 3, &qi(0)), Some(q(1, 3)));
        assert_eq!(krs_g(2, 0, &qi(1)), Some(q(1, 2)));
        assert_eq!(krs_g(2, 1, &qi(1)), Some(qi(0)));
        assert_eq!(krs_g::<Q>(0, 0, &q(1, 2)), None);
    }

    #[test]
    fn json_schema() {
        let spec = clique_spectrum_auto(&power_cycle(5, 1).unwrap(), B).unwrap();
        let j = serde_json::to_value(spec.to_json()).unwrap();
        assert_eq!(j["extreme"], serde_json::json!([[0, 2], [1, 1], [2, 0]]));
        assert_eq!(j["truncated"], false);
        assert_eq!(j["pairs"].as_array().unwrap().len(), 3 + 2 + 1);
    }
}

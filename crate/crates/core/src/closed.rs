//! Closed-form `gamma_H` and `ed_H` curves for `H = C_h^t`.

use std::fmt;

use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::PowerCycleParams;
use crate::par;
use crate::rational::{q, qi, Scalar, Q};
use crate::spectrum::krs_g;

/// Which term attains the minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `p(1-p) / (a(1-p) + (ell[a]-1) p)`, the all-gray CRG `K(a, ell[a]-1)`.
    Clique { a: usize },
    /// `p / (chi - 1)`, the all-white-vertex CRG `K(chi-1, 0)`.
    Chromatic,
}

impl Branch {
    /// The extreme point `(r, s)` of the clique spectrum this term comes from.
    pub fn pair(&self, params: &PowerCycleParams) -> (usize, usize) {
        match *self {
            Branch::Clique { a } => (a, params.ell(a) - 1),
            Branch::Chromatic => (params.chi - 1, 0),
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Clique { a } => write!(f, "a={a}"),
            Branch::Chromatic => f.write_str("chromatic"),
        }
    }
}

impl Serialize for Branch {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn check_p<T: Scalar>(p: &T) -> Result<()> {
    if *p < T::zero() || *p > T::one() {
        return Err(Error::Domain(format!("p = {p:?} is outside [0, 1]")));
    }
    Ok(())
}

fn gamma_range(params: &PowerCycleParams) -> Result<()> {
    let (h, t) = (params.h, params.t);
    if h < (t * (t + 1)).max(4) {
        return Err(Error::OutOfRange(format!(
            "gamma closed form needs h >= max(t(t+1), 4) = {}; got h = {h}",
            (t * (t + 1)).max(4)
        )));
    }
    Ok(())
}

fn ed_range(params: &PowerCycleParams) -> Result<()> {
    let (h, t) = (params.h, params.t);
    if h < 2 * t * (t + 1) + 1 {
        return Err(Error::OutOfRange(format!(
            "ed closed form needs h >= 2t(t+1) + 1 = {}; got h = {h}",
            2 * t * (t + 1) + 1
        )));
    }
    Ok(())
}

/// Candidate terms of the `gamma` minimum in a fixed order.
pub fn gamma_branches(params: &PowerCycleParams) -> Vec<Branch> {
    let mut out: Vec<Branch> = (0..=params.t).map(|a| Branch::Clique { a }).collect();
    if !params.divisible() {
        out.push(Branch::Chromatic);
    }
    out
}

pub fn branch_value<T: Scalar>(params: &PowerCycleParams, b: Branch, p: &T) -> T {
    let (r, s) = match b {
        Branch::Clique { a } => (a, params.ell(a) - 1),
        // p / (t+1); for h >= t(t+1), chi - 1 = t + 1 whenever (t+1) does not divide h
        Branch::Chromatic => (params.t + 1, 0),
    };
    krs_g(r, s, p).expect("r + s >= 1 in range")
}

fn min_branch<T: Scalar>(params: &PowerCycleParams, branches: &[Branch], p: &T) -> (T, Branch) {
    let mut best: Option<(T, Branch)> = None;
    for &b in branches {
        let v = branch_value(params, b, p);
        let better = match &best {
            None => true,
            Some((bv, bb)) => v < *bv || (v == *bv && b.pair(params) < bb.pair(params)),
        };
        if better {
            best = Some((v, b));
        }
    }
    best.expect("at least one branch")
}

/// `gamma_H(p)` for `h >= max(t(t+1), 4)`: minimum over `a = 0..=t` of the
/// clique terms, plus `p/(t+1)` when `(t+1)` does not divide `h`.
pub fn gamma_closed<T: Scalar>(params: &PowerCycleParams, p: &T) -> Result<(T, Branch)> {
    gamma_range(params)?;
    check_p(p)?;
    Ok(min_branch(params, &gamma_branches(params), p))
}

#[derive(Debug, Clone, PartialEq)]
pub enum EdValue<T> {
    Covered(T, Branch),
    /// `(t+1) | h` and `p < p_0`: the value is not determined.
    NotCovered,
}

impl<T> EdValue<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            EdValue::Covered(v, _) => Some(v),
            EdValue::NotCovered => None,
        }
    }
}

/// `ed_H(p)` where it is known: equal to `gamma_H(p)` on `[0, 1]` when
/// `(t+1)` does not divide `h`, and on `[p_0, 1]` when it does.
pub fn ed_closed<T: Scalar>(params: &PowerCycleParams, p: &T) -> Result<EdValue<T>> {
    ed_range(params)?;
    check_p(p)?;
    let p0 = T::one().div(&T::from_int(params.ell(params.t) as i64));
    if params.divisible() && *p < p0 {
        return Ok(EdValue::NotCovered);
    }
    let (v, b) = gamma_closed(params, p)?;
    Ok(EdValue::Covered(v, b))
}

/// `ed_{Forb(C_h)}(p)` written with `ceil(h/3)` and `ceil(h/2)` directly.
/// Branch labels follow the `t = 1` naming.
pub fn ed_cycles_closed<T: Scalar>(h: usize, p: &T) -> Result<EdValue<T>> {
    if h < 5 {
        return Err(Error::OutOfRange(format!(
            "cycle formula needs h >= 5; got {h}"
        )));
    }
    check_p(p)?;
    let c3 = T::from_int(h.div_ceil(3) as i64);
    let c2 = T::from_int(h.div_ceil(2) as i64);
    let one = T::one();
    let q1 = one.sub(p);
    if h.is_multiple_of(2) && p.mul(&c3) < one {
        return Ok(EdValue::NotCovered);
    }
    // ordered by spectrum pair: (0, ceil(h/2)-1), (1, ceil(h/3)-1), (2, 0)
    let mut terms = vec![
        (q1.div(&c2.sub(&one)), Branch::Clique { a: 0 }),
        (
            p.mul(&q1).div(&q1.add(&c3.sub(&one).mul(p))),
            Branch::Clique { a: 1 },
        ),
    ];
    if h % 2 == 1 {
        terms.push((p.div(&T::from_int(2)), Branch::Chromatic));
    }
    let (mut best, mut branch) = terms[0].clone();
    for (v, b) in terms.into_iter().skip(1) {
        if v < best {
            best = v;
            branch = b;
        }
    }
    Ok(EdValue::Covered(best, branch))
}

/// Three-term form of `gamma_H` (two terms when `(t+1) | h`) using only
/// `a = 0`, `a = t` and `p/(t+1)`; valid for `t >= 2`, `h >= 4t^2 + 10t + 24`.
pub fn gamma_three_term<T: Scalar>(params: &PowerCycleParams, p: &T) -> Result<(T, Branch)> {
    let (h, t) = (params.h, params.t);
    if t < 2 || h < 4 * t * t + 10 * t + 24 {
        return Err(Error::OutOfRange(format!(
            "three-term form needs t >= 2 and h >= 4t^2 + 10t + 24; got h = {h}, t = {t}"
        )));
    }
    check_p(p)?;
    let mut branches = vec![Branch::Clique { a: 0 }, Branch::Clique { a: t }];
    if !params.divisible() {
        branches.push(Branch::Chromatic);
    }
    Ok(min_branch(params, &branches, p))
}

/// `(ell[0] - ell[a])(t - a) >= (ell[a] - ell[t]) a` for every `a` in `1..t`.
pub fn middle_branches_dominated(params: &PowerCycleParams) -> bool {
    let t = params.t as i64;
    let l = |a: usize| params.ell(a) as i64;
    (1..params.t).all(|a| {
        let ai = a as i64;
        (l(0) - l(a)) * (t - ai) >= (l(a) - l(params.t)) * ai
    })
}

/// `g_0(a, t; p) = (max_{a'} ((a' - a)/p + (ell[a'] - 1)/(1 - p)))^{-1}`.
pub fn g0_bound<T: Scalar>(params: &PowerCycleParams, a: usize, p: &T) -> Result<T> {
    if a > params.t {
        return Err(Error::Domain(format!("a = {a} exceeds t = {}", params.t)));
    }
    if *p <= T::zero() || *p >= T::one() {
        return Err(Error::Domain(format!("p = {p:?} must lie in (0, 1)")));
    }
    let q1 = T::one().sub(p);
    let max = (0..=params.t)
        .map(|ap| {
            let lhs = T::from_int(ap as i64 - a as i64).div(p);
            lhs.add(&T::from_int(params.ell(ap) as i64 - 1).div(&q1))
        })
        .reduce(|x, y| if y > x { y } else { x })
        .unwrap();
    if max <= T::zero() {
        return Err(Error::Domain("g_0 denominator is not positive".into()));
    }
    Ok(T::one().div(&max))
}

/// One row of a closed-form curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSample {
    pub p: Q,
    pub gamma_closed: Q,
    /// `None` outside the covered range or below the `h` range where `ed = gamma` is known.
    pub ed_closed: Option<Q>,
    pub branch: Branch,
    /// `h` is in the range where `ed = gamma` is established.
    pub ed_h_range: bool,
    /// `ed_closed` is defined at this `p`.
    pub covered: bool,
}

pub fn closed_curve(params: &PowerCycleParams, grid: &[Q]) -> Result<Vec<CurveSample>> {
    gamma_range(params)?;
    let ed_h_range = ed_range(params).is_ok();
    par::try_map(grid, |p| {
        let (gamma_closed, branch) = gamma_closed(params, p)?;
        let ed = if ed_h_range {
            ed_closed(params, p)?.value().cloned()
        } else {
            None
        };
        Ok(CurveSample {
            p: p.clone(),
            gamma_closed,
            covered: ed.is_some(),
            ed_closed: ed,
            branch,
            ed_h_range,
        })
    })
}

/// Points in `(0, 1)` where two branches that both attain the minimum meet.
pub fn branch_crossings(params: &PowerCycleParams) -> Result<Vec<Q>> {
    gamma_range(params)?;
    let branches = gamma_branches(params);
    let mut out = Vec::new();
    for (i, &b1) in branches.iter().enumerate() {
        for &b2 in &branches[i + 1..] {
            let (r1, s1) = b1.pair(params);
            let (r2, s2) = b2.pair(params);
            // r1/p + s1/(1-p) = r2/p + s2/(1-p)  <=>  (r1-r2)(1-p) = (s2-s1)p
            let dr = r1 as i64 - r2 as i64;
            let ds = s2 as i64 - s1 as i64;
            if dr + ds == 0 {
                continue;
            }
            let p = q(dr, dr + ds);
            if !p.is_positive() || p >= qi(1) {
                continue;
            }
            let (g, _) = gamma_closed(params, &p)?;
            if branch_value(params, b1, &p) == g && branch_value(params, b2, &p) == g {
                out.push(p);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// `samples` uniformly spaced rationals `k / (samples - 1)` on `[0, 1]`.
pub fn uniform_grid(samples: usize) -> Vec<Q> {
    match samples {
        0 => Vec::new(),
        1 => vec![qi(0)],
        n => (0..n).map(|k| q(k as i64, n as i64 - 1)).collect(),
    }
}

/// 201 uniform samples plus `p_0`, `1/2` and the branch crossings.
pub fn default_grid(params: &PowerCycleParams) -> Result<Vec<Q>> {
    let mut grid = uniform_grid(201);
    grid.push(params.p0.clone());
    grid.push(q(1, 2));
    grid.extend(branch_crossings(params)?);
    grid.sort();
    grid.dedup();
    Ok(grid)
}

//! Exhaustive sweeps of the integer and one-variable rational facts behind the
//! closed forms.

use num_rational::Ratio;
use serde::Serialize;

use crate::closed::{gamma_closed, gamma_three_term, middle_branches_dominated};
use crate::graph::PowerCycleParams;
use crate::par;
use crate::spectrum::krs_g;

type R = Ratio<i128>;

const MAX_WITNESSES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactsRanges {
    pub h_max: usize,
    pub t_max: usize,
    pub xy_max: usize,
    /// Denominator of the uniform `p` grid.
    pub denominator: usize,
    pub suffices_t: Vec<usize>,
}

impl Default for FactsRanges {
    fn default() -> Self {
        FactsRanges {
            h_max: 400,
            t_max: 8,
            xy_max: 60,
            denominator: 1000,
            suffices_t: vec![2, 3],
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub name: String,
    pub checked: u64,
    pub passed: u64,
    pub failures: Vec<String>,
    /// Observations that are reported but not counted as failures.
    pub notes: Vec<String>,
}

impl Tally {
    pub fn new(name: &str) -> Self {
        Tally {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if ok {
            self.passed += 1;
        } else if self.failures.len() < MAX_WITNESSES {
            self.failures.push(witness());
        }
    }

    pub fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        self.passed += other.passed;
        for f in other.failures {
            if self.failures.len() < MAX_WITNESSES {
                self.failures.push(f);
            }
        }
        self.notes.extend(other.notes);
    }

    pub fn ok(&self) -> bool {
        self.checked == self.passed
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactsReport {
    pub ranges: FactsRanges,
    pub facts: Vec<Tally>,
}

impl FactsReport {
    pub fn passed(&self) -> bool {
        self.facts.iter().all(Tally::ok)
    }

    pub fn violations(&self) -> u64 {
        self.facts.iter().map(|f| f.checked - f.passed).sum()
    }
}

fn floor(h: usize, x: usize) -> usize {
    h / x
}

fn ceil(h: usize, x: usize) -> usize {
    h.div_ceil(x)
}

/// `floor(h/x) >= y <=> floor(h/y) >= x` and the ceiling analogue.
pub fn two_part_simple(ranges: &FactsRanges) -> [Tally; 2] {
    let parts = par::map_range(ranges.h_max, |i| {
        let h = i + 1;
        let mut a = Tally::new("two_part_simple_floor");
        let mut b = Tally::new("two_part_simple_ceil");
        for x in 1..=ranges.xy_max {
            for y in 1..=ranges.xy_max {
                a.check((floor(h, x) >= y) == (floor(h, y) >= x), || {
                    format!("h={h} x={x} y={y}")
                });
                b.check((ceil(h, x) <= y) == (ceil(h, y) <= x), || {
                    format!("h={h} x={x} y={y}")
                });
            }
        }
        [a, b]
    });
    let mut out = [
        Tally::new("two_part_simple_floor"),
        Tally::new("two_part_simple_ceil"),
    ];
    for [a, b] in parts {
        out[0].merge(a);
        out[1].merge(b);
    }
    out
}

/// `ceil(h/(t+a+1)) <= floor(h/t)` for `h >= max(t(t-1), 2t+2)`, `a < t`.
pub fn bounds_on_h(ranges: &FactsRanges) -> Tally {
    let mut out = Tally::new("bounds_on_h");
    for t in 1..=ranges.t_max {
        for h in (t * (t - 1)).max(2 * t + 2)..=ranges.h_max {
            for a in 0..t {
                out.check(ceil(h, t + a + 1) <= floor(h, t), || {
                    format!("h={h} t={t} a={a}")
                });
            }
        }
    }
    out
}

/// Part sizes of a split of `h` into exactly `k` parts of size `t` or `t+1`.
pub fn split_into_parts(h: usize, t: usize, k: usize) -> Option<Vec<usize>> {
    let big = h.checked_sub(k * t)?;
    if big > k {
        return None;
    }
    let mut sizes = vec![t + 1; big];
    sizes.resize(k, t);
    Some(sizes)
}

/// Whether `h = i*t + j*(t+1)` has a solution in non-negative integers.
fn representable(h: usize, t: usize) -> bool {
    (0..=h / t).any(|i| (h - i * t).is_multiple_of(t + 1))
}

/// Splits into sets of size `t` or `t+1`. Checked: every `k` in
/// `ceil(h/(t+1))..=floor(h/t)` is realised, no other `k` is, the range is
/// non-empty for `h >= t(t-1)`, and a split exists exactly when it is
/// non-empty. Values of `h < t(t-1)` that still split are listed as notes.
pub fn numth(ranges: &FactsRanges) -> Tally {
    let mut out = Tally::new("numth");
    for t in 1..=ranges.t_max {
        let mut below = Vec::new();
        for h in 1..=ranges.h_max {
            let (lo, hi) = (ceil(h, t + 1), floor(h, t));
            for k in lo..=hi {
                let split = split_into_parts(h, t, k);
                let ok = split.as_ref().is_some_and(|s| {
                    s.len() == k
                        && s.iter().sum::<usize>() == h
                        && s.iter().all(|&x| x == t || x == t + 1)
                });
                out.check(ok, || format!("h={h} t={t} k={k}: no split"));
            }
            for k in (1..lo).chain(hi + 1..=h) {
                out.check(split_into_parts(h, t, k).is_none(), || {
                    format!("h={h} t={t} k={k}: split outside range")
                });
            }
            if h >= t * (t - 1) {
                out.check(lo <= hi, || format!("h={h} t={t}: empty part-count range"));
            }
            out.check(representable(h, t) == (lo <= hi), || {
                format!("h={h} t={t}: feasibility mismatch")
            });
            if h < t * (t - 1) && lo <= hi {
                below.push(h);
            }
        }
        if !below.is_empty() {
            out.notes.push(format!(
                "t={t}: {} values of h below t(t-1) = {} also split (first: {:?})",
                below.len(),
                t * (t - 1),
                &below[..below.len().min(5)]
            ));
        }
    }
    out
}

fn grid(den: usize, extra: &[R]) -> Vec<R> {
    let d = den as i128;
    let mut g: Vec<R> = (0..=d).map(|k| R::new(k, d)).collect();
    g.extend_from_slice(extra);
    g.sort();
    g.dedup();
    g
}

fn ri(v: usize) -> R {
    R::from_integer(v as i128)
}

fn clique_term(params: &PowerCycleParams, a: usize, p: &R) -> R {
    krs_g(a, params.ell(a) - 1, p).expect("r + s >= 1")
}

fn sweep_params(ranges: &FactsRanges, min_h: impl Fn(usize) -> usize) -> Vec<PowerCycleParams> {
    let mut out = Vec::new();
    for t in 1..=ranges.t_max {
        for h in min_h(t).max(3)..=ranges.h_max {
            out.push(PowerCycleParams::new(h, t).expect("h >= 3"));
        }
    }
    out
}

fn merge_all(name: &str, parts: Vec<Tally>) -> Tally {
    let mut out = Tally::new(name);
    for p in parts {
        out.merge(p);
    }
    out
}

/// On `p` in `[1/2, 1]`: `(1-p)/(ell[0]-1) <= p/(t+1)` when
/// `h >= (t+1)^2 + 1`, and `<=` each clique term with `a >= 1` when
/// `h >= (t+1)(t+a) + 1`.
pub fn tlarge(ranges: &FactsRanges) -> Tally {
    let half = R::new(1, 2);
    let ps: Vec<R> = grid(ranges.denominator, &[half])
        .into_iter()
        .filter(|p| *p >= half)
        .collect();
    let params = sweep_params(ranges, |t| (t + 1) * (t + 1) + 1);
    let parts = par::map(&params, |pr| {
        let (h, t) = (pr.h, pr.t);
        let mut out = Tally::new("tlarge");
        for p in &ps {
            let left = (R::from_integer(1) - p) / ri(pr.ell(0) - 1);
            out.check(left <= p / ri(t + 1), || {
                format!("h={h} t={t} p={p} chromatic")
            });
            for a in 1..=t {
                if h > (t + 1) * (t + a) {
                    out.check(left <= clique_term(pr, a, p), || {
                        format!("h={h} t={t} a={a} p={p}")
                    });
                }
            }
        }
        out
    });
    merge_all("tlarge", parts)
}

/// For `h >= 2t+2`, `min(p/(t+1), clique terms) = p/(t+1)` on `[0, p_0]`;
/// when `(t+1)` does not divide `h` and `h >= t(t+1)` the same holds for
/// `gamma_closed`.
pub fn pzerovalue(ranges: &FactsRanges) -> Tally {
    let params = sweep_params(ranges, |t| 2 * t + 2);
    let full = grid(ranges.denominator, &[]);
    let parts = par::map(&params, |pr| {
        let (h, t) = (pr.h, pr.t);
        let p0 = R::new(1, pr.ell(t) as i128);
        let mut out = Tally::new("pzerovalue");
        let in_gamma_range = h >= t * (t + 1) && !pr.divisible();
        for p in full.iter().filter(|p| **p < p0).chain(std::iter::once(&p0)) {
            let lin = p / ri(t + 1);
            let fact_min =
                (0..=t)
                    .map(|a| clique_term(pr, a, p))
                    .fold(lin, |m, v| if v < m { v } else { m });
            out.check(fact_min == lin, || format!("h={h} t={t} p={p}"));
            if in_gamma_range {
                let g = gamma_closed(pr, p).expect("in range").0;
                out.check(g == lin, || format!("gamma_closed h={h} t={t} p={p}"));
            }
        }
        out
    });
    merge_all("pzerovalue", parts)
}

/// `(ell[0]-ell[a])(t-a) >= (ell[a]-ell[t]) a` for `h >= 4t^2+10t+24`, and
/// the resulting two/three-term form agreeing with `gamma_closed` on the grid.
pub fn suffices(ranges: &FactsRanges) -> Tally {
    let full = grid(ranges.denominator, &[R::new(1, 2)]);
    let mut params = Vec::new();
    for &t in &ranges.suffices_t {
        for h in 4 * t * t + 10 * t + 24..=ranges.h_max {
            params.push(PowerCycleParams::new(h, t).expect("h >= 3"));
        }
    }
    let parts = par::map(&params, |pr| {
        let (h, t) = (pr.h, pr.t);
        let mut out = Tally::new("suffices");
        out.check(middle_branches_dominated(pr), || format!("h={h} t={t}"));
        for p in &full {
            let a = gamma_three_term(pr, p).expect("in range").0;
            let b = gamma_closed(pr, p).expect("in range").0;
            out.check(a == b, || format!("three-term h={h} t={t} p={p}"));
        }
        out
    });
    merge_all("suffices", parts)
}

pub fn verify_facts(ranges: &FactsRanges) -> FactsReport {
    let [a, b] = two_part_simple(ranges);
    FactsReport {
        ranges: ranges.clone(),
        facts: vec![
            a,
            b,
            bounds_on_h(ranges),
            numth(ranges),
            tlarge(ranges),
            pzerovalue(ranges),
            suffices(ranges),
        ],
    }
}

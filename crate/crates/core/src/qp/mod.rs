//! `g_K(p) = min { x^T M_K(p) x : x >= 0, sum x = 1 }`.

mod degree;
mod exact;
mod numeric;
mod pcore;

pub use degree::{degree_report, DegreeReport};
pub use numeric::NumericOptions;
pub use pcore::{is_p_core, is_p_core_numeric, DEFAULT_PCORE_BOUND};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::crg::{Crg, VertexColor};
use crate::error::{Error, Result};
use crate::rational::{fmt_q, to_f64, Q};

use exact::FaceTable;

/// Largest CRG accepted by exact mode unless overridden.
pub const DEFAULT_EXACT_QP_BOUND: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Numeric,
}

/// A minimiser of the quadratic program and its value.
#[derive(Debug, Clone, PartialEq)]
pub struct GValue<T> {
    pub value: T,
    pub weights: Vec<T>,
    /// Vertices with positive weight.
    pub support: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOptions {
    pub bound: usize,
    /// Solve each white/black component separately and recombine.
    pub decompose: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            bound: DEFAULT_EXACT_QP_BOUND,
            decompose: true,
        }
    }
}

fn check_open_p(p: &Q) -> Result<()> {
    if !p.is_positive() || *p >= Q::one() {
        return Err(Error::Domain(format!(
            "p = {} must lie in (0, 1); use g_endpoint at 0 and 1",
            fmt_q(p)
        )));
    }
    Ok(())
}

/// Exact `g_K(p)` for rational `p` in `(0, 1)`.
pub fn g_exact(k: &Crg, p: &Q, opts: ExactOptions) -> Result<GValue<Q>> {
    check_open_p(p)?;
    if k.n() > opts.bound {
        return Err(Error::SizeExceeded {
            what: "CRG",
            size: k.n(),
            bound: opts.bound,
        });
    }
    let groups = if opts.decompose {
        k.component_sets()
    } else {
        vec![(0..k.n()).collect()]
    };
    // 1/g = sum over components of 1^T y; weights are y / (that total)
    let mut total = Q::zero();
    let mut y_full = vec![Q::zero(); k.n()];
    for set in &groups {
        let sub = k.sub_crg(set)?;
        let table = FaceTable::build(&sub.matrix(p)?);
        let (sum, y) = table.optimum();
        total += sum;
        for (local, &v) in set.iter().enumerate() {
            y_full[v] = y[local].clone();
        }
    }
    let weights: Vec<Q> = y_full.iter().map(|y| y / &total).collect();
    Ok(finish(total.recip(), weights))
}

/// Floating-point `g_K(p)`.
pub fn g_numeric(k: &Crg, p: f64, opts: NumericOptions) -> Result<GValue<f64>> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("p = {p} must lie in (0, 1)")));
    }
    if k.n() == 0 {
        return Err(Error::Domain("empty CRG".into()));
    }
    let (value, weights) = numeric::minimise(&k.matrix(&p)?, opts)?;
    let support = (0..k.n()).filter(|&i| weights[i] > 1e-12).collect();
    Ok(GValue {
        value,
        weights,
        support,
    })
}

/// `g_K` at `p = 0` or `p = 1`, evaluating the quadratic program literally:
/// zero whenever a vertex has a zero diagonal entry.
pub fn g_endpoint(k: &Crg, p: &Q) -> Result<GValue<Q>> {
    let zero_diag = if p.is_zero() {
        VertexColor::White
    } else if p.is_one() {
        VertexColor::Black
    } else {
        return Err(Error::Domain(format!(
            "endpoint p must be 0 or 1, got {}",
            fmt_q(p)
        )));
    };
    if k.n() == 0 {
        return Err(Error::Domain("empty CRG".into()));
    }
    if let Some(v) = (0..k.n()).find(|&v| k.vertex(v) == zero_diag) {
        let mut w = vec![Q::zero(); k.n()];
        w[v] = Q::one();
        return Ok(finish(Q::zero(), w));
    }
    // every diagonal entry is 1, so the face argument still applies
    let table = FaceTable::build(&k.matrix(p)?);
    let (sum, y) = table.optimum();
    let weights = y.iter().map(|v| v / &sum).collect();
    Ok(finish(sum.recip(), weights))
}

/// Exact `g` at any rational `p` in `[0, 1]`.
pub fn g_closed_interval(k: &Crg, p: &Q, opts: ExactOptions) -> Result<GValue<Q>> {
    if p.is_zero() || p.is_one() {
        g_endpoint(k, p)
    } else {
        g_exact(k, p, opts)
    }
}

fn finish(value: Q, weights: Vec<Q>) -> GValue<Q> {
    let support = (0..weights.len())
        .filter(|&i| weights[i].is_positive())
        .collect();
    GValue {
        value,
        weights,
        support,
    }
}

/// Either-mode result, for callers that pick the mode at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyG {
    Exact(GValue<Q>),
    Numeric(GValue<f64>),
}

impl AnyG {
    pub fn mode(&self) -> Mode {
        match self {
            AnyG::Exact(_) => Mode::Exact,
            AnyG::Numeric(_) => Mode::Numeric,
        }
    }

    pub fn value_f64(&self) -> f64 {
        match self {
            AnyG::Exact(g) => to_f64(&g.value),
            AnyG::Numeric(g) => g.value,
        }
    }
}

pub fn g_value(k: &Crg, p: &Q, mode: Mode) -> Result<AnyG> {
    match mode {
        Mode::Exact => g_closed_interval(k, p, ExactOptions::default()).map(AnyG::Exact),
        Mode::Numeric => g_numeric(k, to_f64(p), NumericOptions::default()).map(AnyG::Numeric),
    }
}

/// JSON emission: `{"p", "g", "weights", "support", "mode"}`; exact values
/// are `"num/den"` strings.
#[derive(Debug, Clone, Serialize)]
pub struct GValueJson {
    pub p: serde_json::Value,
    pub g: serde_json::Value,
    pub weights: Vec<serde_json::Value>,
    pub support: Vec<usize>,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl GValueJson {
    pub fn new(p: &Q, g: &AnyG) -> Self {
        use serde_json::Value;
        let s = |v: &Q| Value::String(fmt_q(v));
        let endpoint = p.is_zero() || p.is_one();
        match g {
            AnyG::Exact(g) => GValueJson {
                p: s(p),
                g: s(&g.value),
                weights: g.weights.iter().map(s).collect(),
                support: g.support.clone(),
                mode: Mode::Exact,
                note: endpoint
                    .then(|| "endpoint: quadratic program evaluated literally at p".to_string()),
            },
            AnyG::Numeric(g) => GValueJson {
                p: Value::from(to_f64(p)),
                g: Value::from(g.value),
                weights: g.weights.iter().map(|&w| Value::from(w)).collect(),
                support: g.support.clone(),
                mode: Mode::Numeric,
                note: None,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crg::EdgeColor;
    use crate::rational::{q, qi};

    fn krs_closed(r: i64, s: i64, p: &Q) -> Q {
        (qi(r) / p + qi(s) / (qi(1) - p)).recip()
    }

    #[test]
    fn krs_closed_form() {
        for r in 0..5 {
            for s in 0..5 {
                if r + s == 0 {
                    continue;
                }
                let k = Crg::k_rs(r as usize, s as usize).unwrap();
                for num in 1..10 {
                    let p = q(num, 10);
                    let g = g_exact(&k, &p, ExactOptions::default()).unwrap();
                    assert_eq!(g.value, krs_closed(r, s, &p));
                }
            }
        }
    }

    #[test]
    fn single_vertices() {
        let p = q(2, 7);
        assert_eq!(
            g_exact(&Crg::k_rs(1, 0).unwrap(), &p, Default::default())
                .unwrap()
                .value,
            p
        );
        assert_eq!(
            g_exact(&Crg::k_rs(0, 1).unwrap(), &p, Default::default())
                .unwrap()
                .value,
            q(5, 7)
        );
    }

    #[test]
    fn black_pair_with_white_edge() {
        let mut k = Crg::new(vec![VertexColor::Black; 2], EdgeColor::White);
        k.set_edge(0, 1, EdgeColor::White);
        let g = g_exact(&k, &q(1, 3), Default::default()).unwrap();
        assert_eq!(g.value, q(1, 2));
        assert_eq!(g.weights, vec![q(1, 2), q(1, 2)]);
    }

    #[test]
    fn k11_is_forb_c4() {
        let k = Crg::k_rs(1, 1).unwrap();
        for num in 1..20 {
            let p = q(num, 20);
            let g = g_exact(&k, &p, Default::default()).unwrap();
            assert_eq!(g.value, &p * (qi(1) - &p));
        }
    }

    #[test]
    fn endpoints() {
        let zero = qi(0);
        let one = qi(1);
        assert_eq!(
            g_endpoint(&Crg::k_rs(1, 0).unwrap(), &zero).unwrap().value,
            zero
        );
        assert_eq!(
            g_endpoint(&Crg::k_rs(0, 3).unwrap(), &zero).unwrap().value,
            q(1, 3)
        );
        assert_eq!(
            g_endpoint(&Crg::k_rs(1, 1).unwrap(), &zero).unwrap().value,
            zero
        );
        assert_eq!(
            g_endpoint(&Crg::k_rs(2, 0).unwrap(), &one).unwrap().value,
            q(1, 2)
        );
        assert!(g_endpoint(&Crg::k_rs(2, 0).unwrap(), &q(1, 2)).is_err());
    }

    #[test]
    fn errors() {
        let k = Crg::k_rs(7, 6).unwrap();
        assert!(matches!(
            g_exact(&k, &q(1, 2), Default::default()),
            Err(Error::SizeExceeded { .. })
        ));
        assert!(g_exact(&Crg::k_rs(1, 1).unwrap(), &qi(0), Default::default()).is_err());
        assert!(g_numeric(&Crg::k_rs(1, 1).unwrap(), 1.0, Default::default()).is_err());
    }

    #[test]
    fn numeric_matches_closed_form() {
        let k = Crg::k_rs(2, 3).unwrap();
        let g = g_numeric(&k, 0.3, Default::default()).unwrap();
        let expect = 1.0 / (2.0 / 0.3 + 3.0 / 0.7);
        assert!((g.value - expect).abs() < 1e-12);
    }

    #[test]
    fn degree_identities() {
        let p = q(1, 3);
        let k = Crg::k_rs(1, 1).unwrap();
        let g = g_exact(&k, &p, Default::default()).unwrap();
        assert_eq!(g.weights, vec![q(2, 3), q(1, 3)]);
        let d = degree_report(&k, &g.weights);
        assert_eq!(d.d_white[0], q(2, 3));
        assert_eq!(d.d_gray[0], q(1, 3));
        for v in 0..2 {
            assert_eq!(&d.d_gray[v] + &d.d_white[v] + &d.d_black[v], qi(1));
            assert_eq!(d.d_gray[v], qi(1) - &g.weights[v]);
        }
    }

    #[test]
    fn json_emission() {
        let k = Crg::k_rs(1, 1).unwrap();
        let g = g_value(&k, &q(1, 3), Mode::Exact).unwrap();
        let j = serde_json::to_value(GValueJson::new(&q(1, 3), &g)).unwrap();
        assert_eq!(j["g"], "2/9");
        assert_eq!(j["p"], "1/3");
        assert_eq!(j["mode"], "exact");
        assert_eq!(j["support"], serde_json::json!([0, 1]));
    }
}

use num_traits::{One, Signed};

use super::exact::FaceTable;
use super::{g_numeric, NumericOptions};
use crate::crg::Crg;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q};

/// Largest CRG `is_p_core` will enumerate.
pub const DEFAULT_PCORE_BOUND: usize = 14;

/// Whether `g_K(p)` is strictly smaller than `g` of every proper nonempty
/// induced sub-CRG, decided in exact arithmetic.
pub fn is_p_core(k: &Crg, p: &Q, bound: usize) -> Result<bool> {
    if !p.is_positive() || *p >= Q::one() {
        return Err(Error::Domain(format!(
            "p = {} must lie in (0, 1)",
            fmt_q(p)
        )));
    }
    let n = k.n();
    if n > bound {
        return Err(Error::SizeExceeded {
            what: "CRG",
            size: n,
            bound,
        });
    }
    if n <= 1 {
        return Ok(n == 1);
    }
    let table = FaceTable::build(&k.matrix(p)?);
    let best = table.best_subfaces();
    let full = (1usize << n) - 1;
    let whole = table.sum(best[full].expect("nonempty")).unwrap();
    // larger 1^T y means smaller g
    Ok((1..full).all(|s| {
        let sub = table.sum(best[s].expect("nonempty")).unwrap();
        sub < whole
    }))
}

/// Floating-point variant: strictness must exceed `tol`. Uses monotonicity
/// of `g` under vertex deletion, so only the `n` maximal proper subsets are
/// solved.
pub fn is_p_core_numeric(k: &Crg, p: f64, tol: f64, opts: NumericOptions) -> Result<bool> {
    let n = k.n();
    if n <= 1 {
        return Ok(n == 1);
    }
    let whole = g_numeric(k, p, opts)?.value;
    for drop in 0..n {
        let keep: Vec<usize> = (0..n).filter(|&v| v != drop).collect();
        let sub = g_numeric(&k.sub_crg(&keep)?, p, opts)?.value;
        if sub <= whole + tol {
            return Ok(false);
        }
    }
    Ok(true)
}

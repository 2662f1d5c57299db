//! Floating-point fallback: projected gradient descent on the simplex with
//! step halving, one restart per vertex plus the barycentre, and a final
//! stationary-system polish on the detected support.

use crate::crg::RateMatrix;
use crate::error::{Error, Result};
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericOptions {
    /// Stop when successive objective values differ by less than this.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions {
            tol: 1e-12,
            max_iter: 1_000_000,
        }
    }
}

pub(crate) fn minimise(m: &RateMatrix<f64>, opts: NumericOptions) -> Result<(f64, Vec<f64>)> {
    let n = m.n;
    let mut starts: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut x = vec![0.0; n];
            x[i] = 1.0;
            x
        })
        .collect();
    starts.push(vec![1.0 / n as f64; n]);

    let runs = par::try_map(&starts, |x0| descend(m, x0.clone(), opts))?;
    let (mut best_val, mut best_x) = runs
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("at least one start");
    if let Some((v, x)) = polish(m, &best_x) {
        if v < best_val {
            best_val = v;
            best_x = x;
        }
    }
    Ok((best_val, best_x))
}

fn value(m: &RateMatrix<f64>, x: &[f64]) -> f64 {
    m.quadratic_form(x)
}

fn gradient(m: &RateMatrix<f64>, x: &[f64]) -> Vec<f64> {
    (0..m.n)
        .map(|i| 2.0 * (0..m.n).map(|j| m.get(i, j) * x[j]).sum::<f64>())
        .collect()
}

fn descend(m: &RateMatrix<f64>, mut x: Vec<f64>, opts: NumericOptions) -> Result<(f64, Vec<f64>)> {
    let lipschitz = (0..m.n)
        .map(|i| (0..m.n).map(|j| m.get(i, j).abs()).sum::<f64>())
        .fold(0.0, f64::max)
        .max(1e-12);
    let mut f = value(m, &x);
    let mut step = 1.0 / (2.0 * lipschitz);
    for _ in 0..opts.max_iter {
        let g = gradient(m, &x);
        let mut trial_step = step;
        let (next, fnext) = loop {
            let y: Vec<f64> = x
                .iter()
                .zip(&g)
                .map(|(xi, gi)| xi - trial_step * gi)
                .collect();
            let y = project_simplex(&y);
            let fy = value(m, &y);
            if fy <= f || trial_step < 1e-18 {
                break (y, fy);
            }
            trial_step *= 0.5;
        };
        let done = (f - fnext).abs() < opts.tol;
        if fnext <= f {
            x = next;
            f = fnext;
        }
        if done {
            return Ok((f, x));
        }
        // let the step recover after halvings
        step = (trial_step * 2.0).min(1.0 / lipschitz);
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iter,
    })
}

/// Euclidean projection onto `{x >= 0, sum x = 1}`.
pub(crate) fn project_simplex(y: &[f64]) -> Vec<f64> {
    let mut u = y.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (k, &uk) in u.iter().enumerate() {
        cum += uk;
        let t = (cum - 1.0) / (k + 1) as f64;
        if uk - t > 0.0 {
            theta = t;
        }
    }
    y.iter().map(|v| (v - theta).max(0.0)).collect()
}

/// Re-solves `M_S y = 1` on the support of `x` in floating point.
fn polish(m: &RateMatrix<f64>, x: &[f64]) -> Option<(f64, Vec<f64>)> {
    let idx: Vec<usize> = (0..m.n).filter(|&i| x[i] > 1e-9).collect();
    let k = idx.len();
    let mut a: Vec<Vec<f64>> = idx
        .iter()
        .map(|&i| {
            let mut row: Vec<f64> = idx.iter().map(|&j| *m.get(i, j)).collect();
            row.push(1.0);
            row
        })
        .collect();
    for col in 0..k {
        let pivot = (col..k).max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        for r in 0..k {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..=k {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    let y: Vec<f64> = (0..k).map(|i| a[i][k] / a[i][i]).collect();
    if y.iter().any(|&v| v < 0.0) {
        return None;
    }
    let total: f64 = y.iter().sum();
    if total <= 0.0 {
        return None;
    }
    let mut out = vec![0.0; m.n];
    for (slot, v) in idx.iter().zip(&y) {
        out[*slot] = v / total;
    }
    Some((value(m, &out), out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_lands_on_simplex() {
        for y in [
            vec![0.3, 0.3, 0.3],
            vec![2.0, -1.0, 0.5],
            vec![-5.0, -5.0],
            vec![0.0],
        ] {
            let x = project_simplex(&y);
            assert!((x.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(x.iter().all(|&v| v >= 0.0));
        }
        assert_eq!(project_simplex(&[0.2, 0.8]), vec![0.2, 0.8]);
    }
}

//! Exact minimisation of `x^T M x` over the simplex by face enumeration.
//!
//! Every local minimiser in the relative interior of a face `S` satisfies
//! `M_S x = lambda 1` with `lambda = x^T M x > 0`, so for an invertible `M_S`
//! the candidate is `y = M_S^{-1} 1`, `x = y / 1^T y`, value `1 / 1^T y`.
//! A singular `M_S` has its kernel inside `1^perp`; moving along the kernel
//! keeps the value and reaches a smaller face, so skipping it loses nothing.

use num_traits::{One, Signed, Zero};

use crate::crg::RateMatrix;
use crate::par;
use crate::rational::Q;

/// Per-support stationary candidates: `sums[mask] = Some(1^T y)` when the
/// face system is invertible with `y >= 0`.
pub(crate) struct FaceTable {
    pub n: usize,
    sums: Vec<Option<Q>>,
    solutions: Vec<Option<Vec<Q>>>,
}

impl FaceTable {
    pub fn build(m: &RateMatrix<Q>) -> Self {
        let n = m.n;
        let total = 1usize << n;
        let solved: Vec<Option<Vec<Q>>> =
            par::map_range(
                total,
                |mask| {
                    if mask == 0 {
                        None
                    } else {
                        solve_face(m, mask)
                    }
                },
            );
        let sums = solved
            .iter()
            .map(|s| {
                s.as_ref()
                    .map(|y| y.iter().fold(Q::zero(), |acc, v| acc + v))
            })
            .collect();
        FaceTable {
            n,
            sums,
            solutions: solved,
        }
    }

    /// For every vertex subset, the face `T ⊆ S` with the largest `1^T y`
    /// (smallest value), via a subset-maximum sweep. Ties keep the smaller mask.
    pub fn best_subfaces(&self) -> Vec<Option<usize>> {
        let total = 1usize << self.n;
        let mut best: Vec<Option<usize>> = (0..total)
            .map(|m| self.sums[m].as_ref().map(|_| m))
            .collect();
        for bit in 0..self.n {
            for mask in 0..total {
                if mask >> bit & 1 == 0 {
                    continue;
                }
                let sub = mask ^ (1 << bit);
                best[mask] = self.better(best[mask], best[sub]);
            }
        }
        best
    }

    fn better(&self, a: Option<usize>, b: Option<usize>) -> Option<usize> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(i), Some(j)) => {
                let (si, sj) = (
                    self.sums[i].as_ref().unwrap(),
                    self.sums[j].as_ref().unwrap(),
                );
                if sj > si || (sj == si && j < i) {
                    Some(j)
                } else {
                    Some(i)
                }
            }
        }
    }

    /// Optimum over the whole vertex set: `(1^T y, weights)`.
    pub fn optimum(&self) -> (Q, Vec<Q>) {
        let full = (1usize << self.n) - 1;
        let best = (1..=full)
            .fold(None, |acc, m| {
                self.better(acc, self.sums[m].as_ref().map(|_| m))
            })
            .expect("singleton faces always have positive diagonal");
        self.face_weights(best)
    }

    /// `(1^T y, y scattered to length n)` for a solvable face.
    pub fn face_weights(&self, mask: usize) -> (Q, Vec<Q>) {
        let sum = self.sums[mask].clone().expect("solvable face");
        let y = self.solutions[mask].as_ref().unwrap();
        let mut out = vec![Q::zero(); self.n];
        let mut k = 0;
        for (v, slot) in out.iter_mut().enumerate() {
            if mask >> v & 1 == 1 {
                *slot = y[k].clone();
                k += 1;
            }
        }
        (sum, out)
    }

    pub fn sum(&self, mask: usize) -> Option<&Q> {
        self.sums[mask].as_ref()
    }
}

/// Solves `M_S y = 1` by Gaussian elimination; `None` if singular or if any
/// `y_i < 0`.
fn solve_face(m: &RateMatrix<Q>, mask: usize) -> Option<Vec<Q>> {
    let idx: Vec<usize> = (0..m.n).filter(|v| mask >> v & 1 == 1).collect();
    let k = idx.len();
    let mut a: Vec<Vec<Q>> = idx
        .iter()
        .map(|&i| {
            let mut row: Vec<Q> = idx.iter().map(|&j| m.get(i, j).clone()).collect();
            row.push(Q::one());
            row
        })
        .collect();
    for col in 0..k {
        let pivot = (col..k).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for c in col..=k {
            let v = &a[col][c] * &inv;
            a[col][c] = v;
        }
        for r in 0..k {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..=k {
                let v = &a[col][c] * &f;
                a[r][c] -= v;
            }
        }
    }
    let y: Vec<Q> = a.into_iter().map(|mut row| row.pop().unwrap()).collect();
    if y.iter().any(|v| v.is_negative()) {
        return None;
    }
    Some(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crg::{Crg, EdgeColor, VertexColor};
    use crate::rational::q;

    #[test]
    fn singular_faces_are_skipped() {
        // two black vertices, black edge: M_S is the all-(1-p) matrix
        let mut k = Crg::new(vec![VertexColor::Black; 2], EdgeColor::Black);
        k.set_edge(0, 1, EdgeColor::Black);
        let m = k.matrix(&q(1, 4)).unwrap();
        let table = FaceTable::build(&m);
        assert!(table.sum(0b11).is_none());
        let (sum, _) = table.optimum();
        assert_eq!(sum, q(4, 3));
    }

    #[test]
    fn subset_sweep_is_monotone() {
        let mut k = Crg::k_rs(1, 2).unwrap();
        k.set_edge(1, 2, EdgeColor::White);
        let m = k.matrix(&q(1, 3)).unwrap();
        let t = FaceTable::build(&m);
        let best = t.best_subfaces();
        for mask in 1..8usize {
            for bit in 0..3 {
                if mask >> bit & 1 == 1 && mask != 1 << bit {
                    let sub = mask ^ (1 << bit);
                    let a = t.sum(best[mask].unwrap()).unwrap();
                    let b = t.sum(best[sub].unwrap()).unwrap();
                    assert!(a >= b);
                }
            }
        }
    }
}

use serde::Serialize;

use crate::crg::{Crg, EdgeColor, VertexColor};
use crate::rational::Scalar;

/// Weighted degrees of every vertex under a weight vector `x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeReport<T> {
    /// Weight on gray neighbours.
    pub d_gray: Vec<T>,
    /// Weight on white neighbours, plus own weight for white vertices.
    pub d_white: Vec<T>,
    /// Weight on black neighbours, plus own weight for black vertices.
    pub d_black: Vec<T>,
    /// Number of gray neighbours.
    pub deg_gray: Vec<usize>,
    /// `codegree[v][w]`: weight on common gray neighbours.
    pub codegree: Vec<Vec<T>>,
    /// `co_count[v][w]`: number of common gray neighbours.
    pub co_count: Vec<Vec<usize>>,
}

pub fn degree_report<T: Scalar>(k: &Crg, x: &[T]) -> DegreeReport<T> {
    let n = k.n();
    assert_eq!(x.len(), n, "weight vector length");
    let mut d_gray = vec![T::zero(); n];
    let mut d_white = vec![T::zero(); n];
    let mut d_black = vec![T::zero(); n];
    let mut deg_gray = vec![0; n];
    for v in 0..n {
        match k.vertex(v) {
            VertexColor::White => d_white[v] = x[v].clone(),
            VertexColor::Black => d_black[v] = x[v].clone(),
        }
        for w in 0..n {
            if w == v {
                continue;
            }
            let slot = match k.edge(v, w) {
                EdgeColor::Gray => {
                    deg_gray[v] += 1;
                    &mut d_gray[v]
                }
                EdgeColor::White => &mut d_white[v],
                EdgeColor::Black => &mut d_black[v],
            };
            *slot = slot.add(&x[w]);
        }
    }
    let mut codegree = vec![vec![T::zero(); n]; n];
    let mut co_count = vec![vec![0; n]; n];
    for v in 0..n {
        for w in 0..n {
            if v == w {
                continue;
            }
            for u in 0..n {
                if u != v
                    && u != w
                    && k.edge(u, v) == EdgeColor::Gray
                    && k.edge(u, w) == EdgeColor::Gray
                {
                    codegree[v][w] = codegree[v][w].add(&x[u]);
                    co_count[v][w] += 1;
                }
            }
        }
    }
    DegreeReport {
        d_gray,
        d_white,
        d_black,
        deg_gray,
        codegree,
        co_count,
    }
}

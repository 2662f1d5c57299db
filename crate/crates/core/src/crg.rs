//! Colored regularity graphs: complete graphs with white/black vertices and
//! white/gray/black edges.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexColor {
    White,
    Black,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeColor {
    White,
    Gray,
    Black,
}

/// Colored regularity graph. Edge colors live in a dense upper triangle.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Crg {
    vertices: Vec<VertexColor>,
    edges: Vec<EdgeColor>,
}

fn tri_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

impl Crg {
    pub fn new(vertices: Vec<VertexColor>, default: EdgeColor) -> Self {
        let n = vertices.len();
        Crg {
            vertices,
            edges: vec![default; n * n.saturating_sub(1) / 2],
        }
    }

    /// `r` white then `s` black vertices, every pair gray.
    pub fn k_rs(r: usize, s: usize) -> Result<Self> {
        if r + s == 0 {
            return Err(Error::Domain("K(r,s) needs r + s >= 1".into()));
        }
        let mut v = vec![VertexColor::White; r];
        v.extend(std::iter::repeat_n(VertexColor::Black, s));
        Ok(Crg::new(v, EdgeColor::Gray))
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, v: usize) -> VertexColor {
        self.vertices[v]
    }

    pub fn vertices(&self) -> &[VertexColor] {
        &self.vertices
    }

    pub fn edge(&self, i: usize, j: usize) -> EdgeColor {
        assert!(i != j, "no self-pairs in a CRG");
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.edges[tri_index(self.n(), a, b)]
    }

    pub fn set_edge(&mut self, i: usize, j: usize, c: EdgeColor) {
        assert!(i != j, "no self-pairs in a CRG");
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        let n = self.n();
        self.edges[tri_index(n, a, b)] = c;
    }

    pub fn set_vertex(&mut self, v: usize, c: VertexColor) {
        self.vertices[v] = c;
    }

    pub fn count_vertices(&self, c: VertexColor) -> usize {
        self.vertices.iter().filter(|&&x| x == c).count()
    }

    /// Unordered pairs `(i, j)`, `i < j`, with the given color.
    pub fn edges_of(&self, c: EdgeColor) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.edge(i, j) == c {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `M_K(p)`: `p` on white edges and white diagonal, `1-p` on black edges
    /// and black diagonal, `0` on gray edges.
    pub fn matrix<T: Scalar>(&self, p: &T) -> Result<RateMatrix<T>> {
        if *p < T::zero() || *p > T::one() {
            return Err(Error::Domain(format!("p = {p:?} is outside [0, 1]")));
        }
        let n = self.n();
        let q = T::one().sub(p);
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let e = if i == j {
                    match self.vertices[i] {
                        VertexColor::White => p.clone(),
                        VertexColor::Black => q.clone(),
                    }
                } else {
                    match self.edge(i, j) {
                        EdgeColor::White => p.clone(),
                        EdgeColor::Black => q.clone(),
                        EdgeColor::Gray => T::zero(),
                    }
                };
                entries.push(e);
            }
        }
        Ok(RateMatrix {
            p: p.clone(),
            n,
            entries,
        })
    }

    /// Vertex sets of the components under white and black edges, each
    /// sorted, ordered by smallest member.
    pub fn component_sets(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut dsu = DisjointSets::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if self.edge(i, j) != EdgeColor::Gray {
                    dsu.union(i, j);
                }
            }
        }
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            by_root[dsu.find(v)].push(v);
        }
        let mut sets: Vec<Vec<usize>> = by_root.into_iter().filter(|s| !s.is_empty()).collect();
        sets.sort_by_key(|s| s[0]);
        sets
    }

    pub fn components(&self) -> Vec<Crg> {
        self.component_sets()
            .iter()
            .map(|s| self.sub_crg(s).expect("component sets are nonempty"))
            .collect()
    }

    /// Induced sub-CRG on `subset`, in the given order.
    pub fn sub_crg(&self, subset: &[usize]) -> Result<Crg> {
        if subset.is_empty() {
            return Err(Error::Domain("sub-CRG of an empty vertex set".into()));
        }
        let mut seen = vec![false; self.n()];
        for &v in subset {
            if v >= self.n() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::Domain(format!("bad vertex subset {subset:?}")));
            }
        }
        let mut k = Crg::new(
            subset.iter().map(|&v| self.vertices[v]).collect(),
            EdgeColor::Gray,
        );
        for (a, &i) in subset.iter().enumerate() {
            for (b, &j) in subset.iter().enumerate().skip(a + 1) {
                k.set_edge(a, b, self.edge(i, j));
            }
        }
        Ok(k)
    }

    pub fn to_json(&self) -> CrgJson {
        let mut overrides = Vec::new();
        let n = self.n();
        for i in 0..n {
            for j in i + 1..n {
                let c = self.edge(i, j);
                if c != EdgeColor::Gray {
                    overrides.push((i, j, c));
                }
            }
        }
        CrgJson {
            vertices: self.vertices.clone(),
            edges: CrgEdgesJson {
                default: EdgeColor::Gray,
                overrides,
            },
        }
    }

    pub fn from_json(json: &CrgJson) -> Result<Crg> {
        let mut k = Crg::new(json.vertices.clone(), json.edges.default);
        let n = k.n();
        for &(i, j, c) in &json.edges.overrides {
            if i >= j || j >= n {
                return Err(Error::Parse(format!(
                    "edge override ({i},{j}) must satisfy i < j < {n}"
                )));
            }
            k.set_edge(i, j, c);
        }
        Ok(k)
    }
}

impl fmt::Debug for Crg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: String = self
            .vertices
            .iter()
            .map(|c| match c {
                VertexColor::White => 'w',
                VertexColor::Black => 'b',
            })
            .collect();
        let es: String = self
            .edges
            .iter()
            .map(|c| match c {
                EdgeColor::White => 'w',
                EdgeColor::Gray => 'g',
                EdgeColor::Black => 'b',
            })
            .collect();
        write!(f, "Crg[{vs}|{es}]")
    }
}

/// Wire format:
/// `{"vertices": ["white", ...], "edges": {"default": "gray", "overrides": [[i, j, "black"], ...]}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrgJson {
    pub vertices: Vec<VertexColor>,
    pub edges: CrgEdgesJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrgEdgesJson {
    pub default: EdgeColor,
    #[serde(default)]
    pub overrides: Vec<(usize, usize, EdgeColor)>,
}

/// Symmetric `n x n` matrix `M_K(p)`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RateMatrix<T> {
    pub p: T,
    pub n: usize,
    pub entries: Vec<T>,
}

impl<T> RateMatrix<T> {
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }
}

impl<T: Scalar> RateMatrix<T> {
    /// `x^T M x`.
    pub fn quadratic_form(&self, x: &[T]) -> T {
        let mut acc = T::zero();
        for i in 0..self.n {
            if x[i].is_zero() {
                continue;
            }
            let mut row = T::zero();
            for j in 0..self.n {
                row = row.add(&self.get(i, j).mul(&x[j]));
            }
            acc = acc.add(&x[i].mul(&row));
        }
        acc
    }
}

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, Q};

    fn black_pair(c: EdgeColor) -> Crg {
        let mut k = Crg::new(vec![VertexColor::Black; 2], c);
        k.set_edge(0, 1, c);
        k
    }

    #[test]
    fn k_rs_shape() {
        let k = Crg::k_rs(1, 0).unwrap();
        assert_eq!(k.n(), 1);
        assert_eq!(k.vertex(0), VertexColor::White);
        let k = Crg::k_rs(2, 3).unwrap();
        assert_eq!(k.n(), 5);
        assert_eq!(k.edges_of(EdgeColor::Gray).len(), 10);
        assert_eq!(k.count_vertices(VertexColor::Black), 3);
        assert!(Crg::k_rs(0, 0).is_err());
    }

    #[test]
    fn matrix_entries() {
        let p = q(1, 3);
        let m = Crg::k_rs(0, 1).unwrap().matrix(&p).unwrap();
        assert_eq!(m.entries, vec![q(2, 3)]);
        let m = Crg::k_rs(1, 1).unwrap().matrix(&p).unwrap();
        assert_eq!(m.entries, vec![q(1, 3), q(0, 1), q(0, 1), q(2, 3)]);
        let m = black_pair(EdgeColor::White).matrix(&p).unwrap();
        assert_eq!(m.entries, vec![q(2, 3), q(1, 3), q(1, 3), q(2, 3)]);
        assert!(Crg::k_rs(1, 1).unwrap().matrix(&q(3, 2)).is_err());
    }

    #[test]
    fn half_makes_all_nonzero_entries_equal() {
        let mut k = Crg::new(
            vec![VertexColor::White, VertexColor::Black, VertexColor::Black],
            EdgeColor::White,
        );
        k.set_edge(1, 2, EdgeColor::Black);
        k.set_edge(0, 2, EdgeColor::Gray);
        let m = k.matrix(&q(1, 2)).unwrap();
        assert!(m.entries.iter().all(|e| *e == q(0, 1) || *e == q(1, 2)));
    }

    #[test]
    fn complementary_matrices_sum_to_one_off_gray() {
        let mut k = Crg::new(
            vec![VertexColor::White, VertexColor::Black, VertexColor::Black],
            EdgeColor::White,
        );
        k.set_edge(0, 1, EdgeColor::Gray);
        k.set_edge(1, 2, EdgeColor::Black);
        let p = q(2, 7);
        let a = k.matrix(&p).unwrap();
        let b = k.matrix(&(Q::from_integer(1.into()) - &p)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s = a.get(i, j) + b.get(i, j);
                if i != j && k.edge(i, j) == EdgeColor::Gray {
                    assert_eq!(s, q(0, 1));
                } else {
                    assert_eq!(s, q(1, 1));
                }
            }
        }
    }

    #[test]
    fn components_examples() {
        let k = Crg::k_rs(2, 3).unwrap();
        assert_eq!(k.component_sets().len(), 5);
        assert_eq!(
            black_pair(EdgeColor::Black).component_sets(),
            vec![vec![0, 1]]
        );
        let mut k = Crg::new(vec![VertexColor::Black; 3], EdgeColor::Gray);
        k.set_edge(0, 1, EdgeColor::Black);
        assert_eq!(k.component_sets(), vec![vec![0, 1], vec![2]]);
        let comps = k.components();
        assert_eq!(comps[0], black_pair(EdgeColor::Black));
    }

    #[test]
    fn sub_crg_examples() {
        let k = Crg::k_rs(2, 3).unwrap();
        assert_eq!(k.sub_crg(&[0, 1, 2, 3, 4]).unwrap(), k);
        assert_eq!(k.sub_crg(&[0, 1]).unwrap(), Crg::k_rs(2, 0).unwrap());
        assert_eq!(k.sub_crg(&[3]).unwrap().vertex(0), VertexColor::Black);
        assert!(k.sub_crg(&[]).is_err());
        assert!(k.sub_crg(&[1, 1]).is_err());
    }

    #[test]
    fn json_round_trip_and_schema() {
        let mut k = Crg::k_rs(1, 2).unwrap();
        k.set_edge(1, 2, EdgeColor::White);
        let s = serde_json::to_string(&k.to_json()).unwrap();
        assert_eq!(
            s,
            r#"{"vertices":["white","black","black"],"edges":{"default":"gray","overrides":[[1,2,"white"]]}}"#
        );
        let parsed: CrgJson = serde_json::from_str(&s).unwrap();
        assert_eq!(Crg::from_json(&parsed).unwrap(), k);
        let bad: CrgJson = serde_json::from_str(
            r#"{"vertices":["white","black"],"edges":{"default":"gray","overrides":[[1,0,"white"]]}}"#,
        )
        .unwrap();
        assert!(Crg::from_json(&bad).is_err());
        let all_black: CrgJson =
            serde_json::from_str(r#"{"vertices":["black","black"],"edges":{"default":"black"}}"#)
                .unwrap();
        assert_eq!(
            Crg::from_json(&all_black).unwrap(),
            black_pair(EdgeColor::Black)
        );
    }
}

use super::PowerCycleParams;
use crate::error::{Error, Result};

/// A partition of `V(C_h^t)` into independent sets and cliques.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliquePartition {
    pub independent: Vec<Vec<usize>>,
    pub cliques: Vec<Vec<usize>>,
}

/// Explicit partition of `C_h^t` into `a` independent sets and `ell[a]`
/// cliques: consecutive blocks of `t + a + 1` vertices, each contributing a
/// leading `(t+1)`-clique and one vertex to each independent set.
pub fn spectrum_partition_witness(params: &PowerCycleParams, a: usize) -> Result<CliquePartition> {
    let (h, t) = (params.h, params.t);
    if a > t || h < (t * (t + 1)).max(4) {
        return Err(Error::Domain(format!(
            "witness needs 0 <= a <= t and h >= max(t(t+1), 4); got h = {h}, t = {t}, a = {a}"
        )));
    }
    let block = t + a + 1;
    let k = params.ell(a) - 1;
    let mut blocks: Vec<Vec<usize>> = (0..k)
        .map(|i| (i * block..(i + 1) * block).collect())
        .collect();
    blocks.push((k * block..h).collect());

    let cliques = blocks
        .iter()
        .map(|b| b[..b.len().min(t + 1)].to_vec())
        .collect();
    let independent = (1..=a)
        .map(|j| {
            blocks
                .iter()
                .filter_map(|b| b.get(t + j).copied())
                .collect()
        })
        .collect();
    let part = CliquePartition {
        independent,
        cliques,
    };

    let g = params.graph();
    let mut seen = vec![false; h];
    for v in part.independent.iter().chain(&part.cliques).flatten() {
        seen[*v] = true;
    }
    let valid = seen.iter().all(|&b| b)
        && part.independent.iter().all(|s| g.is_independent(s))
        && part.cliques.iter().all(|s| g.is_clique(s));
    if !valid {
        return Err(Error::Domain(format!(
            "construction failed for h = {h}, t = {t}, a = {a}"
        )));
    }
    Ok(part)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{partitionable, DEFAULT_EXACT_BOUND};

    #[test]
    fn h8_t1_a1_matches_construction() {
        let p = PowerCycleParams::new(8, 1).unwrap();
        let w = spectrum_partition_witness(&p, 1).unwrap();
        // 1-indexed {1,2},{4,5},{7,8} and {3,6}
        assert_eq!(w.cliques, vec![vec![0, 1], vec![3, 4], vec![6, 7]]);
        assert_eq!(w.independent, vec![vec![2, 5]]);
    }

    #[test]
    fn h6_t1_a0_consecutive_pairs() {
        let p = PowerCycleParams::new(6, 1).unwrap();
        let w = spectrum_partition_witness(&p, 0).unwrap();
        assert_eq!(w.cliques, vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
        assert!(w.independent.is_empty());
    }

    #[test]
    fn consistent_with_partition_search() {
        for t in 1..=3 {
            for h in (t * (t + 1)).max(4)..=20 {
                let p = PowerCycleParams::new(h, t).unwrap();
                for a in 0..=t {
                    let w = spectrum_partition_witness(&p, a).unwrap();
                    assert_eq!(w.independent.len(), a);
                    assert_eq!(w.cliques.len(), p.ell(a));
                    assert!(partitionable(&p.graph(), a, p.ell(a), DEFAULT_EXACT_BOUND).unwrap());
                }
            }
        }
    }

    #[test]
    fn rejects_out_of_range() {
        let p = PowerCycleParams::new(5, 2).unwrap();
        assert!(spectrum_partition_witness(&p, 0).is_err());
        let p = PowerCycleParams::new(12, 3).unwrap();
        assert!(spectrum_partition_witness(&p, 4).is_err());
    }
}

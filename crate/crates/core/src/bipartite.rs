//! Complete bipartite graphs `K(n1,n2)`.

use crate::error::{Error, Result};
use crate::graph::PartiteSpec;
use crate::labeling::Labeling;
use crate::partition::{self, equal_sum_partition, Budget};
use crate::theta::{CaseTag, ThetaResult};

/// Index of `K(n1,n2)` for `2 ≤ n1 ≤ n2` (arguments may come in either order).
pub fn theta_bipartite(n1: usize, n2: usize) -> Result<ThetaResult> {
    let (n1, n2) = (n1.min(n2) as u64, n1.max(n2) as u64);
    if n1 < 2 {
        return Err(Error::domain(
            "the bipartite formula",
            format!("smaller side has {n1} vertex, need at least 2"),
        ));
    }
    let n = n1 + n2;
    let lhs = n * (n + 1);
    let rhs = 2 * n2 * (n2 + 1);
    Ok(if lhs >= rhs {
        if n % 4 == 0 || n % 4 == 3 {
            ThetaResult::exact(0, CaseTag::BipartiteBalanced)
        } else {
            ThetaResult::exact(1, CaseTag::BipartiteParity)
        }
    } else {
        ThetaResult::exact((rhs - lhs).div_ceil(2 * n1), CaseTag::BipartiteDeficit)
    })
}

/// Splits the label set `set` between the parts of `spec` with equal part
/// sums, returning the labeling in part-by-part vertex order.
pub fn label_with_set(spec: &PartiteSpec, set: &[u64]) -> Result<Option<Labeling>> {
    match equal_sum_partition(set, spec.sizes()) {
        Some(blocks) => Ok(Some(Labeling::from_parts(&blocks)?)),
        None => Ok(None),
    }
}

/// Pool sizes up to which the unstructured fallback search is attempted.
const FALLBACK_LIMIT: usize = 24;

/// A labeling of `K(n1,n2)` with labels drawn from `{1..target_max}` and
/// equal side sums. The smaller side gets the first vertex ids.
///
/// The label sets `{1..n}` and `{1..n−1, n+1}` are tried first. If both
/// fail, the larger side takes `{1..n2}` and the smaller side takes a
/// shifted top block; a bounded exhaustive search is the last resort.
pub fn label_bipartite(n1: usize, n2: usize, target_max: u64) -> Result<Option<Labeling>> {
    let spec = PartiteSpec::new(vec![n1, n2])?;
    let (n1, n2) = (spec.sizes()[0], spec.sizes()[1]);
    let n = (n1 + n2) as u64;
    if target_max < n {
        return Ok(None);
    }
    let first: Vec<u64> = (1..=n).collect();
    if let Some(l) = label_with_set(&spec, &first)? {
        return Ok(Some(l));
    }
    if target_max > n {
        let second: Vec<u64> = (1..n).chain([n + 1]).collect();
        if let Some(l) = label_with_set(&spec, &second)? {
            return Ok(Some(l));
        }
    }
    if let Some((small, large)) = shifted_sides(n1 as u64, n2 as u64) {
        if small.iter().all(|&x| x <= target_max) {
            return Ok(Some(Labeling::from_parts(&[small, large])?));
        }
    }
    if (target_max as usize) <= FALLBACK_LIMIT {
        for m in n + 2..=target_max {
            if let Some(blocks) = partition::labels_with_max(m, spec.sizes(), Budget::unlimited())? {
                return Ok(Some(Labeling::from_parts(&blocks)?));
            }
        }
    }
    Ok(None)
}

/// Larger side `{1..n2}`; the smaller side `{n2+1..n}` is shifted up by
/// the quotient of the deficit and repaired by its remainder. `None` when
/// the top block already outweighs `{1..n2}`.
fn shifted_sides(n1: u64, n2: u64) -> Option<(Vec<u64>, Vec<u64>)> {
    let n = n1 + n2;
    let target = n2 * (n2 + 1) / 2;
    let base = (n2 + 1..=n).sum::<u64>();
    if base > target {
        return None;
    }
    let (q, r) = ((target - base) / n1, (target - base) % n1);
    let mut small: Vec<u64> = (n2 + 1 + q..=n + q).collect();
    if r > 0 {
        let out = n + q - r + 1;
        small.retain(|&x| x != out);
        small.push(n + q + 1);
    }
    Some((small, (1..=n2).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_complete_multipartite;
    use crate::labeling::{partite_sums_check, verify_s_magic};

    fn theta(a: usize, b: usize) -> u64 {
        theta_bipartite(a, b).unwrap().theta().unwrap()
    }

    #[test]
    fn formula_examples() {
        assert_eq!(theta(2, 2), 0);
        assert_eq!(theta(2, 3), 1);
        assert_eq!(theta(2, 6), 3);
        assert_eq!(theta_bipartite(2, 6).unwrap().case, CaseTag::BipartiteDeficit);
        assert!(theta_bipartite(1, 5).is_err());
    }

    fn certify(n1: usize, n2: usize, l: &Labeling) {
        let spec = PartiteSpec::new(vec![n1, n2]).unwrap();
        assert!(partite_sums_check(&spec, l).unwrap());
        let g = build_complete_multipartite(&spec);
        assert!(verify_s_magic(&g, l).unwrap().is_magic);
    }

    #[test]
    fn k22_sides() {
        let l = label_bipartite(2, 2, 4).unwrap().unwrap();
        certify(2, 2, &l);
        let mut sides = [l.labels()[..2].to_vec(), l.labels()[2..].to_vec()];
        sides.iter_mut().for_each(|s| s.sort());
        sides.sort();
        assert_eq!(sides, [vec![1, 4], vec![2, 3]]);
    }

    #[test]
    fn parity_forces_the_shifted_set() {
        for (a, b) in [(8, 9), (6, 7)] {
            let spec = PartiteSpec::new(vec![a, b]).unwrap();
            let n = (a + b) as u64;
            let plain: Vec<u64> = (1..=n).collect();
            assert!(label_with_set(&spec, &plain).unwrap().is_none());
            let l = label_bipartite(a, b, n + 1).unwrap().unwrap();
            certify(a, b, &l);
            assert_eq!(l.label_set(), (1..n).chain([n + 1]).collect());
        }
    }

    #[test]
    fn witnesses_realize_the_formula() {
        for n1 in 2..=9 {
            for n2 in n1..=20 {
                let t = theta(n1, n2);
                let n = (n1 + n2) as u64;
                let l = label_bipartite(n1, n2, n + t).unwrap().unwrap();
                certify(n1, n2, &l);
                assert_eq!(l.eta(), n + t, "K({n1},{n2})");
            }
        }
    }

    #[test]
    fn too_small_target() {
        assert!(label_bipartite(2, 6, 10).unwrap().is_none());
        assert!(label_bipartite(2, 6, 11).unwrap().is_some());
    }
}

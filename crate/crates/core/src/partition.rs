//! Depth-first search for partitions of a label pool into blocks of given
//! sizes with a common block sum. Shared by the witness constructions and
//! the brute-force oracle.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Wall-clock limit for a search. Checked every few thousand nodes.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    start: Instant,
    limit: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            start: Instant::now(),
            limit: None,
        }
    }

    pub fn new(limit: Duration) -> Self {
        Budget {
            start: Instant::now(),
            limit: Some(limit),
        }
    }

    pub fn check(&self) -> Result<()> {
        match self.limit {
            Some(l) if self.start.elapsed() > l => Err(Error::BudgetExceeded {
                elapsed_ms: self.start.elapsed().as_millis(),
            }),
            _ => Ok(()),
        }
    }
}

/// Search problem: pick `Σ sizes` values out of `pool` (sorted descending,
/// distinct), leaving exactly `skips` unused, so that block `i` receives
/// `sizes[i]` values summing to `target`. When `require_first` is set the
/// largest pool value must be used.
pub(crate) struct Search<'a> {
    pool: &'a [u64],
    /// `prefix[i] = pool[0] + … + pool[i-1]`
    prefix: Vec<u64>,
    count: Vec<usize>,
    need: Vec<u64>,
    blocks: Vec<Vec<u64>>,
    require_first: bool,
    prune: bool,
    budget: Budget,
    nodes: u64,
}

impl<'a> Search<'a> {
    pub(crate) fn new(pool: &'a [u64], sizes: &[usize], target: u64, budget: Budget) -> Self {
        debug_assert!(pool.windows(2).all(|w| w[0] > w[1]));
        let mut prefix = Vec::with_capacity(pool.len() + 1);
        prefix.push(0u64);
        for &x in pool {
            prefix.push(prefix.last().unwrap() + x);
        }
        Search {
            pool,
            prefix,
            count: sizes.to_vec(),
            need: vec![target; sizes.len()],
            blocks: sizes.iter().map(|&s| Vec::with_capacity(s)).collect(),
            require_first: false,
            prune: true,
            budget,
            nodes: 0,
        }
    }

    pub(crate) fn require_first(mut self, yes: bool) -> Self {
        self.require_first = yes;
        self
    }

    /// Disables the sum-range pruning (used to spot-check its soundness).
    pub(crate) fn without_pruning(mut self) -> Self {
        self.prune = false;
        self
    }

    /// Runs the search; blocks come back in `sizes` order.
    pub(crate) fn run(mut self, skips: usize) -> Result<Option<Vec<Vec<u64>>>> {
        if self.count.iter().sum::<usize>() + skips != self.pool.len() {
            return Ok(None);
        }
        if self.rec(0, skips)? {
            Ok(Some(self.blocks))
        } else {
            Ok(None)
        }
    }

    /// Sum of `c` largest / smallest pool values at or after `idx`.
    fn range_bounds(&self, idx: usize, c: usize) -> (u64, u64) {
        let len = self.pool.len();
        let hi = self.prefix[idx + c] - self.prefix[idx];
        let lo = self.prefix[len] - self.prefix[len - c];
        (lo, hi)
    }

    fn rec(&mut self, idx: usize, skips: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes & 0xfff == 0 {
            self.budget.check()?;
        }
        if self.count.iter().all(|&c| c == 0) {
            return Ok(self.need.iter().all(|&s| s == 0));
        }
        if idx == self.pool.len() {
            return Ok(false);
        }
        if self.prune {
            for (&c, &s) in self.count.iter().zip(&self.need) {
                if c == 0 {
                    if s != 0 {
                        return Ok(false);
                    }
                    continue;
                }
                let (lo, hi) = self.range_bounds(idx, c);
                if s < lo || s > hi {
                    return Ok(false);
                }
            }
        }
        let x = self.pool[idx];
        // Blocks in order of largest average remaining need; blocks in the
        // same state are interchangeable, so only one of them is tried.
        let mut order: Vec<usize> = (0..self.count.len())
            .filter(|&i| self.count[i] > 0 && self.need[i] >= x)
            .collect();
        order.sort_by(|&i, &j| {
            let a = self.need[i] as u128 * self.count[j] as u128;
            let b = self.need[j] as u128 * self.count[i] as u128;
            b.cmp(&a).then(i.cmp(&j))
        });
        let mut tried: Vec<(usize, u64)> = Vec::new();
        for i in order {
            let key = (self.count[i], self.need[i]);
            if tried.contains(&key) {
                continue;
            }
            tried.push(key);
            self.count[i] -= 1;
            self.need[i] -= x;
            self.blocks[i].push(x);
            let ok = self.rec(idx + 1, skips)?;
            if ok {
                return Ok(true);
            }
            self.blocks[i].pop();
            self.count[i] += 1;
            self.need[i] += x;
        }
        if skips > 0 && !(self.require_first && idx == 0) && self.rec(idx + 1, skips - 1)? {
            return Ok(true);
        }
        Ok(false)
    }
}

/// Splits `set` into blocks of the given sizes with equal sums, if
/// possible. Blocks are returned in `sizes` order, each sorted ascending.
/// The search is deterministic.
pub fn equal_sum_partition(set: &[u64], sizes: &[usize]) -> Option<Vec<Vec<u64>>> {
    partition_with_budget(set, sizes, Budget::unlimited()).expect("unlimited budget")
}

pub fn partition_with_budget(
    set: &[u64],
    sizes: &[usize],
    budget: Budget,
) -> Result<Option<Vec<Vec<u64>>>> {
    if sizes.is_empty() || sizes.iter().sum::<usize>() != set.len() {
        return Ok(None);
    }
    let mut pool = set.to_vec();
    pool.sort_unstable_by(|a, b| b.cmp(a));
    if pool.windows(2).any(|w| w[0] == w[1]) {
        return Ok(None);
    }
    let total: u64 = pool.iter().sum();
    let r = sizes.len() as u64;
    if !total.is_multiple_of(r) {
        return Ok(None);
    }
    let found = Search::new(&pool, sizes, total / r, budget).run(0)?;
    Ok(found.map(|mut blocks| {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks
    }))
}

/// Common block sums worth trying when the pool is `{1..m}`, `m` must be
/// used and `n` values are taken: every multiple of `r` between the
/// smallest and largest possible totals, divided by `r`, in increasing order.
pub(crate) fn candidate_targets(m: u64, n: u64, r: u64) -> Vec<u64> {
    if n == 0 || m < n {
        return Vec::new();
    }
    let lo = (n - 1) * n / 2 + m;
    let hi = (m - n + 1..=m).sum::<u64>();
    (lo..=hi).filter(|t| t % r == 0).map(|t| t / r).collect()
}

/// Blocks of the given sizes with a common sum, drawn from `{1..m}` and
/// using `m`. Targets are tried in increasing order.
pub fn labels_with_max(m: u64, sizes: &[usize], budget: Budget) -> Result<Option<Vec<Vec<u64>>>> {
    let n: usize = sizes.iter().sum();
    let pool: Vec<u64> = (1..=m).rev().collect();
    for t in candidate_targets(m, n as u64, sizes.len() as u64) {
        let found = Search::new(&pool, sizes, t, budget)
            .require_first(true)
            .run(pool.len() - n)?;
        if let Some(mut blocks) = found {
            blocks.iter_mut().for_each(|b| b.sort_unstable());
            return Ok(Some(blocks));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_total_is_infeasible() {
        assert_eq!(equal_sum_partition(&[1, 2, 3, 4, 5, 6], &[3, 3]), None);
    }

    #[test]
    fn pairs_of_one_to_six() {
        let p = equal_sum_partition(&[1, 2, 3, 4, 5, 6], &[2, 2, 2]).unwrap();
        let mut p = p;
        p.sort();
        assert_eq!(p, vec![vec![1, 6], vec![2, 5], vec![3, 4]]);
    }

    #[test]
    fn with_a_hole() {
        // 1+2+3+4+5+7 = 22, so each side sums to 11
        let p = equal_sum_partition(&[1, 2, 3, 4, 5, 7], &[3, 3]).unwrap();
        assert!(p.iter().all(|b| b.iter().sum::<u64>() == 11));
    }

    #[test]
    fn unequal_sizes() {
        let p = equal_sum_partition(&(1..=18).collect::<Vec<_>>(), &[5, 6, 7]).unwrap();
        assert_eq!(p.iter().map(Vec::len).collect::<Vec<_>>(), vec![5, 6, 7]);
        assert!(p.iter().all(|b| b.iter().sum::<u64>() == 57));
    }

    #[test]
    fn skips_and_required_maximum() {
        // {1..7} minus one value, 7 used, split 3/3
        let pool: Vec<u64> = (1..=7).rev().collect();
        let total = 28u64;
        let mut found = None;
        for skipped in 1..=6u64 {
            if (total - skipped).is_multiple_of(2) {
                let r = Search::new(&pool, &[3, 3], (total - skipped) / 2, Budget::unlimited())
                    .require_first(true)
                    .run(1)
                    .unwrap();
                if r.is_some() {
                    found = r;
                    break;
                }
            }
        }
        let blocks = found.unwrap();
        assert!(blocks.iter().flatten().any(|&x| x == 7));
        assert_eq!(blocks[0].iter().sum::<u64>(), blocks[1].iter().sum::<u64>());
    }

    #[test]
    fn pruning_is_sound_on_tiny_cases() {
        for m in 4..=9u64 {
            let pool: Vec<u64> = (1..=m).rev().collect();
            for sizes in [vec![2, 2], vec![2, 3], vec![1, 2, 2], vec![2, 2, 2]] {
                let n: usize = sizes.iter().sum();
                if n > pool.len() {
                    continue;
                }
                for t in 1..=30 {
                    let a = Search::new(&pool, &sizes, t, Budget::unlimited())
                        .run(pool.len() - n)
                        .unwrap()
                        .is_some();
                    let b = Search::new(&pool, &sizes, t, Budget::unlimited())
                        .without_pruning()
                        .run(pool.len() - n)
                        .unwrap()
                        .is_some();
                    assert_eq!(a, b, "m={m} sizes={sizes:?} t={t}");
                }
            }
        }
    }
}

//! Exhaustive computation of the index on small instances.
//!
//! For each excess `e = 0, 1, …` only label sets whose maximum is exactly
//! `n + e` are tested, so the first hit is the index. Work is split across
//! a rayon pool and merged with `find_map_first`, which keeps the answer
//! and the witness independent of the number of workers.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{build_complete_multipartite, Graph, PartiteSpec};
use crate::labeling::{verify_s_magic, Labeling};
use crate::partition::{candidate_targets, Budget, Search};
use crate::theta::{CaseTag, ThetaResult};

pub use crate::partition::equal_sum_partition;

pub const MULTIPARTITE_MAX_ORDER: usize = 32;
pub const GENERAL_MAX_ORDER: usize = 10;

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    pub budget: Budget,
    /// Nonzero seeds shuffle the order in which candidates are tried.
    pub seed: u64,
    pub prune: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            jobs: None,
            budget: Budget::unlimited(),
            seed: 0,
            prune: true,
        }
    }
}

impl OracleOptions {
    fn run<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        match self.jobs {
            None => Ok(f()),
            Some(j) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(j.max(1))
                    .build()
                    .map_err(|e| Error::Inconsistent(format!("thread pool: {e}")))?;
                Ok(pool.install(f))
            }
        }
    }

    fn order<T>(&self, items: &mut [T], salt: u64) {
        if self.seed != 0 {
            items.shuffle(&mut ChaCha8Rng::seed_from_u64(self.seed ^ salt));
        }
    }
}

fn not_found(max_excess: u64) -> ThetaResult {
    let mut t = ThetaResult::bounds(max_excess + 1, None, CaseTag::Oracle);
    t.no_labeling_found = true;
    t
}

fn certified(g: &Graph, l: Labeling, e: u64) -> Result<ThetaResult> {
    if !verify_s_magic(g, &l)?.is_magic {
        return Err(Error::Inconsistent("oracle witness failed verification".into()));
    }
    Ok(ThetaResult::exact(e, CaseTag::Oracle).with_witness(l))
}

/// Index of the complete multipartite graph `spec`, trying excesses
/// `0..=max_excess`. Part sums decide S-magicness, so this is a search for
/// equal-sum splits of label sets with maximum `n + e`.
pub fn oracle_theta_multipartite(
    spec: &PartiteSpec,
    max_excess: u64,
    opts: &OracleOptions,
) -> Result<ThetaResult> {
    let n = spec.order();
    if n > MULTIPARTITE_MAX_ORDER {
        return Err(Error::SizeLimit {
            requested: n,
            limit: MULTIPARTITE_MAX_ORDER,
        });
    }
    // Two singleton parts would need equal labels.
    if spec.sizes().iter().filter(|&&s| s == 1).count() >= 2 {
        return Ok(not_found(max_excess));
    }
    let sizes = spec.sizes();
    let r = sizes.len() as u64;
    let g = build_complete_multipartite(spec);
    for e in 0..=max_excess {
        let m = n as u64 + e;
        let pool: Vec<u64> = (1..=m).rev().collect();
        let mut targets = candidate_targets(m, n as u64, r);
        opts.order(&mut targets, e);
        let found = opts.run(|| {
            targets.par_iter().find_map_first(|&t| {
                let mut s = Search::new(&pool, sizes, t, opts.budget).require_first(true);
                if !opts.prune {
                    s = s.without_pruning();
                }
                s.run(e as usize).transpose()
            })
        })?;
        match found {
            Some(Ok(mut blocks)) => {
                blocks.iter_mut().for_each(|b| b.sort_unstable());
                return certified(&g, Labeling::from_parts(&blocks)?, e);
            }
            Some(Err(err)) => return Err(err),
            None => {}
        }
    }
    Ok(not_found(max_excess))
}

/// Index of an arbitrary graph on at most ten vertices by enumerating label
/// sets and then bijections, pruning on the weights of vertices whose
/// neighbours are all labelled.
pub fn oracle_theta_general(g: &Graph, max_excess: u64, opts: &OracleOptions) -> Result<ThetaResult> {
    let n = g.order();
    if n > GENERAL_MAX_ORDER {
        return Err(Error::SizeLimit {
            requested: n,
            limit: GENERAL_MAX_ORDER,
        });
    }
    if n == 0 {
        return Err(Error::InvalidGraph("empty graph".into()));
    }
    let isolated = (0..n).any(|u| g.degree(u) == 0);
    if isolated && g.edge_count() > 0 {
        // weight 0 next to a positive weight
        return Ok(not_found(max_excess));
    }
    let plan = Plan::new(g);
    for e in 0..=max_excess {
        let m = n as u64 + e;
        let mut sets: Vec<Vec<u64>> = Vec::new();
        let mut cur = Vec::with_capacity(n);
        subsets_below(m - 1, n - 1, 1, &mut cur, &mut sets);
        sets.iter_mut().for_each(|s| s.push(m));
        opts.order(&mut sets, e);
        let found = opts.run(|| {
            sets.par_iter().find_map_first(|set| {
                let mut b = Bijection::new(&plan, set, opts.budget);
                match b.rec(0) {
                    Ok(true) => Some(Ok(b.labels())),
                    Ok(false) => None,
                    Err(err) => Some(Err(err)),
                }
            })
        })?;
        match found {
            Some(Ok(labels)) => return certified(g, Labeling::new(labels)?, e),
            Some(Err(err)) => return Err(err),
            None => {}
        }
    }
    Ok(not_found(max_excess))
}

/// All `k`-subsets of `{start..=hi}` in lexicographic order.
fn subsets_below(hi: u64, k: usize, start: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    let need = (k - cur.len()) as u64;
    let mut x = start;
    while x + need - 1 <= hi {
        cur.push(x);
        subsets_below(hi, k, x + 1, cur, out);
        cur.pop();
        x += 1;
    }
}

/// Vertex order for the bijection search, and for each step the vertices
/// that become saturated once that step's vertex is labelled.
struct Plan<'g> {
    g: &'g Graph,
    order: Vec<usize>,
    saturated_at: Vec<Vec<usize>>,
}

impl<'g> Plan<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.order();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut saturated = vec![false; n];
        let mut saturated_at = Vec::with_capacity(n);
        for _ in 0..n {
            // Greedy: the vertex that saturates the most, then by degree.
            let pick = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let gain = (0..n)
                        .filter(|&u| {
                            !saturated[u] && g.neighbors(u).iter().all(|&w| w == v || placed[w])
                        })
                        .count();
                    (gain, g.degree(v), std::cmp::Reverse(v))
                })
                .unwrap();
            placed[pick] = true;
            order.push(pick);
            let now: Vec<usize> = (0..n)
                .filter(|&u| !saturated[u] && g.neighbors(u).iter().all(|&w| placed[w]))
                .collect();
            for &u in &now {
                saturated[u] = true;
            }
            saturated_at.push(now);
        }
        Plan {
            g,
            order,
            saturated_at,
        }
    }
}

struct Bijection<'p> {
    plan: &'p Plan<'p>,
    set: &'p [u64],
    used: Vec<bool>,
    label: Vec<u64>,
    target: Option<u64>,
    budget: Budget,
    nodes: u64,
}

impl<'p> Bijection<'p> {
    fn new(plan: &'p Plan<'p>, set: &'p [u64], budget: Budget) -> Self {
        let n = set.len();
        Bijection {
            plan,
            set,
            used: vec![false; n],
            label: vec![0; n],
            target: None,
            budget,
            nodes: 0,
        }
    }

    fn labels(&self) -> Vec<u64> {
        self.label.clone()
    }

    fn weight(&self, u: usize) -> u64 {
        self.plan.g.neighbors(u).iter().map(|&w| self.label[w]).sum()
    }

    /// Whether every unsaturated vertex can still reach the target.
    fn reachable(&self) -> bool {
        let Some(t) = self.target else { return true };
        let free: Vec<u64> = self
            .set
            .iter()
            .zip(&self.used)
            .filter(|(_, &u)| !u)
            .map(|(&x, _)| x)
            .collect();
        // `free` is ascending because `set` is
        for u in 0..self.label.len() {
            let mut s = 0;
            let mut k = 0;
            for &w in self.plan.g.neighbors(u) {
                if self.label[w] == 0 {
                    k += 1;
                } else {
                    s += self.label[w];
                }
            }
            if k == 0 {
                continue;
            }
            let lo: u64 = free[..k].iter().sum();
            let hi: u64 = free[free.len() - k..].iter().sum();
            if s + lo > t || s + hi < t {
                return false;
            }
        }
        true
    }

    fn rec(&mut self, step: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes & 0xfff == 0 {
            self.budget.check()?;
        }
        if step == self.plan.order.len() {
            return Ok(true);
        }
        let v = self.plan.order[step];
        for i in 0..self.set.len() {
            if self.used[i] {
                continue;
            }
            self.used[i] = true;
            self.label[v] = self.set[i];
            let saved = self.target;
            let mut ok = true;
            for &u in &self.plan.saturated_at[step] {
                let w = self.weight(u);
                match self.target {
                    None => self.target = Some(w),
                    Some(t) if t != w => {
                        ok = false;
                        break;
                    }
                    Some(_) => {}
                }
            }
            if ok && self.reachable() && self.rec(step + 1)? {
                return Ok(true);
            }
            self.target = saved;
            self.label[v] = 0;
            self.used[i] = false;
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_cycle;

    fn spec(s: &[usize]) -> PartiteSpec {
        PartiteSpec::new(s.to_vec()).unwrap()
    }

    fn opts() -> OracleOptions {
        OracleOptions::default()
    }

    #[test]
    fn k567() {
        let t = oracle_theta_multipartite(&spec(&[5, 6, 7]), 0, &opts()).unwrap();
        assert_eq!(t.theta(), Some(0));
        let g = build_complete_multipartite(&spec(&[5, 6, 7]));
        assert_eq!(verify_s_magic(&g, t.witness.as_ref().unwrap()).unwrap().constant, Some(114));
    }

    #[test]
    fn k389() {
        let t = oracle_theta_multipartite(&spec(&[3, 8, 9]), 8, &opts()).unwrap();
        assert_eq!(t.theta(), Some(7));
        assert_eq!(t.witness.unwrap().eta(), 27);
    }

    #[test]
    fn singletons() {
        let t = oracle_theta_multipartite(&spec(&[1, 1]), 5, &opts()).unwrap();
        assert!(t.no_labeling_found);
        assert_eq!((t.lower, t.upper), (6, None));
    }

    #[test]
    fn small_general_graphs() {
        assert_eq!(oracle_theta_general(&build_cycle(4).unwrap(), 4, &opts()).unwrap().theta(), Some(0));
        let k33 = build_complete_multipartite(&spec(&[3, 3]));
        let t = oracle_theta_general(&k33, 4, &opts()).unwrap();
        assert_eq!(t.theta(), Some(1));
        assert_eq!(t.witness.unwrap().eta(), 7);
        let p3 = Graph::from_adjacency(vec![vec![1], vec![0, 2], vec![1]]).unwrap();
        assert_eq!(oracle_theta_general(&p3, 3, &opts()).unwrap().theta(), Some(0));
    }

    #[test]
    fn worker_count_does_not_change_the_witness() {
        let s = spec(&[2, 3, 6]);
        let one = oracle_theta_multipartite(&s, 10, &OracleOptions { jobs: Some(1), ..opts() }).unwrap();
        let four = oracle_theta_multipartite(&s, 10, &OracleOptions { jobs: Some(4), ..opts() }).unwrap();
        assert_eq!(one.witness, four.witness);
        assert_eq!(one.theta(), four.theta());
    }

    #[test]
    fn two_semantics_agree() {
        for sizes in [vec![2, 2], vec![2, 3], vec![2, 2, 2], vec![2, 2, 3], vec![3, 4], vec![1, 2, 3]] {
            let s = spec(&sizes);
            let a = oracle_theta_multipartite(&s, 6, &opts()).unwrap();
            let b = oracle_theta_general(&build_complete_multipartite(&s), 6, &opts()).unwrap();
            assert_eq!((a.lower, a.upper), (b.lower, b.upper), "{s}");
        }
    }
}

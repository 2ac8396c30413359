//! Quasimagic rectangles `QMR(a, b : ab/2+1)` for odd `a` and even `b`.
//!
//! Everything is built in centered form: entry `d + s` with `d = ab/2 + 1`,
//! so the signed values are `±1..±ab/2`, each sign used once, and every row
//! and column has to sum to zero.
//!
//! * `b = 2`: column 0 is a zero-sum signing of `1..a`, column 1 its negation.
//! * `b = 2t ≥ 4`: `(a−3)/2` row pairs take the largest magnitudes (first row
//!   a zero-sum signing, second row its negation). The remaining `3t`
//!   magnitudes fill a `3 × 2t` core, mostly from triples `x + y = z` turned
//!   into the column pair `(x, y, −z)`, `(−x, −y, z)`. If the core magnitudes
//!   have odd total, the last six go into a `3 × 4` block found by brute force.

use std::collections::{BTreeSet, HashMap};
use std::time::Duration;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{ArrayKind, Construction, MagicArray};
use crate::error::{Error, Result};
use crate::partition::Budget;

const DEFAULT_BUDGET: Duration = Duration::from_secs(60);
const FIRST_ATTEMPT_NODES: u64 = 200_000;

/// `QMR(a, b : ab/2+1)` with the default seed and a 60 s budget.
pub fn qmr(a: usize, b: usize) -> Result<Construction> {
    qmr_seeded(a, b, 0, Budget::new(DEFAULT_BUDGET))
}

/// Like [`qmr`], with the seed used for search restarts and an explicit
/// budget. The result depends only on `(a, b, seed)`.
pub fn qmr_seeded(a: usize, b: usize, seed: u64, budget: Budget) -> Result<Construction> {
    if a == 0 || b == 0 || a.is_multiple_of(2) || b % 2 == 1 {
        return Err(Error::domain(
            "quasimagic rectangles",
            format!("{a}×{b}: need an odd number of rows and an even number of columns"),
        ));
    }
    if a == 1 {
        return Ok(Construction::NotExists(format!(
            "QMR(1,{b}) does not exist: a single row has distinct column sums"
        )));
    }
    let t = b / 2;
    if t == 1 && a % 4 == 1 {
        return Ok(Construction::NotExists(format!(
            "QMR({a},2) does not exist: each row pairs d+s with d−s, so one column is a \
             zero-sum signing of 1..{a}, whose total {} is odd",
            a * (a + 1) / 2
        )));
    }
    let signed = if t == 1 {
        two_columns(a as u64)
    } else {
        let mut rows = Vec::with_capacity(a);
        let core_pool = row_pairs(a, t, &mut rows)?;
        let core = core_rows(&core_pool, seed, budget)?;
        rows.extend(core);
        rows
    };
    let n = (a * b) as u64;
    let d = n / 2 + 1;
    let entries: Vec<Vec<u64>> = signed
        .iter()
        .map(|row| row.iter().map(|&s| (d as i64 + s) as u64).collect())
        .collect();
    let arr = MagicArray {
        rows: a,
        cols: b,
        entries,
        kind: ArrayKind::Qmr,
        hole: Some(d),
        row_sum: b as u64 * (n + 2) / 2,
        col_sum: a as u64 * (n + 2) / 2,
    };
    let report = verify_qmr(&arr);
    if let Some(v) = report.violation {
        return Err(Error::Inconsistent(format!("QMR({a},{b}) failed to verify: {v}")));
    }
    Ok(Construction::Built(arr))
}

fn two_columns(a: u64) -> Vec<Vec<i64>> {
    let mut rem = a * (a + 1) / 4;
    let mut col = Vec::with_capacity(a as usize);
    for x in (1..=a).rev() {
        if x <= rem {
            rem -= x;
            col.push(x as i64);
        } else {
            col.push(-(x as i64));
        }
    }
    debug_assert_eq!(rem, 0);
    col.into_iter().map(|s| vec![s, -s]).collect()
}

/// Pushes the `(a−3)/2` row pairs onto `rows` and returns the magnitudes
/// left for the core.
fn row_pairs(a: usize, t: usize, rows: &mut Vec<Vec<i64>>) -> Result<Vec<u64>> {
    let mut rest: BTreeSet<u64> = (1..=(a * t) as u64).collect();
    for _ in 0..(a - 3) / 2 {
        let mut group: Vec<u64> = rest.iter().rev().take(2 * t).copied().collect();
        if group.iter().sum::<u64>() % 2 == 1 {
            let low = *group.last().unwrap();
            let below = rest.range(..low).next_back().copied().ok_or_else(|| {
                Error::Inconsistent("row pair parity repair ran out of magnitudes".into())
            })?;
            *group.last_mut().unwrap() = below;
        }
        for x in &group {
            rest.remove(x);
        }
        let row = zero_signing(&group).ok_or_else(|| {
            Error::Inconsistent(format!("no zero-sum signing of {group:?}"))
        })?;
        rows.push(row.iter().map(|s| -s).collect());
        rows.push(row);
    }
    Ok(rest.into_iter().collect())
}

/// Signs `vals` so that they sum to zero, via subset sum on half the total.
fn zero_signing(vals: &[u64]) -> Option<Vec<i64>> {
    let total: u64 = vals.iter().sum();
    if total % 2 == 1 {
        return None;
    }
    let half = (total / 2) as usize;
    // reached_by[s] = first item through which sum s became reachable
    let mut reached_by: Vec<Option<usize>> = vec![None; half + 1];
    let mut reachable = vec![false; half + 1];
    reachable[0] = true;
    for (i, &v) in vals.iter().enumerate() {
        let v = v as usize;
        for s in (v..=half).rev() {
            if !reachable[s] && reachable[s - v] {
                reachable[s] = true;
                reached_by[s] = Some(i);
            }
        }
    }
    if !reachable[half] {
        return None;
    }
    let mut plus = vec![false; vals.len()];
    let mut s = half;
    while s > 0 {
        let i = reached_by[s]?;
        plus[i] = true;
        s -= vals[i] as usize;
    }
    Some(
        vals.iter()
            .zip(plus)
            .map(|(&v, p)| if p { v as i64 } else { -(v as i64) })
            .collect(),
    )
}

type Block = [[i64; 3]; 4];

enum Piece {
    Triple(u64, u64, u64),
    Block(Block),
}

/// Three zero-sum rows covering `±pool` (|pool| = 3t).
fn core_rows(pool: &[u64], seed: u64, budget: Budget) -> Result<Vec<Vec<i64>>> {
    let max = *pool.iter().max().unwrap() as usize;
    let mut present = vec![false; max + 1];
    for &x in pool {
        present[x as usize] = true;
    }
    let mut search = CoreSearch {
        present,
        left: pool.len(),
        sum: pool.iter().sum(),
        pieces: Vec::new(),
        rng: None,
        nodes: 0,
        limit: FIRST_ATTEMPT_NODES,
        budget,
        blocks: HashMap::new(),
    };
    let mut attempt = 0u64;
    loop {
        match search.rec() {
            Ok(true) => break,
            Ok(false) => {
                return Err(Error::Inconsistent(format!(
                    "core magnitudes {pool:?} admit no decomposition"
                )))
            }
            Err(Restart) => {
                budget.check()?;
                attempt += 1;
                search.reset(pool);
                search.rng = Some(ChaCha8Rng::seed_from_u64(seed ^ attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15)));
                search.limit = FIRST_ATTEMPT_NODES << attempt.min(6);
            }
        }
    }
    let mut rows: Vec<Vec<i64>> = (0..3).map(|_| Vec::with_capacity(2 * pool.len() / 3)).collect();
    for piece in &search.pieces {
        let cols: Vec<[i64; 3]> = match piece {
            &Piece::Triple(x, y, z) => {
                let (x, y, z) = (x as i64, y as i64, z as i64);
                vec![[x, y, -z], [-x, -y, z]]
            }
            Piece::Block(b) => b.to_vec(),
        };
        for c in cols {
            for r in 0..3 {
                rows[r].push(c[r]);
            }
        }
    }
    Ok(rows)
}

struct Restart;

struct CoreSearch {
    present: Vec<bool>,
    left: usize,
    sum: u64,
    pieces: Vec<Piece>,
    rng: Option<ChaCha8Rng>,
    nodes: u64,
    limit: u64,
    budget: Budget,
    blocks: HashMap<Vec<u64>, Option<Block>>,
}

impl CoreSearch {
    fn reset(&mut self, pool: &[u64]) {
        self.present.iter_mut().for_each(|p| *p = false);
        for &x in pool {
            self.present[x as usize] = true;
        }
        self.left = pool.len();
        self.sum = pool.iter().sum();
        self.pieces.clear();
        self.nodes = 0;
    }

    fn take(&mut self, xs: &[u64], on: bool) {
        for &x in xs {
            self.present[x as usize] = !on;
            if on {
                self.left -= 1;
                self.sum -= x;
            } else {
                self.left += 1;
                self.sum += x;
            }
        }
    }

    /// Odd blocks containing the maximum `z`. In such a block `z` is the
    /// sum in both of its columns, so the block is `z`, two pairs summing
    /// to `z`, and one more magnitude of the opposite parity to `z`.
    fn blocks_with(&mut self, z: u64, xs: &[u64]) -> Vec<([u64; 6], Block)> {
        let mut out = Vec::new();
        for (i, &x1) in xs.iter().enumerate() {
            for &x2 in &xs[i + 1..] {
                for w in 1..z {
                    if !self.present[w as usize] || (w + z).is_multiple_of(2) {
                        continue;
                    }
                    if [x1, z - x1, x2, z - x2].contains(&w) {
                        continue;
                    }
                    let mut set = [z, x1, z - x1, x2, z - x2, w];
                    set.sort_unstable();
                    let block = *self
                        .blocks
                        .entry(set.to_vec())
                        .or_insert_with_key(|k| odd_block(k));
                    if let Some(b) = block {
                        out.push((set, b));
                    }
                }
            }
        }
        out
    }

    /// Largest-first: the current maximum is the sum of its triple, or
    /// the largest magnitude of the odd block.
    fn rec(&mut self) -> std::result::Result<bool, Restart> {
        self.nodes += 1;
        if self.nodes > self.limit || (self.nodes & 0xfff == 0 && self.budget.check().is_err()) {
            return Err(Restart);
        }
        if self.left == 0 {
            return Ok(true);
        }
        if self.left < 3 || (self.sum % 2 == 1 && self.left < 6) {
            return Ok(false);
        }
        let z = (1..self.present.len()).rev().find(|&x| self.present[x]).unwrap() as u64;
        let mut xs: Vec<u64> = ((z + 2) / 2..z)
            .rev()
            .filter(|&x| self.present[x as usize] && self.present[(z - x) as usize] && 2 * x != z)
            .collect();
        if self.sum % 2 == 1 {
            // The block is unavoidable; place it first, around the maximum.
            let mut found = self.blocks_with(z, &xs);
            if let Some(rng) = self.rng.as_mut() {
                found.shuffle(rng);
            }
            for (set, block) in found {
                self.take(&set, true);
                self.pieces.push(Piece::Block(block));
                if self.rec()? {
                    return Ok(true);
                }
                self.pieces.pop();
                self.take(&set, false);
            }
            return Ok(false);
        }
        if let Some(rng) = self.rng.as_mut() {
            xs.shuffle(rng);
        }
        for x in xs {
            let y = z - x;
            self.take(&[x, y, z], true);
            self.pieces.push(Piece::Triple(x, y, z));
            if self.rec()? {
                return Ok(true);
            }
            self.pieces.pop();
            self.take(&[x, y, z], false);
        }
        Ok(false)
    }
}

/// A `3 × 4` zero-sum block over `±mags` (six magnitudes). Columns are
/// signed triples; rows are then matched by permuting within columns.
fn odd_block(mags: &[u64]) -> Option<Block> {
    let m: Vec<i64> = mags.iter().map(|&x| x as i64).collect();
    let mut triples = Vec::new();
    for &x in &m {
        for &y in &m {
            if x < y && m.contains(&(x + y)) {
                triples.push([x, y, x + y]);
            }
        }
    }
    let mut cols: Vec<[i64; 3]> = Vec::with_capacity(4);
    let mut used: Vec<i64> = Vec::with_capacity(12);
    block_rec(&triples, 0, &mut cols, &mut used)
}

fn block_rec(
    triples: &[[i64; 3]],
    start: usize,
    cols: &mut Vec<[i64; 3]>,
    used: &mut Vec<i64>,
) -> Option<Block> {
    if cols.len() == 4 {
        return arrange(cols);
    }
    for (k, &[x, y, z]) in triples.iter().enumerate().skip(start) {
        for s in [1, -1] {
            let col = [s * x, s * y, -s * z];
            if col.iter().any(|v| used.contains(v)) {
                continue;
            }
            used.extend(col);
            cols.push(col);
            if let Some(b) = block_rec(triples, k, cols, used) {
                return Some(b);
            }
            cols.pop();
            used.truncate(used.len() - 3);
        }
    }
    None
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn arrange(cols: &[[i64; 3]]) -> Option<Block> {
    let permute = |c: [i64; 3], p: [usize; 3]| [c[p[0]], c[p[1]], c[p[2]]];
    for p1 in PERMS {
        for p2 in PERMS {
            for p3 in PERMS {
                let b = [
                    cols[0],
                    permute(cols[1], p1),
                    permute(cols[2], p2),
                    permute(cols[3], p3),
                ];
                if (0..3).all(|r| b.iter().map(|c| c[r]).sum::<i64>() == 0) {
                    return Some(b);
                }
            }
        }
    }
    None
}

/// Outcome of [`verify_qmr`]; `violation` names the first failed check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QmrReport {
    pub valid: bool,
    pub violation: Option<String>,
}

/// Checks shape, hole, entry set, and row and column sums of a quasimagic
/// rectangle against `d = ab/2+1`, `ρ = b(ab+2)/2`, `σ = a(ab+2)/2`.
pub fn verify_qmr(arr: &MagicArray) -> QmrReport {
    let fail = |v: String| QmrReport {
        valid: false,
        violation: Some(v),
    };
    let (a, b) = (arr.rows, arr.cols);
    if a == 0 || b == 0 || arr.entries.len() != a || arr.entries.iter().any(|r| r.len() != b) {
        return fail(format!("entries do not form a {a}×{b} array"));
    }
    let n = (a * b) as u64;
    if n % 2 == 1 {
        return fail(format!("{a}×{b} has an odd number of cells"));
    }
    let d = n / 2 + 1;
    if arr.hole != Some(d) {
        return fail(format!("hole is {:?}, expected {d}", arr.hole));
    }
    let mut seen = vec![false; n as usize + 2];
    for (i, row) in arr.entries.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if x == 0 || x > n + 1 || x == d {
                return fail(format!("entry {x} at ({i},{j}) is outside 1..{} minus {d}", n + 1));
            }
            if seen[x as usize] {
                return fail(format!("entry {x} at ({i},{j}) is repeated"));
            }
            seen[x as usize] = true;
        }
    }
    let rho = b as u64 * (n + 2) / 2;
    let sigma = a as u64 * (n + 2) / 2;
    if let Some((i, s)) = arr.row_sums().into_iter().enumerate().find(|&(_, s)| s != rho) {
        return fail(format!("row {i} sums to {s}, expected {rho}"));
    }
    if let Some((j, s)) = arr.col_sums().into_iter().enumerate().find(|&(_, s)| s != sigma) {
        return fail(format!("column {j} sums to {s}, expected {sigma}"));
    }
    if arr.row_sum != rho || arr.col_sum != sigma {
        return fail(format!(
            "recorded sums ({}, {}) differ from ({rho}, {sigma})",
            arr.row_sum, arr.col_sum
        ));
    }
    QmrReport {
        valid: true,
        violation: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PRINTED_3X10: [[u64; 10]; 3] = [
        [22, 23, 5, 20, 1, 10, 12, 6, 30, 31],
        [17, 18, 19, 3, 26, 27, 8, 13, 14, 15],
        [9, 7, 24, 25, 21, 11, 28, 29, 4, 2],
    ];

    fn printed() -> MagicArray {
        MagicArray {
            rows: 3,
            cols: 10,
            entries: PRINTED_3X10.iter().map(|r| r.to_vec()).collect(),
            kind: ArrayKind::Qmr,
            hole: Some(16),
            row_sum: 160,
            col_sum: 48,
        }
    }

    #[test]
    fn printed_table_is_valid() {
        assert_eq!(verify_qmr(&printed()).violation, None);
    }

    #[test]
    fn swapping_breaks_the_column_sums() {
        let mut arr = printed();
        arr.entries[0].swap(0, 1);
        let r = verify_qmr(&arr);
        assert!(!r.valid);
        assert!(r.violation.unwrap().starts_with("column 0"));
    }

    #[test]
    fn built_3x10() {
        let arr = qmr(3, 10).unwrap().built().unwrap();
        assert_eq!((arr.hole, arr.row_sum, arr.col_sum), (Some(16), 160, 48));
        assert!(arr.to_csv().starts_with("# d=16 rho=160 sigma=48\n"));
    }

    #[test]
    fn three_by_two() {
        let arr = qmr(3, 2).unwrap().built().unwrap();
        assert_eq!(arr.col_sums(), vec![12, 12]);
        assert_eq!(arr.row_sums(), vec![8, 8, 8]);
    }

    #[test]
    fn gates() {
        assert!(matches!(qmr(5, 2).unwrap(), Construction::NotExists(_)));
        assert!(matches!(qmr(1, 4).unwrap(), Construction::NotExists(_)));
        assert!(qmr(4, 2).is_err());
        assert!(qmr(3, 5).is_err());
    }

    #[test]
    fn odd_total_core_uses_a_block() {
        // 1..6 sums to 21, so the whole 3×4 core is one block
        assert!(odd_block(&[1, 2, 3, 4, 5, 6]).is_some());
        assert!(odd_block(&[1, 2, 4, 8, 16, 32]).is_none());
    }

    #[test]
    fn signing() {
        let s = zero_signing(&[3, 4, 5, 6]).unwrap();
        assert_eq!(s.iter().sum::<i64>(), 0);
        assert_eq!(zero_signing(&[1, 2, 4]), None);
    }

    #[test]
    fn grid() {
        for a in (3..=11).step_by(2) {
            for b in (2..=24).step_by(2) {
                match qmr(a, b).unwrap() {
                    Construction::Built(arr) => assert!(verify_qmr(&arr).valid),
                    Construction::NotExists(_) => assert!(b == 2 && a % 4 == 1),
                }
            }
        }
    }
}

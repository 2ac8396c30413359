use super::{ArrayKind, Construction, MagicArray};
use crate::error::{Error, Result};

/// A Kotzig array `KA(a,b)`: every row a permutation of `0..b`, every
/// column summing to `a(b−1)/2`.
///
/// Even `a` stacks complementary row pairs. Odd `a` with odd `b` uses a
/// three-row block `j`, `j + (b+1)/2 mod b`, `3(b−1)/2 − (first two)` and
/// then complementary pairs. Odd `a` with even `b` cannot work because the
/// column sum would not be an integer; a single row works only for `b = 1`.
pub fn kotzig_array(a: usize, b: usize) -> Result<Construction> {
    if a == 0 || b == 0 {
        return Err(Error::domain("Kotzig arrays", format!("{a}×{b} has an empty side")));
    }
    if a % 2 == 1 && b.is_multiple_of(2) {
        return Ok(Construction::NotExists(format!(
            "KA({a},{b}) does not exist: with an odd number of rows the number of columns must be odd"
        )));
    }
    if a == 1 && b > 1 {
        return Ok(Construction::NotExists(format!(
            "KA(1,{b}) does not exist: a single row has distinct column sums"
        )));
    }
    let b64 = b as u64;
    let identity: Vec<u64> = (0..b64).collect();
    let complement: Vec<u64> = (0..b64).map(|j| b64 - 1 - j).collect();
    let mut entries = Vec::with_capacity(a);
    let mut pairs = a / 2;
    if a == 1 {
        entries.push(identity.clone());
        pairs = 0;
    } else if a % 2 == 1 {
        let shift = b64.div_ceil(2);
        let r1: Vec<u64> = (0..b64).map(|j| (j + shift) % b64).collect();
        let r2: Vec<u64> = (0..b)
            .map(|j| 3 * (b64 - 1) / 2 - identity[j] - r1[j])
            .collect();
        entries.push(identity.clone());
        entries.push(r1);
        entries.push(r2);
        pairs -= 1;
    }
    for _ in 0..pairs {
        entries.push(identity.clone());
        entries.push(complement.clone());
    }
    let arr = MagicArray {
        rows: a,
        cols: b,
        entries,
        kind: ArrayKind::Kotzig,
        hole: None,
        row_sum: b64 * (b64 - 1) / 2,
        col_sum: a as u64 * (b64 - 1) / 2,
    };
    if !verify_kotzig(&arr) {
        return Err(Error::Inconsistent(format!("KA({a},{b}) construction failed to verify")));
    }
    Ok(Construction::Built(arr))
}

/// Checks shape, that each row is a permutation of `0..b`, and that all
/// columns share the sum `a(b−1)/2`.
pub fn verify_kotzig(arr: &MagicArray) -> bool {
    let (a, b) = (arr.rows, arr.cols);
    if a == 0 || b == 0 || arr.entries.len() != a || arr.entries.iter().any(|r| r.len() != b) {
        return false;
    }
    for row in &arr.entries {
        let mut seen = vec![false; b];
        for &x in row {
            let x = x as usize;
            if x >= b || seen[x] {
                return false;
            }
            seen[x] = true;
        }
    }
    let total = a * (b - 1);
    if total % 2 != 0 {
        return false;
    }
    arr.col_sums().iter().all(|&s| s as usize == total / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(a: usize, b: usize) -> Vec<Vec<u64>> {
        kotzig_array(a, b).unwrap().built().unwrap().entries
    }

    fn raw(entries: Vec<Vec<u64>>) -> MagicArray {
        MagicArray {
            rows: entries.len(),
            cols: entries[0].len(),
            entries,
            kind: ArrayKind::Kotzig,
            hole: None,
            row_sum: 0,
            col_sum: 0,
        }
    }

    #[test]
    fn ka_2_4() {
        assert_eq!(rows(2, 4), vec![vec![0, 1, 2, 3], vec![3, 2, 1, 0]]);
    }

    #[test]
    fn single_cell() {
        assert_eq!(rows(1, 1), vec![vec![0]]);
    }

    #[test]
    fn ka_3_3() {
        let arr = kotzig_array(3, 3).unwrap().built().unwrap();
        assert!(verify_kotzig(&arr));
        assert_eq!(arr.col_sums(), vec![3, 3, 3]);
    }

    #[test]
    fn ka_3_4_does_not_exist() {
        assert!(matches!(kotzig_array(3, 4).unwrap(), Construction::NotExists(_)));
        assert!(kotzig_array(0, 3).is_err());
    }

    #[test]
    fn verifier_rejects() {
        assert!(verify_kotzig(&raw(vec![vec![0, 1, 2, 3, 4], vec![4, 3, 2, 1, 0]])));
        assert!(!verify_kotzig(&raw(vec![vec![0, 1], vec![0, 1]])));
        assert!(!verify_kotzig(&raw(vec![vec![0, 0], vec![1, 1]])));
    }
}

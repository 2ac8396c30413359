//! Complete tripartite graphs `K(n1,n2,n3)`, `2 ≤ n1 ≤ n2 ≤ n3`.
//!
//! Throughout, `A = 3ζ(n−n1+1, n)`, `B = ζ(1, n)`, `C = 3ζ(1, n3)`, where
//! `ζ(i, j) = i + (i+1) + … + j`.

use std::fmt;

use crate::bipartite::{label_with_set, theta_bipartite};
use crate::error::{Error, Result};
use crate::graph::{build_complete_multipartite, PartiteSpec};
use crate::labeling::{partite_sums_check, verify_s_magic, Labeling};
use crate::partition::equal_sum_partition;
use crate::theta::{CaseTag, ThetaResult};

/// `ζ(i, j) = i + … + j` for `1 ≤ i ≤ j`.
pub fn zeta(i: u64, j: u64) -> Result<u64> {
    if i == 0 || i > j {
        return Err(Error::domain("zeta", format!("need 1 ≤ i ≤ j, got ({i}, {j})")));
    }
    Ok(j * (j + 1) / 2 - (i - 1) * i / 2)
}

fn z(i: u64, j: u64) -> u64 {
    zeta(i, j).expect("valid zeta range")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    I,
    II,
    III,
    IV,
    V,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Case::I => "I",
            Case::II => "II",
            Case::III => "III",
            Case::IV => "IV",
            Case::V => "V",
        };
        f.write_str(s)
    }
}

impl Case {
    pub fn tag(self) -> CaseTag {
        match self {
            Case::I => CaseTag::TripartiteI,
            Case::II => CaseTag::TripartiteII,
            Case::III => CaseTag::TripartiteIII,
            Case::IV => CaseTag::TripartiteIV,
            Case::V => CaseTag::TripartiteV,
        }
    }
}

/// Classification of one instance together with the quantities it is based on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TripartiteCase {
    pub case: Case,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    /// `2B mod 6`, always 0 or 2.
    pub residue: u64,
}

fn check_order(n1: usize, n2: usize, n3: usize) -> Result<()> {
    if n1 < 2 || n1 > n2 || n2 > n3 {
        return Err(Error::domain(
            "tripartite results",
            format!("need 2 ≤ n1 ≤ n2 ≤ n3, got ({n1}, {n2}, {n3})"),
        ));
    }
    Ok(())
}

pub fn classify_tripartite(n1: usize, n2: usize, n3: usize) -> Result<TripartiteCase> {
    check_order(n1, n2, n3)?;
    let (n1, n3) = (n1 as u64, n3 as u64);
    let n = n1 + n2 as u64 + n3;
    let a = 3 * z(n - n1 + 1, n);
    let b = z(1, n);
    let c = 3 * z(1, n3);
    let residue = (2 * b) % 6;
    let case = if a >= b && b >= c {
        if residue == 0 {
            Case::I
        } else {
            Case::IV
        }
    } else if b > a && b >= c {
        Case::II
    } else if a < b && b < c {
        Case::III
    } else {
        Case::V
    };
    Ok(TripartiteCase {
        case,
        a,
        b,
        c,
        residue,
    })
}

/// Distance magic characterization, evaluated on the given sizes (sorted
/// first). Singleton parts are allowed here.
pub fn is_distance_magic_tripartite(n1: usize, n2: usize, n3: usize) -> bool {
    let mut s = [n1 as u64, n2 as u64, n3 as u64];
    s.sort_unstable();
    let [n1, n2, n3] = s;
    if n1 == 0 {
        return false;
    }
    let n = n1 + n2 + n3;
    let b = z(1, n);
    n2 >= 2 && (2 * b).is_multiple_of(6) && 3 * z(n - n1 + 1, n) >= b && 3 * z(1, n3) <= b
}

/// Numerator `ζ(1,n3) − ζ(n−n1+1,n)` shared by cases III and V.
fn deficit(n1: u64, n3: u64, n: u64) -> i128 {
    z(1, n3) as i128 - z(n - n1 + 1, n) as i128
}

fn ceil_div(a: i128, b: i128) -> i128 {
    let q = a.div_euclid(b);
    if a.rem_euclid(b) == 0 {
        q
    } else {
        q + 1
    }
}

pub fn theta_tripartite(n1: usize, n2: usize, n3: usize) -> Result<ThetaResult> {
    let tc = classify_tripartite(n1, n2, n3)?;
    let tag = tc.case.tag();
    let (m1, m3) = (n1 as u64, n3 as u64);
    let n = m1 + n2 as u64 + m3;
    Ok(match tc.case {
        Case::I => ThetaResult::exact(0, tag),
        Case::II => {
            let m = n - m1;
            let extra = if m % 4 == 1 || m % 4 == 2 { 1 } else { 0 };
            let num = 3 * z(1, m) as i128 - 2 * tc.b as i128 + extra;
            ThetaResult::exact(ceil_div(num, 2 * m1 as i128) as u64, tag)
        }
        Case::III => {
            let lb = ceil_div(deficit(m1, m3, n), (n - m3) as i128);
            ThetaResult::bounds(lb.max(0) as u64, None, tag)
        }
        Case::IV => ThetaResult::bounds(1, Some(n + 1), tag),
        Case::V => {
            let d = deficit(m1, m3, n);
            let th = theta_bipartite(n2, n3)?.lower as i128;
            if d >= th * m1 as i128 {
                ThetaResult::exact(ceil_div(d, m1 as i128) as u64, tag)
            } else {
                ThetaResult::bounds(1, Some(th as u64 + 1), tag)
            }
        }
    })
}

/// Witness labeling, vertices numbered part by part. Cases I and II and
/// the exact branch of case V realize the index; case IV gives a labeling
/// with largest label at most `2n + 1`. Cases III and the bounded branch of
/// V have no construction and yield `None`. Every returned labeling has
/// been verified.
pub fn label_tripartite(n1: usize, n2: usize, n3: usize) -> Result<Option<Labeling>> {
    let tc = classify_tripartite(n1, n2, n3)?;
    let theta = theta_tripartite(n1, n2, n3)?;
    let n = (n1 + n2 + n3) as u64;
    let parts = match tc.case {
        Case::I => {
            let all: Vec<u64> = (1..=n).collect();
            equal_sum_partition(&all, &[n1, n2, n3])
        }
        Case::II => Some(case_two(n1, n2, n3)?),
        Case::IV => Some(case_four(n1, n2, n3)?),
        Case::V if theta.is_exact() => case_five(n1, n2, n3)?,
        Case::III | Case::V => return Ok(None),
    };
    let Some(parts) = parts else {
        return Err(Error::Inconsistent(format!(
            "no equal-sum split for K({n1},{n2},{n3})"
        )));
    };
    let labeling = Labeling::from_parts(&parts)?;
    certify(n1, n2, n3, &labeling, &theta)?;
    Ok(Some(labeling))
}

fn certify(n1: usize, n2: usize, n3: usize, l: &Labeling, theta: &ThetaResult) -> Result<()> {
    let spec = PartiteSpec::new(vec![n1, n2, n3])?;
    let n = spec.order() as u64;
    let report = verify_s_magic(&build_complete_multipartite(&spec), l)?;
    if !report.is_magic || !partite_sums_check(&spec, l)? {
        return Err(Error::Inconsistent(format!(
            "labeling of K({n1},{n2},{n3}) is not S-magic"
        )));
    }
    let excess = l.eta() - n;
    let ok = match theta.theta() {
        Some(t) => excess == t,
        None => excess <= n + 1,
    };
    if !ok {
        return Err(Error::Inconsistent(format!(
            "labeling of K({n1},{n2},{n3}) has largest label {}, claim is {:?}..{:?}",
            l.eta(),
            theta.lower,
            theta.upper
        )));
    }
    Ok(())
}

fn replace(set: &mut [u64], old: u64, new: u64) -> Result<()> {
    let pos = set
        .iter()
        .position(|&x| x == old)
        .ok_or_else(|| Error::Inconsistent(format!("label {old} missing from block")))?;
    set[pos] = new;
    Ok(())
}

/// `V2, V3` take an S-magic labeling of `K(n2,n3)` on `{1..m}` (or
/// `{1..m−1, m+1}` when `m ≡ 1, 2 mod 4`), `m = n − n1`. `V1` starts from the
/// top labels, is shifted by the quotient of the missing sum and repaired by
/// the remainder.
fn case_two(n1: usize, n2: usize, n3: usize) -> Result<Vec<Vec<u64>>> {
    let k = n1 as u64;
    let n = (n1 + n2 + n3) as u64;
    let m = n - k;
    let balanced = m.is_multiple_of(4) || m % 4 == 3;
    let (h, l1, hset): (u64, Vec<u64>, Vec<u64>) = if balanced {
        (m * (m + 1) / 4, (m + 1..=n).collect(), (1..=m).collect())
    } else {
        (
            (m * (m + 1) + 2) / 4,
            std::iter::once(m).chain(m + 2..=n).collect(),
            (1..m).chain([m + 1]).collect(),
        )
    };
    let s1: u64 = l1.iter().sum();
    if h <= s1 {
        return Err(Error::Inconsistent("top block already too heavy".into()));
    }
    let lambda = h - s1;
    let (q, r) = (lambda / k, lambda % k);
    let mut v1: Vec<u64>;
    if balanced {
        v1 = l1.iter().map(|x| x + q).collect();
        if r > 0 {
            replace(&mut v1, n + q - r + 1, n + q + 1)?;
        }
    } else if q >= 2 {
        v1 = l1.iter().map(|x| x + q).collect();
        if r >= 1 {
            replace(&mut v1, m + q, m + q + 1)?;
        }
        if r > 1 {
            replace(&mut v1, n + q - r + 2, n + q + 1)?;
        }
    } else if q == 1 {
        // m + 1 is taken by the H labels, so m stays put
        v1 = std::iter::once(m).chain(l1[1..].iter().map(|x| x + 1)).collect();
        match r {
            0 => replace(&mut v1, n + 1, n + 2)?,
            1 => replace(&mut v1, m, m + 2)?,
            _ => {
                replace(&mut v1, m, m + 2)?;
                replace(&mut v1, n - r + 3, n + 2)?;
            }
        }
    } else {
        v1 = l1.clone();
        if r == 1 {
            replace(&mut v1, n, n + 1)?;
        } else {
            replace(&mut v1, n - r + 1, n + 1)?;
        }
    }
    let h_spec = PartiteSpec::new(vec![n2, n3])?;
    let hl = label_with_set(&h_spec, &hset)?
        .ok_or_else(|| Error::Inconsistent(format!("K({n2},{n3}) has no split of its label set")))?;
    let (v2, v3) = hl.labels().split_at(n2);
    v1.sort_unstable();
    Ok(vec![v1, v2.to_vec(), v3.to_vec()])
}

/// Distance magic labeling of `K(n1+1,n2,n3)`; the largest label `u` of
/// the first part is dropped and added onto the smallest label `u'` of that
/// part with `u + u' > n` whose sum is still unused.
fn case_four(n1: usize, n2: usize, n3: usize) -> Result<Vec<Vec<u64>>> {
    let n = (n1 + n2 + n3) as u64;
    let all: Vec<u64> = (1..=n + 1).collect();
    let blocks = equal_sum_partition(&all, &[n1 + 1, n2, n3]).ok_or_else(|| {
        Error::Inconsistent(format!("K({},{n2},{n3}) has no distance magic split", n1 + 1))
    })?;
    let mut v1 = blocks[0].clone();
    v1.sort_unstable();
    let u = *v1.last().expect("nonempty part");
    let used = |x: u64| blocks.iter().flatten().any(|&y| y == x);
    let u2 = v1[..v1.len() - 1]
        .iter()
        .copied()
        .find(|&w| u + w > n && !used(u + w))
        .ok_or_else(|| Error::Inconsistent("no merge partner in the first part".into()))?;
    v1.pop();
    replace(&mut v1, u2, u + u2)?;
    v1.sort_unstable();
    Ok(vec![v1, blocks[1].clone(), blocks[2].clone()])
}

/// `V3 = {1..n3}`, `V2` shifted to balance it, then `V1` shifted above `V2`
/// and repaired by the remainder. `None` if the construction's size
/// condition fails.
fn case_five(n1: usize, n2: usize, n3: usize) -> Result<Option<Vec<Vec<u64>>>> {
    let (k1, k2, k3) = (n1 as u64, n2 as u64, n3 as u64);
    let n = k1 + k2 + k3;
    let m = n - k1;
    let gap = 2 * k3 * (k3 + 1) - m * (m + 1);
    if gap % 2 != 0 {
        return Err(Error::Inconsistent("odd bipartite gap".into()));
    }
    let (mu, r) = ((gap / 2) / k2, (gap / 2) % k2);
    let v3: Vec<u64> = (1..=k3).collect();
    let mut v2: Vec<u64> = (k3 + 1 + mu..=m + mu).collect();
    if r > 0 {
        replace(&mut v2, m + mu - r + 1, m + mu + 1)?;
    }
    let l1: Vec<u64> = (m + mu + 2..=n + mu + 1).collect();
    let s1: u64 = l1.iter().sum();
    let s3: u64 = v3.iter().sum();
    if s1 > s3 {
        return Ok(None);
    }
    let (lambda, r1) = ((s3 - s1) / k1, (s3 - s1) % k1);
    let mut v1: Vec<u64> = l1.iter().map(|x| x + lambda).collect();
    if r1 > 0 {
        replace(&mut v1, n + mu + lambda + 2 - r1, n + mu + lambda + 2)?;
    }
    Ok(Some(vec![v1, v2, v3]))
}

//! Labelings, vertex weights and the S-magic check, plus the closed-form
//! machinery for complete multipartite graphs: equal part sums, the magic
//! constant, and the `g(x)` lower bound.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, PartiteSpec};

/// A bijection from vertices `0..n` onto a set of distinct positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labeling {
    labels: Vec<u64>,
}

impl Labeling {
    /// `labels[v]` is the label of vertex `v`.
    pub fn new(labels: Vec<u64>) -> Result<Self> {
        if let Some(v) = labels.iter().position(|&l| l == 0) {
            return Err(Error::InvalidLabeling(format!("vertex {v} has label 0")));
        }
        let mut seen = HashMap::with_capacity(labels.len());
        for (v, &l) in labels.iter().enumerate() {
            if let Some(u) = seen.insert(l, v) {
                return Err(Error::InvalidLabeling(format!(
                    "vertices {u} and {v} share label {l}"
                )));
            }
        }
        Ok(Labeling { labels })
    }

    /// Labels the vertices of a complete multipartite graph part by part:
    /// `parts[i]` lists the labels of part `i` in vertex order.
    pub fn from_parts(parts: &[Vec<u64>]) -> Result<Self> {
        Labeling::new(parts.iter().flatten().copied().collect())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: usize) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// The image `S`, sorted.
    pub fn label_set(&self) -> BTreeSet<u64> {
        self.labels.iter().copied().collect()
    }

    /// `η(S)`, the largest label.
    pub fn eta(&self) -> u64 {
        self.labels.iter().copied().max().unwrap_or(0)
    }

    /// `α`, the sum of all labels.
    pub fn alpha(&self) -> Result<u64> {
        self.labels
            .iter()
            .try_fold(0u64, |acc, &l| acc.checked_add(l))
            .ok_or(Error::Overflow("summing labels"))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(LabelFile::from(self)).expect("labels serialize")
    }

    pub fn from_json_str(text: &str, n: usize) -> Result<Self> {
        let file: LabelFile = serde_json::from_str(text)
            .map_err(|e| Error::InvalidLabeling(format!("bad JSON: {e}")))?;
        file.into_labeling(n)
    }

    /// Reads a labeling file for a graph on `n` vertices.
    pub fn read_file(path: &Path, n: usize) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json_str(&text, n)
    }
}

/// On-disk form: `{"labels": {"<vertex>": <label>, …}}`.
#[derive(Serialize, Deserialize)]
struct LabelFile {
    labels: BTreeMap<String, u64>,
}

impl From<&Labeling> for LabelFile {
    fn from(l: &Labeling) -> Self {
        LabelFile {
            labels: l
                .labels
                .iter()
                .enumerate()
                .map(|(v, &x)| (v.to_string(), x))
                .collect(),
        }
    }
}

impl LabelFile {
    fn into_labeling(self, n: usize) -> Result<Labeling> {
        let mut labels = vec![None; n];
        for (key, value) in self.labels {
            let v: usize = key
                .trim()
                .parse()
                .map_err(|_| Error::InvalidLabeling(format!("bad vertex id `{key}`")))?;
            if v >= n {
                return Err(Error::InvalidLabeling(format!(
                    "vertex {v} out of range for {n} vertices"
                )));
            }
            if labels[v].replace(value).is_some() {
                return Err(Error::InvalidLabeling(format!("vertex {v} labeled twice")));
            }
        }
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(v, l)| l.ok_or(Error::MissingLabel(v)))
            .collect::<Result<Vec<_>>>()?;
        Labeling::new(labels)
    }
}

/// Outcome of [`verify_s_magic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub is_magic: bool,
    /// The common weight `μ'`, present iff magic.
    pub constant: Option<u64>,
    pub weights: Vec<u64>,
    /// Vertices whose weight differs from the most common weight.
    pub violations: Vec<(usize, u64)>,
}

impl VerifyReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "is_magic": self.is_magic,
            "constant": self.constant,
            "violations": self.violations,
        })
    }
}

fn check_size(g: &Graph, l: &Labeling) -> Result<()> {
    if l.len() != g.order() {
        return Err(if l.len() < g.order() {
            Error::MissingLabel(l.len())
        } else {
            Error::InvalidLabeling(format!(
                "{} labels for {} vertices",
                l.len(),
                g.order()
            ))
        });
    }
    Ok(())
}

/// `w(u)`: the sum of the labels of the neighbors of `u`.
pub fn weight(g: &Graph, l: &Labeling, u: usize) -> Result<u64> {
    check_size(g, l)?;
    g.neighbors(u)
        .iter()
        .try_fold(0u64, |acc, &v| acc.checked_add(l.label(v)))
        .ok_or(Error::Overflow("computing a vertex weight"))
}

/// Computes every weight and reports whether they all agree.
pub fn verify_s_magic(g: &Graph, l: &Labeling) -> Result<VerifyReport> {
    check_size(g, l)?;
    let weights = (0..g.order())
        .map(|u| weight(g, l, u))
        .collect::<Result<Vec<_>>>()?;
    let mut freq: BTreeMap<u64, usize> = BTreeMap::new();
    for &w in &weights {
        *freq.entry(w).or_default() += 1;
    }
    // modal weight; ties go to the smaller value
    let (&mode, _) = freq
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        .expect("graph has vertices");
    let violations: Vec<(usize, u64)> = weights
        .iter()
        .enumerate()
        .filter(|&(_, &w)| w != mode)
        .map(|(v, &w)| (v, w))
        .collect();
    let is_magic = violations.is_empty();
    Ok(VerifyReport {
        is_magic,
        constant: is_magic.then_some(mode),
        weights,
        violations,
    })
}

/// Part sums `s(L_i)` of a labeling of the complete multipartite graph of
/// `spec`, vertices numbered part by part.
pub fn part_sums(spec: &PartiteSpec, l: &Labeling) -> Result<Vec<u64>> {
    if l.len() != spec.order() {
        return Err(Error::InvalidLabeling(format!(
            "{} labels for {} vertices",
            l.len(),
            spec.order()
        )));
    }
    (0..spec.parts())
        .map(|i| {
            spec.part_range(i)
                .try_fold(0u64, |acc, v| acc.checked_add(l.label(v)))
                .ok_or(Error::Overflow("summing a part"))
        })
        .collect()
}

/// True iff all part sums are equal. On a complete multipartite graph a
/// vertex in part `i` has weight `α − s(L_i)`, so this coincides with the
/// S-magic property for every spec. With two or more singleton parts it is
/// never satisfiable, since those parts would need equal labels.
pub fn partite_sums_check(spec: &PartiteSpec, l: &Labeling) -> Result<bool> {
    let sums = part_sums(spec, l)?;
    Ok(sums.windows(2).all(|w| w[0] == w[1]))
}

/// `g(x) = ½[(2δ(n+x) − δ² + δ) − Δ(Δ+1)]`.
pub fn g_function(n: u64, delta: u64, big_delta: u64, x: u64) -> Ratio<i128> {
    let (n, d, dd, x) = (n as i128, delta as i128, big_delta as i128, x as i128);
    Ratio::new(2 * d * (n + x) - d * d + d - dd * (dd + 1), 2)
}

/// `⌈|g(0)|/δ⌉` when `g(0) < 0`, otherwise `None` (no information).
pub fn godinho_lower_bound(g: &Graph) -> Result<Option<u64>> {
    let delta = g.min_degree();
    if delta == 0 {
        return Err(Error::IsolatedVertex);
    }
    let g0 = g_function(g.order() as u64, delta as u64, g.max_degree() as u64, 0);
    if g0 >= Ratio::from_integer(0) {
        return Ok(None);
    }
    let bound = (-g0 / Ratio::from_integer(delta as i128)).ceil().to_integer();
    Ok(Some(bound as u64))
}

/// Magic constant `k = α(r−1)/r` of an S-magic labeling of a complete
/// `r`-partite graph whose labels sum to `alpha`.
pub fn magic_constant_multipartite(spec: &PartiteSpec, alpha: u64) -> Result<Ratio<u128>> {
    let r = spec.parts() as u128;
    if r < 2 {
        return Err(Error::domain("magic constant", "fewer than two parts"));
    }
    Ok(Ratio::new(alpha as u128 * (r - 1), r))
}

/// Formats a rational as `p` or `p/q`.
pub fn format_ratio(r: &Ratio<u128>) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Distance magic characterization of complete `p`-partite graphs for
/// `p ∈ {2, 3, 4}`: the second smallest part has at least two vertices,
/// `2p | n(n+1)`, and for every `i` the `s_i = n_1 + … + n_i` largest labels
/// of `{1..n}` sum to at least `i·n(n+1)/(2p)`.
pub fn is_distance_magic_multipartite(spec: &PartiteSpec) -> Result<bool> {
    let p = spec.parts() as u128;
    if !(2..=4).contains(&p) {
        return Err(Error::domain(
            "the multipartite characterization",
            format!("{p} parts, need 2 to 4"),
        ));
    }
    let sizes = spec.sizes();
    let n = spec.order() as u128;
    let total = n * (n + 1);
    if sizes[1] < 2 || !total.is_multiple_of(2 * p) {
        return Ok(false);
    }
    let mut s = 0u128;
    for i in 1..=p {
        s += sizes[i as usize - 1] as u128;
        // top s labels: n + (n-1) + … + (n-s+1)
        let top = s * (2 * n - s + 1) / 2;
        if 2 * p * top < total * i {
            return Ok(false);
        }
    }
    Ok(true)
}

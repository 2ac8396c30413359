//! Results of index computations.

use std::fmt;

use serde_json::{json, Value};

use crate::labeling::Labeling;

/// Which rule produced a [`ThetaResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    /// No edges: every labeling has all weights zero.
    Edgeless,
    BipartiteBalanced,
    BipartiteParity,
    BipartiteDeficit,
    TripartiteI,
    TripartiteII,
    TripartiteIII,
    TripartiteIV,
    TripartiteV,
    KabDistanceMagic,
    KabOtherwise,
    /// `K(a,2)` with `a ≡ 1 (mod 4)`; settled by the bipartite formula.
    KabException,
    MkabDistanceMagic,
    MkabOtherwise,
    MclexDistanceMagic,
    MclexOtherwise,
    LexDistanceMagic,
    LexOtherwise,
    LexException,
    Unresolved,
    Oracle,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Edgeless => "edgeless",
            CaseTag::BipartiteBalanced => "bipartite-balanced",
            CaseTag::BipartiteParity => "bipartite-parity",
            CaseTag::BipartiteDeficit => "bipartite-deficit",
            CaseTag::TripartiteI => "tripartite-I",
            CaseTag::TripartiteII => "tripartite-II",
            CaseTag::TripartiteIII => "tripartite-III",
            CaseTag::TripartiteIV => "tripartite-IV",
            CaseTag::TripartiteV => "tripartite-V",
            CaseTag::KabDistanceMagic => "Kab-dmg",
            CaseTag::KabOtherwise => "Kab-otherwise",
            CaseTag::KabException => "Kab-exception",
            CaseTag::MkabDistanceMagic => "mKab-dmg",
            CaseTag::MkabOtherwise => "mKab-otherwise",
            CaseTag::MclexDistanceMagic => "mClex-dmg",
            CaseTag::MclexOtherwise => "mClex-otherwise",
            CaseTag::LexDistanceMagic => "lex-dmg",
            CaseTag::LexOtherwise => "lex-otherwise",
            CaseTag::LexException => "lex-exception",
            CaseTag::Unresolved => "unresolved-by-paper",
            CaseTag::Oracle => "oracle",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Theorem,
    Oracle,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Theorem => "theorem",
            Provenance::Oracle => "oracle",
        }
    }
}

/// An index value, exact or bracketed. `upper == None` means unbounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaResult {
    pub lower: u64,
    pub upper: Option<u64>,
    pub case: CaseTag,
    pub provenance: Provenance,
    pub witness: Option<Labeling>,
    /// Set by the oracle when its search space held no labeling at all.
    pub no_labeling_found: bool,
}

impl ThetaResult {
    pub fn exact(theta: u64, case: CaseTag) -> Self {
        Self::bounds(theta, Some(theta), case)
    }

    pub fn bounds(lower: u64, upper: Option<u64>, case: CaseTag) -> Self {
        debug_assert!(upper.is_none_or(|u| lower <= u));
        ThetaResult {
            lower,
            upper,
            case,
            provenance: if case == CaseTag::Oracle {
                Provenance::Oracle
            } else {
                Provenance::Theorem
            },
            witness: None,
            no_labeling_found: false,
        }
    }

    pub fn with_witness(mut self, w: Labeling) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn is_exact(&self) -> bool {
        self.upper == Some(self.lower)
    }

    /// The exact value, if known.
    pub fn theta(&self) -> Option<u64> {
        self.is_exact().then_some(self.lower)
    }

    /// Whether `value` is consistent with the bounds.
    pub fn contains(&self, value: u64) -> bool {
        value >= self.lower && self.upper.is_none_or(|u| value <= u)
    }

    /// JSON with sorted keys. The witness is included when `with_witness`
    /// is set and one is attached.
    pub fn to_json(&self, with_witness: bool) -> Value {
        let mut v = json!({
            "case": self.case.as_str(),
            "exact": self.is_exact(),
            "lower": self.lower,
            "upper": self.upper,
            "provenance": self.provenance.as_str(),
        });
        let obj = v.as_object_mut().expect("object");
        if let Some(t) = self.theta() {
            obj.insert("theta".into(), json!(t));
        }
        if self.no_labeling_found {
            obj.insert("no_labeling_found".into(), json!(true));
        }
        if with_witness {
            if let Some(w) = &self.witness {
                obj.insert("witness".into(), w.to_json());
                obj.insert("eta".into(), json!(w.eta()));
            }
        }
        v
    }
}

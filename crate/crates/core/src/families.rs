//! Regular families built as blow-ups `G ∘ K̄ₐ`: `K(a,b)` (b parts of size
//! a), `mK(a,b)`, `m(C_b ∘ K̄ₐ)`, and `G ∘ K̄ₐ` for an r-regular `G`.
//!
//! When the index is 1 the witness comes from a quasimagic rectangle with
//! `a` rows and one column per vertex of the base graph: the `a` copies of
//! base vertex `u` take column `u`. A vertex then sees whole columns, so
//! its weight is the column sum times its degree in the base graph.

use crate::arrays::{qmr, Construction};
use crate::bipartite::{label_bipartite, theta_bipartite};
use crate::error::{Error, Result};
use crate::graph::{
    build_complete_multipartite, build_cycle, disjoint_union, lex_blowup, Graph, PartiteSpec,
};
use crate::labeling::{verify_s_magic, Labeling};
use crate::theta::{CaseTag, ThetaResult};

fn check_min(what: &'static str, name: &str, v: usize, min: usize) -> Result<()> {
    if v < min {
        return Err(Error::domain(what, format!("{name} = {v}, need at least {min}")));
    }
    Ok(())
}

/// `K(a,b)`: `b` parts of size `a`.
pub fn theta_k_ab(a: usize, b: usize) -> Result<ThetaResult> {
    check_min("K(a,b)", "a", a, 2)?;
    check_min("K(a,b)", "b", b, 2)?;
    Ok(if a.is_multiple_of(2) || b % 2 == 1 {
        ThetaResult::exact(0, CaseTag::KabDistanceMagic)
    } else if b == 2 && a % 4 == 1 {
        // No QMR(a,2) here, but K(a,2) is the balanced K_{a,a}.
        let t = theta_bipartite(a, a)?;
        ThetaResult::exact(t.lower, CaseTag::KabException)
    } else {
        ThetaResult::exact(1, CaseTag::KabOtherwise)
    })
}

/// `m` disjoint copies of `K(a,b)`, `m ≥ 2`.
pub fn theta_mk_ab(m: usize, a: usize, b: usize) -> Result<ThetaResult> {
    check_min("mK(a,b)", "m", m, 2)?;
    check_min("mK(a,b)", "a", a, 2)?;
    check_min("mK(a,b)", "b", b, 2)?;
    Ok(if a.is_multiple_of(2) || (m * a * b) % 2 == 1 {
        ThetaResult::exact(0, CaseTag::MkabDistanceMagic)
    } else {
        ThetaResult::exact(1, CaseTag::MkabOtherwise)
    })
}

/// `m` disjoint copies of `C_b ∘ K̄ₐ`.
pub fn theta_mc_lex(m: usize, a: usize, b: usize) -> Result<ThetaResult> {
    check_min("m(C_b∘K̄ₐ)", "m", m, 1)?;
    check_min("m(C_b∘K̄ₐ)", "a", a, 2)?;
    check_min("m(C_b∘K̄ₐ)", "b", b, 3)?;
    Ok(if a.is_multiple_of(2) || (m * a * b) % 2 == 1 || b.is_multiple_of(4) {
        ThetaResult::exact(0, CaseTag::MclexDistanceMagic)
    } else {
        ThetaResult::exact(1, CaseTag::MclexOtherwise)
    })
}

/// `g ∘ K̄ₐ` for an r-regular `g` on `b` vertices and `a ≥ 2`.
///
/// Two parameter regions have no known answer and come back as `[0, 1]`
/// tagged unresolved: odd `a`, even `b`, `r ≡ 0 (mod 4)`; and odd `a`,
/// `b ≡ 0 (mod 4)`, `r ≡ 2 (mod 4)`.
pub fn theta_lex_regular(g: &Graph, a: usize) -> Result<ThetaResult> {
    let r = g.regularity().ok_or(Error::NotRegular)?;
    if r == 0 {
        return Err(Error::IsolatedVertex);
    }
    // a = 1 is g itself, which the parity rules do not describe (C_3 is not
    // distance magic, while odd b and even r would say it is).
    check_min("G∘K̄ₐ", "a", a, 2)?;
    let b = g.order();
    Ok(if a.is_multiple_of(2) || (b % 2 == 1 && r % 2 == 0) {
        ThetaResult::exact(0, CaseTag::LexDistanceMagic)
    } else if r % 2 == 1 && b == 2 {
        // g = K_2, so the product is K_{a,a}
        let t = theta_bipartite(a, a)?;
        ThetaResult::exact(t.lower, CaseTag::LexException)
    } else if r % 2 == 1 || b % 4 == 2 && r % 4 == 2 {
        ThetaResult::exact(1, CaseTag::LexOtherwise)
    } else {
        ThetaResult::bounds(0, Some(1), CaseTag::Unresolved)
    })
}

/// A family instance with a QMR-based witness.
#[derive(Clone, Debug)]
pub enum Family {
    /// `b` parts of size `a`.
    Kab { a: usize, b: usize },
    Mkab { m: usize, a: usize, b: usize },
    Mclex { m: usize, a: usize, b: usize },
    LexRegular { g: Graph, a: usize },
}

impl Family {
    fn base(&self) -> Result<Graph> {
        Ok(match self {
            Family::Kab { b, .. } => build_complete_multipartite(&PartiteSpec::new(vec![1; *b])?),
            Family::Mkab { m, b, .. } => {
                disjoint_union(*m, &build_complete_multipartite(&PartiteSpec::new(vec![1; *b])?))?
            }
            Family::Mclex { m, b, .. } => disjoint_union(*m, &build_cycle(*b)?)?,
            Family::LexRegular { g, .. } => g.clone(),
        })
    }

    fn a(&self) -> usize {
        match self {
            Family::Kab { a, .. }
            | Family::Mkab { a, .. }
            | Family::Mclex { a, .. }
            | Family::LexRegular { a, .. } => *a,
        }
    }

    /// The graph, with vertex ids matching the witness.
    pub fn graph(&self) -> Result<Graph> {
        match self {
            Family::Kab { a, b } => Ok(build_complete_multipartite(&PartiteSpec::new(vec![*a; *b])?)),
            Family::Mkab { m, a, b } => disjoint_union(
                *m,
                &build_complete_multipartite(&PartiteSpec::new(vec![*a; *b])?),
            ),
            Family::Mclex { m, a, b } => disjoint_union(*m, &lex_blowup(&build_cycle(*b)?, *a)?),
            Family::LexRegular { g, a } => lex_blowup(g, *a),
        }
    }

    pub fn theta(&self) -> Result<ThetaResult> {
        match self {
            Family::Kab { a, b } => theta_k_ab(*a, *b),
            Family::Mkab { m, a, b } => theta_mk_ab(*m, *a, *b),
            Family::Mclex { m, a, b } => theta_mc_lex(*m, *a, *b),
            Family::LexRegular { g, a } => theta_lex_regular(g, *a),
        }
    }
}

/// A certified labeling together with its magic constant.
#[derive(Clone, Debug)]
pub struct FamilyWitness {
    pub labeling: Labeling,
    pub constant: u64,
}

/// Labels the `a` copies of base vertex `u` with column `u` of
/// `QMR(a, |V(base)|)` and certifies the result. The constant is
/// `σ(b−1)` for `K(a,b)` and `mK(a,b)`, `2σ` for the cycle family and `rσ`
/// for an r-regular base.
pub fn label_family_via_qmr(family: &Family) -> Result<FamilyWitness> {
    let base = family.base()?;
    let a = family.a();
    let cols = base.order();
    let r = base.regularity().ok_or(Error::NotRegular)?;
    let off_path = |why: String| Error::domain("the QMR construction", why);
    let arr = match qmr(a, cols) {
        Ok(Construction::Built(arr)) => arr,
        Ok(Construction::NotExists(why)) => return Err(off_path(why)),
        Err(Error::OutOfDomain { why, .. }) => return Err(off_path(why)),
        Err(e) => return Err(e),
    };
    let labels: Vec<u64> = (0..cols * a).map(|v| arr.entries[v % a][v / a]).collect();
    let labeling = Labeling::new(labels)?;
    let constant = r as u64 * arr.col_sum;
    certify(&family.graph()?, &labeling, constant)?;
    Ok(FamilyWitness { labeling, constant })
}

/// A witness realizing the index when it is 1: the QMR labeling, or for
/// `K_{a,a}` the bipartite construction. `None` when the index is not
/// exactly 1.
pub fn family_witness(family: &Family) -> Result<Option<FamilyWitness>> {
    let theta = family.theta()?;
    if theta.theta() != Some(1) {
        return Ok(None);
    }
    if matches!(theta.case, CaseTag::KabException | CaseTag::LexException) {
        let a = family.a();
        let l = label_bipartite(a, a, 2 * a as u64 + 1)?
            .ok_or_else(|| Error::Inconsistent(format!("no bipartite witness for K({a},{a})")))?;
        let g = family.graph()?;
        let report = verify_s_magic(&g, &l)?;
        let constant = report
            .constant
            .filter(|_| report.is_magic)
            .ok_or_else(|| Error::Inconsistent(format!("K({a},{a}) witness is not magic")))?;
        return Ok(Some(FamilyWitness { labeling: l, constant }));
    }
    label_family_via_qmr(family).map(Some)
}

fn certify(g: &Graph, l: &Labeling, constant: u64) -> Result<()> {
    let report = verify_s_magic(g, l)?;
    if !report.is_magic || report.constant != Some(constant) {
        return Err(Error::Inconsistent(format!(
            "QMR labeling has constant {:?}, expected {constant}",
            report.constant
        )));
    }
    if l.eta() != l.len() as u64 + 1 {
        return Err(Error::Inconsistent("QMR labeling should skip exactly one label".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::parse_graph_spec;
    use crate::testutil::PETERSEN;

    fn value(t: Result<ThetaResult>) -> Option<u64> {
        t.unwrap().theta()
    }

    #[test]
    fn k_ab_rules() {
        assert_eq!(value(theta_k_ab(3, 2)), Some(1));
        assert_eq!(value(theta_k_ab(2, 5)), Some(0));
        assert_eq!(value(theta_k_ab(3, 3)), Some(0));
        let t = theta_k_ab(5, 2).unwrap();
        assert_eq!((t.theta(), t.case), (Some(1), CaseTag::KabException));
        assert!(theta_k_ab(1, 4).is_err());
    }

    #[test]
    fn mk_ab_rules() {
        assert_eq!(value(theta_mk_ab(2, 3, 3)), Some(1));
        assert_eq!(value(theta_mk_ab(3, 3, 3)), Some(0));
        assert_eq!(value(theta_mk_ab(2, 2, 4)), Some(0));
        assert!(theta_mk_ab(1, 3, 3).is_err());
    }

    #[test]
    fn mc_lex_rules() {
        assert_eq!(value(theta_mc_lex(1, 3, 4)), Some(0));
        assert_eq!(value(theta_mc_lex(2, 3, 6)), Some(1));
        assert_eq!(value(theta_mc_lex(2, 3, 5)), Some(1));
        assert_eq!(value(theta_mc_lex(3, 3, 5)), Some(0));
    }

    #[test]
    fn lex_regular_rules() {
        let petersen = Graph::parse_adjacency(PETERSEN).unwrap();
        assert_eq!(value(theta_lex_regular(&petersen, 3)), Some(1));
        assert_eq!(value(theta_lex_regular(&petersen, 2)), Some(0));
        // circulant C7(1,2) is 4-regular on 7 vertices
        let c7 = Graph::from_adjacency(
            (0..7)
                .map(|i| [1, 2, 5, 6].iter().map(|d| (i + d) % 7).collect())
                .collect(),
        )
        .unwrap();
        assert_eq!(value(theta_lex_regular(&c7, 3)), Some(0));
        // K_{4,4} is 4-regular on 8 vertices
        let k44 = parse_graph_spec("K(4,4)").unwrap();
        let t = theta_lex_regular(&k44, 3).unwrap();
        assert_eq!((t.lower, t.upper, t.case), (0, Some(1), CaseTag::Unresolved));
        let path = Graph::from_adjacency(vec![vec![1], vec![0, 2], vec![1]]).unwrap();
        assert!(matches!(theta_lex_regular(&path, 3), Err(Error::NotRegular)));
        assert!(theta_lex_regular(&build_cycle(3).unwrap(), 1).is_err());
    }

    #[test]
    fn petersen_blowup_constant() {
        let g = Graph::parse_adjacency(PETERSEN).unwrap();
        let w = label_family_via_qmr(&Family::LexRegular { g, a: 3 }).unwrap();
        assert_eq!(w.constant, 144);
        assert_eq!(w.labeling.eta(), 31);
    }

    #[test]
    fn k_3_2_constant() {
        let w = label_family_via_qmr(&Family::Kab { a: 3, b: 2 }).unwrap();
        assert_eq!(w.constant, 12);
    }

    #[test]
    fn two_copies_of_k_3_3() {
        let w = label_family_via_qmr(&Family::Mkab { m: 2, a: 3, b: 3 }).unwrap();
        // QMR(3,6) has column sum 3·20/2 = 30
        assert_eq!(w.constant, 60);
    }

    #[test]
    fn off_path() {
        assert!(label_family_via_qmr(&Family::Kab { a: 5, b: 2 }).is_err());
        assert!(label_family_via_qmr(&Family::Kab { a: 4, b: 3 }).is_err());
        let w = family_witness(&Family::Kab { a: 5, b: 2 }).unwrap().unwrap();
        assert_eq!(w.labeling.eta(), 11);
        assert!(family_witness(&Family::Kab { a: 2, b: 3 }).unwrap().is_none());
    }
}

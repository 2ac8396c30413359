//! Dispatch from a graph spec to the most specific rule that covers it,
//! with the oracle as an opt-in fallback and cross-check.

use crate::bipartite::{label_bipartite, theta_bipartite};
use crate::error::{Error, Result};
use crate::families::{family_witness, label_family_via_qmr, Family};
use crate::graph::{Graph, PartiteSpec};
use crate::labeling::{verify_s_magic, Labeling, VerifyReport};
use crate::oracle::{
    oracle_theta_general, oracle_theta_multipartite, OracleOptions, GENERAL_MAX_ORDER,
    MULTIPARTITE_MAX_ORDER,
};
use crate::spec::{GraphSpec, DEFAULT_VERTEX_LIMIT};
use crate::theta::{CaseTag, ThetaResult};
use crate::tripartite::{label_tripartite, theta_tripartite};

/// Which rule handles a graph.
#[derive(Clone, Debug)]
pub enum Route {
    Edgeless,
    Bipartite(usize, usize),
    Tripartite(usize, usize, usize),
    Family(Family),
    /// Complete multipartite, but no formula applies.
    Multipartite(PartiteSpec),
    Unsupported,
}

/// Base graph of a blow-up `B ∘ K̄ₐ`.
#[derive(Clone, Debug)]
enum Base {
    /// `m` disjoint complete graphs `K_b`.
    Complete { m: usize, b: usize },
    /// `m` disjoint cycles `C_b`.
    Cycle { m: usize, b: usize },
    Other(GraphSpec),
}

/// Rewrites a spec as `B ∘ K̄ₐ`, using `U(m, X∘K̄ₐ) = U(m,X)∘K̄ₐ` and
/// `(X∘K̄ₐ)∘K̄_c = X∘K̄_{ac}`; both keep vertex ids unchanged.
fn blowup_form(spec: &GraphSpec) -> (Base, usize) {
    match spec {
        GraphSpec::Complete(s) => match s.common_size() {
            Some(a) if s.parts() >= 2 => (Base::Complete { m: 1, b: s.parts() }, a),
            _ => (Base::Other(spec.clone()), 1),
        },
        GraphSpec::Cycle(b) => (Base::Cycle { m: 1, b: *b }, 1),
        GraphSpec::Union(k, inner) => {
            let (base, a) = blowup_form(inner);
            let base = match base {
                Base::Complete { m, b } => Base::Complete { m: m * k, b },
                Base::Cycle { m, b } => Base::Cycle { m: m * k, b },
                Base::Other(x) => Base::Other(GraphSpec::Union(*k, Box::new(x))),
            };
            (base, a)
        }
        GraphSpec::Lex(inner, c) => {
            let (base, a) = blowup_form(inner);
            (base, a * c)
        }
        GraphSpec::File(_) => (Base::Other(spec.clone()), 1),
    }
}

fn partite_route(s: &PartiteSpec) -> Route {
    let sizes = s.sizes();
    match *sizes {
        [_] => Route::Edgeless,
        [n1, n2] if n1 >= 2 => Route::Bipartite(n1, n2),
        [n1, n2, n3] if n1 >= 2 => Route::Tripartite(n1, n2, n3),
        _ => match s.common_size() {
            Some(a) if a >= 2 => Route::Family(Family::Kab { a, b: s.parts() }),
            _ => Route::Multipartite(s.clone()),
        },
    }
}

/// Picks the rule for `spec`; `g` is the built graph.
pub fn route(spec: &GraphSpec, g: &Graph, limit: usize) -> Result<Route> {
    if g.edge_count() == 0 {
        return Ok(Route::Edgeless);
    }
    let (base, a) = blowup_form(spec);
    Ok(match base {
        Base::Complete { m: 1, b } => partite_route(&PartiteSpec::new(vec![a; b])?),
        Base::Complete { m, b } if a >= 2 => Route::Family(Family::Mkab { m, a, b }),
        Base::Cycle { m, b } if a >= 2 => Route::Family(Family::Mclex { m, a, b }),
        Base::Other(GraphSpec::Complete(s)) if a == 1 => partite_route(&s),
        Base::Other(x) if a >= 2 => {
            let base = x.build(limit)?;
            match base.regularity() {
                Some(r) if r > 0 => Route::Family(Family::LexRegular { g: base, a }),
                _ => Route::Unsupported,
            }
        }
        _ => Route::Unsupported,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct IndexOptions {
    /// Fall back to the oracle when no rule applies.
    pub oracle: bool,
    /// Cross-check the rule's answer with the oracle (desk scale only).
    pub certify: bool,
    /// Largest excess the oracle tries; defaults to 16 for complete
    /// multipartite graphs and 8 otherwise.
    pub max_excess: Option<u64>,
    pub oracle_opts: OracleOptions,
    pub vertex_limit: usize,
}

impl Default for IndexOptions {
    fn default() -> Self {
        IndexOptions {
            oracle: false,
            certify: false,
            max_excess: None,
            oracle_opts: OracleOptions::default(),
            vertex_limit: DEFAULT_VERTEX_LIMIT,
        }
    }
}

/// A parsed and built instance with its route.
pub struct Instance {
    pub spec: GraphSpec,
    pub graph: Graph,
    pub route: Route,
}

impl Instance {
    pub fn new(spec: GraphSpec, limit: usize) -> Result<Self> {
        let graph = spec.build(limit)?;
        let route = route(&spec, &graph, limit)?;
        Ok(Instance { spec, graph, route })
    }

    fn theorem(&self) -> Result<Option<ThetaResult>> {
        Ok(Some(match &self.route {
            Route::Edgeless => ThetaResult::exact(0, CaseTag::Edgeless),
            Route::Bipartite(n1, n2) => theta_bipartite(*n1, *n2)?,
            Route::Tripartite(n1, n2, n3) => theta_tripartite(*n1, *n2, *n3)?,
            Route::Family(f) => f.theta()?,
            Route::Multipartite(_) | Route::Unsupported => return Ok(None),
        }))
    }

    fn oracle(&self, max_excess: Option<u64>, opts: &IndexOptions) -> Result<ThetaResult> {
        let n = self.graph.order();
        match self.graph.partite() {
            Some(meta) if n <= MULTIPARTITE_MAX_ORDER => oracle_theta_multipartite(
                &meta.spec,
                max_excess.or(opts.max_excess).unwrap_or(16),
                &opts.oracle_opts,
            ),
            _ => oracle_theta_general(
                &self.graph,
                max_excess.or(opts.max_excess).unwrap_or(8),
                &opts.oracle_opts,
            ),
        }
    }

    fn at_desk_scale(&self) -> bool {
        let n = self.graph.order();
        match self.graph.partite() {
            Some(_) => n <= MULTIPARTITE_MAX_ORDER,
            None => n <= GENERAL_MAX_ORDER,
        }
    }

    /// The index: from a rule when one applies, otherwise from the oracle
    /// if allowed.
    pub fn index(&self, opts: &IndexOptions) -> Result<ThetaResult> {
        let Some(mut theta) = self.theorem()? else {
            if opts.oracle {
                return self.oracle(None, opts);
            }
            return Err(Error::Unsupported(self.spec.to_string()));
        };
        if opts.certify {
            let check = self.oracle(theta.upper.or(opts.max_excess), opts)?;
            let agrees = match check.theta() {
                Some(v) => theta.contains(v),
                None => theta.upper.is_none(),
            };
            if !agrees || (theta.is_exact() && check.theta() != theta.theta()) {
                return Err(Error::Inconsistent(format!(
                    "{}: rule gives {:?}..{:?}, oracle gives {:?}..{:?}",
                    self.spec, theta.lower, theta.upper, check.lower, check.upper
                )));
            }
            if theta.witness.is_none() {
                theta.witness = check.witness;
            }
        }
        Ok(theta)
    }

    /// A certified labeling. For rules the witness realizes the index when
    /// it is known, or the upper bound otherwise; `None` when no
    /// construction applies and the oracle is not enabled.
    pub fn label(&self, opts: &IndexOptions) -> Result<LabelOutcome> {
        let theta = self.index(opts)?;
        let n = self.graph.order() as u64;
        let mut witness = match (&self.route, theta.witness.clone()) {
            (_, Some(w)) => Some(w),
            (Route::Edgeless, None) => Some(Labeling::new((1..=n).collect())?),
            (Route::Bipartite(n1, n2), None) => {
                let target = n + theta.theta().unwrap_or(0);
                label_bipartite(*n1, *n2, target)?
            }
            (Route::Tripartite(n1, n2, n3), None) => label_tripartite(*n1, *n2, *n3)?,
            (Route::Family(f), None) => match theta.upper {
                Some(1) if theta.theta() == Some(1) => family_witness(f)?.map(|w| w.labeling),
                Some(1) => Some(label_family_via_qmr(f)?.labeling),
                _ => None,
            },
            _ => None,
        };
        if witness.is_none() && (opts.oracle || opts.certify) && self.at_desk_scale() {
            witness = self.oracle(theta.upper, opts)?.witness;
        }
        let report = match &witness {
            Some(w) => {
                let r = verify_s_magic(&self.graph, w)?;
                if !r.is_magic {
                    return Err(Error::Inconsistent(format!("witness for {} is not S-magic", self.spec)));
                }
                if w.eta() - n < theta.lower {
                    return Err(Error::Inconsistent(format!(
                        "witness for {} beats the claimed index",
                        self.spec
                    )));
                }
                Some(r)
            }
            None => None,
        };
        Ok(LabelOutcome {
            theta,
            witness,
            report,
        })
    }
}

#[derive(Clone, Debug)]
pub struct LabelOutcome {
    pub theta: ThetaResult,
    pub witness: Option<Labeling>,
    pub report: Option<VerifyReport>,
}

/// Parses, builds and routes `text` with default options.
pub fn index_of(text: &str) -> Result<ThetaResult> {
    Instance::new(GraphSpec::parse(text)?, DEFAULT_VERTEX_LIMIT)?.index(&IndexOptions::default())
}

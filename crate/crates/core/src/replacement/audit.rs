//! Bounded audit of iterated replacements.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use super::angle::{iterate_n3, n3_initial_angles, rational_point_of_expr, AngleExpr, Rationality};
use super::{all_replacements, replacement_problem, ReplacementProblem};
use crate::network::{canonical_form, is_admissible, Mode, Network, NetworkError};

/// Four iterated replacements are all the classification argument uses.
pub const MAX_AUDIT_DEPTH: usize = 4;
pub const MAX_AUDIT_BOUND: u64 = 50;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AuditError {
    #[error("depth {0} exceeds the maximum of {MAX_AUDIT_DEPTH}")]
    DepthTooLarge(usize),
    #[error("bound {0} outside 1..={MAX_AUDIT_BOUND}")]
    BoundOutOfRange(u64),
    #[error("network is not admissible")]
    NotAdmissible,
    #[error(transparent)]
    Network(#[from] NetworkError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AuditStatus {
    /// Every vertex admits a replacement that is itself good to `depth − 1`.
    Good { depth: usize },
    /// Not good to `depth`: some vertex has no replacement good to `depth − 1`.
    Refuted { depth: usize },
    /// A branch could not be decided exactly.
    Inconclusive { reason: String },
}

impl fmt::Display for AuditStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuditStatus::Good { depth } => write!(f, "good-to-depth-{depth}"),
            AuditStatus::Refuted { depth } => write!(f, "refuted-at-depth-{depth}"),
            AuditStatus::Inconclusive { .. } => f.write_str("inconclusive"),
        }
    }
}

/// Symbolic certificate that no three-vertex network is good.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct N3Certificate {
    /// `(α12, α13, α23)` after two replacements at `v_1`.
    pub after_v1: [AngleExpr; 3],
    /// The same after two replacements at `v_3`.
    pub after_v3: [AngleExpr; 3],
    /// Difference of the two `α12` slots.
    pub difference: AngleExpr,
    pub rationality: Rationality,
}

impl N3Certificate {
    pub fn message(&self) -> String {
        match self.rationality {
            Rationality::ForcedIrrational => format!("{} is not a rational point", self.difference),
            Rationality::ForcedRational => format!("{} is a rational point", self.difference),
            Rationality::DependsOnVariables => format!("{} depends on the angles", self.difference),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// `chain[0]` is the audited network, each next entry a replacement of
    /// the previous; `vertex` of the last one poses `problem`, for which the
    /// exhaustive search found no replacement.
    Infeasible {
        chain: Vec<Network>,
        vertex: usize,
        problem: ReplacementProblem,
    },
    /// A chain of replacements of the requested length.
    Chain(Vec<Network>),
    Symbolic(Box<N3Certificate>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditVerdict {
    pub status: AuditStatus,
    /// Multiplicity bound of the search; refutations hold relative to it.
    pub bound: u64,
    pub witness: Option<Witness>,
}

/// Two replacements at `v_1` and two at `v_3` leave `α12` slots whose
/// difference is `(3/4)π`; both must be rational points for an admissible
/// network, which `e^{3iπ/4}` is not.
pub fn certify_no_good_n3() -> AuditVerdict {
    let start = n3_initial_angles();
    let after_v1 = iterate_n3(&start, &[1, 1]);
    let after_v3 = iterate_n3(&start, &[3, 3]);
    let difference = &after_v1[0] - &after_v3[0];
    let rationality = rational_point_of_expr(&difference);
    let status = match rationality {
        Rationality::ForcedIrrational => AuditStatus::Refuted { depth: 2 },
        _ => AuditStatus::Inconclusive {
            reason: format!("difference {difference} is not forced irrational"),
        },
    };
    AuditVerdict {
        status,
        bound: 0,
        witness: Some(Witness::Symbolic(Box::new(N3Certificate {
            after_v1,
            after_v3,
            difference,
            rationality,
        }))),
    }
}

#[derive(Clone, Debug)]
enum Outcome {
    Good(Vec<Network>),
    Refuted {
        depth: usize,
        chain: Vec<Network>,
        vertex: usize,
        problem: ReplacementProblem,
    },
    Inconclusive(String),
}

fn network_key(net: &Network) -> String {
    let c = canonical_form(net);
    let pos: Vec<String> = c
        .vertices()
        .iter()
        .map(|v| match v.position.exact_point() {
            Some(p) => p.tan_half().to_string(),
            None => format!("{:.12}", v.position.angle()),
        })
        .collect();
    format!("{:?}|{:?}|{:?}", c.exterior_mults(), c.edges(), pos)
}

struct Auditor {
    bound: u64,
    memo: HashMap<(String, usize), Outcome>,
}

impl Auditor {
    fn audit(&mut self, net: &Network, depth: usize) -> Outcome {
        if depth == 0 {
            return Outcome::Good(vec![net.clone()]);
        }
        let key = (network_key(net), depth);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let out = self.audit_uncached(net, depth);
        self.memo.insert(key, out.clone());
        out
    }

    fn audit_uncached(&mut self, net: &Network, depth: usize) -> Outcome {
        if !net.is_exact() {
            return Outcome::Inconclusive("network has inexact positions".into());
        }
        let mut good_chain = None;
        let mut refuted: Option<Outcome> = None;
        let mut unknown = None;
        for vertex in 0..net.vertex_count() {
            let problem = match replacement_problem(net, vertex) {
                Ok(p) => p,
                Err(e) => return Outcome::Inconclusive(e.to_string()),
            };
            let candidates = match all_replacements(&problem, self.bound) {
                Ok(c) => c,
                Err(e) => return Outcome::Inconclusive(e.to_string()),
            };
            let vertex_outcome = self.vertex_outcome(net, vertex, problem, candidates, depth);
            match vertex_outcome {
                Outcome::Good(chain) => {
                    good_chain.get_or_insert(chain);
                }
                Outcome::Refuted { depth: d, .. } => {
                    let better = match &refuted {
                        Some(Outcome::Refuted { depth: old, .. }) => d < *old,
                        _ => true,
                    };
                    if better {
                        refuted = Some(vertex_outcome);
                    }
                }
                Outcome::Inconclusive(reason) => {
                    unknown.get_or_insert(reason);
                }
            }
        }
        match (refuted, unknown) {
            (Some(r), _) => r,
            (None, Some(reason)) => Outcome::Inconclusive(reason),
            (None, None) => Outcome::Good(good_chain.unwrap_or_else(|| vec![net.clone()])),
        }
    }

    /// Good if some replacement is good to `depth − 1`; refuted (at one more
    /// than the deepest refutation among them) if all are refuted.
    fn vertex_outcome(
        &mut self,
        net: &Network,
        vertex: usize,
        problem: ReplacementProblem,
        candidates: Vec<Network>,
        depth: usize,
    ) -> Outcome {
        if candidates.is_empty() {
            return Outcome::Refuted {
                depth: 1,
                chain: vec![net.clone()],
                vertex,
                problem,
            };
        }
        let mut deepest: Option<Outcome> = None;
        let mut unknown = None;
        for cand in candidates {
            match self.audit(&cand, depth - 1) {
                Outcome::Good(mut chain) => {
                    chain.insert(0, net.clone());
                    return Outcome::Good(chain);
                }
                Outcome::Refuted {
                    depth: d,
                    mut chain,
                    vertex: v,
                    problem: p,
                } => {
                    if deepest.as_ref().is_none_or(
                        |o| matches!(o, Outcome::Refuted { depth: old, .. } if d + 1 > *old),
                    ) {
                        chain.insert(0, net.clone());
                        deepest = Some(Outcome::Refuted {
                            depth: d + 1,
                            chain,
                            vertex: v,
                            problem: p,
                        });
                    }
                }
                Outcome::Inconclusive(reason) => {
                    unknown.get_or_insert(reason);
                }
            }
        }
        match unknown {
            Some(reason) => Outcome::Inconclusive(reason),
            None => deepest.expect("at least one refuted candidate"),
        }
    }
}

/// Audits `net` to `depth` iterated replacements with multiplicities at most
/// `bound`.
///
/// `net` is good to depth `k` when every vertex has a replacement within the
/// bound that is good to depth `k − 1`; every network is good to depth 0.
/// Results are memoized on the canonical form.
pub fn good_network_audit(
    net: &Network,
    depth: usize,
    bound: u64,
) -> Result<AuditVerdict, AuditError> {
    if depth > MAX_AUDIT_DEPTH {
        return Err(AuditError::DepthTooLarge(depth));
    }
    if bound == 0 || bound > MAX_AUDIT_BOUND {
        return Err(AuditError::BoundOutOfRange(bound));
    }
    let mode = if net.is_exact() {
        Mode::Exact
    } else {
        Mode::Float
    };
    if !is_admissible(net, mode, net.default_tolerance())?.admissible() {
        return Err(AuditError::NotAdmissible);
    }
    let mut auditor = Auditor {
        bound,
        memo: HashMap::new(),
    };
    let (status, witness) = match auditor.audit(net, depth) {
        Outcome::Good(chain) => (AuditStatus::Good { depth }, Some(Witness::Chain(chain))),
        Outcome::Refuted {
            depth,
            chain,
            vertex,
            problem,
        } => (
            AuditStatus::Refuted { depth },
            Some(Witness::Infeasible {
                chain,
                vertex,
                problem,
            }),
        ),
        Outcome::Inconclusive(reason) => (AuditStatus::Inconclusive { reason }, None),
    };
    Ok(AuditVerdict {
        status,
        bound,
        witness,
    })
}

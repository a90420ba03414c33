//! Exhaustive audit of the degree-counting argument.
//!
//! For a good network with `n` vertices every chord structure must fail one
//! of the necessary conditions below; structures that pass all of them are
//! reported as survivors. The only exception is the triangle on three
//! points, which counting cannot exclude and which is handed to the exact
//! N = 3 certificate.

use serde::Serialize;

use super::{closed_form_bounds, enumerate_chord_sets, BoundsTriple, ChordError, ChordSet};

/// Why a chord structure cannot underlie a good network.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Exclusion {
    /// A vertex without interior edges cannot balance its exterior ray.
    IsolatedVertex { vertex: usize },
    /// A degree-1 vertex whose edge cannot be the diameter through it: more
    /// than one leaf chord, or the antipode lacks neighbours on both sides.
    LeafGeometry { leaf: usize },
    /// Replacing at this vertex yields a network with `degree + 1` vertices,
    /// already known to have no good network.
    ForbiddenDegree { vertex: usize, degree: usize },
    /// Every vertex has degree 2 on three points: settled by the exact N = 3
    /// argument instead of counting.
    DeferredToN3,
    /// Passed every filter.
    Survivor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureFinding {
    pub chords: Vec<(usize, usize)>,
    pub degrees: Vec<usize>,
    pub edges: usize,
    pub within_f: bool,
    /// Degree-1 vertices.
    pub leaves: Vec<usize>,
    /// `Some(E ≤ F1)` when the structure has a leaf and passes the leaf filter.
    pub within_f1: Option<bool>,
    pub exclusion: Exclusion,
}

/// The inequalities that make survivors impossible for this `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountingWitness {
    /// Smallest allowed degree of a non-leaf vertex.
    pub min_degree: usize,
    /// Lower bound on `Σ deg` without leaves: `min_degree · n`.
    pub degree_sum_lower: usize,
    /// Upper bound `2F(n)`.
    pub degree_sum_upper: usize,
    /// Lower bound on `E` with leaves: `(min_degree (n − 2) + 2) / 2`, rounded up.
    pub leaf_edges_lower: usize,
    /// Upper bound `F1(n)`.
    pub leaf_edges_upper: usize,
    pub text: String,
}

impl CountingWitness {
    pub fn contradicts(&self) -> bool {
        self.degree_sum_lower > self.degree_sum_upper
            && self.leaf_edges_lower > self.leaf_edges_upper
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CountingAudit {
    pub n: usize,
    pub bounds: BoundsTriple,
    pub structures: usize,
    pub findings: Vec<StructureFinding>,
    pub survivors: Vec<ChordSet>,
    pub deferred: Vec<ChordSet>,
    /// Structures exceeding `F(n)`, or passing the leaf filter with `E > F1(n)`.
    pub bound_violations: Vec<ChordSet>,
    pub witness: Option<CountingWitness>,
}

/// Smallest interior degree a non-leaf vertex of a good network can have.
fn min_allowed_degree(n: usize) -> usize {
    match n {
        0..=3 => 2,
        4 => 3,
        _ => 4,
    }
}

fn leaf_exclusion(set: &ChordSet, degrees: &[usize], leaves: &[usize]) -> Option<usize> {
    let neighbour = |v: usize| {
        set.chords()
            .iter()
            .find(|&&(i, j)| i == v || j == v)
            .map(|&(i, j)| if i == v { j } else { i })
            .expect("leaf has one edge")
    };
    // Distinct diameters meet at the centre, so all leaves share one chord.
    let diameter = {
        let v = leaves[0];
        let w = neighbour(v);
        (v.min(w), v.max(w))
    };
    if let Some(&bad) = leaves.iter().find(|&&v| v != diameter.0 && v != diameter.1) {
        return Some(bad);
    }
    let (a, b) = diameter;
    let inside = |x: usize| a < x && x < b;
    for (v, w) in [(a, b), (b, a)] {
        if degrees[v] == 1 && degrees[w] >= 2 {
            // The antipode balances its other edges only with neighbours on both sides.
            let others: Vec<usize> = set
                .chords()
                .iter()
                .filter(|&&(i, j)| (i == w || j == w) && (i, j) != diameter)
                .map(|&(i, j)| if i == w { j } else { i })
                .collect();
            let one_side = others.iter().any(|&x| inside(x));
            let other_side = others.iter().any(|&x| !inside(x));
            if !(one_side && other_side) {
                return Some(v);
            }
        }
    }
    None
}

fn classify(set: &ChordSet, bounds: &BoundsTriple) -> StructureFinding {
    let n = set.n();
    let degrees = set.degrees();
    let edges = set.len();
    let leaves: Vec<usize> = (0..n).filter(|&v| degrees[v] == 1).collect();
    let mut within_f1 = None;
    let min_degree = min_allowed_degree(n);

    let exclusion = if let Some(vertex) = (0..n).find(|&v| degrees[v] == 0) {
        Exclusion::IsolatedVertex { vertex }
    } else if let Some(leaf) = (!leaves.is_empty())
        .then(|| leaf_exclusion(set, &degrees, &leaves))
        .flatten()
    {
        Exclusion::LeafGeometry { leaf }
    } else {
        if !leaves.is_empty() {
            within_f1 = Some(edges <= bounds.big_f1);
        }
        match (0..n).find(|&v| degrees[v] >= 2 && degrees[v] < min_degree) {
            Some(vertex) => Exclusion::ForbiddenDegree {
                vertex,
                degree: degrees[vertex],
            },
            None if n == 3 && degrees.iter().all(|&d| d == 2) => Exclusion::DeferredToN3,
            None => Exclusion::Survivor,
        }
    };
    StructureFinding {
        chords: set.chords().to_vec(),
        degrees,
        edges,
        within_f: edges <= bounds.big_f,
        leaves,
        within_f1,
        exclusion,
    }
}

fn witness(n: usize, bounds: &BoundsTriple) -> Option<CountingWitness> {
    if n < 4 {
        return None;
    }
    let d = min_allowed_degree(n);
    let degree_sum_lower = d * n;
    let degree_sum_upper = 2 * bounds.big_f;
    let leaf_edges_lower = (d * (n - 2) + 2).div_ceil(2);
    let text = format!(
        "no leaf: sum deg >= {d}N = {degree_sum_lower} > 2F({n}) = {degree_sum_upper}; \
         leaf: E >= ({d}(N-2)+2)/2 = {leaf_edges_lower} > F1({n}) = {}",
        bounds.big_f1
    );
    Some(CountingWitness {
        min_degree: d,
        degree_sum_lower,
        degree_sum_upper,
        leaf_edges_lower,
        leaf_edges_upper: bounds.big_f1,
        text,
    })
}

/// Enumerates every non-crossing structure on `n ≥ 3` points (sides allowed)
/// and records which necessary condition excludes it.
pub fn audit_counting_argument(n: usize) -> Result<CountingAudit, ChordError> {
    let bounds = closed_form_bounds(n);
    let mut findings = Vec::new();
    let mut survivors = Vec::new();
    let mut deferred = Vec::new();
    let mut bound_violations = Vec::new();
    for set in enumerate_chord_sets(n, true)? {
        let finding = classify(&set, &bounds);
        if !finding.within_f || finding.within_f1 == Some(false) {
            bound_violations.push(set.clone());
        }
        match finding.exclusion {
            Exclusion::Survivor => survivors.push(set),
            Exclusion::DeferredToN3 => deferred.push(set),
            _ => {}
        }
        findings.push(finding);
    }
    Ok(CountingAudit {
        n,
        bounds,
        structures: findings.len(),
        findings,
        survivors,
        deferred,
        bound_violations,
        witness: witness(n, &bounds),
    })
}

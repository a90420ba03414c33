//! Replacements: admissible networks whose exterior rays reproduce the
//! tangent directions and multiplicities at one vertex of another network.

mod angle;
mod audit;

use std::cmp::Ordering;

use thiserror::Error;

use crate::combinatorics::{enumerate_chord_sets, ChordError, ChordSet};
use crate::exact::{rational_tangent, Q};
use crate::network::{
    canonical_form, is_admissible, make_network, CirclePoint, InteriorEdge, Mode, Network, Vertex,
    DEFAULT_RELATIVE_TOL,
};
use crate::solver::{build_system, positive_integer_solutions, solve, SolverError};

pub use angle::{
    eval_angles, iterate_n3, n3_angle_map, n3_free_angles, n3_initial_angles,
    rational_point_of_expr, AngleExpr, Rationality,
};
pub use audit::{
    certify_no_good_n3, good_network_audit, AuditError, AuditStatus, AuditVerdict, N3Certificate,
    Witness, MAX_AUDIT_BOUND, MAX_AUDIT_DEPTH,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReplacementError {
    #[error("vertex {0} has no interior edges")]
    IsolatedVertex(usize),
    #[error("vertex index {index} out of range for {len} vertices")]
    VertexOutOfRange { index: usize, len: usize },
    #[error("inexact problem: float search over {0} multiplicity vectors exceeds the limit")]
    FloatSearchTooLarge(u128),
    #[error(transparent)]
    Chords(#[from] ChordError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Prescribed exterior data for a replacement.
///
/// Directions are sorted by angle, with the replaced vertex's own exterior
/// direction rotated to angle 0; of a configuration and its mirror image the
/// lexicographically smaller one (multiplicities, then angles) is kept.
#[derive(Clone, Debug, PartialEq)]
pub struct ReplacementProblem {
    pub positions: Vec<CirclePoint>,
    pub exterior_mults: Vec<u64>,
}

impl ReplacementProblem {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.positions.iter().all(|p| p.exact_point().is_some())
    }

    /// `Σ m_k p_k` vanishes; necessary for any replacement.
    pub fn balanced_at_infinity(&self) -> bool {
        if self.is_exact() {
            let mut sum = [Q::from_integer(0.into()), Q::from_integer(0.into())];
            for (p, &m) in self.positions.iter().zip(&self.exterior_mults) {
                let e = p.exact_point().expect("exact");
                let m = Q::from_integer(m.into());
                sum[0] += &m * e.x();
                sum[1] += &m * e.y();
            }
            sum.iter().all(|v| *v == Q::from_integer(0.into()))
        } else {
            let mut sum = [0.0, 0.0];
            for (p, &m) in self.positions.iter().zip(&self.exterior_mults) {
                let [x, y] = p.coords();
                sum[0] += m as f64 * x;
                sum[1] += m as f64 * y;
            }
            let total: u64 = self.exterior_mults.iter().sum();
            sum[0].hypot(sum[1]) <= 1e-9 * total.max(1) as f64
        }
    }
}

fn sorted_problem(mut pairs: Vec<(CirclePoint, u64)>) -> ReplacementProblem {
    pairs.sort_by(|a, b| a.0.cmp_angle(&b.0));
    let (positions, exterior_mults) = pairs.into_iter().unzip();
    ReplacementProblem {
        positions,
        exterior_mults,
    }
}

fn problem_cmp(a: &ReplacementProblem, b: &ReplacementProblem) -> Ordering {
    a.exterior_mults.cmp(&b.exterior_mults).then_with(|| {
        a.positions
            .iter()
            .zip(&b.positions)
            .map(|(x, y)| x.cmp_angle(y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

/// Exterior data for a replacement at vertex `i`: the ray direction `v_i`
/// with multiplicity `m_i` and each tangent `T_iw` with multiplicity `m_iw`.
///
/// Tangents along chords of rational length stay exact; others fall back to
/// floating point.
pub fn replacement_problem(
    net: &Network,
    i: usize,
) -> Result<ReplacementProblem, ReplacementError> {
    let len = net.vertex_count();
    if i >= len {
        return Err(ReplacementError::VertexOutOfRange { index: i, len });
    }
    let neighbours = net.neighbors(i);
    if neighbours.is_empty() {
        return Err(ReplacementError::IsolatedVertex(i));
    }
    let vi = &net.vertices()[i];
    let mut pairs = vec![(vi.position.clone(), vi.exterior_mult)];
    for (w, mult) in neighbours {
        let pw = &net.vertices()[w].position;
        let exact = match (vi.position.exact_point(), pw.exact_point()) {
            (Some(a), Some(b)) => rational_tangent(a, b),
            _ => None,
        };
        let t = match exact {
            Some(p) => CirclePoint::exact(p),
            None => {
                let [ax, ay] = vi.position.coords();
                let [bx, by] = pw.coords();
                CirclePoint::from_angle((by - ay).atan2(bx - ax))
            }
        };
        pairs.push((t, mult));
    }
    let pivot = pairs[0].0.clone();
    let rotated: Vec<(CirclePoint, u64)> = pairs
        .iter()
        .map(|(p, m)| (p.rotated_to_origin(&pivot), *m))
        .collect();
    let mirrored: Vec<(CirclePoint, u64)> =
        rotated.iter().map(|(p, m)| (p.reflected(), *m)).collect();
    let (a, b) = (sorted_problem(rotated), sorted_problem(mirrored));
    Ok(if problem_cmp(&b, &a).is_lt() { b } else { a })
}

/// Visits admissible networks solving `problem` in enumeration order:
/// chord structures in lexicographic order, solutions lexicographically
/// within each. Stops when `visit` returns `false`.
fn for_each_replacement(
    problem: &ReplacementProblem,
    bound: u64,
    mut visit: impl FnMut(Network) -> bool,
) -> Result<(), ReplacementError> {
    if !problem.balanced_at_infinity() {
        return Ok(());
    }
    let n = problem.len();
    for set in enumerate_chord_sets(n, true)? {
        if set.degrees().contains(&0) {
            continue;
        }
        for net in solutions_for(problem, &set, bound)? {
            if !visit(net) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn solutions_for(
    problem: &ReplacementProblem,
    set: &ChordSet,
    bound: u64,
) -> Result<Vec<Network>, ReplacementError> {
    if !problem.is_exact() {
        return float_solutions_for(problem, set, bound);
    }
    let system = build_system(&problem.positions, set, Some(&problem.exterior_mults))?;
    let result = solve(&system);
    Ok(positive_integer_solutions(&result, bound)
        .iter()
        .map(|x| {
            let net = system.network(x).expect("solver output is a valid network");
            debug_assert!(is_admissible(&net, Mode::Exact, 0.0).is_ok_and(|r| r.admissible()));
            net
        })
        .collect())
}

/// Largest number of multiplicity vectors tried per chord structure when
/// the problem has float directions.
pub const FLOAT_SEARCH_LIMIT: u128 = 10_000_000;

/// Brute force over `[1, bound]^E` with a float stationarity test, for
/// problems whose directions are not exact.
fn float_solutions_for(
    problem: &ReplacementProblem,
    set: &ChordSet,
    bound: u64,
) -> Result<Vec<Network>, ReplacementError> {
    let e = set.len();
    let space = (bound as u128).checked_pow(e as u32).unwrap_or(u128::MAX);
    if space > FLOAT_SEARCH_LIMIT {
        return Err(ReplacementError::FloatSearchTooLarge(space));
    }
    let pts: Vec<[f64; 2]> = problem.positions.iter().map(CirclePoint::coords).collect();
    let n = pts.len();
    let mut base = vec![[0.0; 2]; n];
    for (k, (p, &m)) in pts.iter().zip(&problem.exterior_mults).enumerate() {
        base[k] = [m as f64 * p[0], m as f64 * p[1]];
    }
    let tangents: Vec<[f64; 2]> = set
        .chords()
        .iter()
        .map(|&(i, j)| {
            let (dx, dy) = (pts[j][0] - pts[i][0], pts[j][1] - pts[i][1]);
            let len = dx.hypot(dy);
            [dx / len, dy / len]
        })
        .collect();
    let total: u64 = problem.exterior_mults.iter().sum();
    let tol = DEFAULT_RELATIVE_TOL * total.max(1) as f64;
    let mut out = Vec::new();
    let mut mults = vec![1u64; e];
    loop {
        let mut r = base.clone();
        for ((&(i, j), t), &m) in set.chords().iter().zip(&tangents).zip(&mults) {
            let m = m as f64;
            r[i][0] += m * t[0];
            r[i][1] += m * t[1];
            r[j][0] -= m * t[0];
            r[j][1] -= m * t[1];
        }
        if r.iter().all(|v| v[0].hypot(v[1]) <= tol) {
            let net = make_network(
                problem
                    .positions
                    .iter()
                    .zip(&problem.exterior_mults)
                    .map(|(p, &m)| Vertex::new(p.clone(), m))
                    .collect(),
                set.chords()
                    .iter()
                    .zip(&mults)
                    .map(|(&(i, j), &m)| InteriorEdge::new(i, j, m))
                    .collect(),
            )
            .expect("problem positions are distinct");
            out.push(net);
        }
        // Odometer increment, last coordinate fastest: lexicographic order.
        let Some(k) = (0..e).rev().find(|&k| mults[k] < bound) else {
            break;
        };
        mults[k] += 1;
        for m in &mut mults[k + 1..] {
            *m = 1;
        }
    }
    Ok(out)
}

/// The first replacement within multiplicity bound `bound`, if any.
///
/// `Ok(None)` means exhaustive search over every non-crossing chord
/// structure and every integer multiplicity vector in `[1, bound]^E` found
/// nothing. Problems with float directions are searched by brute force
/// with a float stationarity test; such results are not exact certificates.
pub fn replacement_feasible(
    problem: &ReplacementProblem,
    bound: u64,
) -> Result<Option<Network>, ReplacementError> {
    let mut found = None;
    for_each_replacement(problem, bound, |net| {
        found = Some(net);
        false
    })?;
    Ok(found)
}

/// Every replacement within `bound`, up to rotation and reflection, in
/// enumeration order.
pub fn all_replacements(
    problem: &ReplacementProblem,
    bound: u64,
) -> Result<Vec<Network>, ReplacementError> {
    let mut out: Vec<Network> = Vec::new();
    let mut seen: Vec<Network> = Vec::new();
    for_each_replacement(problem, bound, |net| {
        let key = canonical_form(&net);
        if !seen.contains(&key) {
            seen.push(key);
            out.push(net);
        }
        true
    })?;
    Ok(out)
}

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{Network, NetworkError};
use crate::combinatorics::chords_cross;
use crate::exact::{classify_square_lengths, squared_distance, to_f64, ChordLength, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

/// Exact residual at one vertex, split by square class.
///
/// The residual vector equals `Σ_k block_k / √rep_k`; since square roots of
/// distinct classes are independent over the rationals, it vanishes exactly
/// iff every block does.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactResidual {
    pub blocks: Vec<(Q, [Q; 2])>,
}

impl ExactResidual {
    pub fn is_zero(&self) -> bool {
        self.blocks
            .iter()
            .all(|(_, b)| b[0].is_zero() && b[1].is_zero())
    }

    pub fn to_f64(&self) -> [f64; 2] {
        self.blocks.iter().fold([0.0, 0.0], |acc, (rep, b)| {
            let s = to_f64(rep).sqrt();
            [acc[0] + to_f64(&b[0]) / s, acc[1] + to_f64(&b[1]) / s]
        })
    }
}

struct ExactFrame {
    reps: Vec<Q>,
    lengths: Vec<ChordLength>,
}

fn exact_frame(net: &Network) -> Option<ExactFrame> {
    let pts = net.exact_points()?;
    let squares: Vec<Q> = net
        .edges
        .iter()
        .map(|e| squared_distance(&pts[e.i], &pts[e.j]))
        .collect();
    let (reps, lengths) = classify_square_lengths(&squares);
    Some(ExactFrame { reps, lengths })
}

fn all_exact_residuals(net: &Network) -> Option<Vec<ExactResidual>> {
    let pts = net.exact_points()?;
    let frame = exact_frame(net)?;
    let zero = || [Q::zero(), Q::zero()];
    let mut out: Vec<Vec<[Q; 2]>> = vec![vec![zero(); frame.reps.len()]; pts.len()];
    for (k, v) in net.vertices.iter().enumerate() {
        let m = Q::from_integer(v.exterior_mult.into());
        out[k][0][0] += &m * pts[k].x();
        out[k][0][1] += &m * pts[k].y();
    }
    for (e, len) in net.edges.iter().zip(&frame.lengths) {
        let m = Q::from_integer(e.mult.into());
        let dx = (pts[e.j].x() - pts[e.i].x()) * &m / &len.rho;
        let dy = (pts[e.j].y() - pts[e.i].y()) * &m / &len.rho;
        out[e.i][len.class][0] += &dx;
        out[e.i][len.class][1] += &dy;
        out[e.j][len.class][0] -= dx;
        out[e.j][len.class][1] -= dy;
    }
    Some(
        out.into_iter()
            .map(|blocks| ExactResidual {
                blocks: frame.reps.iter().cloned().zip(blocks).collect(),
            })
            .collect(),
    )
}

/// Exact residual of vertex `i`, or `None` when some position is inexact.
pub fn exact_residual(net: &Network, i: usize) -> Option<ExactResidual> {
    all_exact_residuals(net).map(|mut r| r.swap_remove(i))
}

fn float_residual(net: &Network, i: usize) -> [f64; 2] {
    let v = &net.vertices[i];
    let [vx, vy] = v.position.coords();
    let m = v.exterior_mult as f64;
    let mut r = [m * vx, m * vy];
    for (w, mult) in net.neighbors(i) {
        let [wx, wy] = net.vertices[w].position.coords();
        let (dx, dy) = (wx - vx, wy - vy);
        let len = dx.hypot(dy);
        r[0] += mult as f64 * dx / len;
        r[1] += mult as f64 * dy / len;
    }
    r
}

/// `m_v v + Σ_w m_vw (w − v)/|w − v|` at vertex `i`.
///
/// Evaluated from the exact class decomposition when every position is
/// exact, otherwise in plain floating point.
pub fn stationarity_residual(net: &Network, i: usize) -> [f64; 2] {
    match exact_residual(net, i) {
        Some(r) => r.to_f64(),
        None => float_residual(net, i),
    }
}

fn residual_norms(net: &Network) -> Vec<f64> {
    match all_exact_residuals(net) {
        Some(all) => all
            .iter()
            .map(|r| {
                let [x, y] = r.to_f64();
                x.hypot(y)
            })
            .collect(),
        None => (0..net.vertex_count())
            .map(|i| {
                let [x, y] = float_residual(net, i);
                x.hypot(y)
            })
            .collect(),
    }
}

fn first_inexact(net: &Network) -> usize {
    net.vertices
        .iter()
        .position(|v| v.position.exact_point().is_none())
        .unwrap_or(0)
}

/// Exact mode: every residual is exactly zero. Float mode: every residual
/// norm is at most `tol`.
pub fn is_stationary(net: &Network, mode: Mode, tol: f64) -> Result<bool, NetworkError> {
    match mode {
        Mode::Exact => all_exact_residuals(net)
            .map(|all| all.iter().all(ExactResidual::is_zero))
            .ok_or_else(|| NetworkError::ExactDataMissing(first_inexact(net))),
        Mode::Float => Ok(residual_norms(net).iter().all(|&n| n <= tol)),
    }
}

/// Pairs of edge indices whose open chords intersect.
pub fn crossing_pairs(net: &Network) -> Vec<(usize, usize)> {
    let edges = &net.edges;
    let mut out = Vec::new();
    for a in 0..edges.len() {
        for b in a + 1..edges.len() {
            if chords_cross((edges[a].i, edges[a].j), (edges[b].i, edges[b].j)) {
                out.push((a, b));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Unbalanced { vertex: usize, residual_norm: f64 },
    Crossing { first: usize, second: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub mode: Mode,
    pub tolerance: f64,
    pub stationary: bool,
    pub max_residual: f64,
    pub crossings: Vec<(usize, usize)>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn admissible(&self) -> bool {
        self.stationary && self.crossings.is_empty()
    }
}

/// Checks stationarity (condition 1) and the absence of crossings (condition 2).
pub fn is_admissible(
    net: &Network,
    mode: Mode,
    tol: f64,
) -> Result<ValidationReport, NetworkError> {
    let norms = residual_norms(net);
    let stationary = is_stationary(net, mode, tol)?;
    let exact_zero: Vec<bool> = match mode {
        Mode::Exact => all_exact_residuals(net)
            .expect("checked by is_stationary")
            .iter()
            .map(ExactResidual::is_zero)
            .collect(),
        Mode::Float => norms.iter().map(|&n| n <= tol).collect(),
    };
    let crossings = crossing_pairs(net);
    let mut violations: Vec<Violation> = norms
        .iter()
        .zip(&exact_zero)
        .enumerate()
        .filter(|(_, (_, ok))| !**ok)
        .map(|(vertex, (&residual_norm, _))| Violation::Unbalanced {
            vertex,
            residual_norm,
        })
        .collect();
    violations.extend(
        crossings
            .iter()
            .map(|&(first, second)| Violation::Crossing { first, second }),
    );
    let max_residual = if mode == Mode::Exact && stationary {
        0.0
    } else {
        norms.iter().copied().fold(0.0, f64::max)
    };
    Ok(ValidationReport {
        mode,
        tolerance: tol,
        stationary,
        max_residual,
        crossings,
        violations,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantReport {
    /// `Σ_v m_v v`.
    pub exterior_balance: [f64; 2],
    /// `Σ_v m_v − Σ_vw m_vw |v − w|`.
    pub mass_gap: f64,
    /// Parity of `Σ_v m_v`.
    pub exterior_parity: Parity,
}

/// Global quantities that vanish for every stationary network.
pub fn invariant_report(net: &Network) -> InvariantReport {
    let mut balance = [0.0, 0.0];
    for v in &net.vertices {
        let [x, y] = v.position.coords();
        balance[0] += v.exterior_mult as f64 * x;
        balance[1] += v.exterior_mult as f64 * y;
    }
    let total = net.exterior_total();
    InvariantReport {
        exterior_balance: balance,
        mass_gap: total as f64 - net.interior_mass(),
        exterior_parity: if total & 1 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        },
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactIdentities {
    pub exterior_balance: [Q; 2],
    pub balance_zero: bool,
    pub mass_gap_zero: bool,
}

/// Exact versions of the balance-at-infinity and mass identities.
///
/// The mass gap is `Σ m_v − Σ_k (Σ_{e ∈ k} m_e ρ_e) √rep_k`; with positive
/// multiplicities it can only vanish when every chord has rational length.
pub fn exact_identities(net: &Network) -> Option<ExactIdentities> {
    let pts = net.exact_points()?;
    let frame = exact_frame(net)?;
    let mut balance = [Q::zero(), Q::zero()];
    let mut mass = Q::zero();
    for (v, p) in net.vertices.iter().zip(&pts) {
        let m = Q::from_integer(v.exterior_mult.into());
        balance[0] += &m * p.x();
        balance[1] += &m * p.y();
        mass += m;
    }
    let mut irrational_mass = false;
    for (e, len) in net.edges.iter().zip(&frame.lengths) {
        if len.class == 0 {
            mass -= Q::from_integer(e.mult.into()) * &len.rho;
        } else {
            irrational_mass = true;
        }
    }
    let balance_zero = balance.iter().all(Zero::is_zero);
    let mass_gap_zero = !irrational_mass && mass.is_zero();
    debug_assert!(!mass.is_negative() || !mass_gap_zero);
    Some(ExactIdentities {
        exterior_balance: balance,
        balance_zero,
        mass_gap_zero,
    })
}

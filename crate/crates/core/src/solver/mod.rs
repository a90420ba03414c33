//! Exact linear stationarity system for multiplicities.
//!
//! A chord between rational points `v`, `w` has length `ρ √k` with `ρ`
//! rational and `k` a square-class representative, so its unit tangent is
//! `(w − v)/(ρ √k)`: rational only in the class `k = 1`. Square roots of
//! distinct classes are linearly independent over the rationals, so the
//! vector condition at each vertex splits into one rational 2-row block per
//! class. Exterior rays only enter the rational block.

mod elimination;
pub mod n3;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::combinatorics::{chords_cross, ChordSet};
use crate::exact::{classify_square_lengths, squared_distance, RationalPoint, Q};
use crate::network::{make_network, CirclePoint, InteriorEdge, Network, NetworkError, Vertex};

pub use elimination::{kernel_basis, normalize_integer, particular_solution, rref, Rref};
pub use n3::{
    closed_form_kernel, half_angle_from_quarter, imaginary_part_matrix, n3_closed_forms,
    n3_positions, quotients_to_f64, N3ClosedForms, N3Error,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("position {0} has no exact form")]
    InexactPosition(usize),
    #[error("positions {0} and {1} coincide")]
    DuplicatePosition(usize, usize),
    #[error("edges ({0}, {1}) and ({2}, {3}) cross")]
    CrossingEdges(usize, usize, usize, usize),
    #[error("{what}: expected {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
}

/// `matrix · x = rhs` with `x = (m_0 … m_{N−1}, m_e …)`, or only the edge
/// multiplicities when the exterior is fixed.
///
/// Rows come in blocks: `2N` rows (x and y at each vertex) per square class
/// of chord length, rational class first.
#[derive(Clone, Debug, PartialEq)]
pub struct StationaritySystem {
    pub matrix: Vec<Vec<Q>>,
    /// Right-hand side; `None` for the homogeneous system.
    pub rhs: Option<Vec<Q>>,
    pub positions: Vec<CirclePoint>,
    pub edges: ChordSet,
    /// Square-class representatives; `class_reps[0] = 1`.
    pub class_reps: Vec<Q>,
    pub fixed_exterior: Option<Vec<u64>>,
}

impl StationaritySystem {
    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.unknown_labels().len()
    }

    /// `m<v>` for exterior rays, `m<i>_<j>` for chords.
    pub fn unknown_labels(&self) -> Vec<String> {
        let exterior = (0..self.positions.len()).map(|v| format!("m{v}"));
        let edges = self.edges.chords().iter().map(|(i, j)| format!("m{i}_{j}"));
        match self.fixed_exterior {
            Some(_) => edges.collect(),
            None => exterior.chain(edges).collect(),
        }
    }

    /// `matrix · x − rhs`.
    pub fn residual(&self, x: &[Q]) -> Vec<Q> {
        self.matrix
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let lhs: Q = row.iter().zip(x).map(|(a, b)| a * b).sum();
                match &self.rhs {
                    Some(b) => lhs - &b[r],
                    None => lhs,
                }
            })
            .collect()
    }

    /// Exterior and edge multiplicities of a full solution vector.
    pub fn split_solution(&self, x: &[BigInt]) -> (Vec<u64>, Vec<u64>) {
        let to_u64 = |v: &BigInt| v.to_u64().expect("multiplicity fits in u64");
        match &self.fixed_exterior {
            Some(ext) => (ext.clone(), x.iter().map(to_u64).collect()),
            None => {
                let n = self.positions.len();
                (
                    x[..n].iter().map(to_u64).collect(),
                    x[n..].iter().map(to_u64).collect(),
                )
            }
        }
    }

    /// Network carrying a positive integer solution.
    pub fn network(&self, x: &[BigInt]) -> Result<Network, NetworkError> {
        let (ext, edge) = self.split_solution(x);
        make_network(
            self.positions
                .iter()
                .zip(ext)
                .map(|(p, m)| Vertex::new(p.clone(), m))
                .collect(),
            self.edges
                .chords()
                .iter()
                .zip(edge)
                .map(|(&(i, j), m)| InteriorEdge::new(i, j, m))
                .collect(),
        )
    }
}

/// Stationarity system for chords `edges` between `positions`.
///
/// Chord indices refer to `positions` as given; crossing is decided in the
/// cyclic order of the positions, which need not be sorted.
pub fn build_system(
    positions: &[CirclePoint],
    edges: &ChordSet,
    fixed_exterior: Option<&[u64]>,
) -> Result<StationaritySystem, SolverError> {
    let n = positions.len();
    if edges.n() != n {
        return Err(SolverError::DimensionMismatch {
            what: "chord set points",
            expected: n,
            got: edges.n(),
        });
    }
    if let Some(ext) = fixed_exterior {
        if ext.len() != n {
            return Err(SolverError::DimensionMismatch {
                what: "fixed exterior",
                expected: n,
                got: ext.len(),
            });
        }
    }
    let pts: Vec<RationalPoint> = positions
        .iter()
        .enumerate()
        .map(|(k, p)| {
            p.exact_point()
                .cloned()
                .ok_or(SolverError::InexactPosition(k))
        })
        .collect::<Result<_, _>>()?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| pts[a].cmp_angle(&pts[b]));
    for w in order.windows(2) {
        if pts[w[0]] == pts[w[1]] {
            return Err(SolverError::DuplicatePosition(
                w[0].min(w[1]),
                w[0].max(w[1]),
            ));
        }
    }
    let mut rank_of = vec![0; n];
    for (r, &k) in order.iter().enumerate() {
        rank_of[k] = r;
    }
    let cyclic = |(i, j): (usize, usize)| (rank_of[i].min(rank_of[j]), rank_of[i].max(rank_of[j]));
    let chords = edges.chords();
    for (a, &p) in chords.iter().enumerate() {
        if let Some(&q) = chords[a + 1..]
            .iter()
            .find(|&&q| chords_cross(cyclic(p), cyclic(q)))
        {
            return Err(SolverError::CrossingEdges(p.0, p.1, q.0, q.1));
        }
    }

    let squares: Vec<Q> = chords
        .iter()
        .map(|&(i, j)| squared_distance(&pts[i], &pts[j]))
        .collect();
    let (class_reps, lengths) = classify_square_lengths(&squares);
    let ext_cols = if fixed_exterior.is_some() { 0 } else { n };
    let cols = ext_cols + chords.len();
    let row = |class: usize, v: usize, comp: usize| (class * n + v) * 2 + comp;
    let mut matrix = vec![vec![Q::zero(); cols]; 2 * n * class_reps.len()];
    let mut rhs = fixed_exterior.map(|_| vec![Q::zero(); matrix.len()]);

    for (v, p) in pts.iter().enumerate() {
        match (fixed_exterior, rhs.as_mut()) {
            (Some(ext), Some(b)) => {
                let m = Q::from_integer(ext[v].into());
                b[row(0, v, 0)] = -(&m * p.x());
                b[row(0, v, 1)] = -(&m * p.y());
            }
            _ => {
                matrix[row(0, v, 0)][v] = p.x().clone();
                matrix[row(0, v, 1)][v] = p.y().clone();
            }
        }
    }
    for (e, (&(i, j), len)) in chords.iter().zip(&lengths).enumerate() {
        let col = ext_cols + e;
        let dx = (pts[j].x() - pts[i].x()) / &len.rho;
        let dy = (pts[j].y() - pts[i].y()) / &len.rho;
        matrix[row(len.class, i, 0)][col] = dx.clone();
        matrix[row(len.class, i, 1)][col] = dy.clone();
        matrix[row(len.class, j, 0)][col] = -dx;
        matrix[row(len.class, j, 1)][col] = -dy;
    }

    Ok(StationaritySystem {
        matrix,
        rhs,
        positions: positions.to_vec(),
        edges: edges.clone(),
        class_reps,
        fixed_exterior: fixed_exterior.map(<[u64]>::to_vec),
    })
}

/// System for the vertices and chord structure of `net`.
pub fn system_for_network(
    net: &Network,
    fix_exterior: bool,
) -> Result<StationaritySystem, SolverError> {
    let positions: Vec<CirclePoint> = net.vertices().iter().map(|v| v.position.clone()).collect();
    let ext = net.exterior_mults();
    build_system(
        &positions,
        &net.chord_set(),
        fix_exterior.then_some(&ext[..]),
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult {
    /// Coprime integer vectors, first nonzero entry positive, one per free column.
    pub kernel_basis: Vec<Vec<BigInt>>,
    /// Some solution of the inhomogeneous system; `None` when the system is
    /// homogeneous or inconsistent.
    pub particular: Option<Vec<Q>>,
    pub rank: usize,
    pub inhomogeneous: bool,
    pub consistent: bool,
    pub rref: Rref,
}

impl SolveResult {
    pub fn nullity(&self) -> usize {
        self.kernel_basis.len()
    }

    pub fn unknowns(&self) -> usize {
        self.rref.cols
    }
}

pub fn solve_matrix(matrix: &[Vec<Q>], rhs: Option<&[Q]>, cols: usize) -> SolveResult {
    let rref = rref(matrix, rhs, cols);
    SolveResult {
        kernel_basis: kernel_basis(&rref),
        particular: rhs.and_then(|_| particular_solution(&rref)),
        rank: rref.rank(),
        inhomogeneous: rhs.is_some(),
        consistent: rref.consistent,
        rref,
    }
}

pub fn solve(system: &StationaritySystem) -> SolveResult {
    solve_matrix(&system.matrix, system.rhs.as_deref(), system.cols())
}

/// Every solution with all entries integers in `[1, bound]`, sorted
/// lexicographically.
///
/// Free variables of the echelon form range over `[1, bound]`; pivot
/// variables are then determined, and branches whose pivot values cannot
/// reach `[1, bound]` are cut by interval bounds.
pub fn positive_integer_solutions(result: &SolveResult, bound: u64) -> Vec<Vec<BigInt>> {
    let rref = &result.rref;
    if !rref.consistent || bound == 0 {
        return Vec::new();
    }
    let free = rref.free_columns();
    let lo = BigInt::one();
    let hi = BigInt::from(bound);
    let mut search = Search {
        rref,
        free: &free,
        lo: &lo,
        hi: &hi,
        values: Vec::new(),
        out: Vec::new(),
    };
    search.go();
    let mut out = search.out;
    out.sort();
    out
}

struct Search<'a> {
    rref: &'a Rref,
    free: &'a [usize],
    lo: &'a BigInt,
    hi: &'a BigInt,
    values: Vec<BigInt>,
    out: Vec<Vec<BigInt>>,
}

impl Search<'_> {
    /// Whether every pivot row can still land in range.
    fn feasible(&self) -> bool {
        let assigned = self.values.len();
        self.rref
            .rows
            .iter()
            .zip(&self.rref.rhs)
            .zip(&self.rref.pivots)
            .all(|((row, b), &p)| {
                let mut min = b.clone();
                let mut max = b.clone();
                for (k, &f) in self.free.iter().enumerate() {
                    let a = &row[f];
                    if a.is_zero() {
                        continue;
                    }
                    if k < assigned {
                        let t = a * &self.values[k];
                        min -= &t;
                        max -= t;
                    } else if a.is_positive() {
                        min -= a * self.hi;
                        max -= a * self.lo;
                    } else {
                        min -= a * self.lo;
                        max -= a * self.hi;
                    }
                }
                // Pivot value x = numerator / row[p] with row[p] > 0.
                let d = &row[p];
                max >= d * self.lo && min <= d * self.hi
            })
    }

    fn go(&mut self) {
        if !self.feasible() {
            return;
        }
        if self.values.len() == self.free.len() {
            self.emit();
            return;
        }
        let mut v = self.lo.clone();
        while &v <= self.hi {
            self.values.push(v.clone());
            self.go();
            self.values.pop();
            v += 1;
        }
    }

    fn emit(&mut self) {
        let mut x = vec![BigInt::zero(); self.rref.cols];
        for (k, &f) in self.free.iter().enumerate() {
            x[f] = self.values[k].clone();
        }
        for ((row, b), &p) in self
            .rref
            .rows
            .iter()
            .zip(&self.rref.rhs)
            .zip(&self.rref.pivots)
        {
            let mut num = b.clone();
            for (k, &f) in self.free.iter().enumerate() {
                num -= &row[f] * &self.values[k];
            }
            let d = &row[p];
            if !(&num % d).is_zero() {
                return;
            }
            let val = num / d;
            if &val < self.lo || &val > self.hi {
                return;
            }
            x[p] = val;
        }
        self.out.push(x);
    }
}

//! Weighted straight-chord networks with vertices on the unit circle.
//!
//! Each vertex carries a radial exterior ray to infinity with multiplicity
//! `m_v`; interior edges are chords with multiplicity `m_vw`. Vertices are
//! stored in strictly increasing angle order so that chord crossings can be
//! decided from indices alone.

mod canonical;
mod stationarity;

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};

use thiserror::Error;

use crate::combinatorics::ChordSet;
use crate::exact::{normalize_angle, RationalPoint, TanHalf};

pub use canonical::canonical_form;
pub use stationarity::{
    crossing_pairs, exact_identities, exact_residual, invariant_report, is_admissible,
    is_stationary, stationarity_residual, ExactIdentities, ExactResidual, InvariantReport, Mode,
    Parity, ValidationReport, Violation,
};

/// Float tolerance used when deciding that two float angles coincide.
pub const ANGLE_EPS: f64 = 1e-12;

/// Default float stationarity tolerance, relative to the total exterior multiplicity.
pub const DEFAULT_RELATIVE_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetworkError {
    #[error("vertices {0} and {1} have the same angle")]
    DuplicateVertexAngle(usize, usize),
    #[error("{0} has multiplicity zero")]
    ZeroMultiplicity(String),
    #[error("edge at vertex {0} is a self-loop")]
    SelfLoopEdge(usize),
    #[error("duplicate edge between vertices {0} and {1}")]
    DuplicateEdge(usize, usize),
    #[error("edge endpoint {index} out of range for {len} vertices")]
    EdgeIndexOutOfRange { index: usize, len: usize },
    #[error("exact mode requires exact positions (vertex {0} has none)")]
    ExactDataMissing(usize),
}

/// Position on the unit circle: a float angle plus optional exact data.
#[derive(Clone, Debug, PartialEq)]
pub struct CirclePoint {
    angle: f64,
    exact: Option<RationalPoint>,
}

impl CirclePoint {
    pub fn from_angle(angle: f64) -> Self {
        Self {
            angle: normalize_angle(angle),
            exact: None,
        }
    }

    pub fn exact(point: RationalPoint) -> Self {
        Self {
            angle: point.angle(),
            exact: Some(point),
        }
    }

    pub fn from_tan_half(t: &TanHalf) -> Self {
        Self::exact(RationalPoint::from_tan_half(t))
    }

    /// Exact point with tan-half parameter `n/d`.
    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::exact(RationalPoint::from_ratio(n, d))
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn exact_point(&self) -> Option<&RationalPoint> {
        self.exact.as_ref()
    }

    pub fn coords(&self) -> [f64; 2] {
        match &self.exact {
            Some(p) => p.to_f64(),
            None => [self.angle.cos(), self.angle.sin()],
        }
    }

    pub fn cmp_angle(&self, other: &Self) -> Ordering {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => a.cmp_angle(b),
            _ => self.angle.total_cmp(&other.angle),
        }
    }

    pub fn same_position(&self, other: &Self) -> bool {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => a == b,
            _ => {
                let d = (self.angle - other.angle).abs();
                d.min(TAU - d) <= ANGLE_EPS
            }
        }
    }

    /// Rotates so that `pivot` lands at angle 0. Exact data survives only if
    /// both points are exact.
    pub fn rotated_to_origin(&self, pivot: &CirclePoint) -> Self {
        match (&self.exact, &pivot.exact) {
            (Some(a), Some(p)) => Self::exact(a.mul(&p.conj())),
            _ => Self::from_angle(self.angle - pivot.angle),
        }
    }

    /// Mirror image across the x-axis.
    pub fn reflected(&self) -> Self {
        match &self.exact {
            Some(p) => Self::exact(p.conj()),
            None => Self::from_angle(-self.angle),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Vertex {
    pub position: CirclePoint,
    pub exterior_mult: u64,
}

impl Vertex {
    pub fn new(position: CirclePoint, exterior_mult: u64) -> Self {
        Self {
            position,
            exterior_mult,
        }
    }
}

/// Interior chord. In a [`Network`] the endpoints satisfy `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InteriorEdge {
    pub i: usize,
    pub j: usize,
    pub mult: u64,
}

impl InteriorEdge {
    pub fn new(i: usize, j: usize, mult: u64) -> Self {
        Self { i, j, mult }
    }

    /// The endpoint opposite to `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.i == v {
            self.j
        } else {
            self.i
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Network {
    vertices: Vec<Vertex>,
    edges: Vec<InteriorEdge>,
}

/// Validates raw input and returns a network with vertices sorted by angle.
///
/// Edge endpoints refer to positions in `vertices` as given; they are
/// renumbered to the sorted order and stored as `i < j`, edges sorted.
pub fn make_network(
    vertices: Vec<Vertex>,
    edges: Vec<InteriorEdge>,
) -> Result<Network, NetworkError> {
    let n = vertices.len();
    for (k, v) in vertices.iter().enumerate() {
        if v.exterior_mult == 0 {
            return Err(NetworkError::ZeroMultiplicity(format!(
                "exterior ray of vertex {k}"
            )));
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| vertices[a].position.cmp_angle(&vertices[b].position));
    for w in order.windows(2) {
        if vertices[w[0]]
            .position
            .same_position(&vertices[w[1]].position)
        {
            return Err(NetworkError::DuplicateVertexAngle(
                w[0].min(w[1]),
                w[0].max(w[1]),
            ));
        }
    }
    if n > 1 {
        let (first, last) = (order[0], order[n - 1]);
        if vertices[first]
            .position
            .same_position(&vertices[last].position)
        {
            return Err(NetworkError::DuplicateVertexAngle(
                first.min(last),
                first.max(last),
            ));
        }
    }
    let mut new_index = vec![0; n];
    for (pos, &old) in order.iter().enumerate() {
        new_index[old] = pos;
    }

    let mut out_edges = Vec::with_capacity(edges.len());
    for e in &edges {
        for index in [e.i, e.j] {
            if index >= n {
                return Err(NetworkError::EdgeIndexOutOfRange { index, len: n });
            }
        }
        if e.i == e.j {
            return Err(NetworkError::SelfLoopEdge(e.i));
        }
        if e.mult == 0 {
            return Err(NetworkError::ZeroMultiplicity(format!(
                "edge ({}, {})",
                e.i, e.j
            )));
        }
        let (a, b) = (new_index[e.i], new_index[e.j]);
        out_edges.push(InteriorEdge::new(a.min(b), a.max(b), e.mult));
    }
    out_edges.sort();
    for w in out_edges.windows(2) {
        if (w[0].i, w[0].j) == (w[1].i, w[1].j) {
            return Err(NetworkError::DuplicateEdge(order[w[0].i], order[w[0].j]));
        }
    }

    let mut slots: Vec<Option<Vertex>> = vertices.into_iter().map(Some).collect();
    let vertices = order
        .iter()
        .map(|&old| slots[old].take().expect("each index once"))
        .collect();
    Ok(Network {
        vertices,
        edges: out_edges,
    })
}

impl Network {
    /// Two antipodal vertices (angles 0 and π) joined by a diameter; every
    /// multiplicity equals `mult`.
    pub fn line(mult: u64) -> Self {
        make_network(
            vec![
                Vertex::new(CirclePoint::from_ratio(0, 1), mult),
                Vertex::new(CirclePoint::from_tan_half(&TanHalf::Infinity), mult),
            ],
            vec![InteriorEdge::new(0, 1, mult)],
        )
        .expect("line network is well formed")
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[InteriorEdge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_exact(&self) -> bool {
        self.vertices.iter().all(|v| v.position.exact.is_some())
    }

    pub fn exact_points(&self) -> Option<Vec<RationalPoint>> {
        self.vertices
            .iter()
            .map(|v| v.position.exact.clone())
            .collect()
    }

    pub fn exterior_mults(&self) -> Vec<u64> {
        self.vertices.iter().map(|v| v.exterior_mult).collect()
    }

    /// Interior degree of each vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for e in &self.edges {
            deg[e.i] += 1;
            deg[e.j] += 1;
        }
        deg
    }

    /// `(neighbour, edge multiplicity)` pairs of vertex `v`, by neighbour index.
    pub fn neighbors(&self, v: usize) -> Vec<(usize, u64)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .filter(|e| e.i == v || e.j == v)
            .map(|e| (e.other(v), e.mult))
            .collect();
        out.sort();
        out
    }

    pub fn exterior_total(&self) -> u64 {
        self.vertices.iter().map(|v| v.exterior_mult).sum()
    }

    /// Absolute float tolerance: [`DEFAULT_RELATIVE_TOL`] times `max(1, Σ m_v)`.
    pub fn default_tolerance(&self) -> f64 {
        DEFAULT_RELATIVE_TOL * (self.exterior_total().max(1) as f64)
    }

    pub fn chord_set(&self) -> ChordSet {
        ChordSet::new(self.vertices.len(), self.edges.iter().map(|e| (e.i, e.j)))
            .expect("network edges are distinct chords")
    }

    /// Interior length `Σ m_vw |v − w|` in floating point.
    pub fn interior_mass(&self) -> f64 {
        self.edges
            .iter()
            .map(|e| {
                let [ax, ay] = self.vertices[e.i].position.coords();
                let [bx, by] = self.vertices[e.j].position.coords();
                e.mult as f64 * (bx - ax).hypot(by - ay)
            })
            .sum()
    }

    /// Whether `v` and `w` are antipodal.
    pub fn antipodal(&self, v: usize, w: usize) -> bool {
        let (a, b) = (&self.vertices[v].position, &self.vertices[w].position);
        match (a.exact_point(), b.exact_point()) {
            (Some(p), Some(q)) => p.neg() == *q,
            _ => {
                let d = (a.angle() - b.angle()).abs();
                (d - PI).abs() <= ANGLE_EPS
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn v(angle: f64, m: u64) -> Vertex {
        Vertex::new(CirclePoint::from_angle(angle), m)
    }

    #[test]
    fn line_from_floats() {
        let net =
            make_network(vec![v(0.0, 1), v(PI, 1)], vec![InteriorEdge::new(0, 1, 1)]).unwrap();
        assert_eq!(net.vertex_count(), 2);
        assert_eq!(net.edges(), &[InteriorEdge::new(0, 1, 1)]);
    }

    #[test]
    fn sorts_and_renumbers() {
        let net = make_network(
            vec![v(3.0, 1), v(1.0, 2), v(2.0, 3)],
            vec![InteriorEdge::new(0, 1, 5), InteriorEdge::new(2, 0, 7)],
        )
        .unwrap();
        assert_eq!(net.exterior_mults(), vec![2, 3, 1]);
        assert_eq!(
            net.edges(),
            &[InteriorEdge::new(0, 2, 5), InteriorEdge::new(1, 2, 7)]
        );
    }

    #[test]
    fn angles_are_canonicalized() {
        let net = make_network(vec![v(-FRAC_PI_4, 1), v(FRAC_PI_4, 1)], vec![]).unwrap();
        assert!((net.vertices()[1].position.angle() - 7.0 * FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            make_network(vec![v(0.0, 1), v(0.0, 1)], vec![]),
            Err(NetworkError::DuplicateVertexAngle(0, 1))
        );
        assert_eq!(
            make_network(vec![v(0.0, 1), v(TAU - 1e-14, 1)], vec![]),
            Err(NetworkError::DuplicateVertexAngle(0, 1))
        );
        assert!(matches!(
            make_network(vec![v(0.0, 1), v(PI, 1)], vec![InteriorEdge::new(0, 1, 0)]),
            Err(NetworkError::ZeroMultiplicity(_))
        ));
        assert!(matches!(
            make_network(vec![v(0.0, 0), v(PI, 1)], vec![]),
            Err(NetworkError::ZeroMultiplicity(_))
        ));
        assert_eq!(
            make_network(vec![v(0.0, 1), v(PI, 1)], vec![InteriorEdge::new(1, 1, 1)]),
            Err(NetworkError::SelfLoopEdge(1))
        );
        assert_eq!(
            make_network(
                vec![v(0.0, 1), v(PI, 1)],
                vec![InteriorEdge::new(0, 1, 1), InteriorEdge::new(1, 0, 2)]
            ),
            Err(NetworkError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            make_network(vec![v(0.0, 1)], vec![InteriorEdge::new(0, 3, 1)]),
            Err(NetworkError::EdgeIndexOutOfRange { index: 3, len: 1 })
        );
    }

    #[test]
    fn exact_duplicates_detected() {
        let a = Vertex::new(CirclePoint::from_ratio(1, 2), 1);
        let b = Vertex::new(CirclePoint::from_ratio(2, 4), 1);
        assert_eq!(
            make_network(vec![a, b], vec![]),
            Err(NetworkError::DuplicateVertexAngle(0, 1))
        );
    }

    #[test]
    fn line_helper() {
        let net = Network::line(3);
        assert!(net.is_exact());
        assert!(net.antipodal(0, 1));
        assert_eq!(net.degrees(), vec![1, 1]);
        assert_eq!(net.neighbors(1), vec![(0, 3)]);
        assert!((net.interior_mass() - 6.0).abs() < 1e-15);
    }
}

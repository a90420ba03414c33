#![allow(dead_code)]

use geonet_core::combinatorics::{chords_cross, ChordSet};
use geonet_core::exact::{RationalPoint, TanHalf};
use geonet_core::network::{
    exact_identities, is_admissible, make_network, CirclePoint, InteriorEdge, Mode, Network, Vertex,
};
use geonet_core::rng::{self, GeoRng};
use geonet_core::solver::{build_system, positive_integer_solutions, solve};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn rng() -> GeoRng {
    rng::from_env()
}

/// Independent stream for one test, derived from the environment seed.
pub fn rng_for(tag: u64) -> GeoRng {
    rng::seeded(rng::seed() ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Rational point with tan-half `p/d`, `|p| ≤ h`, `1 ≤ d ≤ h`.
pub fn random_point(rng: &mut GeoRng, h: i64) -> RationalPoint {
    RationalPoint::from_ratio(rng.random_range(-h..=h), rng.random_range(1..=h))
}

/// `n` distinct positions `w_k²`; every chord between them has rational length.
pub fn square_positions(rng: &mut GeoRng, n: usize, h: i64) -> Vec<CirclePoint> {
    let mut out: Vec<RationalPoint> = Vec::new();
    while out.len() < n {
        let p = random_point(rng, h).square();
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out.sort_by(|a, b| a.cmp_angle(b));
    out.into_iter().map(CirclePoint::exact).collect()
}

/// Random non-crossing chord set with every vertex touched.
pub fn random_covering_chords(rng: &mut GeoRng, n: usize) -> ChordSet {
    loop {
        let mut all: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        all.shuffle(rng);
        let mut chosen: Vec<(usize, usize)> = Vec::new();
        for c in all {
            if rng.random_bool(0.6) && chosen.iter().all(|&p| !chords_cross(p, c)) {
                chosen.push(c);
            }
        }
        let set = ChordSet::new(n, chosen).expect("non-crossing by construction");
        if set.degrees().iter().all(|&d| d > 0) {
            return set;
        }
    }
}

/// Admissible networks with the given positions and chords and every
/// multiplicity in `[1, bound]`.
pub fn solved_networks(positions: &[CirclePoint], chords: &ChordSet, bound: u64) -> Vec<Network> {
    let system = build_system(positions, chords, None).expect("valid system");
    let result = solve(&system);
    positive_integer_solutions(&result, bound)
        .iter()
        .map(|x| system.network(x).expect("solver output is a network"))
        .collect()
}

/// A positive integer vector in the kernel of the system for `positions`
/// and `chords`, tried as small integer combinations of the kernel basis.
pub fn positive_kernel_network(
    rng: &mut GeoRng,
    positions: &[CirclePoint],
    chords: &ChordSet,
) -> Option<Network> {
    let system = build_system(positions, chords, None).ok()?;
    let basis = solve(&system).kernel_basis;
    if basis.is_empty() {
        return None;
    }
    let cols = system.cols();
    for attempt in 0..200 {
        let coeffs: Vec<i64> = if attempt < basis.len() {
            (0..basis.len()).map(|k| i64::from(k == attempt)).collect()
        } else {
            (0..basis.len()).map(|_| rng.random_range(-4..=4)).collect()
        };
        let mut x = vec![BigInt::zero(); cols];
        for (c, b) in coeffs.iter().zip(&basis) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += bi * c;
            }
        }
        if x.iter().all(|v| v.is_positive() && v.bits() < 40) {
            let g = x.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
            let x: Vec<BigInt> = x.iter().map(|v| v / &g).collect();
            return system.network(&x).ok();
        }
    }
    None
}

/// Random exact admissible networks on `n` vertices, `tries` attempts.
pub fn random_admissible(rng: &mut GeoRng, n: usize, tries: usize) -> Vec<Network> {
    let mut out = Vec::new();
    for _ in 0..tries {
        let pos = square_positions(rng, n, 4);
        let chords = random_covering_chords(rng, n);
        if let Some(net) = positive_kernel_network(rng, &pos, &chords) {
            out.push(net);
        }
    }
    out
}

pub fn exact_vertex(n: i64, d: i64, m: u64) -> Vertex {
    Vertex::new(CirclePoint::from_ratio(n, d), m)
}

pub fn pi_vertex(m: u64) -> Vertex {
    Vertex::new(CirclePoint::from_tan_half(&TanHalf::Infinity), m)
}

/// Kite `0, θ, π, −θ` with `tan(θ/2) = 3/4`, optionally with the diameter.
pub fn kite(diameter: Option<u64>) -> Network {
    let d = diameter.unwrap_or(0);
    let mut edges = vec![
        InteriorEdge::new(0, 1, 15),
        InteriorEdge::new(1, 2, 20),
        InteriorEdge::new(2, 3, 20),
        InteriorEdge::new(3, 0, 15),
    ];
    if let Some(m) = diameter {
        edges.push(InteriorEdge::new(0, 2, m));
    }
    make_network(
        vec![
            exact_vertex(0, 1, 18 + d),
            exact_vertex(3, 4, 25),
            pi_vertex(32 + d),
            exact_vertex(-3, 4, 25),
        ],
        edges,
    )
    .expect("kite is well formed")
}

/// Rotation of every position by the rational point `r`.
pub fn rotated(net: &Network, r: &RationalPoint) -> Network {
    let vertices = net
        .vertices()
        .iter()
        .map(|v| {
            let p = v.position.exact_point().expect("exact network").mul(r);
            Vertex::new(CirclePoint::exact(p), v.exterior_mult)
        })
        .collect();
    make_network(vertices, net.edges().to_vec()).expect("rotation keeps a network")
}

pub fn reflected(net: &Network) -> Network {
    let vertices = net
        .vertices()
        .iter()
        .map(|v| Vertex::new(v.position.reflected(), v.exterior_mult))
        .collect();
    make_network(vertices, net.edges().to_vec()).expect("reflection keeps a network")
}

/// Float copy without exact data.
pub fn floated(net: &Network) -> Network {
    let vertices = net
        .vertices()
        .iter()
        .map(|v| Vertex::new(CirclePoint::from_angle(v.position.angle()), v.exterior_mult))
        .collect();
    make_network(vertices, net.edges().to_vec()).expect("same structure")
}

/// Exactly admissible, balanced at infinity, and with matching masses.
pub fn assert_global_identities(net: &Network) {
    let report = is_admissible(net, Mode::Exact, 0.0).expect("exact network");
    assert!(report.admissible(), "not admissible: {report:?}");
    let ids = exact_identities(net).expect("exact network");
    assert!(ids.balance_zero, "Σ m_v v ≠ 0 for {net:?}");
    assert!(ids.mass_gap_zero, "Σ m_v ≠ Σ m_vw |v − w| for {net:?}");
}

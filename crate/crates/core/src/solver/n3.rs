//! Closed forms for three-vertex networks.
//!
//! With `v_1 = 1`, `v_2 = e^{iα12}`, `v_3 = e^{iα13}` and `α13 = α12 + α23`,
//! the unit tangents are `T_12 = i e^{iα12/2}` and so on. Writing
//! `c_jk = cos(α_jk/2)`, `s_jk = sin(α_jk/2)`, the imaginary parts of the
//! three vertex equations form the matrix [`imaginary_part_matrix`] acting on
//! `(m12, m13, m23)`; its kernel is spanned by `(c13 c23, −c12 c23, c12 c13)`.
//! The real parts then fix the exterior multiplicities.

use std::f64::consts::{PI, TAU};

use num_traits::{One, Signed};
use thiserror::Error;

use crate::exact::{qi, to_f64, RationalPoint, TanHalf, Q};
use crate::network::CirclePoint;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum N3Error {
    #[error("angle domain violated: {0}")]
    Domain(String),
}

/// Closed-form multiplicity directions for a three-vertex network.
///
/// Scaled so that every entry is positive inside the valid domain.
#[derive(Clone, Debug, PartialEq)]
pub struct N3ClosedForms {
    /// `(m12, m13, m23) = (−c13 c23, c12 c23, −c12 c13)`.
    pub edge_mults: [f64; 3],
    /// `(m1, m2, m3) = (c23 s23, −c13 s13, c12 s12)` on the same scale.
    pub exterior_mults: [f64; 3],
    /// `m1 m23 / (m12 m13)`, `m2 m13 / (m12 m23)`, `m3 m12 / (m13 m23)`,
    /// equal to `tan(α23/2)`, `−tan(α13/2)`, `tan(α12/2)`.
    pub quotients: [f64; 3],
    /// Every `tan(α_jk/2)` is certified rational: both inputs carry exact data.
    pub rational: bool,
    /// The three quotients exactly, when `rational`.
    pub exact_quotients: Option<[Q; 3]>,
}

fn in_upper_half(p: &CirclePoint) -> bool {
    match p.exact_point() {
        Some(e) => e.y().is_positive(),
        None => p.angle() > 0.0 && p.angle() < PI,
    }
}

/// `a12` and `a23` are the points `e^{iα12}`, `e^{iα23}`.
pub fn n3_closed_forms(a12: &CirclePoint, a23: &CirclePoint) -> Result<N3ClosedForms, N3Error> {
    if !in_upper_half(a12) {
        return Err(N3Error::Domain(format!(
            "α12 = {} not in (0, π)",
            a12.angle()
        )));
    }
    if !in_upper_half(a23) {
        return Err(N3Error::Domain(format!(
            "α23 = {} not in (0, π)",
            a23.angle()
        )));
    }
    let sum = a12.angle() + a23.angle();
    let exact13 = match (a12.exact_point(), a23.exact_point()) {
        (Some(p), Some(q)) => Some(p.mul(q)),
        _ => None,
    };
    let reflex = match &exact13 {
        Some(p) => p.y().is_negative(),
        None => sum > PI && sum < TAU,
    };
    if !reflex {
        return Err(N3Error::Domain(format!("α13 = {sum} not in (π, 2π)")));
    }

    let (h12, h23, h13) = (a12.angle() / 2.0, a23.angle() / 2.0, sum / 2.0);
    let (c12, s12) = (h12.cos(), h12.sin());
    let (c23, s23) = (h23.cos(), h23.sin());
    let (c13, s13) = (h13.cos(), h13.sin());
    let edge_mults = [-c13 * c23, c12 * c23, -c12 * c13];
    let exterior_mults = [c23 * s23, -c13 * s13, c12 * s12];
    let [m12, m13, m23] = edge_mults;
    let [m1, m2, m3] = exterior_mults;
    let quotients = [
        m1 * m23 / (m12 * m13),
        m2 * m13 / (m12 * m23),
        m3 * m12 / (m13 * m23),
    ];

    let exact_quotients = match (a12.exact_point(), a23.exact_point(), &exact13) {
        (Some(p12), Some(p23), Some(p13)) => {
            let t = |p: &RationalPoint| match p.tan_half() {
                TanHalf::Finite(t) => t,
                TanHalf::Infinity => unreachable!("domain excludes α = π"),
            };
            Some([t(p23), -t(p13), t(p12)])
        }
        _ => None,
    };
    Ok(N3ClosedForms {
        edge_mults,
        exterior_mults,
        quotients,
        rational: exact_quotients.is_some(),
        exact_quotients,
    })
}

/// Vertex positions `1, e^{iα12}, e^{iα13}`.
pub fn n3_positions(a12: &RationalPoint, a23: &RationalPoint) -> [CirclePoint; 3] {
    [
        CirclePoint::exact(RationalPoint::one()),
        CirclePoint::exact(a12.clone()),
        CirclePoint::exact(a12.mul(a23)),
    ]
}

/// `(cos(α/2), sin(α/2))` for `tan(α/4) = q`; rational whenever `q` is.
pub fn half_angle_from_quarter(q: &Q) -> (Q, Q) {
    let q2 = q * q;
    let den = Q::one() + &q2;
    ((Q::one() - q2) / &den, q * qi(2) / den)
}

/// Rows: imaginary parts at `v_1`, `v_2`, `v_3`; columns `m12, m13, m23`.
pub fn imaginary_part_matrix(c12: &Q, c13: &Q, c23: &Q) -> Vec<Vec<Q>> {
    let z = Q::from_integer(0.into());
    vec![
        vec![c12.clone(), c13.clone(), z.clone()],
        vec![-c12.clone(), z.clone(), c23.clone()],
        vec![z, -c13.clone(), -c23.clone()],
    ]
}

/// `(c13 c23, −c12 c23, c12 c13)`.
pub fn closed_form_kernel(c12: &Q, c13: &Q, c23: &Q) -> [Q; 3] {
    [c13 * c23, -(c12 * c23), c12 * c13]
}

/// Float value of an exact quotient triple, for cross-checks.
pub fn quotients_to_f64(q: &[Q; 3]) -> [f64; 3] {
    [to_f64(&q[0]), to_f64(&q[1]), to_f64(&q[2])]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::solver::{normalize_integer, solve_matrix};
    use num_bigint::BigInt;

    #[test]
    fn equilateral() {
        let third = CirclePoint::from_angle(2.0 * PI / 3.0);
        let f = n3_closed_forms(&third, &third).unwrap();
        for m in f.edge_mults {
            assert!((m - 0.25).abs() < 1e-12);
        }
        for m in f.exterior_mults {
            assert!((m - 3f64.sqrt() / 4.0).abs() < 1e-12);
        }
        assert!(!f.rational);
        // Quotients are tan(π/3) = √3 for all three.
        for x in f.quotients {
            assert!((x - 3f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn domain_errors() {
        let pi = CirclePoint::from_tan_half(&TanHalf::Infinity);
        let ok = CirclePoint::from_ratio(2, 1);
        assert!(n3_closed_forms(&pi, &ok).is_err());
        // Both small: α13 < π.
        let small = CirclePoint::from_ratio(1, 3);
        assert!(n3_closed_forms(&small, &small).is_err());
        assert!(n3_closed_forms(&ok, &ok).is_ok());
    }

    #[test]
    fn exact_quotients_match_floats() {
        let (a, b) = (CirclePoint::from_ratio(2, 1), CirclePoint::from_ratio(3, 2));
        let f = n3_closed_forms(&a, &b).unwrap();
        let exact = quotients_to_f64(f.exact_quotients.as_ref().unwrap());
        for (x, y) in exact.iter().zip(f.quotients) {
            assert!((x - y).abs() < 1e-9, "{x} vs {y}");
        }
    }

    #[test]
    fn kernel_at_two_thirds_pi() {
        let (h, mh) = (q(1, 2), q(-1, 2));
        let res = solve_matrix(&imaginary_part_matrix(&h, &mh, &h), None, 3);
        assert_eq!(res.rank, 2);
        let ones = vec![BigInt::from(1); 3];
        assert_eq!(res.kernel_basis, vec![ones.clone()]);
        assert_eq!(normalize_integer(&closed_form_kernel(&h, &mh, &h)), ones);
    }
}

//! Exact rational arithmetic on the unit circle.
//!
//! A rational point `(x, y)` with `x² + y² = 1` is stored together with its
//! tan-half parameter `t = y / (1 + x)`, so that
//! `(x, y) = ((1 − t²)/(1 + t²), 2t/(1 + t²))`. The point `(−1, 0)` has no
//! finite parameter and is marked [`TanHalf::Infinity`].
//!
//! Rational points are closed under complex multiplication and conjugation,
//! which is all that rotations, reflections and replacement tangents need.

use std::cmp::Ordering;
use std::f64::consts::TAU;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Q = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as an exact rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn to_f64(value: &Q) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        // Out of f64 range only for absurd heights; fall back to a ratio of floats.
        let n = value.numer().to_f64().unwrap_or(f64::NAN);
        let d = value.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Square root of a non-negative rational when it is itself rational.
pub fn rational_sqrt(value: &Q) -> Option<Q> {
    if value.is_negative() {
        return None;
    }
    let n = value.numer();
    let d = value.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Q::new(rn, rd))
}

/// Returns `ρ ≥ 0` with `a = ρ² · b`, if such a rational exists.
///
/// Two positive rationals are in the same square class exactly when this
/// succeeds; square roots of distinct classes are linearly independent over
/// the rationals.
pub fn square_ratio_root(a: &Q, b: &Q) -> Option<Q> {
    if b.is_zero() {
        return None;
    }
    rational_sqrt(&(a / b))
}

/// Tan-half parameter of a rational point on the unit circle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TanHalf {
    Finite(Q),
    /// The point `(−1, 0)`, angle π.
    Infinity,
}

impl fmt::Display for TanHalf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TanHalf::Finite(t) => write!(f, "{t}"),
            TanHalf::Infinity => f.write_str("inf"),
        }
    }
}

/// A point on the unit circle with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    x: Q,
    y: Q,
}

impl RationalPoint {
    /// Builds the point from rational coordinates, checking `x² + y² = 1` exactly.
    pub fn new(x: Q, y: Q) -> Option<Self> {
        (&x * &x + &y * &y == Q::one()).then_some(Self { x, y })
    }

    pub fn from_tan_half(t: &TanHalf) -> Self {
        match t {
            TanHalf::Infinity => Self {
                x: -Q::one(),
                y: Q::zero(),
            },
            TanHalf::Finite(t) => {
                let t2 = t * t;
                let den = Q::one() + &t2;
                Self {
                    x: (Q::one() - &t2) / &den,
                    y: (t * qi(2)) / den,
                }
            }
        }
    }

    /// Shorthand for `from_tan_half(Finite(n/d))`.
    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_tan_half(&TanHalf::Finite(q(n, d)))
    }

    pub fn one() -> Self {
        Self {
            x: Q::one(),
            y: Q::zero(),
        }
    }

    pub fn x(&self) -> &Q {
        &self.x
    }

    pub fn y(&self) -> &Q {
        &self.y
    }

    pub fn tan_half(&self) -> TanHalf {
        let den = Q::one() + &self.x;
        if den.is_zero() {
            TanHalf::Infinity
        } else {
            TanHalf::Finite(&self.y / den)
        }
    }

    /// Angle in `[0, 2π)`.
    pub fn angle(&self) -> f64 {
        let a = match self.tan_half() {
            TanHalf::Infinity => std::f64::consts::PI,
            TanHalf::Finite(t) => 2.0 * to_f64(&t).atan(),
        };
        normalize_angle(a)
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [to_f64(&self.x), to_f64(&self.y)]
    }

    /// Complex product: adds angles.
    pub fn mul(&self, other: &Self) -> Self {
        Self {
            x: &self.x * &other.x - &self.y * &other.y,
            y: &self.x * &other.y + &self.y * &other.x,
        }
    }

    /// Complex conjugate: reflection across the x-axis, negates the angle.
    pub fn conj(&self) -> Self {
        Self {
            x: self.x.clone(),
            y: -self.y.clone(),
        }
    }

    /// Antipodal point.
    pub fn neg(&self) -> Self {
        Self {
            x: -self.x.clone(),
            y: -self.y.clone(),
        }
    }

    /// Squaring doubles the angle.
    pub fn square(&self) -> Self {
        self.mul(self)
    }

    fn half_plane(&self) -> u8 {
        if self.y.is_positive() || (self.y.is_zero() && self.x.is_positive()) {
            0
        } else {
            1
        }
    }

    /// Exact comparison of angles in `[0, 2π)`.
    pub fn cmp_angle(&self, other: &Self) -> Ordering {
        self.half_plane().cmp(&other.half_plane()).then_with(|| {
            let cross = &self.x * &other.y - &self.y * &other.x;
            if cross.is_positive() {
                Ordering::Less
            } else if cross.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    }

    /// Maximum of the numerator/denominator bit sizes of the coordinates.
    pub fn height_bits(&self) -> u64 {
        [
            self.x.numer(),
            self.x.denom(),
            self.y.numer(),
            self.y.denom(),
        ]
        .iter()
        .map(|v| v.bits())
        .max()
        .unwrap_or(0)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Maps any finite angle into `[0, 2π)`.
pub fn normalize_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Exact data of a chord `v → w` between rational points.
///
/// `|w − v| = ρ · √k` where `k` is the representative of the chord's square
/// class; the rational class has `k = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordLength {
    pub class: usize,
    pub rho: Q,
}

/// Groups squared chord lengths into square classes.
///
/// Class 0 is the rational class (representative 1) and is always present in
/// the returned representative list. Every squared length must be positive.
pub fn classify_square_lengths(squares: &[Q]) -> (Vec<Q>, Vec<ChordLength>) {
    let mut reps = vec![Q::one()];
    let mut out = Vec::with_capacity(squares.len());
    for sq in squares {
        debug_assert!(sq.is_positive());
        let found = reps
            .iter()
            .enumerate()
            .find_map(|(k, rep)| square_ratio_root(sq, rep).map(|rho| (k, rho)));
        let (class, rho) = match found {
            Some(hit) => hit,
            None => {
                reps.push(sq.clone());
                (reps.len() - 1, Q::one())
            }
        };
        out.push(ChordLength { class, rho });
    }
    (reps, out)
}

/// Squared Euclidean distance between two rational points.
pub fn squared_distance(v: &RationalPoint, w: &RationalPoint) -> Q {
    let dx = &w.x - &v.x;
    let dy = &w.y - &v.y;
    &dx * &dx + &dy * &dy
}

/// Unit tangent `(w − v)/|w − v|` when the chord has rational length.
pub fn rational_tangent(v: &RationalPoint, w: &RationalPoint) -> Option<RationalPoint> {
    let len = rational_sqrt(&squared_distance(v, w))?;
    if len.is_zero() {
        return None;
    }
    RationalPoint::new((&w.x - &v.x) / &len, (&w.y - &v.y) / len)
}

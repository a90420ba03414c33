//! Affine angle expressions `Σ q_k α_k + r π` and the three-vertex
//! replacement map.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exact::{normalize_angle, q, to_f64, Q};

/// `Σ q_k · α_k + r · π` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AngleExpr {
    coeffs: BTreeMap<String, Q>,
    pi_coeff: Q,
}

impl AngleExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The formal variable `name`.
    pub fn var(name: &str) -> Self {
        Self {
            coeffs: BTreeMap::from([(name.to_string(), Q::one())]),
            pi_coeff: Q::zero(),
        }
    }

    /// `r · π`.
    pub fn pi(r: Q) -> Self {
        Self {
            coeffs: BTreeMap::new(),
            pi_coeff: r,
        }
    }

    pub fn pi_coeff(&self) -> &Q {
        &self.pi_coeff
    }

    pub fn coeff(&self, name: &str) -> Q {
        self.coeffs.get(name).cloned().unwrap_or_else(Q::zero)
    }

    pub fn variables(&self) -> impl Iterator<Item = (&str, &Q)> {
        self.coeffs.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, by: &Q) -> Self {
        let mut out = Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.clone(), v * by))
                .collect(),
            pi_coeff: &self.pi_coeff * by,
        };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        self.coeffs.retain(|_, v| !v.is_zero());
    }

    /// Value for the given variable assignment; missing variables panic.
    pub fn eval(&self, vars: &HashMap<String, f64>) -> f64 {
        self.coeffs
            .iter()
            .map(|(k, v)| to_f64(v) * vars[k])
            .sum::<f64>()
            + to_f64(&self.pi_coeff) * PI
    }
}

impl Add for &AngleExpr {
    type Output = AngleExpr;

    fn add(self, rhs: &AngleExpr) -> AngleExpr {
        let mut out = self.clone();
        for (k, v) in &rhs.coeffs {
            *out.coeffs.entry(k.clone()).or_insert_with(Q::zero) += v;
        }
        out.pi_coeff += &rhs.pi_coeff;
        out.normalize();
        out
    }
}

impl Neg for &AngleExpr {
    type Output = AngleExpr;

    fn neg(self) -> AngleExpr {
        self.scale(&-Q::one())
    }
}

impl Sub for &AngleExpr {
    type Output = AngleExpr;

    fn sub(self, rhs: &AngleExpr) -> AngleExpr {
        self + &-rhs
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, c: &Q, symbol: &str) -> fmt::Result {
    let sign = if c.is_negative() { "-" } else { "+" };
    match (first, c.is_negative()) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, _) => write!(f, " {sign} ")?,
    }
    let a = c.abs();
    if a.is_one() {
        f.write_str(symbol)
    } else if a.is_integer() {
        write!(f, "{a}·{symbol}")
    } else {
        write!(f, "({a})·{symbol}")
    }
}

/// `(1/2)·a12 + (1/2)·π`, `(3/4)·π`, `0`.
impl fmt::Display for AngleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.coeffs {
            write_term(f, first, v, k)?;
            first = false;
        }
        if !self.pi_coeff.is_zero() {
            write_term(f, first, &self.pi_coeff, "π")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for AngleExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Replaces vertex `vertex ∈ {1, 2, 3}` of a three-vertex network whose
/// angle differences are `(α12, α13, α23)`.
///
/// The replaced vertex keeps its direction and the other two move to the
/// unit tangents towards them. Since `e^{iθ} − 1 = 2 sin(θ/2) e^{i(θ+π)/2}`,
/// the two differences through the replaced vertex become `(x + π)/2` and
/// the opposite one `x/2`. At vertex 2 the tangent `T_21` points backwards,
/// so `α13` becomes `α13/2 + π` (equal to `(α13 + π)/2 + π/2`), which keeps
/// `α12 + α23 = α13` intact.
///
/// # Panics
///
/// If `vertex` is not 1, 2 or 3.
pub fn n3_angle_map(exprs: &[AngleExpr; 3], vertex: u8) -> [AngleExpr; 3] {
    let half = q(1, 2);
    let adjacent = |x: &AngleExpr| (x + &AngleExpr::pi(Q::one())).scale(&half);
    let opposite = |x: &AngleExpr| x.scale(&half);
    let [a12, a13, a23] = exprs;
    match vertex {
        1 => [adjacent(a12), adjacent(a13), opposite(a23)],
        2 => [
            adjacent(a12),
            &opposite(a13) + &AngleExpr::pi(Q::one()),
            adjacent(a23),
        ],
        3 => [opposite(a12), adjacent(a13), adjacent(a23)],
        _ => panic!("vertex must be 1, 2 or 3, got {vertex}"),
    }
}

/// Whether `e^{i e}` is a rational point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rationality {
    ForcedRational,
    ForcedIrrational,
    DependsOnVariables,
}

/// Classifies `e^{i e}`.
///
/// For a pure multiple `r π` with rational `r`, both `cos` and `sin` are
/// rational exactly when `2r` is an integer (the points `±1`, `±i`).
pub fn rational_point_of_expr(e: &AngleExpr) -> Rationality {
    if !e.is_constant() {
        return Rationality::DependsOnVariables;
    }
    let twice = e.pi_coeff() * Q::from_integer(2.into());
    if twice.is_integer() {
        Rationality::ForcedRational
    } else {
        Rationality::ForcedIrrational
    }
}

/// `(α12, α13, α23) = (a12, a12 + a23, a23)` in variables `a12`, `a23`.
pub fn n3_initial_angles() -> [AngleExpr; 3] {
    let a12 = AngleExpr::var("a12");
    let a23 = AngleExpr::var("a23");
    [a12.clone(), &a12 + &a23, a23]
}

/// `(α12, α13, α23)` written with the independent variables `a12`, `a13`, `a23`.
pub fn n3_free_angles() -> [AngleExpr; 3] {
    [
        AngleExpr::var("a12"),
        AngleExpr::var("a13"),
        AngleExpr::var("a23"),
    ]
}

/// Applies [`n3_angle_map`] at each vertex of `path` in turn.
pub fn iterate_n3(start: &[AngleExpr; 3], path: &[u8]) -> [AngleExpr; 3] {
    path.iter()
        .fold(start.clone(), |acc, &v| n3_angle_map(&acc, v))
}

/// Angle differences normalized to `[0, 2π)`.
pub fn eval_angles(exprs: &[AngleExpr; 3], vars: &HashMap<String, f64>) -> [f64; 3] {
    [0, 1, 2].map(|k| normalize_angle(exprs[k].eval(vars)))
}

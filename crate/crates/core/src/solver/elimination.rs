//! Fraction-free Gauss–Jordan elimination over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::Q;

/// Reduced row echelon form of an integer-scaled augmented matrix.
///
/// Row `k` reads `pivot_value_k · x_{pivots[k]} + Σ_{free f} rows[k][f] · x_f = rhs[k]`;
/// every other pivot column is zero in row `k`. Pivot values are positive
/// and each row (with its right-hand side) has content 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rows: Vec<Vec<BigInt>>,
    pub rhs: Vec<BigInt>,
    pub pivots: Vec<usize>,
    pub cols: usize,
    /// False when some zero row has a nonzero right-hand side.
    pub consistent: bool,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }
}

fn lcm_of_denominators<'a>(values: impl Iterator<Item = &'a Q>) -> BigInt {
    values.fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Brings `[matrix | rhs]` to reduced row echelon form without fractions.
///
/// A missing `rhs` means the homogeneous system.
pub fn rref(matrix: &[Vec<Q>], rhs: Option<&[Q]>, cols: usize) -> Rref {
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let b = rhs.map(|b| b[r].clone()).unwrap_or_else(Q::zero);
            let scale = lcm_of_denominators(row.iter().chain(std::iter::once(&b)));
            let mut out: Vec<BigInt> = row
                .iter()
                .chain(std::iter::once(&b))
                .map(|v| v.numer() * (&scale / v.denom()))
                .collect();
            make_primitive(&mut out);
            out
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        // Smallest nonzero magnitude keeps intermediate entries short.
        let Some(p) = (r..m.len())
            .filter(|&p| !m[p][c].is_zero())
            .min_by(|&a, &b| m[a][c].magnitude().cmp(m[b][c].magnitude()))
        else {
            continue;
        };
        m.swap(r, p);
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot_row = m[r].clone();
        for (s, row) in m.iter_mut().enumerate() {
            if s == r || row[c].is_zero() {
                continue;
            }
            let g = pivot_row[c].gcd(&row[c]);
            let a = &pivot_row[c] / &g;
            let b = &row[c] / &g;
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &a * &*x - &b * y;
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }

    let consistent = m[r..].iter().all(|row| row[cols].is_zero());
    m.truncate(r);
    let rhs = m
        .iter_mut()
        .map(|row| row.pop().expect("augmented column"))
        .collect();
    Rref {
        rows: m,
        rhs,
        pivots,
        cols,
        consistent,
    }
}

/// Scales a rational vector to coprime integers with first nonzero entry positive.
pub fn normalize_integer(v: &[Q]) -> Vec<BigInt> {
    let scale = lcm_of_denominators(v.iter());
    let mut out: Vec<BigInt> = v.iter().map(|x| x.numer() * (&scale / x.denom())).collect();
    make_primitive(&mut out);
    if out
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        for x in out.iter_mut() {
            *x = -&*x;
        }
    }
    out
}

/// One normalized kernel vector per free column.
pub fn kernel_basis(rref: &Rref) -> Vec<Vec<BigInt>> {
    rref.free_columns()
        .into_iter()
        .map(|f| {
            let mut v = vec![Q::zero(); rref.cols];
            v[f] = Q::one();
            for (k, &p) in rref.pivots.iter().enumerate() {
                v[p] = -Q::new(rref.rows[k][f].clone(), rref.rows[k][p].clone());
            }
            normalize_integer(&v)
        })
        .collect()
}

/// Solution with every free variable zero, when the system is consistent.
pub fn particular_solution(rref: &Rref) -> Option<Vec<Q>> {
    if !rref.consistent {
        return None;
    }
    let mut v = vec![Q::zero(); rref.cols];
    for (k, &p) in rref.pivots.iter().enumerate() {
        v[p] = Q::new(rref.rhs[k].clone(), rref.rows[k][p].clone());
    }
    Some(v)
}

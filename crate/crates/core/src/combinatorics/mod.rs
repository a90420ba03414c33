//! Non-crossing chord configurations on cyclically ordered points.
//!
//! Points are labelled `0..n` in cyclic order. Two chords cross iff exactly
//! one endpoint of one lies strictly inside the arc spanned by the other;
//! chords sharing an endpoint never cross.

mod audit;

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

pub use audit::{
    audit_counting_argument, CountingAudit, CountingWitness, Exclusion, StructureFinding,
};

/// Exhaustive enumeration is capped at this many points.
pub const MAX_ENUMERATION_POINTS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChordError {
    #[error("chord endpoint {0} out of range for {1} points")]
    OutOfRange(usize, usize),
    #[error("chord ({0}, {0}) is a loop")]
    Loop(usize),
    #[error("duplicate chord ({0}, {1})")]
    Duplicate(usize, usize),
    #[error("chords ({0}, {1}) and ({2}, {3}) cross")]
    Crossing(usize, usize, usize, usize),
    #[error("exhaustive enumeration is limited to {MAX_ENUMERATION_POINTS} points, got {0}")]
    TooManyPoints(usize),
}

/// Whether chords `(a, b)` and `(c, d)` (each with `lo < hi`) cross.
pub fn chords_cross((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let inside = |x: usize| a < x && x < b;
    inside(c) != inside(d)
}

/// Whether `i` and `j` are cyclic neighbours among `n` points.
pub fn adjacent(n: usize, i: usize, j: usize) -> bool {
    let (lo, hi) = (i.min(j), i.max(j));
    hi == lo + 1 || (lo == 0 && hi + 1 == n)
}

/// A set of pairwise non-crossing chords on `n` cyclically ordered points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChordSet {
    n: usize,
    chords: Vec<(usize, usize)>,
}

impl ChordSet {
    pub fn new(
        n: usize,
        chords: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, ChordError> {
        let mut out = Vec::new();
        for (i, j) in chords {
            if i >= n || j >= n {
                return Err(ChordError::OutOfRange(i.max(j), n));
            }
            if i == j {
                return Err(ChordError::Loop(i));
            }
            out.push((i.min(j), i.max(j)));
        }
        out.sort_unstable();
        for w in out.windows(2) {
            if w[0] == w[1] {
                return Err(ChordError::Duplicate(w[0].0, w[0].1));
            }
        }
        for (k, &p) in out.iter().enumerate() {
            if let Some(&q) = out[k + 1..].iter().find(|&&q| chords_cross(p, q)) {
                return Err(ChordError::Crossing(p.0, p.1, q.0, q.1));
            }
        }
        Ok(Self { n, chords: out })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            chords: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chords(&self) -> &[(usize, usize)] {
        &self.chords
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(i, j) in &self.chords {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.chords.binary_search(&(i.min(j), i.max(j))).is_ok()
    }

    /// No further chord (respecting `allow_adjacent`) can be added.
    pub fn is_maximal(&self, allow_adjacent: bool) -> bool {
        candidate_chords(self.n, allow_adjacent)
            .into_iter()
            .all(|c| self.contains(c.0, c.1) || self.chords.iter().any(|&p| chords_cross(p, c)))
    }
}

/// Closed-form edge bounds for `n` points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsTriple {
    /// Maximum number of non-crossing chords avoiding adjacent pairs.
    pub f: usize,
    /// Maximum number of interior edges of an admissible network.
    pub big_f: usize,
    /// Edge bound when some vertex has interior degree 1.
    pub big_f1: usize,
}

pub fn closed_form_bounds(n: usize) -> BoundsTriple {
    BoundsTriple {
        f: n.saturating_sub(3),
        big_f: if n >= 3 {
            2 * n - 3
        } else {
            n.saturating_sub(1)
        },
        big_f1: if n >= 4 { 2 * n - 5 } else { 1 },
    }
}

fn candidate_chords(n: usize, allow_adjacent: bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if allow_adjacent || !adjacent(n, i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Depth-first generator over non-crossing chord sets.
///
/// Sets come out in lexicographic order of their sorted chord lists, starting
/// with the empty set.
pub struct ChordSets {
    n: usize,
    candidates: Vec<(usize, usize)>,
    chosen: Vec<usize>,
    next: Vec<usize>,
    started: bool,
}

impl ChordSets {
    fn current(&self) -> ChordSet {
        ChordSet {
            n: self.n,
            chords: self.chosen.iter().map(|&c| self.candidates[c]).collect(),
        }
    }

    fn compatible(&self, c: usize) -> bool {
        let chord = self.candidates[c];
        self.chosen
            .iter()
            .all(|&k| !chords_cross(self.candidates[k], chord))
    }
}

impl Iterator for ChordSets {
    type Item = ChordSet;

    fn next(&mut self) -> Option<ChordSet> {
        if !self.started {
            self.started = true;
            self.next.push(0);
            return Some(self.current());
        }
        loop {
            let mut at = *self.next.last()?;
            while at < self.candidates.len() && !self.compatible(at) {
                at += 1;
            }
            if at < self.candidates.len() {
                *self.next.last_mut().expect("non-empty") = at + 1;
                self.chosen.push(at);
                self.next.push(at + 1);
                return Some(self.current());
            }
            self.next.pop();
            self.chosen.pop();
        }
    }
}

/// Every non-crossing chord set on `n` points (not only maximal ones).
pub fn enumerate_chord_sets(n: usize, allow_adjacent: bool) -> Result<ChordSets, ChordError> {
    if n > MAX_ENUMERATION_POINTS {
        return Err(ChordError::TooManyPoints(n));
    }
    Ok(ChordSets {
        n,
        candidates: candidate_chords(n, allow_adjacent),
        chosen: Vec::new(),
        next: Vec::new(),
        started: false,
    })
}

/// Maximal chord sets only, same order as [`enumerate_chord_sets`].
pub fn maximal_chord_sets(
    n: usize,
    allow_adjacent: bool,
) -> Result<impl Iterator<Item = ChordSet>, ChordError> {
    Ok(enumerate_chord_sets(n, allow_adjacent)?.filter(move |s| s.is_maximal(allow_adjacent)))
}

/// Exhaustive maximum number of non-crossing, non-adjacent chords.
pub fn max_nonadjacent_chords(n: usize) -> Result<usize, ChordError> {
    Ok(enumerate_chord_sets(n, false)?
        .map(|s| s.len())
        .max()
        .unwrap_or(0))
}

/// `f(n) = max { 1 + f(k+2) + f(l+2) : k + l = n − 2, k, l ≥ 1 }`, zero when
/// no split exists.
pub fn recursive_f(n: usize) -> usize {
    fn go(n: usize, memo: &mut HashMap<usize, usize>) -> usize {
        if let Some(&v) = memo.get(&n) {
            return v;
        }
        let v = if n < 4 {
            0
        } else {
            (1..=n - 3)
                .map(|k| 1 + go(k + 2, memo) + go(n - k, memo))
                .max()
                .unwrap_or(0)
        };
        memo.insert(n, v);
        v
    }
    go(n, &mut HashMap::new())
}

/// Catalan number `C_k`.
pub fn catalan(k: usize) -> u128 {
    // C_{i+1} = C_i · 2(2i+1)/(i+2); exact at every step.
    (0..k).fold(1u128, |c, i| {
        c * (2 * (2 * i as u128 + 1)) / (i as u128 + 2)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_table() {
        assert_eq!(
            closed_form_bounds(3),
            BoundsTriple {
                f: 0,
                big_f: 3,
                big_f1: 1
            }
        );
        assert_eq!(
            closed_form_bounds(4),
            BoundsTriple {
                f: 1,
                big_f: 5,
                big_f1: 3
            }
        );
        assert_eq!(
            closed_form_bounds(2),
            BoundsTriple {
                f: 0,
                big_f: 1,
                big_f1: 1
            }
        );
        assert_eq!(
            closed_form_bounds(1),
            BoundsTriple {
                f: 0,
                big_f: 0,
                big_f1: 1
            }
        );
    }

    #[test]
    fn four_points_without_sides() {
        let sets: Vec<_> = enumerate_chord_sets(4, false)
            .unwrap()
            .map(|s| s.chords().to_vec())
            .collect();
        assert_eq!(sets, vec![vec![], vec![(0, 2)], vec![(1, 3)]]);
    }

    #[test]
    fn triangle_has_only_adjacent_chords() {
        assert_eq!(enumerate_chord_sets(3, false).unwrap().count(), 1);
    }

    #[test]
    fn largest_set_on_four_points() {
        let max = enumerate_chord_sets(4, true)
            .unwrap()
            .map(|s| s.len())
            .max();
        assert_eq!(max, Some(5));
    }

    #[test]
    fn lexicographic_order() {
        let sets: Vec<Vec<(usize, usize)>> = enumerate_chord_sets(6, true)
            .unwrap()
            .map(|s| s.chords().to_vec())
            .collect();
        assert!(sets.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn small_maxima() {
        assert_eq!(max_nonadjacent_chords(5), Ok(2));
        assert_eq!(max_nonadjacent_chords(6), Ok(3));
        assert_eq!(max_nonadjacent_chords(2), Ok(0));
        assert_eq!(max_nonadjacent_chords(1), Ok(0));
    }

    #[test]
    fn counts_of_all_noncrossing_graphs() {
        // Non-crossing graphs on n labelled circle points: 1, 2, 8, 48, 352, 2880.
        let counts: Vec<usize> = (1..=6)
            .map(|n| enumerate_chord_sets(n, true).unwrap().count())
            .collect();
        assert_eq!(counts, vec![1, 2, 8, 48, 352, 2880]);
    }

    #[test]
    fn catalan_values() {
        let c: Vec<u128> = (0..8).map(catalan).collect();
        assert_eq!(c, vec![1, 1, 2, 5, 14, 42, 132, 429]);
    }

    #[test]
    fn crossing_rule() {
        assert!(chords_cross((0, 2), (1, 3)));
        assert!(!chords_cross((0, 2), (2, 3)));
        assert!(!chords_cross((0, 3), (1, 2)));
        assert!(!chords_cross((0, 2), (3, 4)));
        // Regular pentagon: (0,2) and (1,4) cross since 1 is inside, 4 outside.
        assert!(chords_cross((0, 2), (1, 4)));
    }

    #[test]
    fn chord_set_validation() {
        assert_eq!(
            ChordSet::new(4, [(0, 2), (1, 3)]),
            Err(ChordError::Crossing(0, 2, 1, 3))
        );
        assert_eq!(
            ChordSet::new(4, [(0, 2), (2, 0)]),
            Err(ChordError::Duplicate(0, 2))
        );
        assert_eq!(
            ChordSet::new(4, [(0, 4)]),
            Err(ChordError::OutOfRange(4, 4))
        );
        assert!(matches!(
            enumerate_chord_sets(13, true),
            Err(ChordError::TooManyPoints(13))
        ));
    }
}

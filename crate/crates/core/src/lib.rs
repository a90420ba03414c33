//! Stationary weighted geodesic networks on the unit circle.
//!
//! The crate models admissible networks (vertices on the unit circle, radial
//! exterior rays, non-crossing weighted chords), solves the stationarity
//! system for integer multiplicities in exact arithmetic, runs the
//! replacement audit that singles out the balanced line, and computes the
//! min-max value of the c-weighted length functional over latitude sweepouts
//! of the round sphere.
//!
//! ```
//! use geonet_core::network::{is_admissible, Mode, Network};
//!
//! let line = Network::line(2);
//! let report = is_admissible(&line, Mode::Exact, 0.0).unwrap();
//! assert!(report.admissible());
//! ```

pub mod combinatorics;
pub mod exact;
pub mod format;
pub mod network;
pub mod render;
pub mod replacement;
pub mod rng;
pub mod solver;
pub mod sweep;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/networks.md")]
    mod networks {}
    #[doc = include_str!("../../../book/src/chords.md")]
    mod chords {}
    #[doc = include_str!("../../../book/src/solver.md")]
    mod solver {}
    #[doc = include_str!("../../../book/src/replacement.md")]
    mod replacement {}
    #[doc = include_str!("../../../book/src/sweepouts.md")]
    mod sweepouts {}
}

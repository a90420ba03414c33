//! The single seeded random source.
//!
//! Randomized searches and property tests draw from a ChaCha generator whose
//! seed comes from the `GEONET_SEED` environment variable (decimal, or hex
//! with a `0x` prefix), falling back to [`DEFAULT_SEED`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEED_VAR: &str = "GEONET_SEED";
pub const DEFAULT_SEED: u64 = 0x5EED;

pub type GeoRng = ChaCha8Rng;

/// Parses a seed written in decimal or as `0x…` hex.
pub fn parse_seed(text: &str) -> Option<u64> {
    let text = text.trim();
    match text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16).ok(),
        None => text.parse().ok(),
    }
}

/// Seed from `GEONET_SEED`, or the default when unset or unparsable.
pub fn seed() -> u64 {
    std::env::var(SEED_VAR)
        .ok()
        .and_then(|s| parse_seed(&s))
        .unwrap_or(DEFAULT_SEED)
}

pub fn seeded(seed: u64) -> GeoRng {
    GeoRng::seed_from_u64(seed)
}

/// Generator seeded from the environment.
pub fn from_env() -> GeoRng {
    seeded(seed())
}

//! Desk-scale size limits.
//!
//! Every exhaustive routine checks its input against one of the constants
//! below. Setting `CIRCIX_LIMIT_OVERRIDE` to any non-empty value other than
//! `0` disables these checks. Representation limits (at most 64 vertices per
//! graph) are never lifted.

use crate::error::{Error, Result};

pub const OVERRIDE_ENV: &str = "CIRCIX_LIMIT_OVERRIDE";

/// Bitmask representation bound for graphs.
pub const MAX_VERTICES: usize = 64;

pub const ISOMORPHISM_MAX_N: usize = 12;
pub const CLIQUE_MAX_N: usize = 24;
pub const CHROMATIC_MAX_N: usize = 16;
pub const CIRCULAR_MAX_N: usize = 12;
pub const CIRCULAR_PERFECT_MAX_N: usize = 10;
pub const PERFECT_MAX_N: usize = 12;
pub const CONFUSION_MAX_VERTICES: usize = 4096;
pub const SEARCH_MAX_N: usize = 6;
pub const ENUMERATION_MAX_N: usize = 6;

pub fn override_enabled() -> bool {
    match std::env::var(OVERRIDE_ENV) {
        Ok(v) => !v.is_empty() && v != "0",
        Err(_) => false,
    }
}

/// Fails with [`Error::TooLarge`] when `value > limit` and no override is set.
pub fn check(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit && !override_enabled() {
        return Err(Error::TooLarge { what, value, limit });
    }
    Ok(())
}

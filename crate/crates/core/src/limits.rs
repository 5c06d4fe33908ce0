//! Global enumeration bounds for the brute-force operations.

use std::sync::RwLock;

use crate::error::{Error, Result};

/// Desk-scale bounds. Every operation that enumerates checks its input
/// against these values and fails with [`Error::BoundExceeded`] otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order for which a Cayley table is materialized.
    pub max_group_order: usize,
    /// Largest degree `n` accepted by `make_symmetric`.
    pub max_symmetric_degree: usize,
    /// Largest number of frames or automorphisms enumerated at once.
    pub max_enumeration: usize,
}

impl Limits {
    pub const DEFAULT: Limits = Limits {
        max_group_order: 5040,
        max_symmetric_degree: 8,
        max_enumeration: 40320,
    };
}

impl Default for Limits {
    fn default() -> Self {
        Limits::DEFAULT
    }
}

static LIMITS: RwLock<Limits> = RwLock::new(Limits::DEFAULT);

/// Returns the current global bounds.
pub fn current() -> Limits {
    *LIMITS.read().unwrap_or_else(|e| e.into_inner())
}

/// Replaces the global bounds, returning the previous value.
pub fn set(limits: Limits) -> Limits {
    let mut guard = LIMITS.write().unwrap_or_else(|e| e.into_inner());
    std::mem::replace(&mut *guard, limits)
}

pub(crate) fn check(what: &'static str, size: u128, limit: usize) -> Result<()> {
    if size > limit as u128 {
        Err(Error::BoundExceeded {
            what,
            size,
            limit: limit as u128,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn check_group_order(what: &'static str, size: u128) -> Result<()> {
    check(what, size, current().max_group_order)
}

pub(crate) fn check_enumeration(what: &'static str, size: u128) -> Result<()> {
    check(what, size, current().max_enumeration)
}

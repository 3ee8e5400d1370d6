//! Process-wide size caps. Exceeding a cap is reported as [`Error::Resource`],
//! never as silent truncation.
//!
//! [`Error::Resource`]: crate::Error::Resource

use std::sync::atomic::{AtomicUsize, Ordering};

pub const DEFAULT_MAX_ROWS: usize = 20_000;
pub const DEFAULT_MAX_GROUP_ORDER: usize = 25_000;

static MAX_ROWS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_ROWS);
static MAX_GROUP_ORDER: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_GROUP_ORDER);

/// Largest coordinate-space dimension (and matrix row count) any single
/// degreewise computation may use.
pub fn max_rows() -> usize {
    MAX_ROWS.load(Ordering::Relaxed)
}

pub fn set_max_rows(v: usize) {
    MAX_ROWS.store(v, Ordering::Relaxed);
}

pub fn max_group_order() -> usize {
    MAX_GROUP_ORDER.load(Ordering::Relaxed)
}

pub fn set_max_group_order(v: usize) {
    MAX_GROUP_ORDER.store(v, Ordering::Relaxed);
}

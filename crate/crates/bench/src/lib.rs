//! Shared fixtures for the kernel benchmarks.

use ringlab_core::{parse_ring_expr, Limits, Subject};

/// Rings of increasing order used across benchmark groups.
pub const RINGS: &[&str] = &[
    "Z16",
    "T(2,Z4)",
    "M(2,Z2)",
    "T(3,Z2)",
    "grpring(Z2,C6)",
    "grpring(Z4,C4)",
    "M(2,Z4)",
];

/// Group rings `(base, group)` for construction timings.
pub const GROUP_RINGS: &[(&str, &str)] = &[
    ("Z2", "C8"),
    ("Z4", "C4"),
    ("Z2", "gprod(C2,C2,C2)"),
    ("Z4", "C6"),
    ("Z2", "C12"),
];

/// Builds a fresh subject. Property results are cached per ring, so every
/// timed iteration needs its own instance.
pub fn fixture(expr: &str) -> Subject {
    let parsed = parse_ring_expr(expr).unwrap_or_else(|e| panic!("{expr}: {e}"));
    parsed
        .build_subject(&Limits::default())
        .unwrap_or_else(|e| panic!("{expr}: {e}"))
}

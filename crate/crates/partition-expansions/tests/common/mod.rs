//! Shared helpers for the integration tests.

#![allow(dead_code)]

use partition_expansions::PrecisionContext;
use rug::Float;

/// Relative tolerance for comparing against 30-digit reference values.
pub const REF_TOL: f64 = 1e-28;

/// The default 256-bit context.
pub fn ctx() -> PrecisionContext {
    PrecisionContext::new(256).unwrap()
}

/// Parses a decimal reference value at the precision of `like`.
pub fn dec(s: &str, prec: u32) -> Float {
    Float::with_val(prec, Float::parse(s).unwrap())
}

/// |x − y| ≤ rel·max(|x|, |y|).
pub fn rel_close(x: &Float, y: &Float, rel: f64) -> bool {
    let prec = x.prec().max(y.prec());
    let diff = Float::with_val(prec, x - y).abs();
    let scale = Float::with_val(prec, x.abs_ref()).max(&Float::with_val(prec, y.abs_ref()));
    diff <= scale * rel
}

/// Asserts that `x` matches the decimal reference `expected` to `rel`.
#[track_caller]
pub fn assert_close(x: &Float, expected: &str, rel: f64) {
    let y = dec(expected, x.prec());
    assert!(rel_close(x, &y, rel), "got {x}, expected {expected} (rel {rel})");
}

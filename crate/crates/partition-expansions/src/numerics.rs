//! High-precision real arithmetic policy, fundamental constants, exact
//! rational kernels (Pochhammer symbols, generalized binomials) and the
//! elementary functions μ(n), ν(m) and ĝ(m).
//!
//! Real numbers are MPFR floats ([`rug::Float`]); every routine evaluates at
//! `ctx.bits + GUARD_BITS` so that the relative error of composite
//! expressions stays far below the comparison margin `2^(-bits/2)`.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};

/// A real number carried at a fixed binary precision.
pub type HPReal = Float;

/// Default working precision in bits.
pub const DEFAULT_BITS: u32 = 256;

/// Smallest admissible working precision.
pub const MIN_BITS: u32 = 64;

/// Extra bits carried internally on top of the requested precision.
pub const GUARD_BITS: u32 = 64;

/// Working precision and comparison-margin policy.
///
/// A comparison `lhs <= rhs` is decided only when
/// `|rhs - lhs| >= 2^(-bits + margin_exponent) * max(|lhs|, |rhs|)`;
/// otherwise it is re-evaluated at doubled precision until `max_bits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrecisionContext {
    pub bits: u32,
    pub margin_exponent: i32,
    pub max_bits: u32,
}

impl PrecisionContext {
    /// Context with margin `2^(-bits/2)` and a retry cap of `4 * bits`.
    pub fn new(bits: u32) -> Result<Self> {
        Self::with_max_bits(bits, bits.saturating_mul(4))
    }

    /// Context with an explicit retry cap.
    pub fn with_max_bits(bits: u32, max_bits: u32) -> Result<Self> {
        if bits < MIN_BITS {
            return Err(Error::Precision(format!(
                "bits must be at least {MIN_BITS}, got {bits}"
            )));
        }
        if max_bits < bits {
            return Err(Error::Precision(format!(
                "max_bits ({max_bits}) must be at least bits ({bits})"
            )));
        }
        Ok(Self {
            bits,
            margin_exponent: (bits / 2) as i32,
            max_bits,
        })
    }

    /// Internal evaluation precision (requested bits plus guard bits).
    pub fn prec(&self) -> u32 {
        self.bits + GUARD_BITS
    }

    /// The next context in the escalation ladder, if still within the cap.
    pub fn doubled(&self) -> Option<Self> {
        let bits = self.bits.checked_mul(2)?;
        if bits > self.max_bits {
            return None;
        }
        Some(Self {
            bits,
            margin_exponent: (bits / 2) as i32,
            max_bits: self.max_bits,
        })
    }

    /// Absolute margin `2^(-bits + margin_exponent) * |scale|`.
    pub fn margin(&self, scale: &Float) -> Float {
        let mut m = Float::with_val(self.prec(), scale.abs_ref());
        m <<= self.margin_exponent - self.bits as i32;
        m
    }

    /// Number of significant decimal digits used when serializing values:
    /// `floor(bits * log10(2)) - 5`.
    pub fn digits(&self) -> usize {
        let d = (f64::from(self.bits) * std::f64::consts::LOG10_2).floor() as usize;
        d.saturating_sub(5).max(1)
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self::new(DEFAULT_BITS).expect("default precision is valid")
    }
}

/// Outcome of a certified comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Ambiguous,
}

/// A decided (or undecidable) comparison `lhs <= rhs`.
#[derive(Clone, Debug)]
pub struct Certified {
    pub status: Status,
    pub lhs: Float,
    pub rhs: Float,
    pub margin: Float,
    /// Precision at which the decision was reached.
    pub bits: u32,
}

/// Decide `lhs <= rhs` where `eval` produces both sides at a given precision.
///
/// If the two sides are within the margin of each other, `eval` is rerun at
/// doubled precision; after `max_bits` the result is [`Status::Ambiguous`].
pub fn certify_le<F>(ctx: &PrecisionContext, mut eval: F) -> Result<Certified>
where
    F: FnMut(&PrecisionContext) -> Result<(Float, Float)>,
{
    let mut cur = *ctx;
    loop {
        let (lhs, rhs) = eval(&cur)?;
        let scale = if lhs.clone().abs() > rhs.clone().abs() {
            lhs.clone()
        } else {
            rhs.clone()
        };
        let margin = cur.margin(&scale);
        let diff = Float::with_val(cur.prec(), &rhs - &lhs);
        let status = if diff > margin {
            Some(Status::Pass)
        } else if diff < -margin.clone() {
            Some(Status::Fail)
        } else {
            None
        };
        match (status, cur.doubled()) {
            (Some(status), _) => {
                return Ok(Certified {
                    status,
                    lhs,
                    rhs,
                    margin,
                    bits: cur.bits,
                })
            }
            (None, Some(next)) => cur = next,
            (None, None) => {
                return Ok(Certified {
                    status: Status::Ambiguous,
                    lhs,
                    rhs,
                    margin,
                    bits: cur.bits,
                })
            }
        }
    }
}

/// Fundamental constants at a given precision.
#[derive(Clone, Debug)]
pub struct Constants {
    pub pi: HPReal,
    /// α = π/6.
    pub alpha: HPReal,
    /// b = 6/√(36+π²), the rationalizing substitution.
    pub b_sub: HPReal,
}

impl Constants {
    pub fn new(ctx: &PrecisionContext) -> Self {
        Self::at(ctx.prec())
    }

    /// Constants at an explicit binary precision.
    pub fn at(prec: u32) -> Self {
        let pi = Float::with_val(prec, Constant::Pi);
        let alpha = Float::with_val(prec, &pi / 6u32);
        let pi2 = Float::with_val(prec, pi.square_ref());
        let b_sub = Float::with_val(prec, 6u32 / (pi2 + 36u32).sqrt());
        Self { pi, alpha, b_sub }
    }
}

/// π at the given binary precision.
pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// μ(n) = (π/6)·√(24n − 1).
pub fn mu(n: u64, ctx: &PrecisionContext) -> Result<HPReal> {
    if n == 0 {
        return Err(Error::Domain("mu(n) requires n >= 1".into()));
    }
    Ok(mu_at(&Integer::from(n), ctx.prec()))
}

/// μ at an arbitrary positive integer argument and precision.
pub(crate) fn mu_at(n: &Integer, prec: u32) -> Float {
    let arg = Float::with_val(prec, Integer::from(n * 24u32) - 1u32);
    pi(prec) / 6u32 * arg.sqrt()
}

/// ν(m) = 2log6 + 2log2·m + 2m·log m + 2m·loglog m + 5m·loglog m / log m.
pub fn nu(m: u64, ctx: &PrecisionContext) -> Result<HPReal> {
    if m < 2 {
        return Err(Error::Domain(format!("nu(m) requires m >= 2, got {m}")));
    }
    let prec = ctx.prec();
    let mf = Float::with_val(prec, m);
    let ln_m = Float::with_val(prec, mf.ln_ref());
    let lnln_m = Float::with_val(prec, ln_m.ln_ref());
    let two_ln6 = Float::with_val(prec, 6u32).ln() * 2u32;
    let ln2 = Float::with_val(prec, Constant::Log2);
    let mut v = two_ln6;
    v += Float::with_val(prec, &ln2 * &mf) * 2u32;
    v += Float::with_val(prec, &mf * &ln_m) * 2u32;
    v += Float::with_val(prec, &mf * &lnln_m) * 2u32;
    v += Float::with_val(prec, &mf * &lnln_m) * 5u32 / &ln_m;
    Ok(v)
}

/// ĝ(m) = ((36/π²)·ν(m)² + 1)/24.
pub fn g_hat(m: u64, ctx: &PrecisionContext) -> Result<HPReal> {
    let v = nu(m, ctx)?;
    let prec = ctx.prec();
    let pi2 = pi(prec).square();
    let mut r = Float::with_val(prec, v.square_ref()) * 36u32 / pi2;
    r += 1u32;
    r /= 24u32;
    Ok(r)
}

/// Smallest integer `>= x` (x must be finite).
pub fn ceil_to_integer(x: &Float) -> Integer {
    x.clone()
        .ceil()
        .to_integer()
        .expect("ceiling of a finite float is an integer")
}

/// `ceil(x)` as `u64`, failing if `x` is negative or too large.
pub fn ceil_to_u64(x: &Float) -> Result<u64> {
    ceil_to_integer(x)
        .to_u64()
        .ok_or_else(|| Error::Range(format!("{x} does not fit a u64 cutoff")))
}

/// ⌈√k⌉ by exact integer square root.
pub fn ceil_sqrt(k: u64) -> u64 {
    let r = Integer::from(k).sqrt();
    let r = r.to_u64().expect("sqrt of u64 fits u64");
    if r * r == k {
        r
    } else {
        r + 1
    }
}

/// n! as an exact integer.
pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// Binomial coefficient C(n, j) for nonnegative integers.
pub fn binomial(n: u32, j: u32) -> Integer {
    Integer::from(Integer::binomial_u(n, j))
}

/// Rising factorial (a)_j = a(a+1)…(a+j−1) over the rationals; (a)_0 = 1.
pub fn pochhammer_rational(a: &Rational, j: u32) -> Rational {
    let mut r = Rational::from(1);
    let mut f = a.clone();
    for _ in 0..j {
        r *= &f;
        f += 1;
    }
    r
}

/// Rising factorial of an integer argument, (a)_j.
pub fn pochhammer_int(a: i64, j: u32) -> Integer {
    let mut r = Integer::from(1);
    for i in 0..i64::from(j) {
        r *= a + i;
    }
    r
}

/// (1/2 − s)_{s+j}: the half-integer Pochhammer symbols used throughout.
pub fn half_pochhammer(s: i64, len: u32) -> Rational {
    pochhammer_rational(&(Rational::from((1, 2)) - s), len)
}

/// Generalized binomial coefficient C(a, j) = (a − j + 1)_j / j!; zero for j < 0.
pub fn binomial_rational(a: &Rational, j: i64) -> Rational {
    if j < 0 {
        return Rational::new();
    }
    let j = j as u32;
    let start = Rational::from(a - j) + 1u32;
    pochhammer_rational(&start, j) / factorial(j)
}

/// Converts an exact rational to a float at the given precision.
pub fn to_float(q: &Rational, prec: u32) -> Float {
    Float::with_val(prec, q)
}

/// `x^e` for a float and signed integer exponent.
pub fn powi(x: &Float, e: i64) -> Float {
    let prec = x.prec();
    Float::with_val(prec, x.pow(i32::try_from(e).expect("exponent fits i32")))
}

/// Serializes a float as a decimal string with `digits` significant digits.
pub fn to_decimal(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let s = x.to_string_radix(10, Some(digits));
    normalize_exponent(&s)
}

/// MPFR prints exponents as `e-5`/`e5`; keep them, but write `e0` as nothing.
fn normalize_exponent(s: &str) -> String {
    match s.split_once('e') {
        Some((mant, "0")) => mant.to_string(),
        _ => s.to_string(),
    }
}

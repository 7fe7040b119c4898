//! Exact threshold arithmetic.
//!
//! Tolerances arrive as `f64` (`eps = 0.01`) but are compared as the nearest
//! small rational (`1/100`), and every density threshold is turned into an
//! integer count once, so the hot loops only compare popcounts.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The simplest rational close to `x` (continued fractions, `i64` terms).
pub fn rational(x: f64) -> BigRational {
    let r = Ratio::<i64>::approximate_float(x).expect("finite parameter");
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub fn int(x: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `ceil(r)` clamped to `0..`, as a count.
pub fn ceil_count(r: &BigRational) -> usize {
    if r.is_negative() || r.is_zero() {
        return 0;
    }
    r.ceil().to_integer().to_usize().unwrap_or(usize::MAX)
}

/// `ceil(frac * size)` for a fraction in `[0, 1]`-ish.
pub fn ceil_times(frac: &BigRational, size: usize) -> usize {
    ceil_count(&(frac * int(size)))
}

/// Directed density `edges / (a * b)` as an exact rational.
pub fn density(edges: u64, a: usize, b: usize) -> BigRational {
    BigRational::new(BigInt::from(edges), BigInt::from(a) * BigInt::from(b))
}

/// `ceil((d^k - c * eps) * size)`, at least 0. With `k = 2, c = 10` this is the
/// good-pair witness threshold.
pub fn power_threshold(d: &BigRational, k: usize, c: usize, eps: &BigRational, size: usize) -> usize {
    let mut dk = BigRational::one();
    for _ in 0..k {
        dk *= d;
    }
    ceil_count(&((dk - int(c) * eps) * int(size)))
}

//! Truncated formal power series in one and two variables over exact rationals.
//!
//! A series of validity order `N` stands for the class of all germs that agree
//! with it through total degree `N`. Binary operations return the smaller of the
//! two orders, differentiation loses one degree, and exact division loses the
//! degree of the divisor. No operation ever extends the order.

mod bi;
mod map;
mod uni;

pub use bi::{Divisor, Series2};
pub use map::PlaneMap;
pub use uni::Series1;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact coefficient field. Always kept in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `q^k` for a (possibly negative) integer exponent; `q` must be nonzero when `k < 0`.
pub fn rat_pow(q: &Rat, k: i64) -> Rat {
    if k >= 0 {
        num_traits::pow(q.clone(), k as usize)
    } else {
        num_traits::pow(q.recip(), k.unsigned_abs() as usize)
    }
}

/// `p/q` or `p` when `q = 1`.
pub fn format_rat(q: &Rat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Integer numerators over the least common denominator of `coeffs`.
pub(crate) fn clear_denominators(coeffs: &[Rat]) -> (Vec<BigInt>, BigInt) {
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| if c.denom().is_one() { acc } else { acc.lcm(c.denom()) });
    let nums = coeffs
        .iter()
        .map(|c| if c.is_zero() { BigInt::zero() } else { c.numer() * (&den / c.denom()) })
        .collect();
    (nums, den)
}

pub(crate) fn sign(q: &Rat) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

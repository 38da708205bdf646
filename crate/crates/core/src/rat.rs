//! Arbitrary-precision rationals and small constructors.
//!
//! Exponent chains multiply denominators at every step, so everything runs
//! on `BigRational`; `i64`-backed ratios overflow after a handful of
//! iterations at d ~ 20.

use alloc::string::String;
use alloc::format;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// n/d as a reduced rational. Panics on d = 0.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn uint(n: u32) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// 2^e as a rational; `e` may be negative.
pub fn pow2(e: i64) -> Rat {
    let mag = BigInt::one() << e.unsigned_abs() as usize;
    if e >= 0 {
        Rat::from_integer(mag)
    } else {
        Rat::new(BigInt::one(), mag)
    }
}

pub fn is_positive(r: &Rat) -> bool {
    r.is_positive()
}

/// Renders as "num/den" even for integers ("3/1"), the exact wire form used
/// by traces and reports.
pub fn to_fraction_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses "num/den" or a bare integer "num".
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

/// Nearest f64; exponents in this crate stay far from overflow.
pub fn to_f64(r: &Rat) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // Good enough for display/bisection brackets: both parts fit in f64 for
    // every exponent this calculus produces.
    big_to_f64(n) / big_to_f64(d)
}

fn big_to_f64(b: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    b.to_f64().unwrap_or(f64::NAN)
}

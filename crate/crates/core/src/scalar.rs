//! Exact rational scalars.
//!
//! Everything in this crate is computed over the rationals with
//! arbitrary-precision numerators and denominators, so identity checks are
//! plain zero/nonzero decisions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Formats as `p` or `p/q` (reduced, positive denominator).
pub fn fmt_scalar(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Parses `p` or `p/q`; surrounding whitespace is ignored.
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = text.parse().ok()?;
            Some(BigRational::from_integer(n))
        }
    }
}

/// Binomial coefficient C(n, k) as a scalar.
pub fn binomial(n: usize, k: usize) -> Scalar {
    if k > n {
        return zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    BigRational::from_integer(acc)
}

pub fn pow2(n: usize) -> Scalar {
    BigRational::from_integer(BigInt::one() << n)
}

pub fn abs(s: &Scalar) -> Scalar {
    s.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_round_trip() {
        for s in [int(0), int(-3), ratio(6, -4), ratio(1, 7)] {
            assert_eq!(parse_scalar(&fmt_scalar(&s)), Some(s));
        }
        assert_eq!(fmt_scalar(&ratio(6, -4)), "-3/2");
        assert!(parse_scalar("1/0").is_none());
        assert!(parse_scalar("x").is_none());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(10, 0), int(1));
        assert_eq!(binomial(3, 4), int(0));
        assert_eq!(pow2(10), int(1024));
    }
}

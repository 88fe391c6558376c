//! Exact rational scalars.
//!
//! Every computation in this crate is carried out over `Q` with arbitrary
//! precision. No floating point is used anywhere; equality of scalars is
//! therefore decidable and all downstream verdicts (page dimensions,
//! formality certificates, homotopy tables) are exact.

use num::BigRational;
use num::bigint::BigInt;
use num_traits::{One, Zero};

/// An exact rational number. Always stored in lowest terms with positive
/// denominator (guaranteed by `num::BigRational`).
pub type Q = BigRational;

/// The rational `n/1`.
pub fn qi(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// The rational `n/d`. Panics if `d == 0`.
pub fn qr(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Zero.
pub fn q0() -> Q {
    Q::zero()
}

/// One.
pub fn q1() -> Q {
    Q::one()
}

/// `(-1)^k` as a rational.
pub fn sign(k: i64) -> Q {
    if k.rem_euclid(2) == 0 { q1() } else { -q1() }
}

/// Exact factorial as a rational (used by simplex integration formulas).
pub fn factorial(n: u64) -> Q {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    BigRational::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_normalize() {
        assert_eq!(qr(2, 4), qr(1, 2));
        assert_eq!(qr(-1, -2), qr(1, 2));
        assert_eq!(qr(3, -6), qr(-1, 2));
        assert_eq!(qr(0, 5), q0());
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), q1());
        assert_eq!(factorial(1), q1());
        assert_eq!(factorial(5), qi(120));
    }

    #[test]
    fn signs() {
        assert_eq!(sign(0), q1());
        assert_eq!(sign(3), -q1());
        assert_eq!(sign(-1), -q1());
        assert_eq!(sign(-2), q1());
    }
}

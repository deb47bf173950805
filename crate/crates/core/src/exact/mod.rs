//! Exact arithmetic over arbitrary-precision rationals.
//!
//! The zeta assemblies downstream never round: polynomials are dense with no
//! trailing zeros, rational functions are kept in a canonical reduced form
//! with monic denominator, and every identity check is an exact equality of
//! those canonical forms.

mod cyclotomic;
mod laurent;
mod newton;
mod poly;
mod ratfun;
mod roots;

pub use cyclotomic::{cyclotomic, symmetrize_product};
pub use laurent::LaurentPoly;
pub use newton::{exp_series, log_deriv_series, newton_power_sums, pairing_check};
pub use poly::Poly;
pub use ratfun::{geometric_q_sum, geometric_sum, geometric_tail, Base, RatFun};
pub use roots::roots_numeric;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::ToPrimitive;
use num::{One, Zero};

/// Arbitrary-precision rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `q^e` for a signed exponent, as an exact rational.
pub fn q_pow(q: u64, e: i64) -> Rat {
    let base = BigInt::from(q);
    // u32 is ample: every exponent in range here is a small multiple of
    // degrees and genera.
    let p = base.pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rat::from_integer(p)
    } else {
        Rat::new(BigInt::one(), p)
    }
}

/// Nearest `f64` to an exact rational.
pub fn rat_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// True if `x` is an integer.
pub fn is_int(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Parse a decimal integer string pair into a rational.
pub fn rat_from_strings(numer: &str, denom: &str) -> crate::Result<Rat> {
    let n: BigInt = numer
        .parse()
        .map_err(|_| crate::Error::Input(format!("bad integer string {numer:?}")))?;
    let d: BigInt = denom
        .parse()
        .map_err(|_| crate::Error::Input(format!("bad integer string {denom:?}")))?;
    if d.is_zero() {
        return Err(crate::Error::Input("zero denominator".into()));
    }
    Ok(Rat::new(n, d))
}

/// Decimal string pair `[numerator, denominator]` of a rational in lowest terms.
pub fn rat_to_strings(x: &Rat) -> [String; 2] {
    [x.numer().to_string(), x.denom().to_string()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_pow_signed() {
        assert_eq!(q_pow(2, 3), rat(8));
        assert_eq!(q_pow(2, 0), rat(1));
        assert_eq!(q_pow(3, -2), ratio(1, 9));
    }

    #[test]
    fn string_round_trip() {
        let x = ratio(-35, 6);
        let [n, d] = rat_to_strings(&x);
        assert_eq!((n.as_str(), d.as_str()), ("-35", "6"));
        assert_eq!(rat_from_strings(&n, &d).unwrap(), x);
        assert!(rat_from_strings("1", "0").is_err());
    }
}

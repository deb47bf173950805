//! Laurent polynomials: finite coefficient windows allowing negative powers.
//!
//! Used transiently while assembling zeta functions whose natural variable is
//! `t^{d - r(g-1)}`; negative powers are cleared into a rational function
//! denominator at the end.

use super::{Poly, Rat, RatFun};
use num::Zero;

/// Coefficients start at `min_exp`; first and last entries are nonzero
/// unless the whole thing is zero (empty list).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<Rat>,
}

impl LaurentPoly {
    pub fn new(mut min_exp: i64, mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            coeffs.drain(..lead_zeros);
            min_exp += lead_zeros as i64;
        }
        if coeffs.is_empty() {
            min_exp = 0;
        }
        LaurentPoly { min_exp, coeffs }
    }

    pub fn zero() -> Self {
        LaurentPoly { min_exp: 0, coeffs: Vec::new() }
    }

    /// `c * t^e`.
    pub fn monomial(c: Rat, e: i64) -> Self {
        LaurentPoly::new(e, vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Inclusive exponent span `(lowest, highest)`.
    pub fn support(&self) -> Option<(i64, i64)> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some((self.min_exp, self.min_exp + self.coeffs.len() as i64 - 1))
        }
    }

    pub fn coeff(&self, e: i64) -> Rat {
        if e < self.min_exp {
            return Rat::zero();
        }
        self.coeffs
            .get((e - self.min_exp) as usize)
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_exp.min(rhs.min_exp);
        let hi = (self.min_exp + self.coeffs.len() as i64)
            .max(rhs.min_exp + rhs.coeffs.len() as i64);
        let mut coeffs = Vec::with_capacity((hi - lo) as usize);
        for e in lo..hi {
            coeffs.push(self.coeff(e) + rhs.coeff(e));
        }
        LaurentPoly::new(lo, coeffs)
    }

    pub fn scale(&self, c: &Rat) -> LaurentPoly {
        LaurentPoly::new(self.min_exp, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `c * t^e`.
    pub fn mul_monomial(&self, c: &Rat, e: i64) -> LaurentPoly {
        LaurentPoly::new(
            self.min_exp + e,
            self.coeffs.iter().map(|a| a * c).collect(),
        )
    }

    /// Clear negative powers into the denominator.
    pub fn into_ratfun(&self) -> RatFun {
        if self.is_zero() {
            return RatFun::zero();
        }
        let p = Poly::new(self.coeffs.clone());
        if self.min_exp >= 0 {
            RatFun::from_poly(p.shift_up(self.min_exp as usize))
        } else {
            let den = Poly::monomial(super::rat(1), (-self.min_exp) as usize);
            RatFun::new(p, den).expect("monomial denominator is nonzero")
        }
    }
}

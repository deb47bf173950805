//! Rational functions in one variable over the rationals.
//!
//! Canonical form invariant: numerator and denominator share no common
//! factor and the denominator is monic.  Zero is `0/1`.  Equality, pole
//! orders, and residues all rely on this normalization.

use super::{q_pow, rat, Poly, Rat};
use crate::{Error, Result};
use num::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Build `num/den`, reducing to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Math("zero denominator".into()));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFun { num: Poly::zero(), den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let num = num.divrem(&g).expect("gcd is nonzero").0;
        let den = den.divrem(&g).expect("gcd is nonzero").0;
        let lead = den.leading().expect("denominator is nonzero");
        let inv = lead.recip();
        RatFun { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFun { num: Poly::one(), den: Poly::one() }
    }

    pub fn constant(c: Rat) -> Self {
        RatFun { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn to_poly(&self) -> Option<Poly> {
        if self.is_polynomial() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rat) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<RatFun> {
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFun) -> Result<RatFun> {
        if rhs.is_zero() {
            return Err(Error::Math("division by the zero function".into()));
        }
        RatFun::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// Evaluate at a point; a pole is an error.
    pub fn eval(&self, t: &Rat) -> Result<Rat> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return Err(Error::Math(format!("pole at t = {t}")));
        }
        Ok(self.num.eval(t) / d)
    }

    /// Substitute `t -> 1/(q t)` and clear powers, staying exact.
    ///
    /// With `k = max(deg num, deg den)`, each polynomial `sum a_i t^i`
    /// becomes `sum a_i q^{k-i} t^{k-i}` after multiplying through by
    /// `(q t)^k`.
    pub fn substitute_recip(&self, q: u64) -> RatFun {
        if self.is_zero() {
            return RatFun::zero();
        }
        let dn = self.num.degree().expect("nonzero numerator");
        let dd = self.den.degree().expect("nonzero denominator");
        let k = dn.max(dd);
        let flip = |p: &Poly| -> Poly {
            let mut coeffs = vec![Rat::zero(); k + 1];
            for (i, a) in p.coeffs().iter().enumerate() {
                coeffs[k - i] = a * q_pow(q, (k - i) as i64);
            }
            Poly::new(coeffs)
        };
        Self::reduce(flip(&self.num), flip(&self.den))
    }

    /// Multiplicity of `t0` as a root of the (reduced) denominator.
    pub fn pole_order_at(&self, t0: &Rat) -> usize {
        let mut d = self.den.clone();
        let linear = Poly::new(vec![-t0.clone(), Rat::one()]);
        let mut order = 0;
        while d.eval(t0).is_zero() {
            d = d.divrem(&linear).expect("linear divisor").0;
            order += 1;
        }
        order
    }

    /// Residue at a simple pole.  Regular points give zero; higher-order
    /// poles are an error.
    pub fn residue_at(&self, t0: &Rat) -> Result<Rat> {
        if !self.den.eval(t0).is_zero() {
            return Ok(Rat::zero());
        }
        let linear = Poly::new(vec![-t0.clone(), Rat::one()]);
        let (d1, r) = self.den.divrem(&linear)?;
        debug_assert!(r.is_zero());
        let d1_at = d1.eval(t0);
        if d1_at.is_zero() {
            return Err(Error::Math(format!(
                "pole at t = {t0} has order {}, expected a simple pole",
                self.pole_order_at(t0)
            )));
        }
        Ok(self.num.eval(t0) / d1_at)
    }

    /// Taylor coefficients `c_0 ..= c_order` at the origin.
    ///
    /// Writing `num = sum n_k t^k`, `den = sum d_k t^k` with `d_0 != 0`,
    /// the recurrence is `c_k = (n_k - sum_{j=1..=k} d_j c_{k-j}) / d_0`.
    pub fn series_expand(&self, order: usize) -> Result<Vec<Rat>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::Math("pole at t = 0, no Taylor expansion".into()));
        }
        let mut out = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut c = self.num.coeff(k);
            for j in 1..=k {
                c -= self.den.coeff(j) * &out[k - j];
            }
            out.push(c / &d0);
        }
        Ok(out)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        RatFun::reduce(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        RatFun::reduce(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        RatFun::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Which monomial a geometric series walks in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    /// Powers of `t`.
    T,
    /// Powers of `q t`.
    QT,
}

/// Closed form of `sum_{k >= 0} c * b^{first + k * ratio}` with `b` the
/// chosen base: `c * b^first / (1 - b^ratio)`.
///
/// Requires `ratio >= 1`; otherwise the terms do not shrink and the sum
/// is refused.  `first` may be negative, the powers are cleared into the
/// denominator.
pub fn geometric_sum(
    coefficient: &Rat,
    first: i64,
    ratio: i64,
    base: Base,
    q: u64,
) -> Result<RatFun> {
    if ratio < 1 {
        return Err(Error::NonContracting(format!(
            "geometric ratio exponent {ratio} must be at least 1"
        )));
    }
    let qf = match base {
        Base::T => rat(1),
        Base::QT => q_pow(q, first),
    };
    let qr = match base {
        Base::T => rat(1),
        Base::QT => q_pow(q, ratio),
    };
    let c = coefficient * qf;
    // 1 - qr * t^ratio
    let mut den = vec![Rat::one()];
    den.resize(ratio as usize, Rat::zero());
    den.push(-qr);
    let den = Poly::new(den);
    if first >= 0 {
        RatFun::new(Poly::monomial(c, first as usize), den)
    } else {
        RatFun::new(
            Poly::constant(c),
            &Poly::monomial(Rat::one(), (-first) as usize) * &den,
        )
    }
}

/// Scalar geometric sum `sum_{k >= 0} q^{first_exp - k * ratio_exp}`,
/// in closed form `q^first_exp / (1 - q^{-ratio_exp})`.
///
/// Requires `ratio_exp >= 1` so that successive terms shrink; anything
/// else is refused rather than summed formally.
pub fn geometric_q_sum(first_exp: i64, ratio_exp: i64, q: u64) -> Result<Rat> {
    if ratio_exp < 1 {
        return Err(Error::NonContracting(format!(
            "q-power ratio exponent {ratio_exp} must be at least 1"
        )));
    }
    let ratio = q_pow(q, -ratio_exp);
    Ok(q_pow(q, first_exp) / (Rat::one() - ratio))
}

/// Closed form `c * q^{start_q} t^{start_t} / (1 - q^{ratio_q} t^{ratio_t})`
/// for a tail `sum_{k >= 0} c * q^{start_q + k ratio_q} t^{start_t + k ratio_t}`.
///
/// Requires `ratio_t >= 1` and `ratio_q <= ratio_t`, so the ratio term
/// `q^{ratio_q} t^{ratio_t}` stays below one on the disc `|t| < 1/q`.
pub fn geometric_tail(
    c: &Rat,
    start_q: i64,
    start_t: i64,
    ratio_q: i64,
    ratio_t: i64,
    q: u64,
) -> Result<RatFun> {
    if ratio_t < 1 || ratio_q > ratio_t {
        return Err(Error::NonContracting(format!(
            "ratio q^{ratio_q} t^{ratio_t} does not contract on |t| < 1/q"
        )));
    }
    let mut den = vec![Rat::one()];
    den.resize(ratio_t as usize, Rat::zero());
    den.push(-q_pow(q, ratio_q));
    let den = Poly::new(den);
    let scaled = c * q_pow(q, start_q);
    if start_t >= 0 {
        RatFun::new(Poly::monomial(scaled, start_t as usize), den)
    } else {
        RatFun::new(
            Poly::constant(scaled),
            &Poly::monomial(Rat::one(), (-start_t) as usize) * &den,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use proptest::collection::vec as pvec;
    use proptest::prelude::*;

    fn artin_den() -> Poly {
        // (1 - t)(1 - 2t)
        Poly::from_ints(&[1, -3, 2])
    }

    #[test]
    fn canonical_form() {
        let f = RatFun::new(Poly::from_ints(&[2, -2]), Poly::from_ints(&[2, -4])).unwrap();
        assert!(f.den().leading().unwrap().is_one());
        assert_eq!(f.eval(&rat(0)).unwrap(), rat(1));
        let g = RatFun::new(Poly::from_ints(&[1, -1]), Poly::from_ints(&[1, -2])).unwrap();
        assert_eq!(f, g);
        assert!(RatFun::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn arithmetic_reduces() {
        let a = RatFun::new(Poly::one(), Poly::from_ints(&[1, -1])).unwrap();
        let b = RatFun::new(Poly::one(), Poly::from_ints(&[1, -2])).unwrap();
        let s = &a - &b;
        // 1/(1-t) - 1/(1-2t) = -t / ((1-t)(1-2t))
        assert_eq!(s.eval(&ratio(1, 3)).unwrap(), ratio(3, 2) - rat(3));
        let p = &a * &b;
        assert_eq!(p, RatFun::new(Poly::one(), artin_den()).unwrap());
        assert!((&a - &a).is_zero());
        assert!(p.checked_div(&RatFun::zero()).is_err());
        assert_eq!(p.checked_div(&b).unwrap(), a);
    }

    #[test]
    fn recip_substitution() {
        // Z(t) = 1/((1-t)(1-2t)) maps to 2t^2/((1-t)(1-2t)) under t -> 1/(2t).
        let z = RatFun::new(Poly::one(), artin_den()).unwrap();
        let w = z.substitute_recip(2);
        let expect = RatFun::new(Poly::from_ints(&[0, 0, 2]), artin_den()).unwrap();
        assert_eq!(w, expect);
        // involution: applying it twice returns the original
        assert_eq!(w.substitute_recip(2), z);
    }

    #[test]
    fn series_coefficients() {
        let z = RatFun::new(Poly::one(), artin_den()).unwrap();
        let c = z.series_expand(3).unwrap();
        assert_eq!(c, vec![rat(1), rat(3), rat(7), rat(15)]);
        let pole = RatFun::new(Poly::one(), Poly::from_ints(&[0, 1])).unwrap();
        assert!(pole.series_expand(1).is_err());
    }

    #[test]
    fn residues() {
        let f = RatFun::new(Poly::one(), Poly::from_ints(&[1, -1])).unwrap();
        assert_eq!(f.residue_at(&rat(1)).unwrap(), rat(-1));
        let z = RatFun::new(Poly::one(), artin_den()).unwrap();
        assert_eq!(z.residue_at(&ratio(1, 2)).unwrap(), rat(-1));
        assert_eq!(z.residue_at(&rat(1)).unwrap(), rat(1));
        assert_eq!(z.residue_at(&rat(5)).unwrap(), rat(0));
        let double = RatFun::new(Poly::one(), Poly::from_ints(&[1, -2, 1])).unwrap();
        assert_eq!(double.pole_order_at(&rat(1)), 2);
        assert!(double.residue_at(&rat(1)).is_err());
    }

    #[test]
    fn geometric_closed_forms() {
        let g = geometric_sum(&rat(1), 0, 1, Base::T, 7).unwrap();
        assert_eq!(g, RatFun::new(Poly::one(), Poly::from_ints(&[1, -1])).unwrap());
        // (2t)^{-2} / (1 - (2t)^2) at t = 1/3: (9/4) / (5/9) = 81/20
        let h = geometric_sum(&rat(1), -2, 2, Base::QT, 2).unwrap();
        assert_eq!(h.eval(&ratio(1, 3)).unwrap(), ratio(81, 20));
        assert!(matches!(
            geometric_sum(&rat(1), 0, 0, Base::T, 2),
            Err(crate::Error::NonContracting(_))
        ));
    }

    #[test]
    fn scalar_q_sums() {
        // 8 * (1 + 1/4 + 1/16 + ...) = 8 / (3/4) = 32/3
        assert_eq!(geometric_q_sum(3, 2, 2).unwrap(), ratio(32, 3));
        assert_eq!(geometric_q_sum(0, 1, 3).unwrap(), ratio(3, 2));
        assert!(matches!(
            geometric_q_sum(0, 0, 2),
            Err(crate::Error::NonContracting(_))
        ));
        assert!(matches!(
            geometric_q_sum(0, -1, 2),
            Err(crate::Error::NonContracting(_))
        ));
    }

    #[test]
    fn tails() {
        let f = geometric_tail(&rat(1), 1, 2, 2, 2, 2).unwrap();
        // 2 t^2 / (1 - 4 t^2) at t = 1/4 gives (1/8)/(3/4) = 1/6
        assert_eq!(f.eval(&ratio(1, 4)).unwrap(), ratio(1, 6));
        assert!(matches!(
            geometric_tail(&rat(1), 0, 0, 3, 2, 2),
            Err(crate::Error::NonContracting(_))
        ));
        assert!(matches!(
            geometric_tail(&rat(1), 0, 0, 0, 0, 2),
            Err(crate::Error::NonContracting(_))
        ));
    }

    fn any_poly() -> impl Strategy<Value = Poly> {
        pvec(-6i64..7, 0..6).prop_map(|cs| Poly::from_ints(&cs))
    }

    fn nonzero_poly() -> impl Strategy<Value = Poly> {
        any_poly().prop_filter("nonzero", |p| !p.is_zero())
    }

    fn any_ratfun() -> impl Strategy<Value = RatFun> {
        (any_poly(), nonzero_poly()).prop_map(|(n, d)| RatFun::new(n, d).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn canonical_form_ignores_common_factors(
            z in any_ratfun(),
            c in 1i64..40,
            extra in nonzero_poly(),
        ) {
            prop_assert!(z.den().leading().is_none_or(|l| l.is_one()));
            let scale = ratio(c, 7);
            let scaled = RatFun::new(z.num().scale(&scale), z.den().scale(&scale)).unwrap();
            prop_assert_eq!(&scaled, &z);
            let blown = RatFun::new(z.num() * &extra, z.den() * &extra).unwrap();
            prop_assert_eq!(&blown, &z);
        }

        #[test]
        fn recip_substitution_is_an_involution(z in any_ratfun(), q in 2u64..6) {
            prop_assert_eq!(z.substitute_recip(q).substitute_recip(q), z);
        }

        #[test]
        fn series_recomposes_the_function(z in any_ratfun(), order in 0usize..8) {
            prop_assume!(!z.den().coeff(0).is_zero());
            let partial = Poly::new(z.series_expand(order).unwrap());
            let recomposed = &partial * z.den();
            for k in 0..=order {
                prop_assert_eq!(recomposed.coeff(k), z.num().coeff(k));
            }
        }
    }
}

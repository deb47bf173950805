//! Curves over finite fields, presented through their zeta data.
//!
//! A curve enters the library either as a degree-`2g` zeta numerator or
//! as a list of point counts over field extensions.  Both paths funnel
//! through the same validator, so every `CurveData` in circulation has a
//! numerator with integer coefficients, the reflective coefficient
//! symmetry, coefficients inside the Weil bound, and nonnegative point
//! counts.

pub mod points;

pub use points::{HyperellipticModel, PlaneCurve};

use crate::exact::{is_int, newton_power_sums, q_pow, rat, Poly, Rat, RatFun};
use crate::{Error, Result};
use num::{BigInt, One, Signed, Zero};

/// Largest base field size accepted anywhere.  Keeps prime-power
/// validation honest (trial division stays exact) and counting loops
/// bounded.
pub const MAX_FIELD: u64 = 1_000_000_000;

/// Check that `q` is a prime power and return the prime.
pub(crate) fn prime_of(q: u64) -> Result<u64> {
    if q < 2 {
        return Err(Error::Input(format!("field size {q} must be at least 2")));
    }
    if q > MAX_FIELD {
        return Err(Error::Input(format!(
            "field size {q} exceeds the supported bound {MAX_FIELD}"
        )));
    }
    let mut p = q;
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            p = d;
            break;
        }
        d += 1;
    }
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
    }
    if rest != 1 {
        return Err(Error::Input(format!("field size {q} is not a prime power")));
    }
    Ok(p)
}

fn binomial_sq_q_pow(two_g: usize, i: usize, q: u64) -> BigInt {
    let b = num::integer::binomial(BigInt::from(two_g), BigInt::from(i));
    &b * &b * BigInt::from(q).pow(i as u32)
}

/// A validated curve: base field size, genus, and zeta numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveData {
    q: u64,
    genus: usize,
    numerator: Poly,
}

impl CurveData {
    /// Accept a zeta numerator `a_0 + a_1 t + ... + a_{2g} t^{2g}`.
    ///
    /// Rejects anything that cannot belong to a curve: non-integer or
    /// asymmetric coefficients, coefficients outside the Weil bound
    /// `|a_i| <= C(2g, i) q^{i/2}`, negative point counts, or a
    /// nonpositive divisor class number.
    pub fn from_weil_numerator(q: u64, coeffs: &[Rat]) -> Result<Self> {
        prime_of(q)?;
        if coeffs.is_empty() || coeffs.len().is_multiple_of(2) {
            return Err(Error::Input(format!(
                "numerator needs 2g+1 coefficients, got {}",
                coeffs.len()
            )));
        }
        let two_g = coeffs.len() - 1;
        let genus = two_g / 2;
        if coeffs[0] != Rat::one() {
            return Err(Error::Input("numerator must have constant term 1".into()));
        }
        for (i, a) in coeffs.iter().enumerate() {
            if !is_int(a) {
                return Err(Error::Input(format!(
                    "numerator coefficient a_{i} = {a} is not an integer"
                )));
            }
        }
        for i in 0..=two_g {
            let expect = q_pow(q, genus as i64 - i as i64) * &coeffs[i];
            if coeffs[two_g - i] != expect {
                return Err(Error::Input(format!(
                    "coefficient symmetry a_{} = q^{} a_{i} fails",
                    two_g - i,
                    genus as i64 - i as i64
                )));
            }
        }
        for (i, a) in coeffs.iter().enumerate() {
            let ai = a.to_integer();
            if &ai * &ai > binomial_sq_q_pow(two_g, i, q) {
                return Err(Error::Input(format!(
                    "coefficient a_{i} = {a} violates the Weil bound"
                )));
            }
        }
        let numerator = Poly::new(coeffs.to_vec());
        let s = newton_power_sums(&numerator, two_g)?;
        for (m, sm) in s.iter().enumerate() {
            let n_m = q_pow(q, m as i64 + 1) + rat(1) - sm;
            if n_m.is_negative() {
                return Err(Error::Input(format!(
                    "numerator implies a negative point count N_{} = {n_m}",
                    m + 1
                )));
            }
        }
        let h = numerator.eval(&rat(1));
        if !h.is_positive() {
            return Err(Error::Input(format!(
                "numerator implies a nonpositive class number {h}"
            )));
        }
        Ok(CurveData { q, genus, numerator })
    }

    /// Convenience wrapper over integer coefficients.
    pub fn from_integer_numerator(q: u64, coeffs: &[i64]) -> Result<Self> {
        let rats: Vec<Rat> = coeffs.iter().map(|&c| rat(c)).collect();
        Self::from_weil_numerator(q, &rats)
    }

    /// Recover the numerator from point counts `N_1, N_2, ...` over the
    /// extension tower.
    ///
    /// The first `genus` counts pin the numerator via the Newton
    /// identities; any further counts must agree with what the numerator
    /// predicts or the input is rejected.
    pub fn from_point_counts(q: u64, genus: usize, counts: &[u64]) -> Result<Self> {
        if counts.len() < genus {
            return Err(Error::Input(format!(
                "genus {genus} needs at least {genus} point counts, got {}",
                counts.len()
            )));
        }
        let s: Vec<Rat> = counts
            .iter()
            .take(genus)
            .enumerate()
            .map(|(i, &n)| q_pow(q, i as i64 + 1) + rat(1) - Rat::from_integer(n.into()))
            .collect();
        // e_k = (-1)^{k-1} (S_k - sum_{i<k} (-1)^{i-1} e_i S_{k-i}) / k
        let mut e = vec![Rat::one()];
        for k in 1..=genus {
            let mut acc = s[k - 1].clone();
            for i in 1..k {
                let term = &e[i] * &s[k - i - 1];
                if (i - 1) % 2 == 0 {
                    acc -= term;
                } else {
                    acc += term;
                }
            }
            if (k - 1) % 2 == 1 {
                acc = -acc;
            }
            e.push(acc / rat(k as i64));
        }
        let mut coeffs = vec![Rat::zero(); 2 * genus + 1];
        for k in 0..=genus {
            coeffs[k] = if k % 2 == 0 { e[k].clone() } else { -e[k].clone() };
        }
        for k in genus + 1..=2 * genus {
            coeffs[k] = q_pow(q, k as i64 - genus as i64) * &coeffs[2 * genus - k];
        }
        for (k, a) in coeffs.iter().enumerate() {
            if !is_int(a) {
                return Err(Error::Input(format!(
                    "point counts force a non-integer coefficient a_{k} = {a}"
                )));
            }
        }
        let curve = Self::from_weil_numerator(q, &coeffs)?;
        let predicted = curve.point_counts(counts.len());
        for (m, (pred, &got)) in predicted.iter().zip(counts).enumerate() {
            if pred != &Rat::from_integer(got.into()) {
                return Err(Error::Input(format!(
                    "point count N_{} = {got} conflicts with the value {pred} implied by N_1..N_{genus}",
                    m + 1
                )));
            }
        }
        Ok(curve)
    }

    /// The genus-zero curve with `q + 1` rational points.
    pub fn projective_line(q: u64) -> Result<Self> {
        Self::from_weil_numerator(q, &[rat(1)])
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    /// Point counts `N_1 ..= N_n` over the extension tower; always
    /// integers for a validated curve.
    pub fn point_counts(&self, n: usize) -> Vec<Rat> {
        let s = newton_power_sums(&self.numerator, n)
            .expect("validated numerator has constant term 1");
        s.iter()
            .enumerate()
            .map(|(i, sm)| q_pow(self.q, i as i64 + 1) + rat(1) - sm)
            .collect()
    }

    /// Number of divisor classes of degree zero, `P(1)`.
    pub fn class_number(&self) -> Rat {
        self.numerator.eval(&rat(1))
    }
}

/// The rank-one zeta function `P(t) / ((1 - t)(1 - q t))` with the
/// counting data that hangs off it.
#[derive(Clone, Debug)]
pub struct AbelianZeta {
    q: u64,
    genus: usize,
    zeta: RatFun,
    class_number: Rat,
    sigma_small: Vec<Rat>,
}

impl AbelianZeta {
    pub fn new(curve: &CurveData) -> Result<Self> {
        let q = curve.q;
        let den_coeffs = vec![
            Rat::one(),
            -rat(1) - q_pow(q, 1),
            q_pow(q, 1),
        ];
        let zeta = RatFun::new(curve.numerator.clone(), Poly::new(den_coeffs))?;
        let class_number = curve.class_number();
        // sum over degree-d classes of q^{h0}: (q-1) b_d + h in the
        // range 0 <= d <= 2g-2 where b_d counts effective divisors
        let mut sigma_small = Vec::new();
        if curve.genus >= 1 {
            let top = 2 * curve.genus - 2;
            let b = zeta.series_expand(top)?;
            for (d, bd) in b.iter().enumerate() {
                if !is_int(bd) || bd.is_negative() {
                    return Err(Error::Math(format!(
                        "effective divisor count b_{d} = {bd} is not a nonnegative integer"
                    )));
                }
                sigma_small.push((q_pow(q, 1) - rat(1)) * bd + &class_number);
            }
        }
        Ok(AbelianZeta {
            q,
            genus: curve.genus,
            zeta,
            class_number,
            sigma_small,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn ratfun(&self) -> &RatFun {
        &self.zeta
    }

    pub fn class_number(&self) -> &Rat {
        &self.class_number
    }

    /// Effective divisor counts `b_0 ..= b_max_d` (Taylor coefficients
    /// of the zeta function), checked to be nonnegative integers.
    pub fn divisor_counts(&self, max_d: usize) -> Result<Vec<Rat>> {
        let b = self.zeta.series_expand(max_d)?;
        for (d, bd) in b.iter().enumerate() {
            if !is_int(bd) || bd.is_negative() {
                return Err(Error::Math(format!(
                    "effective divisor count b_{d} = {bd} is not a nonnegative integer"
                )));
            }
        }
        Ok(b)
    }

    /// `sum over degree-d line bundles of q^{h0}`.
    ///
    /// Below degree zero every bundle has no sections, above `2g - 2`
    /// the section count is forced by Riemann-Roch, and in between the
    /// cached effective-divisor counts fill in.
    pub fn sigma(&self, d: i64) -> Rat {
        if d < 0 {
            return self.class_number.clone();
        }
        let du = d as usize;
        if self.genus == 0 || du > 2 * self.genus - 2 {
            return &self.class_number * q_pow(self.q, d + 1 - self.genus as i64);
        }
        self.sigma_small[du].clone()
    }
}

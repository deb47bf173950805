//! Power sums, logarithmic derivatives, and exponentials of series.
//!
//! For a polynomial `P(t) = prod (1 - w_i t)` the logarithmic derivative
//! `-P'/P = sum_{m >= 1} S_m t^{m-1}` collects the power sums
//! `S_m = sum_i w_i^m` of the reciprocal roots, which is how point counts
//! are read off a zeta numerator without ever leaving the rationals.

use super::{q_pow, Poly, Rat, RatFun};
use crate::{Error, Result};
use num::{One, Zero};

/// Power sums `S_1 ..= S_n` of the reciprocal roots of `p`.
///
/// Requires `p(0) != 0` so the product form `p = p(0) prod (1 - w_i t)`
/// makes sense.
pub fn newton_power_sums(p: &Poly, n: usize) -> Result<Vec<Rat>> {
    if p.coeff(0).is_zero() {
        return Err(Error::Math(
            "power sums need a nonzero constant term".into(),
        ));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let ld = log_deriv_series(&RatFun::from_poly(p.clone()), n - 1)?;
    Ok(ld.into_iter().map(|c| -c).collect())
}

/// Taylor coefficients of `f'/f` through `t^order`.
///
/// Needs `f(0)` finite and nonzero, otherwise the quotient has a pole
/// at the origin.
pub fn log_deriv_series(f: &RatFun, order: usize) -> Result<Vec<Rat>> {
    if f.is_zero() {
        return Err(Error::Math("logarithmic derivative of zero".into()));
    }
    let num = f.num();
    let den = f.den();
    let deriv = &(&num.derivative() * den) - &(num * &den.derivative());
    RatFun::new(deriv, num * den)?.series_expand(order)
}

/// Exponential of a series with zero constant term, through `t^order`.
///
/// With `f = sum_{m >= 1} a_m t^m` and `g = exp f`, the relation
/// `g' = f' g` gives `(k+1) g_{k+1} = sum_j (j+1) a_{j+1} g_{k-j}`.
pub fn exp_series(a: &[Rat], order: usize) -> Result<Vec<Rat>> {
    if a.first().is_some_and(|c| !c.is_zero()) {
        return Err(Error::Math(
            "exponential of a series needs zero constant term".into(),
        ));
    }
    let coeff = |m: usize| a.get(m).cloned().unwrap_or_else(Rat::zero);
    let mut g = vec![Rat::one()];
    for k in 0..order {
        let mut s = Rat::zero();
        for j in 0..=k {
            s += coeff(j + 1) * Rat::from_integer((j + 1).into()) * &g[k - j];
        }
        g.push(s / Rat::from_integer((k + 1).into()));
    }
    Ok(g)
}

/// Coefficient-level functional equation probe.
///
/// For `p` of degree `n`, forms `Q(t) = t^n p(1/(q t))` (so
/// `Q_k = p_{n-k} q^{k-n}`) and tests whether `Q = c p` for the scalar
/// `c` fixed by the first nonzero coefficient.  Returns the verdict and
/// the constant when it holds.
pub fn pairing_check(p: &Poly, q: u64) -> (bool, Option<Rat>) {
    let n = match p.degree() {
        Some(n) => n,
        None => return (true, None),
    };
    let q_coeffs: Vec<Rat> = (0..=n)
        .map(|k| p.coeff(n - k) * q_pow(q, k as i64 - n as i64))
        .collect();
    let q_poly = Poly::new(q_coeffs);
    let k0 = (0..=n)
        .find(|&k| !p.coeff(k).is_zero())
        .expect("degree implies a nonzero coefficient");
    let c = q_poly.coeff(k0) / p.coeff(k0);
    if q_poly == p.scale(&c) {
        (true, Some(c))
    } else {
        (false, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    #[test]
    fn power_sums_of_split_polynomial() {
        // roots of 1 - 3t + 2t^2 are 1 and 1/2, reciprocal roots 1 and 2
        let p = Poly::from_ints(&[1, -3, 2]);
        assert_eq!(
            newton_power_sums(&p, 4).unwrap(),
            vec![rat(3), rat(5), rat(9), rat(17)]
        );
    }

    #[test]
    fn power_sums_of_conjugate_pair() {
        // reciprocal roots are +-i sqrt(2)
        let p = Poly::from_ints(&[1, 0, 2]);
        assert_eq!(
            newton_power_sums(&p, 4).unwrap(),
            vec![rat(0), rat(-4), rat(0), rat(8)]
        );
        assert!(newton_power_sums(&Poly::from_ints(&[0, 1]), 2).is_err());
    }

    #[test]
    fn log_deriv_of_rational_function() {
        let z = RatFun::new(Poly::one(), Poly::from_ints(&[1, -3, 2])).unwrap();
        // (log z)' = 1/(1-t) + 2/(1-2t)
        assert_eq!(
            log_deriv_series(&z, 2).unwrap(),
            vec![rat(3), rat(5), rat(9)]
        );
    }

    #[test]
    fn exp_of_series() {
        // exp(t + t^2/2 + t^3/3) = 1/(1-t) + O(t^4)
        let a = vec![rat(0), rat(1), ratio(1, 2), ratio(1, 3)];
        assert_eq!(
            exp_series(&a, 3).unwrap(),
            vec![rat(1), rat(1), rat(1), rat(1)]
        );
        assert!(exp_series(&[rat(1)], 1).is_err());
    }

    #[test]
    fn pairing() {
        let (ok, c) = pairing_check(&Poly::from_ints(&[1, 0, 2]), 2);
        assert!(ok);
        assert_eq!(c, Some(ratio(1, 2)));
        let (ok, c) = pairing_check(&Poly::from_ints(&[1, 1]), 2);
        assert!(!ok);
        assert_eq!(c, None);
        assert_eq!(pairing_check(&Poly::zero(), 2), (true, None));
    }
}

//! Numeric root finding for diagnostics.
//!
//! Everything else in this crate is exact; this module deliberately is
//! not.  It locates the reciprocal roots of a polynomial in `f64`
//! precision so callers can probe absolute values.  Verdicts derived
//! from these values are reports, never proofs.

use super::Poly;
use crate::{Error, Result};
use num::complex::Complex64;
use num::Zero;

fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Reciprocal roots `w = 1/z` over the roots `z` of `p`, sorted by real
/// then imaginary part.
///
/// Uses simultaneous (Durand-Kerner) iteration followed by a Newton
/// polish.  Each reported root must satisfy `|p(1/w)| < tol` or the call
/// fails rather than returning junk.  Requires `p(0) != 0`.
pub fn roots_numeric(p: &Poly, tol: f64) -> Result<Vec<Complex64>> {
    if p.is_zero() {
        return Err(Error::Math("root finding on the zero polynomial".into()));
    }
    if p.coeff(0).is_zero() {
        return Err(Error::Math(
            "reciprocal roots need a nonzero constant term".into(),
        ));
    }
    let n = p.degree().expect("nonzero polynomial");
    if n == 0 {
        return Ok(Vec::new());
    }

    let raw = p.to_f64_coeffs();
    let lead = *raw.last().expect("nonempty coefficients");
    let monic: Vec<f64> = raw.iter().map(|c| c / lead).collect();
    let dmonic: Vec<f64> = monic
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * i as f64)
        .collect();

    // start on a spiral inside a disc that bounds every root
    let radius = 1.0 + monic.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| seed.powu(j as u32 + 1) / seed.norm() * radius)
        .collect();

    let mut converged = false;
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for j in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for k in 0..n {
                if k != j {
                    denom *= z[j] - z[k];
                }
            }
            if denom.is_zero() {
                continue;
            }
            let step = horner(&monic, z[j]) / denom;
            z[j] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[j].norm()));
        }
        if max_step < 1e-14 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Diverged(
            "simultaneous iteration did not settle within 500 sweeps".into(),
        ));
    }

    for zj in z.iter_mut() {
        for _ in 0..8 {
            let d = horner(&dmonic, *zj);
            if d.is_zero() {
                break;
            }
            *zj -= horner(&monic, *zj) / d;
        }
    }

    for &zj in &z {
        let residual = horner(&raw, zj).norm();
        // NaN residuals must also be refused
        if residual.is_nan() || residual >= tol {
            return Err(Error::Diverged(format!(
                "root residual {residual:.3e} exceeds tolerance {tol:.3e}"
            )));
        }
    }

    let mut recip: Vec<Complex64> = z.iter().map(|zj| zj.inv()).collect();
    // order by real then imaginary part, ignoring sub-tolerance noise in
    // the real parts so conjugate pairs straddling an axis sort stably
    recip.sort_by(|a, b| {
        let re = if (a.re - b.re).abs() <= 1e-9 {
            std::cmp::Ordering::Equal
        } else {
            a.re.partial_cmp(&b.re).unwrap_or(std::cmp::Ordering::Equal)
        };
        re.then_with(|| a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    Ok(recip)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_quadratic() {
        let p = Poly::from_ints(&[1, -3, 2]);
        let w = roots_numeric(&p, 1e-10).unwrap();
        assert_eq!(w.len(), 2);
        assert!((w[0] - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        assert!((w[1] - Complex64::new(2.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn conjugate_pair_on_critical_circle() {
        let p = Poly::from_ints(&[1, 0, 2]);
        let w = roots_numeric(&p, 1e-10).unwrap();
        let s = 2.0f64.sqrt();
        assert!((w[0] - Complex64::new(0.0, -s)).norm() < 1e-9);
        assert!((w[1] - Complex64::new(0.0, s)).norm() < 1e-9);
    }

    #[test]
    fn mixed_quartic() {
        // (1 - 3t + 2t^2)(1 + 2t^2)
        let p = Poly::from_ints(&[1, -3, 4, -6, 4]);
        let w = roots_numeric(&p, 1e-8).unwrap();
        let s = 2.0f64.sqrt();
        let expect = [(0.0, -s), (0.0, s), (1.0, 0.0), (2.0, 0.0)];
        for (got, (re, im)) in w.iter().zip(expect) {
            assert!((got - Complex64::new(re, im)).norm() < 1e-7);
        }
    }

    #[test]
    fn rejects_zero_constant_term() {
        assert!(roots_numeric(&Poly::from_ints(&[0, 1]), 1e-9).is_err());
        assert!(roots_numeric(&Poly::zero(), 1e-9).is_err());
    }
}

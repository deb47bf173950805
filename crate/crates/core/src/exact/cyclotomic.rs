//! Cyclotomic polynomials and root-of-unity symmetrization.
//!
//! `symmetrize_product(p, a)` computes `prod_{i=1..a} p(z^i t)` for a
//! primitive `a`-th root of unity `z`, entirely over the rationals, by
//! working in the group algebra `Q[x]/(x^a - 1)` and reducing modulo the
//! `a`-th cyclotomic polynomial at the end.  The product is invariant
//! under `t -> z t`, so it collapses to a polynomial in `T = t^a`.

use super::{Poly, Rat};
use crate::{Error, Result};
use num::{One, Zero};

/// The `a`-th cyclotomic polynomial, for `a >= 1`.
pub fn cyclotomic(a: u64) -> Poly {
    assert!(a >= 1, "cyclotomic index must be positive");
    // x^a - 1 divided by every proper-divisor factor
    let mut coeffs = vec![Rat::zero(); a as usize + 1];
    coeffs[0] = -Rat::one();
    coeffs[a as usize] = Rat::one();
    let mut p = Poly::new(coeffs);
    for d in 1..a {
        if a.is_multiple_of(d) {
            let (quot, rem) = p.divrem(&cyclotomic(d)).expect("nonzero divisor");
            debug_assert!(rem.is_zero());
            p = quot;
        }
    }
    p
}

/// Cyclic convolution in `Q[x]/(x^a - 1)`.
fn cyc_mul(a: usize, lhs: &[Rat], rhs: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a];
    for (i, u) in lhs.iter().enumerate() {
        if u.is_zero() {
            continue;
        }
        for (j, v) in rhs.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            out[(i + j) % a] += u * v;
        }
    }
    out
}

/// `prod_{i=1..a} p(z^i t)` as a polynomial in `T = t^a`.
///
/// The group-algebra computation keeps every coefficient rational; the
/// final reduction checks that each surviving coefficient really is a
/// constant and sits at an exponent divisible by `a`.
pub fn symmetrize_product(p: &Poly, a: u64) -> Result<Poly> {
    if a == 0 {
        return Err(Error::Input("symmetrization order must be positive".into()));
    }
    let a = a as usize;
    if p.is_zero() {
        return Ok(Poly::zero());
    }

    // product over i of sum_j c_j x^{ij} t^j, coefficients in Q[x]/(x^a - 1)
    let mut prod: Vec<Vec<Rat>> = vec![{
        let mut e = vec![Rat::zero(); a];
        e[0] = Rat::one();
        e
    }];
    for i in 1..=a {
        let factor: Vec<Vec<Rat>> = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let mut e = vec![Rat::zero(); a];
                e[(i * j) % a] = c.clone();
                e
            })
            .collect();
        let mut next = vec![vec![Rat::zero(); a]; prod.len() + factor.len() - 1];
        for (s, u) in prod.iter().enumerate() {
            for (t, v) in factor.iter().enumerate() {
                let term = cyc_mul(a, u, v);
                for (slot, val) in next[s + t].iter_mut().zip(term) {
                    *slot += val;
                }
            }
        }
        prod = next;
    }

    let phi = cyclotomic(a as u64);
    let mut out = vec![Rat::zero(); (prod.len() - 1) / a + 1];
    for (j, elem) in prod.iter().enumerate() {
        let (_, rem) = Poly::new(elem.clone()).divrem(&phi)?;
        if rem.is_zero() {
            continue;
        }
        if rem.degree() != Some(0) {
            return Err(Error::Math(format!(
                "symmetrized coefficient of t^{j} is not rational"
            )));
        }
        if j % a != 0 {
            return Err(Error::Math(format!(
                "symmetrized product has a term at t^{j} not divisible by {a}"
            )));
        }
        out[j / a] = rem.coeff(0);
    }
    Ok(Poly::new(out))
}

//! Brute-force point counting over small finite fields.
//!
//! Extensions of a prime field are realized through full addition and
//! multiplication tables built from an irreducible polynomial found by
//! search.  Table fields are capped at 1024 elements so the projective
//! scans stay around a million evaluations.
//!
//! Counting trusts the model: a singular equation is counted as
//! written.  Feeding the counts onward to the numerator reconstruction
//! usually exposes such models through the consistency check there.

use super::prime_of;
use crate::{Error, Result};

/// Largest extension field a counting scan will materialize.
pub const MAX_TABLE_FIELD: u64 = 1024;

fn digits(mut code: u64, p: u64, len: usize) -> Vec<u64> {
    (0..len)
        .map(|_| {
            let d = code % p;
            code /= p;
            d
        })
        .collect()
}

fn encode(ds: &[u64], p: u64) -> usize {
    ds.iter()
        .rev()
        .fold(0usize, |acc, &d| acc * p as usize + d as usize)
}

/// Remainder of `a` by a monic polynomial `b` over `F_p`; coefficients
/// lowest first, result trimmed.
fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    while a.len() > db {
        let lead = *a.last().expect("nonempty in loop");
        if lead != 0 {
            let shift = a.len() - 1 - db;
            for (j, &bj) in b.iter().take(db).enumerate() {
                a[shift + j] = (a[shift + j] + (p - bj) * lead) % p;
            }
        }
        a.pop();
    }
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn is_irreducible(cand: &[u64], p: u64) -> bool {
    let m = cand.len() - 1;
    for d in 1..=m / 2 {
        for code in 0..p.pow(d as u32) {
            let mut b = digits(code, p, d);
            b.push(1);
            if poly_rem(cand.to_vec(), &b, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// A finite field `F_{p^m}` with dense operation tables.  Elements are
/// indices `0..q` encoding coefficient vectors base `p`.
pub(crate) struct Gf {
    q: usize,
    p: u64,
    add: Vec<u16>,
    mul: Vec<u16>,
}

impl Gf {
    pub(crate) fn new(p: u64, m: u32) -> Result<Gf> {
        let q64 = p.checked_pow(m).filter(|&q| q <= MAX_TABLE_FIELD).ok_or_else(|| {
            Error::Input(format!(
                "field of size {p}^{m} exceeds the counting bound {MAX_TABLE_FIELD}"
            ))
        })?;
        let q = q64 as usize;
        let m = m as usize;

        let modpoly = (0..q64)
            .map(|code| {
                let mut c = digits(code, p, m);
                c.push(1);
                c
            })
            .find(|c| is_irreducible(c, p))
            .expect("an irreducible polynomial of every degree exists");

        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q64 {
            let da = digits(a, p, m);
            for b in 0..q64 {
                let db = digits(b, p, m);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * q + b as usize] = encode(&sum, p) as u16;
                let mut conv = vec![0u64; 2 * m - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        conv[i + j] = (conv[i + j] + x * y) % p;
                    }
                }
                let mut rem = poly_rem(conv, &modpoly, p);
                rem.resize(m, 0);
                mul[a as usize * q + b as usize] = encode(&rem, p) as u16;
            }
        }
        Ok(Gf { q, p, add, mul })
    }

    pub(crate) fn size(&self) -> usize {
        self.q
    }

    pub(crate) fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    pub(crate) fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    /// Embed an integer through `Z -> F_p`.
    pub(crate) fn scalar(&self, c: i64) -> u16 {
        let p = self.p as i64;
        (c.rem_euclid(p)) as u16
    }

    pub(crate) fn eval_poly(&self, coeffs: &[u16], x: u16) -> u16 {
        let mut acc = 0u16;
        for &c in coeffs.iter().rev() {
            acc = self.add(self.mul(acc, x), c);
        }
        acc
    }

    pub(crate) fn pow(&self, x: u16, e: u32) -> u16 {
        let mut acc = self.scalar(1);
        for _ in 0..e {
            acc = self.mul(acc, x);
        }
        acc
    }
}

fn require_prime(p: u64) -> Result<()> {
    if prime_of(p)? != p {
        return Err(Error::Input(format!(
            "equation counting needs a prime base field, got {p}"
        )));
    }
    Ok(())
}

/// `y^2 + h(x) y = f(x)` with one point at infinity.
///
/// Coefficients are integers reduced into the base field; lowest degree
/// first.  Requires `deg f` odd and `deg f > 2 deg h` so the projective
/// closure adds exactly one smooth point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticModel {
    h: Vec<i64>,
    f: Vec<i64>,
}

impl HyperellipticModel {
    pub fn new(h: Vec<i64>, f: Vec<i64>) -> Self {
        HyperellipticModel { h, f }
    }

    /// Degrees after reduction mod `p`, validated.
    fn reduced(&self, p: u64) -> Result<(Vec<i64>, Vec<i64>)> {
        let trim = |cs: &[i64]| -> Vec<i64> {
            let mut v: Vec<i64> = cs.iter().map(|c| c.rem_euclid(p as i64)).collect();
            while v.last() == Some(&0) {
                v.pop();
            }
            v
        };
        let h = trim(&self.h);
        let f = trim(&self.f);
        let df = f.len() as i64 - 1;
        let dh = h.len() as i64 - 1;
        if df < 1 || df % 2 == 0 {
            return Err(Error::Input(format!(
                "right-hand side must have odd degree over F_{p}, got degree {df}"
            )));
        }
        if df <= 2 * dh {
            return Err(Error::Input(format!(
                "need deg f > 2 deg h over F_{p}, got {df} <= 2 * {dh}"
            )));
        }
        Ok((h, f))
    }

    /// Genus of the smooth model, `(deg f - 1) / 2`.
    pub fn genus(&self, p: u64) -> Result<usize> {
        require_prime(p)?;
        let (_, f) = self.reduced(p)?;
        Ok((f.len() - 2) / 2)
    }

    /// Point counts over `F_{p^1} ..= F_{p^n}`.
    pub fn counts(&self, p: u64, n: usize) -> Result<Vec<u64>> {
        require_prime(p)?;
        let (h, f) = self.reduced(p)?;
        let mut out = Vec::with_capacity(n);
        for m in 1..=n {
            let gf = Gf::new(p, m as u32)?;
            let hc: Vec<u16> = h.iter().map(|&c| gf.scalar(c)).collect();
            let fc: Vec<u16> = f.iter().map(|&c| gf.scalar(c)).collect();
            let mut count = 1u64; // the point at infinity
            for x in 0..gf.size() as u16 {
                let hx = gf.eval_poly(&hc, x);
                let fx = gf.eval_poly(&fc, x);
                for y in 0..gf.size() as u16 {
                    if gf.add(gf.mul(y, y), gf.mul(hx, y)) == fx {
                        count += 1;
                    }
                }
            }
            out.push(count);
        }
        Ok(out)
    }
}

/// A projective plane curve `sum c X^i Y^j Z^k = 0` with all monomials
/// of one total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    monomials: Vec<(u32, u32, u32, i64)>,
}

impl PlaneCurve {
    pub fn new(monomials: Vec<(u32, u32, u32, i64)>) -> Result<Self> {
        let degree = match monomials.first() {
            Some(&(i, j, k, _)) => i + j + k,
            None => return Err(Error::Input("plane curve needs monomials".into())),
        };
        for &(i, j, k, _) in &monomials {
            if i + j + k != degree {
                return Err(Error::Input(format!(
                    "monomial X^{i} Y^{j} Z^{k} breaks homogeneity of degree {degree}"
                )));
            }
        }
        Ok(PlaneCurve { monomials })
    }

    pub fn degree(&self) -> u32 {
        self.monomials[0].0 + self.monomials[0].1 + self.monomials[0].2
    }

    /// Genus of a smooth plane curve of this degree.
    pub fn smooth_genus(&self) -> usize {
        let d = self.degree() as usize;
        if d < 3 {
            0
        } else {
            (d - 1) * (d - 2) / 2
        }
    }

    fn vanishes(&self, gf: &Gf, x: u16, y: u16, z: u16) -> bool {
        let mut acc = 0u16;
        for &(i, j, k, c) in &self.monomials {
            let term = gf.mul(
                gf.mul(gf.scalar(c), gf.pow(x, i)),
                gf.mul(gf.pow(y, j), gf.pow(z, k)),
            );
            acc = gf.add(acc, term);
        }
        acc == 0
    }

    /// Projective point counts over `F_{p^1} ..= F_{p^n}`, scanning the
    /// charts `[x : y : 1]`, `[x : 1 : 0]`, `[1 : 0 : 0]`.
    pub fn counts(&self, p: u64, n: usize) -> Result<Vec<u64>> {
        require_prime(p)?;
        let mut out = Vec::with_capacity(n);
        for m in 1..=n {
            let gf = Gf::new(p, m as u32)?;
            let one = gf.scalar(1);
            let zero = gf.scalar(0);
            let mut count = 0u64;
            for x in 0..gf.size() as u16 {
                for y in 0..gf.size() as u16 {
                    if self.vanishes(&gf, x, y, one) {
                        count += 1;
                    }
                }
            }
            for x in 0..gf.size() as u16 {
                if self.vanishes(&gf, x, one, zero) {
                    count += 1;
                }
            }
            if self.vanishes(&gf, one, zero, zero) {
                count += 1;
            }
            out.push(count);
        }
        Ok(out)
    }
}

//! Rank-2 zeta function of non-stable bundles.
//!
//! Every non-stable rank-2 bundle of degree `m >= 0` carries a line
//! subbundle of degree `d_+ > m/2` with quotient of degree `d_- = m - d_+`,
//! and grouping the split bundle with all non-split extension classes of
//! one line-bundle pair collapses the automorphism bookkeeping to the
//! degree-only weight [`extension_block`].  Summing `q^{h0(V)} - 1`
//! against these weights, degree pair by degree pair, gives the zeta
//! function in exact geometric closed form.  Section counts are pinned by
//! degrees everywhere except on the finite window of pairs with
//! `d_+ <= 2g - 2` and `d_- >= 0`, where the connecting map of the
//! extension genuinely matters; those cells enter through a user-supplied
//! table ([`SectionTable`]) or are skipped under an explicit partial flag.
//!
//! An independent truncated counting oracle re-sums the defining series
//! per degree with exact geometric tails; on the projective line the
//! oracle is exact coefficient by coefficient, since every bundle splits.

use std::collections::BTreeMap;

use crate::curve::{AbelianZeta, CurveData};
use crate::exact::{
    geometric_q_sum, geometric_tail, is_int, q_pow, rat, rat_f64, Poly, Rat, RatFun,
};
use crate::{Error, Result};

use num::{One, ToPrimitive, Zero};

/// How many Jacobian factors weight each line-bundle degree pair.
///
/// `Squared` draws the subbundle and the quotient independently from
/// their Picard sets (a factor `h^2`); `Single` keeps one factor of `h`.
/// The truncated counting oracle confirms `Squared`, which is the
/// default.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum JacobianMode {
    Single,
    #[default]
    Squared,
}

impl JacobianMode {
    pub fn as_str(self) -> &'static str {
        match self {
            JacobianMode::Single => "single",
            JacobianMode::Squared => "squared",
        }
    }
}

/// One degree cell of the section table: weighted section counts for
/// extensions of a degree-`d_minus` quotient by a degree-`d_plus`
/// subbundle, as pairs `(h0, count)`.  The cell contributes
/// `sum count * q^{h0} / (q-1)^2` to the coefficient of `t^{d_plus+d_minus}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionCell {
    pub d_plus: i64,
    pub d_minus: i64,
    pub h0_values: Vec<(u32, u64)>,
}

/// Complete section table for the low window `1 <= d_+ <= 2g-2`,
/// `0 <= d_- < d_+`.  Cells with negative quotient degree are rejected:
/// there the quotient has no sections, so the data is already pinned by
/// Picard sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionTable {
    genus: usize,
    cells: BTreeMap<(i64, i64), Vec<(u32, u64)>>,
}

impl SectionTable {
    pub fn new(genus: usize, rows: Vec<SectionCell>) -> Result<Self> {
        if genus < 2 {
            return Err(Error::Input(
                "section table has no cells below genus 2".into(),
            ));
        }
        let top = 2 * genus as i64 - 2;
        let mut cells = BTreeMap::new();
        for row in rows {
            if row.d_plus < 1 || row.d_plus > top {
                return Err(Error::Input(format!(
                    "subbundle degree {} outside 1..={top}",
                    row.d_plus
                )));
            }
            if row.d_minus < 0 {
                return Err(Error::Input(format!(
                    "cell ({}, {}) is pinned by Picard sums, not table data",
                    row.d_plus, row.d_minus
                )));
            }
            if row.d_minus >= row.d_plus {
                return Err(Error::Input(format!(
                    "cell ({}, {}) is not destabilizing",
                    row.d_plus, row.d_minus
                )));
            }
            if cells
                .insert((row.d_plus, row.d_minus), row.h0_values)
                .is_some()
            {
                return Err(Error::Input(format!(
                    "duplicate cell ({}, {})",
                    row.d_plus, row.d_minus
                )));
            }
        }
        for d_plus in 1..=top {
            for d_minus in 0..d_plus {
                if !cells.contains_key(&(d_plus, d_minus)) {
                    return Err(Error::Input(format!(
                        "section table is missing cell ({d_plus}, {d_minus})"
                    )));
                }
            }
        }
        Ok(SectionTable { genus, cells })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rows(&self) -> Vec<SectionCell> {
        self.cells
            .iter()
            .map(|(&(d_plus, d_minus), h0_values)| SectionCell {
                d_plus,
                d_minus,
                h0_values: h0_values.clone(),
            })
            .collect()
    }

    fn value(&self, q: u64, d_plus: i64, d_minus: i64) -> Rat {
        let aut2 = (q_pow(q, 1) - rat(1)) * (q_pow(q, 1) - rat(1));
        let cell = &self.cells[&(d_plus, d_minus)];
        cell.iter()
            .map(|&(h0, count)| q_pow(q, h0 as i64) * Rat::from_integer(count.into()))
            .sum::<Rat>()
            / aut2
    }
}

/// Curve data plus the assembly options.
#[derive(Clone, Debug)]
pub struct NonstableInput {
    abelian: AbelianZeta,
    table: Option<SectionTable>,
    mode: JacobianMode,
    allow_partial: bool,
}

impl NonstableInput {
    pub fn new(
        abelian: AbelianZeta,
        table: Option<SectionTable>,
        mode: JacobianMode,
        allow_partial: bool,
    ) -> Result<Self> {
        if let Some(table) = &table {
            if table.genus() != abelian.genus() {
                return Err(Error::Input(format!(
                    "section table is for genus {}, curve has genus {}",
                    table.genus(),
                    abelian.genus()
                )));
            }
        }
        Ok(NonstableInput {
            abelian,
            table,
            mode,
            allow_partial,
        })
    }

    pub fn from_curve(curve: &CurveData, mode: JacobianMode) -> Result<Self> {
        NonstableInput::new(AbelianZeta::new(curve)?, None, mode, false)
    }

    pub fn abelian(&self) -> &AbelianZeta {
        &self.abelian
    }

    pub fn mode(&self) -> JacobianMode {
        self.mode
    }
}

/// The seven summands, each an exact rational function of `t`.
#[derive(Clone, Debug)]
pub struct NonstableParts {
    /// Plain `1/#Aut` mass over every destabilizing pair; subtracted.
    pub mass: RatFun,
    /// Deep window, quotient degree above `2g-2`.
    pub deep_quot_big: RatFun,
    /// Deep window, negative quotient degree.
    pub deep_quot_neg: RatFun,
    /// Deep window, quotient degree in `0..=2g-2`; closes via the
    /// Picard-sum invariant [`a_invariant`].
    pub deep_quot_mid: RatFun,
    /// Low window, subbundle degree at most `2g-2`: exact Picard sums
    /// for negative quotient degrees plus the table cells.
    pub low_sub_special: RatFun,
    /// Low window, subbundle above `2g-2`, quotient degree nonnegative.
    pub low_quot_nonneg: RatFun,
    /// Low window, subbundle above `2g-2`, quotient degree negative.
    pub low_quot_neg: RatFun,
}

/// Assembled non-stable zeta function with its parts and verdicts.
#[derive(Clone, Debug)]
pub struct NonstableZeta {
    pub q: u64,
    pub g: usize,
    pub mode: JacobianMode,
    /// True when the table cells were skipped under the partial flag.
    pub partial: bool,
    pub parts: NonstableParts,
    pub zeta_ns: RatFun,
    /// Denominator divides a product of `1 - t`, `1 - t^2`, `1 - q^2 t^2`.
    pub denominator_conforms: bool,
}

/// `#Aut(L_+ + L_-) = (q-1)^2 q^{hom_dim}` for a split bundle whose
/// summands are joined by an `hom_dim`-dimensional Hom space.
pub fn aut_split(q: u64, hom_dim: u32) -> Rat {
    let unit = q_pow(q, 1) - rat(1);
    &unit * &unit * q_pow(q, hom_dim as i64)
}

/// Total groupoid mass of one line-bundle degree pair: the split bundle
/// plus all non-split extension classes weigh `q^{h1 - h0}` of the Hom
/// bundle over `(q-1)^2`, which is `q^{d_minus - d_plus + g - 1}/(q-1)^2`
/// by Riemann-Roch, independent of the chosen line bundles.
pub fn extension_block(q: u64, d_plus: i64, d_minus: i64, g: usize) -> Rat {
    let unit = q_pow(q, 1) - rat(1);
    q_pow(q, d_minus - d_plus + g as i64 - 1) / (&unit * &unit)
}

/// `sum_{d=0}^{2g-2} sigma_d q^d / (q-1)^2`, the constant that closes
/// the middle-quotient sums; zero at genus zero.
pub fn a_invariant(abelian: &AbelianZeta) -> Rat {
    let g = abelian.genus();
    if g == 0 {
        return Rat::zero();
    }
    let unit = q_pow(abelian.q(), 1) - rat(1);
    (0..=2 * g as i64 - 2)
        .map(|d| abelian.sigma(d) * q_pow(abelian.q(), d))
        .sum::<Rat>()
        / (&unit * &unit)
}

/// Jacobian weights for the chosen mode: `(pairs, single)` multiply
/// sums with both line bundles free and sums with one Picard factor
/// already folded into a sigma value; `cell` rescales table cells.
fn mode_weights(abelian: &AbelianZeta, mode: JacobianMode) -> (Rat, Rat, Rat) {
    let h = abelian.class_number().clone();
    let factor = match mode {
        JacobianMode::Squared => Rat::one(),
        JacobianMode::Single => rat(1) / &h,
    };
    (&h * &h * &factor, &h * &factor, factor)
}

/// Mass of all destabilizing pairs, `sum 1/#Aut(E) t^{deg E}`, in closed
/// form: the inner sum over the pair offset contracts in `q^{-2}`, the
/// outer sums are one tail per degree parity.
pub fn mass_part(inp: &NonstableInput) -> Result<RatFun> {
    let abelian = inp.abelian();
    let q = abelian.q();
    let g = abelian.genus() as i64;
    let (pairs, _, _) = mode_weights(abelian, inp.mode());
    let unit = q_pow(q, 1) - rat(1);
    let inner = geometric_q_sum(g - 3, 2, q)?;
    let k = pairs * inner / (&unit * &unit);
    let even = geometric_tail(&k, 0, 0, 0, 2, q)?;
    let odd = geometric_tail(&k, 1, 1, 0, 2, q)?;
    Ok(&even + &odd)
}

/// Whether the denominator divides a product of the geometric factors
/// `1 - t`, `1 - t^2`, `1 - q^2 t^2` the assembly can produce.
pub fn denominator_conforms(z: &RatFun, q: u64) -> bool {
    let factors = [
        Poly::from_ints(&[1, -1]),
        Poly::from_ints(&[1, 0, -1]),
        Poly::new(vec![rat(1), rat(0), -q_pow(q, 2)]),
    ];
    let mut product = Poly::one();
    for f in &factors {
        product = &(&product * f) * f;
    }
    match product.divrem(z.den()) {
        Ok((_, rem)) => rem.is_zero(),
        Err(_) => false,
    }
}

/// Assembles the zeta function of non-stable rank-2 bundles.
///
/// Each part is an exact geometric resummation over its degree window;
/// the window boundaries follow the destabilizing condition `d_+ > d_-`
/// and the split at twist `2g` between the deep range (all section
/// counts degree-pinned) and the low range.  A wrong exponent sign
/// surfaces as a refused non-contracting series, never a wrong value.
pub fn assemble_ns(inp: &NonstableInput) -> Result<NonstableZeta> {
    let abelian = inp.abelian();
    let q = abelian.q();
    let g = abelian.genus();
    let gi = g as i64;
    let unit = q_pow(q, 1) - rat(1);
    let aut2 = &unit * &unit;
    let (pairs, single, cell_factor) = mode_weights(abelian, inp.mode());

    // deep window, quotient degree above 2g-2: one row per quotient
    // degree, the first row starts late enough to exclude the low range
    let c = (2 * gi - 1).max(0);
    let k1 = &pairs * q_pow(q, 1 - gi) / &aut2;
    let first_sub = (c + 1).max(4 * gi - c);
    let row_first = geometric_tail(&k1, 2 * c, c + first_sub, 0, 1, q)?;
    let rows_rest = &geometric_tail(&k1, 2 * (c + 1), 2 * (c + 1) + 1, 2, 2, q)?
        * &geometric_tail(&Rat::one(), 0, 0, 0, 1, q)?;
    let deep_quot_big = &row_first + &rows_rest;

    // deep window, negative quotient degree: the quotient sum is the
    // scalar tail 1/(q-1) at every degree
    let neg_inner = geometric_q_sum(-1, 1, q)?;
    let deep_quot_neg = geometric_tail(&(&pairs * &neg_inner / &aut2), 0, 4 * gi, 0, 1, q)?;

    // deep window, middle quotient degree
    let deep_quot_mid = geometric_tail(&(&single * a_invariant(abelian)), 0, 4 * gi, 0, 1, q)?;

    let low_len = if g == 0 { 1 } else { 4 * g };
    let mut special = vec![Rat::zero(); low_len];
    let mut nonneg = vec![Rat::zero(); low_len];
    let mut negquot = vec![Rat::zero(); low_len];

    // low window, small subbundle: negative quotient degrees are exact
    // (the quotient has no sections), the rest comes from the table
    for d_plus in 1..=2 * gi - 2 {
        for d_minus in -d_plus..=-1 {
            let m = (d_plus + d_minus) as usize;
            special[m] += &single * abelian.sigma(d_plus) * extension_block(q, d_plus, d_minus, g);
        }
    }
    let mut partial = false;
    match &inp.table {
        Some(table) => {
            for row in table.rows() {
                let m = (row.d_plus + row.d_minus) as usize;
                special[m] += &cell_factor * table.value(q, row.d_plus, row.d_minus);
            }
        }
        None if g >= 2 => {
            if !inp.allow_partial {
                return Err(Error::Input(
                    "section table for the low window is missing; \
                     allow a partial assembly or supply the table"
                        .into(),
                ));
            }
            partial = true;
        }
        None => {}
    }

    // low window, subbundle above 2g-2
    for m in 0..=4 * gi - 1 {
        for d_minus in 0..=2 * gi - 1 {
            let d_plus = m - d_minus;
            if d_plus >= 2 * gi - 1 && d_plus > d_minus {
                nonneg[m as usize] += &single * abelian.sigma(d_minus) * q_pow(q, d_minus) / &aut2;
            }
        }
        let cap = (-1).min(m - 2 * gi + 1);
        negquot[m as usize] = &pairs * geometric_q_sum(cap, 1, q)? / &aut2;
    }

    let low_sub_special = RatFun::from_poly(Poly::new(special));
    let low_quot_nonneg = RatFun::from_poly(Poly::new(nonneg));
    let low_quot_neg = RatFun::from_poly(Poly::new(negquot));

    let mass = mass_part(inp)?;
    let weighted = &(&(&(&(&deep_quot_big + &deep_quot_neg) + &deep_quot_mid)
        + &low_sub_special)
        + &low_quot_nonneg)
        + &low_quot_neg;
    let zeta_ns = &weighted - &mass;
    let conforms = denominator_conforms(&zeta_ns, q);

    Ok(NonstableZeta {
        q,
        g,
        mode: inp.mode(),
        partial,
        parts: NonstableParts {
            mass,
            deep_quot_big,
            deep_quot_neg,
            deep_quot_mid,
            low_sub_special,
            low_quot_nonneg,
            low_quot_neg,
        },
        zeta_ns,
        denominator_conforms: conforms,
    })
}

/// Exact coefficients of the non-stable zeta function on the projective
/// line, from first principles: every rank-2 bundle splits, so the
/// coefficient of `t^m` is a sum over split types `O(a) + O(m-a)` with
/// `a > m/2`, finitely many terms with sections plus two exact
/// geometric tails.
pub fn p1_split_coeffs(q: u64, m_max: usize) -> Result<Vec<Rat>> {
    crate::curve::prime_of(q)?;
    let unit = q_pow(q, 1) - rat(1);
    let aut2 = &unit * &unit;
    let mut out = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max as i64 {
        let mut acc = Rat::zero();
        for a in m / 2 + 1..=m {
            let h0 = (a + 1) + (m - a + 1).max(0);
            acc += (q_pow(q, h0) - rat(1)) * q_pow(q, m - 2 * a - 1);
        }
        // a > m: the quotient degree is negative, h0 = a + 1 exactly
        acc += geometric_q_sum(-1, 1, q)?;
        acc -= geometric_q_sum(-m - 3, 2, q)?;
        out.push(acc / &aut2);
    }
    Ok(out)
}

/// Truncated counting oracle: re-sums the defining series per degree
/// with exact geometric tails in the subbundle degree, evaluates the
/// partial sum at `t = q^{-s}`, and reports the absolute gap to the
/// closed form.  Without a section table at genus >= 2 the comparison
/// skips the table cells on both sides.  Refuses when the remaining
/// tail estimate exceeds 1e-6; deepen the truncation instead of reading
/// noise.
pub fn oracle_truncated(inp: &NonstableInput, s: &Rat, depth: usize) -> Result<f64> {
    if *s <= rat(1) {
        return Err(Error::Input(
            "sample exponent must exceed 1 for the series to converge".into(),
        ));
    }
    let abelian = inp.abelian();
    let q = abelian.q();
    let g = abelian.genus();
    let gi = g as i64;
    let h = abelian.class_number().clone();
    let unit = q_pow(q, 1) - rat(1);
    let aut2 = &unit * &unit;

    let mut coeffs = Vec::with_capacity(depth + 1);
    for m in 0..=depth as i64 {
        let mut acc = Rat::zero();
        let d_start = m.div_euclid(2) + 1;
        let cap = m.max(2 * gi - 2).max(d_start - 1);
        for d_plus in d_start..=cap {
            let d_minus = m - d_plus;
            debug_assert!(d_plus > d_minus);
            let blk = extension_block(q, d_plus, d_minus, g);
            let mass_w = &h * &h * &blk;
            if d_minus < 0 {
                acc += &h * abelian.sigma(d_plus) * &blk - mass_w;
            } else if d_plus > 2 * gi - 2 {
                acc += &h * abelian.sigma(d_minus) * q_pow(q, d_minus) / &aut2 - mass_w;
            } else if let Some(table) = &inp.table {
                acc += table.value(q, d_plus, d_minus) - mass_w;
            } else {
                // restricted comparison: the cell's section sum is
                // unknown, but its mass still weighs the closed form
                acc -= mass_w;
            }
        }
        // d_plus > cap: sections give h^2 q^{m-d_+}, mass gives
        // h^2 q^{m-2d_+ +g-1}, both exact geometric tails
        let tail_sections = geometric_q_sum(m - cap - 1, 1, q)?;
        let tail_mass = geometric_q_sum(m - 2 * (cap + 1) + gi - 1, 2, q)?;
        acc += &h * &h * (tail_sections - tail_mass) / &aut2;
        coeffs.push(acc);
    }

    let assembled = assemble_ns(inp)?;
    let gap = if is_int(s) {
        let e = s
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::Input("sample exponent out of range".into()))?;
        let t = q_pow(q, -e);
        let closed = assembled.zeta_ns.eval(&t)?;
        let mut partial_sum = Rat::zero();
        for cm in coeffs.iter().rev() {
            partial_sum = partial_sum * &t + cm;
        }
        rat_f64(&(closed - partial_sum)).abs()
    } else {
        let t = (q as f64).powf(-rat_f64(s));
        let horner = |p: &Poly| {
            p.to_f64_coeffs()
                .iter()
                .rev()
                .fold(0.0, |acc, ck| acc * t + ck)
        };
        let closed = horner(assembled.zeta_ns.num()) / horner(assembled.zeta_ns.den());
        let partial_sum = coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, cm| acc * t + rat_f64(cm));
        (closed - partial_sum).abs()
    };

    // coefficients grow like q^m, so the omitted terms are bounded by a
    // geometric series in qt < 1 off the last computed term
    let t_abs = (q as f64).powf(-rat_f64(s));
    let qt = q as f64 * t_abs;
    let last = rat_f64(&coeffs[depth]).abs() * t_abs.powi(depth as i32);
    let tail_estimate = last * qt / (1.0 - qt);
    if !tail_estimate.is_finite() || tail_estimate > 1e-6 {
        return Err(Error::Input(format!(
            "truncation depth {depth} leaves an estimated tail of {tail_estimate:.3e}"
        )));
    }
    Ok(gap)
}

/// Numeric probe of a functional equation candidate: largest gap
/// between `zeta_ns(t)` and `zeta_ns(1/(qt))` over the sample points.
/// A report, never an assertion.
pub fn fe_probe(assembled: &NonstableZeta, samples: &[Rat]) -> Result<f64> {
    let flipped = assembled.zeta_ns.substitute_recip(assembled.q);
    let mut worst = 0.0f64;
    for t0 in samples {
        let direct = assembled.zeta_ns.eval(t0)?;
        let mirrored = flipped.eval(t0)?;
        worst = worst.max(rat_f64(&(direct - mirrored)).abs());
    }
    Ok(worst)
}

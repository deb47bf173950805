//! Fixed-determinant-family zeta functions: a finite degree window plus a
//! two-sided geometric tail weighted by one Harder-Narasimhan mass.
//!
//! The variable is t = q^{-s}; Euler characteristics enter as signed powers
//! t^{d - r(g-1)}, so assembly runs through Laurent polynomials and lands in
//! canonical rational functions. The tail term is kept verbatim as the
//! four-term bracket, which is symmetric under t -> 1/(qt) by construction;
//! the window data must carry the matching duality for the finite part.

use std::collections::BTreeMap;

use crate::exact::{q_pow, rat, ratio, LaurentPoly, Rat, RatFun};
use crate::{Error, Result};

use num::{One, Signed, Zero};

/// Whether colliding degree progressions are counted twice (as two separate
/// progressions) or once (as their set union).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindowSemantics {
    /// Both progressions contribute even where they coincide. The tail
    /// residue then recovers the full mass M.
    Multiset,
    /// Coinciding progressions are counted once: the tail is halved when
    /// 2 dL = 0 (mod r(2g-2)), and the residue recovers M/2 there.
    Set,
}

impl WindowSemantics {
    pub fn as_str(self) -> &'static str {
        match self {
            WindowSemantics::Multiset => "multiset",
            WindowSemantics::Set => "set",
        }
    }
}

/// Input data for one restricted zeta function: base field size q, genus g,
/// weight r, level degree dL, finite window values u_d, and the mass M.
#[derive(Clone, Debug)]
pub struct RestrictedWindow {
    q: u64,
    g: usize,
    r: u32,
    d_l: i64,
    u: BTreeMap<i64, Rat>,
    m: Rat,
    semantics: WindowSemantics,
    duality_checked: bool,
}

impl RestrictedWindow {
    pub fn new(
        q: u64,
        g: usize,
        r: u32,
        d_l: i64,
        u: Vec<(i64, Rat)>,
        m: Rat,
        semantics: WindowSemantics,
    ) -> Result<Self> {
        let w = Self::build(q, g, r, d_l, u, m, semantics)?;
        w.check_duality()?;
        Ok(w)
    }

    /// Testing hook: same validation except the duality relation on u, so
    /// that downstream verdicts can be exercised on broken data.
    pub fn new_skip_duality(
        q: u64,
        g: usize,
        r: u32,
        d_l: i64,
        u: Vec<(i64, Rat)>,
        m: Rat,
        semantics: WindowSemantics,
    ) -> Result<Self> {
        let mut w = Self::build(q, g, r, d_l, u, m, semantics)?;
        w.duality_checked = false;
        Ok(w)
    }

    fn build(
        q: u64,
        g: usize,
        r: u32,
        d_l: i64,
        u: Vec<(i64, Rat)>,
        m: Rat,
        semantics: WindowSemantics,
    ) -> Result<Self> {
        crate::curve::prime_of(q)?;
        if g < 2 {
            return Err(Error::Input(format!(
                "window requires genus >= 2 (the tail denominators vanish identically \
                 at genus {g})"
            )));
        }
        if r == 0 {
            return Err(Error::Input("weight must be positive".into()));
        }
        let half = r as i64 * (g as i64 - 1);
        if d_l < 0 || d_l > half {
            return Err(Error::Input(format!(
                "level degree {d_l} outside the normalized range [0, {half}]"
            )));
        }
        if !m.is_positive() {
            return Err(Error::Input("mass M must be positive".into()));
        }
        let n = 2 * half;
        let mut map = BTreeMap::new();
        for (d, value) in u {
            if d < 0 || d > n {
                return Err(Error::Input(format!(
                    "window degree {d} outside [0, {n}]"
                )));
            }
            if map.insert(d, value).is_some() {
                return Err(Error::Input(format!("duplicate window degree {d}")));
            }
        }
        for d in [d_l, n - d_l] {
            if !map.contains_key(&d) {
                return Err(Error::Input(format!(
                    "window must populate the progression degree {d}"
                )));
            }
        }
        Ok(RestrictedWindow {
            q,
            g,
            r,
            d_l,
            u: map,
            m,
            semantics,
            duality_checked: true,
        })
    }

    fn check_duality(&self) -> Result<()> {
        let n = self.window_span();
        let half = n / 2;
        for (&d, value) in &self.u {
            let dual = n - d;
            let expected = q_pow(self.q, half - d) * value;
            match self.u.get(&dual) {
                Some(v) if *v == expected => {}
                Some(v) => {
                    return Err(Error::Input(format!(
                        "duality violated: u_{dual} = {v}, expected q^{} * u_{d} = {expected}",
                        half - d
                    )))
                }
                None => {
                    return Err(Error::Input(format!(
                        "degree {d} populated without its dual {dual}"
                    )))
                }
            }
        }
        Ok(())
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn weight(&self) -> u32 {
        self.r
    }

    pub fn level_degree(&self) -> i64 {
        self.d_l
    }

    /// r(2g-2), the period of both degree progressions.
    pub fn window_span(&self) -> i64 {
        2 * self.r as i64 * (self.g as i64 - 1)
    }

    pub fn mass(&self) -> &Rat {
        &self.m
    }

    pub fn semantics(&self) -> WindowSemantics {
        self.semantics
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.u.iter().map(|(&d, v)| (d, v))
    }
}

/// Assembled restricted zeta function and its verification data.
#[derive(Clone, Debug)]
pub struct RestrictedZeta {
    pub xi: RatFun,
    /// Finite window sum, as defined (plain powers of t).
    pub s_part: RatFun,
    /// Mass tail term.
    pub t_part: RatFun,
    /// The plain window sum agrees with its explicitly symmetrized form
    /// (always true when the duality relation holds).
    pub s_forms_agree: bool,
    /// Tail was halved because the two progressions coincide (set semantics).
    pub tail_halved: bool,
    pub fe_verdict: bool,
    pub residue_t1: Rat,
    pub residue_t_qinv: Rat,
    /// Unit-tail residues used for normalization.
    pub nu_t1: Rat,
    pub nu_t_qinv: Rat,
    /// Mass recovered from the residue at t = 1/q (and at t = 1; both must
    /// agree).
    pub hn_normalized: Rat,
    pub hn_from_t1: Rat,
}

/// `c * (qt)^e` as a rational function.
fn qt_mono(q: u64, e: i64) -> RatFun {
    LaurentPoly::monomial(q_pow(q, e), e).into_ratfun()
}

/// `t^e` as a rational function.
fn t_mono(e: i64) -> RatFun {
    LaurentPoly::monomial(Rat::one(), e).into_ratfun()
}

/// The unit tail bracket:
/// [(qt)^{chi} + (qt)^{-chi}] / ((qt)^{-N} - 1) + [t^{-chi} + t^{chi}] / (t^N - 1).
/// Symmetric under t -> 1/(qt), which swaps the two summands.
fn tail_bracket(q: u64, n: i64, chi_l: i64) -> Result<RatFun> {
    let one = RatFun::one();
    let qt_num = &qt_mono(q, chi_l) + &qt_mono(q, -chi_l);
    let qt_den = &qt_mono(q, -n) - &one;
    let t_num = &t_mono(-chi_l) + &t_mono(chi_l);
    let t_den = &t_mono(n) - &one;
    Ok(&qt_num.checked_div(&qt_den)? + &t_num.checked_div(&t_den)?)
}

/// Residues of the assembled function at t = 1 and t = 1/q together with the
/// mass normalized out of the tail: (res_t1, res_t_qinv, hn_normalized).
/// Errors if either pole fails to be simple.
pub fn residues_xi(xi: &RatFun, q: u64, r: u32, g: usize) -> Result<(Rat, Rat, Rat)> {
    let one = rat(1);
    let qinv = q_pow(q, -1);
    for (point, name) in [(&one, "t = 1"), (&qinv, "t = 1/q")] {
        if xi.pole_order_at(point) > 1 {
            return Err(Error::Math(format!("higher-order pole at {name}")));
        }
    }
    let res_t1 = xi.residue_at(&one)?;
    let res_t_qinv = xi.residue_at(&qinv)?;
    let n = 2 * r as i64 * (g as i64 - 1);
    if n <= 0 {
        return Err(Error::Input("residue normalization needs genus >= 2".into()));
    }
    let nu = tail_bracket(q, n, 0)?.residue_at(&qinv)?;
    if nu.is_zero() {
        return Err(Error::Math("degenerate tail normalization".into()));
    }
    Ok((res_t1, res_t_qinv.clone(), res_t_qinv / nu))
}

/// Exact functional-equation verdict: xi(t) = xi(1/(qt)).
pub fn check_fe_xi(z: &RestrictedZeta, q: u64) -> bool {
    z.xi.substitute_recip(q) == z.xi
}

pub fn assemble_xi(w: &RestrictedWindow) -> Result<RestrictedZeta> {
    let q = w.q();
    let n = w.window_span();
    let half = n / 2;

    // finite part: u_d t^{d - r(g-1)}, plus the symmetrized reading
    // (1/2) u_d [t^{chi_d} + (qt)^{-chi_d}] which must agree under duality
    let mut plain = LaurentPoly::zero();
    let mut symmetrized = LaurentPoly::zero();
    let half_rat = ratio(1, 2);
    for (d, value) in w.entries() {
        let chi = d - half;
        plain = plain.add(&LaurentPoly::monomial(value.clone(), chi));
        symmetrized = symmetrized.add(&LaurentPoly::monomial(value * &half_rat, chi));
        symmetrized = symmetrized.add(&LaurentPoly::monomial(
            value * &half_rat * q_pow(q, -chi),
            -chi,
        ));
    }
    let s_part = plain.into_ratfun();
    let s_forms_agree = s_part == symmetrized.into_ratfun();

    let chi_l = w.level_degree() - half;
    let bracket = tail_bracket(q, n, chi_l)?;
    let tail_halved = w.semantics() == WindowSemantics::Set && (2 * w.level_degree()) % n == 0;
    let mut t_part = bracket.scale(w.mass());
    if tail_halved {
        t_part = t_part.scale(&half_rat);
    }

    let xi = &s_part + &t_part;
    let fe_verdict = xi.substitute_recip(q) == xi;

    let (residue_t1, residue_t_qinv, hn_normalized) =
        residues_xi(&xi, q, w.weight(), w.genus())?;
    let unit = tail_bracket(q, n, chi_l)?;
    let nu_t1 = unit.residue_at(&rat(1))?;
    let nu_t_qinv = unit.residue_at(&q_pow(q, -1))?;
    if nu_t1.is_zero() || nu_t_qinv.is_zero() {
        return Err(Error::Math("tail bracket lost its simple poles".into()));
    }
    let hn_from_t1 = &residue_t1 / &nu_t1;

    Ok(RestrictedZeta {
        xi,
        s_part,
        t_part,
        s_forms_agree,
        tail_halved,
        fe_verdict,
        residue_t1,
        residue_t_qinv,
        nu_t1,
        nu_t_qinv,
        hn_normalized,
        hn_from_t1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ratio, Poly};

    /// Weight-1 window on a genus-2 curve, level of degree 1: the single
    /// populated degree is self-dual with u_1 = 2q/(q-1), M = 1/(q-1).
    fn unit_window(q: u64) -> RestrictedWindow {
        let qm1 = rat(q as i64) - Rat::one();
        RestrictedWindow::new(
            q,
            2,
            1,
            1,
            vec![(1, rat(2 * q as i64) / &qm1)],
            Rat::one() / &qm1,
            WindowSemantics::Multiset,
        )
        .unwrap()
    }

    #[test]
    fn unit_example_closes() {
        for q in [2u64, 3, 5] {
            let w = unit_window(q);
            let z = assemble_xi(&w).unwrap();
            assert!(z.fe_verdict);
            assert!(check_fe_xi(&z, q));
            assert!(z.s_forms_agree);
            assert!(!z.tail_halved);
            assert_eq!(z.hn_normalized, *w.mass());
            assert_eq!(z.hn_from_t1, *w.mass());
            // N = 2: unit residues are 2/N = 1 and -2/(Nq) = -1/q
            assert_eq!(z.nu_t1, rat(1));
            assert_eq!(z.nu_t_qinv, -q_pow(q, -1));
            assert_eq!(z.residue_t1, *w.mass());
            // s <-> 1-s symmetry ties the two residues together
            assert_eq!(z.residue_t1, -rat(q as i64) * &z.residue_t_qinv);
        }
    }

    #[test]
    fn window_validation() {
        let mk = |u: Vec<(i64, Rat)>| {
            RestrictedWindow::new(2, 2, 2, 0, u, rat(1), WindowSemantics::Multiset)
        };
        // r=2, g=2: span 4, so degrees 0 and 4 are forced, with u_4 = q^2 u_0
        assert!(mk(vec![(0, rat(1)), (4, rat(4))]).is_ok());
        assert!(mk(vec![(0, rat(1)), (4, rat(3))]).is_err());
        assert!(mk(vec![(0, rat(1))]).is_err());
        assert!(mk(vec![(0, rat(1)), (4, rat(4)), (3, rat(2))]).is_err());
        assert!(mk(vec![(0, rat(1)), (4, rat(4)), (5, rat(2))]).is_err());
        assert!(mk(vec![(0, rat(1)), (0, rat(1)), (4, rat(4))]).is_err());
        // self-dual middle degree passes with any value
        assert!(mk(vec![(0, rat(1)), (4, rat(4)), (2, rat(7))]).is_ok());
        assert!(RestrictedWindow::new(
            2, 1, 1, 0, vec![(0, rat(1))], rat(1), WindowSemantics::Multiset
        )
        .is_err());
        assert!(RestrictedWindow::new(
            2, 2, 1, 2, vec![(1, rat(1))], rat(1), WindowSemantics::Multiset
        )
        .is_err());
        assert!(RestrictedWindow::new(
            2, 2, 1, 1, vec![(1, rat(4))], rat(0), WindowSemantics::Multiset
        )
        .is_err());
        assert!(RestrictedWindow::new(
            6, 2, 1, 1, vec![(1, rat(4))], rat(1), WindowSemantics::Multiset
        )
        .is_err());
    }

    #[test]
    fn synthetic_family_satisfies_fe() {
        // q=3, r=2, g=2: span 4; degrees {0,4} forced with u_4 = q^2 u_0,
        // middle degree 2 self-dual and free
        let q = 3u64;
        for (c, v, m) in [
            (rat(1), rat(0), rat(1)),
            (ratio(2, 3), rat(-5), ratio(7, 2)),
            (rat(0), rat(11), ratio(1, 6)),
        ] {
            let u = vec![
                (0i64, c.clone()),
                (4, q_pow(q, 2) * &c),
                (2, v.clone()),
            ];
            let w =
                RestrictedWindow::new(q, 2, 2, 0, u, m.clone(), WindowSemantics::Multiset)
                    .unwrap();
            let z = assemble_xi(&w).unwrap();
            assert!(z.fe_verdict, "c={c} v={v} m={m}");
            assert!(z.s_forms_agree);
            assert_eq!(z.hn_normalized, m);
            assert_eq!(z.hn_from_t1, m);
        }
    }

    #[test]
    fn forced_duality_violation_fails_fe() {
        let u = vec![(0i64, rat(1)), (4, rat(3)), (2, rat(7))];
        let w = RestrictedWindow::new_skip_duality(
            2, 2, 2, 0, u, rat(1), WindowSemantics::Multiset,
        )
        .unwrap();
        let z = assemble_xi(&w).unwrap();
        assert!(!z.fe_verdict);
        assert!(!z.s_forms_agree);
        // the tail alone is still symmetric
        assert_eq!(z.t_part.substitute_recip(2), z.t_part);
    }

    #[test]
    fn set_semantics_halves_colliding_tail() {
        let w_multi = unit_window(2);
        let w_set = RestrictedWindow::new(
            2, 2, 1, 1,
            vec![(1, rat(4))],
            rat(1),
            WindowSemantics::Set,
        )
        .unwrap();
        let zm = assemble_xi(&w_multi).unwrap();
        let zs = assemble_xi(&w_set).unwrap();
        assert!(zs.tail_halved);
        assert_eq!(zs.hn_normalized, ratio(1, 2));
        assert!(zs.fe_verdict);
        assert_eq!(zm.hn_normalized, rat(1));
        // non-colliding level: set and multiset agree
        let u = vec![(0i64, rat(3)), (4, rat(12))];
        let za = assemble_xi(
            &RestrictedWindow::new(2, 3, 1, 0, u.clone(), rat(1), WindowSemantics::Multiset)
                .unwrap(),
        )
        .unwrap();
        // dL = 0 always collides; use dL = 1 on the same genus-3 span
        let u1 = vec![(1i64, rat(3)), (3, rat(6))];
        let za1 = assemble_xi(
            &RestrictedWindow::new(2, 3, 1, 1, u1.clone(), rat(1), WindowSemantics::Multiset)
                .unwrap(),
        )
        .unwrap();
        let zb1 = assemble_xi(
            &RestrictedWindow::new(2, 3, 1, 1, u1, rat(1), WindowSemantics::Set).unwrap(),
        )
        .unwrap();
        assert!(!zb1.tail_halved);
        assert_eq!(za1.xi, zb1.xi);
        assert!(!za.tail_halved);
        assert_eq!(za.hn_normalized, rat(1));
    }

    #[test]
    fn window_part_is_laurent_polynomial_of_bounded_order() {
        // t^{r(g-1)} * S is an honest polynomial
        for q in [2u64, 3] {
            let w = unit_window(q);
            let z = assemble_xi(&w).unwrap();
            let shift = t_mono(w.weight() as i64 * (w.genus() as i64 - 1));
            let cleared = &z.s_part * &shift;
            assert!(cleared.is_polynomial());
        }
    }

    #[test]
    fn unit_bracket_residue_closed_forms() {
        // residues of the unit tail: 2/N at t=1 and -2/(Nq) at t=1/q,
        // independent of the level exponent
        for (q, r, g) in [(2u64, 1u32, 2usize), (3, 2, 2), (2, 1, 3)] {
            let n = 2 * r as i64 * (g as i64 - 1);
            for chi_l in [0, -1, -(n / 2)] {
                let b = tail_bracket(q, n, chi_l).unwrap();
                assert_eq!(b.residue_at(&rat(1)).unwrap(), ratio(2, n));
                assert_eq!(
                    b.residue_at(&q_pow(q, -1)).unwrap(),
                    ratio(-2, n) * q_pow(q, -1)
                );
                assert_eq!(b.substitute_recip(q), b);
            }
        }
    }

    #[test]
    fn higher_order_pole_is_reported() {
        let double = RatFun::new(
            Poly::one(),
            &Poly::from_ints(&[1, -1]) * &Poly::from_ints(&[1, -1]),
        )
        .unwrap();
        assert!(residues_xi(&double, 2, 1, 2).is_err());
    }
}

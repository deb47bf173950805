//! JSON-facing serialization types.
//!
//! Every rational number travels as a pair of decimal strings
//! `[numerator, denominator]`, lossless at arbitrary precision, and
//! polynomial coefficient lists are ordered lowest exponent first.
//! Floating point values appear only inside sections tagged `"numeric"`:
//! root locations, probe deviations and truncation-oracle gaps.

use num::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::curve::{CurveData, HyperellipticModel, PlaneCurve};
use crate::exact::{rat_from_strings, rat_to_strings, Poly, Rat, RatFun};
use crate::mass::MassTable;
use crate::nonstable::{JacobianMode, NonstableZeta, SectionCell, SectionTable};
use crate::rank::{RankWindow, ZetaReport};
use crate::restricted::{RestrictedWindow, RestrictedZeta, WindowSemantics};
use crate::{Error, Result};

pub type RatStrings = [String; 2];

pub fn rat_json(x: &Rat) -> RatStrings {
    rat_to_strings(x)
}

pub fn rat_from_json(p: &RatStrings) -> Result<Rat> {
    rat_from_strings(&p[0], &p[1])
}

pub fn poly_json(p: &Poly) -> Vec<RatStrings> {
    p.coeffs().iter().map(rat_json).collect()
}

pub fn poly_from_json(coeffs: &[RatStrings]) -> Result<Poly> {
    Ok(Poly::new(
        coeffs.iter().map(rat_from_json).collect::<Result<_>>()?,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFunJson {
    pub num: Vec<RatStrings>,
    pub den: Vec<RatStrings>,
}

impl RatFunJson {
    pub fn from_ratfun(z: &RatFun) -> Self {
        RatFunJson {
            num: poly_json(z.num()),
            den: poly_json(z.den()),
        }
    }

    pub fn to_ratfun(&self) -> Result<RatFun> {
        RatFun::new(poly_from_json(&self.num)?, poly_from_json(&self.den)?)
    }
}

pub fn parse_semantics(s: &str) -> Result<WindowSemantics> {
    match s {
        "multiset" => Ok(WindowSemantics::Multiset),
        "set" => Ok(WindowSemantics::Set),
        other => Err(Error::Input(format!(
            "unknown window semantics '{other}', expected 'multiset' or 'set'"
        ))),
    }
}

pub fn parse_jacobian_mode(s: &str) -> Result<JacobianMode> {
    match s {
        "single" => Ok(JacobianMode::Single),
        "squared" => Ok(JacobianMode::Squared),
        other => Err(Error::Input(format!(
            "unknown jacobian mode '{other}', expected 'single' or 'squared'"
        ))),
    }
}

/// `{"label", "q", "g", "weil_numerator", "point_counts"}`; the counts
/// are optional on input and cross-checked against the numerator when
/// present.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub q: u64,
    pub g: usize,
    pub weil_numerator: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point_counts: Option<Vec<u64>>,
}

impl CurveJson {
    pub fn from_curve(label: Option<String>, curve: &CurveData) -> Result<Self> {
        let numerator = curve
            .numerator()
            .coeffs()
            .iter()
            .map(|c| {
                if c.is_integer() {
                    c.numer().to_i64().ok_or_else(|| {
                        Error::Input("numerator coefficient out of i64 range".into())
                    })
                } else {
                    Err(Error::Input("numerator is not integral".into()))
                }
            })
            .collect::<Result<Vec<i64>>>()?;
        let n = (2 * curve.genus()).max(1);
        let counts = curve
            .point_counts(n)
            .iter()
            .map(|c| {
                c.numer()
                    .to_u64()
                    .ok_or_else(|| Error::Input("point count out of u64 range".into()))
            })
            .collect::<Result<Vec<u64>>>()?;
        Ok(CurveJson {
            label,
            q: curve.q(),
            g: curve.genus(),
            weil_numerator: numerator,
            point_counts: Some(counts),
        })
    }

    pub fn to_curve(&self) -> Result<CurveData> {
        let curve = CurveData::from_integer_numerator(self.q, &self.weil_numerator)?;
        if curve.genus() != self.g {
            return Err(Error::Input(format!(
                "numerator has genus {}, payload says {}",
                curve.genus(),
                self.g
            )));
        }
        if let Some(counts) = &self.point_counts {
            let derived = curve.point_counts(counts.len());
            for (n, (stated, got)) in counts.iter().zip(&derived).enumerate() {
                if &Rat::from_integer((*stated).into()) != got {
                    return Err(Error::Input(format!(
                        "stated point count over the degree-{} extension disagrees \
                         with the numerator",
                        n + 1
                    )));
                }
            }
        }
        Ok(curve)
    }
}

/// `{"q", "model": "hyperelliptic"|"plane", "f", "h"}`; `f` and `h` are
/// coefficient lists in x for the hyperelliptic model `y^2 + h y = f`,
/// and `f` is a list of monomials `[i, j, k, c]` for a plane model.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "model")]
pub enum PlaneCurveJson {
    #[serde(rename = "hyperelliptic")]
    Hyperelliptic {
        q: u64,
        f: Vec<i64>,
        #[serde(default)]
        h: Vec<i64>,
    },
    #[serde(rename = "plane")]
    Plane { q: u64, f: Vec<(u32, u32, u32, i64)> },
}

impl PlaneCurveJson {
    /// Counts points by brute force and recovers the exact curve data.
    pub fn to_curve(&self) -> Result<CurveData> {
        match self {
            PlaneCurveJson::Hyperelliptic { q, f, h } => {
                let model = HyperellipticModel::new(h.clone(), f.clone());
                let g = model.genus(*q)?;
                let counts = model.counts(*q, g.max(1))?;
                CurveData::from_point_counts(*q, g, &counts[..g])
            }
            PlaneCurveJson::Plane { q, f } => {
                let model = PlaneCurve::new(f.clone())?;
                let g = model.smooth_genus();
                let counts = model.counts(*q, g.max(1))?;
                CurveData::from_point_counts(*q, g, &counts[..g])
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DegreeValueJson {
    pub d: i64,
    pub value: RatStrings,
}

/// `{"q","g","r","dL","u","M","semantics"}` for a restricted window.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RestrictedWindowJson {
    pub q: u64,
    pub g: usize,
    pub r: u32,
    #[serde(rename = "dL")]
    pub d_l: i64,
    pub u: Vec<DegreeValueJson>,
    #[serde(rename = "M")]
    pub m: RatStrings,
    pub semantics: String,
}

impl RestrictedWindowJson {
    pub fn from_window(w: &RestrictedWindow) -> Self {
        RestrictedWindowJson {
            q: w.q(),
            g: w.genus(),
            r: w.weight(),
            d_l: w.level_degree(),
            u: w
                .entries()
                .map(|(d, value)| DegreeValueJson {
                    d,
                    value: rat_json(value),
                })
                .collect(),
            m: rat_json(w.mass()),
            semantics: w.semantics().as_str().into(),
        }
    }

    pub fn to_window(&self) -> Result<RestrictedWindow> {
        let u = self
            .u
            .iter()
            .map(|e| Ok((e.d, rat_from_json(&e.value)?)))
            .collect::<Result<Vec<_>>>()?;
        RestrictedWindow::new(
            self.q,
            self.g,
            self.r,
            self.d_l,
            u,
            rat_from_json(&self.m)?,
            parse_semantics(&self.semantics)?,
        )
    }
}

/// Rank window: dense `u` over `0..=r(2g-2)` plus one mass per residue
/// class mod r.  The `beta` list may be omitted when a mass table is to
/// fill it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RankWindowJson {
    pub q: u64,
    pub g: usize,
    pub r: u32,
    pub u: Vec<DegreeValueJson>,
    #[serde(default)]
    pub beta: Vec<DegreeValueJson>,
}

fn dense_values(entries: &[DegreeValueJson], what: &str) -> Result<Vec<Rat>> {
    let mut sorted = entries.to_vec();
    sorted.sort_by_key(|e| e.d);
    for (k, e) in sorted.iter().enumerate() {
        if e.d != k as i64 {
            return Err(Error::Input(format!(
                "{what} entries must cover 0..{} densely, found degree {}",
                sorted.len(),
                e.d
            )));
        }
    }
    sorted.iter().map(|e| rat_from_json(&e.value)).collect()
}

impl RankWindowJson {
    pub fn from_window(w: &RankWindow) -> Self {
        let pack = |vals: &[Rat]| {
            vals.iter()
                .enumerate()
                .map(|(d, value)| DegreeValueJson {
                    d: d as i64,
                    value: rat_json(value),
                })
                .collect()
        };
        RankWindowJson {
            q: w.q(),
            g: w.genus(),
            r: w.rank(),
            u: pack(w.coefficients()),
            beta: pack(w.masses()),
        }
    }

    pub fn to_window(&self) -> Result<RankWindow> {
        RankWindow::new(
            self.q,
            self.g,
            self.r,
            dense_values(&self.u, "window")?,
            dense_values(&self.beta, "mass")?,
        )
    }

    /// Window with the mass list taken from a computed table.
    pub fn to_window_with_table(&self, table: &MassTable) -> Result<RankWindow> {
        RankWindow::with_masses(table, self.r, dense_values(&self.u, "window")?)
    }
}

/// `{"q","g","entries":[{"r","d_mod_r","beta","provenance"}]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MassTableJson {
    pub q: u64,
    pub g: usize,
    pub entries: Vec<MassEntryJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MassEntryJson {
    pub r: u32,
    pub d_mod_r: i64,
    pub beta: RatStrings,
    pub provenance: String,
}

impl MassTableJson {
    pub fn from_table(table: &MassTable) -> Self {
        MassTableJson {
            q: table.q(),
            g: table.genus(),
            entries: table
                .snapshot()
                .iter()
                .map(|e| MassEntryJson {
                    r: e.r,
                    d_mod_r: e.d_mod_r,
                    beta: rat_json(&e.beta),
                    provenance: e.provenance.as_str().into(),
                })
                .collect(),
        }
    }
}

/// Rows `{"d_plus","d_minus","h0_values":[{"h0","count"}]}` of the
/// section table for the low window of the non-stable zeta function.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SectionRowJson {
    pub d_plus: i64,
    pub d_minus: i64,
    pub h0_values: Vec<H0CountJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct H0CountJson {
    pub h0: u32,
    pub count: u64,
}

pub fn section_table_from_json(genus: usize, rows: &[SectionRowJson]) -> Result<SectionTable> {
    SectionTable::new(
        genus,
        rows.iter()
            .map(|row| SectionCell {
                d_plus: row.d_plus,
                d_minus: row.d_minus,
                h0_values: row.h0_values.iter().map(|v| (v.h0, v.count)).collect(),
            })
            .collect(),
    )
}

pub fn section_table_json(table: &SectionTable) -> Vec<SectionRowJson> {
    table
        .rows()
        .iter()
        .map(|cell| SectionRowJson {
            d_plus: cell.d_plus,
            d_minus: cell.d_minus,
            h0_values: cell
                .h0_values
                .iter()
                .map(|&(h0, count)| H0CountJson { h0, count })
                .collect(),
        })
        .collect()
}

/// Numeric (floating point) sections are tagged so consumers can tell
/// exact data from probe output.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootJson {
    pub re: f64,
    pub im: f64,
    pub abs: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootsJson {
    pub tag: String,
    pub entries: Vec<RootJson>,
    /// Largest `| |root| - sqrt(q) |` over the entries.
    pub max_deviation: f64,
}

/// Report of one assembled rank-r zeta function.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RankReportJson {
    pub kind: String,
    pub q: u64,
    pub g: usize,
    pub r: u32,
    pub zeta: RatFunJson,
    pub p: Vec<RatStrings>,
    pub deg_p: usize,
    pub degree_matches: bool,
    pub fe_verdict: bool,
    pub pairing_verdict: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing_constant: Option<RatStrings>,
    pub residue_t1: RatStrings,
    pub residue_t_qinv: RatStrings,
    pub residue_symmetry: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_values: Option<Vec<RatStrings>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roots: Option<RootsJson>,
}

pub const RANK_REPORT_KIND: &str = "rank_report";
pub const RESTRICTED_REPORT_KIND: &str = "restricted_report";
pub const NONSTABLE_REPORT_KIND: &str = "nonstable_report";

impl RankReportJson {
    pub fn from_report(
        report: &ZetaReport,
        n_values: Option<&[Rat]>,
        roots: Option<(&[num::complex::Complex64], f64)>,
    ) -> Self {
        RankReportJson {
            kind: RANK_REPORT_KIND.into(),
            q: report.q,
            g: report.g,
            r: report.r,
            zeta: RatFunJson::from_ratfun(&report.z),
            p: poly_json(&report.p),
            deg_p: report.deg_p,
            degree_matches: report.degree_matches,
            fe_verdict: report.fe_verdict,
            pairing_verdict: report.pairing_verdict,
            pairing_constant: report.pairing_constant.as_ref().map(rat_json),
            residue_t1: rat_json(&report.residue_t1),
            residue_t_qinv: rat_json(&report.residue_t_qinv),
            residue_symmetry: report.residue_symmetry,
            n_values: n_values.map(|ns| ns.iter().map(rat_json).collect()),
            roots: roots.map(|(ws, dev)| RootsJson {
                tag: "numeric".into(),
                entries: ws
                    .iter()
                    .map(|w| RootJson {
                        re: w.re,
                        im: w.im,
                        abs: w.norm(),
                    })
                    .collect(),
                max_deviation: dev,
            }),
        }
    }

    /// Rebuilds the exact report so verification can recompute every
    /// verdict from the payload data instead of trusting stored flags.
    pub fn to_report(&self) -> Result<ZetaReport> {
        Ok(ZetaReport {
            q: self.q,
            g: self.g,
            r: self.r,
            z: self.zeta.to_ratfun()?,
            p: poly_from_json(&self.p)?,
            deg_p: self.deg_p,
            degree_matches: self.degree_matches,
            fe_verdict: self.fe_verdict,
            pairing_verdict: self.pairing_verdict,
            pairing_constant: self
                .pairing_constant
                .as_ref()
                .map(rat_from_json)
                .transpose()?,
            residue_t1: rat_from_json(&self.residue_t1)?,
            residue_t_qinv: rat_from_json(&self.residue_t_qinv)?,
            residue_symmetry: self.residue_symmetry,
        })
    }
}

/// Report of one restricted zeta function.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RestrictedReportJson {
    pub kind: String,
    pub q: u64,
    pub g: usize,
    pub r: u32,
    #[serde(rename = "dL")]
    pub d_l: i64,
    pub xi: RatFunJson,
    pub s_part: RatFunJson,
    pub t_part: RatFunJson,
    pub s_forms_agree: bool,
    pub tail_halved: bool,
    pub fe_verdict: bool,
    pub residue_t1: RatStrings,
    pub residue_t_qinv: RatStrings,
    pub hn_normalized: RatStrings,
    pub hn_from_t1: RatStrings,
    pub residues_agree: bool,
}

impl RestrictedReportJson {
    pub fn from_parts(w: &RestrictedWindow, z: &RestrictedZeta) -> Self {
        RestrictedReportJson {
            kind: RESTRICTED_REPORT_KIND.into(),
            q: w.q(),
            g: w.genus(),
            r: w.weight(),
            d_l: w.level_degree(),
            xi: RatFunJson::from_ratfun(&z.xi),
            s_part: RatFunJson::from_ratfun(&z.s_part),
            t_part: RatFunJson::from_ratfun(&z.t_part),
            s_forms_agree: z.s_forms_agree,
            tail_halved: z.tail_halved,
            fe_verdict: z.fe_verdict,
            residue_t1: rat_json(&z.residue_t1),
            residue_t_qinv: rat_json(&z.residue_t_qinv),
            hn_normalized: rat_json(&z.hn_normalized),
            hn_from_t1: rat_json(&z.hn_from_t1),
            residues_agree: z.hn_normalized == z.hn_from_t1,
        }
    }
}

/// Report of one non-stable rank-2 zeta function; every part travels
/// with it, and a partial assembly is marked.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NonstableReportJson {
    pub kind: String,
    pub q: u64,
    pub g: usize,
    pub jacobian_mode: String,
    pub partial: bool,
    pub mass: RatFunJson,
    pub deep_quot_big: RatFunJson,
    pub deep_quot_neg: RatFunJson,
    pub deep_quot_mid: RatFunJson,
    pub low_sub_special: RatFunJson,
    pub low_quot_nonneg: RatFunJson,
    pub low_quot_neg: RatFunJson,
    pub zeta_ns: RatFunJson,
    pub denominator_conforms: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleGapJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fe_probe: Option<ProbeJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleGapJson {
    pub tag: String,
    pub s: RatStrings,
    pub depth: usize,
    pub gap: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProbeJson {
    pub tag: String,
    pub samples: Vec<RatStrings>,
    pub max_gap: f64,
}

impl NonstableReportJson {
    pub fn from_report(report: &NonstableZeta) -> Self {
        NonstableReportJson {
            kind: NONSTABLE_REPORT_KIND.into(),
            q: report.q,
            g: report.g,
            jacobian_mode: report.mode.as_str().into(),
            partial: report.partial,
            mass: RatFunJson::from_ratfun(&report.parts.mass),
            deep_quot_big: RatFunJson::from_ratfun(&report.parts.deep_quot_big),
            deep_quot_neg: RatFunJson::from_ratfun(&report.parts.deep_quot_neg),
            deep_quot_mid: RatFunJson::from_ratfun(&report.parts.deep_quot_mid),
            low_sub_special: RatFunJson::from_ratfun(&report.parts.low_sub_special),
            low_quot_nonneg: RatFunJson::from_ratfun(&report.parts.low_quot_nonneg),
            low_quot_neg: RatFunJson::from_ratfun(&report.parts.low_quot_neg),
            zeta_ns: RatFunJson::from_ratfun(&report.zeta_ns),
            denominator_conforms: report.denominator_conforms,
            oracle: None,
            fe_probe: None,
        }
    }
}

/// Machine-readable error payload emitted on any failing exit.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ErrorJson {
    pub kind: String,
    pub error: String,
}

impl ErrorJson {
    pub fn from_error(e: &Error) -> Self {
        let kind = match e {
            Error::Input(_) => "input",
            Error::Math(_) => "math",
            Error::NonContracting(_) => "non_contracting",
            Error::Diverged(_) => "diverged",
            Error::Gate(_) => "gate",
        };
        ErrorJson {
            kind: kind.into(),
            error: e.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use crate::nonstable::{assemble_ns, NonstableInput};
    use crate::rank::rank1_pipeline;
    use crate::restricted::assemble_xi;

    #[test]
    fn curve_payload_round_trips() {
        let curve = CurveData::from_integer_numerator(2, &[1, 0, 2]).unwrap();
        let json = CurveJson::from_curve(Some("elliptic".into()), &curve).unwrap();
        assert_eq!(json.weil_numerator, vec![1, 0, 2]);
        assert_eq!(json.point_counts, Some(vec![3, 9]));
        let back = json.to_curve().unwrap();
        assert_eq!(back.numerator(), curve.numerator());

        let mut tampered = json.clone();
        tampered.point_counts = Some(vec![4]);
        assert!(tampered.to_curve().is_err());
        let mut tampered = json;
        tampered.g = 2;
        assert!(tampered.to_curve().is_err());
    }

    #[test]
    fn plane_model_payload_counts_points() {
        let text = r#"{"model":"hyperelliptic","q":2,"f":[0,0,0,1],"h":[1]}"#;
        let payload: PlaneCurveJson = serde_json::from_str(text).unwrap();
        let curve = payload.to_curve().unwrap();
        assert_eq!(curve.numerator(), &Poly::from_ints(&[1, 0, 2]));
    }

    #[test]
    fn rank_report_round_trips_and_serializes_deterministically() {
        let curve = CurveData::from_integer_numerator(2, &[1, 0, 2]).unwrap();
        let report = rank1_pipeline(&curve).unwrap();
        let json = RankReportJson::from_report(&report, None, None);
        let text = serde_json::to_string_pretty(&json).unwrap();
        let parsed: RankReportJson = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&parsed).unwrap(), text);
        let back = parsed.to_report().unwrap();
        assert_eq!(back.z, report.z);
        assert_eq!(back.p, report.p);
        assert_eq!(back.pairing_constant, report.pairing_constant);
    }

    #[test]
    fn window_payloads_round_trip() {
        let w = RankWindow::new(
            2,
            1,
            1,
            vec![rat(4)],
            vec![rat(3)],
        )
        .unwrap();
        let json = RankWindowJson::from_window(&w);
        let back = json.to_window().unwrap();
        assert_eq!(back.coefficients(), w.coefficients());
        assert_eq!(back.masses(), w.masses());

        let rw = RestrictedWindow::new(
            3,
            2,
            1,
            1,
            vec![(1, ratio(3, 1))],
            ratio(1, 2),
            WindowSemantics::Multiset,
        )
        .unwrap();
        let rj = RestrictedWindowJson::from_window(&rw);
        assert_eq!(rj.semantics, "multiset");
        let back = rj.to_window().unwrap();
        let (a, b) = (assemble_xi(&rw).unwrap(), assemble_xi(&back).unwrap());
        assert_eq!(a.xi, b.xi);
    }

    #[test]
    fn restricted_report_carries_residue_agreement() {
        let rw = RestrictedWindow::new(
            3,
            2,
            1,
            1,
            vec![(1, ratio(3, 1))],
            ratio(1, 2),
            WindowSemantics::Multiset,
        )
        .unwrap();
        let z = assemble_xi(&rw).unwrap();
        let json = RestrictedReportJson::from_parts(&rw, &z);
        assert_eq!(json.kind, RESTRICTED_REPORT_KIND);
        assert!(json.residues_agree);
    }

    #[test]
    fn nonstable_report_marks_numeric_sections() {
        let curve = CurveData::from_integer_numerator(2, &[1, 0, 2]).unwrap();
        let inp = NonstableInput::from_curve(&curve, JacobianMode::Squared).unwrap();
        let report = assemble_ns(&inp).unwrap();
        let mut json = NonstableReportJson::from_report(&report);
        json.oracle = Some(OracleGapJson {
            tag: "numeric".into(),
            s: rat_json(&rat(2)),
            depth: 60,
            gap: 1e-12,
        });
        let text = serde_json::to_string(&json).unwrap();
        assert!(text.contains("\"numeric\""));
        assert!(!json.partial);
        let parsed: NonstableReportJson = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.zeta_ns.to_ratfun().unwrap(), report.zeta_ns);
    }

    #[test]
    fn section_table_payload_round_trips() {
        let rows = vec![
            SectionRowJson {
                d_plus: 1,
                d_minus: 0,
                h0_values: vec![H0CountJson { h0: 1, count: 4 }],
            },
            SectionRowJson {
                d_plus: 2,
                d_minus: 0,
                h0_values: vec![H0CountJson { h0: 0, count: 10 }],
            },
            SectionRowJson {
                d_plus: 2,
                d_minus: 1,
                h0_values: vec![H0CountJson { h0: 1, count: 6 }],
            },
        ];
        let table = section_table_from_json(2, &rows).unwrap();
        let back = section_table_json(&table);
        assert_eq!(back.len(), 3);
        assert_eq!(back[0].d_plus, 1);
        assert_eq!(back[2].h0_values[0].count, 6);
    }

    #[test]
    fn rationals_are_decimal_string_pairs() {
        let v = rat_json(&ratio(-22, 7));
        assert_eq!(v, ["-22".to_string(), "7".to_string()]);
        assert_eq!(rat_from_json(&v).unwrap(), ratio(-22, 7));
    }
}

//! Serializable reports. Rationals travel as strings (`"3"`, `"-5/8"`) so
//! JSON output is exact; only the spectrum section carries floats.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exact::{parse_rational, Polynomial, Rational};
use crate::matrix::RationalMatrix;
use crate::minpoly::HoffmanPolynomial;
use crate::predistance::PredistanceBasis;
use crate::scheme::SchemeCertificate;
use crate::spectral::{IdempotentFamily, PerronReport, Spectrum};
use crate::stochastic::{EntryDecomposition, MatrixClassification};

pub fn rational_string(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational_string(s: &str) -> Option<Rational> {
    parse_rational(s).ok()
}

/// Ascending coefficients as strings.
pub fn coefficient_strings(p: &Polynomial) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".into()];
    }
    p.coeffs().iter().map(rational_string).collect()
}

pub fn polynomial_from_strings(coeffs: &[String]) -> Option<Polynomial> {
    coeffs.iter().map(|c| parse_rational_string(c)).collect::<Option<Vec<_>>>().map(Polynomial::new)
}

/// Rows of 0/1 flags marking the nonzero entries.
pub fn support_grid(m: &RationalMatrix) -> Vec<Vec<u8>> {
    m.rows().map(|row| row.iter().map(|v| u8::from(!v.is_zero())).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub order: usize,
    pub nonnegative: bool,
    pub lambda: Option<String>,
    pub lambda_doubly_stochastic: bool,
    pub normal: bool,
    pub irreducible: bool,
}

impl From<&MatrixClassification> for ClassificationReport {
    fn from(c: &MatrixClassification) -> Self {
        Self {
            order: c.order,
            nonnegative: c.nonnegative,
            lambda: c.lambda.as_ref().map(rational_string),
            lambda_doubly_stochastic: c.is_lambda_doubly_stochastic(),
            normal: c.normal,
            irreducible: c.irreducible,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoffmanReport {
    pub lambda: String,
    pub minimal: Vec<String>,
    pub q: Vec<String>,
    pub h: Vec<String>,
    pub h_display: String,
}

impl From<&HoffmanPolynomial> for HoffmanReport {
    fn from(hp: &HoffmanPolynomial) -> Self {
        Self {
            lambda: rational_string(&hp.lambda),
            minimal: coefficient_strings(&hp.minimal),
            q: coefficient_strings(&hp.q),
            h: coefficient_strings(&hp.h),
            h_display: hp.h.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredistanceReport {
    pub lambda: String,
    pub d: usize,
    pub polynomials: Vec<Vec<String>>,
    pub norms_sq: Vec<String>,
    pub hoffman: Vec<String>,
    /// `Σ p_i(B) = J` and `Σ p_i = h`, both exact.
    pub sum_is_hoffman: bool,
}

impl PredistanceReport {
    pub fn new(basis: &PredistanceBasis, sum_is_hoffman: bool) -> Self {
        Self {
            lambda: rational_string(&basis.lambda),
            d: basis.d(),
            polynomials: basis.polys.iter().map(coefficient_strings).collect(),
            norms_sq: basis.norms_sq.iter().map(rational_string).collect(),
            hoffman: coefficient_strings(&basis.hoffman),
            sum_is_hoffman,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeReport {
    /// `"accepted"` or `"rejected"`.
    pub verdict: String,
    pub reason: Option<String>,
    pub lambda: Option<String>,
    pub d: Option<usize>,
    #[serde(rename = "D")]
    pub diameter: Option<usize>,
    pub hoffman: Option<Vec<String>>,
    pub predistance: Vec<Vec<String>>,
    /// Class matrices `A_0..A_D` as 0/1 row grids.
    pub classes: Vec<Vec<Vec<u8>>>,
    /// `intersection_numbers[i][j][h] = p^h_{ij}`.
    pub intersection_numbers: Option<Vec<Vec<Vec<String>>>>,
    pub transpose_map: Option<Vec<usize>>,
}

impl From<&SchemeCertificate> for SchemeReport {
    fn from(c: &SchemeCertificate) -> Self {
        Self {
            verdict: if c.accepted() { "accepted" } else { "rejected" }.into(),
            reason: c.reason().map(ToString::to_string),
            lambda: c.lambda.as_ref().map(rational_string),
            d: c.d,
            diameter: c.diameter,
            hoffman: c.hoffman.as_ref().map(coefficient_strings),
            predistance: c.generator_polynomials.iter().map(coefficient_strings).collect(),
            classes: c.class_matrices.iter().map(support_grid).collect(),
            intersection_numbers: c.intersection_numbers.as_ref().map(|t| {
                t.iter().map(|row| row.iter().map(|col| col.iter().map(rational_string).collect()).collect()).collect()
            }),
            transpose_map: c.transpose_map.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    /// Distinct positive entry values, ascending.
    pub coefficients: Vec<String>,
    pub indicators: Vec<Vec<Vec<u8>>>,
}

impl From<&EntryDecomposition> for DecompositionReport {
    fn from(e: &EntryDecomposition) -> Self {
        Self {
            coefficients: e.coefficients.iter().map(rational_string).collect(),
            indicators: e.indicators.iter().map(support_grid).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerronSection {
    pub lambda: f64,
    pub spectral_radius: f64,
    pub lambda_is_eigenvalue: bool,
    pub lambda_is_dominant: bool,
    pub lambda_is_simple: bool,
    pub min_gap: Option<f64>,
    pub ones_is_eigenvector: bool,
}

impl From<&PerronReport> for PerronSection {
    fn from(r: &PerronReport) -> Self {
        Self {
            lambda: r.lambda,
            spectral_radius: r.spectral_radius,
            lambda_is_eigenvalue: r.lambda_is_eigenvalue,
            lambda_is_dominant: r.lambda_is_dominant,
            lambda_is_simple: r.lambda_is_simple,
            min_gap: r.min_gap.is_finite().then_some(r.min_gap),
            ones_is_eigenvector: r.ones_is_eigenvector,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdempotentSection {
    pub orthogonality: f64,
    pub completeness: f64,
    pub reconstruction: f64,
    pub hermitian: f64,
    pub power_identity: f64,
}

impl IdempotentSection {
    pub fn new(family: &IdempotentFamily, power_identity: f64) -> Self {
        let r = family.residuals;
        Self {
            orthogonality: r.orthogonality,
            completeness: r.completeness,
            reconstruction: r.reconstruction,
            hermitian: r.hermitian,
            power_identity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    /// `[re, im]` pairs, λ first.
    pub eigenvalues: Vec<[f64; 2]>,
    pub residuals: Vec<f64>,
    pub perron: Option<PerronSection>,
    pub idempotents: Option<IdempotentSection>,
    /// Set when the idempotents could not be formed.
    pub idempotent_error: Option<String>,
}

impl SpectrumReport {
    pub fn new(spectrum: &Spectrum) -> Self {
        Self {
            eigenvalues: spectrum.eigenvalues.iter().map(|z| [z.re, z.im]).collect(),
            residuals: spectrum.residuals.clone(),
            perron: None,
            idempotents: None,
            idempotent_error: None,
        }
    }
}

/// Top-level JSON document; each command fills the sections it computes.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct AnalysisReport {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub classification: Option<ClassificationReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hoffman: Option<HoffmanReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub predistance: Option<PredistanceReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub scheme: Option<SchemeReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub decomposition: Option<DecompositionReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub spectrum: Option<SpectrumReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::fixtures;
    use crate::minpoly::hoffman_polynomial;
    use crate::scheme::detect_scheme;

    #[test]
    fn rationals_are_strings() {
        assert_eq!(rational_string(&rat(-5, 8)), "-5/8");
        assert_eq!(rational_string(&rat(6, 2)), "3");
        assert_eq!(coefficient_strings(&Polynomial::zero()), vec!["0"]);
        let p = Polynomial::new(vec![rat(1, 3), rat(0, 1), rat(-7, 2)]);
        assert_eq!(polynomial_from_strings(&coefficient_strings(&p)), Some(p));
    }

    #[test]
    fn scheme_report_round_trips() {
        let report = SchemeReport::from(&detect_scheme(&fixtures::fig2()));
        assert_eq!(report.verdict, "accepted");
        assert_eq!(report.hoffman.as_deref(), Some(&["-2".to_string(), "8".into(), "-16".into(), "16".into()][..]));
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"D\":3"));
        let back: SchemeReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn rejected_report_names_reason() {
        let report = SchemeReport::from(&detect_scheme(&fixtures::fig1()));
        assert_eq!(report.verdict, "rejected");
        assert_eq!(report.reason.as_deref(), Some("NOT_NORMAL"));
        assert!(report.intersection_numbers.is_none());
    }

    #[test]
    fn analysis_report_round_trips() {
        let hp = hoffman_polynomial(&fixtures::fig1()).unwrap();
        let report = AnalysisReport {
            classification: Some((&crate::stochastic::classify(&fixtures::fig1())).into()),
            hoffman: Some((&hp).into()),
            ..Default::default()
        };
        let json = serde_json::to_string_pretty(&report).unwrap();
        assert!(!json.contains("scheme"));
        let back: AnalysisReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        let h = polynomial_from_strings(&back.hoffman.unwrap().h).unwrap();
        assert_eq!(h, hp.h);
    }
}

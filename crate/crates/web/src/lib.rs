//! Browser bindings. Every export takes matrix-file text and returns a JSON
//! string; failures come back as `{"error": "..."}`.

use serde::Serialize;
use wasm_bindgen::prelude::wasm_bindgen;

use schemeforge_core::exact::{int, to_f64};
use schemeforge_core::minpoly::{hoffman_from_parts, minimal_polynomial};
use schemeforge_core::report::{
    AnalysisReport, ClassificationReport, HoffmanReport, IdempotentSection, PerronSection, PredistanceReport,
    SchemeReport, SpectrumReport,
};
use schemeforge_core::spectral::{idempotents, perron_check, roots, DEFAULT_CHECK_TOL, DEFAULT_ITER_TOL, DEFAULT_MAX_ITER};
use schemeforge_core::stochastic::{classify, random_lambda_ds, random_normal_lambda_ds};
use schemeforge_core::{detect_scheme, fixtures, parse_matrix, predistance_basis, serialize_matrix, RationalMatrix};

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).unwrap_or_else(|e| error_json(&e.to_string()))
}

fn error_json(message: &str) -> String {
    serde_json::json!({ "error": message }).to_string()
}

fn with_matrix(text: &str, f: impl FnOnce(&RationalMatrix) -> String) -> String {
    match parse_matrix(text) {
        Ok(b) => f(&b),
        Err(e) => error_json(&e.to_string()),
    }
}

/// Classification, Hoffman polynomial and, for normal input, predistance polynomials.
#[wasm_bindgen]
pub fn hoffman(text: &str) -> String {
    with_matrix(text, |b| {
        let class = classify(b);
        let mut report =
            AnalysisReport { classification: Some(ClassificationReport::from(&class)), ..Default::default() };
        match hoffman_from_parts(b, &class, &minimal_polynomial(b)) {
            Ok(hp) => report.hoffman = Some(HoffmanReport::from(&hp)),
            Err(e) => report.error = Some(e.to_string()),
        }
        if report.error.is_none() && class.normal {
            if let Ok(basis) = predistance_basis(b) {
                let ok = schemeforge_core::predistance::verify_hoffman_sum(&basis, b);
                report.predistance = Some(PredistanceReport::new(&basis, ok));
            }
        }
        to_json(&report)
    })
}

/// Scheme certificate.
#[wasm_bindgen]
pub fn scheme(text: &str) -> String {
    with_matrix(text, |b| to_json(&SchemeReport::from(&detect_scheme(b))))
}

/// Eigenvalues of the minimal polynomial, Perron check and idempotent residuals.
#[wasm_bindgen]
pub fn spectrum(text: &str) -> String {
    with_matrix(text, |b| {
        let spec = match roots(minimal_polynomial(b).poly(), DEFAULT_ITER_TOL, DEFAULT_MAX_ITER) {
            Ok(s) => s,
            Err(e) => return error_json(&e.to_string()),
        };
        let lambda = classify(b).check_hoffman_hypotheses().ok();
        let spec = match &lambda {
            Some(l) => spec.perron_first(to_f64(l)),
            None => spec,
        };
        let mut report = SpectrumReport::new(&spec);
        report.perron = lambda.as_ref().map(|l| PerronSection::from(&perron_check(b, l, &spec, DEFAULT_CHECK_TOL)));
        match idempotents(b, &spec, DEFAULT_CHECK_TOL) {
            Ok(f) => report.idempotents = Some(IdempotentSection::new(&f, f.power_identity_residual(b, 3))),
            Err(e) => report.idempotent_error = Some(e.to_string()),
        }
        to_json(&report)
    })
}

/// Matrix-file text for a named example: `fig1`, `fig2`, `prism`,
/// `cycle:<n>`, `complete:<n>`, `average:<n>`.
#[wasm_bindgen]
pub fn preset(name: &str) -> String {
    let sized = |prefix: &str| name.strip_prefix(prefix).and_then(|n| n.parse::<usize>().ok()).filter(|n| (1..=16).contains(n));
    let m = match name {
        "fig1" => fixtures::fig1(),
        "fig2" => fixtures::fig2(),
        "prism" => fixtures::two_weight_prism(),
        _ => {
            if let Some(n) = sized("cycle:") {
                fixtures::cyclic(n, &int(1))
            } else if let Some(n) = sized("complete:") {
                fixtures::complete(n)
            } else if let Some(n) = sized("average:") {
                fixtures::averaging(n)
            } else {
                return String::new();
            }
        }
    };
    serialize_matrix(&m)
}

/// Matrix-file text of a seeded random λ-doubly stochastic matrix.
#[wasm_bindgen]
pub fn random_matrix(n: usize, k: usize, seed: u32, normal: bool) -> String {
    let (n, k) = (n.clamp(1, 12), k.clamp(1, 6));
    let m = if normal {
        random_normal_lambda_ds(n, k, u64::from(seed))
    } else {
        random_lambda_ds(n, k, u64::from(seed))
    };
    serialize_matrix(&m)
}

/// Common line sum λ as a string; empty when the row and column sums differ.
#[wasm_bindgen]
pub fn line_sum(text: &str) -> String {
    parse_matrix(text)
        .ok()
        .and_then(|b| classify(&b).lambda)
        .map(|l| l.to_string())
        .unwrap_or_default()
}

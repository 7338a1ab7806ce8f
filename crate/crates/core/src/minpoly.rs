//! Exact minimal polynomial of a rational matrix and the Hoffman polynomial
//! of a λ-doubly stochastic irreducible matrix.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{to_f64, Polynomial, Rational};
use crate::matrix::{solve_columns, MatrixPowerBasis, RationalMatrix};
use crate::stochastic::{classify, Hypothesis, MatrixClassification};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HoffmanError {
    #[error("no Hoffman polynomial: {0}")]
    Hypothesis(#[from] Hypothesis),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Monic `m` of least degree with `m(B) = 0`, plus the power basis
/// `I, B, …, B^{deg m − 1}` it was found over.
#[derive(Debug, Clone)]
pub struct MinimalPolynomial {
    poly: Polynomial,
    basis: MatrixPowerBasis,
}

impl MinimalPolynomial {
    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().expect("minimal polynomial is nonzero")
    }

    /// `I, B, …, B^d` with `d = deg m − 1`; a basis of the algebra generated by `B`.
    pub fn basis(&self) -> &MatrixPowerBasis {
        &self.basis
    }
}

/// Finds the first power `B^k` lying in the span of `I, …, B^{k−1}` by exact
/// elimination on the vectorized powers; the dependency gives `m`.
pub fn minimal_polynomial(b: &RationalMatrix) -> MinimalPolynomial {
    let n = b.order();
    let mut basis = MatrixPowerBasis::new(b, 1);
    for k in 1..=n {
        basis.extend_to(b, k);
        let columns = basis.vectorized(k - 1);
        if let Some(c) = solve_columns(&columns, basis.powers()[k].entries()) {
            let mut coeffs: Vec<Rational> = c.into_iter().map(|v| -v).collect();
            coeffs.push(Rational::one());
            let basis = MatrixPowerBasis::from_powers(basis.powers()[..k].to_vec());
            return MinimalPolynomial { poly: Polynomial::new(coeffs), basis };
        }
    }
    unreachable!("Cayley–Hamilton bounds the minimal polynomial degree by the order")
}

/// `h = (n / q(λ))·q` where `m = (t − λ)·q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoffmanPolynomial {
    pub h: Polynomial,
    pub q: Polynomial,
    pub lambda: Rational,
    pub minimal: Polynomial,
}

impl HoffmanPolynomial {
    pub fn degree(&self) -> usize {
        self.h.degree().expect("Hoffman polynomial is nonzero")
    }
}

/// Hoffman polynomial of `B`. Checks the hypotheses, and verifies `h(B) = J`
/// exactly before returning.
pub fn hoffman_polynomial(b: &RationalMatrix) -> Result<HoffmanPolynomial, HoffmanError> {
    let class = classify(b);
    let minimal = minimal_polynomial(b);
    hoffman_from_parts(b, &class, &minimal)
}

/// As [`hoffman_polynomial`], reusing an existing classification and minimal polynomial.
pub fn hoffman_from_parts(
    b: &RationalMatrix,
    class: &MatrixClassification,
    minimal: &MinimalPolynomial,
) -> Result<HoffmanPolynomial, HoffmanError> {
    let lambda = class.check_hoffman_hypotheses()?;
    let q = minimal
        .poly()
        .divide_linear(&lambda)
        .map_err(|e| HoffmanError::Invariant(format!("λ is not a root of the minimal polynomial: {e}")))?;
    let q_at_lambda = q.eval(&lambda);
    if q_at_lambda.is_zero() {
        return Err(HoffmanError::Invariant("q(λ) = 0, λ is a repeated root".into()));
    }
    let order = Rational::from_integer(BigInt::from(b.order()));
    let h = q.scale(&(order / q_at_lambda));
    if minimal.basis().eval(&h) != RationalMatrix::all_ones(b.order()) {
        return Err(HoffmanError::Invariant("h(B) ≠ J".into()));
    }
    Ok(HoffmanPolynomial { h, q, lambda, minimal: minimal.poly().clone() })
}

/// Largest absolute gap between `h(t)` and `(n/π₀)·Π(t − μ)` over sample points
/// spread across `[−λ, λ]`, where `μ` runs over `roots` (the numeric roots of
/// `q`) and `π₀ = Π(λ − μ)`.
pub fn hoffman_product_form_residual(hoffman: &HoffmanPolynomial, order: usize, roots: &[Complex64]) -> f64 {
    let lambda = to_f64(&hoffman.lambda);
    let pi0: Complex64 = roots.iter().map(|mu| Complex64::from(lambda) - mu).product();
    let scale = order as f64 / pi0;
    const SAMPLES: [f64; 9] = [-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0];
    SAMPLES
        .iter()
        .map(|s| {
            let t = s * lambda;
            let product: Complex64 = roots.iter().map(|mu| Complex64::from(t) - mu).product();
            (scale * product - hoffman.h.eval_f64(t)).norm()
        })
        .fold(0.0, f64::max)
}

/// Computes `h` for `B` and compares it against the product over `roots`.
pub fn hoffman_product_form_check(b: &RationalMatrix, roots: &[Complex64]) -> Result<f64, HoffmanError> {
    let hoffman = hoffman_polynomial(b)?;
    Ok(hoffman_product_form_residual(&hoffman, b.order(), roots))
}

//! Floating-point sidecar: eigenvalues as roots of the minimal polynomial,
//! primitive idempotents by Lagrange interpolation, and a Perron–Frobenius
//! report. Nothing here feeds an exact accept/reject decision.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::exact::{to_f64, Polynomial, Rational};
use crate::matrix::RationalMatrix;

pub const DEFAULT_ITER_TOL: f64 = 1e-12;
pub const DEFAULT_CHECK_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 500;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("root iteration did not converge after {iterations} sweeps (max step {max_step:e})")]
    NoConvergence { iterations: usize, max_step: f64, residuals: Vec<f64> },
    #[error("eigenvalues {i} and {j} are closer than {tol:e}")]
    Degenerate { i: usize, j: usize, tol: f64 },
    #[error("the zero polynomial has no spectrum")]
    ZeroPolynomial,
}

/// Numeric roots of a rational polynomial, repeated by multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex64>,
    /// `|m(μ)| / max|coeff|` per root.
    pub residuals: Vec<f64>,
}

impl Spectrum {
    /// Moves the root nearest to `lambda` to the front.
    pub fn perron_first(mut self, lambda: f64) -> Self {
        if let Some(k) = nearest(&self.eigenvalues, Complex64::from(lambda)) {
            self.eigenvalues[..=k].rotate_right(1);
            self.residuals[..=k].rotate_right(1);
        }
        self
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

fn nearest(values: &[Complex64], target: Complex64) -> Option<usize> {
    values
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - target).norm().total_cmp(&(b.1 - target).norm()))
        .map(|(k, _)| k)
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Roots of `m` by Aberth iteration on each square-free factor (exact Yun
/// factorization first, so every iteration sees simple roots), followed by
/// Newton polishing and conjugate pairing.
pub fn roots(m: &Polynomial, tol: f64, max_iter: usize) -> Result<Spectrum, SpectralError> {
    let norm = m.coeffs().iter().map(|c| to_f64(c).abs()).fold(0.0, f64::max);
    if m.is_zero() {
        return Err(SpectralError::ZeroPolynomial);
    }
    let mut eigenvalues = Vec::new();
    for (factor, multiplicity) in m.squarefree_factors() {
        let found = simple_roots(&factor, tol, max_iter)?;
        for z in found {
            eigenvalues.extend(std::iter::repeat_n(z, multiplicity));
        }
    }
    let full: Vec<f64> = m.coeffs().iter().map(to_f64).collect();
    let residuals = eigenvalues.iter().map(|&z| horner(&full, z).0.norm() / norm).collect();
    Ok(Spectrum { eigenvalues, residuals })
}

fn simple_roots(f: &Polynomial, tol: f64, max_iter: usize) -> Result<Vec<Complex64>, SpectralError> {
    let degree = f.degree().unwrap_or(0);
    let coeffs: Vec<f64> = f.monic().coeffs().iter().map(to_f64).collect();
    match degree {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![Complex64::new(-coeffs[0], 0.0)]),
        _ => {}
    }

    // Cauchy bound for the starting circle; a fixed angular offset breaks symmetry.
    let radius = 1.0 + coeffs[..degree].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let start = radius.min(1.0 + coeffs[0].abs().powf(1.0 / degree as f64));
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| Complex64::from_polar(start, 2.0 * PI * k as f64 / degree as f64 + 0.4))
        .collect();

    let mut converged = false;
    let mut max_step = f64::INFINITY;
    for _ in 0..max_iter {
        max_step = 0.0f64;
        for i in 0..degree {
            let (p, dp) = horner(&coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..degree).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[i] -= step;
            max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
        }
        if max_step < tol {
            converged = true;
            break;
        }
    }
    if !converged {
        let residuals = z.iter().map(|&w| horner(&coeffs, w).0.norm()).collect();
        return Err(SpectralError::NoConvergence { iterations: max_iter, max_step, residuals });
    }

    for w in &mut z {
        for _ in 0..3 {
            let (p, dp) = horner(&coeffs, *w);
            if dp.norm() == 0.0 {
                break;
            }
            *w -= p / dp;
        }
    }
    pair_conjugates(&mut z);
    Ok(z)
}

/// Real coefficients force conjugate-closed root sets. Each root is matched
/// with the root nearest its conjugate; a root nearer its own conjugate is
/// made real, otherwise the pair is averaged into an exact conjugate pair.
fn pair_conjugates(z: &mut [Complex64]) {
    let n = z.len();
    let mut done = vec![false; n];
    for i in 0..n {
        if done[i] {
            continue;
        }
        done[i] = true;
        let target = z[i].conj();
        let partner = (0..n)
            .filter(|&j| !done[j])
            .min_by(|&a, &b| (z[a] - target).norm().total_cmp(&(z[b] - target).norm()));
        let self_gap = 2.0 * z[i].im.abs();
        match partner {
            Some(j) if (z[j] - target).norm() < self_gap => {
                let avg = (z[i] + z[j].conj()) / 2.0;
                z[i] = avg;
                z[j] = avg.conj();
                done[j] = true;
            }
            _ => z[i].im = 0.0,
        }
    }
}

/// Dense complex square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    order: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn from_rational(m: &RationalMatrix) -> Self {
        Self { order: m.order(), entries: m.entries().iter().map(|v| Complex64::new(to_f64(v), 0.0)).collect() }
    }

    pub fn identity(order: usize) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); order * order];
        for x in 0..order {
            entries[x * order + x] = Complex64::new(1.0, 0.0);
        }
        Self { order, entries }
    }

    pub fn zeros(order: usize) -> Self {
        Self { order, entries: vec![Complex64::new(0.0, 0.0); order * order] }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, x: usize, y: usize) -> Complex64 {
        self.entries[x * self.order + y]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order;
        let mut out = Self::zeros(n);
        for x in 0..n {
            for k in 0..n {
                let a = self.entries[x * n + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for y in 0..n {
                    out.entries[x * n + y] += a * other.entries[k * n + y];
                }
            }
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { order: self.order, entries: self.entries.iter().map(|v| v * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { order: self.order, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { order: self.order, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect() }
    }

    pub fn conj_transpose(&self) -> Self {
        let n = self.order;
        Self { order: n, entries: (0..n * n).map(|k| self.entries[(k % n) * n + k / n].conj()).collect() }
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Max-entry residuals of the idempotent identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdempotentResiduals {
    /// `max ‖E_iE_j − δ_ij E_i‖`.
    pub orthogonality: f64,
    /// `‖Σ E_i − I‖`.
    pub completeness: f64,
    /// `‖B − Σ λ_i E_i‖`.
    pub reconstruction: f64,
    /// `max ‖E_i* − E_i‖`; small only for normal `B`.
    pub hermitian: f64,
}

impl IdempotentResiduals {
    /// The three algebraic identities, without self-adjointness.
    pub fn max_algebraic(&self) -> f64 {
        self.orthogonality.max(self.completeness).max(self.reconstruction)
    }

    pub fn max(&self) -> f64 {
        self.max_algebraic().max(self.hermitian)
    }
}

#[derive(Debug, Clone)]
pub struct IdempotentFamily {
    pub eigenvalues: Vec<Complex64>,
    pub matrices: Vec<ComplexMatrix>,
    pub residuals: IdempotentResiduals,
}

impl IdempotentFamily {
    /// `max_h ‖B^h − Σ λ_i^h E_i‖` for `h = 1..=max_power`.
    pub fn power_identity_residual(&self, b: &RationalMatrix, max_power: u32) -> f64 {
        let base = ComplexMatrix::from_rational(b);
        let mut power = ComplexMatrix::identity(b.order());
        let mut worst = 0.0f64;
        for h in 1..=max_power {
            power = power.mul(&base);
            let combo = self
                .eigenvalues
                .iter()
                .zip(&self.matrices)
                .fold(ComplexMatrix::zeros(b.order()), |acc, (l, e)| acc.add(&e.scale(l.powu(h))));
            worst = worst.max(power.sub(&combo).max_abs());
        }
        worst
    }
}

/// `E_i = Π_{j≠i} (B − λ_j I)/(λ_i − λ_j)` over the distinct eigenvalues in
/// `spectrum`. Fails if two eigenvalues are within `tol` of each other.
pub fn idempotents(b: &RationalMatrix, spectrum: &Spectrum, tol: f64) -> Result<IdempotentFamily, SpectralError> {
    let eig = &spectrum.eigenvalues;
    let n = b.order();
    for i in 0..eig.len() {
        for j in i + 1..eig.len() {
            if (eig[i] - eig[j]).norm() < tol {
                return Err(SpectralError::Degenerate { i, j, tol });
            }
        }
    }
    let base = ComplexMatrix::from_rational(b);
    let identity = ComplexMatrix::identity(n);
    let matrices: Vec<ComplexMatrix> = (0..eig.len())
        .map(|i| {
            (0..eig.len()).filter(|&j| j != i).fold(identity.clone(), |acc, j| {
                let factor = base.sub(&identity.scale(eig[j])).scale((eig[i] - eig[j]).inv());
                acc.mul(&factor)
            })
        })
        .collect();

    let mut orthogonality = 0.0f64;
    let mut hermitian = 0.0f64;
    for (i, ei) in matrices.iter().enumerate() {
        for (j, ej) in matrices.iter().enumerate() {
            let product = ei.mul(ej);
            let expected = if i == j { ei.clone() } else { ComplexMatrix::zeros(n) };
            orthogonality = orthogonality.max(product.sub(&expected).max_abs());
        }
        hermitian = hermitian.max(ei.conj_transpose().sub(ei).max_abs());
    }
    let sum = matrices.iter().fold(ComplexMatrix::zeros(n), |acc, e| acc.add(e));
    let weighted = eig.iter().zip(&matrices).fold(ComplexMatrix::zeros(n), |acc, (l, e)| acc.add(&e.scale(*l)));
    let residuals = IdempotentResiduals {
        orthogonality,
        completeness: sum.sub(&identity).max_abs(),
        reconstruction: base.sub(&weighted).max_abs(),
        hermitian,
    };
    Ok(IdempotentFamily { eigenvalues: eig.clone(), matrices, residuals })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerronReport {
    pub lambda: f64,
    pub spectral_radius: f64,
    /// Some root lies within `tol` of λ.
    pub lambda_is_eigenvalue: bool,
    /// `|λ − max|μ|| ≤ tol`.
    pub lambda_is_dominant: bool,
    /// Distance from λ to the nearest other root.
    pub min_gap: f64,
    pub lambda_is_simple: bool,
    /// `B·1 = λ·1` exactly.
    pub ones_is_eigenvector: bool,
}

impl PerronReport {
    pub fn passed(&self) -> bool {
        self.lambda_is_eigenvalue && self.lambda_is_dominant && self.lambda_is_simple && self.ones_is_eigenvector
    }
}

pub fn perron_check(b: &RationalMatrix, lambda: &Rational, spectrum: &Spectrum, tol: f64) -> PerronReport {
    let l = to_f64(lambda);
    let target = Complex64::from(l);
    let spectral_radius = spectrum.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let nearest_idx = nearest(&spectrum.eigenvalues, target);
    let lambda_is_eigenvalue = nearest_idx.is_some_and(|k| (spectrum.eigenvalues[k] - target).norm() <= tol);
    let min_gap = spectrum
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|&(k, _)| Some(k) != nearest_idx)
        .map(|(_, z)| (z - target).norm())
        .fold(f64::INFINITY, f64::min);
    PerronReport {
        lambda: l,
        spectral_radius,
        lambda_is_eigenvalue,
        lambda_is_dominant: (spectral_radius - l).abs() <= tol,
        min_gap,
        lambda_is_simple: min_gap > tol,
        ones_is_eigenvector: b.row_sums().iter().all(|s| s == lambda),
    }
}

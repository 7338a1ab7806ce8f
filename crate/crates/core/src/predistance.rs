//! Predistance polynomials of a normal λ-doubly stochastic irreducible matrix.
//!
//! Polynomials of degree at most `d` carry the inner product
//! `⟨p, q⟩ = (1/n)·trace(p(B)·q(B)ᵀ)`. Gram–Schmidt on `1, t, …, t^d` gives an
//! orthogonal family `q_0..q_d` whose members do not vanish at λ; rescaling each
//! by `q_i(λ)/‖q_i‖²` yields the predistance family with `‖p_i‖² = p_i(λ)`.
//! All arithmetic is exact, so no square roots are taken.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{int, Polynomial, Rational};
use crate::matrix::{mat_poly_eval, trace_inner_product, MatrixPowerBasis, RationalMatrix};
use crate::minpoly::{hoffman_from_parts, minimal_polynomial, HoffmanError};
use crate::stochastic::{classify, Hypothesis};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PredistanceError {
    #[error("predistance polynomials need {0}")]
    Hypothesis(Hypothesis),
    #[error("λ = 0: the λ-avoiding construction needs λ ≠ 0")]
    LambdaZero,
    #[error("degree {degree} exceeds the dimension of the algebra: q_{degree}(B) = 0")]
    DegreeTooLarge { degree: usize },
    #[error("q_{index} was built with the doubling fallback and is not orthogonal to q_{other}")]
    OrthogonalityLost { index: usize, other: usize },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl From<HoffmanError> for PredistanceError {
    fn from(e: HoffmanError) -> Self {
        match e {
            HoffmanError::Hypothesis(h) => Self::Hypothesis(h),
            HoffmanError::Invariant(msg) => Self::Invariant(msg),
        }
    }
}

/// `⟨p, q⟩ = (1/n)·trace(p(B)·q(B)ᵀ)`.
pub fn poly_inner(p: &Polynomial, q: &Polynomial, b: &RationalMatrix) -> Rational {
    trace_inner_product(&mat_poly_eval(p, b), &mat_poly_eval(q, b)).expect("same order")
}

/// Output of the λ-avoiding Gram–Schmidt process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalSystem {
    /// `q_0..q_d`, `deg q_i = i`, `q_i(λ) ≠ 0`.
    pub polys: Vec<Polynomial>,
    /// `q_i(B)` for each member.
    pub evaluations: Vec<RationalMatrix>,
    /// `‖q_i‖²`.
    pub norms_sq: Vec<Rational>,
    /// Indices where the plain residual vanished at λ and `2t^j − Σ proj` was used instead.
    pub doubled: Vec<usize>,
}

/// Classical Gram–Schmidt on `1, t, …, t^d`. When a residual `r_j` vanishes at
/// λ, the monomial is doubled: `q_j = 2t^j − Σ proj`, giving `q_j(λ) = λ^j`.
pub fn lambda_avoiding_gram_schmidt(
    b: &RationalMatrix,
    lambda: &Rational,
    d: usize,
) -> Result<OrthogonalSystem, PredistanceError> {
    if lambda.is_zero() {
        return Err(PredistanceError::LambdaZero);
    }
    let powers = MatrixPowerBasis::new(b, d);
    let mut sys = OrthogonalSystem { polys: Vec::new(), evaluations: Vec::new(), norms_sq: Vec::new(), doubled: Vec::new() };

    for j in 0..=d {
        let s_mat = &powers.powers()[j];
        let mut projection = Polynomial::zero();
        for ((q, q_mat), norm) in sys.polys.iter().zip(&sys.evaluations).zip(&sys.norms_sq) {
            let c = trace_inner_product(q_mat, s_mat).expect("same order") / norm;
            projection = &projection + &q.scale(&c);
        }
        let s = Polynomial::monomial(Rational::one(), j);
        let mut q = &s - &projection;
        let mut q_mat = powers.eval(&q);
        if q_mat.is_zero() {
            return Err(PredistanceError::DegreeTooLarge { degree: j });
        }
        if q.eval(lambda).is_zero() {
            q = &s.scale(&int(2)) - &projection;
            q_mat = powers.eval(&q);
            sys.doubled.push(j);
        }
        let norm = trace_inner_product(&q_mat, &q_mat).expect("same order");
        sys.polys.push(q);
        sys.evaluations.push(q_mat);
        sys.norms_sq.push(norm);
    }
    Ok(sys)
}

/// The predistance family `p_0..p_d` of `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredistanceBasis {
    pub polys: Vec<Polynomial>,
    pub lambda: Rational,
    /// `‖p_i‖² = p_i(λ)`.
    pub norms_sq: Vec<Rational>,
    /// `p_i(B)`.
    pub evaluations: Vec<RationalMatrix>,
    /// Hoffman polynomial of `B`, from the minimal polynomial.
    pub hoffman: Polynomial,
}

impl PredistanceBasis {
    pub fn d(&self) -> usize {
        self.polys.len() - 1
    }

    /// `Σ p_i`.
    pub fn sum(&self) -> Polynomial {
        self.polys.iter().cloned().sum()
    }
}

/// Builds the predistance family and checks every defining property exactly:
/// degrees, pairwise orthogonality, `‖p_i‖² = p_i(λ) > 0` and `p_0 = 1`.
pub fn predistance_basis(b: &RationalMatrix) -> Result<PredistanceBasis, PredistanceError> {
    let class = classify(b);
    let lambda = class.check_predistance_hypotheses().map_err(PredistanceError::Hypothesis)?;
    let minimal = minimal_polynomial(b);
    let hoffman = hoffman_from_parts(b, &class, &minimal)?;
    let d = minimal.degree() - 1;
    let sys = lambda_avoiding_gram_schmidt(b, &lambda, d)?;

    let mut polys = Vec::with_capacity(d + 1);
    let mut evaluations = Vec::with_capacity(d + 1);
    for ((q, q_mat), norm) in sys.polys.iter().zip(&sys.evaluations).zip(&sys.norms_sq) {
        let c = q.eval(&lambda) / norm;
        polys.push(q.scale(&c));
        evaluations.push(q_mat.scale(&c));
    }

    for i in 0..=d {
        for j in 0..i {
            if !trace_inner_product(&evaluations[i], &evaluations[j]).expect("same order").is_zero() {
                return Err(if sys.doubled.contains(&i) {
                    PredistanceError::OrthogonalityLost { index: i, other: j }
                } else {
                    PredistanceError::Invariant(format!("⟨p_{i}, p_{j}⟩ ≠ 0"))
                });
            }
        }
    }
    let mut norms_sq = Vec::with_capacity(d + 1);
    for (i, (p, p_mat)) in polys.iter().zip(&evaluations).enumerate() {
        let norm = trace_inner_product(p_mat, p_mat).expect("same order");
        let at_lambda = p.eval(&lambda);
        if p.degree() != Some(i) || norm != at_lambda || at_lambda <= Rational::zero() {
            return Err(PredistanceError::Invariant(format!("p_{i} fails deg = i or ‖p_i‖² = p_i(λ) > 0")));
        }
        norms_sq.push(norm);
    }
    if polys[0] != Polynomial::one() {
        return Err(PredistanceError::Invariant("p_0 ≠ 1".into()));
    }

    Ok(PredistanceBasis { polys, lambda, norms_sq, evaluations, hoffman: hoffman.h })
}

/// Checks `Σ p_i(B) = J` by fresh evaluation, and that `Σ p_i` equals the
/// Hoffman polynomial coefficient by coefficient.
pub fn verify_hoffman_sum(basis: &PredistanceBasis, b: &RationalMatrix) -> bool {
    let sum = basis.sum();
    mat_poly_eval(&sum, b) == RationalMatrix::all_ones(b.order()) && sum == basis.hoffman
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::fixtures;

    fn fig2_predistance() -> Vec<Polynomial> {
        vec![
            Polynomial::from_ints(&[1]),
            Polynomial::from_ints(&[-2, 4]),
            Polynomial::from_ints(&[2, -8, 8]),
            Polynomial::from_ints(&[-3, 12, -24, 16]),
        ]
    }

    #[test]
    fn inner_product_examples() {
        let b = fixtures::fig2();
        let one = Polynomial::one();
        assert_eq!(poly_inner(&one, &one, &b), int(1));
        assert_eq!(poly_inner(&one, &one, &fixtures::fig1()), int(1));
        let p = fig2_predistance();
        assert_eq!(poly_inner(&p[1], &p[1], &b), int(2));
        assert_eq!(poly_inner(&p[1], &p[2], &b), int(0));
    }

    #[test]
    fn gram_schmidt_trivial_degree() {
        let sys = lambda_avoiding_gram_schmidt(&fixtures::fig2(), &int(1), 0).unwrap();
        assert_eq!(sys.polys, vec![Polynomial::one()]);
    }

    #[test]
    fn gram_schmidt_avoids_lambda_on_fig2() {
        let b = fixtures::fig2();
        let sys = lambda_avoiding_gram_schmidt(&b, &int(1), 3).unwrap();
        assert_eq!(sys.polys.len(), 4);
        assert!(sys.doubled.is_empty());
        for (i, q) in sys.polys.iter().enumerate() {
            assert_eq!(q.degree(), Some(i));
            assert!(!q.eval(&int(1)).is_zero());
        }
    }

    #[test]
    fn gram_schmidt_on_three_cycle_is_orthogonal() {
        let b = fixtures::cyclic(3, &int(1));
        let sys = lambda_avoiding_gram_schmidt(&b, &int(1), 2).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let v = poly_inner(&sys.polys[i], &sys.polys[j], &b);
                assert_eq!(v.is_zero(), i != j, "({i},{j})");
            }
        }
    }

    #[test]
    fn doubling_fallback_fires_when_residual_vanishes() {
        // ⟨1, t⟩ = trace(B)/n = 1/2 for Fig. 2, so r_1 = t − 1/2 vanishes at 1/2.
        let sys = lambda_avoiding_gram_schmidt(&fixtures::fig2(), &rat(1, 2), 1).unwrap();
        assert_eq!(sys.doubled, vec![1]);
        assert_eq!(sys.polys[1], Polynomial::new(vec![rat(-1, 2), int(2)]));
        assert_eq!(sys.polys[1].eval(&rat(1, 2)), rat(1, 2));
    }

    #[test]
    fn rejects_zero_lambda_and_excess_degree() {
        let b = fixtures::fig2();
        assert_eq!(lambda_avoiding_gram_schmidt(&b, &int(0), 2), Err(PredistanceError::LambdaZero));
        assert_eq!(lambda_avoiding_gram_schmidt(&b, &int(1), 4), Err(PredistanceError::DegreeTooLarge { degree: 4 }));
    }

    #[test]
    fn fig2_predistance_family() {
        let b = fixtures::fig2();
        let basis = predistance_basis(&b).unwrap();
        assert_eq!(basis.polys, fig2_predistance());
        assert_eq!(basis.norms_sq, vec![int(1), int(2), int(2), int(1)]);
        assert!(verify_hoffman_sum(&basis, &b));
        assert_eq!(basis.sum(), Polynomial::from_ints(&[-2, 8, -16, 16]));
    }

    #[test]
    fn complete_graph_family() {
        for n in 2..7 {
            let b = fixtures::complete(n);
            let basis = predistance_basis(&b).unwrap();
            assert_eq!(basis.polys, vec![Polynomial::one(), Polynomial::from_ints(&[0, 1])]);
            assert_eq!(basis.norms_sq[1], int(n as i64 - 1));
        }
    }

    #[test]
    fn averaging_family() {
        for n in 2..7 {
            let basis = predistance_basis(&fixtures::averaging(n)).unwrap();
            assert_eq!(basis.polys[1], Polynomial::from_ints(&[-1, n as i64]));
            assert_eq!(basis.norms_sq[1], basis.polys[1].eval(&int(1)));
        }
    }

    #[test]
    fn one_by_one_family() {
        let b = RationalMatrix::from_int_rows(&[&[5]]);
        let basis = predistance_basis(&b).unwrap();
        assert_eq!(basis.polys, vec![Polynomial::one()]);
        assert!(verify_hoffman_sum(&basis, &b));
    }

    #[test]
    fn hypotheses_are_enforced() {
        assert_eq!(predistance_basis(&fixtures::fig1()), Err(PredistanceError::Hypothesis(Hypothesis::Normal)));
        assert_eq!(
            predistance_basis(&RationalMatrix::identity(2)),
            Err(PredistanceError::Hypothesis(Hypothesis::Irreducible))
        );
    }
}

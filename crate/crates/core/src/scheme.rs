//! Decides whether the polynomial algebra of a normal λ-doubly stochastic
//! irreducible matrix is the Bose–Mesner algebra of a commutative association
//! scheme whose classes are the distance classes of its digraph.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::digraph::{distance_structure, underlying_digraph, DistanceStructure};
use crate::exact::{Polynomial, Rational};
use crate::matrix::RationalMatrix;
use crate::minpoly::{hoffman_from_parts, minimal_polynomial};
use crate::predistance::predistance_basis;
use crate::stochastic::{classify, Hypothesis};

/// Association scheme axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    /// `A_0 = I`.
    AS1,
    /// 0/1 matrices with `Σ A_i = J`.
    AS2,
    /// Transpose closure.
    AS3,
    /// Products expand with nonnegative integer coefficients.
    AS4,
    /// Commutativity.
    AS5,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RejectionReason {
    #[error("NOT_NONNEGATIVE")]
    NotNonnegative,
    #[error("NOT_IRREDUCIBLE")]
    NotIrreducible,
    #[error("NOT_DOUBLY_STOCHASTIC")]
    NotDoublyStochastic,
    #[error("NOT_NORMAL")]
    NotNormal,
    #[error("LAMBDA_ZERO")]
    LambdaZero,
    #[error("EIGENCOUNT_NE_DIAMETER(d = {d}, D = {diameter})")]
    EigencountNeDiameter { d: usize, diameter: usize },
    #[error("AD_NOT_POLYNOMIAL")]
    AdNotPolynomial,
    /// The predistance family could not be built although the hypotheses hold.
    #[error("PREDISTANCE_FAILED({detail})")]
    PredistanceFailed { detail: String },
    #[error("AXIOM_FAILURE({axiom}, {witness:?})")]
    AxiomFailure { axiom: Axiom, witness: Vec<usize> },
}

impl RejectionReason {
    /// Upper-case tag without parameters.
    pub fn code(&self) -> &'static str {
        match self {
            Self::NotNonnegative => "NOT_NONNEGATIVE",
            Self::NotIrreducible => "NOT_IRREDUCIBLE",
            Self::NotDoublyStochastic => "NOT_DOUBLY_STOCHASTIC",
            Self::NotNormal => "NOT_NORMAL",
            Self::LambdaZero => "LAMBDA_ZERO",
            Self::EigencountNeDiameter { .. } => "EIGENCOUNT_NE_DIAMETER",
            Self::AdNotPolynomial => "AD_NOT_POLYNOMIAL",
            Self::PredistanceFailed { .. } => "PREDISTANCE_FAILED",
            Self::AxiomFailure { .. } => "AXIOM_FAILURE",
        }
    }
}

impl From<Hypothesis> for RejectionReason {
    fn from(h: Hypothesis) -> Self {
        match h {
            Hypothesis::Nonnegative => Self::NotNonnegative,
            Hypothesis::Irreducible => Self::NotIrreducible,
            Hypothesis::DoublyStochastic => Self::NotDoublyStochastic,
            Hypothesis::LambdaNonzero => Self::LambdaZero,
            Hypothesis::Normal => Self::NotNormal,
        }
    }
}

/// `p[i][j][h]` with `A_i A_j = Σ_h p[i][j][h] A_h`.
pub type IntersectionTensor = Vec<Vec<Vec<Rational>>>;

/// Outcome of [`detect_scheme`]. Fields are filled as far as the pipeline got;
/// the intersection tensor and transpose map are present only on acceptance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeCertificate {
    pub verdict: Result<(), RejectionReason>,
    pub lambda: Option<Rational>,
    /// Number of distinct eigenvalues minus one.
    pub d: Option<usize>,
    pub diameter: Option<usize>,
    pub hoffman: Option<Polynomial>,
    /// Distance matrices `A_0..A_D`; on acceptance `A_i = p_i(B)`.
    pub class_matrices: Vec<RationalMatrix>,
    /// Predistance polynomials `p_0..p_d`.
    pub generator_polynomials: Vec<Polynomial>,
    pub intersection_numbers: Option<IntersectionTensor>,
    pub transpose_map: Option<Vec<usize>>,
}

impl SchemeCertificate {
    fn empty() -> Self {
        Self {
            verdict: Ok(()),
            lambda: None,
            d: None,
            diameter: None,
            hoffman: None,
            class_matrices: Vec::new(),
            generator_polynomials: Vec::new(),
            intersection_numbers: None,
            transpose_map: None,
        }
    }

    pub fn accepted(&self) -> bool {
        self.verdict.is_ok()
    }

    pub fn reason(&self) -> Option<&RejectionReason> {
        self.verdict.as_ref().err()
    }

    fn reject(mut self, reason: RejectionReason) -> Self {
        self.verdict = Err(reason);
        self
    }
}

/// Runs the full pipeline. Rejection is a value, never an error.
pub fn detect_scheme(b: &RationalMatrix) -> SchemeCertificate {
    let mut cert = SchemeCertificate::empty();
    let class = classify(b);
    cert.lambda = class.lambda.clone();
    let lambda = match class.check_predistance_hypotheses() {
        Ok(l) => l,
        Err(h) => {
            if class.check_hoffman_hypotheses().is_ok() {
                cert.hoffman = hoffman_polynomial_of(b, &class);
            }
            return cert.reject(h.into());
        }
    };

    let ds = match underlying_digraph(b).and_then(|g| distance_structure(&g)) {
        Ok(ds) => ds,
        Err(_) => return cert.reject(RejectionReason::NotIrreducible),
    };
    let minimal = minimal_polynomial(b);
    let d = minimal.degree() - 1;
    let diameter = ds.diameter();
    cert.d = Some(d);
    cert.diameter = Some(diameter);
    cert.class_matrices = ds.classes().to_vec();
    match hoffman_from_parts(b, &class, &minimal) {
        Ok(hp) => cert.hoffman = Some(hp.h),
        Err(e) => return cert.reject(RejectionReason::PredistanceFailed { detail: e.to_string() }),
    }
    if d != diameter {
        return cert.reject(RejectionReason::EigencountNeDiameter { d, diameter });
    }

    let basis = match predistance_basis(b) {
        Ok(basis) => basis,
        Err(e) => return cert.reject(RejectionReason::PredistanceFailed { detail: e.to_string() }),
    };
    debug_assert_eq!(basis.lambda, lambda);
    cert.generator_polynomials = basis.polys.clone();
    if basis.evaluations[diameter] != *ds.class(diameter) {
        return cert.reject(RejectionReason::AdNotPolynomial);
    }
    for (i, (p_mat, a)) in basis.evaluations.iter().zip(ds.classes()).enumerate() {
        if p_mat != a {
            return cert.reject(RejectionReason::AxiomFailure { axiom: Axiom::AS4, witness: vec![i] });
        }
    }

    let classes = ds.classes();
    let transpose = match transpose_map(classes) {
        Ok(t) => t,
        Err(r) => return cert.reject(r),
    };
    let tensor = match intersection_numbers(classes) {
        Ok(t) => t,
        Err(r) => return cert.reject(r),
    };
    if let Some((i, j)) = first_noncommuting(&tensor) {
        return cert.reject(RejectionReason::AxiomFailure { axiom: Axiom::AS5, witness: vec![i, j] });
    }
    cert.transpose_map = Some(transpose);
    cert.intersection_numbers = Some(tensor);
    cert
}

fn hoffman_polynomial_of(b: &RationalMatrix, class: &crate::stochastic::MatrixClassification) -> Option<Polynomial> {
    hoffman_from_parts(b, class, &minimal_polynomial(b)).ok().map(|hp| hp.h)
}

fn first_noncommuting(tensor: &IntersectionTensor) -> Option<(usize, usize)> {
    let k = tensor.len();
    (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).find(|&(i, j)| tensor[i][j] != tensor[j][i])
}

/// AS1 and AS2: 0/1 matrices of one order, `A_0 = I`, disjoint supports summing to `J`.
pub fn check_partition(classes: &[RationalMatrix]) -> Result<(), RejectionReason> {
    let Some(first) = classes.first() else {
        return Err(RejectionReason::AxiomFailure { axiom: Axiom::AS1, witness: vec![] });
    };
    let n = first.order();
    if *first != RationalMatrix::identity(n) {
        return Err(RejectionReason::AxiomFailure { axiom: Axiom::AS1, witness: vec![0] });
    }
    let mut sum = RationalMatrix::zeros(n);
    for (i, a) in classes.iter().enumerate() {
        if a.order() != n || !a.is_zero_one() || a.is_zero() {
            return Err(RejectionReason::AxiomFailure { axiom: Axiom::AS2, witness: vec![i] });
        }
        sum = &sum + a;
    }
    if sum != RationalMatrix::all_ones(n) {
        return Err(RejectionReason::AxiomFailure { axiom: Axiom::AS2, witness: vec![] });
    }
    Ok(())
}

/// Reads each `p^h_{ij}` from one entry of `A_iA_j` inside the support of
/// `A_h`, asserts constancy over that support, nonnegative integrality, and
/// the exact expansion `A_iA_j = Σ_h p^h_{ij} A_h`.
pub fn intersection_numbers(classes: &[RationalMatrix]) -> Result<IntersectionTensor, RejectionReason> {
    check_partition(classes)?;
    let n = classes[0].order();
    let supports: Vec<Vec<(usize, usize)>> = classes
        .iter()
        .map(|a| (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| !a.get(x, y).is_zero()).collect())
        .collect();
    let k = classes.len();
    let mut tensor = vec![vec![Vec::with_capacity(k); k]; k];
    for i in 0..k {
        for j in 0..k {
            let product = &classes[i] * &classes[j];
            let mut expansion = RationalMatrix::zeros(n);
            for h in 0..k {
                let fail = || RejectionReason::AxiomFailure { axiom: Axiom::AS4, witness: vec![i, j, h] };
                let (x0, y0) = supports[h][0];
                let value = product.get(x0, y0).clone();
                if supports[h].iter().any(|&(x, y)| *product.get(x, y) != value) {
                    return Err(fail());
                }
                if !value.is_integer() || value.is_negative() {
                    return Err(fail());
                }
                expansion = expansion.add_scaled(&value, &classes[h]).expect("same order");
                tensor[i][j].push(value);
            }
            if expansion != product {
                return Err(RejectionReason::AxiomFailure { axiom: Axiom::AS4, witness: vec![i, j] });
            }
        }
    }
    Ok(tensor)
}

/// `i ↦ i′` with `A_iᵀ = A_{i′}`.
pub fn transpose_map(classes: &[RationalMatrix]) -> Result<Vec<usize>, RejectionReason> {
    check_partition(classes)?;
    classes
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let t = a.transpose();
            classes
                .iter()
                .position(|c| *c == t)
                .ok_or(RejectionReason::AxiomFailure { axiom: Axiom::AS3, witness: vec![i] })
        })
        .collect()
}

/// For every `j` with `D − j − 1 ≥ 2`, checks `(A_{D−j}Bᵀ)_{xy} = 0` whenever
/// `∂(x, y) < D − j − 1`. Vacuously true for `D ≤ 2`.
pub fn vanishing_product_check(b: &RationalMatrix, ds: &DistanceStructure) -> bool {
    let diameter = ds.diameter();
    let n = b.order();
    let bt = b.transpose();
    (0..diameter.saturating_sub(2)).all(|j| {
        let bound = diameter - j - 1;
        let product = ds.class(diameter - j) * &bt;
        (0..n).all(|x| (0..n).all(|y| ds.distance(x, y) >= bound || product.get(x, y).is_zero()))
    })
}

/// Every class matrix of `cert` has all its pairs at a single distance.
pub fn class_distance_constancy(cert: &SchemeCertificate, ds: &DistanceStructure) -> bool {
    partition_distance_constancy(&cert.class_matrices, ds)
}

/// As [`class_distance_constancy`] for an arbitrary family of 0/1 matrices.
pub fn partition_distance_constancy(classes: &[RationalMatrix], ds: &DistanceStructure) -> bool {
    let n = ds.order();
    classes.iter().all(|a| {
        let mut seen = None;
        (0..n).all(|x| {
            (0..n).all(|y| {
                if a.get(x, y).is_zero() {
                    return true;
                }
                let d = ds.distance(x, y);
                *seen.get_or_insert(d) == d
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Digraph;
    use crate::exact::{int, rat};
    use crate::fixtures;

    fn fig2_predistance() -> Vec<Polynomial> {
        vec![
            Polynomial::from_ints(&[1]),
            Polynomial::from_ints(&[-2, 4]),
            Polynomial::from_ints(&[2, -8, 8]),
            Polynomial::from_ints(&[-3, 12, -24, 16]),
        ]
    }

    fn indicator(k: usize, h: usize, i: usize, j: usize) -> Rational {
        int(i64::from(h == (i + j) % k))
    }

    #[test]
    fn fig2_is_accepted() {
        let b = fixtures::fig2();
        let cert = detect_scheme(&b);
        assert!(cert.accepted(), "{:?}", cert.verdict);
        assert_eq!(cert.d, Some(3));
        assert_eq!(cert.diameter, Some(3));
        assert_eq!(cert.generator_polynomials, fig2_predistance());
        assert_eq!(cert.hoffman, Some(Polynomial::from_ints(&[-2, 8, -16, 16])));
        let tensor = cert.intersection_numbers.unwrap();
        assert_eq!(tensor.len(), 4);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(tensor[i][j], tensor[j][i]);
                assert!(tensor[i][j].iter().all(|v| v.is_integer() && !v.is_negative()));
            }
        }
        // p^0_{i i'} is the valency of class i
        let map = cert.transpose_map.unwrap();
        for i in 0..4 {
            let valency = cert.class_matrices[i].row_sums()[0].clone();
            assert_eq!(tensor[i][map[i]][0], valency);
        }
    }

    #[test]
    fn fig2_transpose_map_by_direct_comparison() {
        let cert = detect_scheme(&fixtures::fig2());
        let map = cert.transpose_map.unwrap();
        for (i, &t) in map.iter().enumerate() {
            assert_eq!(cert.class_matrices[i].transpose(), cert.class_matrices[t]);
        }
        assert_eq!(map[0], 0);
    }

    #[test]
    fn fig1_is_not_normal() {
        let cert = detect_scheme(&fixtures::fig1());
        assert_eq!(cert.reason(), Some(&RejectionReason::NotNormal));
        assert!(cert.hoffman.is_some());
    }

    #[test]
    fn cycles_give_cyclic_group_schemes() {
        for n in 3..9 {
            let lambda = rat(3, 2);
            let b = fixtures::cyclic(n, &lambda);
            let cert = detect_scheme(&b);
            assert!(cert.accepted(), "n = {n}: {:?}", cert.verdict);
            assert_eq!(cert.d, Some(n - 1));
            let tensor = cert.intersection_numbers.unwrap();
            for i in 0..n {
                assert_eq!(cert.class_matrices[i], b.pow(i).scale(&(int(1) / num_traits::pow(lambda.clone(), i))));
                for j in 0..n {
                    for h in 0..n {
                        assert_eq!(tensor[i][j][h], indicator(n, h, i, j));
                    }
                }
            }
            let map = cert.transpose_map.unwrap();
            assert!((0..n).all(|i| map[i] == (n - i) % n));
        }
    }

    #[test]
    fn trivial_scheme_numbers() {
        for n in 2..7 {
            let cert = detect_scheme(&fixtures::complete(n));
            assert!(cert.accepted());
            let t = cert.intersection_numbers.unwrap();
            assert_eq!(t[1][1][0], int(n as i64 - 1));
            assert_eq!(t[1][1][1], int(n as i64 - 2));
            assert_eq!(cert.transpose_map, Some(vec![0, 1]));
        }
    }

    #[test]
    fn averaging_matrix_with_loops_is_trivial_scheme() {
        let cert = detect_scheme(&fixtures::averaging(5));
        assert!(cert.accepted());
        assert_eq!(cert.d, Some(1));
        assert_eq!(cert.generator_polynomials, vec![Polynomial::one(), Polynomial::from_ints(&[-1, 5])]);
    }

    #[test]
    fn one_by_one_is_zero_class_scheme() {
        let cert = detect_scheme(&RationalMatrix::from_int_rows(&[&[2]]));
        assert!(cert.accepted());
        assert_eq!(cert.intersection_numbers, Some(vec![vec![vec![int(1)]]]));
    }

    #[test]
    fn hypothesis_rejections() {
        let cases: Vec<(RationalMatrix, RejectionReason)> = vec![
            (RationalMatrix::from_int_rows(&[&[2, -1], &[-1, 2]]), RejectionReason::NotNonnegative),
            (RationalMatrix::identity(2), RejectionReason::NotIrreducible),
            (RationalMatrix::from_int_rows(&[&[1, 1], &[1, 0]]), RejectionReason::NotDoublyStochastic),
            (RationalMatrix::zeros(1), RejectionReason::LambdaZero),
        ];
        for (b, reason) in cases {
            assert_eq!(detect_scheme(&b).reason(), Some(&reason));
        }
    }

    #[test]
    fn eigencount_mismatch() {
        // I + C_4 + C_4²: digraph diameter 2 but four distinct eigenvalues
        let c = fixtures::cyclic(4, &int(1));
        let b = &(&RationalMatrix::identity(4) + &c) + &c.pow(2);
        let cert = detect_scheme(&b);
        assert_eq!(cert.reason(), Some(&RejectionReason::EigencountNeDiameter { d: 3, diameter: 2 }));
    }

    #[test]
    fn unequal_weights_leave_ad_outside_the_algebra() {
        let cert = detect_scheme(&fixtures::two_weight_prism());
        assert_eq!((cert.d, cert.diameter), (Some(2), Some(2)));
        assert_eq!(cert.reason(), Some(&RejectionReason::AdNotPolynomial));
        assert_eq!(cert.generator_polynomials.len(), 3);
    }

    #[test]
    fn intersection_numbers_detect_broken_partition() {
        let n = 4;
        let i = RationalMatrix::identity(n);
        let j = RationalMatrix::all_ones(n);
        assert!(matches!(
            intersection_numbers(&[j.clone()]),
            Err(RejectionReason::AxiomFailure { axiom: Axiom::AS1, .. })
        ));
        assert!(matches!(
            intersection_numbers(&[i.clone(), &j - &(&i + &i)]),
            Err(RejectionReason::AxiomFailure { axiom: Axiom::AS2, .. })
        ));
        // path 0-1-2-3 adjacency and its complement: not an association scheme
        let path = Digraph::from_arcs(4, &[(0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2)]).adjacency_matrix();
        let rest = &(&j - &i) - &path;
        assert!(matches!(
            intersection_numbers(&[i.clone(), path.clone(), rest]),
            Err(RejectionReason::AxiomFailure { axiom: Axiom::AS4, .. })
        ));
    }

    #[test]
    fn transpose_map_failure() {
        let i = RationalMatrix::identity(3);
        let upper = RationalMatrix::from_int_rows(&[&[0, 1, 1], &[0, 0, 1], &[0, 0, 0]]);
        let lower = &(&RationalMatrix::all_ones(3) - &i) - &upper;
        assert_eq!(transpose_map(&[i.clone(), upper.clone(), lower.clone()]), Ok(vec![0, 2, 1]));
        let mixed_a = RationalMatrix::from_int_rows(&[&[0, 1, 0], &[0, 0, 1], &[0, 1, 0]]);
        let mixed_b = &(&RationalMatrix::all_ones(3) - &i) - &mixed_a;
        assert!(matches!(
            transpose_map(&[i, mixed_a, mixed_b]),
            Err(RejectionReason::AxiomFailure { axiom: Axiom::AS3, .. })
        ));
    }

    #[test]
    fn vanishing_products() {
        let b = fixtures::fig2();
        let ds = distance_structure(&underlying_digraph(&b).unwrap()).unwrap();
        assert!(vanishing_product_check(&b, &ds));
        for n in 5..8 {
            let b = fixtures::cyclic(n, &int(1));
            let ds = distance_structure(&underlying_digraph(&b).unwrap()).unwrap();
            assert!(vanishing_product_check(&b, &ds));
        }
        let b = fixtures::complete(4);
        let ds = distance_structure(&underlying_digraph(&b).unwrap()).unwrap();
        assert!(vanishing_product_check(&b, &ds));
    }

    #[test]
    fn distance_constancy() {
        let b = fixtures::fig2();
        let cert = detect_scheme(&b);
        let ds = distance_structure(&underlying_digraph(&b).unwrap()).unwrap();
        assert!(class_distance_constancy(&cert, &ds));

        let b = fixtures::cyclic(5, &int(1));
        let ds = distance_structure(&underlying_digraph(&b).unwrap()).unwrap();
        assert!(class_distance_constancy(&detect_scheme(&b), &ds));
        // swap one pair between classes 1 and 2
        let mut a1 = ds.class(1).clone();
        let mut a2 = ds.class(2).clone();
        a1.set(0, 1, int(0));
        a1.set(0, 2, int(1));
        a2.set(0, 2, int(0));
        a2.set(0, 1, int(1));
        let mut classes = ds.classes().to_vec();
        classes[1] = a1;
        classes[2] = a2;
        assert!(!partition_distance_constancy(&classes, &ds));
    }

    #[test]
    fn perturbation_rejects() {
        let mut b = fixtures::fig2();
        b.set(0, 0, rat(3, 4));
        assert_eq!(detect_scheme(&b).reason(), Some(&RejectionReason::NotDoublyStochastic));
    }

    #[test]
    fn reason_serializes_with_tag() {
        let r = RejectionReason::EigencountNeDiameter { d: 3, diameter: 2 };
        assert_eq!(r.to_string(), "EIGENCOUNT_NE_DIAMETER(d = 3, D = 2)");
        assert_eq!(r.code(), "EIGENCOUNT_NE_DIAMETER");
    }
}

//! Classification of an input matrix (nonnegativity, common line sum λ,
//! normality, irreducibility), its decomposition by distinct entry values,
//! and seeded generators of λ-doubly stochastic instances.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::digraph::{is_strongly_connected, support_digraph};
use crate::exact::{rat, Rational};
use crate::matrix::RationalMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixClassification {
    pub order: usize,
    pub nonnegative: bool,
    /// Common value of all row and column sums, when they agree.
    pub lambda: Option<Rational>,
    pub normal: bool,
    pub irreducible: bool,
}

impl MatrixClassification {
    /// Nonnegative with all 2n line sums equal.
    pub fn is_lambda_doubly_stochastic(&self) -> bool {
        self.nonnegative && self.lambda.is_some()
    }

    /// Hypotheses under which a Hoffman polynomial exists and is usable:
    /// λ-doubly stochastic, irreducible and λ ≠ 0.
    pub fn check_hoffman_hypotheses(&self) -> Result<Rational, Hypothesis> {
        if !self.nonnegative {
            return Err(Hypothesis::Nonnegative);
        }
        if !self.irreducible {
            return Err(Hypothesis::Irreducible);
        }
        let lambda = self.lambda.clone().ok_or(Hypothesis::DoublyStochastic)?;
        if lambda.is_zero() {
            return Err(Hypothesis::LambdaNonzero);
        }
        Ok(lambda)
    }

    /// Hoffman hypotheses plus normality.
    pub fn check_predistance_hypotheses(&self) -> Result<Rational, Hypothesis> {
        let lambda = self.check_hoffman_hypotheses()?;
        if !self.normal {
            return Err(Hypothesis::Normal);
        }
        Ok(lambda)
    }
}

/// A hypothesis on the input matrix that failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, thiserror::Error)]
pub enum Hypothesis {
    #[error("matrix has a negative entry")]
    Nonnegative,
    #[error("matrix is not irreducible")]
    Irreducible,
    #[error("row and column sums are not all equal")]
    DoublyStochastic,
    #[error("common line sum λ is zero")]
    LambdaNonzero,
    #[error("matrix is not normal")]
    Normal,
}

/// Computes every flag exactly. Irreducibility is read from the nonzero pattern,
/// which for a nonnegative matrix is its underlying digraph.
pub fn classify(b: &RationalMatrix) -> MatrixClassification {
    let rows = b.row_sums();
    let cols = b.column_sums();
    let first = rows[0].clone();
    let lambda = rows.iter().chain(&cols).all(|s| *s == first).then_some(first);
    MatrixClassification {
        order: b.order(),
        nonnegative: b.is_nonnegative(),
        lambda,
        normal: b.is_normal(),
        irreducible: is_strongly_connected(&support_digraph(b)),
    }
}

/// `B = Σ c_i F_i` with distinct positive `c_i` (ascending) and 0/1 indicator
/// matrices `F_i` of pairwise disjoint support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryDecomposition {
    pub coefficients: Vec<Rational>,
    pub indicators: Vec<RationalMatrix>,
}

impl EntryDecomposition {
    pub fn reconstruct(&self) -> Option<RationalMatrix> {
        let n = self.indicators.first()?.order();
        Some(
            self.coefficients
                .iter()
                .zip(&self.indicators)
                .fold(RationalMatrix::zeros(n), |acc, (c, f)| acc.add_scaled(c, f).expect("same order")),
        )
    }
}

/// Groups the positions of `B` by distinct nonzero value. Intended for
/// nonnegative input; negative values would simply form their own groups.
pub fn entry_decomposition(b: &RationalMatrix) -> EntryDecomposition {
    let n = b.order();
    let mut groups: BTreeMap<&Rational, Vec<usize>> = BTreeMap::new();
    for (k, v) in b.entries().iter().enumerate() {
        if !v.is_zero() {
            groups.entry(v).or_default().push(k);
        }
    }
    let mut coefficients = Vec::with_capacity(groups.len());
    let mut indicators = Vec::with_capacity(groups.len());
    for (value, positions) in groups {
        let mut f = RationalMatrix::zeros(n);
        for k in positions {
            f.set(k / n, k % n, Rational::one());
        }
        coefficients.push(value.clone());
        indicators.push(f);
    }
    EntryDecomposition { coefficients, indicators }
}

fn random_coefficient(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(1..=9), rng.gen_range(1..=6))
}

/// A convex-style combination `Σ c_i P_i` of permutation matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationSum {
    pub coefficients: Vec<Rational>,
    pub permutations: Vec<Vec<usize>>,
}

impl PermutationSum {
    /// Random positive rationals `c_i` and uniformly random permutations;
    /// deterministic in `seed`.
    pub fn random(n: usize, k: usize, seed: u64) -> Self {
        assert!(n >= 1 && k >= 1, "need n ≥ 1 and k ≥ 1");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut coefficients = Vec::with_capacity(k);
        let mut permutations = Vec::with_capacity(k);
        for _ in 0..k {
            coefficients.push(random_coefficient(&mut rng));
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            permutations.push(perm);
        }
        Self { coefficients, permutations }
    }

    pub fn lambda(&self) -> Rational {
        self.coefficients.iter().sum()
    }

    pub fn matrix(&self) -> RationalMatrix {
        let n = self.permutations[0].len();
        self.coefficients.iter().zip(&self.permutations).fold(RationalMatrix::zeros(n), |acc, (c, p)| {
            acc.add_scaled(c, &RationalMatrix::permutation(p)).expect("same order")
        })
    }
}

/// `Σ_{i<k} c_i P_i` for random permutation matrices `P_i` and random positive
/// rationals `c_i`; the result is λ-doubly stochastic with `λ = Σ c_i`.
/// Deterministic in `seed`.
pub fn random_lambda_ds(n: usize, k: usize, seed: u64) -> RationalMatrix {
    PermutationSum::random(n, k, seed).matrix()
}

/// `Σ_{i<k} c_i P^{e_i}` for one random permutation `P` and random exponents.
/// All terms lie in the commutative algebra of `P` together with their
/// transposes, so the result is normal as well as λ-doubly stochastic.
pub fn random_normal_lambda_ds(n: usize, k: usize, seed: u64) -> RationalMatrix {
    assert!(n >= 1 && k >= 1, "need n ≥ 1 and k ≥ 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let p = RationalMatrix::permutation(&perm);
    let mut b = RationalMatrix::zeros(n);
    for _ in 0..k {
        let c = random_coefficient(&mut rng);
        let e = rng.gen_range(0..n.max(2));
        b = b.add_scaled(&c, &p.pow(e)).expect("same order");
    }
    b
}

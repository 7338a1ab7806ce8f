//! Dense square matrices over exact rationals, polynomial evaluation in a
//! matrix, the normalized trace inner product, and exact membership tests in
//! the algebra spanned by the powers of a matrix.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{common_denominator, int, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("matrix order must be positive")]
    EmptyMatrix,
    #[error("expected {expected} entries for a square matrix, found {found}")]
    NotSquare { expected: usize, found: usize },
}

/// Square matrix, row-major, indexed by `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    order: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let order = rows.len();
        if order == 0 {
            return Err(MatrixError::EmptyMatrix);
        }
        let mut entries = Vec::with_capacity(order * order);
        for row in rows {
            if row.len() != order {
                return Err(MatrixError::NotSquare { expected: order, found: row.len() });
            }
            entries.extend(row);
        }
        Ok(Self { order, entries })
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        assert!(order > 0, "matrix order must be positive");
        let entries = (0..order * order).map(|k| f(k / order, k % order)).collect();
        Self { order, entries }
    }

    /// Integer matrix from nested literal rows; panics if ragged.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
            .expect("ragged literal matrix")
    }

    pub fn zeros(order: usize) -> Self {
        Self::from_fn(order, |_, _| Rational::zero())
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |x, y| if x == y { Rational::one() } else { Rational::zero() })
    }

    pub fn all_ones(order: usize) -> Self {
        Self::from_fn(order, |_, _| Rational::one())
    }

    /// Permutation matrix with a 1 at `(x, perm[x])`.
    pub fn permutation(perm: &[usize]) -> Self {
        Self::from_fn(perm.len(), |x, y| if perm[x] == y { Rational::one() } else { Rational::zero() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, x: usize, y: usize) -> &Rational {
        &self.entries[x * self.order + y]
    }

    pub fn set(&mut self, x: usize, y: usize, value: Rational) {
        self.entries[x * self.order + y] = value;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, x: usize) -> &[Rational] {
        &self.entries[x * self.order..(x + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.order)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, |x, y| self.get(y, x).clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { order: self.order, entries: self.entries.iter().map(|v| v * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|v| !v.is_negative())
    }

    /// True when every entry is 0 or 1.
    pub fn is_zero_one(&self) -> bool {
        self.entries.iter().all(|v| v.is_zero() || v.is_one())
    }

    pub fn trace(&self) -> Rational {
        (0..self.order).map(|x| self.get(x, x).clone()).sum()
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        self.rows().map(|r| r.iter().sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<Rational> {
        (0..self.order).map(|y| (0..self.order).map(|x| self.get(x, y).clone()).sum()).collect()
    }

    fn check_order(&self, other: &Self) -> Result<(), MatrixError> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(MatrixError::OrderMismatch { left: self.order, right: other.order })
        }
    }

    /// Exact product. Each entry is accumulated over a common denominator
    /// before a single reduction.
    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_order(other)?;
        let n = self.order;
        let other_t = other.transpose();
        let mut entries = Vec::with_capacity(n * n);
        for x in 0..n {
            let row = self.row(x);
            for y in 0..n {
                entries.push(dot(row, other_t.row(y)));
            }
        }
        Ok(Self { order: n, entries })
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_order(other)?;
        Ok(Self {
            order: self.order,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_order(other)?;
        Ok(Self {
            order: self.order,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_order(other)?;
        Ok(Self {
            order: self.order,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        })
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, c: &Rational, other: &Self) -> Result<Self, MatrixError> {
        self.check_order(other)?;
        Ok(Self {
            order: self.order,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + c * b).collect(),
        })
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::identity(self.order), |acc, _| &acc * self)
    }

    /// Whether `self` commutes with its transpose.
    pub fn is_normal(&self) -> bool {
        let t = self.transpose();
        self * &t == &t * self
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let den = common_denominator(a.iter().chain(b.iter()));
    let mut num = BigInt::zero();
    for (u, v) in a.iter().zip(b) {
        if u.is_zero() || v.is_zero() {
            continue;
        }
        let su = u.numer() * (&den / u.denom());
        let sv = v.numer() * (&den / v.denom());
        num += su * sv;
    }
    Rational::new(num, &den * &den)
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        RationalMatrix::mul(self, rhs).expect("matrix order mismatch")
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;
    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        RationalMatrix::add(self, rhs).expect("matrix order mismatch")
    }
}

impl Sub for &RationalMatrix {
    type Output = RationalMatrix;
    fn sub(self, rhs: &RationalMatrix) -> RationalMatrix {
        RationalMatrix::sub(self, rhs).expect("matrix order mismatch")
    }
}

/// `p(B)` by Horner's rule; the zero polynomial maps to the zero matrix and
/// the constant term multiplies the identity.
pub fn mat_poly_eval(p: &Polynomial, b: &RationalMatrix) -> RationalMatrix {
    let n = b.order();
    let mut acc = RationalMatrix::zeros(n);
    for c in p.coeffs().iter().rev() {
        acc = &acc * b;
        for x in 0..n {
            let v = acc.get(x, x) + c;
            acc.set(x, x, v);
        }
    }
    acc
}

/// `(1/n)·trace(M·Nᵀ)`, computed as the normalized sum of the Hadamard product.
/// Conjugation is the identity on rational data.
pub fn trace_inner_product(m: &RationalMatrix, n: &RationalMatrix) -> Result<Rational, MatrixError> {
    m.check_order(n)?;
    let order = Rational::from_integer(BigInt::from(m.order()));
    Ok(dot(&m.entries, &n.entries) / order)
}

/// The powers `I, B, …, B^k` of a matrix, built incrementally.
#[derive(Debug, Clone)]
pub struct MatrixPowerBasis {
    powers: Vec<RationalMatrix>,
}

impl MatrixPowerBasis {
    pub fn new(b: &RationalMatrix, max_degree: usize) -> Self {
        let mut basis = Self { powers: vec![RationalMatrix::identity(b.order())] };
        basis.extend_to(b, max_degree);
        basis
    }

    pub(crate) fn from_powers(powers: Vec<RationalMatrix>) -> Self {
        assert!(!powers.is_empty(), "power basis needs at least I");
        Self { powers }
    }

    /// Appends powers until `B^max_degree` is present. `b` must be the matrix
    /// this basis was started from.
    pub fn extend_to(&mut self, b: &RationalMatrix, max_degree: usize) {
        while self.powers.len() <= max_degree {
            let next = b * self.powers.last().expect("basis always holds I");
            self.powers.push(next);
        }
    }

    pub fn powers(&self) -> &[RationalMatrix] {
        &self.powers
    }

    pub fn max_degree(&self) -> usize {
        self.powers.len() - 1
    }

    /// `Σ c_k B^k` for the coefficients of `p`; `p` must not exceed the basis degree.
    pub fn eval(&self, p: &Polynomial) -> RationalMatrix {
        let n = self.powers[0].order();
        assert!(
            p.degree().map_or(true, |d| d <= self.max_degree()),
            "polynomial degree exceeds the power basis"
        );
        let mut acc = RationalMatrix::zeros(n);
        for (c, power) in p.coeffs().iter().zip(&self.powers) {
            if !c.is_zero() {
                acc = acc.add_scaled(c, power).expect("orders agree");
            }
        }
        acc
    }

    /// Vectorized powers `vec(B^0..=B^k)`, one column per power.
    pub fn vectorized(&self, upto: usize) -> Vec<&[Rational]> {
        self.powers[..=upto].iter().map(RationalMatrix::entries).collect()
    }
}

/// Coefficients `c_0..c_k` with `M = Σ c_k B^k` over the powers held by `basis`,
/// or `None` when `M` lies outside their span.
pub fn algebra_membership(m: &RationalMatrix, basis: &MatrixPowerBasis) -> Option<Polynomial> {
    if m.order() != basis.powers[0].order() {
        return None;
    }
    let columns = basis.vectorized(basis.max_degree());
    solve_columns(&columns, m.entries()).map(Polynomial::new)
}

/// Solves `Σ_k x_k·columns[k] = rhs` exactly. Free unknowns are set to zero.
///
/// Each equation is scaled to integers and reduced with single-step
/// fraction-free (Bareiss) elimination; the pivot is the first nonzero entry
/// in column order.
pub fn solve_columns(columns: &[&[Rational]], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let unknowns = columns.len();
    let rows = rhs.len();
    debug_assert!(columns.iter().all(|c| c.len() == rows));

    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| {
            let row: Vec<&Rational> = columns.iter().map(|c| &c[r]).chain(std::iter::once(&rhs[r])).collect();
            let den = common_denominator(row.iter().copied());
            row.iter().map(|v| v.numer() * (&den / v.denom())).collect()
        })
        .collect();

    let echelon = bareiss_echelon(&mut a, unknowns + 1);
    // Consistency: a pivot in the right-hand-side column means 0 = nonzero.
    if echelon.pivots.last().is_some_and(|&(_, c)| c == unknowns) {
        return None;
    }

    let mut x = vec![Rational::zero(); unknowns];
    for &(r, c) in echelon.pivots.iter().rev() {
        let mut acc = Rational::from_integer(a[r][unknowns].clone());
        for k in c + 1..unknowns {
            if !a[r][k].is_zero() {
                acc -= Rational::from_integer(a[r][k].clone()) * &x[k];
            }
        }
        x[c] = acc / Rational::from_integer(a[r][c].clone());
    }
    Some(x)
}

/// Rank of the column set over ℚ.
pub fn column_rank(columns: &[&[Rational]]) -> usize {
    let Some(first) = columns.first() else { return 0 };
    let rows = first.len();
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| {
            let den = common_denominator(columns.iter().map(|c| &c[r]));
            columns.iter().map(|c| c[r].numer() * (&den / c[r].denom())).collect()
        })
        .collect();
    bareiss_echelon(&mut a, columns.len()).pivots.len()
}

struct Echelon {
    /// `(row, column)` of each pivot, in elimination order.
    pivots: Vec<(usize, usize)>,
}

/// In-place fraction-free row echelon form over the first `width` columns.
/// Every division is exact by Sylvester's identity.
fn bareiss_echelon(a: &mut [Vec<BigInt>], width: usize) -> Echelon {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..width {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in r + 1..rows {
            let factor = a[i][c].clone();
            for j in c + 1..width {
                let v = (&pivot * &a[i][j] - &factor * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = pivot;
        pivots.push((r, c));
        r += 1;
    }
    Echelon { pivots }
}

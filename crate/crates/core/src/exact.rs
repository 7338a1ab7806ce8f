//! Exact rationals and dense univariate polynomials over them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse `{0}` as an exact rational")]
    InvalidToken(String),
    #[error("{root} is not a root: synthetic division leaves remainder {remainder}")]
    NonzeroRemainder { root: Rational, remainder: Rational },
}

/// Builds the canonical rational `num/den`.
pub fn rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational, ExactError> {
    let den = den.into();
    if den.is_zero() {
        return Err(ExactError::ZeroDenominator);
    }
    Ok(BigRational::new(num.into(), den))
}

/// Shorthand for small literals in tests and fixtures. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    rational(num, den).expect("literal rational with zero denominator")
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses an integer (`-3`), a fraction (`2/3`) or a decimal literal (`0.25`).
/// Decimals are converted exactly: `0.25` becomes `1/4`.
pub fn parse_rational(token: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::InvalidToken(token.to_string());
    let t = token.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = parse_integer(n).ok_or_else(bad)?;
        let d = parse_integer(d).ok_or_else(bad)?;
        return rational(n, d);
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let (negative, whole) = match whole.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, whole.strip_prefix('+').unwrap_or(whole)),
        };
        let digits_ok = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
        if !digits_ok(whole) || !digits_ok(frac) || (whole.is_empty() && frac.is_empty()) {
            return Err(bad());
        }
        let mut num: BigInt = if whole.is_empty() { BigInt::zero() } else { whole.parse().map_err(|_| bad())? };
        let mut den = BigInt::one();
        for b in frac.bytes() {
            num = num * 10 + BigInt::from(b - b'0');
            den *= 10;
        }
        if negative {
            num = -num;
        }
        return rational(num, den);
    }
    parse_integer(t).map(Rational::from_integer).ok_or_else(bad)
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Dense polynomial with rational coefficients in ascending degree order.
/// Trailing zeros are never stored, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `c·t^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The monic linear factor `t − root`.
    pub fn linear(root: &Rational) -> Self {
        Self::new(vec![-root.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lead) => self.scale(&lead.recip()),
            None => Self::zero(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Synthetic division by `t − root`. Fails unless the remainder is exactly zero.
    pub fn divide_linear(&self, root: &Rational) -> Result<Self, ExactError> {
        let (quotient, remainder) = self.divide_linear_rem(root);
        if remainder.is_zero() {
            Ok(quotient)
        } else {
            Err(ExactError::NonzeroRemainder { root: root.clone(), remainder })
        }
    }

    fn divide_linear_rem(&self, root: &Rational) -> (Self, Rational) {
        if self.coeffs.is_empty() {
            return (Self::zero(), Rational::zero());
        }
        let n = self.coeffs.len();
        let mut quotient = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for k in (0..n).rev() {
            let value = &self.coeffs[k] + &carry * root;
            if k == 0 {
                return (Self::new(quotient), value);
            }
            quotient[k - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }

    /// Euclidean division. Panics when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree().filter(|&sd| sd >= dd) else {
            return (Self::zero(), self.clone());
        };
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for k in (dd..=sd).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let factor = &rem[k] / &lead;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &factor * c;
            }
            quot[k - dd] = factor;
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free factorization (Yun): pairs `(f_k, k)` with `self = c·Π f_k^k`,
    /// each `f_k` monic, square-free and pairwise coprime. Constant factors are dropped.
    pub fn squarefree_factors(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = &c - &b.derivative();
        let mut k = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), k));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = &c - &b.derivative();
            k += 1;
        }
        out
    }

    /// Space-separated ascending coefficients, `c0 c1 c2 ...`.
    pub fn ascending_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for Polynomial {
    /// Human form, e.g. `16t^3 - 16t^2 + 8t - 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = k == 0 || !magnitude.is_one();
            if show_coeff {
                if magnitude.is_integer() || k == 0 {
                    write!(f, "{magnitude}")?;
                } else {
                    write!(f, "({magnitude})")?;
                }
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |acc, p| &acc + &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalize_examples() {
        assert_eq!(rational(2, 4).unwrap(), rat(1, 2));
        let r = rational(-3, -9).unwrap();
        assert_eq!((r.numer().clone(), r.denom().clone()), (BigInt::from(1), BigInt::from(3)));
        let z = rational(0, 7).unwrap();
        assert_eq!((z.numer().clone(), z.denom().clone()), (BigInt::from(0), BigInt::from(1)));
        assert_eq!(rational(1, 0), Err(ExactError::ZeroDenominator));
    }

    #[test]
    fn parses_tokens_exactly() {
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("2/3").unwrap(), rat(2, 3));
        assert_eq!(parse_rational("-4/-6").unwrap(), rat(2, 3));
        assert_eq!(parse_rational("17").unwrap(), int(17));
        for bad in ["", "a", "1/0", "1.2.3", "1/", "--1", ".", "0x10", "1e3"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn eval_examples() {
        let h = Polynomial::from_ints(&[-2, 8, -16, 16]);
        assert_eq!(h.eval(&int(1)), int(6));
        assert_eq!(Polynomial::zero().eval(&rat(7, 3)), int(0));
        assert_eq!(Polynomial::from_ints(&[-2, 4]).eval(&rat(1, 2)), int(0));
    }

    #[test]
    fn divide_linear_examples() {
        let m = Polynomial::from_ints(&[-1, 0, 1]);
        assert_eq!(m.divide_linear(&int(1)).unwrap(), Polynomial::from_ints(&[1, 1]));
        let cube = Polynomial::from_ints(&[0, 0, 0, 1]);
        assert_eq!(cube.divide_linear(&int(0)).unwrap(), Polynomial::from_ints(&[0, 0, 1]));

        let h = Polynomial::from_ints(&[-2, 8, -16, 16]);
        let m = (&Polynomial::linear(&int(1)) * &h).monic();
        assert_eq!(m.divide_linear(&int(1)).unwrap(), h.monic());

        assert!(matches!(m.divide_linear(&int(2)), Err(ExactError::NonzeroRemainder { .. })));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Polynomial::from_ints(&[-2, 8, -16, 16]).to_string(), "16t^3 - 16t^2 + 8t - 2");
        assert_eq!(Polynomial::from_ints(&[-2, 8, -16, 16]).ascending_string(), "-2 8 -16 16");
        let p = Polynomial::new(vec![rat(-1, 8), rat(1, 2), int(-1), int(1)]);
        assert_eq!(p.to_string(), "t^3 - t^2 + (1/2)t - 1/8");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::from_ints(&[0, -1]).to_string(), "-t");
    }

    #[test]
    fn squarefree_factorization_recovers_multiplicities() {
        // (t-1)^2 (t+2) t^3
        let a = Polynomial::linear(&int(1));
        let b = Polynomial::linear(&int(-2));
        let c = Polynomial::linear(&int(0));
        let p = &(&(&a * &a) * &b) * &(&(&c * &c) * &c);
        let factors = p.squarefree_factors();
        assert_eq!(factors, vec![(b, 1), (a, 2), (c, 3)]);
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-30i64..30, 1i64..12).prop_map(|(n, d)| rat(n, d))
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(small_rat(), 0..6).prop_map(Polynomial::new)
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_rat(), b in small_rat(), c in small_rat()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            if !a.is_zero() {
                prop_assert_eq!(&a * a.recip(), Rational::one());
            }
        }

        #[test]
        fn divide_linear_inverts_multiplication(p in small_poly(), r in small_rat()) {
            let m = &Polynomial::linear(&r) * &p;
            let q = m.divide_linear(&r).unwrap();
            prop_assert_eq!(&Polynomial::linear(&r) * &q, m);
        }

        #[test]
        fn eval_is_a_ring_homomorphism(p in small_poly(), q in small_poly(), x in small_rat()) {
            prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
            prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
        }

        #[test]
        fn div_rem_identity(p in small_poly(), q in small_poly()) {
            prop_assume!(!q.is_zero());
            let (quot, rem) = p.div_rem(&q);
            prop_assert_eq!(&(&quot * &q) + &rem, p);
            prop_assert!(rem.degree() < q.degree());
        }
    }
}

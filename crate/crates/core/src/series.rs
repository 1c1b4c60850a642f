//! Hilbert series of the weighted polynomial ring and of the Milnor algebra.
//!
//! Everything here is exact: dense coefficient vectors of `BigInt`s, either as
//! finite polynomials in `t` ([`IntegerPolynomial`]) or as power series cut
//! off after `t^N` ([`TruncatedSeries`]).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::grading::WeightSystem;

/// Largest variable count for which subsets are enumerated one by one.
pub const MAX_SUBSET_VARIABLES: usize = 30;

/// A polynomial in `t` with integer coefficients; index is the exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntegerPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntegerPolynomial::new(coeffs.iter().map(|&c| c.into()).collect())
    }

    pub fn zero() -> Self {
        IntegerPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntegerPolynomial::monomial(BigInt::one(), 0)
    }

    /// `c t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntegerPolynomial::new(coeffs)
    }

    /// `1 - t^k`; the zero polynomial when `k = 0`.
    pub fn one_minus_power(k: usize) -> Self {
        &IntegerPolynomial::one() - &IntegerPolynomial::monomial(BigInt::one(), k)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Quotient and remainder. The divisor's leading coefficient must be
    /// `1` or `-1`, which keeps the division inside `Z[t]`.
    pub fn div_rem(&self, divisor: &IntegerPolynomial) -> (IntegerPolynomial, IntegerPolynomial) {
        let m = divisor.degree().expect("division by the zero polynomial");
        let lead = &divisor.coeffs[m];
        assert!(lead.abs().is_one(), "divisor must have unit leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= m {
            return (IntegerPolynomial::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - m];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + m] * lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        (IntegerPolynomial::new(quot), IntegerPolynomial::new(rem))
    }

    /// Sum of coefficients.
    pub fn evaluate_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Substitutes `t -> t^c`.
    pub fn dilate(&self, c: usize) -> IntegerPolynomial {
        assert!(c > 0);
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().saturating_sub(1) * c + 1];
        for (k, v) in self.coeffs.iter().enumerate() {
            coeffs[k * c] = v.clone();
        }
        IntegerPolynomial::new(coeffs)
    }
}

impl Add for &IntegerPolynomial {
    type Output = IntegerPolynomial;

    fn add(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntegerPolynomial::new((0..n).map(|k| self.coefficient(k) + rhs.coefficient(k)).collect())
    }
}

impl Sub for &IntegerPolynomial {
    type Output = IntegerPolynomial;

    fn sub(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &IntegerPolynomial {
    type Output = IntegerPolynomial;

    fn neg(self) -> IntegerPolynomial {
        IntegerPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntegerPolynomial {
    type Output = IntegerPolynomial;

    fn mul(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntegerPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntegerPolynomial::new(coeffs)
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for IntegerPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("IntegerPolynomial", 1)?;
        s.serialize_field("coeffs", &decimal_strings(&self.coeffs))?;
        s.end()
    }
}

fn decimal_strings(coeffs: &[BigInt]) -> Vec<String> {
    coeffs.iter().map(BigInt::to_string).collect()
}

/// The coefficients of `t^0, ..., t^N` of a power series.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least one coefficient");
        TruncatedSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        TruncatedSeries::from_coeffs(coeffs.iter().map(|&c| c.into()).collect())
    }

    /// `p` cut off after `t^order`.
    pub fn from_polynomial(p: &IntegerPolynomial, order: usize) -> Self {
        TruncatedSeries {
            coeffs: (0..=order).map(|k| p.coefficient(k)).collect(),
        }
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    fn zip_with(&self, rhs: &TruncatedSeries, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> TruncatedSeries {
        assert_eq!(self.order(), rhs.order(), "truncation orders differ");
        TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| op(a, b)).collect(),
        }
    }

    pub fn add(&self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a - b)
    }

    /// Product with `t^a`, keeping the truncation order.
    pub fn shift(&self, a: usize) -> TruncatedSeries {
        shift_series(self, a)
    }

    /// Product of two series to the common order.
    pub fn mul(&self, rhs: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.order(), rhs.order(), "truncation orders differ");
        let n = self.coeffs.len();
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..n - i].iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs }
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("TruncatedSeries", 2)?;
        s.serialize_field("order", &self.order())?;
        s.serialize_field("coeffs", &decimal_strings(&self.coeffs))?;
        s.end()
    }
}

/// `D(alpha)`: the number of `a in N^r` with `sum_i w_i a_i = alpha`,
/// i.e. `dim S_alpha`. Coin-counting dynamic programme in `O(r * alpha)`.
pub fn denumerant(alpha: u64, weights: &[u64]) -> BigUint {
    let alpha = usize::try_from(alpha).expect("degree fits in memory");
    let mut ways = vec![BigUint::zero(); alpha + 1];
    ways[0] = BigUint::one();
    for &w in weights {
        let w = w as usize;
        assert!(w > 0, "weights must be positive");
        for k in w..=alpha {
            let prev = ways[k - w].clone();
            ways[k] += prev;
        }
    }
    ways.swap_remove(alpha)
}

/// `HS_S(t) = prod_i 1/(1 - t^{w_i})` through `t^order`.
pub fn ring_hilbert_series(weights: &[u64], order: usize) -> TruncatedSeries {
    let mut coeffs = vec![BigInt::zero(); order + 1];
    coeffs[0] = BigInt::one();
    for &w in weights {
        let w = w as usize;
        assert!(w > 0, "weights must be positive");
        // multiplying by 1/(1 - t^w) is the running sum with stride w
        for k in w..=order {
            let prev = coeffs[k - w].clone();
            coeffs[k] += prev;
        }
    }
    TruncatedSeries { coeffs }
}

/// Hilbert series of the shifted module `M(-a)`: coefficient `alpha` is the
/// input's coefficient `alpha - a`.
pub fn shift_series(s: &TruncatedSeries, a: usize) -> TruncatedSeries {
    let n = s.coeffs.len();
    let mut coeffs = vec![BigInt::zero(); n];
    if a < n {
        coeffs[a..].clone_from_slice(&s.coeffs[..n - a]);
    }
    TruncatedSeries { coeffs }
}

fn shift_exponents(ws: &WeightSystem) -> Result<Vec<usize>> {
    ws.check_degree_covers_weights()?;
    Ok(ws.weights().iter().map(|&w| (ws.degree() - w) as usize).collect())
}

/// `prod_i (1 - t^{d - w_i})`, multiplied out factor by factor.
pub fn product_numerator(ws: &WeightSystem) -> Result<IntegerPolynomial> {
    Ok(shift_exponents(ws)?
        .into_iter()
        .fold(IntegerPolynomial::one(), |acc, e| &acc * &IntegerPolynomial::one_minus_power(e)))
}

/// `prod_i (1 - t^{w_i})`.
pub fn ring_denominator(weights: &[u64]) -> IntegerPolynomial {
    weights.iter().fold(IntegerPolynomial::one(), |acc, &w| {
        &acc * &IntegerPolynomial::one_minus_power(w as usize)
    })
}

/// The subset-sum side of the numerator identity:
/// `1 + sum over nonempty T of (-1)^|T| t^{|T| d - sum_{j in T} w_j}`,
/// accumulated one subset at a time.
pub fn lemma_expansion(ws: &WeightSystem) -> Result<IntegerPolynomial> {
    ws.check_degree_covers_weights()?;
    let r = ws.nvars();
    if r > MAX_SUBSET_VARIABLES {
        return Err(Error::SubsetOverflow {
            count: r,
            limit: MAX_SUBSET_VARIABLES,
        });
    }
    let d = ws.degree();
    let weights = ws.weights();
    let len = r * d as usize + 1;
    let accumulate = |masks: std::ops::Range<u64>| {
        let mut acc = vec![0i64; len];
        for mask in masks {
            let mut k = 0u64;
            let mut sum = 0u64;
            for (j, &w) in weights.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    k += 1;
                    sum += w;
                }
            }
            let sign = if k.is_multiple_of(2) { 1 } else { -1 };
            acc[(k * d - sum) as usize] += sign;
        }
        acc
    };
    let total = 1u64 << r;
    // the empty subset contributes the constant 1
    let coeffs = if r < 16 {
        accumulate(0..total)
    } else {
        let chunk = 1u64 << 14;
        (0..total / chunk)
            .into_par_iter()
            .map(|c| accumulate(c * chunk..(c + 1) * chunk))
            .reduce(
                || vec![0i64; len],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    };
    Ok(IntegerPolynomial::new(coeffs.into_iter().map(BigInt::from).collect()))
}

/// `HS_{M_f}(t) = prod_i (1 - t^{d - w_i}) / (1 - t^{w_i})` as an exact
/// polynomial quotient. `NotPolynomial` means no polynomial of this type has
/// a finite-dimensional Milnor algebra.
pub fn milnor_poincare_polynomial(ws: &WeightSystem) -> Result<IntegerPolynomial> {
    let numerator = product_numerator(ws)?;
    let (quotient, remainder) = numerator.div_rem(&ring_denominator(ws.weights()));
    if !remainder.is_zero() {
        return Err(Error::NotPolynomial);
    }
    Ok(quotient)
}

/// `p(1)`, the sum of the coefficients.
pub fn evaluate_at_one(p: &IntegerPolynomial) -> BigInt {
    p.evaluate_at_one()
}

//! Milnor numbers by three routes and the report that cross-checks them.
//!
//! * the closed formula `prod_i (d - w_i) / w_i`, which sees only the type;
//! * the Hilbert-series route: exact division of `prod_i (1 - t^{d - w_i})`
//!   by `prod_i (1 - t^{w_i})`, evaluated at `t = 1`;
//! * the oracle: graded pieces of `S / (f_1, ..., f_r)` by exact rank
//!   computations, degree by degree.
//!
//! The Milnor algebra is taken in the polynomial ring. For weighted-homogeneous
//! `f` the Jacobian ideal is graded, so its graded pieces, and hence `mu`, are
//! the same as for the local ring at the origin.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::grading::{self, enumerate_monomials, WeightSystem};
use crate::linalg::{self, IntegerMatrix};
use crate::poly::{ExponentVector, Polynomial};
use crate::series::{self, IntegerPolynomial};

/// `prod_i (d - w_i) / w_i`, never rounded.
pub fn mu_formula(ws: &WeightSystem) -> Result<BigRational> {
    ws.check_degree_covers_weights()?;
    let d = ws.degree();
    Ok(ws
        .weights()
        .iter()
        .map(|&w| BigRational::new(BigInt::from(d - w), BigInt::from(w)))
        .product())
}

/// `mu` from the Poincare polynomial of the type.
pub fn mu_series(ws: &WeightSystem) -> Result<BigInt> {
    Ok(series::evaluate_at_one(&series::milnor_poincare_polynomial(ws)?))
}

/// Degree of the Poincare polynomial, `r d - 2 sum_i w_i`, clamped at zero.
pub fn socle_bound(ws: &WeightSystem) -> u64 {
    let r = ws.nvars() as u64;
    (r * ws.degree()).saturating_sub(2 * ws.weight_sum())
}

fn check_input(f: &Polynomial, ws: &WeightSystem) -> Result<()> {
    if f.nvars() != ws.nvars() {
        return Err(Error::VariableMismatch);
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !grading::is_weighted_homogeneous(f, ws)? {
        return Err(Error::NotHomogeneous { degree: ws.degree() });
    }
    Ok(())
}

/// `dim (M_f)_alpha` for `alpha = 0..=bound`.
///
/// In degree `alpha` this is `D(alpha)` minus the rank of
/// `(g_1, ..., g_r) -> sum_i g_i f_i` from `sum_i S_{alpha - (d - w_i)}` to
/// `S_alpha`, with the images `f_i * m` written in the monomial basis. The
/// trivial relations `f_j * (f_i m) - f_i * (f_j m) = 0` are handed to the rank
/// computation as a certificate; they are checked, not assumed.
pub fn milnor_algebra_dims(f: &Polynomial, ws: &WeightSystem, bound: u64) -> Result<Vec<usize>> {
    check_input(f, ws)?;
    let gradient = integer_gradient(f);
    Ok((0..=bound)
        .into_par_iter()
        .map(|alpha| graded_piece_dim(&gradient, ws, alpha))
        .collect())
}

/// Partial derivatives of `f` scaled by one common denominator; the ideal
/// they generate is unchanged.
fn integer_gradient(f: &Polynomial) -> Vec<Vec<(ExponentVector, BigInt)>> {
    let gradient = f.gradient();
    let lcm = gradient
        .iter()
        .flat_map(|g| g.terms().map(|(_, c)| c))
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    gradient
        .iter()
        .map(|g| {
            g.terms()
                .map(|(e, c)| (e.clone(), c.numer() * (&lcm / c.denom())))
                .collect()
        })
        .collect()
}

fn graded_piece_dim(gradient: &[Vec<(ExponentVector, BigInt)>], ws: &WeightSystem, alpha: u64) -> usize {
    let basis = enumerate_monomials(ws.weights(), alpha);
    let index: HashMap<&ExponentVector, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let fi_degree = |i: usize| ws.degree().checked_sub(ws.weights()[i]);
    let active: Vec<usize> = (0..gradient.len())
        .filter(|&i| !gradient[i].is_empty() && fi_degree(i).is_some_and(|di| di <= alpha))
        .collect();

    // rows f_i * m, indexed by (i, m)
    let mut images = IntegerMatrix::new(basis.len());
    let mut row_of: HashMap<(usize, ExponentVector), usize> = HashMap::new();
    for &i in &active {
        for m in enumerate_monomials(ws.weights(), alpha - fi_degree(i).unwrap()) {
            images.push_row(gradient[i].iter().map(|(e, c)| (index[&m.mul(e)], c.clone())).collect());
            row_of.insert((i, m), row_of.len());
        }
    }

    let mut relations = IntegerMatrix::new(images.nrows());
    for (a, &i) in active.iter().enumerate() {
        for &j in &active[a + 1..] {
            let (di, dj) = (fi_degree(i).unwrap(), fi_degree(j).unwrap());
            if di + dj > alpha {
                continue;
            }
            for m in enumerate_monomials(ws.weights(), alpha - di - dj) {
                let mut row: Vec<(usize, BigInt)> = gradient[j]
                    .iter()
                    .map(|(e, c)| (row_of[&(i, m.mul(e))], c.clone()))
                    .collect();
                row.extend(gradient[i].iter().map(|(e, c)| (row_of[&(j, m.mul(e))], -c)));
                relations.push_row(row);
            }
        }
    }
    let ranks = linalg::chain_ranks(&[relations, images]).ranks;
    basis.len() - ranks[1]
}

/// Per-degree dimensions up to the finiteness window, and the verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOutcome {
    /// `dim (M_f)_alpha` for `alpha = 0..=B+W`.
    pub dims: Vec<usize>,
    /// `B = max(0, r d - 2 sum w_i)`.
    pub socle_bound: u64,
    /// `mu` when every degree in `(B, B + W]` vanishes.
    pub mu: Option<usize>,
}

/// Computes the graded pieces through `B + W`, `W = max w_i`.
///
/// Every monomial of degree above `B` is `x_i` times a monomial of degree at
/// least `alpha - W`; so if the whole window `(B, B + W]` lies in the
/// Jacobian ideal, so does everything above it.
pub fn oracle(f: &Polynomial, ws: &WeightSystem) -> Result<OracleOutcome> {
    let b = socle_bound(ws);
    let window = ws.max_weight();
    let dims = milnor_algebra_dims(f, ws, b + window)?;
    let tail_vanishes = dims[b as usize + 1..].iter().all(|&d| d == 0);
    let mu = tail_vanishes.then(|| dims.iter().sum());
    Ok(OracleOutcome {
        dims,
        socle_bound: b,
        mu,
    })
}

/// `dim_C M_f` by brute-force graded linear algebra.
pub fn mu_oracle(f: &Polynomial, ws: &WeightSystem) -> Result<usize> {
    oracle(f, ws)?.mu.ok_or(Error::NotIsolated)
}

/// All three routes for one polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilnorReport {
    pub weight_system: WeightSystem,
    pub mu_formula: BigRational,
    /// `None` when the Hilbert-series quotient is not a polynomial.
    pub mu_series: Option<BigInt>,
    pub poincare: Option<IntegerPolynomial>,
    /// `None` when the singularity is not isolated.
    pub mu_oracle: Option<usize>,
    pub per_degree_dims: Vec<usize>,
    pub isolated: bool,
    pub consistent: bool,
}

impl MilnorReport {
    /// The agreed value of `mu` when the report is consistent.
    pub fn mu(&self) -> Option<usize> {
        if self.consistent {
            self.mu_oracle
        } else {
            None
        }
    }
}

impl Serialize for MilnorReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("MilnorReport", 8)?;
        s.serialize_field("weights", self.weight_system.weights())?;
        s.serialize_field("degree", &self.weight_system.degree())?;
        s.serialize_field("mu_formula", &self.mu_formula.to_string())?;
        s.serialize_field("mu_series", &self.mu_series.as_ref().map(json_integer))?;
        s.serialize_field("mu_oracle", &self.mu_oracle)?;
        s.serialize_field("isolated", &self.isolated)?;
        s.serialize_field("consistent", &self.consistent)?;
        s.serialize_field("dims", &self.per_degree_dims)?;
        s.end()
    }
}

/// A JSON number when it fits in 64 bits, a decimal string otherwise.
pub(crate) fn json_integer(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => v.into(),
        None => n.to_string().into(),
    }
}

/// Runs every route on `f`, inferring the weight system when none is given.
///
/// A non-isolated `f` still yields a report, with `isolated = false`.
/// `consistent` requires all three values to agree and the per-degree
/// dimensions to match the Poincare polynomial coefficient by coefficient.
pub fn full_report(f: &Polynomial, ws: Option<&WeightSystem>) -> Result<MilnorReport> {
    let ws = match ws {
        Some(ws) => ws.clone(),
        None => grading::infer_weight_system(f)?,
    };
    let mu_formula = mu_formula(&ws)?;
    let poincare = match series::milnor_poincare_polynomial(&ws) {
        Ok(p) => Some(p),
        Err(Error::NotPolynomial) => None,
        Err(e) => return Err(e),
    };
    let mu_series = poincare.as_ref().map(series::evaluate_at_one);
    let outcome = oracle(f, &ws)?;
    let isolated = outcome.mu.is_some();
    let consistent = match (&poincare, outcome.mu) {
        (Some(p), Some(mu)) => {
            let mu_big = BigInt::from(mu);
            mu_formula.is_integer()
                && *mu_formula.numer() == mu_big
                && mu_series.as_ref() == Some(&mu_big)
                && p.degree().is_none_or(|deg| deg < outcome.dims.len())
                && outcome
                    .dims
                    .iter()
                    .enumerate()
                    .all(|(alpha, &dim)| p.coefficient(alpha) == BigInt::from(dim))
        }
        _ => false,
    };
    Ok(MilnorReport {
        weight_system: ws,
        mu_formula,
        mu_series,
        poincare,
        mu_oracle: outcome.mu,
        per_degree_dims: outcome.dims,
        isolated,
        consistent,
    })
}

/// Formula and series routes for a bare type, no polynomial involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeReport {
    pub weight_system: WeightSystem,
    pub mu_formula: BigRational,
    pub poincare: Option<IntegerPolynomial>,
    pub mu_series: Option<BigInt>,
}

impl Serialize for TypeReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("TypeReport", 5)?;
        s.serialize_field("weights", self.weight_system.weights())?;
        s.serialize_field("degree", &self.weight_system.degree())?;
        s.serialize_field("mu_formula", &self.mu_formula.to_string())?;
        s.serialize_field("mu_series", &self.mu_series.as_ref().map(json_integer))?;
        s.serialize_field("poincare", &self.poincare)?;
        s.end()
    }
}

pub fn type_report(ws: &WeightSystem) -> Result<TypeReport> {
    let mu_formula = mu_formula(ws)?;
    let poincare = match series::milnor_poincare_polynomial(ws) {
        Ok(p) => Some(p),
        Err(Error::NotPolynomial) => None,
        Err(e) => return Err(e),
    };
    Ok(TypeReport {
        weight_system: ws.clone(),
        mu_formula,
        mu_series: poincare.as_ref().map(series::evaluate_at_one),
        poincare,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(s: &str) -> WeightSystem {
        s.parse().unwrap()
    }

    fn parse(text: &str) -> Polynomial {
        let vars = crate::poly::scan_variables(text).unwrap();
        crate::poly::parse_polynomial(text, vars).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn formula_values() {
        assert_eq!(mu_formula(&ws("5,3;15")).unwrap(), rat(8, 1));
        assert_eq!(mu_formula(&ws("1,1;3")).unwrap(), rat(4, 1));
        assert_eq!(mu_formula(&ws("2,3;6")).unwrap(), rat(2, 1));
        assert_eq!(mu_formula(&ws("3,4;5")).unwrap(), rat(1, 6));
        assert_eq!(mu_formula(&ws("2,1;2")).unwrap(), rat(0, 1));
        assert!(mu_formula(&ws("3,1;2")).is_err());
    }

    #[test]
    fn e8_graded_pieces() {
        // basis 1, y, x, y^2, xy, y^3, xy^2, xy^3 with deg x = 5, deg y = 3
        let dims = milnor_algebra_dims(&parse("x^3 + y^5"), &ws("5,3;15"), 22).unwrap();
        let ones = [0, 3, 5, 6, 8, 9, 11, 14];
        for (alpha, &d) in dims.iter().enumerate() {
            assert_eq!(d, usize::from(ones.contains(&alpha)), "alpha = {alpha}");
        }
    }

    #[test]
    fn morse_graded_pieces() {
        assert_eq!(milnor_algebra_dims(&parse("x^2 + y^2"), &ws("1,1;2"), 2).unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn non_isolated_dims_never_vanish() {
        let dims = milnor_algebra_dims(&parse("x^2*y^2"), &ws("1,1;4"), 12).unwrap();
        assert_eq!(&dims[..4], &[1, 2, 3, 2]);
        assert!(dims[3..].iter().all(|&d| d == 2));
        assert_eq!(mu_oracle(&parse("x^2*y^2"), &ws("1,1;4")), Err(Error::NotIsolated));
    }

    #[test]
    fn a_k_chain() {
        for k in 1..=6u32 {
            let f = parse(&format!("x^{} + y^2", k + 1));
            let w = grading::infer_weight_system(&f).unwrap();
            assert_eq!(mu_oracle(&f, &w).unwrap(), k as usize);
        }
    }

    #[test]
    fn rejects_wrong_type() {
        assert_eq!(
            mu_oracle(&parse("x^3 + y^5"), &ws("1,1;3")),
            Err(Error::NotHomogeneous { degree: 3 })
        );
        assert_eq!(mu_oracle(&parse("x^3 + y^5"), &ws("1;3")), Err(Error::VariableMismatch));
    }

    #[test]
    fn reports() {
        let r = full_report(&parse("x^3 + y^5"), None).unwrap();
        assert_eq!(r.weight_system, ws("5,3;15"));
        assert_eq!(r.mu(), Some(8));
        assert!(r.isolated && r.consistent);

        // a single monomial does not determine its weights
        assert_eq!(
            full_report(&parse("x^2*y^2"), None),
            Err(Error::AmbiguousWeights { dimension: 1 })
        );
        let r = full_report(&parse("x^2*y^2"), Some(&ws("1,1;4"))).unwrap();
        assert_eq!(r.mu_formula, rat(9, 1));
        assert_eq!(r.mu_series, Some(BigInt::from(9)));
        assert_eq!(r.mu_oracle, None);
        assert!(!r.isolated && !r.consistent);

        let r = full_report(&parse("x^3 + y^3 + z^3"), None).unwrap();
        assert_eq!(r.weight_system, ws("1,1,1;3"));
        assert_eq!(r.mu(), Some(8));
    }

    #[test]
    fn smooth_direction_gives_zero() {
        let r = full_report(&parse("x + y^2"), None).unwrap();
        assert_eq!(r.weight_system, ws("2,1;2"));
        assert_eq!(r.mu_formula, rat(0, 1));
        assert_eq!(r.mu(), Some(0));
    }

    #[test]
    fn explicit_non_primitive_weights() {
        let r = full_report(&parse("x^3 + y^5"), Some(&ws("10,6;30"))).unwrap();
        assert_eq!(r.mu(), Some(8));
        assert_eq!(r.per_degree_dims[6], 1);
        assert_eq!(r.per_degree_dims[3], 0);
    }

    #[test]
    fn report_json_shape() {
        let r = full_report(&parse("x^2 + y^3"), None).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(
            v.to_string(),
            r#"{"consistent":true,"degree":6,"dims":[1,0,1,0,0,0],"isolated":true,"mu_formula":"2","mu_oracle":2,"mu_series":2,"weights":[3,2]}"#
        );
    }

    #[test]
    fn type_only_route() {
        let t = type_report(&ws("3,4;5")).unwrap();
        assert_eq!(t.mu_formula, rat(1, 6));
        assert!(t.poincare.is_none());
        let t = type_report(&ws("1,1;3")).unwrap();
        assert_eq!(t.mu_series, Some(BigInt::from(4)));
    }
}

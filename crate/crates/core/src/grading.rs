//! Weight systems and the weighted grading of the polynomial ring.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, LinearSolution};
use crate::poly::{ExponentVector, Polynomial};

/// A type `(w_1, ..., w_r; d)`: positive integer weights and a weighted degree.
///
/// Any positive representative is accepted; [`WeightSystem::primitive`]
/// gives the canonical one with `gcd(w_1, ..., w_r, d) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightSystem {
    weights: Vec<u64>,
    degree: u64,
}

impl WeightSystem {
    pub fn new(weights: Vec<u64>, degree: u64) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeightSystem("at least one weight is required".into()));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidWeightSystem("weights must be positive".into()));
        }
        if degree == 0 {
            return Err(Error::InvalidWeightSystem("degree must be positive".into()));
        }
        Ok(WeightSystem { weights, degree })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn max_weight(&self) -> u64 {
        *self.weights.iter().max().expect("nonempty")
    }

    pub fn weight_sum(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    fn content(&self) -> u64 {
        self.weights.iter().fold(self.degree, |g, &w| g.gcd(&w))
    }

    /// The representative with `gcd(w_1, ..., w_r, d) = 1`.
    pub fn primitive(&self) -> WeightSystem {
        let g = self.content();
        WeightSystem {
            weights: self.weights.iter().map(|w| w / g).collect(),
            degree: self.degree / g,
        }
    }

    /// `(c w; c d)`.
    pub fn scaled(&self, c: u64) -> Result<WeightSystem> {
        WeightSystem::new(self.weights.iter().map(|w| w * c).collect(), self.degree * c)
    }

    /// Fails with `DegreeUnderflow` unless `d >= w_i` for every `i`.
    pub fn check_degree_covers_weights(&self) -> Result<()> {
        match self.weights.iter().find(|&&w| w > self.degree) {
            Some(&w) => Err(Error::DegreeUnderflow {
                degree: self.degree,
                weight: w,
            }),
            None => Ok(()),
        }
    }

    /// Type of `f_i` for `f` of this type: the same weights and degree
    /// `d - w_i`. The degree is not re-normalized, so shifts stay in the
    /// ambient grading. `index` is 0-based.
    pub fn derivative_type(&self, index: usize) -> Result<(&[u64], u64)> {
        let w = *self.weights.get(index).ok_or(Error::IndexOutOfRange {
            index,
            count: self.nvars(),
        })?;
        let degree = self.degree.checked_sub(w).ok_or(Error::DegreeUnderflow {
            degree: self.degree,
            weight: w,
        })?;
        Ok((&self.weights, degree))
    }

    /// Permutes the weights: position `j` of the result holds weight `order[j]`.
    pub fn permuted(&self, order: &[usize]) -> WeightSystem {
        WeightSystem {
            weights: order.iter().map(|&i| self.weights[i]).collect(),
            degree: self.degree,
        }
    }

    pub fn weighted_degree(&self, m: &ExponentVector) -> Result<u64> {
        weighted_degree(m, &self.weights)
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(u64::to_string).collect();
        write!(f, "{};{}", ws.join(","), self.degree)
    }
}

impl FromStr for WeightSystem {
    type Err = Error;

    /// Parses `w1,w2,...,wr;d`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidWeightSystem(format!("expected `w1,...,wr;d`, got `{s}`"));
        let (ws, d) = s.split_once(';').ok_or_else(bad)?;
        let weights = ws
            .split(',')
            .map(|w| w.trim().parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        let degree = d.trim().parse::<u64>().map_err(|_| bad())?;
        WeightSystem::new(weights, degree)
    }
}

/// `sum_i m_i w_i`.
pub fn weighted_degree(m: &ExponentVector, weights: &[u64]) -> Result<u64> {
    if m.len() != weights.len() {
        return Err(Error::VariableMismatch);
    }
    Ok(m.as_slice().iter().zip(weights).map(|(&e, &w)| u64::from(e) * w).sum())
}

/// True iff every support monomial of `p` has weighted degree `d`.
pub fn is_weighted_homogeneous(p: &Polynomial, ws: &WeightSystem) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.nvars() != ws.nvars() {
        return Err(Error::VariableMismatch);
    }
    for m in p.support() {
        if ws.weighted_degree(m)? != ws.degree() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Finds the primitive weight system making `p` weighted homogeneous.
///
/// Solves `sum_i a_i w_i = 1` over all support exponents `a` with `d = 1`,
/// then clears denominators. Fails when the system is inconsistent, when the
/// unique solution has a non-positive weight, or when the support does not
/// determine the weights.
pub fn infer_weight_system(p: &Polynomial) -> Result<WeightSystem> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let r = p.nvars();
    for (i, name) in p.variables().iter().enumerate() {
        if p.support().all(|m| m.get(i) == 0) {
            return Err(Error::MissingVariable(name.clone()));
        }
    }
    let rows: Vec<Vec<BigRational>> = p
        .support()
        .map(|m| {
            m.as_slice()
                .iter()
                .map(|&e| BigRational::from_integer(e.into()))
                .collect()
        })
        .collect();
    let rhs = vec![BigRational::one(); rows.len()];
    let weights = match linalg::solve(&rows, &rhs, r) {
        LinearSolution::Unique(w) => w,
        LinearSolution::Underdetermined(dimension) => {
            return Err(Error::AmbiguousWeights { dimension })
        }
        LinearSolution::Inconsistent => return Err(Error::NotWeightedHomogeneous),
    };
    if weights.iter().any(|w| !w.is_positive()) {
        return Err(Error::NotWeightedHomogeneous);
    }
    let lcm = weights
        .iter()
        .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let to_u64 = |x: BigInt| x.to_u64().ok_or_else(|| Error::InvalidWeightSystem("weights exceed 64 bits".into()));
    let scaled = weights
        .iter()
        .map(|w| to_u64(w.numer() * (&lcm / w.denom())))
        .collect::<Result<Vec<_>>>()?;
    let ws = WeightSystem::new(scaled, to_u64(lcm)?)?.primitive();
    debug_assert!(is_weighted_homogeneous(p, &ws).unwrap_or(false));
    Ok(ws)
}

/// All exponent vectors of weighted degree exactly `alpha`, in ascending
/// lexicographic order.
pub fn enumerate_monomials(weights: &[u64], alpha: u64) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    let mut current = vec![0u32; weights.len()];
    enumerate_into(weights, 0, alpha, &mut current, &mut out);
    out
}

fn enumerate_into(
    weights: &[u64],
    index: usize,
    remaining: u64,
    current: &mut Vec<u32>,
    out: &mut Vec<ExponentVector>,
) {
    if index == weights.len() {
        if remaining == 0 {
            out.push(ExponentVector::new(current.clone()));
        }
        return;
    }
    let w = weights[index];
    if index + 1 == weights.len() {
        if remaining.is_multiple_of(w) {
            current[index] = (remaining / w) as u32;
            out.push(ExponentVector::new(current.clone()));
            current[index] = 0;
        }
        return;
    }
    for e in 0..=remaining / w {
        current[index] = e as u32;
        enumerate_into(weights, index + 1, remaining - e * w, current, out);
    }
    current[index] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(s: &str) -> WeightSystem {
        s.parse().unwrap()
    }

    fn xy(text: &str) -> Polynomial {
        Polynomial::parse(text, &["x", "y"]).unwrap()
    }

    #[test]
    fn weighted_degrees() {
        assert_eq!(ws("5,3;15").weighted_degree(&vec![0, 0].into()).unwrap(), 0);
        assert_eq!(ws("5,3;15").weighted_degree(&vec![3, 0].into()).unwrap(), 15);
        assert_eq!(ws("2,3;6").weighted_degree(&vec![1, 1].into()).unwrap(), 5);
        assert_eq!(
            ws("2,3;6").weighted_degree(&vec![1].into()),
            Err(Error::VariableMismatch)
        );
    }

    #[test]
    fn homogeneity() {
        assert!(is_weighted_homogeneous(&xy("x^3 + y^5"), &ws("5,3;15")).unwrap());
        assert!(!is_weighted_homogeneous(&xy("x^3 + y^5"), &ws("1,1;3")).unwrap());
        assert!(is_weighted_homogeneous(&xy("x^2*y + y^3"), &ws("1,1;3")).unwrap());
        assert_eq!(
            is_weighted_homogeneous(&xy("0"), &ws("1,1;3")),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn inference() {
        assert_eq!(infer_weight_system(&xy("x^3 + y^5")).unwrap(), ws("5,3;15"));
        assert_eq!(infer_weight_system(&xy("x^3 + x*y^3")).unwrap(), ws("3,2;9"));
        assert_eq!(
            infer_weight_system(&xy("x*y")),
            Err(Error::AmbiguousWeights { dimension: 1 })
        );
        assert_eq!(
            infer_weight_system(&xy("x^2 + y^3 + x*y")),
            Err(Error::NotWeightedHomogeneous)
        );
        // unique solutions with w_x = -2 and w_x = 0
        assert_eq!(
            infer_weight_system(&xy("x*y^3 + y")),
            Err(Error::NotWeightedHomogeneous)
        );
        assert_eq!(
            infer_weight_system(&xy("x^3*y + y")),
            Err(Error::NotWeightedHomogeneous)
        );
        assert_eq!(infer_weight_system(&xy("x^2*y + x*y^3")).unwrap(), ws("2,1;5"));
        assert_eq!(
            infer_weight_system(&xy("x^3")),
            Err(Error::MissingVariable("y".into()))
        );
        assert_eq!(infer_weight_system(&xy("x^2 + y^2")).unwrap(), ws("1,1;2"));
    }

    #[test]
    fn derivative_types() {
        assert_eq!(ws("5,3;15").derivative_type(0).unwrap().1, 10);
        assert_eq!(ws("5,3;15").derivative_type(1).unwrap().1, 12);
        assert_eq!(ws("1,1;3").derivative_type(0).unwrap().1, 2);
        assert_eq!(
            ws("4,1;3").derivative_type(0),
            Err(Error::DegreeUnderflow { degree: 3, weight: 4 })
        );
    }

    #[test]
    fn monomial_enumeration() {
        let v = |e: &[u32]| ExponentVector::new(e.to_vec());
        assert_eq!(enumerate_monomials(&[1, 1], 2), vec![v(&[0, 2]), v(&[1, 1]), v(&[2, 0])]);
        assert_eq!(enumerate_monomials(&[3, 7, 2], 0), vec![v(&[0, 0, 0])]);
        assert_eq!(enumerate_monomials(&[2, 3], 6), vec![v(&[0, 2]), v(&[3, 0])]);
        assert!(enumerate_monomials(&[2, 4], 5).is_empty());
    }

    #[test]
    fn weight_system_text_and_json() {
        let w = ws("5, 3; 15");
        assert_eq!(w.to_string(), "5,3;15");
        assert_eq!(serde_json::to_string(&w).unwrap(), r#"{"weights":[5,3],"degree":15}"#);
        assert!("5,0;15".parse::<WeightSystem>().is_err());
        assert!("5,3".parse::<WeightSystem>().is_err());
        assert!("5,3;0".parse::<WeightSystem>().is_err());
        assert!(";3".parse::<WeightSystem>().is_err());
    }

    #[test]
    fn primitive_representative() {
        assert_eq!(ws("10,6;30").primitive(), ws("5,3;15"));
        assert!(!ws("2,2;6").is_primitive());
        assert!(ws("5,3;15").is_primitive());
    }
}

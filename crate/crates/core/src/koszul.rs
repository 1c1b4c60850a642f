//! The graded Koszul complex on the partial derivatives `(f_1, ..., f_r)`.
//!
//! Position `k` is the free module with one generator `e_T` per `k`-subset
//! `T = {i_1 < ... < i_k}` of the variables, shifted by
//! `k d - sum_{j in T} w_j`. The differential is
//!
//! ```text
//! d(e_T * m) = sum_j (-1)^(j+1) f_{i_j} m * e_{T \ i_j}
//! ```
//!
//! In weighted degree `alpha` each position is a finite-dimensional vector
//! space with basis `(T, m)`, `m` running over monomials of degree
//! `alpha - shift(T)`. Subsets and then monomials are ordered
//! lexicographically, so every matrix here is reproducible exactly.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grading::{self, enumerate_monomials, WeightSystem};
use crate::linalg::{self, IntegerMatrix};
use crate::poly::{ExponentVector, Polynomial};
use crate::series::{self, ring_hilbert_series, shift_series, TruncatedSeries};

/// Largest variable count for which the complex is built.
pub const MAX_KOSZUL_VARIABLES: usize = 20;

/// One free generator `e_T` of the complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Generator {
    /// 0-based variable indices, increasing.
    pub subset: Vec<usize>,
    pub shift: u64,
}

/// The shifts of the Koszul complex, position by position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedFreeResolution {
    /// `terms[k]` holds the `C(r, k)` generators of position `k`.
    pub terms: Vec<Vec<Generator>>,
}

impl GradedFreeResolution {
    /// Length `r` of the complex.
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn shifts(&self, k: usize) -> Vec<u64> {
        self.terms[k].iter().map(|g| g.shift).collect()
    }

    pub fn generator_count(&self) -> usize {
        self.terms.iter().map(Vec::len).sum()
    }
}

/// All `k`-subsets of `0..n`, lexicographically.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

fn subset_shift(ws: &WeightSystem, subset: &[usize]) -> u64 {
    let k = subset.len() as u64;
    k * ws.degree() - subset.iter().map(|&i| ws.weights()[i]).sum::<u64>()
}

/// Generators and shifts `k d - (w_{i_1} + ... + w_{i_k})` for `k = 0..r`.
pub fn koszul_shifts(ws: &WeightSystem) -> Result<GradedFreeResolution> {
    ws.check_degree_covers_weights()?;
    let r = ws.nvars();
    if r > MAX_KOSZUL_VARIABLES {
        return Err(Error::SubsetOverflow {
            count: r,
            limit: MAX_KOSZUL_VARIABLES,
        });
    }
    let terms = (0..=r)
        .map(|k| {
            subsets(r, k)
                .into_iter()
                .map(|subset| Generator {
                    shift: subset_shift(ws, &subset),
                    subset,
                })
                .collect()
        })
        .collect();
    Ok(GradedFreeResolution { terms })
}

/// `sum_k (-1)^k sum_{a in term k} HS_{S(-a)}(t)` through `t^order`.
pub fn euler_series(res: &GradedFreeResolution, weights: &[u64], order: usize) -> TruncatedSeries {
    let ring = ring_hilbert_series(weights, order);
    let mut total = TruncatedSeries::zero(order);
    for (k, term) in res.terms.iter().enumerate() {
        for g in term {
            let shifted = match g.shift.to_usize() {
                Some(a) => shift_series(&ring, a),
                None => continue,
            };
            total = if k % 2 == 0 {
                total.add(&shifted)
            } else {
                total.sub(&shifted)
            };
        }
    }
    total
}

/// Basis element `e_T * m` of a degree slice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub subset: Vec<usize>,
    pub monomial: ExponentVector,
}

/// Basis of position `k` in weighted degree `alpha`.
pub fn slice_basis(ws: &WeightSystem, k: usize, alpha: u64) -> Vec<BasisElement> {
    let mut basis = Vec::new();
    for subset in subsets(ws.nvars(), k) {
        let shift = subset_shift(ws, &subset);
        if shift > alpha {
            continue;
        }
        for monomial in enumerate_monomials(ws.weights(), alpha - shift) {
            basis.push(BasisElement {
                subset: subset.clone(),
                monomial,
            });
        }
    }
    basis
}

/// A linear map between two degree slices, stored densely by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMatrix {
    pub rows: Vec<BasisElement>,
    pub cols: Vec<BasisElement>,
    pub entries: Vec<Vec<BigRational>>,
}

impl GradedMatrix {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row][col]
    }

    pub fn rank(&self) -> usize {
        self.to_integer().rank()
    }

    /// The same map over Z, scaled by a common denominator.
    pub fn to_integer(&self) -> IntegerMatrix {
        IntegerMatrix::from_rational_rows(&self.entries, self.ncols())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Zero::is_zero)
    }

    /// Composition `self * rhs`; the column basis of `self` must be the
    /// row basis of `rhs`.
    pub fn compose(&self, rhs: &GradedMatrix) -> GradedMatrix {
        assert_eq!(self.cols, rhs.rows, "bases of composed maps differ");
        let mut entries = vec![vec![BigRational::zero(); rhs.ncols()]; self.nrows()];
        for (i, row) in self.entries.iter().enumerate() {
            for (l, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in rhs.entries[l].iter().enumerate() {
                    if !b.is_zero() {
                        entries[i][j] += a * b;
                    }
                }
            }
        }
        GradedMatrix {
            rows: self.rows.clone(),
            cols: rhs.cols.clone(),
            entries,
        }
    }
}

/// `f` together with its gradient, checked once against its type.
pub struct KoszulComplex {
    ws: WeightSystem,
    gradient: Vec<Polynomial>,
}

impl KoszulComplex {
    pub fn new(f: &Polynomial, ws: &WeightSystem) -> Result<Self> {
        if f.nvars() != ws.nvars() {
            return Err(Error::VariableMismatch);
        }
        ws.check_degree_covers_weights()?;
        if f.is_zero() || !grading::is_weighted_homogeneous(f, ws)? {
            return Err(Error::NotHomogeneous { degree: ws.degree() });
        }
        if ws.nvars() > MAX_KOSZUL_VARIABLES {
            return Err(Error::SubsetOverflow {
                count: ws.nvars(),
                limit: MAX_KOSZUL_VARIABLES,
            });
        }
        Ok(KoszulComplex {
            ws: ws.clone(),
            gradient: f.gradient(),
        })
    }

    pub fn weight_system(&self) -> &WeightSystem {
        &self.ws
    }

    /// Degree-`alpha` slice of the differential out of position `k`, `1 <= k <= r`.
    pub fn differential(&self, k: usize, alpha: u64) -> Result<GradedMatrix> {
        let r = self.ws.nvars();
        if k == 0 || k > r {
            return Err(Error::IndexOutOfRange { index: k, count: r });
        }
        let cols = slice_basis(&self.ws, k, alpha);
        let rows = slice_basis(&self.ws, k - 1, alpha);
        let index: HashMap<&BasisElement, usize> = rows.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut entries = vec![vec![BigRational::zero(); cols.len()]; rows.len()];
        for (c, col) in cols.iter().enumerate() {
            for (j, &var) in col.subset.iter().enumerate() {
                let mut face = col.subset.clone();
                face.remove(j);
                for (e, coeff) in self.gradient[var].terms() {
                    let target = BasisElement {
                        subset: face.clone(),
                        monomial: col.monomial.mul(e),
                    };
                    let row = index[&target];
                    if j % 2 == 0 {
                        entries[row][c] += coeff;
                    } else {
                        entries[row][c] -= coeff;
                    }
                }
            }
        }
        Ok(GradedMatrix { rows, cols, entries })
    }
}

/// The degree-`alpha` slice of the differential `K_k -> K_{k-1}`.
pub fn differential_matrix(
    f: &Polynomial,
    ws: &WeightSystem,
    k: usize,
    alpha: u64,
) -> Result<GradedMatrix> {
    KoszulComplex::new(f, ws)?.differential(k, alpha)
}

/// Homology check at one position and degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SliceReport {
    pub k: usize,
    pub alpha: u64,
    /// Rank of the differential out of position `k`.
    pub rank: usize,
    pub kernel_dim: usize,
    /// `kernel_dim` equals the rank of the incoming differential.
    pub exact: bool,
    /// The incoming differential composed with this one is zero.
    pub composes_to_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub slices: Vec<SliceReport>,
    /// `dim (S / J)_alpha` computed as the cokernel of the first differential.
    pub coker_dims: Vec<usize>,
    /// Whether `coker_dims` agrees with the Poincare polynomial of the type;
    /// `None` when that quotient is not a polynomial.
    pub coker_matches_series: Option<bool>,
}

impl ExactnessReport {
    pub fn all_exact(&self) -> bool {
        self.slices.iter().all(|s| s.exact)
    }

    pub fn complex_property_holds(&self) -> bool {
        self.slices.iter().all(|s| s.composes_to_zero)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SliceReport> {
        self.slices.iter().filter(|s| !s.exact)
    }
}

/// Checks homology vanishing of the complex in every degree up to `alpha_max`.
///
/// Degrees are independent and run in parallel; results come back ordered by
/// `(alpha, k)`.
pub fn verify_exactness(f: &Polynomial, ws: &WeightSystem, alpha_max: u64) -> Result<ExactnessReport> {
    let complex = KoszulComplex::new(f, ws)?;
    let r = ws.nvars();
    let per_degree: Vec<(Vec<SliceReport>, usize)> = (0..=alpha_max)
        .into_par_iter()
        .map(|alpha| {
            let maps: Vec<GradedMatrix> = (1..=r)
                .map(|k| complex.differential(k, alpha).expect("position in range"))
                .collect();
            let integer: Vec<IntegerMatrix> = maps.iter().map(GradedMatrix::to_integer).collect();
            let chain = linalg::chain_ranks(&integer);
            let ranks = chain.ranks;
            let slices = (1..=r)
                .map(|k| {
                    let map = &maps[k - 1];
                    let incoming_rank = if k < r { ranks[k] } else { 0 };
                    let kernel_dim = map.ncols() - ranks[k - 1];
                    let composes_to_zero = k == r || chain.composes_to_zero[k - 1];
                    SliceReport {
                        k,
                        alpha,
                        rank: ranks[k - 1],
                        kernel_dim,
                        exact: kernel_dim == incoming_rank,
                        composes_to_zero,
                    }
                })
                .collect();
            (slices, maps[0].nrows() - ranks[0])
        })
        .collect();
    let mut slices = Vec::new();
    let mut coker_dims = Vec::new();
    for (s, coker) in per_degree {
        slices.extend(s);
        coker_dims.push(coker);
    }
    let coker_matches_series = series::milnor_poincare_polynomial(ws).ok().map(|p| {
        coker_dims
            .iter()
            .enumerate()
            .all(|(alpha, &dim)| p.coefficient(alpha) == dim.into())
    });
    Ok(ExactnessReport {
        slices,
        coker_dims,
        coker_matches_series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ws(s: &str) -> WeightSystem {
        s.parse().unwrap()
    }

    fn xy(text: &str) -> Polynomial {
        Polynomial::parse(text, &["x", "y"]).unwrap()
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn lexicographic_subsets() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn shifts_of_small_types() {
        let res = koszul_shifts(&ws("1,1;3")).unwrap();
        assert_eq!(res.shifts(0), vec![0]);
        assert_eq!(res.shifts(1), vec![2, 2]);
        assert_eq!(res.shifts(2), vec![4]);
        let res = koszul_shifts(&ws("5,3;15")).unwrap();
        assert_eq!(res.shifts(1), vec![10, 12]);
        assert_eq!(res.shifts(2), vec![22]);
        let res = koszul_shifts(&ws("2;6")).unwrap();
        assert_eq!(res.length(), 1);
        assert_eq!(res.shifts(1), vec![4]);
        assert!(matches!(koszul_shifts(&ws("7,1;5")), Err(Error::DegreeUnderflow { .. })));
        let big = WeightSystem::new(vec![1; 21], 3).unwrap();
        assert!(matches!(koszul_shifts(&big), Err(Error::SubsetOverflow { .. })));
    }

    #[test]
    fn euler_series_examples() {
        let w = ws("1,1;3");
        let s = euler_series(&koszul_shifts(&w).unwrap(), w.weights(), 4);
        assert_eq!(s, TruncatedSeries::from_i64(&[1, 2, 1, 0, 0]));
        let w = ws("2,3;6");
        let s = euler_series(&koszul_shifts(&w).unwrap(), w.weights(), 6);
        assert_eq!(s, TruncatedSeries::from_i64(&[1, 0, 1, 0, 0, 0, 0]));
        let w = ws("2;6");
        let s = euler_series(&koszul_shifts(&w).unwrap(), w.weights(), 5);
        assert_eq!(s, TruncatedSeries::from_i64(&[1, 0, 1, 0, 0, 0]));
    }

    #[test]
    fn first_differential_of_fermat_cubic() {
        let m = differential_matrix(&xy("x^3 + y^3"), &ws("1,1;3"), 1, 2).unwrap();
        // columns e_0 * 1, e_1 * 1; rows y^2, xy, x^2
        assert_eq!(m.ncols(), 2);
        assert_eq!(m.nrows(), 3);
        assert_eq!(m.cols[0].subset, vec![0]);
        assert_eq!(m.rows[2].monomial, ExponentVector::new(vec![2, 0]));
        let expected = vec![
            vec![int(0), int(3)],
            vec![int(0), int(0)],
            vec![int(3), int(0)],
        ];
        assert_eq!(m.entries, expected);
    }

    #[test]
    fn second_differential_signs() {
        // d(e_01) = f_0 e_1 - f_1 e_0 = 3x^2 e_1 - 3y^2 e_0
        let m = differential_matrix(&xy("x^3 + y^3"), &ws("1,1;3"), 2, 4).unwrap();
        assert_eq!(m.ncols(), 1);
        assert_eq!(m.nrows(), 6);
        for (row, basis) in m.rows.iter().enumerate() {
            let expected = match (basis.subset.as_slice(), basis.monomial.as_slice()) {
                ([0], [0, 2]) => int(-3),
                ([1], [2, 0]) => int(3),
                _ => int(0),
            };
            assert_eq!(m.entries[row][0], expected, "{basis:?}");
        }
    }

    #[test]
    fn empty_slices() {
        let m = differential_matrix(&xy("x^3 + y^3"), &ws("1,1;3"), 2, 3).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (4, 0));
        assert_eq!(m.rank(), 0);
        let m = differential_matrix(&xy("x^3 + y^3"), &ws("1,1;3"), 1, 1).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (2, 0));
    }

    #[test]
    fn rejects_inhomogeneous_input() {
        assert_eq!(
            differential_matrix(&xy("x^3 + y^2"), &ws("1,1;3"), 1, 2).unwrap_err(),
            Error::NotHomogeneous { degree: 3 }
        );
        assert!(differential_matrix(&xy("x^3 + y^3"), &ws("1,1;3"), 3, 2).is_err());
    }

    #[test]
    fn fermat_cubic_is_exact() {
        let report = verify_exactness(&xy("x^3 + y^3"), &ws("1,1;3"), 8).unwrap();
        assert!(report.all_exact());
        assert!(report.complex_property_holds());
        assert_eq!(report.coker_dims, vec![1, 2, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(report.coker_matches_series, Some(true));
    }

    #[test]
    fn morse_point_is_exact() {
        let report = verify_exactness(&xy("x^2 + y^2"), &ws("1,1;2"), 5).unwrap();
        assert!(report.all_exact());
        assert_eq!(report.coker_dims, vec![1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn non_regular_sequence_fails_at_first_position() {
        let report = verify_exactness(&xy("x^2*y^2"), &ws("1,1;4"), 10).unwrap();
        assert!(!report.all_exact());
        assert!(report.failures().any(|s| s.k == 1));
        assert!(report.complex_property_holds());
        assert_eq!(report.coker_matches_series, Some(false));
    }
}

//! Cross-checks against oracles that share no code path with the library:
//! box enumeration for denumerants, naive rational row reduction for ranks,
//! truncated series multiplication for the Poincare polynomial, and explicit
//! monomial bases of the Milnor algebra.

use std::collections::BTreeMap;

use milnor_orlik::corpus::{self, Expectation};
use milnor_orlik::grading::{self, infer_weight_system};
use milnor_orlik::milnor::{self, full_report, milnor_algebra_dims, mu_oracle};
use milnor_orlik::poly::{self, Polynomial};
use milnor_orlik::series::{self, TruncatedSeries};
use milnor_orlik::WeightSystem;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

fn parse(text: &str) -> Polynomial {
    let vars = poly::scan_variables(text).unwrap();
    poly::parse_polynomial(text, vars).unwrap()
}

/// Counts exponent vectors in the box `[0, alpha / w_i]` hitting `alpha`.
fn box_denumerant(alpha: u64, weights: &[u64]) -> u64 {
    fn go(alpha: u64, weights: &[u64]) -> u64 {
        match weights {
            [] => u64::from(alpha == 0),
            [w, rest @ ..] => (0..=alpha / w).map(|e| go(alpha - e * w, rest)).sum(),
        }
    }
    go(alpha, weights)
}

/// Rank by row reduction over `BigRational`, pivoting on the first nonzero.
fn naive_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for i in rank + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let factor = &rows[i][c] / &rows[rank][c];
            let (head, tail) = rows.split_at_mut(i);
            for (x, p) in tail[0][c..].iter_mut().zip(&head[rank][c..]) {
                *x -= &factor * p;
            }
        }
        rank += 1;
    }
    rank
}

/// `dim (S/J)_alpha` using a hand-built monomial list and naive ranks.
fn naive_milnor_dims(f: &Polynomial, ws: &WeightSystem, bound: u64) -> Vec<usize> {
    let grads: Vec<Polynomial> = (0..f.nvars()).map(|i| f.partial_derivative(i).unwrap()).collect();
    let monomials = |alpha: u64| -> Vec<Vec<u32>> {
        // every exponent vector in the box, filtered by degree
        let mut all = vec![vec![]];
        for &w in ws.weights() {
            let mut next = Vec::new();
            for prefix in &all {
                for e in 0..=(alpha / w) as u32 {
                    let mut v: Vec<u32> = prefix.clone();
                    v.push(e);
                    next.push(v);
                }
            }
            all = next;
        }
        all.retain(|v| v.iter().zip(ws.weights()).map(|(&e, &w)| u64::from(e) * w).sum::<u64>() == alpha);
        all
    };
    (0..=bound)
        .map(|alpha| {
            let basis = monomials(alpha);
            let mut rows = Vec::new();
            for g in &grads {
                if g.is_zero() {
                    continue;
                }
                // keep only multipliers landing in degree alpha
                for m in (0..=alpha).flat_map(&monomials) {
                    let mono = Polynomial::monomial(f.variables().to_vec(), m.into(), BigRational::one()).unwrap();
                    let product = g.try_mul(&mono).unwrap();
                    if product.support().any(|e| !basis.contains(&e.as_slice().to_vec())) {
                        continue;
                    }
                    rows.push(
                        basis
                            .iter()
                            .map(|b| product.coefficient(&b.clone().into()))
                            .collect(),
                    );
                }
            }
            basis.len() - naive_rank(rows)
        })
        .collect()
}

#[test]
fn denumerant_matches_box_enumeration() {
    for weights in [&[1u64, 1][..], &[2, 3], &[5, 3], &[1, 2, 3], &[4, 6, 9], &[3, 3, 5, 7]] {
        let hs = series::ring_hilbert_series(weights, 40);
        for alpha in 0..=40u64 {
            let expected = box_denumerant(alpha, weights);
            assert_eq!(series::denumerant(alpha, weights), BigUint::from(expected));
            assert_eq!(hs.coefficient(alpha as usize), BigInt::from(expected));
            assert_eq!(grading::enumerate_monomials(weights, alpha).len() as u64, expected);
        }
    }
}

#[test]
fn poincare_polynomial_matches_series_product() {
    // HS_M = numerator * HS_S as truncated series; no division involved
    for text in ["1,1;3", "2,3;6", "5,3;15", "3,2;9", "6,4,3;12", "1,1,1;4", "2,9;18"] {
        let ws: WeightSystem = text.parse().unwrap();
        let order = (ws.nvars() as u64 * ws.degree()) as usize;
        let numerator = TruncatedSeries::from_polynomial(&series::product_numerator(&ws).unwrap(), order);
        let product = numerator.mul(&series::ring_hilbert_series(ws.weights(), order));
        let poincare = series::milnor_poincare_polynomial(&ws).unwrap();
        assert_eq!(TruncatedSeries::from_polynomial(&poincare, order), product, "{text}");
    }
}

#[test]
fn non_polynomial_quotient_has_infinite_tail() {
    // (3,4;5): the series product keeps nonzero coefficients past every bound
    let ws: WeightSystem = "3,4;5".parse().unwrap();
    let order = 80;
    let numerator = TruncatedSeries::from_polynomial(&series::product_numerator(&ws).unwrap(), order);
    let product = numerator.mul(&series::ring_hilbert_series(ws.weights(), order));
    assert!(product.coeffs()[60..].iter().any(|c| !c.is_zero()));
    assert!(series::milnor_poincare_polynomial(&ws).is_err());
}

#[test]
fn bareiss_rank_matches_naive_rank() {
    let cases = ["x^3 + y^5", "x^3 + x*y^3", "x^5 + x*y^2", "x^2*y^2", "x^2 + y^3 + z^4", "x^3 + y^3 + z^3"];
    for text in cases {
        let f = parse(text);
        let ws = infer_weight_system(&f).unwrap_or_else(|_| "1,1;4".parse().unwrap());
        let bound = milnor::socle_bound(&ws) + ws.max_weight();
        assert_eq!(
            milnor_algebra_dims(&f, &ws, bound).unwrap(),
            naive_milnor_dims(&f, &ws, bound),
            "{text}"
        );
    }
}

/// Degrees of the standard monomials `x^e`, `e_i < a_i - 1`, of the Brieskorn-Pham
/// Jacobian ideal `(x_i^{a_i - 1})`.
fn brieskorn_pham_dims(exponents: &[u32], ws: &WeightSystem, len: usize) -> Vec<usize> {
    let mut dims = vec![0usize; len];
    let mut stack = vec![(0usize, 0u64)];
    while let Some((i, deg)) = stack.pop() {
        if i == exponents.len() {
            dims[deg as usize] += 1;
            continue;
        }
        for e in 0..exponents[i] - 1 {
            stack.push((i + 1, deg + u64::from(e) * ws.weights()[i]));
        }
    }
    dims
}

#[test]
fn brieskorn_pham_graded_pieces() {
    for a in 2..=5u32 {
        for b in 2..=5u32 {
            for c in 2..=4u32 {
                let f = parse(&format!("x^{a} + y^{b} + z^{c}"));
                let r = full_report(&f, None).unwrap();
                let expected = brieskorn_pham_dims(&[a, b, c], &r.weight_system, r.per_degree_dims.len());
                assert_eq!(r.per_degree_dims, expected, "({a},{b},{c})");
                assert_eq!(r.mu(), Some(((a - 1) * (b - 1) * (c - 1)) as usize));
            }
        }
    }
}

#[test]
fn d_series_graded_pieces() {
    // basis 1, x, ..., x^{k-2}, y of C[x,y]/(x^{k-2} + y^2, xy)
    for k in 4..=8u32 {
        let f = parse(&format!("x^{} + x*y^2", k - 1));
        let r = full_report(&f, None).unwrap();
        let (wx, wy) = (r.weight_system.weights()[0], r.weight_system.weights()[1]);
        let mut expected: BTreeMap<u64, usize> = BTreeMap::new();
        for i in 0..=u64::from(k) - 2 {
            *expected.entry(i * wx).or_default() += 1;
        }
        *expected.entry(wy).or_default() += 1;
        for (alpha, &dim) in r.per_degree_dims.iter().enumerate() {
            assert_eq!(dim, expected.get(&(alpha as u64)).copied().unwrap_or(0), "D{k} alpha {alpha}");
        }
        assert_eq!(r.mu(), Some(k as usize));
    }
}

#[test]
fn e_series() {
    for (text, mu) in [("x^3 + y^4", 6), ("x^3 + x*y^3", 7), ("x^3 + y^5", 8)] {
        let f = parse(text);
        let ws = infer_weight_system(&f).unwrap();
        assert_eq!(mu_oracle(&f, &ws).unwrap(), mu, "{text}");
        let bound = milnor::socle_bound(&ws) + ws.max_weight();
        assert_eq!(milnor_algebra_dims(&f, &ws, bound).unwrap(), naive_milnor_dims(&f, &ws, bound), "{text}");
    }
}

#[test]
fn bundled_corpus_expectations_hold() {
    let cases = corpus::parse_corpus(corpus::CLASSICAL_CORPUS).unwrap();
    for outcome in corpus::run_corpus(&cases) {
        assert!(outcome.passed, "{}: {:?}", outcome.case.name, outcome.report);
        if let Expectation::Mu(mu) = outcome.case.expected {
            let ws = &outcome.report.as_ref().unwrap().weight_system;
            assert_eq!(milnor::mu_formula(ws).unwrap(), BigRational::from_integer(mu.into()));
        }
    }
}

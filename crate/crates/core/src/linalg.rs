//! Exact linear algebra over the rationals.
//!
//! Ranks are computed modulo word-sized primes and then certified over Q. A
//! modular rank never exceeds the rational one, so it is exact once it reaches
//! `min(rows, cols)`. Below that, two certificates bound it from above:
//!
//! * for a chain of maps whose consecutive products vanish, `rank L + rank R`
//!   cannot exceed the middle dimension, so modular ranks adding up to it are
//!   exact;
//! * otherwise the modular kernel is lifted to Q by Chinese remaindering and
//!   rational reconstruction and checked against the matrix.
//!
//! If neither succeeds within `MAX_PRIMES` primes, the rank comes from
//! fraction-free (Bareiss) elimination. Small systems are solved by
//! Gauss-Jordan over `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

/// Primes tried before falling back to Bareiss elimination.
const MAX_PRIMES: usize = 32;

/// Primes tried for the chain certificate before ranks are computed one by one.
const CHAIN_PRIMES: usize = 2;

/// Integer matrix stored as sparse rows of `(column, value)`, columns increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    ncols: usize,
    rows: Vec<Vec<(usize, BigInt)>>,
}

impl IntegerMatrix {
    pub fn new(ncols: usize) -> Self {
        IntegerMatrix { ncols, rows: Vec::new() }
    }

    /// Scales the whole matrix by one common denominator, so products with
    /// other matrices vanish exactly when the rational ones do.
    pub fn from_rational_rows(rows: &[Vec<BigRational>], ncols: usize) -> Self {
        let lcm = rows
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut m = IntegerMatrix::new(ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged matrix");
            m.push_row(
                row.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(c, x)| (c, x.numer() * (&lcm / x.denom())))
                    .collect(),
            );
        }
        m
    }

    /// Adds a row given as `(column, value)` pairs in any order; repeated
    /// columns are summed.
    pub fn push_row(&mut self, mut entries: Vec<(usize, BigInt)>) {
        entries.sort_by_key(|(c, _)| *c);
        let mut row: Vec<(usize, BigInt)> = Vec::with_capacity(entries.len());
        for (c, x) in entries {
            assert!(c < self.ncols, "column {c} out of range");
            match row.last_mut() {
                Some((last, acc)) if *last == c => *acc += x,
                _ => row.push((c, x)),
            }
        }
        row.retain(|(_, x)| !x.is_zero());
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<(usize, BigInt)>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        self.rows
            .iter()
            .map(|row| {
                let mut dense = vec![BigInt::zero(); self.ncols];
                for (c, x) in row {
                    dense[*c] = x.clone();
                }
                dense
            })
            .collect()
    }

    /// Whether `self * rhs` is the zero matrix.
    pub fn product_is_zero(&self, rhs: &IntegerMatrix) -> bool {
        assert_eq!(self.ncols, rhs.nrows(), "inner dimensions differ");
        let mut acc = vec![BigInt::zero(); rhs.ncols];
        let mut touched = Vec::new();
        for row in &self.rows {
            for (l, a) in row {
                for (j, b) in &rhs.rows[*l] {
                    if acc[*j].is_zero() {
                        touched.push(*j);
                    }
                    acc[*j] += a * b;
                }
            }
            let zero = touched.iter().all(|&j| acc[j].is_zero());
            for j in touched.drain(..) {
                acc[j].set_zero();
            }
            if !zero {
                return false;
            }
        }
        true
    }

    pub fn rank(&self) -> usize {
        let full = self.nrows().min(self.ncols);
        if full == 0 || self.is_zero() {
            return 0;
        }
        let mut lift: Option<KernelLift> = None;
        for p in primes() {
            let echelon = ModularEchelon::new(self, p, false);
            if echelon.rank() == full {
                return full;
            }
            let better = lift.as_ref().is_none_or(|l| {
                echelon.pivots.len() > l.pivots.len()
                    || (echelon.pivots.len() == l.pivots.len() && echelon.pivots < l.pivots)
            });
            if better {
                lift = Some(KernelLift::new(&ModularEchelon::new(self, p, true)));
            } else if lift.as_ref().is_some_and(|l| l.pivots == echelon.pivots) {
                lift.as_mut().unwrap().add(&ModularEchelon::new(self, p, true));
            } else {
                continue;
            }
            let l = lift.as_ref().unwrap();
            if l.certifies(self) {
                return l.pivots.len();
            }
        }
        integer_rank(self.to_dense())
    }
}

/// Rank of a rational matrix given as rows.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    IntegerMatrix::from_rational_rows(rows, ncols).rank()
}

/// Ranks of a chain of maps, and whether each consecutive product vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainRanks {
    pub ranks: Vec<usize>,
    /// `composes_to_zero[i]` is whether `maps[i] * maps[i + 1] = 0`.
    pub composes_to_zero: Vec<bool>,
}

/// Exact ranks of `maps[0], maps[1], ...` where the products
/// `maps[i] * maps[i + 1]` are expected to vanish.
///
/// Every product is checked exactly. Where it vanishes and the modular ranks
/// of the two factors add up to the inner dimension, both ranks are exact
/// without leaving word-sized arithmetic; any rank left uncertified is
/// computed on its own.
pub fn chain_ranks(maps: &[IntegerMatrix]) -> ChainRanks {
    let composes_to_zero: Vec<bool> = maps.windows(2).map(|w| w[0].product_is_zero(&w[1])).collect();
    let mut ranks = vec![0usize; maps.len()];
    let mut certified = vec![false; maps.len()];
    for p in primes().take(CHAIN_PRIMES) {
        for (i, m) in maps.iter().enumerate() {
            if !certified[i] {
                ranks[i] = ranks[i].max(ModularEchelon::new(m, p, false).rank());
                certified[i] = ranks[i] == m.nrows().min(m.ncols());
            }
        }
        for i in 0..composes_to_zero.len() {
            if composes_to_zero[i] && ranks[i] + ranks[i + 1] == maps[i].ncols() {
                certified[i] = true;
                certified[i + 1] = true;
            }
        }
        if certified.iter().all(|&c| c) {
            return ChainRanks { ranks, composes_to_zero };
        }
    }
    for (i, m) in maps.iter().enumerate() {
        if !certified[i] {
            ranks[i] = m.rank();
        }
    }
    ChainRanks { ranks, composes_to_zero }
}

/// The `MAX_PRIMES` largest primes below `2^31`, decreasing.
fn primes() -> impl Iterator<Item = u64> {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES
        .get_or_init(|| {
            (3..1u64 << 31)
                .rev()
                .step_by(2)
                .filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
                .take(MAX_PRIMES)
                .collect()
        })
        .iter()
        .copied()
}

/// Echelon form modulo `p`; with `reduced`, entries above pivots are cleared too.
struct ModularEchelon {
    p: u64,
    ncols: usize,
    /// Pivot columns, increasing.
    pivots: Vec<usize>,
    /// Pivot rows, dense, normalized to 1 at the pivot.
    rows: Vec<Vec<u64>>,
}

impl ModularEchelon {
    fn new(matrix: &IntegerMatrix, p: u64, reduced: bool) -> Self {
        let big_p = BigInt::from(p);
        let ncols = matrix.ncols();
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(matrix.nrows());
        for sparse in matrix.rows() {
            let mut dense = vec![0u64; ncols];
            let mut nonzero = false;
            for (c, x) in sparse {
                let v = x.mod_floor(&big_p).to_u64().expect("residue below p");
                nonzero |= v != 0;
                dense[*c] = v;
            }
            if nonzero {
                rows.push(dense);
            }
        }
        let mut pivots = Vec::new();
        let mut support = Vec::with_capacity(ncols);
        let mut r = 0;
        for c in 0..ncols {
            if r == rows.len() {
                break;
            }
            let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, i);
            let inv = inverse(rows[r][c], p);
            support.clear();
            for (j, x) in rows[r].iter_mut().enumerate().skip(c) {
                if *x != 0 {
                    *x = *x * inv % p;
                    support.push(j);
                }
            }
            let (top, rest) = rows.split_at_mut(r + 1);
            eliminate(&top[r], &support, c, rest, p);
            if reduced {
                let (above, pivot) = top.split_at_mut(r);
                eliminate(&pivot[0], &support, c, above, p);
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        ModularEchelon { p, ncols, pivots, rows }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn free_columns(&self) -> Vec<usize> {
        let mut pivots = self.pivots.iter().peekable();
        (0..self.ncols)
            .filter(|c| {
                if pivots.peek() == Some(&c) {
                    pivots.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }

    /// Entry at pivot row `k` of the kernel vector for free column `f`.
    fn kernel_entry(&self, k: usize, f: usize) -> u64 {
        (self.p - self.rows[k][f]) % self.p
    }
}

/// Subtracts multiples of `pivot` (1 at column `c`, nonzero on `support`)
/// from `targets` to clear column `c`.
fn eliminate(pivot: &[u64], support: &[usize], c: usize, targets: &mut [Vec<u64>], p: u64) {
    for row in targets.iter_mut().filter(|row| row[c] != 0) {
        let factor = p - row[c];
        for &j in support {
            row[j] = (row[j] + factor * pivot[j]) % p;
        }
    }
}

fn inverse(a: u64, p: u64) -> u64 {
    let (mut e, mut base, mut acc) = (p - 2, a % p, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Kernel basis residues accumulated over primes sharing one pivot set.
///
/// The vector for free column `f` is 1 at `f`, 0 at the other free columns and
/// `values[k][j]` at pivot column `pivots[k]`, where `j` indexes `free`.
struct KernelLift {
    pivots: Vec<usize>,
    free: Vec<usize>,
    modulus: BigInt,
    values: Vec<Vec<BigInt>>,
}

impl KernelLift {
    fn new(e: &ModularEchelon) -> Self {
        let free = e.free_columns();
        let values = (0..e.rank())
            .map(|k| free.iter().map(|&f| BigInt::from(e.kernel_entry(k, f))).collect())
            .collect();
        KernelLift { pivots: e.pivots.clone(), free, modulus: BigInt::from(e.p), values }
    }

    fn add(&mut self, e: &ModularEchelon) {
        let p = BigInt::from(e.p);
        // x = v + M * ((a - v) * M^{-1} mod p)
        let m_inv = BigInt::from(inverse((&self.modulus % &p).to_u64().unwrap(), e.p));
        for (k, row) in self.values.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                let a = BigInt::from(e.kernel_entry(k, self.free[j]));
                let t = ((a - &*v) * &m_inv).mod_floor(&p);
                *v += &self.modulus * t;
            }
        }
        self.modulus *= p;
    }

    /// Reconstructs every kernel vector over Q and checks it against the matrix.
    fn certifies(&self, matrix: &IntegerMatrix) -> bool {
        let mut v = vec![BigInt::zero(); matrix.ncols()];
        for (j, &f) in self.free.iter().enumerate() {
            let mut fractions = Vec::with_capacity(self.pivots.len());
            for row in &self.values {
                match rational_reconstruction(&row[j], &self.modulus) {
                    Some(q) => fractions.push(q),
                    None => return false,
                }
            }
            let lcm = fractions.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            v.iter_mut().for_each(Zero::set_zero);
            v[f] = lcm.clone();
            for (&c, q) in self.pivots.iter().zip(&fractions) {
                v[c] = q.numer() * (&lcm / q.denom());
            }
            let annihilated = matrix.rows().iter().all(|row| {
                row.iter()
                    .fold(BigInt::zero(), |acc, (c, x)| acc + x * &v[*c])
                    .is_zero()
            });
            if !annihilated {
                return false;
            }
        }
        true
    }
}

/// `a/b` with `|a|, b <= sqrt(m/2)` and `a = b u mod m`, if one exists.
fn rational_reconstruction(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1) = (r1, r2);
        (t0, t1) = (t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Rank of a dense integer matrix by Bareiss elimination; every division is exact.
pub fn integer_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot.clone();
        r += 1;
    }
    r
}

/// Outcome of solving `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<BigRational>),
    /// Consistent with a solution space of the given positive dimension.
    Underdetermined(usize),
    Inconsistent,
}

/// Solves `A x = b` exactly by Gauss-Jordan elimination.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational], nunknowns: usize) -> LinearSolution {
    assert_eq!(a.len(), b.len());
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), nunknowns);
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nunknowns {
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[nunknowns].is_zero()) {
        return LinearSolution::Inconsistent;
    }
    if r < nunknowns {
        return LinearSolution::Underdetermined(nunknowns - r);
    }
    let mut x = vec![BigRational::zero(); nunknowns];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = m[row][nunknowns].clone();
    }
    LinearSolution::Unique(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn ranks_of_small_matrices() {
        assert_eq!(integer_rank(vec![]), 0);
        assert_eq!(integer_rank(int_matrix(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(integer_rank(int_matrix(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(integer_rank(int_matrix(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
        assert_eq!(integer_rank(int_matrix(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]])), 2);
        assert_eq!(integer_rank(int_matrix(&[&[0, 0, 3], &[0, 2, 0], &[1, 0, 0]])), 3);
        // zero column between pivots
        assert_eq!(integer_rank(int_matrix(&[&[2, 0, 1], &[4, 0, 3], &[6, 0, 4]])), 2);
    }

    fn int_rows(rows: &[Vec<BigInt>]) -> IntegerMatrix {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = IntegerMatrix::new(ncols);
        for row in rows {
            m.push_row(row.iter().cloned().enumerate().collect());
        }
        m
    }

    #[test]
    fn certified_rank_matches_bareiss() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x7a4c);
        for _ in 0..300 {
            let (m, n, k) = (rng.random_range(1..9), rng.random_range(1..9), rng.random_range(0..6));
            // an m x k times k x n product has rank at most k
            let a: Vec<Vec<i64>> = (0..m).map(|_| (0..k).map(|_| rng.random_range(-3..=3)).collect()).collect();
            let b: Vec<Vec<i64>> = (0..k).map(|_| (0..n).map(|_| rng.random_range(-3..=3)).collect()).collect();
            let product: Vec<Vec<BigInt>> = (0..m)
                .map(|i| (0..n).map(|j| (0..k).map(|l| BigInt::from(a[i][l] * b[l][j])).sum()).collect())
                .collect();
            assert_eq!(int_rows(&product).rank(), integer_rank(product.clone()), "{product:?}");
        }
    }

    #[test]
    fn entries_divisible_by_the_first_primes() {
        let p = BigInt::from(primes().next().unwrap());
        let q = BigInt::from(primes().nth(1).unwrap());
        let m = vec![vec![p.clone(), BigInt::zero()], vec![BigInt::zero(), BigInt::one()]];
        assert_eq!(int_rows(&m).rank(), 2);
        // rank 2, but rank 1 modulo the first two primes
        let pq = &p * &q;
        let m = vec![
            vec![pq.clone(), BigInt::one(), BigInt::zero()],
            vec![BigInt::zero(), BigInt::from(2), BigInt::zero()],
            vec![pq.clone(), BigInt::from(3), BigInt::zero()],
        ];
        assert_eq!(int_rows(&m).rank(), 2);
        assert_eq!(integer_rank(m), 2);
    }

    #[test]
    fn kernel_with_fractions() {
        // kernel spanned by (3, -7, 2)
        let m = int_matrix(&[&[2, 0, -3], &[0, 2, 7], &[2, 2, 4]]);
        assert_eq!(int_rows(&m).rank(), 2);
        let modulus = BigInt::from(1_000_003u64);
        let u = BigInt::from(5 * inverse(7, 1_000_003));
        assert_eq!(rational_reconstruction(&u, &modulus), Some(BigRational::new(5.into(), 7.into())));
        let u = BigInt::from((1_000_003 - 5) * inverse(7, 1_000_003));
        assert_eq!(rational_reconstruction(&u, &modulus), Some(BigRational::new((-5).into(), 7.into())));
    }

    #[test]
    fn sparse_rows_and_products() {
        let mut m = IntegerMatrix::new(3);
        m.push_row(vec![(2, 1.into()), (0, 2.into()), (2, (-1).into())]);
        assert_eq!(m.rows()[0], vec![(0, BigInt::from(2))]);
        // a complex: [1 1] * [[1, -1], [-1, 1]] = 0
        let left = int_rows(&[vec![1.into(), 1.into()]]);
        let right = int_rows(&[vec![1.into(), (-1).into()], vec![(-1).into(), 1.into()]]);
        assert!(left.product_is_zero(&right));
        assert!(!right.product_is_zero(&right));
        assert_eq!(
            chain_ranks(&[left.clone(), right.clone()]),
            ChainRanks { ranks: vec![1, 1], composes_to_zero: vec![true] }
        );
        // not a complex: ranks still exact
        assert_eq!(
            chain_ranks(&[right.clone(), right]),
            ChainRanks { ranks: vec![1, 1], composes_to_zero: vec![false] }
        );
    }

    #[test]
    fn chain_with_homology_falls_back() {
        // [0 1] * [[1], [0]] = 0 but ranks 1 + 1 = 2 = middle; now a chain with homology
        let left = int_rows(&[vec![0.into(), 1.into(), 0.into()]]);
        let right = int_rows(&[vec![1.into()], vec![0.into()], vec![0.into()]]);
        assert_eq!(chain_ranks(&[left, right]).ranks, vec![1, 1]);
        let zero = int_rows(&[vec![0.into(), 0.into()], vec![0.into(), 0.into()]]);
        assert_eq!(chain_ranks(&[zero.clone(), zero]).ranks, vec![0, 0]);
    }

    #[test]
    fn rational_rank_clears_denominators() {
        let half = BigRational::new(1.into(), 2.into());
        let rows = vec![vec![half.clone(), q(1)], vec![q(1), q(2)]];
        assert_eq!(rank(&rows), 1);
        let m = IntegerMatrix::from_rational_rows(&[vec![half, BigRational::new(2.into(), 3.into())]], 2);
        assert_eq!(m.to_dense(), vec![vec![BigInt::from(3), BigInt::from(4)]]);
    }

    #[test]
    fn solves_systems() {
        // 3a = 1, b + 3c... unique solution for x^3 + x y^3: 3a = 1, a + 3b = 1
        let a = vec![vec![q(3), q(0)], vec![q(1), q(3)]];
        let b = vec![q(1), q(1)];
        assert_eq!(
            solve(&a, &b, 2),
            LinearSolution::Unique(vec![
                BigRational::new(1.into(), 3.into()),
                BigRational::new(2.into(), 9.into())
            ])
        );
        assert_eq!(solve(&[vec![q(1), q(1)]], &[q(1)], 2), LinearSolution::Underdetermined(1));
        assert_eq!(
            solve(&[vec![q(1)], vec![q(2)]], &[q(1), q(1)], 1),
            LinearSolution::Inconsistent
        );
    }
}

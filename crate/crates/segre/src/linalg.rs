//! Exact rank computations: fraction-free elimination over the rationals and
//! ordinary Gaussian elimination over a prime field, plus a streaming sparse
//! row-eliminator used for graded ideal dimensions.
//!
//! Pivoting is deterministic everywhere: the first nonzero entry in column
//! order wins, so identical inputs produce identical pivot sequences.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{fp_inv, fp_mul, fp_sub, Scalar, ScalarDomain};

/// A dense matrix over a single scalar domain, row-major.
#[derive(Clone, Debug)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub domain: ScalarDomain,
    entries: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize, domain: ScalarDomain) -> Self {
        DenseMatrix {
            rows,
            cols,
            domain,
            entries: vec![Scalar::zero(domain); rows * cols],
        }
    }

    /// Build from row-major entries; all entries must share one domain.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::invalid(format!(
                "expected {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let domain = entries
            .first()
            .map(Scalar::domain)
            .ok_or_else(|| Error::invalid("matrix must have at least one entry"))?;
        if entries.iter().any(|e| e.domain() != domain) {
            return Err(Error::DomainMismatch(
                "matrix entries mix scalar domains".into(),
            ));
        }
        Ok(DenseMatrix {
            rows,
            cols,
            domain,
            entries,
        })
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.domain(), self.domain);
        self.entries[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.cols, self.rows, self.domain);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Exact rank: Bareiss fraction-free elimination over the rationals
    /// (denominators cleared row-wise first), ordinary elimination over F_p.
    pub fn rank(&self) -> usize {
        match self.domain {
            ScalarDomain::Rational => {
                let m: Vec<Vec<BigInt>> = (0..self.rows)
                    .map(|i| {
                        let row: Vec<BigRational> = (0..self.cols)
                            .map(|j| match self.get(i, j) {
                                Scalar::Rat(r) => r.clone(),
                                Scalar::Fp { .. } => unreachable!(),
                            })
                            .collect();
                        clear_denominators(&row)
                    })
                    .collect();
                bareiss_rank(m)
            }
            ScalarDomain::Prime(p) => {
                let m: Vec<Vec<u64>> = (0..self.rows)
                    .map(|i| {
                        (0..self.cols)
                            .map(|j| match self.get(i, j) {
                                Scalar::Fp { value, .. } => *value,
                                Scalar::Rat(_) => unreachable!(),
                            })
                            .collect()
                    })
                    .collect();
                fp_rank(m, p)
            }
        }
    }
}

fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for r in row {
        lcm = lcm.lcm(r.denom());
    }
    row.iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect()
}

/// Fraction-free (Bareiss) rank of an integer matrix. Every division in the
/// two-step update is exact; this is asserted.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        for i in (r + 1)..rows {
            for j in (c + 1)..cols {
                let num = &m[i][j] * &m[r][c] - &m[i][c] * &m[r][j];
                let (q, rem) = num.div_rem(&prev);
                assert!(rem.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Rank over F_p by forward elimination with first-nonzero pivoting.
pub fn fp_rank(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m[i][c] % p != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = fp_inv(m[r][c] % p, p);
        for j in c..cols {
            m[r][j] = fp_mul(m[r][j] % p, inv, p);
        }
        for i in (r + 1)..rows {
            let f = m[i][c] % p;
            if f != 0 {
                for j in c..cols {
                    m[i][j] = fp_sub(m[i][j] % p, fp_mul(f, m[r][j], p), p);
                }
            }
        }
        r += 1;
    }
    r
}

/// A sparse row: (column key, value mod p) pairs sorted by ascending key,
/// values nonzero. Column keys carry the canonical column order: smaller key
/// = earlier column, so the pivot of a row is its first entry.
pub type SparseRow = Vec<(u128, u64)>;

/// Streaming Gaussian eliminator over F_p. Rows are offered one at a time in
/// a caller-chosen deterministic order; pivot rows are normalized and kept.
pub struct SparseEliminator {
    pub prime: u64,
    pivots: BTreeMap<u128, SparseRow>,
    rank: usize,
}

impl SparseEliminator {
    pub fn new(prime: u64) -> Self {
        SparseEliminator {
            prime,
            pivots: BTreeMap::new(),
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Pivot column keys in ascending order.
    pub fn pivot_columns(&self) -> Vec<u128> {
        self.pivots.keys().copied().collect()
    }

    /// Reduce `row` against the pivots found so far; if a nonzero remainder
    /// survives it becomes a new pivot row. Returns true when rank grew.
    pub fn offer(&mut self, mut row: SparseRow) -> bool {
        let p = self.prime;
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        loop {
            let Some(&(lead, val)) = row.first() else {
                return false;
            };
            debug_assert!(val % p != 0);
            match self.pivots.get(&lead) {
                Some(pivot_row) => {
                    row = row_sub_scaled(&row, pivot_row, val, p);
                }
                None => {
                    let inv = fp_inv(val, p);
                    for (_, v) in row.iter_mut() {
                        *v = fp_mul(*v, inv, p);
                    }
                    self.pivots.insert(lead, row);
                    self.rank += 1;
                    return true;
                }
            }
        }
    }
}

/// row − f · pivot, both sorted; pivot has leading value 1 at `row`'s lead.
fn row_sub_scaled(row: &SparseRow, pivot: &SparseRow, f: u64, p: u64) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i]);
            i += 1;
        } else if take_piv {
            let v = fp_sub(0, fp_mul(f, pivot[j].1, p), p);
            if v != 0 {
                out.push((pivot[j].0, v));
            }
            j += 1;
        } else {
            let v = fp_sub(row[i].1, fp_mul(f, pivot[j].1, p), p);
            if v != 0 {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// A bag of sparse rows over a common prime; `row_space_dimension` is the rank.
pub struct SparseRowSet {
    pub prime: u64,
    pub rows: Vec<SparseRow>,
}

impl SparseRowSet {
    pub fn new(prime: u64) -> Self {
        SparseRowSet {
            prime,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: SparseRow) {
        self.rows.push(row);
    }

    pub fn row_space_dimension(&self) -> usize {
        let mut elim = SparseEliminator::new(self.prime);
        for row in &self.rows {
            elim.offer(row.clone());
        }
        elim.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{DEFAULT_PRIME, SECOND_PRIME};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rat(n: i64, d: i64) -> Scalar {
        Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn rat_matrix(data: &[&[(i64, i64)]]) -> DenseMatrix {
        let rows = data.len();
        let cols = data[0].len();
        let entries = data
            .iter()
            .flat_map(|r| r.iter().map(|&(n, d)| rat(n, d)))
            .collect();
        DenseMatrix::from_entries(rows, cols, entries).unwrap()
    }

    #[test]
    fn rank_of_identity_and_zero() {
        let id = rat_matrix(&[&[(1, 1), (0, 1)], &[(0, 1), (1, 1)]]);
        assert_eq!(id.rank(), 2);
        let z = DenseMatrix::zeros(3, 4, ScalarDomain::Rational);
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn proportional_fractional_rows_have_rank_one() {
        let m = rat_matrix(&[&[(1, 2), (1, 3)], &[(1, 4), (1, 6)]]);
        assert_eq!(m.rank(), 1);
        let m2 = rat_matrix(&[&[(1, 2), (1, 3)], &[(1, 4), (1, 5)]]);
        assert_eq!(m2.rank(), 2);
    }

    #[test]
    fn rectangular_and_transpose() {
        let m = rat_matrix(&[&[(1, 1), (2, 1), (3, 1)], &[(2, 1), (4, 1), (6, 1)]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.transpose().rank(), 1);
        assert_eq!(m.transpose().rows, 3);
    }

    #[test]
    fn rational_and_prime_field_ranks_agree_on_random_integer_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for trial in 0..40 {
            let rows = rng.gen_range(1..=12);
            let cols = rng.gen_range(1..=12);
            let ints: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-9..=9)).collect();
            let rational = DenseMatrix::from_entries(
                rows,
                cols,
                ints.iter()
                    .map(|&v| Scalar::from_int(v, ScalarDomain::Rational))
                    .collect(),
            )
            .unwrap();
            let rq = rational.rank();
            for p in [DEFAULT_PRIME, SECOND_PRIME] {
                let modular = DenseMatrix::from_entries(
                    rows,
                    cols,
                    ints.iter()
                        .map(|&v| Scalar::from_int(v, ScalarDomain::Prime(p)))
                        .collect(),
                )
                .unwrap();
                assert_eq!(modular.rank(), rq, "trial {trial} prime {p}");
            }
        }
    }

    #[test]
    fn rank_one_outer_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let u: Vec<i64> = (0..6).map(|_| rng.gen_range(1..=9)).collect();
        let v: Vec<i64> = (0..5).map(|_| rng.gen_range(1..=9)).collect();
        let entries: Vec<Scalar> = u
            .iter()
            .flat_map(|&a| {
                v.iter()
                    .map(move |&b| Scalar::from_int(a * b, ScalarDomain::Rational))
            })
            .collect();
        let m = DenseMatrix::from_entries(6, 5, entries).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn mixed_domains_rejected() {
        let entries = vec![
            Scalar::from_int(1, ScalarDomain::Rational),
            Scalar::from_int(1, ScalarDomain::Prime(DEFAULT_PRIME)),
        ];
        assert!(DenseMatrix::from_entries(1, 2, entries).is_err());
    }

    #[test]
    fn sparse_row_space_dimension() {
        let p = DEFAULT_PRIME;
        let mut set = SparseRowSet::new(p);
        assert_eq!(set.row_space_dimension(), 0);
        set.push(vec![(2, 1), (5, 3)]);
        set.push(vec![(2, 2), (5, 6)]); // scalar multiple
        set.push(vec![(2, 2), (5, 6)]); // duplicate
        assert_eq!(set.row_space_dimension(), 1);
        set.push(vec![(0, 1)]);
        assert_eq!(set.row_space_dimension(), 2);
        set.push(vec![(0, 5), (2, 1), (5, 3)]); // combination of the two pivots
        assert_eq!(set.row_space_dimension(), 2);
        set.push(vec![(7, p - 1)]);
        assert_eq!(set.row_space_dimension(), 3);
    }

    #[test]
    fn sparse_eliminator_pivots_are_deterministic() {
        let rows: Vec<SparseRow> = vec![
            vec![(3, 4), (9, 1)],
            vec![(1, 2), (3, 1)],
            vec![(1, 4), (3, 2)],
            vec![(9, 5)],
        ];
        let run = || {
            let mut e = SparseEliminator::new(SECOND_PRIME);
            for r in &rows {
                e.offer(r.clone());
            }
            (e.rank(), e.pivot_columns())
        };
        let (r1, p1) = run();
        let (r2, p2) = run();
        assert_eq!(r1, 3);
        assert_eq!(p1, vec![1, 3, 9]);
        assert_eq!((r1, p1), (r2, p2));
    }

    #[test]
    fn dense_and_sparse_ranks_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..20 {
            let rows = rng.gen_range(1..=10);
            let cols = rng.gen_range(1..=10);
            let ints: Vec<u64> = (0..rows * cols)
                .map(|_| rng.gen_range(0..=4) as u64)
                .collect();
            let p = DEFAULT_PRIME;
            let dense = DenseMatrix::from_entries(
                rows,
                cols,
                ints.iter()
                    .map(|&v| Scalar::Fp { value: v % p, prime: p })
                    .collect(),
            )
            .unwrap();
            let mut set = SparseRowSet::new(p);
            for i in 0..rows {
                let row: SparseRow = (0..cols)
                    .filter_map(|j| {
                        let v = ints[i * cols + j] % p;
                        (v != 0).then_some((j as u128, v))
                    })
                    .collect();
                set.push(row);
            }
            assert_eq!(dense.rank(), set.row_space_dimension());
        }
    }
}

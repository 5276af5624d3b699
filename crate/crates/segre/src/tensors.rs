//! Dense tensors on a product of factors, flattenings, and multilinear rank.
//!
//! Entries are stored row-major (last factor index fastest). Factor subsets
//! are 0-based in the Rust API; every serialized form (JSON, CLI) is 1-based.
//!
//! The flattening for a factor subset I groups the I-factors as column index
//! and the complementary factors as row index, both in lexicographic
//! multi-index order. For shape (2,2,2,2) and I = {0,1} this reproduces the
//! classical 4×4 layout whose first row is φ_1111, φ_1211, φ_2111, φ_2211.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::scalar::{Scalar, ScalarDomain};

/// Factor dimensions (a_1, …, a_n), n ≥ 2, every a_j ≥ 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Shape(Vec<usize>);

impl TryFrom<Vec<usize>> for Shape {
    type Error = Error;
    fn try_from(dims: Vec<usize>) -> Result<Self> {
        Shape::new(dims)
    }
}

impl From<Shape> for Vec<usize> {
    fn from(s: Shape) -> Vec<usize> {
        s.0
    }
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Shape {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.len() < 2 {
            return Err(Error::invalid("a shape needs at least two factors"));
        }
        if dims.iter().any(|&a| a < 2) {
            return Err(Error::invalid(format!(
                "all factor dimensions must be at least 2, got {dims:?}"
            )));
        }
        Ok(Shape(dims))
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    pub fn num_factors(&self) -> usize {
        self.0.len()
    }

    /// Total number of coordinates Π a_j.
    pub fn total_dim(&self) -> usize {
        self.0.iter().product()
    }

    /// Linear index of a 0-based multi-index (row-major).
    pub fn linear_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.0.len());
        let mut v = 0usize;
        for (a, i) in self.0.iter().zip(idx) {
            debug_assert!(i < a);
            v = v * a + i;
        }
        v
    }

    /// Inverse of [`Shape::linear_index`].
    pub fn multi_index(&self, mut lin: usize) -> Vec<usize> {
        let mut idx = vec![0usize; self.0.len()];
        for (k, &a) in self.0.iter().enumerate().rev() {
            idx[k] = lin % a;
            lin /= a;
        }
        idx
    }

    /// Validate a 0-based factor subset: strictly increasing, nonempty,
    /// proper, in range.
    pub fn check_subset(&self, subset: &[usize]) -> Result<()> {
        if subset.is_empty() || subset.len() >= self.0.len() {
            return Err(Error::invalid(format!(
                "factor subset must be nonempty and proper, got {subset:?} on {self}"
            )));
        }
        for w in subset.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::invalid(format!(
                    "factor subset must be strictly increasing, got {subset:?}"
                )));
            }
        }
        if *subset.last().unwrap() >= self.0.len() {
            return Err(Error::invalid(format!(
                "factor subset {subset:?} out of range for {self}"
            )));
        }
        Ok(())
    }
}

/// A dense tensor over one scalar domain.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    pub shape: Shape,
    pub domain: ScalarDomain,
    entries: Vec<Scalar>,
}

impl Tensor {
    pub fn zeros(shape: Shape, domain: ScalarDomain) -> Self {
        let n = shape.total_dim();
        Tensor {
            shape,
            domain,
            entries: vec![Scalar::zero(domain); n],
        }
    }

    pub fn from_entries(shape: Shape, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != shape.total_dim() {
            return Err(Error::invalid(format!(
                "shape {shape} needs {} entries, got {}",
                shape.total_dim(),
                entries.len()
            )));
        }
        let domain = entries[0].domain();
        if entries.iter().any(|e| e.domain() != domain) {
            return Err(Error::DomainMismatch("tensor entries mix domains".into()));
        }
        Ok(Tensor {
            shape,
            domain,
            entries,
        })
    }

    /// The basis tensor e_{idx} (0-based multi-index).
    pub fn basis(shape: Shape, idx: &[usize], domain: ScalarDomain) -> Result<Self> {
        if idx.len() != shape.num_factors() || idx.iter().zip(shape.dims()).any(|(i, a)| i >= a) {
            return Err(Error::invalid(format!(
                "multi-index {idx:?} invalid for {shape}"
            )));
        }
        let mut t = Tensor::zeros(shape, domain);
        let lin = t.shape.linear_index(idx);
        t.entries[lin] = Scalar::one(domain);
        Ok(t)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, idx: &[usize]) -> &Scalar {
        &self.entries[self.shape.linear_index(idx)]
    }

    pub fn get_linear(&self, lin: usize) -> &Scalar {
        &self.entries[lin]
    }

    pub fn set(&mut self, idx: &[usize], v: Scalar) {
        debug_assert_eq!(v.domain(), self.domain);
        let lin = self.shape.linear_index(idx);
        self.entries[lin] = v;
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        if self.shape != other.shape {
            return Err(Error::invalid("shape mismatch in tensor sum"));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Tensor::from_entries(self.shape.clone(), entries)
    }

    pub fn scale(&self, s: &Scalar) -> Result<Tensor> {
        let entries = self
            .entries
            .iter()
            .map(|a| s.mul(a))
            .collect::<Result<Vec<_>>>()?;
        Tensor::from_entries(self.shape.clone(), entries)
    }

    /// Seeded random tensor of (border) rank at most `r`: a sum of `r` outer
    /// products of factor vectors. Rational entries are uniform integers in
    /// [−9, 9]; prime-field entries are uniform residues. Factor vectors that
    /// come out all-zero are resampled. Draw order: summand by summand,
    /// factor by factor, entry by entry — fixed, so a seed pins the tensor.
    pub fn random_rank(shape: Shape, r: usize, seed: u64, domain: ScalarDomain) -> Result<Tensor> {
        if r == 0 {
            return Err(Error::invalid("rank must be positive"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut t = Tensor::zeros(shape.clone(), domain);
        let n = shape.num_factors();
        for _ in 0..r {
            let vectors: Vec<Vec<Scalar>> = (0..n)
                .map(|j| sample_nonzero_vector(&mut rng, shape.dims()[j], domain))
                .collect();
            // accumulate the outer product
            for lin in 0..shape.total_dim() {
                let idx = shape.multi_index(lin);
                let mut prod = Scalar::one(domain);
                for (j, &i) in idx.iter().enumerate() {
                    prod = prod.mul(&vectors[j][i])?;
                }
                t.entries[lin] = t.entries[lin].add(&prod)?;
            }
        }
        Ok(t)
    }

    /// Seeded dense tensor: every entry an independent uniform draw
    /// (integers in [−9, 9] over the rationals, residues over F_p).
    pub fn random_dense(shape: Shape, seed: u64, domain: ScalarDomain) -> Tensor {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let entries = (0..shape.total_dim())
            .map(|_| sample_entry(&mut rng, domain))
            .collect();
        Tensor {
            shape,
            domain,
            entries,
        }
    }

    /// Flatten along the factor subset `cols_subset` (0-based, strictly
    /// increasing): columns are indexed by the subset's multi-indices, rows by
    /// the complementary factors' multi-indices, both lexicographically.
    pub fn flatten(&self, cols_subset: &[usize]) -> Result<DenseMatrix> {
        self.shape.check_subset(cols_subset)?;
        let n = self.shape.num_factors();
        let comp: Vec<usize> = (0..n).filter(|j| !cols_subset.contains(j)).collect();
        let row_dims: Vec<usize> = comp.iter().map(|&j| self.shape.dims()[j]).collect();
        let col_dims: Vec<usize> = cols_subset.iter().map(|&i| self.shape.dims()[i]).collect();
        let rows: usize = row_dims.iter().product();
        let cols: usize = col_dims.iter().product();
        let mut m = DenseMatrix::zeros(rows, cols, self.domain);
        let mut full = vec![0usize; n];
        for ri in 0..rows {
            let ridx = decode(ri, &row_dims);
            for ci in 0..cols {
                let cidx = decode(ci, &col_dims);
                for (pos, &j) in comp.iter().enumerate() {
                    full[j] = ridx[pos];
                }
                for (pos, &i) in cols_subset.iter().enumerate() {
                    full[i] = cidx[pos];
                }
                m.set(ri, ci, self.get(&full).clone());
            }
        }
        Ok(m)
    }

    /// (rank of flatten({1}), …, rank of flatten({n})).
    pub fn multilinear_rank(&self) -> Result<Vec<usize>> {
        (0..self.shape.num_factors())
            .map(|j| Ok(self.flatten(&[j])?.rank()))
            .collect()
    }

    /// For every flattening split (one representative per complementary pair:
    /// the subset containing factor 0, ordered by size then lexicographically),
    /// report the rank and whether it is ≤ r.
    pub fn flattening_rank_test(&self, r: usize) -> Result<Vec<SplitRank>> {
        let mut out = Vec::new();
        for subset in split_representatives(self.shape.num_factors()) {
            let rank = self.flatten(&subset)?.rank();
            out.push(SplitRank {
                subset,
                rank,
                within: rank <= r,
            });
        }
        Ok(out)
    }

    /// Serialized form: 1-based conventions, row-major entry order, rationals
    /// as "num/den" strings, prime-field residues as integers.
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self.entries.iter().map(Scalar::to_json).collect();
        serde_json::json!({
            "shape": self.shape.dims(),
            "domain": domain_json(self.domain),
            "entries": entries,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Tensor> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::invalid("tensor JSON must be an object"))?;
        let dims: Vec<usize> = serde_json::from_value(
            obj.get("shape")
                .ok_or_else(|| Error::invalid("tensor JSON missing \"shape\""))?
                .clone(),
        )
        .map_err(|e| Error::invalid(format!("bad shape: {e}")))?;
        let shape = Shape::new(dims)?;
        let domain = domain_from_json(
            obj.get("domain")
                .ok_or_else(|| Error::invalid("tensor JSON missing \"domain\""))?,
        )?;
        let raw = obj
            .get("entries")
            .and_then(|e| e.as_array())
            .ok_or_else(|| Error::invalid("tensor JSON missing \"entries\" array"))?;
        let entries = raw
            .iter()
            .map(|e| Scalar::from_json(e, domain))
            .collect::<Result<Vec<_>>>()?;
        Tensor::from_entries(shape, entries)
    }

    /// Move the tensor to another scalar domain: rationals reduce mod p
    /// (error when a denominator is divisible by p), residues lift to
    /// integers. Moving between two different primes is rejected.
    pub fn to_domain(&self, domain: ScalarDomain) -> Result<Tensor> {
        if self.domain == domain {
            return Ok(self.clone());
        }
        let entries = self
            .entries
            .iter()
            .map(|e| match (e, domain) {
                (Scalar::Rat(r), ScalarDomain::Prime(p)) => {
                    let den = crate::scalar::bigint_mod(r.denom(), p);
                    if den == 0 {
                        return Err(Error::invalid(format!(
                            "denominator of {} is divisible by {p}",
                            e.to_json()
                        )));
                    }
                    let num = crate::scalar::bigint_mod(r.numer(), p);
                    Ok(Scalar::Fp {
                        value: crate::scalar::fp_mul(num, crate::scalar::fp_inv(den, p), p),
                        prime: p,
                    })
                }
                (Scalar::Fp { value, .. }, ScalarDomain::Rational) => {
                    Ok(Scalar::from_int(*value as i64, ScalarDomain::Rational))
                }
                (Scalar::Fp { .. }, ScalarDomain::Prime(_)) => Err(Error::DomainMismatch(
                    "cannot move residues between different primes".into(),
                )),
                (Scalar::Rat(_), ScalarDomain::Rational) => unreachable!(),
            })
            .collect::<Result<Vec<_>>>()?;
        Tensor::from_entries(self.shape.clone(), entries)
    }

    /// Entries as plain integers when the tensor is rational with unit
    /// denominators (the fast evaluation path); None otherwise.
    pub fn integer_entries(&self) -> Option<Vec<i128>> {
        self.entries
            .iter()
            .map(|e| match e {
                Scalar::Rat(r) => {
                    use num::One;
                    if r.denom().is_one() {
                        i128::try_from(r.numer().clone()).ok()
                    } else {
                        None
                    }
                }
                Scalar::Fp { .. } => None,
            })
            .collect()
    }
}

/// Rank verdict for one flattening split (0-based subset).
#[derive(Clone, Debug, Serialize)]
pub struct SplitRank {
    pub subset: Vec<usize>,
    pub rank: usize,
    pub within: bool,
}

/// One representative subset per complementary pair: all proper subsets
/// containing factor 0, ordered by size then lexicographically.
pub fn split_representatives(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 1..n {
        let mut of_size: Vec<Vec<usize>> = Vec::new();
        // subsets of {1,…,n−1} of cardinality size−1, lex order
        fn rec(start: usize, n: usize, need: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if need == 0 {
                let mut s = vec![0usize];
                s.extend_from_slice(acc);
                out.push(s);
                return;
            }
            for v in start..n {
                acc.push(v);
                rec(v + 1, n, need - 1, acc, out);
                acc.pop();
            }
        }
        rec(1, n, size - 1, &mut Vec::new(), &mut of_size);
        out.extend(of_size);
    }
    out
}

fn decode(mut lin: usize, dims: &[usize]) -> Vec<usize> {
    let mut idx = vec![0usize; dims.len()];
    for (k, &a) in dims.iter().enumerate().rev() {
        idx[k] = lin % a;
        lin /= a;
    }
    idx
}

fn sample_entry(rng: &mut ChaCha8Rng, domain: ScalarDomain) -> Scalar {
    match domain {
        ScalarDomain::Rational => Scalar::from_int(rng.gen_range(-9..=9), domain),
        ScalarDomain::Prime(p) => Scalar::Fp {
            value: rng.gen_range(0..p),
            prime: p,
        },
    }
}

fn sample_nonzero_vector(rng: &mut ChaCha8Rng, len: usize, domain: ScalarDomain) -> Vec<Scalar> {
    loop {
        let v: Vec<Scalar> = (0..len).map(|_| sample_entry(rng, domain)).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

pub fn domain_json(domain: ScalarDomain) -> serde_json::Value {
    match domain {
        ScalarDomain::Rational => serde_json::json!("rational"),
        ScalarDomain::Prime(p) => serde_json::json!({ "prime": p }),
    }
}

pub fn domain_from_json(v: &serde_json::Value) -> Result<ScalarDomain> {
    match v {
        serde_json::Value::String(s) if s == "rational" => Ok(ScalarDomain::Rational),
        serde_json::Value::Object(o) => {
            let p = o
                .get("prime")
                .and_then(|p| p.as_u64())
                .ok_or_else(|| Error::invalid("domain object needs a \"prime\" field"))?;
            if !crate::scalar::is_prime(p) {
                return Err(Error::invalid(format!("{p} is not prime")));
            }
            Ok(ScalarDomain::Prime(p))
        }
        _ => Err(Error::invalid(format!("unrecognized domain {v}"))),
    }
}

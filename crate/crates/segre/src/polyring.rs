//! Sparse homogeneous polynomials in the linear coordinates of a tensor
//! space, with exact integer coefficients.
//!
//! Monomials are stored as ascending lists of variable ids (one entry per
//! occurrence, so the list length is the degree). On such lists the graded
//! reverse-lexicographic order — with higher-id variables taken as larger —
//! coincides with comparing (degree, list) pairs, the list lexicographically.
//! Example in three variables, degree two:
//! x2² > x2x1 > x1² > x2x0 > x1x0 > x0², i.e.
//! [2,2] > [1,2] > [1,1] > [0,2] > [0,1] > [0,0].
//!
//! Each monomial packs into a `u128` (degree in the top bits, then the list,
//! most significant position first), so the integer order of packed values
//! matches the monomial order. Column keys for elimination are the bitwise
//! complement: the *largest* monomial gets the *smallest* key, so a sparse
//! row's first entry is its leading term and Gaussian pivots land on leading
//! monomials. Packing caps: degree ≤ 12 and variable ids < 1024.

use std::collections::BTreeMap;

use itertools::Itertools;
use num::bigint::BigInt;
use num::Zero;

use crate::error::{Error, Result};
use crate::linalg::{SparseEliminator, SparseRow};
use crate::scalar::Scalar;
use crate::symrep::binomial;
use crate::tensors::{Shape, Tensor};

/// Largest monomial degree the u128 packing supports.
pub const MAX_PACK_DEGREE: usize = 12;

/// Largest number of variables the u128 packing supports (ids < 1024).
pub const MAX_PACK_VARS: usize = 1023;

/// A monomial as an ascending list of variable ids, one per occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    /// The empty product.
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// Build from variable ids in any order (sorted internally).
    pub fn new(mut vars: Vec<u16>) -> Self {
        vars.sort_unstable();
        Monomial(vars)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn vars(&self) -> &[u16] {
        &self.0
    }

    /// Product of two monomials (merge of the sorted lists).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0usize, 0usize);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                out.push(self.0[i]);
                i += 1;
            } else {
                out.push(other.0[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Pack into a `u128` whose integer order equals the monomial order:
    /// degree in bits 120.., then the ascending list in 10-bit slots, first
    /// entry most significant.
    pub fn pack(&self) -> Result<u128> {
        if self.0.len() > MAX_PACK_DEGREE {
            return Err(Error::invalid(format!(
                "monomial degree {} exceeds the packing cap {MAX_PACK_DEGREE}",
                self.0.len()
            )));
        }
        if let Some(&v) = self.0.iter().find(|&&v| v >= 1024) {
            return Err(Error::invalid(format!(
                "variable id {v} exceeds the packing cap {MAX_PACK_VARS}"
            )));
        }
        let mut key = (self.0.len() as u128) << 120;
        for (i, &v) in self.0.iter().enumerate() {
            key |= (v as u128) << (110 - 10 * i);
        }
        Ok(key)
    }

    /// Column key for elimination: complement of [`Monomial::pack`], so the
    /// largest monomial gets the smallest key.
    pub fn col_key(&self) -> Result<u128> {
        Ok(u128::MAX - self.pack()?)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.0.len(), &self.0).cmp(&(other.0.len(), &other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for (v, group) in &self.0.iter().chunk_by(|&&v| v) {
            let k = group.count();
            if k == 1 {
                parts.push(format!("x{v}"));
            } else {
                parts.push(format!("x{v}^{k}"));
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// A homogeneous polynomial with integer coefficients, terms stored leading
/// monomial first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    nvars: usize,
    degree: usize,
    terms: Vec<(Monomial, BigInt)>,
}

impl SparsePoly {
    /// Combine like terms, drop zeros, validate homogeneity and variable
    /// ranges, and sort leading-first.
    pub fn new(nvars: usize, degree: usize, terms: Vec<(Monomial, BigInt)>) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::invalid("a polynomial ring needs variables"));
        }
        let mut map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(Error::invalid(format!(
                    "monomial {m} has degree {}, expected {degree}",
                    m.degree()
                )));
            }
            if let Some(&v) = m.vars().iter().find(|&&v| v as usize >= nvars) {
                return Err(Error::invalid(format!(
                    "variable id {v} out of range for {nvars} variables"
                )));
            }
            *map.entry(m).or_insert_with(BigInt::zero) += c;
        }
        let terms: Vec<(Monomial, BigInt)> = map
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(SparsePoly {
            nvars,
            degree,
            terms,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Terms in descending monomial order (leading term first).
    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluate at a flat list of coordinates (length must equal `nvars`).
    pub fn evaluate_entries(&self, entries: &[Scalar]) -> Result<Scalar> {
        if entries.len() != self.nvars {
            return Err(Error::invalid(format!(
                "expected {} coordinates, got {}",
                self.nvars,
                entries.len()
            )));
        }
        let domain = entries[0].domain();
        let mut acc = Scalar::zero(domain);
        for (m, c) in &self.terms {
            let mut term = Scalar::from_bigint(c, domain);
            for &v in m.vars() {
                term = term.mul(&entries[v as usize])?;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Evaluate at a tensor (its row-major coordinates are the variables).
    pub fn evaluate(&self, t: &Tensor) -> Result<Scalar> {
        self.evaluate_entries(t.entries())
    }

    /// Integer fast path with overflow checking; `None` when a coefficient or
    /// an intermediate fails to fit in `i128`.
    pub fn evaluate_int(&self, entries: &[i128]) -> Option<i128> {
        if entries.len() != self.nvars {
            return None;
        }
        let mut acc: i128 = 0;
        for (m, c) in &self.terms {
            let mut term: i128 = i128::try_from(c.clone()).ok()?;
            for &v in m.vars() {
                term = term.checked_mul(entries[v as usize])?;
            }
            acc = acc.checked_add(term)?;
        }
        Some(acc)
    }

    /// Sparse gradient at a point: (variable id, ∂f/∂x_v evaluated there) for
    /// every v where the value is nonzero, ascending by id.
    pub fn differential_entries(&self, entries: &[Scalar]) -> Result<Vec<(usize, Scalar)>> {
        if entries.len() != self.nvars {
            return Err(Error::invalid(format!(
                "expected {} coordinates, got {}",
                self.nvars,
                entries.len()
            )));
        }
        let domain = entries[0].domain();
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (m, c) in &self.terms {
            let groups: Vec<(u16, usize)> = m
                .vars()
                .iter()
                .chunk_by(|&&v| v)
                .into_iter()
                .map(|(v, g)| (v, g.count()))
                .collect();
            for gi in 0..groups.len() {
                let (v, k) = groups[gi];
                // k * c * Π_{u ≠ v} x_u^{mult(u)} * x_v^{k-1}
                let mut val = Scalar::from_bigint(c, domain)
                    .mul(&Scalar::from_int(k as i64, domain))?;
                for (gj, &(u, j)) in groups.iter().enumerate() {
                    let e = if gj == gi { j - 1 } else { j };
                    for _ in 0..e {
                        val = val.mul(&entries[u as usize])?;
                    }
                }
                if !val.is_zero() {
                    let slot = acc
                        .entry(v as usize)
                        .or_insert_with(|| Scalar::zero(domain));
                    *slot = slot.add(&val)?;
                }
            }
        }
        Ok(acc.into_iter().filter(|(_, s)| !s.is_zero()).collect())
    }

    /// Gradient at a tensor.
    pub fn differential_at(&self, t: &Tensor) -> Result<Vec<(usize, Scalar)>> {
        self.differential_entries(t.entries())
    }

    /// Multiply by a monomial (exact, order-preserving).
    pub fn mul_monomial(&self, m: &Monomial) -> Result<SparsePoly> {
        if let Some(&v) = m.vars().iter().find(|&&v| v as usize >= self.nvars) {
            return Err(Error::invalid(format!(
                "variable id {v} out of range for {} variables",
                self.nvars
            )));
        }
        let terms: Vec<(Monomial, BigInt)> = self
            .terms
            .iter()
            .map(|(t, c)| (t.mul(m), c.clone()))
            .collect();
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        Ok(SparsePoly {
            nvars: self.nvars,
            degree: self.degree + m.degree(),
            terms,
        })
    }

    /// Coefficient vector as a sparse elimination row mod p, keyed by
    /// [`Monomial::col_key`] (leading term first).
    pub fn coeff_row(&self, p: u64) -> Result<SparseRow> {
        let mut row = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let v = crate::scalar::bigint_mod(c, p);
            if v != 0 {
                row.push((m.col_key()?, v));
            }
        }
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        Ok(row)
    }

    /// Serialized form: variables as 1-based multi-indices of `shape`,
    /// coefficients as decimal strings.
    pub fn to_json(&self, shape: &Shape) -> Result<serde_json::Value> {
        if shape.total_dim() != self.nvars {
            return Err(Error::invalid(format!(
                "shape {shape} has {} coordinates but the polynomial has {}",
                shape.total_dim(),
                self.nvars
            )));
        }
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<Vec<usize>> = m
                    .vars()
                    .iter()
                    .map(|&v| {
                        shape
                            .multi_index(v as usize)
                            .iter()
                            .map(|i| i + 1)
                            .collect()
                    })
                    .collect();
                serde_json::json!({ "vars": vars, "coeff": c.to_string() })
            })
            .collect();
        Ok(serde_json::json!({
            "degree": self.degree,
            "terms": terms,
        }))
    }

    /// Parse the form produced by [`SparsePoly::to_json`].
    pub fn from_json(v: &serde_json::Value, shape: &Shape) -> Result<SparsePoly> {
        let degree = v
            .get("degree")
            .and_then(|d| d.as_u64())
            .ok_or_else(|| Error::invalid("polynomial JSON missing \"degree\""))?
            as usize;
        let raw = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::invalid("polynomial JSON missing \"terms\""))?;
        let mut terms = Vec::with_capacity(raw.len());
        for t in raw {
            let vars: Vec<Vec<usize>> = serde_json::from_value(
                t.get("vars")
                    .ok_or_else(|| Error::invalid("term missing \"vars\""))?
                    .clone(),
            )
            .map_err(|e| Error::invalid(format!("bad term vars: {e}")))?;
            let coeff: BigInt = t
                .get("coeff")
                .and_then(|c| c.as_str())
                .ok_or_else(|| Error::invalid("term missing \"coeff\" string"))?
                .parse()
                .map_err(|_| Error::invalid("bad coefficient literal"))?;
            let ids = vars
                .iter()
                .map(|idx| {
                    if idx.len() != shape.num_factors()
                        || idx.iter().zip(shape.dims()).any(|(&i, &a)| i == 0 || i > a)
                    {
                        return Err(Error::invalid(format!(
                            "multi-index {idx:?} invalid for {shape}"
                        )));
                    }
                    let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
                    Ok(shape.linear_index(&zero_based) as u16)
                })
                .collect::<Result<Vec<u16>>>()?;
            terms.push((Monomial::new(ids), coeff));
        }
        SparsePoly::new(shape.total_dim(), degree, terms)
    }
}

/// All monomials of the given degree, ascending monomial order.
pub fn monomials_of_degree(nvars: usize, d: usize) -> Vec<Monomial> {
    (0..nvars as u16)
        .combinations_with_replacement(d)
        .map(Monomial)
        .collect()
}

/// Dimension of the degree-`d` graded piece of the ideal generated by `gens`,
/// computed over F_p: the rank of { m·g } over all generators g and monomials
/// m with deg(m·g) = d. Rows are offered in a fixed order (generators as
/// given, multiplier monomials ascending), so pivots are reproducible.
pub fn graded_ideal_dimension(gens: &[SparsePoly], d: usize, p: u64) -> Result<usize> {
    if d > MAX_PACK_DEGREE {
        return Err(Error::invalid(format!(
            "degree {d} exceeds the supported cap {MAX_PACK_DEGREE}"
        )));
    }
    let Some(first) = gens.first() else {
        return Ok(0);
    };
    let nvars = first.nvars;
    if nvars > MAX_PACK_VARS {
        return Err(Error::invalid(format!(
            "{nvars} variables exceed the supported cap {MAX_PACK_VARS}"
        )));
    }
    if gens.iter().any(|g| g.nvars != nvars) {
        return Err(Error::invalid(
            "generators live in different polynomial rings",
        ));
    }
    let mut elim = SparseEliminator::new(p);
    for g in gens {
        if g.degree > d || g.is_zero() {
            continue;
        }
        for m in monomials_of_degree(nvars, d - g.degree) {
            let row = g.mul_monomial(&m)?.coeff_row(p)?;
            if !row.is_empty() {
                elim.offer(row);
            }
        }
    }
    Ok(elim.rank())
}

/// Hilbert function of the quotient by the ideal generated by `gens` in
/// degrees 0..=d_max, over F_p: C(nvars+d−1, d) − dim (ideal)_d.
pub fn hilbert_function(
    gens: &[SparsePoly],
    nvars: usize,
    d_max: usize,
    p: u64,
) -> Result<Vec<(usize, u128)>> {
    if gens.iter().any(|g| g.nvars != nvars) {
        return Err(Error::invalid(
            "generators do not live in the stated polynomial ring",
        ));
    }
    let mut out = Vec::with_capacity(d_max + 1);
    for d in 0..=d_max {
        let ambient = binomial((nvars + d - 1) as u128, d as u128);
        let ideal = graded_ideal_dimension(gens, d, p)? as u128;
        out.push((d, ambient - ideal));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ScalarDomain, DEFAULT_PRIME, SECOND_PRIME};
    use num::rational::BigRational;
    use num::One;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(ids: &[u16]) -> Monomial {
        Monomial::new(ids.to_vec())
    }

    fn poly(nvars: usize, degree: usize, terms: &[(&[u16], i64)]) -> SparsePoly {
        SparsePoly::new(
            nvars,
            degree,
            terms
                .iter()
                .map(|&(ids, c)| (m(ids), BigInt::from(c)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn graded_reverse_lex_order_in_degree_two() {
        let mut ms = monomials_of_degree(3, 2);
        ms.sort();
        ms.reverse();
        let got: Vec<Vec<u16>> = ms.iter().map(|m| m.vars().to_vec()).collect();
        assert_eq!(
            got,
            vec![
                vec![2, 2],
                vec![1, 2],
                vec![1, 1],
                vec![0, 2],
                vec![0, 1],
                vec![0, 0],
            ]
        );
    }

    #[test]
    fn packing_respects_the_monomial_order() {
        let mut all = Vec::new();
        for d in 0..=3 {
            all.extend(monomials_of_degree(4, d));
        }
        for a in &all {
            for b in &all {
                let cmp_m = a.cmp(b);
                assert_eq!(a.pack().unwrap().cmp(&b.pack().unwrap()), cmp_m);
                assert_eq!(a.col_key().unwrap().cmp(&b.col_key().unwrap()), cmp_m.reverse());
            }
        }
    }

    #[test]
    fn packing_caps_are_enforced() {
        assert!(m(&vec![0; 12][..]).pack().is_ok());
        assert!(m(&vec![0; 13][..]).pack().is_err());
        assert!(m(&[1023]).pack().is_ok());
        assert!(m(&[1024]).pack().is_err());
    }

    #[test]
    fn determinant_polynomial_evaluates_and_orders_terms() {
        // On a 2x2 tensor space: x0*x3 - x1*x2 (row-major coordinates).
        let det = poly(4, 2, &[(&[0, 3], 1), (&[1, 2], -1)]);
        assert_eq!(det.terms()[0].0, m(&[1, 2]));
        assert_eq!(det.terms()[0].1, BigInt::from(-1));

        let shape = Shape::new(vec![2, 2]).unwrap();
        let t = Tensor::from_entries(
            shape,
            [1i64, 2, 3, 4]
                .iter()
                .map(|&v| Scalar::from_int(v, ScalarDomain::Rational))
                .collect(),
        )
        .unwrap();
        assert_eq!(
            det.evaluate(&t).unwrap(),
            Scalar::from_int(-2, ScalarDomain::Rational)
        );

        let double = t.scale(&Scalar::from_int(2, ScalarDomain::Rational)).unwrap();
        assert_eq!(
            det.evaluate(&double).unwrap(),
            Scalar::from_int(-8, ScalarDomain::Rational)
        );
    }

    #[test]
    fn integer_fast_path_matches_and_detects_overflow() {
        let f = poly(3, 3, &[(&[0, 0, 1], 2), (&[1, 2, 2], -5), (&[0, 1, 2], 1)]);
        let pt = [3i128, -4, 7];
        let exact = f
            .evaluate_entries(
                &pt.iter()
                    .map(|&v| Scalar::from_int(v as i64, ScalarDomain::Rational))
                    .collect::<Vec<_>>(),
            )
            .unwrap();
        let fast = f.evaluate_int(&pt).unwrap();
        assert_eq!(exact, Scalar::from_int(fast as i64, ScalarDomain::Rational));

        // intermediate product overflows i128
        assert_eq!(f.evaluate_int(&[1i128 << 60, 1 << 60, 1 << 60]), None);

        // coefficient does not fit in i128
        let big = SparsePoly::new(
            2,
            1,
            vec![(m(&[0]), BigInt::from(2).pow(130))],
        )
        .unwrap();
        assert_eq!(big.evaluate_int(&[1, 1]), None);
    }

    #[test]
    fn differential_hand_checked() {
        // f = x0^2 x1: df = (2 x0 x1, x0^2)
        let f = poly(2, 3, &[(&[0, 0, 1], 1)]);
        let at = [
            Scalar::from_int(3, ScalarDomain::Rational),
            Scalar::from_int(5, ScalarDomain::Rational),
        ];
        let grad = f.differential_entries(&at).unwrap();
        assert_eq!(
            grad,
            vec![
                (0, Scalar::from_int(30, ScalarDomain::Rational)),
                (1, Scalar::from_int(9, ScalarDomain::Rational)),
            ]
        );
    }

    /// Dense univariate polynomials over Q, used to expand f(T + tE) exactly.
    #[derive(Clone)]
    struct Poly1(Vec<BigRational>);

    impl Poly1 {
        fn constant(c: BigRational) -> Self {
            Poly1(vec![c])
        }

        fn mul(&self, other: &Poly1) -> Poly1 {
            let mut out =
                vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
            for (i, a) in self.0.iter().enumerate() {
                for (j, b) in other.0.iter().enumerate() {
                    out[i + j] += a * b;
                }
            }
            Poly1(out)
        }

        fn add_assign(&mut self, other: &Poly1) {
            if self.0.len() < other.0.len() {
                self.0.resize(other.0.len(), BigRational::zero());
            }
            for (i, b) in other.0.iter().enumerate() {
                self.0[i] += b;
            }
        }

        fn coeff(&self, k: usize) -> BigRational {
            self.0.get(k).cloned().unwrap_or_else(BigRational::zero)
        }
    }

    #[test]
    fn differential_matches_symbolic_taylor_expansion() {
        let nvars = 8usize;
        let pool = monomials_of_degree(nvars, 3);
        for seed in 0..4u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let terms: Vec<(Monomial, BigInt)> = (0..5)
                .map(|_| {
                    let mono = pool[rng.gen_range(0..pool.len())].clone();
                    (mono, BigInt::from(rng.gen_range(-5i64..=5)))
                })
                .collect();
            let f = SparsePoly::new(nvars, 3, terms).unwrap();
            let base: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-6..=6)).collect();
            let dir: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-6..=6)).collect();

            // expand f(base + t * dir) exactly as a polynomial in t
            let mut expansion = Poly1::constant(BigRational::zero());
            for (mono, c) in f.terms() {
                let mut termpoly =
                    Poly1::constant(BigRational::from_integer(c.clone()));
                for &v in mono.vars() {
                    let lin = Poly1(vec![
                        BigRational::from_integer(base[v as usize].into()),
                        BigRational::from_integer(dir[v as usize].into()),
                    ]);
                    termpoly = termpoly.mul(&lin);
                }
                expansion.add_assign(&termpoly);
            }

            let at: Vec<Scalar> = base
                .iter()
                .map(|&v| Scalar::from_int(v, ScalarDomain::Rational))
                .collect();
            assert_eq!(
                f.evaluate_entries(&at).unwrap(),
                Scalar::Rat(expansion.coeff(0)),
                "seed {seed}: constant term"
            );

            let grad = f.differential_entries(&at).unwrap();
            let mut pairing = BigRational::zero();
            for (v, g) in &grad {
                let Scalar::Rat(g) = g else { unreachable!() };
                pairing += g * BigRational::from_integer(dir[*v].into());
            }
            assert_eq!(pairing, expansion.coeff(1), "seed {seed}: linear term");
        }
    }

    #[test]
    fn differential_consistent_across_domains() {
        let f = poly(4, 2, &[(&[0, 3], 1), (&[1, 2], -1), (&[0, 0], 3)]);
        let ints = [5i64, -2, 7, 1];
        let rational: Vec<Scalar> = ints
            .iter()
            .map(|&v| Scalar::from_int(v, ScalarDomain::Rational))
            .collect();
        for p in [DEFAULT_PRIME, SECOND_PRIME] {
            let modular: Vec<Scalar> = ints
                .iter()
                .map(|&v| Scalar::from_int(v, ScalarDomain::Prime(p)))
                .collect();
            let gq = f.differential_entries(&rational).unwrap();
            let gp = f.differential_entries(&modular).unwrap();
            assert_eq!(gq.len(), gp.len());
            for ((vq, sq), (vp, sp)) in gq.iter().zip(&gp) {
                assert_eq!(vq, vp);
                let Scalar::Rat(r) = sq else { unreachable!() };
                assert!(r.denom().is_one());
                let lifted = crate::scalar::bigint_mod(r.numer(), p);
                let Scalar::Fp { value, .. } = sp else { unreachable!() };
                assert_eq!(lifted, *value);
            }
        }
    }

    #[test]
    fn monomial_multiplication_is_compatible_with_evaluation() {
        let f = poly(3, 2, &[(&[0, 1], 2), (&[2, 2], -1)]);
        let g = f.mul_monomial(&m(&[1, 2])).unwrap();
        assert_eq!(g.degree(), 4);
        let pt: Vec<Scalar> = [2i64, 3, 5]
            .iter()
            .map(|&v| Scalar::from_int(v, ScalarDomain::Rational))
            .collect();
        let fv = f.evaluate_entries(&pt).unwrap();
        let mv = Scalar::from_int(3 * 5, ScalarDomain::Rational);
        assert_eq!(g.evaluate_entries(&pt).unwrap(), fv.mul(&mv).unwrap());
    }

    #[test]
    fn hilbert_of_principal_square_ideal() {
        // k[x,y] / (x0^2): 1, 2, 2, 2, ...
        let gens = vec![poly(2, 2, &[(&[0, 0], 1)])];
        let h = hilbert_function(&gens, 2, 6, DEFAULT_PRIME).unwrap();
        let values: Vec<u128> = h.iter().map(|&(_, v)| v).collect();
        assert_eq!(values, vec![1, 2, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn hilbert_of_two_generator_ideal() {
        // k[x,y] / (x0^2, x0 x1): 1, 2, 1, 1, ...
        let gens = vec![
            poly(2, 2, &[(&[0, 0], 1)]),
            poly(2, 2, &[(&[0, 1], 1)]),
        ];
        let h = hilbert_function(&gens, 2, 5, DEFAULT_PRIME).unwrap();
        let values: Vec<u128> = h.iter().map(|&(_, v)| v).collect();
        assert_eq!(values, vec![1, 2, 1, 1, 1, 1]);
    }

    #[test]
    fn hilbert_of_a_quadric_in_four_variables() {
        // k[x0..x3] / (x0 x3 - x1 x2): values (d+1)^2
        let gens = vec![poly(4, 2, &[(&[0, 3], 1), (&[1, 2], -1)])];
        for p in [DEFAULT_PRIME, SECOND_PRIME] {
            let h = hilbert_function(&gens, 4, 4, p).unwrap();
            let values: Vec<u128> = h.iter().map(|&(_, v)| v).collect();
            assert_eq!(values, vec![1, 4, 9, 16, 25]);
        }
    }

    #[test]
    fn empty_generator_list_gives_full_polynomial_ring() {
        assert_eq!(graded_ideal_dimension(&[], 3, DEFAULT_PRIME).unwrap(), 0);
        let h = hilbert_function(&[], 3, 4, DEFAULT_PRIME).unwrap();
        let values: Vec<u128> = h.iter().map(|&(_, v)| v).collect();
        assert_eq!(values, vec![1, 3, 6, 10, 15]);
    }

    #[test]
    fn monomial_counts_match_binomials() {
        for nvars in 1..=5usize {
            for d in 0..=4usize {
                assert_eq!(
                    monomials_of_degree(nvars, d).len() as u128,
                    binomial((nvars + d - 1) as u128, d as u128)
                );
            }
        }
    }

    #[test]
    fn graded_dimension_caps() {
        let gens = vec![poly(2, 2, &[(&[0, 0], 1)])];
        assert!(graded_ideal_dimension(&gens, 13, DEFAULT_PRIME).is_err());
    }

    #[test]
    fn json_roundtrip_with_multi_indices() {
        let shape = Shape::new(vec![2, 2]).unwrap();
        let det = poly(4, 2, &[(&[0, 3], 1), (&[1, 2], -1)]);
        let j = det.to_json(&shape).unwrap();
        // leading term first: -x(1,2)x(2,1)
        assert_eq!(j["terms"][0]["vars"], serde_json::json!([[1, 2], [2, 1]]));
        assert_eq!(j["terms"][0]["coeff"], serde_json::json!("-1"));
        let back = SparsePoly::from_json(&j, &shape).unwrap();
        assert_eq!(det, back);

        let bad = serde_json::json!({"degree": 2, "terms": [{"vars": [[0,1],[1,1]], "coeff": "1"}]});
        assert!(SparsePoly::from_json(&bad, &shape).is_err());
    }
}

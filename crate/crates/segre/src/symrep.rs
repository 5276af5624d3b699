//! Symmetric-group characters and GL Schur-module combinatorics.
//!
//! Characters of S_d are computed by the Murnaghan–Nakayama rule on beta-sets
//! with memoization. The headline operation is [`invariant_multiplicity`]: the
//! dimension of the S_d-invariant subspace of [π_1] ⊗ … ⊗ [π_n], computed as
//!
//! ```text
//! (1/d!) · Σ_classes |class(λ)| · Π_j χ_{π_j}(λ)
//! ```
//!
//! with the division asserted exact. Schur module dimensions use the hook
//! content formula, and Littlewood–Richardson coefficients count lattice-word
//! skew tableaux by direct backtracking.

use std::collections::HashMap;

use itertools::Itertools;
use num::bigint::BigInt;
use num::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// d!/z_λ where z_λ = Π_i i^{m_i} m_i! — the size of the conjugacy class of
/// cycle type λ in S_d.
pub fn class_size(lambda: &Partition) -> u128 {
    let d = lambda.weight() as u128;
    let mut z: u128 = 1;
    let mut counts: HashMap<u32, u128> = HashMap::new();
    for &p in lambda.parts() {
        *counts.entry(p).or_insert(0) += 1;
    }
    for (&i, &m) in counts.iter() {
        z *= (i as u128).pow(m as u32);
        z *= factorial(m);
    }
    factorial(d) / z
}

pub fn factorial(n: u128) -> u128 {
    (1..=n).product::<u128>().max(1)
}

/// χ_π(λ) by Murnaghan–Nakayama. Both partitions must have the same weight.
pub fn character(pi: &Partition, lambda: &Partition) -> Result<i64> {
    if pi.weight() != lambda.weight() {
        return Err(Error::invalid(format!(
            "character requires equal weights, got |{pi}| = {} and |{lambda}| = {}",
            pi.weight(),
            lambda.weight()
        )));
    }
    let mut memo = HashMap::new();
    Ok(mn_char(pi.parts().to_vec(), lambda.parts(), 0, &mut memo))
}

fn mn_char(
    pi: Vec<u32>,
    lambda: &[u32],
    pos: usize,
    memo: &mut HashMap<(Vec<u32>, usize), i64>,
) -> i64 {
    if pos == lambda.len() {
        debug_assert!(pi.is_empty());
        return 1;
    }
    if let Some(&v) = memo.get(&(pi.clone(), pos)) {
        return v;
    }
    let t = lambda[pos] as i64;
    let m = pi.len().max(1);
    let beta: Vec<i64> = (0..m)
        .map(|k| pi.get(k).copied().unwrap_or(0) as i64 + (m - 1 - k) as i64)
        .collect();
    let mut total = 0i64;
    for (k, &b) in beta.iter().enumerate() {
        let nb = b - t;
        if nb < 0 || beta.contains(&nb) {
            continue;
        }
        // height of the border strip = number of beta entries it jumps over
        let ht = beta.iter().filter(|&&x| nb < x && x < b).count();
        let mut nbeta = beta.clone();
        nbeta[k] = nb;
        nbeta.sort_unstable_by(|a, b| b.cmp(a));
        let nlen = nbeta.len();
        let npi: Vec<u32> = nbeta
            .iter()
            .enumerate()
            .map(|(i, &x)| (x - (nlen - 1 - i) as i64) as u32)
            .filter(|&p| p > 0)
            .collect();
        let sign = if ht % 2 == 0 { 1 } else { -1 };
        total += sign * mn_char(npi, lambda, pos + 1, memo);
    }
    memo.insert((pi, pos), total);
    total
}

/// The full character table of S_d with class sizes, built once and then
/// read-only (safe to share across threads).
pub struct CharacterTable {
    pub d: u32,
    /// Irreducible labels, reverse-lex order.
    pub partitions: Vec<Partition>,
    /// Conjugacy classes (cycle types), reverse-lex order.
    pub classes: Vec<Partition>,
    pub class_sizes: Vec<u128>,
    /// `values[pi_index][class_index]`.
    pub values: Vec<Vec<i64>>,
    index: HashMap<Partition, usize>,
}

impl CharacterTable {
    pub fn new(d: u32) -> Self {
        let partitions = Partition::enumerate(d, None);
        let classes = partitions.clone();
        let class_sizes = classes.iter().map(class_size).collect();
        // one memo per class: the memo key (remaining shape, position) is only
        // meaningful for a fixed cycle type
        let columns: Vec<Vec<i64>> = classes
            .iter()
            .map(|lam| {
                let mut memo = HashMap::new();
                partitions
                    .iter()
                    .map(|pi| mn_char(pi.parts().to_vec(), lam.parts(), 0, &mut memo))
                    .collect()
            })
            .collect();
        let values = (0..partitions.len())
            .map(|i| columns.iter().map(|col| col[i]).collect())
            .collect();
        let index = partitions
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        CharacterTable {
            d,
            partitions,
            classes,
            class_sizes,
            values,
            index,
        }
    }

    pub fn row(&self, pi: &Partition) -> Result<&[i64]> {
        let i = self
            .index
            .get(pi)
            .ok_or_else(|| Error::invalid(format!("{pi} is not a partition of {}", self.d)))?;
        Ok(&self.values[*i])
    }
}

/// One conjugacy-class term of the invariant-multiplicity sum.
#[derive(Clone, Debug, Serialize)]
pub struct ClassTerm {
    pub class: Partition,
    pub class_size: u64,
    pub character_values: Vec<i64>,
    /// class_size · Π_j χ_{π_j}(class)
    pub term: i128,
}

/// Multiplicity of the trivial representation in [π_1] ⊗ … ⊗ [π_n], with the
/// per-class breakdown of the averaging sum.
pub fn invariant_multiplicity_detailed(pis: &[Partition]) -> Result<(u64, Vec<ClassTerm>)> {
    if pis.is_empty() {
        return Err(Error::invalid("need at least one partition"));
    }
    let d = pis[0].weight();
    if pis.iter().any(|p| p.weight() != d) {
        return Err(Error::invalid(format!(
            "all partitions must have equal weight, got {:?}",
            pis.iter().map(|p| p.weight()).collect::<Vec<_>>()
        )));
    }
    let table = CharacterTable::new(d);
    let rows: Vec<&[i64]> = pis
        .iter()
        .map(|p| table.row(p))
        .collect::<Result<Vec<_>>>()?;
    let mut total: i128 = 0;
    let mut terms = Vec::with_capacity(table.classes.len());
    for (ci, class) in table.classes.iter().enumerate() {
        let mut prod: i128 = table.class_sizes[ci] as i128;
        let vals: Vec<i64> = rows.iter().map(|r| r[ci]).collect();
        for &v in &vals {
            prod *= v as i128;
        }
        total += prod;
        terms.push(ClassTerm {
            class: class.clone(),
            class_size: table.class_sizes[ci] as u64,
            character_values: vals,
            term: prod,
        });
    }
    let dfact = factorial(d as u128) as i128;
    if total % dfact != 0 || total < 0 {
        return Err(Error::internal(format!(
            "class sum {total} not divisible by {d}! = {dfact}"
        )));
    }
    Ok(((total / dfact) as u64, terms))
}

/// Multiplicity of the trivial representation in [π_1] ⊗ … ⊗ [π_n].
pub fn invariant_multiplicity(pis: &[Partition]) -> Result<u64> {
    invariant_multiplicity_detailed(pis).map(|(m, _)| m)
}

/// dim S_π(C^n) by the hook content formula Π_cells (n + content)/hook;
/// zero when the diagram has more than `n` rows.
pub fn schur_dimension(pi: &Partition, n: usize) -> Result<u64> {
    if pi.len() > n {
        return Ok(0);
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for cell in pi.cells() {
        num *= BigInt::from(n as i64 + cell.content);
        den *= BigInt::from(cell.hook);
    }
    let (q, r) = num::Integer::div_rem(&num, &den);
    if !r.is_zero() {
        return Err(Error::internal(format!(
            "hook content product for {pi} over C^{n} is not integral"
        )));
    }
    u64::try_from(q).map_err(|_| Error::internal(format!("dim S_{pi}(C^{n}) overflows u64")))
}

/// dim of the irreducible GL-module with dominant weight `w` (weakly
/// decreasing integers, negative entries allowed) on C^n: shift by a constant
/// to a partition — tensoring by a determinant power — and apply hook content.
pub fn weyl_dimension(w: &[i64], n: usize) -> Result<u64> {
    if w.len() > n {
        return Err(Error::invalid(format!(
            "weight length {} exceeds n = {n}",
            w.len()
        )));
    }
    for pair in w.windows(2) {
        if pair[0] < pair[1] {
            return Err(Error::invalid(format!("weight {w:?} is not dominant")));
        }
    }
    // pad to length n, then shift so the last entry is 0
    let mut full: Vec<i64> = w.to_vec();
    full.resize(n, 0);
    let min = full.iter().copied().min().unwrap_or(0);
    let parts: Vec<u32> = full
        .iter()
        .map(|&x| (x - min) as u32)
        .filter(|&x| x > 0)
        .collect();
    schur_dimension(&Partition::new(parts)?, n)
}

/// One isotypic component of S^d(A_1 ⊗ … ⊗ A_n).
#[derive(Clone, Debug, Serialize)]
pub struct IsotypicComponent {
    pub partitions: Vec<Partition>,
    pub multiplicity: u64,
    /// multiplicity · Π_j dim S_{π_j}(C^{a_j})
    pub dimension: u64,
}

/// Decompose S^d(A_1 ⊗ … ⊗ A_n) into S_{π_1}A_1 ⊗ … ⊗ S_{π_n}A_n components:
/// tuples of partitions of d (at most a_j rows each) with the multiplicity of
/// the S_d-invariant in [π_1] ⊗ … ⊗ [π_n]. Components with multiplicity zero
/// are omitted. The total dimension identity
/// Σ multiplicity · Π dim = C(Π a_j + d − 1, d) is asserted before returning.
pub fn isotypic_decomposition(d: u32, dims: &[usize]) -> Result<Vec<IsotypicComponent>> {
    if dims.is_empty() {
        return Err(Error::invalid("need at least one factor"));
    }
    if dims.iter().any(|&a| a == 0) {
        return Err(Error::invalid("factor dimensions must be positive"));
    }
    let table = CharacterTable::new(d);
    let per_factor: Vec<Vec<Partition>> = dims
        .iter()
        .map(|&a| Partition::enumerate(d, Some(a)))
        .collect();
    let dfact = factorial(d as u128) as i128;
    let mut out = Vec::new();
    for tuple in per_factor
        .iter()
        .map(|v| v.iter())
        .multi_cartesian_product()
    {
        let rows: Vec<&[i64]> = tuple
            .iter()
            .map(|p| table.row(p))
            .collect::<Result<Vec<_>>>()?;
        let mut total: i128 = 0;
        for ci in 0..table.classes.len() {
            let mut prod = table.class_sizes[ci] as i128;
            for r in &rows {
                prod *= r[ci] as i128;
            }
            total += prod;
        }
        debug_assert!(total % dfact == 0 && total >= 0);
        let mult = (total / dfact) as u64;
        if mult == 0 {
            continue;
        }
        let mut dim: u128 = mult as u128;
        for (p, &a) in tuple.iter().zip(dims) {
            dim *= schur_dimension(p, a)? as u128;
        }
        out.push(IsotypicComponent {
            partitions: tuple.into_iter().cloned().collect(),
            multiplicity: mult,
            dimension: u64::try_from(dim)
                .map_err(|_| Error::internal("component dimension overflows u64"))?,
        });
    }
    // total-dimension identity: Σ dim = C(N + d − 1, d) with N = Π a_j
    let n_total: u128 = dims.iter().map(|&a| a as u128).product();
    let expected = binomial(n_total + d as u128 - 1, d as u128);
    let got: u128 = out.iter().map(|c| c.dimension as u128).sum();
    if got != expected {
        return Err(Error::internal(format!(
            "isotypic dimensions sum to {got}, expected C({} + {d} − 1, {d}) = {expected}",
            n_total
        )));
    }
    Ok(out)
}

/// Exact binomial coefficient C(n, k) in u128 (0 when k > n).
pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    let q: BigInt = num / den;
    u128::try_from(q).expect("binomial overflows u128")
}

/// Littlewood–Richardson coefficient c^λ_{μν}: the number of lattice-word
/// semistandard skew tableaux of shape λ/μ and content ν, counted by
/// backtracking in reverse reading order with the lattice condition checked
/// incrementally.
pub fn littlewood_richardson(lam: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if mu.weight() + nu.weight() != lam.weight() {
        return 0;
    }
    if mu.len() > lam.len() {
        return 0;
    }
    for i in 0..mu.len() {
        if mu.part(i) > lam.part(i) {
            return 0; // μ not contained in λ
        }
    }
    // cells of λ/μ in reading order: rows top to bottom, right to left
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for r in 0..lam.len() {
        for c in (mu.part(r) as usize..lam.part(r) as usize).rev() {
            cells.push((r, c));
        }
    }
    let nv = nu.len();
    let mut grid: Vec<Vec<usize>> = (0..lam.len())
        .map(|r| vec![usize::MAX; lam.part(r) as usize])
        .collect();
    let mut counts = vec![0u32; nv + 1];
    let mut total = 0u64;

    fn rec(
        i: usize,
        cells: &[(usize, usize)],
        lam: &Partition,
        mu: &Partition,
        nu: &Partition,
        grid: &mut Vec<Vec<usize>>,
        counts: &mut Vec<u32>,
        total: &mut u64,
    ) {
        if i == cells.len() {
            *total += 1;
            return;
        }
        let (r, c) = cells[i];
        for v in 1..=nu.len() {
            if counts[v] >= nu.part(v - 1) {
                continue; // content budget
            }
            if v > 1 && counts[v - 1] <= counts[v] {
                continue; // lattice word prefix condition
            }
            // row weakly increasing: cell to the right is already filled
            if c + 1 < lam.part(r) as usize && grid[r][c + 1] != usize::MAX && v > grid[r][c + 1] {
                continue;
            }
            // column strictly increasing: cell above is filled iff it lies in λ/μ
            if r > 0 && c < lam.part(r - 1) as usize && c >= mu.part(r - 1) as usize {
                let above = grid[r - 1][c];
                debug_assert!(above != usize::MAX);
                if v <= above {
                    continue;
                }
            }
            grid[r][c] = v;
            counts[v] += 1;
            rec(i + 1, cells, lam, mu, nu, grid, counts, total);
            counts[v] -= 1;
            grid[r][c] = usize::MAX;
        }
    }
    rec(
        0, &cells, lam, mu, nu, &mut grid, &mut counts, &mut total,
    );
    total
}

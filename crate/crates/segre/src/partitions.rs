//! Integer partitions: the indexing combinatorics for everything else.
//!
//! A [`Partition`] is a weakly decreasing sequence of positive integers; the
//! empty partition is valid and denotes the trivial weight. Enumeration is in
//! reverse-lexicographic order (largest first part first), which downstream
//! code relies on for deterministic output.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition λ = (λ_1 ≥ λ_2 ≥ … ≥ λ_k > 0).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// One cell of a Young diagram together with its hook length and content.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cell {
    /// 0-based row.
    pub row: usize,
    /// 0-based column.
    pub col: usize,
    /// Hook length: arm + leg + 1.
    pub hook: u32,
    /// Content: col − row (can be negative).
    pub content: i64,
}

impl Partition {
    /// Validates weak decrease and positivity.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::invalid(format!(
                    "parts must be weakly decreasing, got {parts:?}"
                )));
            }
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::invalid(format!(
                "parts must be positive, got {parts:?}"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// |λ| = Σ λ_i.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of (positive) parts, l(λ).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part λ_i (0-based), 0 beyond the last row.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// The conjugate (transpose) partition.
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0) as usize;
        let conj = (0..cols)
            .map(|c| self.0.iter().filter(|&&p| p as usize > c).count() as u32)
            .collect();
        Partition(conj)
    }

    /// All diagram cells with hook lengths and contents, row-major.
    pub fn cells(&self) -> Vec<Cell> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.weight() as usize);
        for (r, &row_len) in self.0.iter().enumerate() {
            for c in 0..row_len as usize {
                let arm = row_len as usize - 1 - c;
                let leg = conj.part(c) as usize - 1 - r;
                out.push(Cell {
                    row: r,
                    col: c,
                    hook: (arm + leg + 1) as u32,
                    content: c as i64 - r as i64,
                });
            }
        }
        out
    }

    /// All partitions of `d` with at most `max_rows` parts (unbounded when
    /// `None`), in reverse-lexicographic order: (d) first, (1,…,1) last.
    pub fn enumerate(d: u32, max_rows: Option<usize>) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut acc: Vec<u32> = Vec::new();
        fn rec(rem: u32, max_part: u32, max_rows: Option<usize>, acc: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(acc.clone()));
                return;
            }
            if let Some(m) = max_rows {
                if acc.len() >= m {
                    return;
                }
            }
            let hi = rem.min(max_part);
            for p in (1..=hi).rev() {
                acc.push(p);
                rec(rem - p, p, max_rows, acc, out);
                acc.pop();
            }
        }
        rec(d, d, max_rows, &mut acc, &mut out);
        out
    }

    /// Pad with zeros to length `n` (for use as a GL(n) weight).
    pub fn padded(&self, n: usize) -> Vec<i64> {
        (0..n).map(|i| self.part(i) as i64).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle for the partition numbers p(d): Euler's pentagonal
    /// number recurrence, no shared code with the enumerator.
    fn partition_count_oracle(n: usize) -> Vec<u64> {
        let mut p = vec![0u64; n + 1];
        p[0] = 1;
        for m in 1..=n {
            let mut total: i128 = 0;
            let mut k: i64 = 1;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g1 > m && g2 > m {
                    break;
                }
                let sign = if k % 2 == 0 { -1i128 } else { 1i128 };
                if g1 <= m {
                    total += sign * p[m - g1] as i128;
                }
                if g2 <= m {
                    total += sign * p[m - g2] as i128;
                }
                k += 1;
            }
            p[m] = total as u64;
        }
        p
    }

    #[test]
    fn enumeration_count_matches_pentagonal_recurrence() {
        let oracle = partition_count_oracle(12);
        for d in 0..=12u32 {
            assert_eq!(
                Partition::enumerate(d, None).len() as u64,
                oracle[d as usize],
                "p({d})"
            );
        }
    }

    #[test]
    fn enumeration_order_and_row_bound() {
        let got: Vec<Vec<u32>> = Partition::enumerate(4, Some(3))
            .into_iter()
            .map(|p| p.parts().to_vec())
            .collect();
        assert_eq!(got, vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1]]);
        // unbounded adds the single extra partition (1,1,1,1)
        let all = Partition::enumerate(4, None);
        assert_eq!(all.len(), 5);
        assert_eq!(all.last().unwrap().parts(), &[1, 1, 1, 1]);
    }

    #[test]
    fn conjugate_example_and_involution() {
        let p = Partition::new(vec![4, 4, 1]).unwrap();
        assert_eq!(p.conjugate().parts(), &[3, 2, 2, 2]);
        for d in 0..=9u32 {
            for q in Partition::enumerate(d, None) {
                assert_eq!(q.conjugate().conjugate(), q, "involution at {q}");
                assert_eq!(q.conjugate().weight(), q.weight());
            }
        }
    }

    #[test]
    fn hooks_and_contents_of_21() {
        let p = Partition::new(vec![2, 1]).unwrap();
        let cells = p.cells();
        let mut hooks: Vec<u32> = cells.iter().map(|c| c.hook).collect();
        hooks.sort_unstable();
        assert_eq!(hooks, vec![1, 1, 3]);
        let mut contents: Vec<i64> = cells.iter().map(|c| c.content).collect();
        contents.sort_unstable();
        assert_eq!(contents, vec![-1, 0, 1]);
    }

    #[test]
    fn hook_multiset_is_conjugation_invariant() {
        for d in 0..=9u32 {
            for p in Partition::enumerate(d, None) {
                let mut h1: Vec<u32> = p.cells().iter().map(|c| c.hook).collect();
                let mut h2: Vec<u32> = p.conjugate().cells().iter().map(|c| c.hook).collect();
                h1.sort_unstable();
                h2.sort_unstable();
                assert_eq!(h1, h2, "hook multiset at {p}");
            }
        }
    }

    #[test]
    fn invalid_partitions_rejected() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(vec![]).is_ok());
    }

    #[test]
    fn serde_as_plain_array() {
        let p = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[2,1]");
        let q: Partition = serde_json::from_str("[3,1,1]").unwrap();
        assert_eq!(q.parts(), &[3, 1, 1]);
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }
}

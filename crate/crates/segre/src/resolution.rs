//! Equivariant Betti tables of two bounded-rank loci, and the dimension
//! bookkeeping around them.
//!
//! Two minimal free resolutions are shipped as embedded, checksummed data:
//! the rank ≤ 2 locus in a 2×2×2×2 tensor space and the rank ≤ 3 locus in a
//! 3×3×3 tensor space. Each table row records one orbit of factor
//! partitions; expanding orbits through Schur module dimensions recovers the
//! plain graded Betti numbers β_{j,k}, and an Euler-characteristic sum over
//! those recovers the Hilbert function of the coordinate ring — which can be
//! cross-checked degree by degree against elimination on the actual
//! generators (see [`crate::polyring::hilbert_function`]).
//!
//! The module also provides the closed-form codimension counts for bounded
//! rank loci and the rank/dimension budget of the vector-bundle
//! construction that produces such resolutions.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use itertools::Itertools;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::symrep::{binomial, schur_dimension};
use crate::tensors::Shape;

const FOUR_FACTOR_SRC: &str = include_str!("../data/betti_4factor.json");
const FOUR_FACTOR_SHA256: &str =
    "e7c20bd960f08b4c0a08946a2711621adc0457e8eba2e5b5518d44cbcdd18147";

const THREE_FACTOR_SRC: &str = include_str!("../data/betti_3factor.json");
const THREE_FACTOR_SHA256: &str =
    "d34e64876540790ad82babf98b8d89822ff7d18397f4f6cddad1e3bc4e1be9a4";

/// One row of an equivariant Betti table: at homological step `step` and
/// internal degree `twist`, `copies` copies of the orbit of
/// `orbit[0] ⊗ … ⊗ orbit[n-1]` under permutations of equal-dimension
/// factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiEntry {
    pub step: usize,
    pub twist: usize,
    pub orbit: Vec<Partition>,
    pub copies: u64,
}

/// An equivariant Betti table for one bounded-rank locus.
#[derive(Clone, Debug)]
pub struct BettiTable {
    pub name: String,
    pub shape: Shape,
    pub rank_bound: usize,
    pub entries: Vec<BettiEntry>,
}

impl BettiTable {
    fn parse(src: &str, expected_sha256: &str) -> Result<BettiTable> {
        let digest = hex_digest(src);
        if digest != expected_sha256 {
            return Err(Error::internal(format!(
                "embedded resolution table is corrupted: sha256 {digest} != {expected_sha256}"
            )));
        }
        let v: serde_json::Value = serde_json::from_str(src)
            .map_err(|e| Error::internal(format!("bad embedded table JSON: {e}")))?;
        let name = v
            .get("name")
            .and_then(|n| n.as_str())
            .ok_or_else(|| Error::internal("table missing \"name\""))?
            .to_string();
        let dims: Vec<usize> = serde_json::from_value(
            v.get("shape")
                .ok_or_else(|| Error::internal("table missing \"shape\""))?
                .clone(),
        )
        .map_err(|e| Error::internal(format!("bad table shape: {e}")))?;
        let shape = Shape::new(dims)?;
        let rank_bound = v
            .get("rank_bound")
            .and_then(|r| r.as_u64())
            .ok_or_else(|| Error::internal("table missing \"rank_bound\""))?
            as usize;
        let mut entries = Vec::new();
        for e in v
            .get("entries")
            .and_then(|e| e.as_array())
            .ok_or_else(|| Error::internal("table missing \"entries\""))?
        {
            let step = e.get("step").and_then(|x| x.as_u64()).ok_or_else(|| {
                Error::internal("table entry missing \"step\"")
            })? as usize;
            let twist = e.get("twist").and_then(|x| x.as_u64()).ok_or_else(|| {
                Error::internal("table entry missing \"twist\"")
            })? as usize;
            let copies = e
                .get("copies")
                .and_then(|x| x.as_u64())
                .ok_or_else(|| Error::internal("table entry missing \"copies\""))?;
            let orbit_raw: Vec<Vec<u32>> = serde_json::from_value(
                e.get("orbit")
                    .ok_or_else(|| Error::internal("table entry missing \"orbit\""))?
                    .clone(),
            )
            .map_err(|err| Error::internal(format!("bad orbit: {err}")))?;
            let orbit: Vec<Partition> = orbit_raw
                .into_iter()
                .map(Partition::new)
                .collect::<Result<_>>()?;
            if orbit.len() != shape.num_factors() {
                return Err(Error::internal(format!(
                    "orbit length {} != number of factors {}",
                    orbit.len(),
                    shape.num_factors()
                )));
            }
            // each factor partition lives in internal degree `twist`
            if orbit.iter().any(|p| p.weight() as usize != twist) {
                return Err(Error::internal(format!(
                    "entry at step {step}: partition weight != twist {twist}"
                )));
            }
            if copies == 0 {
                return Err(Error::internal("table entry with zero copies"));
            }
            entries.push(BettiEntry {
                step,
                twist,
                orbit,
                copies,
            });
        }
        if entries.is_empty() {
            return Err(Error::internal("empty resolution table"));
        }
        Ok(BettiTable {
            name,
            shape,
            rank_bound,
            entries,
        })
    }

    /// Homological length of the resolution (largest step).
    pub fn length(&self) -> usize {
        self.entries.iter().map(|e| e.step).max().unwrap_or(0)
    }

    /// Distinct arrangements of an orbit among the factor positions,
    /// permuting only positions of equal dimension.
    fn arrangements(&self, orbit: &[Partition]) -> Vec<Vec<Partition>> {
        let dims = self.shape.dims();
        let n = dims.len();
        (0..n)
            .permutations(n)
            .filter(|perm| (0..n).all(|i| dims[perm[i]] == dims[i]))
            .map(|perm| perm.iter().map(|&i| orbit[i].clone()).collect::<Vec<_>>())
            .unique()
            .collect()
    }

    /// Plain graded Betti numbers β_{step,twist}, expanded from the orbit
    /// data through Schur module dimensions.
    pub fn betti_numbers(&self) -> Result<BTreeMap<(usize, usize), u128>> {
        let dims = self.shape.dims();
        let mut out: BTreeMap<(usize, usize), u128> = BTreeMap::new();
        for e in &self.entries {
            let mut total: u128 = 0;
            for arrangement in self.arrangements(&e.orbit) {
                let mut prod: u128 = 1;
                for (p, &a) in arrangement.iter().zip(dims) {
                    prod *= schur_dimension(p, a)? as u128;
                }
                total += prod;
            }
            *out.entry((e.step, e.twist)).or_insert(0) += e.copies as u128 * total;
        }
        Ok(out)
    }

    /// Hilbert function of the coordinate ring in degree `d`, as the Euler
    /// characteristic Σ (−1)^j β_{j,k} · dim S_{d−k}(C^N) of the resolution.
    pub fn hilbert_value(&self, d: usize) -> Result<u128> {
        hilbert_from_betti(&self.betti_numbers()?, self.shape.total_dim(), d)
    }

    /// Dimension of the degree-`d` graded piece of the defining ideal,
    /// dim S_d(C^N) − H(d).
    pub fn ideal_dimension(&self, d: usize) -> Result<u128> {
        let nvars = self.shape.total_dim() as u128;
        let full = binomial(nvars + d as u128 - 1, d as u128);
        let h = self.hilbert_value(d)?;
        if h > full {
            return Err(Error::internal(format!(
                "Hilbert value {h} exceeds the ambient dimension {full} in degree {d}"
            )));
        }
        Ok(full - h)
    }
}

fn hex_digest(src: &str) -> String {
    let mut h = Sha256::new();
    h.update(src.as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Hilbert function value from plain Betti numbers over a polynomial ring
/// in `nvars` variables: Σ (−1)^j β_{j,k} · C(d−k+nvars−1, nvars−1).
pub fn hilbert_from_betti(
    betti: &BTreeMap<(usize, usize), u128>,
    nvars: usize,
    d: usize,
) -> Result<u128> {
    let mut acc: i128 = 0;
    for (&(j, k), &b) in betti {
        if k > d {
            continue;
        }
        let c = binomial((d - k + nvars - 1) as u128, (nvars - 1) as u128);
        let term = i128::try_from(b * c)
            .map_err(|_| Error::internal("Hilbert term overflows i128"))?;
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    u128::try_from(acc)
        .map_err(|_| Error::internal(format!("negative Hilbert value {acc} in degree {d}")))
}

/// The table for the rank ≤ 2 locus in a 2×2×2×2 space.
pub fn four_factor_table() -> &'static BettiTable {
    static TABLE: OnceLock<BettiTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        BettiTable::parse(FOUR_FACTOR_SRC, FOUR_FACTOR_SHA256)
            .expect("embedded four-factor resolution table is valid")
    })
}

/// The table for the rank ≤ 3 locus in a 3×3×3 space.
pub fn three_factor_table() -> &'static BettiTable {
    static TABLE: OnceLock<BettiTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        BettiTable::parse(THREE_FACTOR_SRC, THREE_FACTOR_SHA256)
            .expect("embedded three-factor resolution table is valid")
    })
}

/// Expected projective codimension of the rank ≤ r locus inside
/// P(C^{a_1} ⊗ … ⊗ C^{a_n}): (Πa − 1) − (r·Σ(a_j − 1) + r − 1). May be
/// negative when the locus fills the ambient space.
pub fn secant_codimension(dims: &[usize], r: usize) -> Result<i64> {
    check_dims_rank(dims, r)?;
    let prod: i64 = dims.iter().map(|&a| a as i64).product();
    let sum: i64 = dims.iter().map(|&a| a as i64).sum();
    let n = dims.len() as i64;
    let r = r as i64;
    Ok((prod - 1) - (r * (sum - n) + (r - 1)))
}

/// Dimension bookkeeping of the bundle construction behind these
/// resolutions, for the locus of tensors whose single-factor flattening
/// ranks are all ≤ r and its rank ≤ r sublocus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthBudget {
    /// Πa − r^n: rank of the quotient bundle whose vanishing locus
    /// desingularizes the bounded multilinear rank locus.
    pub bundle_rank: i64,
    /// Σ r(a_j − r): dimension of the underlying product of Grassmannians.
    pub base_dim: i64,
    /// Affine dimension r^n + Σ r(a_j − r) of the bounded multilinear rank
    /// locus.
    pub subspace_dim: i64,
    /// Its affine codimension Πa − subspace_dim.
    pub subspace_codim: i64,
    /// Affine dimension r·Σ(a_j − 1) + r of the rank ≤ r cone.
    pub secant_dim: i64,
    /// Codimension of the rank ≤ r cone inside the bounded multilinear
    /// rank locus; in closed form r^n − n·r² + r(n − 1).
    pub secant_codim_in_subspace: i64,
}

/// Compute the budget; requires 1 ≤ r ≤ min a_j so both loci are proper
/// subvarieties with the generic parameter counts.
pub fn length_budget(dims: &[usize], r: usize) -> Result<LengthBudget> {
    check_dims_rank(dims, r)?;
    let n = dims.len() as i64;
    let prod: i64 = dims.iter().map(|&a| a as i64).product();
    let sum: i64 = dims.iter().map(|&a| a as i64).sum();
    let ri = r as i64;
    let r_pow_n = ri.checked_pow(dims.len() as u32).ok_or_else(|| {
        Error::invalid("rank bound too large for budget bookkeeping")
    })?;
    let base_dim = ri * sum - n * ri * ri;
    let subspace_dim = r_pow_n + base_dim;
    let secant_dim = ri * (sum - n) + ri;
    Ok(LengthBudget {
        bundle_rank: prod - r_pow_n,
        base_dim,
        subspace_dim,
        subspace_codim: prod - subspace_dim,
        secant_dim,
        secant_codim_in_subspace: subspace_dim - secant_dim,
    })
}

fn check_dims_rank(dims: &[usize], r: usize) -> Result<()> {
    if dims.len() < 2 {
        return Err(Error::invalid("need at least two factors"));
    }
    if dims.iter().any(|&a| a < 2) {
        return Err(Error::invalid("factor dimensions must be at least 2"));
    }
    if r == 0 {
        return Err(Error::invalid("rank bound must be positive"));
    }
    if dims.iter().any(|&a| r > a) {
        return Err(Error::invalid(format!(
            "rank bound {r} exceeds a factor dimension in {dims:?}"
        )));
    }
    Ok(())
}

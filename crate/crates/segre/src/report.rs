//! JSON reporting layer and command-line dispatch.
//!
//! Every command produces a single JSON document on standard output with a
//! fixed envelope: tool name, version, the command, an echo of the
//! configuration (including seeds and primes wherever they matter), and the
//! result. Identical configuration produces byte-identical output. Commands
//! that *verify* something (`betti-check`, `hilbert-compare`, `bott`,
//! `length-budget`) exit with status 2 when the check fails; commands that
//! *report* data (evaluations, memberships, ranks) always exit 0 on valid
//! input; usage and input errors exit 1.
//!
//! Tensor-consuming commands read JSON from `--input` or standard input and
//! accept either a bare tensor document or a previous report envelope
//! (the tensor is found under `result.tensor`), so commands compose in
//! pipelines.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::bott::{symmetric_power_acyclicity, SymmetricPowerReport};
use crate::equations::{
    inherited_strassen_generators, jacobian_rank_at, membership_report, secant_generators,
    subspace_variety_generators, GeneratorSet, MembershipReport,
};
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::polyring::hilbert_function;
use crate::resolution::{
    four_factor_table, length_budget, secant_codimension, three_factor_table, BettiTable,
};
use crate::scalar::{is_prime, Scalar, ScalarDomain, DEFAULT_PRIME, PRIME_ENV_VAR, SECOND_PRIME};
use crate::symrep::{invariant_multiplicity_detailed, isotypic_decomposition};
use crate::tensors::{Shape, Tensor};

/// Comma-separated positive integers, e.g. `2,3,3`.
#[derive(Clone, Debug)]
pub struct DimsArg(pub Vec<usize>);

impl FromStr for DimsArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let dims: std::result::Result<Vec<usize>, _> = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| e.to_string()))
            .collect();
        let dims = dims?;
        if dims.is_empty() {
            return Err("expected a comma-separated list of integers".into());
        }
        if dims.iter().any(|&x| x == 0) {
            return Err("entries must be positive".into());
        }
        Ok(DimsArg(dims))
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "segre",
    version,
    about = "Exact constructions and checks for bounded-rank loci in tensor spaces"
)]
pub struct Cli {
    /// Bound the rayon worker pool (results do not depend on this).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Multiplicity of the symmetric-group invariant in [π_1] ⊗ … ⊗ [π_n]
    Multiplicity {
        /// Common weight of the partitions
        #[arg(long)]
        d: u32,
        /// Partitions as JSON arrays, e.g. "[2,1,1]" (repeat the flag or list several)
        #[arg(long, num_args = 1.., required = true)]
        parts: Vec<String>,
    },
    /// Decompose the degree-d part of the coordinate ring of a tensor space
    Decompose {
        #[arg(long)]
        d: u32,
        /// Factor dimensions, e.g. 3,3,3
        #[arg(long)]
        shape: DimsArg,
    },
    /// Create and inspect tensors
    Tensor {
        #[command(subcommand)]
        cmd: TensorCmd,
    },
    /// Generate and evaluate ideal generators
    Equations {
        #[command(subcommand)]
        cmd: EquationsCmd,
    },
    /// Run every implemented rank ≤ r test against a tensor
    Membership {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Hilbert function of a generated ideal's quotient ring, by degree
    Hilbert {
        #[arg(long)]
        shape: DimsArg,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 6)]
        dmax: usize,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Compare generator-side Hilbert values against the resolution tables
    HilbertCompare {
        /// "4factor" or "3factor"
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 6)]
        dmax: usize,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        prime2: Option<u64>,
    },
    /// Expand the embedded resolution tables and compare Betti numbers
    BettiCheck {
        /// "4factor" or "3factor"
        #[arg(long)]
        case: String,
    },
    /// Cohomology audit of a symmetric power over a Grassmannian product
    Bott {
        #[arg(long)]
        shape: DimsArg,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d: u32,
    },
    /// Expected projective codimension of the rank ≤ r locus
    Codim {
        #[arg(long)]
        shape: DimsArg,
        #[arg(long)]
        r: usize,
    },
    /// Dimension bookkeeping of the resolution-length budget
    LengthBudget {
        #[arg(long)]
        shape: DimsArg,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum TensorCmd {
    /// A seeded random tensor, either of bounded rank or dense
    Random {
        #[arg(long)]
        shape: DimsArg,
        /// Number of rank-one summands (omit with --dense)
        #[arg(long)]
        rank: Option<usize>,
        /// Draw every coordinate independently instead
        #[arg(long, default_value_t = false)]
        dense: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// "rational", "prime", or "prime:<p>"
        #[arg(long, default_value = "rational")]
        domain: String,
    },
    /// The matrix of a flattening (columns = chosen factors)
    Flatten {
        /// 1-based factor indices for the column side, e.g. 1,2
        #[arg(long)]
        split: DimsArg,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Ranks of all single-factor flattenings
    Mrank {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Rank of one flattening
    Rank {
        #[arg(long)]
        split: DimsArg,
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum EquationsCmd {
    /// Emit a generator set as JSON
    Gen {
        #[arg(long)]
        shape: DimsArg,
        /// "secant" (needs --r), "strassen", or "subspace" (needs --bounds)
        #[arg(long, default_value = "secant")]
        family: String,
        #[arg(long)]
        r: Option<usize>,
        /// Per-factor flattening rank bounds for --family subspace
        #[arg(long)]
        bounds: Option<DimsArg>,
    },
    /// Evaluate a generator family on a tensor
    Eval {
        #[arg(long, default_value = "secant")]
        family: String,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        bounds: Option<DimsArg>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Rank of the Jacobian of a generator family at a tensor, over F_p
    Jacobian {
        #[arg(long, default_value = "secant")]
        family: String,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        bounds: Option<DimsArg>,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

/// The default field prime, honoring the environment override.
pub fn default_prime() -> Result<u64> {
    match std::env::var(PRIME_ENV_VAR) {
        Err(_) => Ok(DEFAULT_PRIME),
        Ok(s) => {
            let p: u64 = s
                .parse()
                .map_err(|e| Error::invalid(format!("bad {PRIME_ENV_VAR}: {e}")))?;
            if p >= 1 << 30 || !is_prime(p) {
                return Err(Error::invalid(format!(
                    "{PRIME_ENV_VAR}={p} must be a prime below 2^30"
                )));
            }
            Ok(p)
        }
    }
}

fn second_prime_for(p: u64) -> u64 {
    if p == DEFAULT_PRIME {
        SECOND_PRIME
    } else {
        DEFAULT_PRIME
    }
}

fn parse_domain(s: &str) -> Result<ScalarDomain> {
    if s == "rational" {
        return Ok(ScalarDomain::Rational);
    }
    if s == "prime" {
        return Ok(ScalarDomain::Prime(default_prime()?));
    }
    if let Some(p) = s.strip_prefix("prime:") {
        let p: u64 = p
            .parse()
            .map_err(|e| Error::invalid(format!("bad prime: {e}")))?;
        if p >= 1 << 30 || !is_prime(p) {
            return Err(Error::invalid(format!("{p} must be a prime below 2^30")));
        }
        return Ok(ScalarDomain::Prime(p));
    }
    Err(Error::invalid(format!(
        "unknown domain {s:?}; expected rational, prime, or prime:<p>"
    )))
}

fn parse_partition(s: &str) -> Result<Partition> {
    let trimmed = s.trim();
    let parts: Vec<u32> = if trimmed.is_empty() || trimmed == "[]" {
        Vec::new()
    } else if trimmed.starts_with('[') {
        serde_json::from_str(trimmed)
            .map_err(|e| Error::invalid(format!("bad partition {s:?}: {e}")))?
    } else {
        trimmed
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::invalid(format!("bad partition {s:?}: {e}")))
            })
            .collect::<Result<_>>()?
    };
    Partition::new(parts)
}

fn read_input(input: &Option<PathBuf>) -> Result<String> {
    match input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display()))),
        None => std::io::read_to_string(std::io::stdin())
            .map_err(|e| Error::invalid(format!("cannot read standard input: {e}"))),
    }
}

/// Find a tensor document inside arbitrary input: a bare tensor, or a report
/// envelope carrying one under `result` / `tensor`.
fn tensor_value(v: &Value) -> Result<&Value> {
    if v.get("entries").is_some() && v.get("shape").is_some() {
        return Ok(v);
    }
    if let Some(t) = v.get("tensor") {
        return tensor_value(t);
    }
    if let Some(r) = v.get("result") {
        return tensor_value(r);
    }
    Err(Error::invalid("input JSON does not contain a tensor"))
}

fn read_tensor(input: &Option<PathBuf>) -> Result<Tensor> {
    let src = read_input(input)?;
    let v: Value =
        serde_json::from_str(&src).map_err(|e| Error::invalid(format!("bad input JSON: {e}")))?;
    Tensor::from_json(tensor_value(&v)?)
}

fn one_based(set: &[usize]) -> Vec<usize> {
    set.iter().map(|&i| i + 1).collect()
}

fn zero_based(split: &DimsArg, n: usize) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(split.0.len());
    for &i in &split.0 {
        if i == 0 || i > n {
            return Err(Error::invalid(format!(
                "factor index {i} out of range 1..={n}"
            )));
        }
        out.push(i - 1);
    }
    Ok(out)
}

fn partition_json(p: &Partition) -> Value {
    json!(p.parts())
}

fn big(n: u128) -> Value {
    Value::String(n.to_string())
}

fn scalars_json(values: &[Scalar]) -> Value {
    Value::Array(values.iter().map(Scalar::to_json).collect())
}

fn envelope(command: &str, config: Value, result: Value) -> Value {
    json!({
        "tool": "segre",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": config,
        "result": result,
    })
}

/// Serialize a membership report with 1-based factor indices.
pub fn membership_json(m: &MembershipReport) -> Value {
    let flats: Vec<Value> = m
        .flattenings
        .iter()
        .map(|f| {
            json!({
                "split": one_based(&f.subset),
                "rank": f.rank,
                "within": f.within,
            })
        })
        .collect();
    let equations = match &m.equations {
        None => Value::Null,
        Some(e) => json!({
            "label": e.label,
            "count": e.count,
            "violations": e.violations,
            "first_violation": e.first_violation,
        }),
    };
    json!({
        "rank_bound": m.rank_bound,
        "flattenings": flats,
        "flattenings_pass": m.flattenings_pass,
        "equations": equations,
        "passes": m.passes,
    })
}

/// Serialize a symmetric-power cohomology report.
pub fn symmetric_power_json(r: &SymmetricPowerReport) -> Value {
    let summands: Vec<Value> = r
        .summands
        .iter()
        .map(|s| {
            json!({
                "partitions": s.partitions.iter().map(partition_json).collect::<Vec<_>>(),
                "multiplicity": s.multiplicity,
                "degree": s.degree,
                "section_dimension": big(s.section_dimension),
            })
        })
        .collect();
    json!({
        "shape": r.dims,
        "r": r.r,
        "d": r.d,
        "summands": summands,
        "all_acyclic": r.all_acyclic,
        "max_degree": r.max_degree,
    })
}

fn build_family(
    shape: &Shape,
    family: &str,
    r: Option<usize>,
    bounds: &Option<DimsArg>,
) -> Result<GeneratorSet> {
    match family {
        "secant" => {
            let r = r.ok_or_else(|| Error::invalid("--family secant requires --r"))?;
            secant_generators(shape, r)
        }
        "strassen" => {
            if shape.dims() != [3, 3, 3] {
                return Err(Error::invalid(
                    "--family strassen requires shape 3,3,3",
                ));
            }
            Ok(GeneratorSet {
                shape: shape.clone(),
                label: "the 27 degree-4 commutation quartics".into(),
                generators: inherited_strassen_generators(shape)?,
            })
        }
        "subspace" => {
            let bounds = bounds
                .as_ref()
                .ok_or_else(|| Error::invalid("--family subspace requires --bounds"))?;
            subspace_variety_generators(shape, &bounds.0)
        }
        other => Err(Error::invalid(format!(
            "unknown family {other:?}; expected secant, strassen, or subspace"
        ))),
    }
}

fn expected_betti(case: &str) -> Vec<(usize, usize, u128)> {
    match case {
        "4factor" => vec![
            (0, 0, 1),
            (1, 3, 32),
            (2, 4, 78),
            (3, 5, 48),
            (3, 6, 20),
            (4, 8, 57),
            (5, 9, 48),
            (6, 10, 12),
        ],
        _ => vec![
            (0, 0, 1),
            (1, 4, 27),
            (2, 5, 27),
            (2, 6, 30),
            (3, 6, 1),
            (3, 9, 223),
            (4, 10, 351),
            (5, 11, 189),
            (6, 12, 30),
            (6, 15, 1),
        ],
    }
}

fn case_setup(case: &str) -> Result<(&'static BettiTable, GeneratorSet)> {
    match case {
        "4factor" => {
            let table = four_factor_table();
            let set = secant_generators(&table.shape, table.rank_bound)?;
            Ok((table, set))
        }
        "3factor" => {
            let table = three_factor_table();
            let set = secant_generators(&table.shape, table.rank_bound)?;
            Ok((table, set))
        }
        other => Err(Error::invalid(format!(
            "unknown case {other:?}; expected 4factor or 3factor"
        ))),
    }
}

/// Execute a parsed command; returns the report document and the exit code
/// (0 = success/data, 2 = a verification failed).
pub fn run(cli: &Cli) -> Result<(Value, i32)> {
    if let Some(t) = cli.threads {
        // first initialization wins; later calls are no-ops
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    match &cli.command {
        Command::Multiplicity { d, parts } => multiplicity_cmd(*d, parts),
        Command::Decompose { d, shape } => decompose_cmd(*d, shape),
        Command::Tensor { cmd } => tensor_cmd(cmd),
        Command::Equations { cmd } => equations_cmd(cmd),
        Command::Membership { r, input } => membership_cmd(*r, input),
        Command::Hilbert {
            shape,
            r,
            dmax,
            prime,
        } => hilbert_cmd(shape, *r, *dmax, *prime),
        Command::HilbertCompare {
            case,
            dmax,
            prime,
            prime2,
        } => hilbert_compare_cmd(case, *dmax, *prime, *prime2),
        Command::BettiCheck { case } => betti_check_cmd(case),
        Command::Bott { shape, r, d } => bott_cmd(shape, *r, *d),
        Command::Codim { shape, r } => codim_cmd(shape, *r),
        Command::LengthBudget { shape, r } => length_budget_cmd(shape, *r),
    }
}

fn multiplicity_cmd(d: u32, parts: &[String]) -> Result<(Value, i32)> {
    let pis: Vec<Partition> = parts
        .iter()
        .map(|s| parse_partition(s))
        .collect::<Result<_>>()?;
    if pis.iter().any(|p| p.weight() != d) {
        return Err(Error::invalid(format!(
            "all partitions must have weight {d}"
        )));
    }
    let (multiplicity, terms) = invariant_multiplicity_detailed(&pis)?;
    let class_terms: Vec<Value> = terms
        .iter()
        .map(|t| {
            json!({
                "class": partition_json(&t.class),
                "size": t.class_size,
                "characters": t.character_values,
                "term": t.term.to_string(),
            })
        })
        .collect();
    let config = json!({
        "d": d,
        "parts": pis.iter().map(partition_json).collect::<Vec<_>>(),
    });
    let result = json!({
        "multiplicity": multiplicity,
        "class_terms": class_terms,
    });
    Ok((envelope("multiplicity", config, result), 0))
}

fn decompose_cmd(d: u32, shape: &DimsArg) -> Result<(Value, i32)> {
    let components = isotypic_decomposition(d, &shape.0)?;
    let total: u128 = components.iter().map(|c| c.dimension as u128).sum();
    let rows: Vec<Value> = components
        .iter()
        .map(|c| {
            json!({
                "partitions": c.partitions.iter().map(partition_json).collect::<Vec<_>>(),
                "multiplicity": c.multiplicity,
                "dimension": c.dimension,
            })
        })
        .collect();
    let config = json!({"d": d, "shape": shape.0});
    let result = json!({
        "components": rows,
        "count": components.len(),
        "total_dimension": big(total),
    });
    Ok((envelope("decompose", config, result), 0))
}

fn tensor_cmd(cmd: &TensorCmd) -> Result<(Value, i32)> {
    match cmd {
        TensorCmd::Random {
            shape,
            rank,
            dense,
            seed,
            domain,
        } => {
            let sh = Shape::new(shape.0.clone())?;
            let dom = parse_domain(domain)?;
            let tensor = match (rank, dense) {
                (Some(r), false) => Tensor::random_rank(sh, *r, *seed, dom)?,
                (None, true) => Tensor::random_dense(sh, *seed, dom),
                _ => {
                    return Err(Error::invalid(
                        "pass exactly one of --rank <r> or --dense",
                    ))
                }
            };
            let config = json!({
                "shape": shape.0,
                "rank": rank,
                "dense": dense,
                "seed": seed,
                "domain": domain,
            });
            let result = json!({"tensor": tensor.to_json()});
            Ok((envelope("tensor random", config, result), 0))
        }
        TensorCmd::Flatten { split, input } => {
            let t = read_tensor(input)?;
            let subset = zero_based(split, t.shape.num_factors())?;
            let m = t.flatten(&subset)?;
            let complement: Vec<usize> = (0..t.shape.num_factors())
                .filter(|j| !subset.contains(j))
                .map(|j| j + 1)
                .collect();
            let entries: Vec<Value> = (0..m.rows)
                .map(|i| {
                    Value::Array((0..m.cols).map(|j| m.get(i, j).to_json()).collect())
                })
                .collect();
            let config = json!({"split": split.0});
            let result = json!({
                "rows": m.rows,
                "cols": m.cols,
                "column_factors": split.0,
                "row_factors": complement,
                "entries": entries,
            });
            Ok((envelope("tensor flatten", config, result), 0))
        }
        TensorCmd::Mrank { input } => {
            let t = read_tensor(input)?;
            let ranks = t.multilinear_rank()?;
            let config = json!({});
            let result = json!({"shape": t.shape.dims(), "multilinear_rank": ranks});
            Ok((envelope("tensor mrank", config, result), 0))
        }
        TensorCmd::Rank { split, input } => {
            let t = read_tensor(input)?;
            let subset = zero_based(split, t.shape.num_factors())?;
            let rank = t.flatten(&subset)?.rank();
            let config = json!({"split": split.0});
            let result = json!({"split": split.0, "rank": rank});
            Ok((envelope("tensor rank", config, result), 0))
        }
    }
}

fn equations_cmd(cmd: &EquationsCmd) -> Result<(Value, i32)> {
    match cmd {
        EquationsCmd::Gen {
            shape,
            family,
            r,
            bounds,
        } => {
            let sh = Shape::new(shape.0.clone())?;
            let set = build_family(&sh, family, *r, bounds)?;
            let config = json!({
                "shape": shape.0,
                "family": family,
                "r": r,
                "bounds": bounds.as_ref().map(|b| b.0.clone()),
            });
            let result = json!({"generator_set": set.to_json()?});
            Ok((envelope("equations gen", config, result), 0))
        }
        EquationsCmd::Eval {
            family,
            r,
            bounds,
            input,
        } => {
            let t = read_tensor(input)?;
            let set = build_family(&t.shape, family, *r, bounds)?;
            let values = set.evaluate_all(&t)?;
            let nonzero = values.iter().filter(|v| !v.is_zero()).count();
            let first_violation = values
                .iter()
                .position(|v| !v.is_zero())
                .map(|i| set.generators[i].desc.clone());
            let config = json!({
                "family": family,
                "r": r,
                "bounds": bounds.as_ref().map(|b| b.0.clone()),
            });
            let result = json!({
                "label": set.label,
                "count": set.len(),
                "values": scalars_json(&values),
                "nonzero": nonzero,
                "all_zero": nonzero == 0,
                "first_violation": first_violation,
            });
            Ok((envelope("equations eval", config, result), 0))
        }
        EquationsCmd::Jacobian {
            family,
            r,
            bounds,
            prime,
            input,
        } => {
            let t = read_tensor(input)?;
            let set = build_family(&t.shape, family, *r, bounds)?;
            // a tensor that already lives over F_q pins the prime
            let p = match (prime, t.domain) {
                (Some(p), ScalarDomain::Prime(q)) if *p != q => {
                    return Err(Error::invalid(format!(
                        "input tensor lives over F_{q}, cannot evaluate mod {p}"
                    )))
                }
                (Some(p), _) => *p,
                (None, ScalarDomain::Prime(q)) => q,
                (None, ScalarDomain::Rational) => default_prime()?,
            };
            if p >= 1 << 30 || !is_prime(p) {
                return Err(Error::invalid(format!("{p} must be a prime below 2^30")));
            }
            let rank = jacobian_rank_at(&set, &t, p)?;
            let config = json!({
                "family": family,
                "r": r,
                "bounds": bounds.as_ref().map(|b| b.0.clone()),
                "prime": p,
            });
            let result = json!({
                "label": set.label,
                "generator_count": set.len(),
                "prime": p,
                "rank": rank,
            });
            Ok((envelope("equations jacobian", config, result), 0))
        }
    }
}

fn membership_cmd(r: usize, input: &Option<PathBuf>) -> Result<(Value, i32)> {
    let t = read_tensor(input)?;
    let report = membership_report(&t, r)?;
    let config = json!({"r": r});
    let mut result = membership_json(&report);
    result["shape"] = json!(t.shape.dims());
    Ok((envelope("membership", config, result), 0))
}

fn hilbert_cmd(
    shape: &DimsArg,
    r: usize,
    dmax: usize,
    prime: Option<u64>,
) -> Result<(Value, i32)> {
    let sh = Shape::new(shape.0.clone())?;
    let set = secant_generators(&sh, r)?;
    let polys = set.explicit_polys()?;
    let p = match prime {
        Some(p) => p,
        None => default_prime()?,
    };
    let values = hilbert_function(&polys, sh.total_dim(), dmax, p)?;
    let rows: Vec<Value> = values
        .iter()
        .map(|(d, v)| json!({"degree": d, "dimension": big(*v)}))
        .collect();
    let config = json!({"shape": shape.0, "r": r, "dmax": dmax, "prime": p});
    let result = json!({
        "label": set.label,
        "generator_count": set.len(),
        "nvars": sh.total_dim(),
        "prime": p,
        "values": rows,
    });
    Ok((envelope("hilbert", config, result), 0))
}

fn hilbert_compare_cmd(
    case: &str,
    dmax: usize,
    prime: Option<u64>,
    prime2: Option<u64>,
) -> Result<(Value, i32)> {
    let (table, set) = case_setup(case)?;
    let p = match prime {
        Some(p) => p,
        None => default_prime()?,
    };
    let q = match prime2 {
        Some(q) => q,
        None => second_prime_for(p),
    };
    for m in [p, q] {
        if m >= 1 << 30 || !is_prime(m) {
            return Err(Error::invalid(format!("{m} must be a prime below 2^30")));
        }
    }
    if p == q {
        return Err(Error::invalid("the two primes must be distinct"));
    }
    let polys = set.explicit_polys()?;
    let nvars = table.shape.total_dim();
    eprintln!(
        "eliminating {} generators on {nvars} variables up to degree {dmax} over F_{p} and F_{q}",
        polys.len()
    );
    let (hp, hq) = rayon::join(
        || hilbert_function(&polys, nvars, dmax, p),
        || hilbert_function(&polys, nvars, dmax, q),
    );
    let (hp, hq) = (hp?, hq?);
    let mut rows = Vec::new();
    let mut all_match = true;
    for d in 0..=dmax {
        let gp = hp[d].1;
        let gq = hq[d].1;
        let hr = table.hilbert_value(d)?;
        let ok = gp == hr && gq == hr;
        all_match &= ok;
        rows.push(json!({
            "degree": d,
            "generators_mod_p": big(gp),
            "generators_mod_q": big(gq),
            "resolution": big(hr),
            "match": ok,
        }));
    }
    let config = json!({"case": case, "dmax": dmax, "prime": p, "prime2": q});
    let result = json!({
        "name": table.name,
        "generator_count": set.len(),
        "rows": rows,
        "all_match": all_match,
    });
    Ok((
        envelope("hilbert-compare", config, result),
        if all_match { 0 } else { 2 },
    ))
}

fn betti_check_cmd(case: &str) -> Result<(Value, i32)> {
    let (table, _) = case_setup(case)?;
    let computed = table.betti_numbers()?;
    let expected = expected_betti(case);
    let mut rows = Vec::new();
    let mut all_match = true;
    for (step, twist, want) in &expected {
        let got = computed.get(&(*step, *twist)).copied().unwrap_or(0);
        let ok = got == *want;
        all_match &= ok;
        rows.push(json!({
            "step": step,
            "twist": twist,
            "computed": big(got),
            "expected": big(*want),
            "match": ok,
        }));
    }
    // anything computed but not expected is a failure too
    let extra: Vec<Value> = computed
        .iter()
        .filter(|((j, k), _)| !expected.iter().any(|(ej, ek, _)| ej == j && ek == k))
        .map(|((j, k), v)| json!({"step": j, "twist": k, "computed": big(*v)}))
        .collect();
    all_match &= extra.is_empty();
    let codim = secant_codimension(table.shape.dims(), table.rank_bound)?;
    let length_ok = table.length() as i64 == codim;
    all_match &= length_ok;
    let config = json!({"case": case});
    let result = json!({
        "name": table.name,
        "entries": rows,
        "unexpected": extra,
        "length": table.length(),
        "expected_length": codim,
        "length_match": length_ok,
        "all_match": all_match,
    });
    Ok((
        envelope("betti-check", config, result),
        if all_match { 0 } else { 2 },
    ))
}

fn bott_cmd(shape: &DimsArg, r: usize, d: u32) -> Result<(Value, i32)> {
    let report = symmetric_power_acyclicity(&shape.0, r, d)?;
    let config = json!({"shape": shape.0, "r": r, "d": d});
    let ok = report.all_acyclic;
    Ok((
        envelope("bott", config, symmetric_power_json(&report)),
        if ok { 0 } else { 2 },
    ))
}

fn codim_cmd(shape: &DimsArg, r: usize) -> Result<(Value, i32)> {
    let codim = secant_codimension(&shape.0, r)?;
    let config = json!({"shape": shape.0, "r": r});
    Ok((envelope("codim", config, json!({"codim": codim})), 0))
}

fn length_budget_cmd(shape: &DimsArg, r: usize) -> Result<(Value, i32)> {
    let b = length_budget(&shape.0, r)?;
    let codim = secant_codimension(&shape.0, r)?;
    let rank_identity = b.bundle_rank - b.base_dim == b.subspace_codim;
    let sum_identity = b.subspace_codim + b.secant_codim_in_subspace == codim;
    let ok = rank_identity && sum_identity;
    let config = json!({"shape": shape.0, "r": r});
    let result = json!({
        "bundle_rank": b.bundle_rank,
        "base_dim": b.base_dim,
        "subspace_dim": b.subspace_dim,
        "subspace_codim": b.subspace_codim,
        "secant_dim": b.secant_dim,
        "secant_codim_in_subspace": b.secant_codim_in_subspace,
        "projective_codim": codim,
        "identity_bundle_rank": rank_identity,
        "identity_codim_sum": sum_identity,
        "identities_ok": ok,
    });
    Ok((
        envelope("length-budget", config, result),
        if ok { 0 } else { 2 },
    ))
}

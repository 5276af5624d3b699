//! Flattenings, multilinear rank, and rank-membership verdicts on exact
//! tensors: a seeded bounded-rank example passes every test, a generic
//! example fails with a named witness.
//!
//! ```text
//! cargo run --example flattenings_and_membership
//! ```

use segre::equations::membership_report;
use segre::{ScalarDomain, Shape, Tensor};

fn main() -> segre::Result<()> {
    let shape = Shape::new(vec![2, 3, 3])?;

    // A tensor built from two rank-one summands.
    let inside = Tensor::random_rank(shape.clone(), 2, 42, ScalarDomain::Rational)?;
    println!("multilinear rank of a seeded rank-2 tensor: {:?}", inside.multilinear_rank()?);
    for cols in [vec![0usize], vec![0, 1], vec![0, 2]] {
        let m = inside.flatten(&cols)?;
        println!(
            "  flattening with column factors {:?}: {}x{} matrix of rank {}",
            cols.iter().map(|c| c + 1).collect::<Vec<_>>(),
            m.rows,
            m.cols,
            m.rank()
        );
    }
    let report = membership_report(&inside, 2)?;
    println!(
        "rank <= 2 verdict: flattenings {}, equations {} -> passes = {}",
        report.flattenings_pass,
        report
            .equations
            .as_ref()
            .map(|e| format!("{} checked, {} violated", e.count, e.violations))
            .unwrap_or_else(|| "none".into()),
        report.passes
    );
    assert!(report.passes);

    // A generic tensor: some flattening rank exceeds 2 and some cubic
    // generator evaluates to a nonzero value.
    let outside = Tensor::random_dense(shape, 42, ScalarDomain::Rational);
    let report = membership_report(&outside, 2)?;
    println!("\ngeneric tensor, same shape:");
    for f in &report.flattenings {
        println!(
            "  flattening {:?}: rank {}, within the bound: {}",
            f.subset.iter().map(|c| c + 1).collect::<Vec<_>>(),
            f.rank,
            f.within
        );
    }
    if let Some(e) = &report.equations {
        println!(
            "  {} of {} generators violated, e.g. {}",
            e.violations,
            e.count,
            e.first_violation.as_deref().unwrap_or("-")
        );
    }
    println!("rank <= 2 verdict: passes = {}", report.passes);
    assert!(!report.passes);
    Ok(())
}

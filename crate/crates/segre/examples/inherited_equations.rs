//! Equations on larger formats by inheritance: single-factor minors cut the
//! bounded multilinear-rank locus, and the 3x3x3 commutation quartics pull
//! back along slice projections and seeded coordinate changes to give
//! degree-4 equations on any format with all dimensions at least 3.
//!
//! ```text
//! cargo run --example inherited_equations
//! ```

use segre::equations::{secant_generators, GeneratorForm};
use segre::{ScalarDomain, Shape, Tensor};

fn main() -> segre::Result<()> {
    for (dims, r) in [(vec![4usize, 4, 4], 3usize), (vec![3, 3, 3, 3], 2)] {
        let shape = Shape::new(dims.clone())?;
        let set = secant_generators(&shape, r)?;
        let composed = set
            .generators
            .iter()
            .filter(|g| matches!(g.form, GeneratorForm::Composed { .. }))
            .count();
        println!(
            "{:?} rank <= {r}: {} generators ({} explicit minors, {composed} composed)",
            dims,
            set.len(),
            set.len() - composed
        );
        if let Some(g) = set
            .generators
            .iter()
            .find(|g| matches!(g.form, GeneratorForm::Composed { .. }))
        {
            println!("  sample composed generator: {}", g.desc);
        }
        if let Some(g) = set
            .generators
            .iter()
            .find(|g| matches!(g.form, GeneratorForm::Explicit(_)))
        {
            println!("  sample explicit generator: {}", g.desc);
        }

        // bounded-rank tensors satisfy everything; a generic tensor does not
        for seed in 0..10u64 {
            let t = Tensor::random_rank(shape.clone(), r, seed, ScalarDomain::Rational)?;
            let (violated, _) = set.violations(&t)?;
            assert_eq!(violated, 0);
        }
        let generic = Tensor::random_dense(shape.clone(), 1, ScalarDomain::Rational);
        let (violated, first) = set.violations(&generic)?;
        println!(
            "  10 seeded rank-{r} tensors satisfy all; a generic one violates {violated}, first: {}",
            first.as_deref().unwrap_or("-")
        );
        assert!(violated > 0);

        // rank r+1 is already enough to break some generator here
        let just_over = Tensor::random_rank(shape.clone(), r + 1, 7, ScalarDomain::Rational)?;
        let (violated, _) = set.violations(&just_over)?;
        println!("  a seeded rank-{} tensor violates {violated}", r + 1);
        println!();
    }
    Ok(())
}

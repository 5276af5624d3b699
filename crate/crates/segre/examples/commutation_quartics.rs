//! The 27 degree-4 commutation quartics on 3x3x3 tensors: they vanish on
//! every tensor of rank at most three, a generic tensor violates them, they
//! span 27 independent directions in degree 4, and their Jacobian at the
//! diagonal point has rank 6 — with the gradient of P_123 collapsing to
//! exactly -dx_123.
//!
//! ```text
//! cargo run --example commutation_quartics
//! ```

use segre::equations::{jacobian_rank_at, secant_generators};
use segre::{Scalar, ScalarDomain, Shape, Tensor, DEFAULT_PRIME, SECOND_PRIME};

fn main() -> segre::Result<()> {
    let shape = Shape::new(vec![3, 3, 3])?;
    let set = secant_generators(&shape, 3)?;
    println!("{}: {} generators of degree 4", set.label, set.len());

    // vanishing on bounded rank, violation on a generic point
    for seed in 0..20u64 {
        let t = Tensor::random_rank(shape.clone(), 3, seed, ScalarDomain::Rational)?;
        let (violated, _) = set.violations(&t)?;
        assert_eq!(violated, 0);
    }
    println!("20 seeded rank-3 tensors: all 27 values are 0 on each");
    let generic = Tensor::random_dense(shape.clone(), 0, ScalarDomain::Rational);
    let (violated, first) = set.violations(&generic)?;
    println!(
        "a generic tensor violates {violated} of 27, first witness: {}",
        first.as_deref().unwrap_or("-")
    );
    assert!(violated > 0);

    // independence in degree 4, at two primes
    for p in [DEFAULT_PRIME, SECOND_PRIME] {
        let span = set.span_dimension(p)?;
        println!("span of the quartics mod {p}: {span}");
        assert_eq!(span, 27);
    }

    // Jacobian rank at the unit diagonal x = e_111 + e_222 + e_333
    let mut diag = Tensor::zeros(shape, ScalarDomain::Rational);
    for i in 0..3 {
        diag.set(&[i, i, i], Scalar::from_int(1, ScalarDomain::Rational));
    }
    for p in [DEFAULT_PRIME, SECOND_PRIME] {
        let rank = jacobian_rank_at(&set, &diag, p)?;
        println!("jacobian rank at the diagonal mod {p}: {rank}");
        assert_eq!(rank, 6);
    }

    // the single-coordinate gradient identity
    let g = &set.generators[5];
    let grad = g.differential_at(&diag)?;
    let pretty: Vec<String> = grad
        .iter()
        .map(|(var, c)| format!("{} * dx[{var}]", c.to_json()))
        .collect();
    println!("gradient of {} at the diagonal: {}", g.desc, pretty.join(" + "));
    assert_eq!(
        grad,
        vec![(5usize, Scalar::from_int(-1, ScalarDomain::Rational))]
    );
    println!("i.e. d(P_123) = -dx_123 there, so the point is smooth on the rank-6 locus");
    Ok(())
}

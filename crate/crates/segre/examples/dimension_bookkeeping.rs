//! Expected codimensions and the resolution-length budget: for each format
//! the bounded multilinear-rank locus contributes one block of codimension
//! and the fiber-wise rank locus the rest; the two blocks always sum to the
//! expected projective codimension.
//!
//! ```text
//! cargo run --example dimension_bookkeeping
//! ```

use segre::resolution::{length_budget, secant_codimension};

fn main() -> segre::Result<()> {
    println!(
        "{:<14} {:>2} {:>7} {:>9} {:>10} {:>10} {:>7}",
        "shape", "r", "codim", "subspace", "in-fiber", "bundle", "base"
    );
    for (dims, r) in [
        (vec![2usize, 2, 2, 2], 2usize),
        (vec![3, 3, 3], 3),
        (vec![3, 3, 3, 3], 2),
        (vec![4, 4, 4], 3),
        (vec![2, 4, 4], 2),
        (vec![5, 5, 5, 5], 3),
        (vec![4, 4, 4, 4, 4], 3),
    ] {
        let b = length_budget(&dims, r)?;
        let codim = secant_codimension(&dims, r)?;
        println!(
            "{:<14} {:>2} {:>7} {:>9} {:>10} {:>10} {:>7}",
            format!("{dims:?}"),
            r,
            codim,
            b.subspace_codim,
            b.secant_codim_in_subspace,
            b.bundle_rank,
            b.base_dim
        );
        assert_eq!(b.bundle_rank - b.base_dim, b.subspace_codim);
        assert_eq!(b.subspace_codim + b.secant_codim_in_subspace, codim);
    }
    println!("\nidentities: bundle - base = subspace codim, subspace + in-fiber = codim");

    // the two base cases share the numerology that makes their resolutions
    // fit in six steps
    assert_eq!(secant_codimension(&[2, 2, 2, 2], 2)?, 6);
    assert_eq!(secant_codimension(&[3, 3, 3], 3)?, 6);
    println!("both base cases have projective codimension 6");
    Ok(())
}

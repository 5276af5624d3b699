//! Decompose the degree-d part of the coordinate ring of a tensor space
//! into isotypic components and check the dimension count against a
//! binomial coefficient.
//!
//! ```text
//! cargo run --example coordinate_ring_decomposition
//! ```

use segre::symrep::{binomial, isotypic_decomposition};

fn main() -> segre::Result<()> {
    let dims = [2usize, 2, 2, 2];
    let d = 3u32;
    let comps = isotypic_decomposition(d, &dims)?;

    println!("degree-{d} coordinate space of a 2x2x2x2 tensor space:");
    println!("{:<44} {:>5} {:>8}", "partition tuple", "mult", "dim");
    let mut total = 0u64;
    for c in &comps {
        let label: Vec<String> = c
            .partitions
            .iter()
            .map(|p| format!("{:?}", p.parts()))
            .collect();
        println!("{:<44} {:>5} {:>8}", label.join(" "), c.multiplicity, c.dimension);
        total += c.dimension;
    }
    let ambient = binomial((dims.iter().product::<usize>() + d as usize - 1) as u128, d as u128);
    println!("total {total}, binomial check {ambient}");
    assert_eq!(u128::from(total), ambient);

    // The four-hook component is the only one whose multiplicity is not
    // forced by the others: 816 = 256 + 384 + 128 + 16*3.
    let hooks = comps
        .iter()
        .find(|c| c.partitions.iter().all(|p| p.parts() == [2, 1]))
        .expect("all-hook component present");
    println!(
        "all-(2,1) component: multiplicity {}, dimension {}",
        hooks.multiplicity, hooks.dimension
    );
    assert_eq!(hooks.multiplicity, 3);
    assert_eq!(816, 256 + 384 + 128 + 16 * 3);

    // A bigger space for scale: degree-4 on 3x3x3.
    let comps = isotypic_decomposition(4, &[3, 3, 3])?;
    let total: u64 = comps.iter().map(|c| c.dimension).sum();
    println!(
        "\ndegree-4 coordinate space of a 3x3x3 tensor space: {} components, total dimension {total}",
        comps.len()
    );
    assert_eq!(u128::from(total), binomial(30, 4));
    Ok(())
}

//! Symmetric-group character calculus: count the invariant inside a tensor
//! product of irreducibles, show the per-class terms behind the count, and
//! verify orthogonality on all pairs up to weight 5.
//!
//! ```text
//! cargo run --example invariant_multiplicities
//! ```

use segre::partitions::Partition;
use segre::symrep::{invariant_multiplicity, invariant_multiplicity_detailed};

fn pi(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn main() -> segre::Result<()> {
    // The invariant appears exactly once in [2,1,1] ⊗ [2,1,1] ⊗ [2,1,1].
    let triple = vec![pi(&[2, 1, 1]); 3];
    let (m, terms) = invariant_multiplicity_detailed(&triple)?;
    println!("multiplicity of the invariant in [2,1,1]^(⊗3): {m}");
    println!("{:<12} {:>6} {:>18} {:>12}", "class", "size", "characters", "term");
    for t in &terms {
        let chars: Vec<String> = t.character_values.iter().map(|c| c.to_string()).collect();
        println!(
            "{:<12} {:>6} {:>18} {:>12}",
            format!("{:?}", t.class.parts()),
            t.class_size,
            chars.join(","),
            t.term
        );
    }
    let total: i128 = terms.iter().map(|t| t.term).sum();
    println!("sum of terms / |S_4| = {total} / 24 = {m}\n");
    assert_eq!(m, 1);

    // Four copies of the weight-3 hook: the count is 3.
    let quad = vec![pi(&[2, 1]); 4];
    let m4 = invariant_multiplicity(&quad)?;
    println!("multiplicity of the invariant in [2,1]^(⊗4): {m4}");
    assert_eq!(m4, 3);

    // Character orthogonality: for a pair of irreducibles the count is the
    // Kronecker delta.
    for d in 1..=5u32 {
        let all = Partition::enumerate(d, None);
        for p in &all {
            for q in &all {
                let m = invariant_multiplicity(&[p.clone(), q.clone()])?;
                assert_eq!(m, u64::from(p == q));
            }
        }
        println!("weight {d}: delta-orthogonality holds on all {} pairs", all.len() * all.len());
    }
    Ok(())
}

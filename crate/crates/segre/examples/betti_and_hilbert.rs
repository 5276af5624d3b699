//! Expand the embedded equivariant resolution tables into plain graded
//! Betti numbers, evaluate their Hilbert functions, and reconcile those
//! values against a direct sparse elimination on the generator side at two
//! primes.
//!
//! ```text
//! cargo run --example betti_and_hilbert
//! ```

use segre::equations::secant_generators;
use segre::polyring::hilbert_function;
use segre::resolution::{four_factor_table, three_factor_table};
use segre::{DEFAULT_PRIME, SECOND_PRIME};

fn main() -> segre::Result<()> {
    for table in [four_factor_table(), three_factor_table()] {
        println!("{} (length {})", table.name, table.length());
        println!("  graded Betti numbers (step, twist) -> rank:");
        for ((j, k), b) in table.betti_numbers()? {
            println!("    ({j}, {k}) -> {b}");
        }

        let set = secant_generators(&table.shape, table.rank_bound)?;
        let polys = set.explicit_polys()?;
        let nvars = table.shape.total_dim();
        println!(
            "  Hilbert function vs elimination over {} generators on {nvars} variables:",
            polys.len()
        );
        let hp = hilbert_function(&polys, nvars, 6, DEFAULT_PRIME)?;
        let hq = hilbert_function(&polys, nvars, 6, SECOND_PRIME)?;
        println!(
            "    {:>3} {:>12} {:>12} {:>12}",
            "d", "resolution", "mod p", "mod q"
        );
        for d in 0..=6 {
            let from_table = table.hilbert_value(d)?;
            println!(
                "    {:>3} {:>12} {:>12} {:>12}",
                d, from_table, hp[d].1, hq[d].1
            );
            assert_eq!(hp[d].1, from_table);
            assert_eq!(hq[d].1, from_table);
        }
        println!();
    }
    println!("every degree agrees at both primes for both tables");
    Ok(())
}

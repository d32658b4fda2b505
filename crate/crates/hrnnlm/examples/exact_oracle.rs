//! The exact-rational verification oracle: stringsums computed in exact
//! arithmetic, used to cross-check the float pipeline.
//!
//! ```bash
//! cargo run --example exact_oracle
//! ```

use hrnnlm::verify::{fixtures_exact, floats_agree, rational_from_decimal};
use hrnnlm::wfsa::{fixtures, Symbol};

fn main() -> hrnnlm::Result<()> {
    // 0.45 really is 9/20.
    let w = rational_from_decimal("0.45").unwrap();
    println!("0.45 parses to the exact rational {w}");

    for ((name, exact), (_, float)) in fixtures_exact().iter().zip(fixtures()) {
        println!("\n== {name} ==");
        let strings: &[&[Symbol]] = &[
            &[],
            &[Symbol(1)],
            &[Symbol(0), Symbol(0)],
            &[Symbol(0), Symbol(1), Symbol(0)],
        ];
        for y in strings {
            let e = exact.stringsum_exact(y)?;
            let f = float.stringsum(y)?;
            println!(
                "  exact {e:>12}  float {f:<22} agree(1e-12 rel) = {}",
                floats_agree(&e, f, 1e-12)
            );
        }
    }
    Ok(())
}

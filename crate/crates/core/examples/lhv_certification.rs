//! Exhaustive classical checks: no deterministic strategy reaches the success
//! event under the zero constraints, and F is the largest admissible coefficient.

use hardy::lhv::{classical_bound, verify_theorem1};
use hardy::{Rational, Scenario};

fn main() -> hardy::Result<()> {
    for (n, a, b) in [(3, 2, 2), (4, 3, 1), (5, 3, 2), (6, 4, 2)] {
        let s = Scenario::new(n, a, b)?;
        let t1 = verify_theorem1(&s)?;
        let at_f = classical_bound(&s, None)?;
        let above = classical_bound(&s, Some(at_f.coefficient + Rational::from_integer(1)))?;
        println!(
            "{s}: {} strategies, zero constraints force failure: {}, max at F = {}: {}, at F+1: {} ({})",
            t1.strategies_checked,
            t1.holds(),
            at_f.coefficient,
            at_f.max_value,
            above.max_value,
            above.argmax
        );
    }
    // dropping the size constraint breaks the argument
    let bad = Scenario::new_unchecked(3, 3, 3);
    if let Some(c) = verify_theorem1(&bad)?.counterexample {
        println!("{bad}: counterexample {c}");
    }
    Ok(())
}

//! Compares the two-angle symmetric optimum with a search over unbalanced
//! states and bases.

use hardy::inequality::maximize_qm_wide;
use hardy::Scenario;

fn main() -> hardy::Result<()> {
    for (n, a, b) in [(3, 2, 2), (3, 3, 1), (4, 3, 1), (4, 3, 2), (5, 4, 2), (6, 4, 3)] {
        let w = maximize_qm_wide(&Scenario::new(n, a, b)?, 32, 7)?;
        println!("{}: symmetric {:.8}, wide {:.8}, gap {:+.2e}", w.scenario, w.symmetric, w.wide, w.exceedance());
    }
    Ok(())
}

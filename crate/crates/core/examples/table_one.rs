//! Threshold visibilities for the four standard rows and the best choice per n.

use hardy::inequality::{optimality_search, threshold_visibility};
use hardy::Scenario;

fn main() -> hardy::Result<()> {
    for n in 3..=10 {
        let mut line = format!("n={n:>2}");
        for (a, b) in [(n, 1), (2, 1), (n - 1, 1), (2, 2)] {
            let v = threshold_visibility(&Scenario::new(n, a, b)?)?;
            line += &format!("  ({a},{b}) {:.6}", v.v_thr.unwrap_or(f64::NAN));
        }
        let best = optimality_search(n)?;
        line += &format!("  best ({},{})", best.winner.alpha, best.winner.beta);
        println!("{line}");
    }
    Ok(())
}

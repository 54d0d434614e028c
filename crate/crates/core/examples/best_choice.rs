//! Which (|α|, |β|) maximizes the success probability, for a few state imbalances.

use hardy::paradox::best_paradox_choice;

fn main() -> hardy::Result<()> {
    for gamma in [0.5, 1.0, 2.0] {
        for n in 3..=9 {
            let b = best_paradox_choice(n, gamma)?;
            let ties = if b.is_degenerate() { format!(" ties {:?}", b.ties) } else { String::new() };
            println!("γ = {gamma}, n = {n}: [{n};{},{}] with {:.6}{ties}", b.alpha, b.beta, b.probability);
        }
    }
    Ok(())
}

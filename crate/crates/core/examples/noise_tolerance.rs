//! How much white noise and per-event error the [3;2,2] test survives.

use hardy::inequality::{epsilon_tolerance, threshold_visibility};
use hardy::paradox::construct_paradox;
use hardy::quantum::mixed_event_probability;
use hardy::Scenario;

fn main() -> hardy::Result<()> {
    let s = Scenario::new(3, 2, 2)?;
    let t = epsilon_tolerance(&s, 1.0)?;
    println!("ε tolerance: {:.6} (exact {:?})", t.epsilon, t.exact.map(|e| e.to_string()));
    let v = threshold_visibility(&s)?;
    println!("threshold visibility: {:.6}", v.v_thr.expect("violated"));

    // Bell value along the noise line at the paradox settings
    let r = construct_paradox(&s, 1.0, 0.0)?;
    for vis in [1.0, 0.9, 0.8, 0.75, 0.7] {
        let success = mixed_event_probability(r.success_probability, vis, s.n())?;
        let zero = mixed_event_probability(0.0, vis, s.n())?;
        let value = success - zero * r.constraint_count as f64;
        println!("V = {vis:.2}: I = {value:+.6}");
    }
    Ok(())
}

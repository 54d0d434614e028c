//! Builds the [3;2,2] paradox on the GHZ state and on an unbalanced state,
//! then prints every zero-constraint probability from the dense state vector.

use hardy::paradox::{construct_paradox, zero_constraints};
use hardy::quantum::{event_probability, make_ghz, Event, GhzState};
use hardy::Scenario;

fn main() -> hardy::Result<()> {
    let s = Scenario::new(3, 2, 2)?;
    for gamma in [1.0, 2.0] {
        let report = construct_paradox(&s, gamma, 0.0)?;
        let psi = make_ghz(&GhzState::new(s.n(), gamma, 0.0)?)?;
        println!("{s} at γ = {gamma}");
        for c in zero_constraints(&s) {
            let p = event_probability(&psi, &c.event(s.n(), &report.settings))?;
            println!("  {:?} on {:?}: {p:.3e}", c.kind, c.subset);
        }
        let p = event_probability(&psi, &Event::uniform(s.n(), report.settings.a))?;
        println!("  success a_1 a_2 a_3: {p:.6}\n");
    }
    Ok(())
}

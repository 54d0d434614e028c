//! Facet check by exact affine rank of the saturating deterministic vertices.

use hardy::lhv::check_tightness;
use hardy::Scenario;

fn main() -> hardy::Result<()> {
    for (n, a, b) in [(3, 2, 1), (3, 3, 1), (3, 2, 2), (4, 4, 1), (4, 3, 1), (4, 2, 2)] {
        let r = check_tightness(&Scenario::new(n, a, b)?)?;
        println!(
            "{}: {} saturating vertices, affine rank {} / {}, tight = {}",
            r.scenario, r.saturating_vertex_count, r.affine_rank, r.ambient_affine_dim, r.is_tight
        );
    }
    Ok(())
}

//! Success probability of the standard [n;n,1] paradox against [n;2,2],
//! printed as CSV for plotting.

use hardy::paradox::sweep_success;

fn main() -> hardy::Result<()> {
    println!("n,p_standard,p_generalized,ratio");
    for row in sweep_success(3, 12)? {
        println!("{},{:.9},{:.9},{:.4}", row.n, row.p_standard, row.p_generalized, row.p_generalized / row.p_standard);
    }
    Ok(())
}

//! Count how often each point is covered by the family and report U.

use cobound::construction::{counting_chain_check, u_diagnostic, RandomFamily, VFamily};
use cobound::{Params, Subspace};

fn main() -> cobound::Result<()> {
    for n in [4, 8, 12] {
        let prm = Params::new(2, n, 1)?;
        let d = u_diagnostic(&RandomFamily::new(&prm, 0))?;
        println!(
            "n={n}: threshold exponent {} (threshold {}), |U| = {}, pairs = {} (bound {}), U+U covers: {}",
            d.threshold_exponent, d.threshold, d.u.len(), d.pair_count, d.pair_bound, d.covers
        );
    }

    let prm = Params::new(3, 3, 1)?;
    let full = VFamily::constant(&prm, Subspace::full(3, 3))?;
    let report = counting_chain_check(&full)?;
    println!("full F_3^3 family: {:?}, consistent {}", report.implication, report.consistent());
    Ok(())
}

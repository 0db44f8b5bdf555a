//! Random family of 3-dimensional subspaces over F_2^19 (t = 1), one per
//! point. Randomized pair search finds a violating pair, the witness is
//! built, and the resulting certificate is validated.
//!
//! cargo run --release --example theorem_regime -- [seed] [budget]

use std::time::Instant;

use cobound::construction::{
    check_witness, find_violating_pair, refute_family, validate_certificate, Family, PairStrategy,
    RandomFamily,
};
use cobound::{Params, SumsetMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(0);
    let budget: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(100_000);

    let params = Params::new(2, 19, 1)?;
    let family = RandomFamily::new(&params, seed);
    let dims: Vec<usize> = (0..8).map(|x| family.subspace(x).dim()).collect();
    println!("F_2^19, t = 1, seed {seed}; dim V_x for x < 8: {dims:?}");

    let start = Instant::now();
    let strategy = PairStrategy::Randomized { seed, budget };
    let search = find_violating_pair(&family, strategy);
    let Some(v) = &search.found else {
        println!("no violating pair in {} probes", search.probes);
        return Ok(());
    };
    println!(
        "violating pair x = {}, y = {} after {} probes; intersections of dim {} and {}",
        v.x,
        v.y,
        search.probes,
        v.x_cap.dim(),
        v.y_cap.dim()
    );

    let cert = refute_family(&family, SumsetMode::Exact, strategy)?;
    if let cobound::construction::Variant::Witness { witness, .. } = &cert.variant {
        let ok = check_witness(witness, v.x, v.y, &family)?;
        println!("witness post-conditions: {ok:?}");
    }
    println!("certificate valid: {:?}", validate_certificate(&cert));
    println!("elapsed {:.2?}", start.elapsed());
    Ok(())
}

//! Refute a random candidate map and check the certificate.

use cobound::construction::{refute, validate_certificate, LinearMap, PairStrategy};
use cobound::{Params, SSet, SumsetMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let prm = Params::new(3, 2, 1)?;
    let s = SSet::build(&prm)?;
    for seed in 0..3 {
        let map = LinearMap::random(&prm, seed);
        let cert = refute(&map, prm.t, &s, SumsetMode::Exact, PairStrategy::Exhaustive)?;
        println!("seed {seed}: {:?}, validates: {:?}", cert.tag(), validate_certificate(&cert));
    }
    let cert = refute(&LinearMap::zero(&prm), prm.t, &s, SumsetMode::Upto, PairStrategy::Exhaustive)?;
    println!("{}", cert.to_json());
    Ok(())
}

//! Search every linear map at tiny sizes for one whose defects all lie in tS.

use cobound::construction::{refute_exhaustive, ExhaustiveVerdict};
use cobound::{Params, SumsetMode};

fn main() -> cobound::Result<()> {
    for (p, n, t) in [(2, 1, 0), (2, 1, 1), (2, 2, 1), (2, 2, 2), (3, 1, 1), (2, 3, 1)] {
        let prm = Params::new(p, n, t)?;
        for mode in [SumsetMode::Exact, SumsetMode::Upto] {
            match refute_exhaustive(&prm, mode)? {
                ExhaustiveVerdict::ExistsValidMap(map) => {
                    let images: Vec<_> = map.images().iter().map(|g| g.terms().to_vec()).collect();
                    println!("p={p} n={n} t={t} {mode}: map exists, images {images:?}");
                }
                ExhaustiveVerdict::NoValidMap => println!("p={p} n={n} t={t} {mode}: no valid map"),
            }
        }
    }
    Ok(())
}

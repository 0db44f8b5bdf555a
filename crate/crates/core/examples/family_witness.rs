//! Families of low-dimensional subspaces, a violating pair, and the
//! function that witnesses it.

use cobound::construction::{
    build_family, build_witness, check_witness, find_violating_pair, refute_exhaustive,
    ExhaustiveVerdict, FamilyOutcome, PairStrategy, RandomFamily, VFamily,
};
use cobound::{Params, SSet, SumsetMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let prm = Params::new(2, 3, 1)?;

    // a valid map at this size gives a family with no violating pair
    if let ExhaustiveVerdict::ExistsValidMap(map) = refute_exhaustive(&prm, SumsetMode::Exact)? {
        let s = SSet::build(&prm)?;
        if let FamilyOutcome::Family(fam) = build_family(&map, 1, &s, SumsetMode::Exact)? {
            let dims: Vec<usize> = fam.subspaces().iter().map(|v| v.dim()).collect();
            let search = find_violating_pair(&fam, PairStrategy::Exhaustive);
            println!("family from a valid map: dims {dims:?}, pair {:?}", search.found.map(|v| (v.x, v.y)));
        }
    }

    let lines = VFamily::lines(&prm);
    let search = find_violating_pair(&lines, PairStrategy::Exhaustive);
    let v = search.found.expect("lines always have a violating pair");
    let f = build_witness(v.x, v.y, &lines)?;
    println!("lines: pair ({}, {}) after {} probes, f = {:?}", v.x, v.y, search.probes, f.values());

    let prm = Params::new(3, 5, 1)?;
    let fam = RandomFamily::new(&prm, 11);
    let search = find_violating_pair(&fam, PairStrategy::Randomized { seed: 11, budget: 10_000 });
    if let Some(v) = search.found {
        let f = build_witness(v.x, v.y, &fam)?;
        println!(
            "random F_3^5 family: pair ({}, {}), witness check {:?}, support {}",
            v.x,
            v.y,
            check_witness(&f, v.x, v.y, &fam)?,
            f.values().iter().filter(|&&c| c != 0).count()
        );
    }
    Ok(())
}

//! The coboundary set S and membership in its t-fold sumset.
//!
//! cargo run --example coboundary_sumsets -- [p] [n]

use cobound::{FunctionTable, Functional, Params, SSet, SumsetMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let p: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);
    let prm = Params::new(p, n, 2)?;
    let s = SSet::build(&prm)?;
    println!("|S| = {} over F_{p}^{n}", s.len());
    for k in 0..s.len().min(4) {
        let (a, b) = s.witness(k);
        println!("  {:?}  from a = {}, b = {}", s.elements()[k].terms(), a, b);
    }

    let f = FunctionTable::random(&prm, 3);
    let (a, b) = (prm.point_at(1)?, prm.point_at(prm.size() - 1)?);
    let g = Functional::coboundary(&a, &b)?;
    println!("coboundary applied to a random f: {}", g.apply(&f));

    let e0 = Functional::evaluation(&prm.zero());
    for t in 0..=2 {
        for mode in [SumsetMode::Exact, SumsetMode::Upto] {
            let found = s.decompose(&e0, t, mode);
            println!("e_0 in {mode} {t}S: {}", found.map_or("no".into(), |d| format!("{:?}", d.index_pairs())));
        }
    }
    Ok(())
}

//! A small parameter sweep written as CSV to stdout.

use cobound::construction::sweep::write_csv;
use cobound::construction::{sweep, FamilySource, SweepCell};

fn main() -> cobound::Result<()> {
    let mut cells = Vec::new();
    for n in 4..=10 {
        cells.push(SweepCell { p: 2, n, t: 1, source: FamilySource::Random, seed: 0, budget: 0 });
    }
    cells.push(SweepCell { p: 2, n: 3, t: 1, source: FamilySource::FromMap, seed: 0, budget: 0 });
    cells.push(SweepCell { p: 3, n: 6, t: 2, source: FamilySource::Random, seed: 1, budget: 20_000 });
    write_csv(&sweep(&cells), std::io::stdout().lock())
}

//! Parameter sweeps over families, written as CSV.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Params;
use crate::functional::{SSet, SumsetMode};

use super::counting::u_diagnostic;
use super::exhaustive::{refute_exhaustive, ExhaustiveVerdict};
use super::family::{build_family, FamilyOutcome, RandomFamily, VFamily};
use super::pairs::{find_violating_pair, PairStrategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilySource {
    /// The family of the first valid map found by exhaustive search.
    #[serde(rename = "from-map")]
    FromMap,
    #[serde(rename = "random")]
    Random,
}

impl std::fmt::Display for FamilySource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FamilySource::FromMap => "from-map",
            FamilySource::Random => "random",
        })
    }
}

/// One grid cell. A `budget` of 0 selects exhaustive pair search; otherwise
/// the search is randomized with the cell's seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepCell {
    pub p: u32,
    pub n: usize,
    pub t: usize,
    pub source: FamilySource,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub budget: u64,
}

/// Column order is the CSV schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: u32,
    pub n: usize,
    pub t: usize,
    pub source: FamilySource,
    pub seed: u64,
    pub probes: Option<u64>,
    pub pair_found: Option<bool>,
    pub x_index: Option<usize>,
    pub y_index: Option<usize>,
    pub u_size: Option<usize>,
    pub u_covers: Option<bool>,
    pub error: Option<String>,
}

pub const CSV_HEADER: &str = "p,n,t,source,seed,probes,pair_found,x_index,y_index,u_size,u_covers,error";

impl SweepRow {
    fn empty(cell: &SweepCell) -> Self {
        SweepRow {
            p: cell.p,
            n: cell.n,
            t: cell.t,
            source: cell.source,
            seed: cell.seed,
            probes: None,
            pair_found: None,
            x_index: None,
            y_index: None,
            u_size: None,
            u_covers: None,
            error: None,
        }
    }
}

fn family_for(cell: &SweepCell, params: &Params) -> Result<VFamily> {
    match cell.source {
        FamilySource::Random => Ok(RandomFamily::new(params, cell.seed).materialize()),
        FamilySource::FromMap => match refute_exhaustive(params, SumsetMode::Exact)? {
            ExhaustiveVerdict::NoValidMap => Err(Error::Precondition("no valid map exists".into())),
            ExhaustiveVerdict::ExistsValidMap(map) => {
                let s = SSet::build(params)?;
                match build_family(&map, params.t, &s, SumsetMode::Exact)? {
                    FamilyOutcome::Family(f) => Ok(f),
                    FamilyOutcome::Uncovered { x } => Err(Error::Precondition(format!(
                        "valid map left point {x} uncovered"
                    ))),
                }
            }
        },
    }
}

pub fn run_cell(cell: &SweepCell) -> SweepRow {
    let mut row = SweepRow::empty(cell);
    let outcome = (|| -> Result<()> {
        let params = Params::new(cell.p, cell.n, cell.t)?;
        let family = family_for(cell, &params)?;
        let strategy = if cell.budget == 0 {
            PairStrategy::Exhaustive
        } else {
            PairStrategy::Randomized {
                seed: cell.seed,
                budget: cell.budget,
            }
        };
        let search = find_violating_pair(&family, strategy);
        row.probes = Some(search.probes);
        row.pair_found = Some(search.found.is_some());
        if let Some(v) = &search.found {
            row.x_index = Some(v.x);
            row.y_index = Some(v.y);
        }
        let diag = u_diagnostic(&family)?;
        row.u_size = Some(diag.u.len());
        row.u_covers = Some(diag.covers);
        Ok(())
    })();
    if let Err(e) = outcome {
        row.error = Some(e.to_string());
    }
    row
}

/// One row per cell, in grid order. Cell failures are recorded, not raised.
pub fn sweep(cells: &[SweepCell]) -> Vec<SweepRow> {
    cells.par_iter().map(run_cell).collect()
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(','))
        .map_err(|e| Error::Parse(e.to_string()))?;
    for row in rows {
        w.serialize(row).map_err(|e| Error::Parse(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(())
}

pub fn parse_grid(text: &str) -> Result<Vec<SweepCell>> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

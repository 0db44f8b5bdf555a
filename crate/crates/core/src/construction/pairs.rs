use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::field::{Params, Point};
use crate::subspace::Subspace;

use super::family::Family;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairStrategy {
    /// Scan all pairs in lexicographic `(index(x), index(y))` order.
    Exhaustive,
    /// Sample `budget` uniform pairs from a ChaCha stream seeded with `seed`.
    Randomized { seed: u64, budget: u64 },
}

/// A pair `(x, y)` with `x+y ∉ (V_x ∩ V_{x+y}) + (V_y ∩ V_{x+y})`, together
/// with the subspaces that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub x: usize,
    pub y: usize,
    pub x_cap: Subspace,
    pub y_cap: Subspace,
    pub sum: Subspace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSearch {
    pub found: Option<Violation>,
    pub probes: u64,
    /// True when the whole pair space was scanned.
    pub exhaustive: bool,
}

/// If `x = 0` then `x+y = y ∈ V_y ∩ V_{x+y}`, likewise for `y = 0`; if
/// `x+y = 0` it lies in every subspace. None of these can violate.
pub fn is_degenerate(params: &Params, x: usize, y: usize) -> bool {
    if x == 0 || y == 0 {
        return true;
    }
    let s = params
        .point_at(x)
        .unwrap()
        .add_unchecked(&params.point_at(y).unwrap());
    s.is_zero()
}

/// The two intersections and their sum for `(x, y)`, plus the point `x+y`.
pub fn pair_data<F: Family + ?Sized>(family: &F, x: usize, y: usize) -> (Subspace, Subspace, Subspace, Point) {
    let params = family.params();
    let z = params
        .point_at(x)
        .unwrap()
        .add_unchecked(&params.point_at(y).unwrap());
    let vz = family.subspace(z.index());
    let x_cap = family.subspace(x).intersect(&vz).unwrap();
    let y_cap = family.subspace(y).intersect(&vz).unwrap();
    let sum = x_cap.sum(&y_cap).unwrap();
    (x_cap, y_cap, sum, z)
}

pub fn check_pair<F: Family + ?Sized>(family: &F, x: usize, y: usize) -> Option<Violation> {
    if is_degenerate(&family.params(), x, y) {
        return None;
    }
    let (x_cap, y_cap, sum, z) = pair_data(family, x, y);
    (!sum.contains(&z)).then_some(Violation {
        x,
        y,
        x_cap,
        y_cap,
        sum,
    })
}

pub fn find_violating_pair<F: Family + ?Sized>(family: &F, strategy: PairStrategy) -> PairSearch {
    let params = family.params();
    let q = params.size();
    match strategy {
        PairStrategy::Exhaustive => {
            let found = (1..q)
                .into_par_iter()
                .find_map_first(|x| (1..q).find_map(|y| check_pair(family, x, y)));
            // non-degenerate pairs scanned in lexicographic order up to the hit
            let per_row = q.saturating_sub(2) as u64;
            let probes = match &found {
                None => (q.saturating_sub(1)) as u64 * per_row,
                Some(v) => {
                    let earlier = (v.x as u64 - 1) * per_row;
                    let within = (1..=v.y).filter(|&y| !is_degenerate(&params, v.x, y)).count();
                    earlier + within as u64
                }
            };
            PairSearch {
                exhaustive: true,
                found,
                probes,
            }
        }
        PairStrategy::Randomized { seed, budget } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut probes = 0;
            while probes < budget {
                probes += 1;
                let x = rng.gen_range(0..q);
                let y = rng.gen_range(0..q);
                if let Some(v) = check_pair(family, x, y) {
                    return PairSearch {
                        found: Some(v),
                        probes,
                        exhaustive: false,
                    };
                }
            }
            PairSearch {
                found: None,
                probes,
                exhaustive: false,
            }
        }
    }
}

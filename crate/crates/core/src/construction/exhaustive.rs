//! Brute-force search for a linear candidate whose defects all lie in `tS`.
//!
//! Basis images are chosen one at a time from `e_{u_i} − tS`. After image `i`
//! is fixed, every point whose highest nonzero coordinate is `i` has its value
//! determined, and is checked against `e_x − tS` before descending.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{checked_pow, Params, Point};
use crate::functional::{Functional, SSet, SumsetMode};

use super::map::LinearMap;

/// Hard cap on the number of candidate maps after restricting each basis image.
pub const EXHAUSTIVE_CAP: u64 = 1 << 26;

/// Cap on the work spent enumerating `tS` itself.
pub const SUMSET_CAP: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExhaustiveVerdict {
    ExistsValidMap(LinearMap),
    NoValidMap,
}

pub fn refute_exhaustive(params: &Params, mode: SumsetMode) -> Result<ExhaustiveVerdict> {
    let s = SSet::build(params)?;
    let allowed: Vec<Functional> = s.sumset(params.t, mode, SUMSET_CAP)?;
    let candidates = (allowed.len() as u64)
        .checked_pow(params.n as u32)
        .filter(|&c| c <= EXHAUSTIVE_CAP);
    if candidates.is_none() {
        return Err(Error::Resource {
            what: "exhaustive map enumeration (|tS|^n candidates)",
            needed: checked_pow(allowed.len() as u64, params.n as u32).map_or(u128::MAX, |c| c as u128),
            cap: EXHAUSTIVE_CAP as u128,
        });
    }
    let allowed_set: HashSet<Functional> = allowed.iter().cloned().collect();

    // φ̃(0) = 0, so e_0 itself must be in tS
    if !allowed_set.contains(&Functional::evaluation(&params.zero())) {
        return Ok(ExhaustiveVerdict::NoValidMap);
    }

    let points: Vec<Point> = params.points().collect();
    // layer[i]: points whose highest nonzero coordinate is i
    let mut layers: Vec<Vec<usize>> = vec![Vec::new(); params.n];
    for (ix, pt) in points.iter().enumerate() {
        if let Some(top) = pt.coords().iter().rposition(|&c| c != 0) {
            layers[top].push(ix);
        }
    }

    let options: Vec<Vec<Functional>> = (0..params.n)
        .map(|i| {
            let e = Functional::evaluation(&params.unit(i));
            allowed.iter().map(|s| e.sub(s)).collect()
        })
        .collect();

    let search = Search {
        params,
        points: &points,
        layers: &layers,
        options: &options,
        allowed: &allowed_set,
    };
    let found = options[0].par_iter().find_map_first(|first| {
        let mut chosen = vec![first.clone()];
        (search.layer_ok(&chosen, 0) && search.descend(&mut chosen)).then_some(chosen)
    });
    Ok(match found {
        Some(images) => ExhaustiveVerdict::ExistsValidMap(LinearMap::new(params, images)?),
        None => ExhaustiveVerdict::NoValidMap,
    })
}

struct Search<'a> {
    params: &'a Params,
    points: &'a [Point],
    layers: &'a [Vec<usize>],
    options: &'a [Vec<Functional>],
    allowed: &'a HashSet<Functional>,
}

impl Search<'_> {
    fn value(&self, chosen: &[Functional], x: &Point) -> Functional {
        x.coords()
            .iter()
            .zip(chosen)
            .fold(Functional::zero(self.params.p), |acc, (&c, g)| acc.combine(g, c))
    }

    fn layer_ok(&self, chosen: &[Functional], layer: usize) -> bool {
        self.layers[layer].iter().all(|&ix| {
            let x = &self.points[ix];
            let defect = Functional::evaluation(x).sub(&self.value(chosen, x));
            self.allowed.contains(&defect)
        })
    }

    fn descend(&self, chosen: &mut Vec<Functional>) -> bool {
        let i = chosen.len();
        if i == self.params.n {
            return true;
        }
        for g in &self.options[i] {
            chosen.push(g.clone());
            if self.layer_ok(chosen, i) && self.descend(chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p2_n1_t1_exact_has_a_map() {
        let prm = Params::new(2, 1, 1).unwrap();
        match refute_exhaustive(&prm, SumsetMode::Exact).unwrap() {
            ExhaustiveVerdict::ExistsValidMap(map) => {
                assert_eq!(map.images()[0], Functional::from_terms(2, [(0, 1), (1, 1)]));
            }
            other => panic!("expected a valid map, got {other:?}"),
        }
    }

    #[test]
    fn t0_never_has_a_map() {
        for (p, n) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)] {
            let prm = Params::new(p, n, 0).unwrap();
            for mode in [SumsetMode::Exact, SumsetMode::Upto] {
                assert_eq!(refute_exhaustive(&prm, mode).unwrap(), ExhaustiveVerdict::NoValidMap);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let prm = Params::new(2, 4, 2).unwrap();
        assert!(matches!(
            refute_exhaustive(&prm, SumsetMode::Exact),
            Err(Error::Resource { .. })
        ));
    }
}

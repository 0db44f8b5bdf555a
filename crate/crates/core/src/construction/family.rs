use std::borrow::Cow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::field::{FunctionTable, Params, Point};
use crate::functional::{is_linear_on, DecompositionPairs, SSet, SumsetMode};
use crate::subspace::Subspace;

use super::map::{decompose, LinearMap};

/// An assignment `x ↦ V_x` over all of `F_p^n`, optionally remembering the
/// pairs each `V_x` was spanned from.
pub trait Family: Sync {
    fn params(&self) -> Params;

    fn subspace(&self, x: usize) -> Cow<'_, Subspace>;

    fn provenance(&self, x: usize) -> Option<Cow<'_, DecompositionPairs>>;
}

/// `span(x, a_1, b_1, …, a_t, b_t)`.
pub fn span_with_pairs(x: &Point, pairs: &DecompositionPairs) -> Subspace {
    let gens: Vec<Point> = std::iter::once(x).chain(pairs.points()).cloned().collect();
    Subspace::span(x.p(), x.dim(), &gens).expect("generators share the ambient space")
}

/// A fully materialized family.
#[derive(Debug, Clone)]
pub struct VFamily {
    params: Params,
    subspaces: Vec<Subspace>,
    provenance: Option<Vec<DecompositionPairs>>,
}

impl VFamily {
    pub fn from_subspaces(params: &Params, subspaces: Vec<Subspace>) -> Result<Self> {
        if subspaces.len() != params.size() {
            return Err(domain(format!(
                "family needs {} subspaces, got {}",
                params.size(),
                subspaces.len()
            )));
        }
        if subspaces.iter().any(|s| s.p() != params.p || s.n() != params.n) {
            return Err(domain("family member from a different ambient space"));
        }
        Ok(VFamily {
            params: *params,
            subspaces,
            provenance: None,
        })
    }

    /// `V_x = span(x, pairs[x])`.
    pub fn from_generators(params: &Params, pairs: Vec<DecompositionPairs>) -> Result<Self> {
        if pairs.len() != params.size() {
            return Err(domain("one decomposition per point is required"));
        }
        let subspaces = pairs
            .par_iter()
            .enumerate()
            .map(|(x, d)| span_with_pairs(&params.point_at(x).unwrap(), d))
            .collect();
        Ok(VFamily {
            params: *params,
            subspaces,
            provenance: Some(pairs),
        })
    }

    /// Every `V_x` equal to `space`.
    pub fn constant(params: &Params, space: Subspace) -> Result<Self> {
        Self::from_subspaces(params, vec![space; params.size()])
    }

    /// `V_x = span(x)`.
    pub fn lines(params: &Params) -> Self {
        let subspaces = params
            .points()
            .map(|x| Subspace::span(params.p, params.n, &[x]).unwrap())
            .collect();
        VFamily {
            params: *params,
            subspaces,
            provenance: None,
        }
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }
}

impl Family for VFamily {
    fn params(&self) -> Params {
        self.params
    }

    fn subspace(&self, x: usize) -> Cow<'_, Subspace> {
        Cow::Borrowed(&self.subspaces[x])
    }

    fn provenance(&self, x: usize) -> Option<Cow<'_, DecompositionPairs>> {
        self.provenance.as_ref().map(|p| Cow::Borrowed(&p[x]))
    }
}

/// `V_x = span(x, a_1, b_1, …, a_t, b_t)` with the `a_i, b_i` drawn uniformly,
/// generated on demand. Point `x` uses ChaCha stream `x` of `seed`, so the
/// family is reproducible and independent of evaluation order.
#[derive(Debug, Clone, Copy)]
pub struct RandomFamily {
    params: Params,
    seed: u64,
}

impl RandomFamily {
    pub fn new(params: &Params, seed: u64) -> Self {
        RandomFamily {
            params: *params,
            seed,
        }
    }

    pub fn generators(&self, x: usize) -> DecompositionPairs {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(x as u64);
        let q = self.params.size();
        let mut draw = || self.params.point_at(rng.gen_range(0..q)).unwrap();
        DecompositionPairs::new((0..self.params.t).map(|_| (draw(), draw())).collect())
    }

    pub fn materialize(&self) -> VFamily {
        let pairs = (0..self.params.size())
            .into_par_iter()
            .map(|x| self.generators(x))
            .collect();
        VFamily::from_generators(&self.params, pairs).unwrap()
    }
}

impl Family for RandomFamily {
    fn params(&self) -> Params {
        self.params
    }

    fn subspace(&self, x: usize) -> Cow<'_, Subspace> {
        let pt = self.params.point_at(x).unwrap();
        Cow::Owned(span_with_pairs(&pt, &self.generators(x)))
    }

    fn provenance(&self, x: usize) -> Option<Cow<'_, DecompositionPairs>> {
        Some(Cow::Owned(self.generators(x)))
    }
}

#[derive(Debug, Clone)]
pub enum FamilyOutcome {
    Family(VFamily),
    /// Least point whose defect has no decomposition.
    Uncovered { x: usize },
}

/// Decompose every defect `φ(x) − φ̃(x)` and span the resulting `V_x`.
pub fn build_family(map: &LinearMap, t: usize, s: &SSet, mode: SumsetMode) -> Result<FamilyOutcome> {
    let params = map.params().with_t(t);
    let decomposed: Vec<Option<DecompositionPairs>> = (0..params.size())
        .into_par_iter()
        .map(|x| decompose(&params.point_at(x).unwrap(), map, t, s, mode))
        .collect();
    if let Some(x) = decomposed.iter().position(Option::is_none) {
        return Ok(FamilyOutcome::Uncovered { x });
    }
    let pairs = decomposed.into_iter().map(Option::unwrap).collect();
    Ok(FamilyOutcome::Family(VFamily::from_generators(&params, pairs)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyDefect {
    TooLarge { x: usize, dim: usize },
    MissingPoint { x: usize },
}

/// `dim V_x ≤ 2t+1` and `x ∈ V_x` for every `x`; reports the least offender.
pub fn check_family<F: Family + ?Sized>(family: &F) -> std::result::Result<(), FamilyDefect> {
    let params = family.params();
    let bound = 2 * params.t + 1;
    (0..params.size())
        .into_par_iter()
        .find_map_first(|x| {
            let v = family.subspace(x);
            if v.dim() > bound {
                return Some(FamilyDefect::TooLarge { x, dim: v.dim() });
            }
            if !v.contains(&params.point_at(x).unwrap()) {
                return Some(FamilyDefect::MissingPoint { x });
            }
            None
        })
        .map_or(Ok(()), Err)
}

/// For one `(x, f)`: a nonzero defect value at `f` forces `f` to be nonlinear
/// on `V_x`. Returns whether that implication holds.
pub fn property3_check<F: Family + ?Sized>(
    family: &F,
    map: &LinearMap,
    x: usize,
    f: &FunctionTable,
) -> Result<bool> {
    if family.provenance(x).is_none() {
        return Err(Error::Precondition(format!("V_{x} has no recorded decomposition")));
    }
    let pt = family.params().point_at(x)?;
    if map.defect(&pt).apply(f) == 0 {
        return Ok(true);
    }
    Ok(!is_linear_on(f, &family.subspace(x))?)
}

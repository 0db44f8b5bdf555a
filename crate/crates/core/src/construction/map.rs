use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Result};
use crate::field::{Params, Point};
use crate::functional::{DecompositionPairs, Functional, SSet, SumsetMode};

/// The map `v ↦ e_v`.
pub fn phi(x: &Point) -> Functional {
    Functional::evaluation(x)
}

/// A linear candidate `F_p^n → W`, fixed by the images of the standard basis.
/// Additivity holds by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    params: Params,
    images: Vec<Functional>,
}

impl LinearMap {
    pub fn new(params: &Params, images: Vec<Functional>) -> Result<Self> {
        if images.len() != params.n {
            return Err(domain(format!(
                "linear map needs {} basis images, got {}",
                params.n,
                images.len()
            )));
        }
        for g in &images {
            if g.p() != params.p {
                return Err(domain("basis image over the wrong field"));
            }
            if g.terms().iter().any(|&(i, _)| i as usize >= params.size()) {
                return Err(domain("basis image supported outside F_p^n"));
            }
        }
        Ok(LinearMap {
            params: *params,
            images,
        })
    }

    pub fn zero(params: &Params) -> Self {
        LinearMap {
            params: *params,
            images: vec![Functional::zero(params.p); params.n],
        }
    }

    /// Basis images with uniformly random dense coefficients.
    pub fn random(params: &Params, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = params.size() as u32;
        let images = (0..params.n)
            .map(|_| {
                Functional::from_terms(params.p, (0..q).map(|i| (i, rng.gen_range(0..params.p))))
            })
            .collect();
        LinearMap {
            params: *params,
            images,
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn images(&self) -> &[Functional] {
        &self.images
    }

    /// `Σ x_i · image_i`.
    pub fn eval(&self, x: &Point) -> Functional {
        x.coords()
            .iter()
            .zip(&self.images)
            .fold(Functional::zero(self.params.p), |acc, (&c, g)| acc.combine(g, c))
    }

    /// `φ(x) − φ̃(x)`.
    pub fn defect(&self, x: &Point) -> Functional {
        phi(x).sub(&self.eval(x))
    }
}

/// Decompose `φ(x) − φ̃(x)` as a sum of coboundaries.
pub fn decompose(
    x: &Point,
    map: &LinearMap,
    t: usize,
    s: &SSet,
    mode: SumsetMode,
) -> Option<DecompositionPairs> {
    s.decompose(&map.defect(x), t, mode)
}

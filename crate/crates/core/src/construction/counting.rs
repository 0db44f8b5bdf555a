//! Diagnostics for the counting argument: the popular set `U`, the incidence
//! count `#{(v, x) : v ∈ V_x}`, and whether `U + U` covers the space.

use rayon::prelude::*;

use crate::error::Result;
use crate::field::{checked_pow, Params};

use super::family::Family;
use super::pairs::{find_violating_pair, PairSearch, PairStrategy};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UDiagnostic {
    /// Exponent `n − 4t − 2` of the popularity threshold `p^{n−4t−2}`.
    pub threshold_exponent: i64,
    /// Least integer count meeting the threshold: `p^{n−4t−2}`, or 1 when
    /// the exponent is negative.
    pub threshold: u64,
    /// Point indices contained in at least `threshold` subspaces, ascending.
    pub u: Vec<usize>,
    pub pair_count: u64,
    pub covers: bool,
    /// `p^{n+2t+1}`.
    pub pair_bound: u128,
    /// `p^{6t+3}`.
    pub u_bound: u128,
}

impl UDiagnostic {
    pub fn pair_count_ok(&self) -> bool {
        self.pair_count as u128 <= self.pair_bound
    }

    pub fn threshold_at_least_one(&self) -> bool {
        self.threshold_exponent >= 0
    }

    /// `|U| ≤ p^{6t+3}`; vacuous when the threshold is below 1.
    pub fn u_bound_ok(&self) -> bool {
        !self.threshold_at_least_one() || self.u.len() as u128 <= self.u_bound
    }

    /// `|U| · threshold ≤ pair_count`: each popular point uses up `threshold` incidences.
    pub fn u_ratio_ok(&self) -> bool {
        self.u.len() as u128 * self.threshold as u128 <= self.pair_count as u128
    }

    /// `|U| ≥ p^{n/2}`, compared as `|U|² ≥ p^n`.
    pub fn half_dimension_met(&self, params: &Params) -> bool {
        (self.u.len() as u128).pow(2) >= params.size() as u128
    }
}

fn pow_u128(base: u64, exp: u32) -> u128 {
    checked_pow(base, exp).map_or(u128::MAX, |v| v as u128)
}

pub fn u_diagnostic<F: Family + ?Sized>(family: &F) -> Result<UDiagnostic> {
    let params = family.params();
    let (p, n, t) = (params.p as u64, params.n as i64, params.t as i64);
    let q = params.size();

    let threshold_exponent = n - 4 * t - 2;
    let threshold = if threshold_exponent < 0 {
        1
    } else {
        checked_pow(p, threshold_exponent as u32).unwrap_or(u64::MAX)
    };

    let counts = (0..q)
        .into_par_iter()
        .try_fold(
            || vec![0u32; q],
            |mut acc, x| -> Result<Vec<u32>> {
                for v in family.subspace(x).elements()? {
                    acc[v.index()] += 1;
                }
                Ok(acc)
            },
        )
        .try_reduce(
            || vec![0u32; q],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                Ok(a)
            },
        )?;

    let pair_count = counts.iter().map(|&c| c as u64).sum();
    let u: Vec<usize> = (0..q).filter(|&v| counts[v] as u64 >= threshold).collect();
    let covers = sumset_covers(&params, &u);
    Ok(UDiagnostic {
        threshold_exponent,
        threshold,
        u,
        pair_count,
        covers,
        pair_bound: pow_u128(p, (n + 2 * t + 1) as u32),
        u_bound: pow_u128(p, (6 * t + 3) as u32),
    })
}

/// Whether `U + U` is all of `F_p^n`.
pub fn sumset_covers(params: &Params, u: &[usize]) -> bool {
    let q = params.size();
    if (u.len() as u128).pow(2) < q as u128 {
        return false;
    }
    let pts: Vec<_> = u.iter().map(|&i| params.point_at(i).unwrap()).collect();
    let mut hit = vec![false; q];
    let mut remaining = q;
    for a in &pts {
        for b in &pts {
            let s = a.add_unchecked(b).index();
            if !hit[s] {
                hit[s] = true;
                remaining -= 1;
                if remaining == 0 {
                    return true;
                }
            }
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Implication {
    /// No violating pair and `U + U` covers the space.
    Holds,
    /// A violating pair exists, so there is nothing to check.
    Vacuous,
    /// No violating pair, yet `U + U` misses a point.
    Falsified,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingReport {
    pub diagnostic: UDiagnostic,
    pub search: PairSearch,
    pub implication: Implication,
}

impl CountingReport {
    /// Every checkable inequality of the chain, plus the implication.
    pub fn consistent(&self) -> bool {
        self.implication != Implication::Falsified
            && self.diagnostic.pair_count_ok()
            && self.diagnostic.u_bound_ok()
            && self.diagnostic.u_ratio_ok()
    }
}

/// With no violating pair every `z` splits as `v_z + w_z` with both parts
/// popular, so `U + U` must be everything. Checks that on concrete data.
pub fn counting_chain_check<F: Family + ?Sized>(family: &F) -> Result<CountingReport> {
    let diagnostic = u_diagnostic(family)?;
    let search = find_violating_pair(family, PairStrategy::Exhaustive);
    let implication = match (&search.found, diagnostic.covers) {
        (Some(_), _) => Implication::Vacuous,
        (None, true) => Implication::Holds,
        (None, false) => Implication::Falsified,
    };
    Ok(CountingReport {
        diagnostic,
        search,
        implication,
    })
}

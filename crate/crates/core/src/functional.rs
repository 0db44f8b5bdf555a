//! Formal combinations of evaluation functionals `Σ c_v·e_v`, where
//! `e_v(f) = f(v)`.
//!
//! Everything the construction touches (values of `φ`, of a linear candidate
//! `φ̃`, of the coboundary set `S` and its sumsets) lives in the span of the
//! `e_v`, so a functional is just a sparse coefficient map over point indices.
//! Evaluations at distinct points are linearly independent, which makes
//! equality of functionals equality of their sorted supports.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::field::{
    add_mod, checked_pow, mul_mod, sub_mod, FunctionTable, Params, Point, Residue, TABLE_CAP,
};
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Functional {
    p: u32,
    /// Sorted by point index, no zero coefficients.
    terms: Vec<(u32, Residue)>,
}

impl Functional {
    pub fn zero(p: u32) -> Self {
        Functional { p, terms: Vec::new() }
    }

    /// The evaluation functional `e_v`.
    pub fn evaluation(v: &Point) -> Self {
        Functional {
            p: v.p(),
            terms: vec![(v.index() as u32, 1)],
        }
    }

    /// `e_{a+b} − e_a − e_b`, coefficients merged where points coincide.
    pub fn coboundary(a: &Point, b: &Point) -> Result<Self> {
        let s = a.add(b)?;
        let p = a.p();
        Ok(Self::from_terms(
            p,
            [
                (s.index() as u32, 1),
                (a.index() as u32, p - 1),
                (b.index() as u32, p - 1),
            ],
        ))
    }

    /// Collect `(index, coefficient)` terms, merging duplicates and dropping zeros.
    pub fn from_terms(p: u32, terms: impl IntoIterator<Item = (u32, Residue)>) -> Self {
        let mut v: Vec<(u32, Residue)> = terms.into_iter().map(|(i, c)| (i, c % p)).collect();
        v.sort_unstable_by_key(|&(i, _)| i);
        let mut merged: Vec<(u32, Residue)> = Vec::with_capacity(v.len());
        for (i, c) in v {
            match merged.last_mut() {
                Some((j, d)) if *j == i => *d = add_mod(*d, c, p),
                _ => merged.push((i, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0);
        Functional { p, terms: merged }
    }

    /// Parse serialized `(index, coefficient)` pairs, which must already be
    /// canonical: strictly increasing indices, coefficients in `[1, p)`.
    pub fn from_canonical_pairs(params: &Params, pairs: &[(u32, Residue)]) -> Result<Self> {
        for w in pairs.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(domain("functional terms must have strictly increasing indices"));
            }
        }
        for &(i, c) in pairs {
            if i as usize >= params.size() {
                return Err(domain(format!("functional index {i} out of range")));
            }
            if c == 0 || c >= params.p {
                return Err(domain(format!("functional coefficient {c} not in [1, p)")));
            }
        }
        Ok(Functional {
            p: params.p,
            terms: pairs.to_vec(),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> &[(u32, Residue)] {
        &self.terms
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, index: usize) -> Residue {
        self.terms
            .binary_search_by_key(&(index as u32), |&(i, _)| i)
            .map_or(0, |k| self.terms[k].1)
    }

    /// `Σ c_v·f(v) mod p`.
    pub fn apply(&self, f: &FunctionTable) -> Residue {
        debug_assert_eq!(self.p, f.p());
        let p = self.p as u64;
        (self
            .terms
            .iter()
            .fold(0u64, |acc, &(i, c)| (acc + c as u64 * f.at(i as usize) as u64) % p))
            as Residue
    }

    /// `self + λ·other`.
    pub fn combine(&self, other: &Functional, lambda: Residue) -> Functional {
        let p = self.p;
        let lambda = lambda % p;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let left = self.terms.get(i);
            let right = other.terms.get(j);
            let (idx, c) = match (left, right) {
                (Some(&(a, ca)), Some(&(b, cb))) if a == b => {
                    i += 1;
                    j += 1;
                    (a, add_mod(ca, mul_mod(lambda, cb, p), p))
                }
                (Some(&(a, ca)), Some(&(b, _))) if a < b => {
                    i += 1;
                    (a, ca)
                }
                (Some(&(a, ca)), None) => {
                    i += 1;
                    (a, ca)
                }
                (_, Some(&(b, cb))) => {
                    j += 1;
                    (b, mul_mod(lambda, cb, p))
                }
                (None, None) => unreachable!(),
            };
            if c != 0 {
                out.push((idx, c));
            }
        }
        Functional { p, terms: out }
    }

    pub fn add(&self, other: &Functional) -> Functional {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Functional) -> Functional {
        self.combine(other, self.p - 1)
    }

    pub fn scale(&self, lambda: Residue) -> Functional {
        Functional::zero(self.p).combine(self, lambda)
    }
}

/// Serialized form: sorted `[index, coefficient]` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FunctionalTerms(pub Vec<(u32, Residue)>);

impl From<&Functional> for FunctionalTerms {
    fn from(g: &Functional) -> Self {
        FunctionalTerms(g.terms.clone())
    }
}

/// Exactly `t` ordered pairs `(a_i, b_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionPairs {
    pairs: Vec<(Point, Point)>,
}

impl DecompositionPairs {
    pub fn new(pairs: Vec<(Point, Point)>) -> Self {
        DecompositionPairs { pairs }
    }

    pub fn pairs(&self) -> &[(Point, Point)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `Σ coboundary(a_i, b_i)` computed directly.
    pub fn sum(&self, p: u32) -> Result<Functional> {
        self.pairs.iter().try_fold(Functional::zero(p), |acc, (a, b)| {
            Ok(acc.add(&Functional::coboundary(a, b)?))
        })
    }

    /// All `a_i` and `b_i`, in order.
    pub fn points(&self) -> impl Iterator<Item = &Point> {
        self.pairs.iter().flat_map(|(a, b)| [a, b])
    }

    pub fn index_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().map(|(a, b)| (a.index(), b.index())).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SumsetMode {
    /// Exactly `t` summands.
    Exact,
    /// Between 0 and `t` summands; zero summands give the zero functional.
    Upto,
}

impl std::fmt::Display for SumsetMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SumsetMode::Exact => "exact",
            SumsetMode::Upto => "upto",
        })
    }
}

impl std::str::FromStr for SumsetMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(SumsetMode::Exact),
            "upto" => Ok(SumsetMode::Upto),
            other => Err(Error::Parse(format!("unknown sumset mode {other:?}"))),
        }
    }
}

/// Cap on `p^{2n}` pairs enumerated when building `S`.
pub const S_PAIR_CAP: u64 = TABLE_CAP;

/// The set of all coboundaries `e_{a+b} − e_a − e_b`, deduplicated.
///
/// Elements are ordered by their least generating pair index
/// `index(a)·p^n + index(b)`, and each keeps that pair as its witness.
#[derive(Debug, Clone)]
pub struct SSet {
    params: Params,
    elements: Vec<Functional>,
    witnesses: Vec<(usize, usize)>,
    lookup: HashMap<Functional, usize>,
}

impl SSet {
    pub fn build(params: &Params) -> Result<Self> {
        let q = params.size() as u64;
        if q * q > S_PAIR_CAP {
            return Err(Error::Resource {
                what: "coboundary set enumeration (p^{2n} pairs)",
                needed: (q * q) as u128,
                cap: S_PAIR_CAP as u128,
            });
        }
        let points: Vec<Point> = params.points().collect();
        let mut elements = Vec::new();
        let mut witnesses = Vec::new();
        let mut lookup = HashMap::new();
        for (ai, a) in points.iter().enumerate() {
            for (bi, b) in points.iter().enumerate() {
                let g = Functional::coboundary(a, b)?;
                if !lookup.contains_key(&g) {
                    lookup.insert(g.clone(), elements.len());
                    elements.push(g);
                    witnesses.push((ai, bi));
                }
            }
        }
        Ok(SSet {
            params: *params,
            elements,
            witnesses,
            lookup,
        })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Functional] {
        &self.elements
    }

    pub fn witness(&self, k: usize) -> (usize, usize) {
        self.witnesses[k]
    }

    pub fn position(&self, g: &Functional) -> Option<usize> {
        self.lookup.get(g).copied()
    }

    pub fn contains(&self, g: &Functional) -> bool {
        self.lookup.contains_key(g)
    }

    fn witness_pair(&self, k: usize) -> (Point, Point) {
        let (a, b) = self.witnesses[k];
        (
            self.params.point_at(a).unwrap(),
            self.params.point_at(b).unwrap(),
        )
    }

    fn decomposition(&self, picks: &[usize]) -> DecompositionPairs {
        DecompositionPairs::new(picks.iter().map(|&k| self.witness_pair(k)).collect())
    }

    /// Decompose `g` as a sum of coboundaries.
    ///
    /// Exact mode uses exactly `t` summands; upto mode tries `s = 0, 1, …, t`
    /// and returns the first success. Among decompositions with a given number
    /// of summands the returned one is the lexicographically least
    /// nondecreasing sequence of element positions. Every returned result is
    /// re-summed and checked against `g` before it is handed out.
    pub fn decompose(&self, g: &Functional, t: usize, mode: SumsetMode) -> Option<DecompositionPairs> {
        let found = match mode {
            SumsetMode::Exact => self.search_exact(g, t),
            SumsetMode::Upto => (0..=t).find_map(|s| self.search_exact(g, s)),
        }?;
        let pairs = self.decomposition(&found);
        let resum = pairs.sum(self.params.p).expect("witness pairs share the ambient space");
        assert_eq!(&resum, g, "sumset search returned a decomposition that does not re-sum");
        Some(pairs)
    }

    fn search_exact(&self, g: &Functional, t: usize) -> Option<Vec<usize>> {
        match t {
            0 => g.is_zero().then(Vec::new),
            1 => self.position(g).map(|k| vec![k]),
            _ => (0..self.elements.len()).into_par_iter().find_map_first(|first| {
                let residual = g.sub(&self.elements[first]);
                let mut picks = vec![first];
                self.dfs(&residual, t - 1, first, &mut picks).then_some(picks)
            }),
        }
    }

    /// Choose `remaining` more positions `≥ floor` summing to `residual`.
    /// The last choice is a lookup, so the search is meet-in-the-middle at the
    /// final level.
    fn dfs(&self, residual: &Functional, remaining: usize, floor: usize, picks: &mut Vec<usize>) -> bool {
        // each coboundary has support at most 3
        if residual.support_len() > 3 * remaining {
            return false;
        }
        if remaining == 1 {
            return match self.position(residual) {
                Some(k) if k >= floor => {
                    picks.push(k);
                    true
                }
                _ => false,
            };
        }
        for k in floor..self.elements.len() {
            let next = residual.sub(&self.elements[k]);
            picks.push(k);
            if self.dfs(&next, remaining - 1, k, picks) {
                return true;
            }
            picks.pop();
        }
        false
    }

    /// Every element of `tS` (or `∪_{s≤t} sS` in upto mode), sorted.
    pub fn sumset(&self, t: usize, mode: SumsetMode, cap: u64) -> Result<Vec<Functional>> {
        let mut level: std::collections::BTreeSet<Functional> = [Functional::zero(self.params.p)].into();
        let mut all = match mode {
            SumsetMode::Upto => level.clone(),
            SumsetMode::Exact => Default::default(),
        };
        for _ in 0..t {
            let work = level.len() as u64 * self.elements.len() as u64;
            if work > cap {
                return Err(Error::Resource {
                    what: "sumset enumeration",
                    needed: work as u128,
                    cap: cap as u128,
                });
            }
            level = level
                .iter()
                .flat_map(|g| self.elements.iter().map(move |s| g.add(s)))
                .collect();
            if mode == SumsetMode::Upto {
                all.extend(level.iter().cloned());
            }
        }
        Ok(match mode {
            SumsetMode::Exact => level.into_iter().collect(),
            SumsetMode::Upto => all.into_iter().collect(),
        })
    }
}

/// Whether `f` is additive on `space`.
///
/// Over `F_p` additivity on a subspace is equivalent to
/// `f(Σ c_i·b_i) = Σ c_i·f(b_i)` for the basis `b_i`, which is what is checked
/// here; it costs `p^dim` lookups instead of `p^{2·dim}`.
pub fn is_linear_on(f: &FunctionTable, space: &Subspace) -> Result<bool> {
    let size = space.enumeration_size()?;
    let p = space.p();
    let basis_vals: Vec<Residue> = space.basis_points().iter().map(|b| f.eval(b)).collect();
    let d = space.dim();
    let mut coeffs = vec![0 as Residue; d];
    for _ in 0..size {
        let v = space.combine(&coeffs);
        let expected = coeffs
            .iter()
            .zip(&basis_vals)
            .fold(0, |acc, (&c, &y)| add_mod(acc, mul_mod(c, y, p), p));
        if f.eval(&v) != expected {
            return Ok(false);
        }
        for slot in coeffs.iter_mut().rev() {
            *slot += 1;
            if *slot < p {
                break;
            }
            *slot = 0;
        }
    }
    Ok(true)
}

/// Upper bound on `|S|^t` style work, for callers sizing searches.
pub fn sumset_work(params: &Params, t: usize) -> Option<u64> {
    let q = params.size() as u64;
    checked_pow(q.checked_mul(q)?, t as u32)
}

/// `f(a+b) − f(a) − f(b)`.
pub fn defect(f: &FunctionTable, a: &Point, b: &Point) -> Residue {
    let p = f.p();
    let s = a.add_unchecked(b);
    sub_mod(sub_mod(f.eval(&s), f.eval(a), p), f.eval(b), p)
}

//! Prime-field scalars, points of `F_p^n` and dense function tables.
//!
//! Points are indexed little-endian base `p`: `index = Σ coords[i]·p^i`.
//! Every serialized artifact in this crate relies on that ordering.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Residues are stored in canonical range `[0, p)`.
pub type Residue = u32;

/// Largest supported `p^n` for dense tables.
pub const TABLE_CAP: u64 = 1 << 24;

/// Largest supported modulus. Products of two residues must fit in a `u64`
/// with room to accumulate.
pub const MAX_PRIME: u32 = 1 << 16;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub fn add_mod(a: Residue, b: Residue, p: u32) -> Residue {
    ((a as u64 + b as u64) % p as u64) as Residue
}

#[inline]
pub fn sub_mod(a: Residue, b: Residue, p: u32) -> Residue {
    ((a as u64 + p as u64 - (b as u64 % p as u64)) % p as u64) as Residue
}

#[inline]
pub fn mul_mod(a: Residue, b: Residue, p: u32) -> Residue {
    ((a as u64 * b as u64) % p as u64) as Residue
}

#[inline]
pub fn neg_mod(a: Residue, p: u32) -> Residue {
    sub_mod(0, a, p)
}

/// Multiplicative inverse by Fermat. `a` must be nonzero mod `p`.
pub fn inv_mod(a: Residue, p: u32) -> Residue {
    debug_assert!(a % p != 0);
    let mut base = a as u64 % p as u64;
    let mut exp = p as u64 - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as Residue
}

/// Ambient space `F_p^n` together with the sumset multiplicity `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub p: u32,
    pub n: usize,
    pub t: usize,
}

impl Params {
    pub fn new(p: u32, n: usize, t: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(domain(format!("p = {p} is not prime")));
        }
        if p > MAX_PRIME {
            return Err(domain(format!("p = {p} exceeds supported maximum {MAX_PRIME}")));
        }
        if n == 0 {
            return Err(domain("n must be at least 1"));
        }
        let size = checked_pow(p as u64, n as u32);
        match size {
            Some(s) if s <= TABLE_CAP => Ok(Params { p, n, t }),
            _ => Err(Error::Resource {
                what: "p^n dense table",
                needed: checked_pow(p as u64, n as u32).map_or(u128::MAX, |v| v as u128),
                cap: TABLE_CAP as u128,
            }),
        }
    }

    /// Number of points, `p^n`.
    pub fn size(&self) -> usize {
        (self.p as usize).pow(self.n as u32)
    }

    pub fn with_t(self, t: usize) -> Self {
        Params { t, ..self }
    }

    pub fn point(&self, coords: &[Residue]) -> Result<Point> {
        Point::from_coords(self.p, coords)
            .and_then(|pt| self.check(&pt).map(|_| pt))
    }

    pub fn point_at(&self, index: usize) -> Result<Point> {
        Point::from_index(self.p, self.n, index)
    }

    pub fn zero(&self) -> Point {
        Point::zero(self.p, self.n)
    }

    /// The `i`-th standard basis vector.
    pub fn unit(&self, i: usize) -> Point {
        let mut coords = vec![0; self.n];
        coords[i] = 1;
        Point { p: self.p, coords }
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.size()).map(move |i| Point::from_index(self.p, self.n, i).unwrap())
    }

    pub fn check(&self, pt: &Point) -> Result<()> {
        if pt.p != self.p || pt.coords.len() != self.n {
            return Err(domain(format!(
                "point lives in F_{}^{}, expected F_{}^{}",
                pt.p,
                pt.coords.len(),
                self.p,
                self.n
            )));
        }
        Ok(())
    }
}

pub(crate) fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// An element of `F_p^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    p: u32,
    coords: Vec<Residue>,
}

impl Point {
    pub fn from_coords(p: u32, coords: &[Residue]) -> Result<Self> {
        if let Some(bad) = coords.iter().find(|&&c| c >= p) {
            return Err(domain(format!("residue {bad} out of range for p = {p}")));
        }
        if coords.is_empty() {
            return Err(domain("a point needs at least one coordinate"));
        }
        Ok(Point {
            p,
            coords: coords.to_vec(),
        })
    }

    pub fn from_index(p: u32, n: usize, index: usize) -> Result<Self> {
        let size = checked_pow(p as u64, n as u32).unwrap_or(u64::MAX);
        if index as u64 >= size {
            return Err(domain(format!("index {index} out of range for {p}^{n}")));
        }
        let mut rest = index;
        let coords = (0..n)
            .map(|_| {
                let c = (rest % p as usize) as Residue;
                rest /= p as usize;
                c
            })
            .collect();
        Ok(Point { p, coords })
    }

    pub(crate) fn from_raw(p: u32, coords: Vec<Residue>) -> Self {
        Point { p, coords }
    }

    pub fn zero(p: u32, n: usize) -> Self {
        Point {
            p,
            coords: vec![0; n],
        }
    }

    pub fn index(&self) -> usize {
        self.coords
            .iter()
            .rev()
            .fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    pub fn coords(&self) -> &[Residue] {
        &self.coords
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Point) -> Result<Point> {
        self.same_space(other)?;
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Point) -> Point {
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| add_mod(a, b, self.p))
            .collect();
        Point { p: self.p, coords }
    }

    pub fn sub(&self, other: &Point) -> Result<Point> {
        self.same_space(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| sub_mod(a, b, self.p))
            .collect();
        Ok(Point { p: self.p, coords })
    }

    pub fn scale(&self, lambda: Residue) -> Result<Point> {
        if lambda >= self.p {
            return Err(domain(format!("scalar {lambda} out of range for p = {}", self.p)));
        }
        let coords = self.coords.iter().map(|&c| mul_mod(lambda, c, self.p)).collect();
        Ok(Point { p: self.p, coords })
    }

    fn same_space(&self, other: &Point) -> Result<()> {
        if self.p != other.p || self.coords.len() != other.coords.len() {
            return Err(domain("points from different ambient spaces"));
        }
        Ok(())
    }
}

/// Dense table of a map `f: F_p^n → F_p`, indexed by point index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTable {
    p: u32,
    n: usize,
    values: Vec<Residue>,
}

impl FunctionTable {
    pub fn zero(params: &Params) -> Self {
        FunctionTable {
            p: params.p,
            n: params.n,
            values: vec![0; params.size()],
        }
    }

    pub fn from_values(params: &Params, values: Vec<Residue>) -> Result<Self> {
        if values.len() != params.size() {
            return Err(domain(format!(
                "table has {} entries, expected {}",
                values.len(),
                params.size()
            )));
        }
        if let Some(bad) = values.iter().find(|&&v| v >= params.p) {
            return Err(domain(format!("table entry {bad} out of range for p = {}", params.p)));
        }
        Ok(FunctionTable {
            p: params.p,
            n: params.n,
            values,
        })
    }

    /// Uniform random table, reproducible from `seed`.
    pub fn random(params: &Params, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..params.size()).map(|_| rng.gen_range(0..params.p)).collect();
        FunctionTable {
            p: params.p,
            n: params.n,
            values,
        }
    }

    /// Indicator of a single point.
    pub fn indicator(params: &Params, index: usize) -> Self {
        let mut table = Self::zero(params);
        table.values[index] = 1;
        table
    }

    pub fn eval(&self, v: &Point) -> Residue {
        self.values[v.index()]
    }

    #[inline]
    pub fn at(&self, index: usize) -> Residue {
        self.values[index]
    }

    pub(crate) fn set(&mut self, index: usize, value: Residue) {
        self.values[index] = value % self.p;
    }

    pub fn values(&self) -> &[Residue] {
        &self.values
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

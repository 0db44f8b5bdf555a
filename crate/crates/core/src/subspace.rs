//! Linear subspaces of `F_p^n` in reduced row-echelon form.
//!
//! The RREF basis is canonical, so two subspaces are equal exactly when their
//! representations are equal. Coordinates of a member `v` with respect to the
//! basis are simply the entries of `v` at the pivot columns.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::field::{checked_pow, inv_mod, mul_mod, sub_mod, Point, Residue, TABLE_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    p: u32,
    n: usize,
    rows: Vec<Vec<Residue>>,
    pivots: Vec<usize>,
}

/// Row-reduce in place and drop zero rows. Returns pivot columns.
fn rref(p: u32, ncols: usize, rows: &mut Vec<Vec<Residue>>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let inv = inv_mod(rows[r][col], p);
        if inv != 1 {
            for x in rows[r].iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let c = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x = sub_mod(*x, mul_mod(c, y, p), p);
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

impl Subspace {
    pub fn zero(p: u32, n: usize) -> Self {
        Subspace {
            p,
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: u32, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect();
        Subspace {
            p,
            n,
            rows,
            pivots: (0..n).collect(),
        }
    }

    /// Smallest subspace containing `points`.
    pub fn span(p: u32, n: usize, points: &[Point]) -> Result<Self> {
        let mut rows = Vec::with_capacity(points.len());
        for pt in points {
            if pt.p() != p || pt.dim() != n {
                return Err(domain("span: point from a different ambient space"));
            }
            rows.push(pt.coords().to_vec());
        }
        Ok(Self::from_rows(p, n, rows))
    }

    pub(crate) fn from_rows(p: u32, n: usize, mut rows: Vec<Vec<Residue>>) -> Self {
        let pivots = rref(p, n, &mut rows);
        Subspace { p, n, rows, pivots }
    }

    /// Rebuild from serialized basis rows, which must already be in RREF.
    pub fn from_basis_rows(p: u32, n: usize, rows: Vec<Vec<Residue>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != n || r.iter().any(|&c| c >= p)) {
            return Err(domain("basis row has wrong length or out-of-range entry"));
        }
        let canon = Self::from_rows(p, n, rows.clone());
        if canon.rows != rows {
            return Err(domain("basis rows are not in reduced row-echelon form"));
        }
        Ok(canon)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[Vec<Residue>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_points(&self) -> Vec<Point> {
        self.rows
            .iter()
            .map(|r| Point::from_raw(self.p, r.clone()))
            .collect()
    }

    /// Residual of `v` after reduction against the basis.
    fn reduce(&self, v: &mut [Residue]) {
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let c = v[col];
            if c == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row).skip(col) {
                *x = sub_mod(*x, mul_mod(c, y, self.p), self.p);
            }
        }
    }

    pub fn contains(&self, v: &Point) -> bool {
        if v.p() != self.p || v.dim() != self.n {
            return false;
        }
        self.contains_coords(v.coords())
    }

    pub(crate) fn contains_coords(&self, coords: &[Residue]) -> bool {
        let mut w = coords.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&c| c == 0)
    }

    /// Coefficients of a member with respect to the RREF basis.
    pub fn coordinates(&self, v: &Point) -> Option<Vec<Residue>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v.coords()[c]).collect())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.p == other.p
            && self.n == other.n
            && self.rows.iter().all(|r| other.contains_coords(r))
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.p != other.p || self.n != other.n {
            return Err(domain("subspaces from different ambient spaces"));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Ok(Self::from_rows(self.p, self.n, rows))
    }

    /// Zassenhaus: reduce `[a | a]` stacked over `[b | 0]`; rows whose left
    /// half vanishes carry a basis of the intersection in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if self.rows.is_empty() || other.rows.is_empty() {
            return Ok(Self::zero(self.p, self.n));
        }
        let n = self.n;
        let mut block: Vec<Vec<Residue>> = Vec::with_capacity(self.dim() + other.dim());
        for r in &self.rows {
            let mut row = r.clone();
            row.extend_from_slice(r);
            block.push(row);
        }
        for r in &other.rows {
            let mut row = r.clone();
            row.extend(std::iter::repeat_n(0, n));
            block.push(row);
        }
        let pivots = rref(self.p, 2 * n, &mut block);
        let rows = block
            .into_iter()
            .zip(pivots)
            .filter(|&(_, pc)| pc >= n)
            .map(|(row, _)| row[n..].to_vec())
            .collect();
        Ok(Self::from_rows(self.p, n, rows))
    }

    /// Number of elements, `p^dim`, or `None` on overflow.
    pub fn cardinality(&self) -> Option<u64> {
        checked_pow(self.p as u64, self.dim() as u32)
    }

    /// All members. Order: lexicographic in the coefficient vector over the
    /// basis, first basis row most significant.
    pub fn elements(&self) -> Result<Vec<Point>> {
        let size = self.enumeration_size()?;
        let d = self.dim();
        let mut out = Vec::with_capacity(size);
        let mut coeffs = vec![0 as Residue; d];
        for _ in 0..size {
            out.push(self.combine(&coeffs));
            // increment, last coefficient least significant
            for slot in coeffs.iter_mut().rev() {
                *slot += 1;
                if *slot < self.p {
                    break;
                }
                *slot = 0;
            }
        }
        Ok(out)
    }

    pub(crate) fn enumeration_size(&self) -> Result<usize> {
        match self.cardinality() {
            Some(s) if s <= TABLE_CAP => Ok(s as usize),
            other => Err(Error::Resource {
                what: "subspace enumeration",
                needed: other.map_or(u128::MAX, |s| s as u128),
                cap: TABLE_CAP as u128,
            }),
        }
    }

    /// `Σ coeffs[i] · basis[i]`.
    pub fn combine(&self, coeffs: &[Residue]) -> Point {
        let mut v = vec![0; self.n];
        for (row, &c) in self.rows.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                *x = ((*x as u64 + c as u64 * y as u64) % self.p as u64) as Residue;
            }
        }
        Point::from_raw(self.p, v)
    }
}

/// A linear form on a subspace, stored by its values on the RREF basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    domain: Subspace,
    on_basis: Vec<Residue>,
}

impl LinearForm {
    pub fn domain(&self) -> &Subspace {
        &self.domain
    }

    /// Value at a member of the domain; `None` outside it.
    pub fn eval(&self, v: &Point) -> Option<Residue> {
        let coords = self.domain.coordinates(v)?;
        let p = self.domain.p;
        Some(
            coords
                .iter()
                .zip(&self.on_basis)
                .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p as u64)
                as Residue,
        )
    }

    /// Values on `domain.elements()`, in that order.
    pub fn table(&self) -> Result<Vec<Residue>> {
        Ok(self
            .domain
            .elements()?
            .iter()
            .map(|v| self.eval(v).unwrap())
            .collect())
    }

    /// Pairs `(element, value)` over the whole domain.
    pub fn graph(&self) -> Result<Vec<(Point, Residue)>> {
        Ok(self
            .domain
            .elements()?
            .into_iter()
            .map(|v| {
                let val = self.eval(&v).unwrap();
                (v, val)
            })
            .collect())
    }
}

/// A linear form `l` on `space` with `l|_vanish = 0` and `l(target) = 1`.
///
/// The basis of `vanish` is completed by `target` and then by those RREF rows
/// of `space` that raise the dimension, in order; `l` is 0 on every completion
/// vector other than `target`.
pub fn linear_extension(space: &Subspace, vanish: &Subspace, target: &Point) -> Result<LinearForm> {
    space.check_compatible(vanish)?;
    if !vanish.is_subspace_of(space) {
        return Err(Error::Precondition("vanishing subspace is not contained in the domain".into()));
    }
    if !space.contains(target) {
        return Err(Error::Precondition("target point is not in the domain".into()));
    }
    if vanish.contains(target) {
        return Err(Error::NoExtension);
    }
    let p = space.p;
    let d = space.dim();

    // new basis in domain coordinates, with prescribed values
    let mut basis: Vec<Vec<Residue>> = Vec::with_capacity(d);
    let mut values: Vec<Residue> = Vec::with_capacity(d);
    let coords_of = |v: &[Residue]| -> Vec<Residue> { space.pivots.iter().map(|&c| v[c]).collect() };
    let mut grown = vanish.clone();
    for r in &vanish.rows {
        basis.push(coords_of(r));
        values.push(0);
    }
    basis.push(coords_of(target.coords()));
    values.push(1);
    grown = grown.sum(&Subspace::from_rows(p, space.n, vec![target.coords().to_vec()]))?;
    for r in &space.rows {
        if grown.dim() == d {
            break;
        }
        if !grown.contains_coords(r) {
            basis.push(coords_of(r));
            values.push(0);
            grown = grown.sum(&Subspace::from_rows(p, space.n, vec![r.clone()]))?;
        }
    }
    debug_assert_eq!(basis.len(), d);

    // solve basis · on_basis = values via Gauss-Jordan on [basis | values]
    let mut aug: Vec<Vec<Residue>> = basis
        .into_iter()
        .zip(values)
        .map(|(mut row, v)| {
            row.push(v);
            row
        })
        .collect();
    let piv = rref(p, d, &mut aug);
    debug_assert_eq!(piv.len(), d);
    let on_basis = aug.iter().map(|row| row[d]).collect();
    Ok(LinearForm {
        domain: space.clone(),
        on_basis,
    })
}

/// Serialized form: RREF basis rows as residue arrays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BasisRows(pub Vec<Vec<Residue>>);

impl From<&Subspace> for BasisRows {
    fn from(s: &Subspace) -> Self {
        BasisRows(s.rows.clone())
    }
}

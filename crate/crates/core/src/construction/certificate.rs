//! Refutation certificates and their validator.
//!
//! A certificate refutes a candidate linear map `φ̃` in one of two ways:
//!
//! * `uncovered`: some point `x` has `φ(x) − φ̃(x) ∉ tS`.
//! * `witness`: decompositions at `x`, `y`, `x+y` whose spans violate the
//!   pair condition, and a function `f` that is linear on all three spans
//!   with `f(x) = f(y) = 0`, `f(x+y) = 1`. Each decomposition then vanishes at
//!   `f`, so any `φ̃` agreeing with them has
//!   `(φ̃(x+y) − φ̃(x) − φ̃(y))(f) = 1`, while linearity forces 0.
//!
//! A witness certificate may omit the map. It then refutes every linear map
//! whose defects at the three points are the listed coboundary sums. With a
//! concrete map attached, all checks cannot pass at once: decompositions that
//! re-sum to the map's defects make the two routes agree, so the clash is
//! never observed.
//!
//! The validator works from the raw JSON document only.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{sub_mod, FunctionTable, Params, Point, Residue};
use crate::functional::{is_linear_on, DecompositionPairs, Functional, SSet, SumsetMode};
use crate::subspace::{linear_extension, Subspace};

use super::family::{build_family, span_with_pairs, Family, FamilyOutcome, VFamily};
use super::map::LinearMap;
use super::pairs::{find_violating_pair, PairStrategy, Violation};
use super::witness::build_witness;

pub const VALIDATOR_VERSION: u32 = 1;

/// Work cap for the validator's brute-force sumset re-check.
pub const RECHECK_CAP: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Variant {
    Uncovered {
        x: usize,
    },
    Witness {
        violation: Violation,
        /// Decompositions at `x`, `y`, `x+y`.
        decompositions: Vec<(usize, DecompositionPairs)>,
        witness: FunctionTable,
    },
    Inconclusive {
        probes: u64,
        decompositions: Vec<(usize, DecompositionPairs)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub params: Params,
    pub mode: SumsetMode,
    pub map: Option<LinearMap>,
    pub variant: Variant,
}

/// Full pipeline for one candidate map: decompose every defect, build the
/// family, search for a violating pair, and build the witness.
pub fn refute(
    map: &LinearMap,
    t: usize,
    s: &SSet,
    mode: SumsetMode,
    strategy: PairStrategy,
) -> Result<Certificate> {
    let params = map.params().with_t(t);
    let family = match build_family(map, t, s, mode)? {
        FamilyOutcome::Uncovered { x } => {
            return Ok(Certificate {
                params,
                mode,
                map: Some(map.clone()),
                variant: Variant::Uncovered { x },
            })
        }
        FamilyOutcome::Family(f) => f,
    };
    let search = find_violating_pair(&family, strategy);
    let variant = match search.found {
        Some(violation) => witness_variant(&family, violation)?,
        None => Variant::Inconclusive {
            probes: search.probes,
            decompositions: all_decompositions(&family),
        },
    };
    Ok(Certificate {
        params,
        mode,
        map: Some(map.clone()),
        variant,
    })
}

/// Witness certificate for a family with recorded generators, without a map.
pub fn refute_family<F: Family + ?Sized>(
    family: &F,
    mode: SumsetMode,
    strategy: PairStrategy,
) -> Result<Certificate> {
    let search = find_violating_pair(family, strategy);
    let variant = match search.found {
        Some(violation) => witness_variant(family, violation)?,
        None => Variant::Inconclusive {
            probes: search.probes,
            decompositions: Vec::new(),
        },
    };
    Ok(Certificate {
        params: family.params(),
        mode,
        map: None,
        variant,
    })
}

fn witness_variant<F: Family + ?Sized>(family: &F, violation: Violation) -> Result<Variant> {
    let params = family.params();
    let z = params
        .point_at(violation.x)?
        .add(&params.point_at(violation.y)?)?
        .index();
    let mut decompositions = Vec::new();
    for w in [violation.x, violation.y, z] {
        let pairs = family
            .provenance(w)
            .ok_or_else(|| Error::Precondition(format!("V_{w} has no recorded generators")))?;
        decompositions.push((w, pairs.into_owned()));
    }
    let witness = build_witness(violation.x, violation.y, family)?;
    Ok(Variant::Witness {
        violation,
        decompositions,
        witness,
    })
}

fn all_decompositions(family: &VFamily) -> Vec<(usize, DecompositionPairs)> {
    (0..family.params().size())
        .filter_map(|x| family.provenance(x).map(|d| (x, d.into_owned())))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantTag {
    Uncovered,
    Witness,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Intersections {
    pub x_cap: Vec<Vec<Residue>>,
    pub y_cap: Vec<Vec<Residue>>,
    pub sum: Vec<Vec<Residue>>,
}

/// The certificate as it appears on disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub p: u32,
    pub n: usize,
    pub t: usize,
    pub mode: SumsetMode,
    /// One `[[point_index, coeff], …]` list per basis image.
    pub map: Option<Vec<Vec<(u32, Residue)>>>,
    pub variant: VariantTag,
    pub x: Option<usize>,
    pub y: Option<usize>,
    /// Point index → `[[a_index, b_index], …]`.
    pub decompositions: BTreeMap<usize, Vec<(usize, usize)>>,
    pub witness_table: Option<Vec<Residue>>,
    pub intersections: Option<Intersections>,
    pub probes: Option<u64>,
    pub validator_version: u32,
}

impl CertificateDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

fn decomposition_map(list: &[(usize, DecompositionPairs)]) -> BTreeMap<usize, Vec<(usize, usize)>> {
    list.iter().map(|(z, d)| (*z, d.index_pairs())).collect()
}

pub fn map_to_doc(map: &LinearMap) -> Vec<Vec<(u32, Residue)>> {
    map.images().iter().map(|g| g.terms().to_vec()).collect()
}

pub fn map_from_doc(params: &Params, images: &[Vec<(u32, Residue)>]) -> Result<LinearMap> {
    let images = images
        .iter()
        .map(|terms| Functional::from_canonical_pairs(params, terms))
        .collect::<Result<Vec<_>>>()?;
    LinearMap::new(params, images)
}

impl Certificate {
    pub fn tag(&self) -> VariantTag {
        match self.variant {
            Variant::Uncovered { .. } => VariantTag::Uncovered,
            Variant::Witness { .. } => VariantTag::Witness,
            Variant::Inconclusive { .. } => VariantTag::Inconclusive,
        }
    }

    pub fn is_refutation(&self) -> bool {
        self.tag() != VariantTag::Inconclusive
    }

    pub fn to_doc(&self) -> CertificateDoc {
        let mut doc = CertificateDoc {
            p: self.params.p,
            n: self.params.n,
            t: self.params.t,
            mode: self.mode,
            map: self.map.as_ref().map(map_to_doc),
            variant: self.tag(),
            x: None,
            y: None,
            decompositions: BTreeMap::new(),
            witness_table: None,
            intersections: None,
            probes: None,
            validator_version: VALIDATOR_VERSION,
        };
        match &self.variant {
            Variant::Uncovered { x } => doc.x = Some(*x),
            Variant::Witness {
                violation,
                decompositions,
                witness,
            } => {
                doc.x = Some(violation.x);
                doc.y = Some(violation.y);
                doc.decompositions = decomposition_map(decompositions);
                doc.witness_table = Some(witness.values().to_vec());
                doc.intersections = Some(Intersections {
                    x_cap: violation.x_cap.basis().to_vec(),
                    y_cap: violation.y_cap.basis().to_vec(),
                    sum: violation.sum.basis().to_vec(),
                });
            }
            Variant::Inconclusive {
                probes,
                decompositions,
            } => {
                doc.probes = Some(*probes);
                doc.decompositions = decomposition_map(decompositions);
            }
        }
        doc
    }

    pub fn to_json(&self) -> String {
        self.to_doc().to_json()
    }
}

/// The first check a certificate fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckFailure {
    Version { found: u32 },
    Params(String),
    Map(String),
    MissingField(&'static str),
    PointRange(usize),
    DegeneratePair,
    DecompositionKeys,
    DecompositionLength { point: usize, len: usize },
    DecompositionSum { point: usize },
    DimensionBound { point: usize, dim: usize },
    Membership { point: usize },
    Intersections,
    ViolatingCondition,
    WitnessShape,
    WitnessValues,
    WitnessLinearity { point: usize },
    WitnessCanonical,
    DefectVanishing { point: usize },
    Contradiction { computed: Residue, forced: Residue },
    UncoveredRecheck,
    RecheckBudget,
}

impl CheckFailure {
    /// Stable name, printed by the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            CheckFailure::Version { .. } => "validator_version",
            CheckFailure::Params(_) => "params",
            CheckFailure::Map(_) => "map",
            CheckFailure::MissingField(_) => "missing_field",
            CheckFailure::PointRange(_) => "point_range",
            CheckFailure::DegeneratePair => "degenerate_pair",
            CheckFailure::DecompositionKeys => "decomposition_keys",
            CheckFailure::DecompositionLength { .. } => "decomposition_length",
            CheckFailure::DecompositionSum { .. } => "decomposition_sum",
            CheckFailure::DimensionBound { .. } => "dimension_bound",
            CheckFailure::Membership { .. } => "membership",
            CheckFailure::Intersections => "intersections",
            CheckFailure::ViolatingCondition => "violating_condition",
            CheckFailure::WitnessShape => "witness_shape",
            CheckFailure::WitnessValues => "witness_values",
            CheckFailure::WitnessLinearity { .. } => "witness_linearity",
            CheckFailure::WitnessCanonical => "witness_canonical",
            CheckFailure::DefectVanishing { .. } => "defect_vanishing",
            CheckFailure::Contradiction { .. } => "contradiction",
            CheckFailure::UncoveredRecheck => "uncovered_recheck",
            CheckFailure::RecheckBudget => "recheck_budget",
        }
    }
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckFailure::Version { found } => {
                write!(f, "validator_version: expected {VALIDATOR_VERSION}, found {found}")
            }
            CheckFailure::Params(m) => write!(f, "params: {m}"),
            CheckFailure::Map(m) => write!(f, "map: {m}"),
            CheckFailure::MissingField(name) => write!(f, "missing_field: {name}"),
            CheckFailure::PointRange(i) => write!(f, "point_range: index {i} outside F_p^n"),
            CheckFailure::DecompositionLength { point, len } => {
                write!(f, "decomposition_length: point {point} has {len} pairs")
            }
            CheckFailure::DecompositionSum { point } => {
                write!(f, "decomposition_sum: pairs at point {point} do not re-sum to the defect")
            }
            CheckFailure::DimensionBound { point, dim } => {
                write!(f, "dimension_bound: V_{point} has dimension {dim}")
            }
            CheckFailure::Membership { point } => write!(f, "membership: generator outside V_{point}"),
            CheckFailure::WitnessLinearity { point } => {
                write!(f, "witness_linearity: witness is nonlinear on V_{point}")
            }
            CheckFailure::DefectVanishing { point } => {
                write!(f, "defect_vanishing: decomposition at {point} is nonzero at the witness")
            }
            CheckFailure::Contradiction { computed, forced } => write!(
                f,
                "contradiction: computed value {computed}, linearity-forced value {forced}"
            ),
            other => f.write_str(other.name()),
        }
    }
}

pub fn validate_certificate(cert: &Certificate) -> std::result::Result<(), CheckFailure> {
    validate(&cert.to_doc())
}

/// Re-derive everything a certificate claims from its own contents.
pub fn validate(doc: &CertificateDoc) -> std::result::Result<(), CheckFailure> {
    if doc.validator_version != VALIDATOR_VERSION {
        return Err(CheckFailure::Version {
            found: doc.validator_version,
        });
    }
    let params = Params::new(doc.p, doc.n, doc.t).map_err(|e| CheckFailure::Params(e.to_string()))?;
    let map = match &doc.map {
        Some(images) => {
            Some(map_from_doc(&params, images).map_err(|e| CheckFailure::Map(e.to_string()))?)
        }
        None => None,
    };
    match doc.variant {
        VariantTag::Uncovered => validate_uncovered(doc, &params, map.as_ref()),
        VariantTag::Witness => validate_witness(doc, &params, map.as_ref()),
        VariantTag::Inconclusive => validate_inconclusive(doc, &params, map.as_ref()),
    }
}

fn point(params: &Params, index: usize) -> std::result::Result<Point, CheckFailure> {
    params.point_at(index).map_err(|_| CheckFailure::PointRange(index))
}

fn pairs_of(
    params: &Params,
    raw: &[(usize, usize)],
) -> std::result::Result<DecompositionPairs, CheckFailure> {
    raw.iter()
        .map(|&(a, b)| Ok((point(params, a)?, point(params, b)?)))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(DecompositionPairs::new)
}

fn check_length(
    params: &Params,
    mode: SumsetMode,
    z: usize,
    d: &DecompositionPairs,
) -> std::result::Result<(), CheckFailure> {
    let ok = match mode {
        SumsetMode::Exact => d.len() == params.t,
        SumsetMode::Upto => d.len() <= params.t,
    };
    if ok {
        Ok(())
    } else {
        Err(CheckFailure::DecompositionLength { point: z, len: d.len() })
    }
}

fn check_sum(
    params: &Params,
    map: &LinearMap,
    z: &Point,
    d: &DecompositionPairs,
) -> std::result::Result<(), CheckFailure> {
    let resum = d.sum(params.p).map_err(|_| CheckFailure::PointRange(z.index()))?;
    if resum == map.defect(z) {
        Ok(())
    } else {
        Err(CheckFailure::DecompositionSum { point: z.index() })
    }
}

fn validate_uncovered(
    doc: &CertificateDoc,
    params: &Params,
    map: Option<&LinearMap>,
) -> std::result::Result<(), CheckFailure> {
    let map = map.ok_or(CheckFailure::MissingField("map"))?;
    let x = point(params, doc.x.ok_or(CheckFailure::MissingField("x"))?)?;
    match brute_force_in_sumset(params, doc.mode, &map.defect(&x)) {
        Some(false) => Ok(()),
        Some(true) => Err(CheckFailure::UncoveredRecheck),
        None => Err(CheckFailure::RecheckBudget),
    }
}

/// Whether `target` is a sum of `t` (or at most `t`) coboundaries, by
/// enumerating every multiset of coboundaries. `None` if over budget.
fn brute_force_in_sumset(params: &Params, mode: SumsetMode, target: &Functional) -> Option<bool> {
    let q = params.size() as u64;
    if q * q > RECHECK_CAP {
        return None;
    }
    let pts: Vec<Point> = params.points().collect();
    let mut s = BTreeSet::new();
    for a in &pts {
        for b in &pts {
            s.insert(Functional::coboundary(a, b).ok()?);
        }
    }
    let s: Vec<Functional> = s.into_iter().collect();
    let sizes: Vec<usize> = match mode {
        SumsetMode::Exact => vec![params.t],
        SumsetMode::Upto => (0..=params.t).collect(),
    };
    let mut budget = RECHECK_CAP;
    for k in sizes {
        let mut idx = vec![0usize; k];
        loop {
            if budget == 0 {
                return None;
            }
            budget -= 1;
            let total = idx
                .iter()
                .fold(Functional::zero(params.p), |acc, &i| acc.add(&s[i]));
            if &total == target {
                return Some(true);
            }
            // next nondecreasing index tuple
            let Some(pos) = (0..k).rev().find(|&i| idx[i] + 1 < s.len()) else {
                break;
            };
            let v = idx[pos] + 1;
            idx[pos..].iter_mut().for_each(|slot| *slot = v);
        }
    }
    Some(false)
}

fn validate_inconclusive(
    doc: &CertificateDoc,
    params: &Params,
    map: Option<&LinearMap>,
) -> std::result::Result<(), CheckFailure> {
    doc.probes.ok_or(CheckFailure::MissingField("probes"))?;
    for (&z, raw) in &doc.decompositions {
        let zp = point(params, z)?;
        let d = pairs_of(params, raw)?;
        check_length(params, doc.mode, z, &d)?;
        if let Some(map) = map {
            check_sum(params, map, &zp, &d)?;
        }
    }
    Ok(())
}

fn validate_witness(
    doc: &CertificateDoc,
    params: &Params,
    map: Option<&LinearMap>,
) -> std::result::Result<(), CheckFailure> {
    let p = params.p;
    let xi = doc.x.ok_or(CheckFailure::MissingField("x"))?;
    let yi = doc.y.ok_or(CheckFailure::MissingField("y"))?;
    let x = point(params, xi)?;
    let y = point(params, yi)?;
    let z = x.add(&y).map_err(|_| CheckFailure::PointRange(yi))?;
    let zi = z.index();
    if x.is_zero() || y.is_zero() || z.is_zero() {
        return Err(CheckFailure::DegeneratePair);
    }

    let keys: BTreeSet<usize> = doc.decompositions.keys().copied().collect();
    if keys != BTreeSet::from([xi, yi, zi]) {
        return Err(CheckFailure::DecompositionKeys);
    }
    let triple = [(xi, &x), (yi, &y), (zi, &z)];
    let mut decomps = Vec::with_capacity(3);
    for (w, _) in triple {
        let d = pairs_of(params, &doc.decompositions[&w])?;
        check_length(params, doc.mode, w, &d)?;
        decomps.push(d);
    }
    if let Some(map) = map {
        for ((_, wp), d) in triple.iter().zip(&decomps) {
            check_sum(params, map, wp, d)?;
        }
    }

    let mut spaces = Vec::with_capacity(3);
    for ((w, wp), d) in triple.iter().zip(&decomps) {
        let v = span_with_pairs(wp, d);
        if v.dim() > 2 * params.t + 1 {
            return Err(CheckFailure::DimensionBound { point: *w, dim: v.dim() });
        }
        if !v.contains(wp) || !d.points().all(|g| v.contains(g)) {
            return Err(CheckFailure::Membership { point: *w });
        }
        spaces.push(v);
    }
    let (vx, vy, vz) = (&spaces[0], &spaces[1], &spaces[2]);

    let inter = doc
        .intersections
        .as_ref()
        .ok_or(CheckFailure::MissingField("intersections"))?;
    let x_cap = vx.intersect(vz).map_err(|_| CheckFailure::Intersections)?;
    let y_cap = vy.intersect(vz).map_err(|_| CheckFailure::Intersections)?;
    let sum = x_cap.sum(&y_cap).map_err(|_| CheckFailure::Intersections)?;
    if x_cap.basis() != inter.x_cap.as_slice()
        || y_cap.basis() != inter.y_cap.as_slice()
        || sum.basis() != inter.sum.as_slice()
    {
        return Err(CheckFailure::Intersections);
    }
    if sum.contains(&z) {
        return Err(CheckFailure::ViolatingCondition);
    }

    let values = doc
        .witness_table
        .as_ref()
        .ok_or(CheckFailure::MissingField("witness_table"))?;
    let f = FunctionTable::from_values(params, values.clone()).map_err(|_| CheckFailure::WitnessShape)?;
    if f.at(xi) != 0 || f.at(yi) != 0 || f.at(zi) != 1 {
        return Err(CheckFailure::WitnessValues);
    }
    for ((w, _), v) in triple.iter().zip(&spaces) {
        match is_linear_on(&f, v) {
            Ok(true) => {}
            _ => return Err(CheckFailure::WitnessLinearity { point: *w }),
        }
    }
    if f != canonical_witness(params, vz, &sum, &z).ok_or(CheckFailure::WitnessCanonical)? {
        return Err(CheckFailure::WitnessCanonical);
    }

    // each decomposition applied to f: every term has its arguments inside a
    // space where f is linear, so the sum must vanish
    let mut d_values = Vec::with_capacity(3);
    for ((w, _), d) in triple.iter().zip(&decomps) {
        let val = d.sum(p).map(|g| g.apply(&f)).unwrap_or(1);
        if val != 0 {
            return Err(CheckFailure::DefectVanishing { point: *w });
        }
        d_values.push(val);
    }

    // φ̃(w)(f) = f(w) − D_w(f) for any φ̃ consistent with the decompositions
    let implied = |k: usize, w: usize| sub_mod(f.at(w), d_values[k], p);
    let computed = sub_mod(sub_mod(implied(2, zi), implied(0, xi), p), implied(1, yi), p);
    let termwise = sub_mod(sub_mod(f.at(zi), f.at(xi), p), f.at(yi), p);
    let forced = match map {
        Some(map) => map
            .eval(&z)
            .sub(&map.eval(&x))
            .sub(&map.eval(&y))
            .apply(&f),
        None => 0,
    };
    if computed != termwise || computed != 1 || forced != 0 {
        return Err(CheckFailure::Contradiction { computed, forced });
    }
    Ok(())
}

fn canonical_witness(params: &Params, vz: &Subspace, sum: &Subspace, z: &Point) -> Option<FunctionTable> {
    let form = linear_extension(vz, sum, z).ok()?;
    let mut f = FunctionTable::zero(params);
    for (v, val) in form.graph().ok()? {
        f.set(v.index(), val);
    }
    Some(f)
}

use crate::error::Result;
use crate::field::{FunctionTable, Params};
use crate::functional::is_linear_on;
use crate::subspace::linear_extension;

use super::family::Family;
use super::pairs::pair_data;

/// The function that vanishes on `V_x ∪ V_y`, is linear on `V_{x+y}` with
/// value 1 at `x+y`, and is 0 everywhere else.
///
/// On `V_{x+y}` it is the canonical extension vanishing on
/// `(V_x ∩ V_{x+y}) + (V_y ∩ V_{x+y})`; since that form is already 0 on both
/// intersections the three pieces agree on overlaps. Fails with
/// [`Error::NoExtension`](crate::Error::NoExtension) when `(x, y)` does not
/// violate the condition.
pub fn build_witness<F: Family + ?Sized>(x: usize, y: usize, family: &F) -> Result<FunctionTable> {
    let params = family.params();
    let (_, _, sum, z) = pair_data(family, x, y);
    let vz = family.subspace(z.index());
    let form = linear_extension(&vz, &sum, &z)?;
    let mut f = FunctionTable::zero(&params);
    for (v, val) in form.graph()? {
        f.set(v.index(), val);
    }
    Ok(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessFailure {
    ValueAtX,
    ValueAtY,
    ValueAtSum,
    NonlinearOnX,
    NonlinearOnY,
    NonlinearOnSum,
}

/// `f(x) = 0`, `f(y) = 0`, `f(x+y) = 1`, and linearity on the three subspaces.
pub fn check_witness<F: Family + ?Sized>(
    f: &FunctionTable,
    x: usize,
    y: usize,
    family: &F,
) -> Result<std::result::Result<(), WitnessFailure>> {
    let params: Params = family.params();
    let z = params.point_at(x)?.add(&params.point_at(y)?)?.index();
    if f.at(x) != 0 {
        return Ok(Err(WitnessFailure::ValueAtX));
    }
    if f.at(y) != 0 {
        return Ok(Err(WitnessFailure::ValueAtY));
    }
    if f.at(z) != 1 {
        return Ok(Err(WitnessFailure::ValueAtSum));
    }
    for (w, failure) in [
        (x, WitnessFailure::NonlinearOnX),
        (y, WitnessFailure::NonlinearOnY),
        (z, WitnessFailure::NonlinearOnSum),
    ] {
        if !is_linear_on(f, &family.subspace(w))? {
            return Ok(Err(failure));
        }
    }
    Ok(Ok(()))
}

//! Spans, sums, intersections and a linear extension over F_3^4.

use cobound::subspace::linear_extension;
use cobound::{Params, Subspace};

fn main() -> cobound::Result<()> {
    let prm = Params::new(3, 4, 1)?;
    let a = Subspace::span(3, 4, &[prm.point(&[1, 0, 2, 0])?, prm.point(&[0, 1, 1, 0])?])?;
    let b = Subspace::span(3, 4, &[prm.point(&[1, 1, 0, 0])?, prm.point(&[0, 0, 0, 1])?])?;
    let sum = a.sum(&b)?;
    let cap = a.intersect(&b)?;
    println!("dim A = {}, dim B = {}", a.dim(), b.dim());
    println!("dim(A+B) = {}, dim(A∩B) = {}", sum.dim(), cap.dim());
    println!("A∩B basis: {:?}", cap.basis());

    let v = prm.point(&[1, 1, 0, 0])?;
    println!("coordinates of {:?} in B: {:?}", v.coords(), b.coordinates(&v));

    // a form on A+B that vanishes on A∩B and is 1 on a point outside it
    let target = prm.point(&[0, 0, 0, 1])?;
    let form = linear_extension(&sum, &cap, &target)?;
    for w in sum.basis_points() {
        println!("  ℓ({:?}) = {:?}", w.coords(), form.eval(&w));
    }
    Ok(())
}

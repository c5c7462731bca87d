//! Ordered calculus in the deformed algebra: x̂ to the left of D, the
//! projection ∘1 onto the coordinate sector, and the quadratic invariant Î₂.
//!
//!     cargo run --release --example nc_ordering

use kappa_snyder::nc_order::{circ_project, Letter, NcAlgebra};
use kappa_snyder::numerics::scalar::rat;
use kappa_snyder::numerics::{DeformParams, MinkVec, RealizationSpec};
use kappa_snyder::realizations::RealizedFrame;

fn main() -> kappa_snyder::Result<()> {
    let params = DeformParams::new(MinkVec::new(vec![rat(1, 10), rat(-1, 20), rat(0, 1)])?, rat(1, 25));
    let frame = RealizedFrame::build(RealizationSpec::Maggiore, params, 2)?;
    let alg = NcAlgebra::new(&frame)?;

    let swapped = alg.normal_order(&[Letter::Xhat(1), Letter::Xhat(0)]);
    println!("x̂_1 x̂_0 = {swapped:?}");
    let comm = alg.commutator(&alg.xhat(0), &alg.xhat(1));
    println!("[x̂_0, x̂_1] ∘ 1 = {:?}", circ_project(&comm));

    let moved = alg.normal_order(&[Letter::D(0), Letter::Xhat(0)]);
    println!("D_0 x̂_0 = {moved:?}");

    let word = [Letter::D(1), Letter::Xhat(1), Letter::Xhat(0)];
    let same = alg.realize(&alg.normal_order(&word)) == alg.realize_word(&word);
    println!("ordered and raw words realize identically: {same}");

    let i2 = alg.invariant_i2();
    println!("Î₂ = {i2:?}");
    println!("Î₂ equals the closed form: {}", i2 == alg.invariant_i2_expected());
    for ((mu, nu), defect) in alg.lorentz_defect(&i2) {
        println!("M_{mu}{nu} ∘ Î₂ = 0: {}", defect.is_zero());
    }
    Ok(())
}

//! Star products: plane waves compose their momenta, polynomials get the
//! bidifferential second-order product, and s ≠ 0 breaks associativity.
//!
//!     cargo run --release --example star_products

use kappa_snyder::hopf_star::{associator_defect, compose_nested, star_plane_waves, star_poly, Bracketing, PlaneWave};
use kappa_snyder::numerics::scalar::rat;
use kappa_snyder::numerics::{DeformParams, MinkVec, RealizationSpec};
use kappa_snyder::weyl::Poly;
use num_complex::Complex64;

fn main() -> kappa_snyder::Result<()> {
    let params = DeformParams::new(MinkVec::from_slice(&[0.1, 0.05])?, 0.05);
    let f = PlaneWave::new(MinkVec::from_slice(&[0.3, 0.2])?, Complex64::new(0.0, 1.0));
    let g = PlaneWave::new(MinkVec::from_slice(&[-0.1, 0.4])?, Complex64::new(2.0, 0.0));
    let (h, _) = star_plane_waves(&RealizationSpec::Maggiore, &params, &f, &g)?;
    println!("plane waves: momentum {:?}, amplitude {}", h.momentum.components(), h.amplitude);

    let exact = DeformParams::new(MinkVec::new(vec![rat(1, 10), rat(1, 20)])?, rat(1, 20));
    let x0 = Poly::coordinate(2, 2, 0);
    let x1 = Poly::coordinate(2, 2, 1);
    for u in [rat(0, 1), rat(1, 2), rat(1, 1)] {
        let x01 = star_poly(&x0, &x1, &u, &exact)?;
        let x10 = star_poly(&x1, &x0, &u, &exact)?;
        println!("u = {u}: X_0 ⋆ X_1 = {x01:?}");
        println!("        X_0 ⋆ X_1 − X_1 ⋆ X_0 = {:?}", &x01 - &x10);
    }

    let p = MinkVec::from_slice(&[0.0, 0.5])?;
    let snyder = DeformParams::new(MinkVec::zero(2)?, 0.1);
    let defect = associator_defect(&RealizationSpec::Maggiore, &snyder, &p, &p, &p)?;
    println!("collinear Snyder associator at p = k = q = (0, 0.5): {:?}", defect.components());
    let (k, q) = (MinkVec::from_slice(&[0.2, 0.3])?, MinkVec::from_slice(&[-0.1, 0.4])?);
    let defect = associator_defect(&RealizationSpec::Maggiore, &snyder, &p, &k, &q)?;
    println!("generic Snyder associator: {:?}", defect.components());
    let kappa = DeformParams::new(MinkVec::from_slice(&[0.1, 0.05])?, 0.0);
    println!("κ associator: {:.1e}", associator_defect(&RealizationSpec::Maggiore, &kappa, &p, &k, &q)?.norm());

    let four = [p.clone(), k.clone(), q.clone(), MinkVec::from_slice(&[0.05, -0.2])?];
    for tree in [Bracketing::right_comb(4), "((0 1) (2 3))".parse()?, Bracketing::left_comb(4)] {
        let total = compose_nested(&RealizationSpec::Maggiore, &snyder, &four, &tree)?;
        println!("{tree}: {:?}", total.components());
    }
    Ok(())
}

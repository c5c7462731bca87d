//! ε-coefficient tables at (εa, ε²s): the second-order formulas against the
//! exact Maggiore laws expanded as series, and the ε³ scaling of their gap.
//!
//!     cargo run --release --example perturbative_expansion

use kappa_snyder::momentum::expand::{exact_table, formula_table, Quantity};
use kappa_snyder::momentum::{self, Path};
use kappa_snyder::numerics::{DeformParams, MinkVec, RealizationSpec};

fn main() -> kappa_snyder::Result<()> {
    let params = DeformParams::new(MinkVec::from_slice(&[0.7, 0.0, 0.0])?, 0.4);
    let k = MinkVec::from_slice(&[0.4, 0.3, -0.5])?;
    let q = MinkVec::from_slice(&[-0.2, 0.6, 0.3])?;

    for quantity in Quantity::ALL {
        let formula = formula_table(quantity, 0.5, &params, &k, &q, 3)?;
        let exact = exact_table(quantity, &params, &k, &q, 3)?;
        println!("{quantity}:");
        for (m, (f, e)) in formula.coefficients.iter().zip(&exact.coefficients).enumerate() {
            println!("  ε^{m}  formula {f:>10.6?}\n       exact   {e:>10.6?}");
        }
    }

    println!("\n|D_formula − D| as ε halves:");
    for (u, spec) in [(0.5, RealizationSpec::Maggiore), (0.0, RealizationSpec::Unit)] {
        let mut previous: Option<f64> = None;
        for eps in [0.2, 0.1, 0.05] {
            let p = params.graded(eps);
            let reference = momentum::compose(&spec, &p, &k, &q)?.value;
            let formula = momentum::compose_via(&spec, &p, &k, &q, &Path::Perturbative { u })?.value;
            let gap = (&reference - &formula).norm();
            let ratio = previous.map(|g| format!("  ratio {:.2}", g / gap)).unwrap_or_default();
            println!("  u = {u}, ε = {eps:<5} {gap:.3e}{ratio}");
            previous = Some(gap);
        }
    }
    Ok(())
}

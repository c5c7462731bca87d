//! Antipodes: the Newton solution of D(S(k), k) = 0, its mirror condition,
//! and the second-order formula for timelike a as ε shrinks.
//!
//!     cargo run --release --example antipode

use kappa_snyder::momentum::{self, DEFAULT_TOL};
use kappa_snyder::numerics::{DeformParams, MinkVec, RealizationSpec};

fn main() -> kappa_snyder::Result<()> {
    let k = MinkVec::from_slice(&[0.4, 0.3, -0.5])?;
    let general = DeformParams::new(MinkVec::from_slice(&[0.1, 0.05, -0.02])?, 0.05);
    let s = momentum::antipode(&RealizationSpec::Maggiore, &general, &k, DEFAULT_TOL)?;
    println!("S(k) = {:?}", s.value.components());
    println!("|D(S,k)| = {:.1e}, |D(k,S)| = {:.1e}", s.residual, s.mirror_residual);

    let snyder = DeformParams::new(MinkVec::zero(3)?, 0.1);
    for spec in [RealizationSpec::Maggiore, RealizationSpec::Unit] {
        let s = momentum::antipode(&spec, &snyder, &k, DEFAULT_TOL)?;
        println!("Snyder ({spec}): |S(k) + k| = {:.1e}", (&s.value + &k).norm());
    }

    println!("second-order formula against Newton, a = ε(1,0,0), s = ε²/2:");
    let base = DeformParams::new(MinkVec::from_slice(&[1.0, 0.0, 0.0])?, 0.5);
    let mut previous: Option<f64> = None;
    for eps in [0.2, 0.1, 0.05] {
        let p = base.graded(eps);
        let numeric = momentum::antipode(&RealizationSpec::Maggiore, &p, &k, DEFAULT_TOL)?.value;
        let formula = momentum::antipode_perturbative(&p, &k)?;
        let gap = (&numeric - &formula).norm();
        let ratio = previous.map(|g| format!("  ratio {:.2}", g / gap)).unwrap_or_default();
        println!("  ε = {eps:<5} |S_num − S_formula| = {gap:.3e}{ratio}");
        previous = Some(gap);
    }
    Ok(())
}

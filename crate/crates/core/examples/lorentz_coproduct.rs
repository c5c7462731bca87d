//! The Leibniz rule for Lorentz generators on a star product of plane waves,
//! with the κ-Minkowski form of the coproduct, in the κ and Snyder limits and
//! at a generic point.
//!
//!     cargo run --release --example lorentz_coproduct

use kappa_snyder::hopf_star::{covariance_defect, lorentz_leibniz_defect};
use kappa_snyder::numerics::{DeformParams, MinkVec, RealizationSpec};

fn main() -> kappa_snyder::Result<()> {
    let k = MinkVec::from_slice(&[0.3, -0.2, 0.4])?;
    let q = MinkVec::from_slice(&[-0.1, 0.35, 0.2])?;
    let points = [
        ("κ (s = 0)", [0.2, 0.05, 0.0], 0.0),
        ("Snyder (a = 0)", [0.0, 0.0, 0.0], 0.1),
        ("general", [0.1, 0.05, 0.0], 0.05),
        ("general, s halved", [0.1, 0.05, 0.0], 0.025),
    ];
    for (label, a, s) in points {
        let params = DeformParams::new(MinkVec::from_slice(&a)?, s);
        let mut worst = 0.0f64;
        for (mu, nu) in [(0, 1), (0, 2), (1, 2)] {
            worst = worst.max(lorentz_leibniz_defect(&params, &k, &q, mu, nu)?);
        }
        println!("{label:<20} largest Leibniz defect {worst:.3e}");
    }

    let snyder = DeformParams::new(MinkVec::zero(3)?, 0.1);
    for plane in [(0, 1), (1, 2)] {
        let d = covariance_defect(&RealizationSpec::Maggiore, &snyder, &k, &q, 0.5, plane)?;
        println!("Snyder: |D(Λk,Λq) − ΛD(k,q)| in plane {plane:?} = {d:.1e}");
    }
    Ok(())
}

//! The composition law D(k, q) computed three ways (closed-form flow plus
//! Newton, RK4 integration, second-order formula), and the closed special cases.
//!
//!     cargo run --release --example momentum_composition

use kappa_snyder::momentum::{self, ClosedCase, Path};
use kappa_snyder::numerics::{DeformParams, MinkVec, RealizationSpec};

fn main() -> kappa_snyder::Result<()> {
    let k = MinkVec::from_slice(&[0.3, 0.2, -0.1])?;
    let q = MinkVec::from_slice(&[-0.1, 0.4, 0.25])?;
    let params = DeformParams::new(MinkVec::from_slice(&[0.1, 0.05, 0.0])?, 0.05);
    let spec = RealizationSpec::Maggiore;

    for path in [Path::Exact, Path::Ode { steps: 1000 }, Path::Perturbative { u: 0.5 }] {
        let r = momentum::compose_via(&spec, &params, &k, &q, &path)?;
        println!("{:<22} D(k,q) = {:?}  (newton iterations {}, ode estimate {:.1e})", path.to_string(), r.value.components(), r.diagnostics.newton_iters, r.diagnostics.ode_estimate);
    }

    let unit = momentum::compose(&RealizationSpec::Unit, &params, &k, &q)?;
    println!("unit realization       D(k,q) = {:?}", unit.value.components());

    let kappa = DeformParams::new(MinkVec::from_slice(&[0.2, 0.1, 0.0])?, 0.0);
    let snyder = DeformParams::new(MinkVec::from_slice(&[0.0, 0.0, 0.0])?, 0.1);
    for (case, p, spec) in [
        (ClosedCase::Kappa, &kappa, RealizationSpec::Maggiore),
        (ClosedCase::SnyderMaggiore, &snyder, RealizationSpec::Maggiore),
        (ClosedCase::SnyderUnit, &snyder, RealizationSpec::Unit),
    ] {
        let closed = momentum::compose_closed(case, p, &k, &q)?;
        let flow = momentum::compose(&spec, p, &k, &q)?.value;
        println!("{case:<16} closed form differs from the flow by {:.2e}", (&closed - &flow).norm());
    }

    let z = momentum::zinv_of_k(&params, &k)?;
    let b = momentum::box_of_k(&params, &k)?;
    println!("Z⁻¹(k): {} vs {}", z.left, z.right);
    println!("□(k):   {} vs {}", b.left, b.right);
    Ok(())
}

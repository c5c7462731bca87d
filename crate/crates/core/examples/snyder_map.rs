//! The Snyder coordinates x̃_μ = x̂_μ − i a^α M_αμ of a κ-Snyder realization:
//! their commutator closes on the Lorentz generators with coefficient s − a².
//!
//!     cargo run --release --example snyder_map

use kappa_snyder::numerics::scalar::rat;
use kappa_snyder::numerics::{DeformParams, MinkVec, RealizationSpec};
use kappa_snyder::realizations::{verify_snyder, RealizedFrame};

fn main() -> kappa_snyder::Result<()> {
    let params = DeformParams::new(MinkVec::new(vec![rat(1, 10), rat(0, 1), rat(1, 20)])?, rat(1, 50));
    for spec in [RealizationSpec::Maggiore, RealizationSpec::Unit, RealizationSpec::GeneralU(rat(1, 3))] {
        let frame = RealizedFrame::build(spec.clone(), params.clone(), 4)?;
        let xt = frame.snyder_map();
        let comm = xt[0].commutator(&xt[1])?;
        println!("{spec}: [x̃_0, x̃_1] has {} terms", comm.len());
        for check in verify_snyder(&frame).checks {
            println!("    {:<12} {}", check.relation, if check.is_zero() { "holds exactly" } else { "FAILS" });
        }
    }
    Ok(())
}

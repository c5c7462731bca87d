//! Builds a realization in four dimensions and checks every defining
//! commutation relation exactly at truncation order 4.
//!
//!     cargo run --release --example verify_identities -- [maggiore|unit|u=<v>] [seed]

use std::time::Instant;

use kappa_snyder::numerics::RealizationSpec;
use kappa_snyder::realizations::{sample_params, verify_algebra, verify_derived, RealizedFrame};

fn main() -> kappa_snyder::Result<()> {
    let mut args = std::env::args().skip(1);
    let spec: RealizationSpec = args.next().as_deref().unwrap_or("maggiore").parse()?;
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    let params = sample_params(seed, 4)?;
    println!("realization {spec}, a = {:?}, s = {}", params.a.components().iter().map(ToString::to_string).collect::<Vec<_>>(), params.s);

    let start = Instant::now();
    let frame = RealizedFrame::build(spec, params, 4)?;
    println!("x̂_0 has {} terms (built in {:.2?})", frame.xhat[0].len(), start.elapsed());

    let start = Instant::now();
    let report = verify_algebra(&frame);
    for check in &report.checks {
        let status = if check.is_zero() { "zero" } else { "NONZERO" };
        println!("{:<10} {:>5} residuals  {status}", check.relation, check.count);
    }
    println!("algebra checked in {:.2?}", start.elapsed());

    let start = Instant::now();
    for check in verify_derived(&frame)?.checks {
        let status = if check.is_zero() { "zero" } else { "NONZERO" };
        println!("{:<12} {:>5} residuals  {status}", check.relation, check.count);
    }
    println!("derived operators checked in {:.2?}", start.elapsed());
    Ok(())
}

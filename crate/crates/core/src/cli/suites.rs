//! The `verify` suites: operator identities, ordered calculus, momentum
//! space and star products, all at one parameter point.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::CheckReport;
use super::RunConfig;
use crate::error::Result;
use crate::hopf_star::{associator_defect, covariance_defect, lorentz_leibniz_defect, star_plane_waves, star_poly, PlaneWave};
use crate::momentum::expand::{exact_table, formula_table, Quantity};
use crate::momentum::{self, ClosedCase};
use crate::nc_order::{circ_project, projected_degree_ok, Letter, NCOp, NcAlgebra};
use crate::numerics::scalar::{i_unit, imag, rat, real};
use crate::numerics::{MinkVec, Rational, RealizationSpec};
use crate::realizations::{verify_algebra, verify_derived, AlgebraReport, RealizedFrame};
use crate::weyl::{Coef, Poly};

const SAMPLES: usize = 4;

fn tol_or(cfg: &RunConfig, default: f64) -> f64 {
    cfg.tol.unwrap_or(default)
}

fn seed_note(cfg: &RunConfig) -> String {
    format!("seed={}", cfg.seed)
}

/// Momentum pairs drawn uniformly from [−½, ½]ⁿ.
pub fn sample_momenta(seed: u64, dim: usize, count: usize) -> Vec<(MinkVec, MinkVec)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x9e37_79b9));
    let draw = |rng: &mut ChaCha8Rng| {
        let c: Vec<f64> = (0..dim).map(|_| rng.random_range(-0.5..0.5)).collect();
        MinkVec::from_slice(&c).expect("dim ≥ 2")
    };
    (0..count).map(|_| (draw(&mut rng), draw(&mut rng))).collect()
}

fn algebra_reports(prefix: &str, report: &AlgebraReport, note: &str) -> Vec<CheckReport> {
    report
        .checks
        .iter()
        .map(|c| {
            let mut details = format!("{note}; combinations={}", c.count);
            if let Some(idx) = &c.first_nonzero {
                details.push_str(&format!("; first nonzero at {idx:?}"));
            }
            CheckReport::exact(format!("{prefix}.{}", c.relation), c.max_abs, c.is_zero(), details)
        })
        .collect()
}

fn realizations_suite(cfg: &RunConfig) -> Result<Vec<CheckReport>> {
    let frame = RealizedFrame::build(cfg.spec.clone(), cfg.exact.clone(), cfg.order)?;
    let note = format!("{}; order={}", seed_note(cfg), cfg.order);
    let mut out = algebra_reports("realizations", &verify_algebra(&frame), &note);
    out.extend(algebra_reports("realizations", &verify_derived(&frame)?, &note));
    Ok(out)
}

fn nc_reports(name: &str, residuals: &[NCOp], note: &str) -> CheckReport {
    let max = residuals.iter().map(NCOp::max_abs_coeff).fold(0.0, f64::max);
    let zero = residuals.iter().all(NCOp::is_zero);
    CheckReport::exact(name, max, zero, format!("{note}; combinations={}", residuals.len()))
}

fn index_tuples(dim: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|t| (0..dim).map(move |mu| [t.clone(), vec![mu]].concat())).collect();
    }
    out
}

fn permutations(len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(len - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, len - 1);
            out.push(q);
        }
    }
    out
}

fn nc_order_suite(cfg: &RunConfig) -> Result<Vec<CheckReport>> {
    if !cfg.spec.is_maggiore() {
        return Ok(Vec::new());
    }
    let n = cfg.dim;
    let order = cfg.order.min(3);
    let note = format!("{}; order={order}", seed_note(cfg));
    let frame = RealizedFrame::build(cfg.spec.clone(), cfg.exact.clone(), order)?;
    let alg = NcAlgebra::new(&frame)?;
    let mut out = Vec::new();

    let mut comm = Vec::new();
    for mu in 0..n {
        for nu in mu + 1..n {
            let got = circ_project(&alg.commutator(&alg.xhat(mu), &alg.xhat(nu)));
            let am = Coef::monomial(imag(frame.params.a[mu].clone()), 1, order);
            let an = Coef::monomial(imag(frame.params.a[nu].clone()), 1, order);
            let expected = &alg.xhat(nu).scale(&am) - &alg.xhat(mu).scale(&an);
            comm.push(&got - &expected);
        }
    }
    out.push(nc_reports("nc_order.commutator_on_one", &comm, &note));

    let mut violations = 0usize;
    let mut total = 0usize;
    for m in 2..=3 {
        for indices in index_tuples(n, m) {
            for perm in permutations(m) {
                let d = circ_project(&alg.pbw_defect(&perm, &indices)?);
                total += 1;
                if !projected_degree_ok(&d, m - 1) {
                    violations += 1;
                }
            }
        }
    }
    out.push(CheckReport::exact(
        "nc_order.pbw_degree_bound",
        violations as f64,
        violations == 0,
        format!("{note}; permuted words={total}; residual counts violations"),
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (mut max, mut zero) = (0.0f64, true);
    let words = 12;
    for _ in 0..words {
        let len = rng.random_range(2..=3);
        let word: Vec<Letter> = (0..len)
            .map(|_| {
                let mu = rng.random_range(0..n);
                if rng.random_bool(0.6) {
                    Letter::Xhat(mu)
                } else {
                    Letter::D(mu)
                }
            })
            .collect();
        let diff = &alg.realize(&alg.normal_order(&word)) - &alg.realize_word(&word);
        max = max.max(diff.max_abs_coeff());
        zero &= diff.is_zero();
    }
    out.push(CheckReport::exact("nc_order.realized_reordering", max, zero, format!("{note}; random words={words}")));

    let frame2 = RealizedFrame::build(cfg.spec.clone(), cfg.exact.clone(), 2)?;
    let alg2 = NcAlgebra::new(&frame2)?;
    let i2 = alg2.invariant_i2();
    let note2 = format!("{}; order=2", seed_note(cfg));
    out.push(nc_reports("nc_order.invariant_i2", &[&i2 - &alg2.invariant_i2_expected()], &note2));
    let defects: Vec<NCOp> = alg2.lorentz_defect(&i2).into_iter().map(|(_, d)| d).collect();
    out.push(nc_reports("nc_order.invariant_i2_lorentz", &defects, &note2));
    Ok(out)
}

fn fold_max(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    let mut max = 0.0f64;
    for v in values {
        max = max.max(v?);
    }
    Ok(max)
}

fn momentum_suite(cfg: &RunConfig) -> Result<Vec<CheckReport>> {
    let (spec, p) = (&cfg.spec, &cfg.params);
    let samples = sample_momenta(cfg.seed, cfg.dim, SAMPLES);
    let note = format!("{}; samples={SAMPLES}", seed_note(cfg));
    let zero = MinkVec::zero(cfg.dim)?;
    let mut out = Vec::new();
    let maggiore = spec.is_maggiore();

    if maggiore {
        let d = fold_max(samples.iter().map(|(k, q)| {
            let ode = momentum::compose_ode(spec, p, k, q, momentum::DEFAULT_STEPS)?;
            Ok((&ode.value - &momentum::p_exact_maggiore(p, k, q, 1.0)?).norm())
        }))?;
        out.push(CheckReport::within("momentum.ode_vs_exact", d, tol_or(cfg, 1e-9), note.clone()));
    }

    let d = fold_max(samples.iter().map(|(k, _)| {
        let inv = momentum::kvec_inverse(spec, p, k, momentum::DEFAULT_TOL)?;
        Ok((&momentum::kvec(spec, p, &MinkVec::from_slice(&inv.x)?)? - k).norm())
    }))?;
    out.push(CheckReport::within("momentum.kvec_round_trip", d, tol_or(cfg, 1e-12), note.clone()));

    let mut worst_snyder = 0.0f64;
    let d = fold_max(samples.iter().map(|(k, _)| {
        let s = momentum::antipode(spec, p, k, momentum::DEFAULT_TOL)?;
        worst_snyder = worst_snyder.max((&s.value + k).norm());
        Ok(s.residual.max(s.mirror_residual))
    }))?;
    out.push(CheckReport::within("momentum.antipode_residuals", d, tol_or(cfg, 1e-12), note.clone()));
    if p.a.is_zero() {
        out.push(CheckReport::within("momentum.snyder_antipode", worst_snyder, tol_or(cfg, 1e-12), note.clone()));
    }

    let d = fold_max(samples.iter().map(|(k, q)| {
        let left = (&momentum::compose(spec, p, k, &zero)?.value - k).norm();
        let right = (&momentum::compose(spec, p, &zero, q)?.value - q).norm();
        Ok(left.max(right))
    }))?;
    out.push(CheckReport::within("momentum.unit_laws", d, tol_or(cfg, 1e-12), note.clone()));

    let case = match spec {
        RealizationSpec::Maggiore if p.s == 0.0 => Some(ClosedCase::Kappa),
        RealizationSpec::Maggiore if p.a.is_zero() => Some(ClosedCase::SnyderMaggiore),
        RealizationSpec::Unit if p.a.is_zero() => Some(ClosedCase::SnyderUnit),
        _ => None,
    };
    if let Some(case) = case {
        let d = fold_max(samples.iter().map(|(k, q)| {
            Ok((&momentum::compose_closed(case, p, k, q)? - &momentum::compose(spec, p, k, q)?.value).norm())
        }))?;
        out.push(CheckReport::within(format!("momentum.closed_{case}"), d, tol_or(cfg, 1e-9), note.clone()));
    }

    if maggiore {
        let d = fold_max(samples.iter().map(|(k, _)| {
            let z = momentum::zinv_of_k(p, k)?;
            let b = momentum::box_of_k(p, k)?;
            Ok(z.gap().max(b.gap()))
        }))?;
        out.push(CheckReport::within("momentum.z_box_identities", d, tol_or(cfg, 1e-10), note.clone()));

        let timelike = p.a.components()[1..].iter().all(|v| *v == 0.0);
        let mut worst = 0.0f64;
        for (k, q) in &samples {
            for quantity in Quantity::ALL {
                if quantity == Quantity::Antipode && !timelike {
                    continue;
                }
                let exact = exact_table(quantity, p, k, q, 3)?;
                let formula = formula_table(quantity, 0.5, p, k, q, 3)?;
                worst = exact.gaps(&formula)[..3].iter().fold(worst, |m, g| m.max(*g));
            }
        }
        out.push(CheckReport::within("momentum.second_order_tables", worst, tol_or(cfg, 1e-12), format!("{note}; orders ε⁰–ε²")));
    }
    Ok(out)
}

fn effective_u(spec: &RealizationSpec) -> Rational {
    match spec {
        RealizationSpec::GeneralU(u) => u.clone(),
        RealizationSpec::Unit => rat(0, 1),
        RealizationSpec::Maggiore => rat(1, 2),
        RealizationSpec::CustomTaylor(c) => c.get(1).map(|c1| -c1.clone()).unwrap_or_else(|| rat(0, 1)),
    }
}

fn hopf_star_suite(cfg: &RunConfig) -> Result<Vec<CheckReport>> {
    let (spec, p) = (&cfg.spec, &cfg.params);
    let samples = sample_momenta(cfg.seed, cfg.dim, SAMPLES);
    let note = format!("{}; samples={SAMPLES}", seed_note(cfg));
    let mut out = Vec::new();

    let d = fold_max(samples.iter().map(|(k, q)| {
        let (wave, composed) = star_plane_waves(spec, p, &PlaneWave::unit(k.clone()), &PlaneWave::unit(q.clone()))?;
        Ok((&wave.momentum - &composed.value).norm() + (wave.amplitude - 1.0).norm())
    }))?;
    out.push(CheckReport::within("hopf_star.plane_wave_phase", d, tol_or(cfg, 1e-12), note.clone()));

    if p.s == 0.0 {
        let d = fold_max(samples.windows(2).map(|w| associator_defect(spec, p, &w[0].0, &w[0].1, &w[1].0).map(|v| v.norm())))?;
        out.push(CheckReport::within("hopf_star.associator", d, tol_or(cfg, 1e-12), note.clone()));
    }
    // the undeformed-form Lorentz coproduct is checked where it is exact:
    // pure κ (s = 0) and pure Snyder (a = 0)
    if spec.is_maggiore() && (p.s == 0.0 || p.a.is_zero()) {
        let n = cfg.dim;
        let d = fold_max(samples.iter().flat_map(|(k, q)| {
            (0..n).flat_map(move |mu| (mu + 1..n).map(move |nu| lorentz_leibniz_defect(p, k, q, mu, nu)))
        }))?;
        out.push(CheckReport::within("hopf_star.lorentz_leibniz", d, tol_or(cfg, 1e-9), note.clone()));
    }
    if p.a.is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
        let d = fold_max(samples.iter().map(|(k, q)| {
            let mu = rng.random_range(0..cfg.dim);
            let nu = (mu + rng.random_range(1..cfg.dim)) % cfg.dim;
            covariance_defect(spec, p, k, q, rng.random_range(-0.8..0.8), (mu, nu))
        }))?;
        out.push(CheckReport::within("hopf_star.snyder_covariance", d, tol_or(cfg, 1e-10), note.clone()));
    }

    let u = effective_u(spec);
    let order = 2;
    let n = cfg.dim;
    let mut residuals = Vec::new();
    for mu in 0..n {
        for nu in mu + 1..n {
            let xm = Poly::coordinate(n, order, mu);
            let xn = Poly::coordinate(n, order, nu);
            let comm = &star_poly(&xm, &xn, &u, &cfg.exact)? - &star_poly(&xn, &xm, &u, &cfg.exact)?;
            let am = Coef::monomial(real(cfg.exact.a[mu].clone()) * i_unit(), 1, order);
            let an = Coef::monomial(real(cfg.exact.a[nu].clone()) * i_unit(), 1, order);
            let expected = &xn.scale(&am) - &xm.scale(&an);
            residuals.push(&comm - &expected);
        }
    }
    let max = residuals.iter().map(Poly::max_abs_coeff).fold(0.0, f64::max);
    out.push(CheckReport::exact(
        "hopf_star.star_commutator",
        max,
        residuals.iter().all(Poly::is_zero),
        format!("{}; u={u}; order=2", seed_note(cfg)),
    ));
    Ok(out)
}

type Suite = fn(&RunConfig) -> Result<Vec<CheckReport>>;

/// Runs all suites (in parallel) and returns reports sorted by check name.
pub fn run_verify(cfg: &RunConfig) -> Result<Vec<CheckReport>> {
    let suites: [Suite; 4] = [realizations_suite, nc_order_suite, momentum_suite, hopf_star_suite];
    let results: Vec<Result<Vec<CheckReport>>> = suites.par_iter().map(|suite| suite(cfg)).collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    out.sort_by(|a, b| a.check.cmp(&b.check));
    Ok(out)
}

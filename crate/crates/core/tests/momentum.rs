use kappa_snyder::momentum::expand::{exact_table, formula_table, Quantity};
use kappa_snyder::momentum::*;
use kappa_snyder::numerics::{DeformParams, MinkVec, RealizationSpec};

fn v(c: &[f64]) -> MinkVec {
    MinkVec::from_slice(c).unwrap()
}

fn params(a: &[f64], s: f64) -> DeformParams {
    DeformParams::new(v(a), s)
}

fn dist(x: &MinkVec, y: &MinkVec) -> f64 {
    (x - y).norm()
}

fn mdot(x: &[f64], y: &[f64]) -> f64 {
    -x[0] * y[0] + x[1..].iter().zip(&y[1..]).map(|(a, b)| a * b).sum::<f64>()
}

#[test]
fn phi_at_origin_is_the_metric() {
    let p = params(&[0.1, 0.05, 0.0], 0.03);
    for spec in [RealizationSpec::Maggiore, RealizationSpec::Unit] {
        let m = phi_matrix(&spec, &p, &v(&[0.0, 0.0, 0.0])).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let e = if i != j { 0.0 } else if i == 0 { -1.0 } else { 1.0 };
                assert_eq!(m[(i, j)], e);
            }
        }
    }
}

#[test]
fn phi_substitution_matches_hand_evaluation() {
    // unit spec, a = 0: (a²−s)γ₂ = s, so Φ = η + sPP
    let s = 0.2;
    let p = params(&[0.0, 0.0], s);
    let pm = [0.3, -0.4];
    let m = phi_matrix(&RealizationSpec::Unit, &p, &v(&pm)).unwrap();
    let eta = [-1.0, 1.0];
    for i in 0..2 {
        for j in 0..2 {
            let diag = if i == j { eta[i] } else { 0.0 };
            assert!((m[(i, j)] - (diag + s * pm[i] * pm[j])).abs() < 1e-15);
        }
    }
    // maggiore Φ·k = k(aP + √(1+(a²−s)P²)) − a(kP)
    let a = [0.1, 0.05];
    let p = params(&a, 0.05);
    let pm = [0.2, 0.1];
    let k = [0.3, 0.2];
    let m = phi_matrix(&RealizationSpec::Maggiore, &p, &v(&pm)).unwrap();
    let c = mdot(&a, &a) - 0.05;
    let root = (1.0 + c * mdot(&pm, &pm)).sqrt();
    for mu in 0..2 {
        let lhs: f64 = (0..2).map(|al| m[(mu, al)] * eta[al] * k[al]).sum();
        let rhs = k[mu] * (mdot(&a, &pm) + root) - a[mu] * mdot(&k, &pm);
        assert!((lhs - rhs).abs() < 1e-15);
    }
}

#[test]
fn ode_matches_closed_flow() {
    let p = params(&[0.1, 0.05], 0.05);
    let (k, q) = (v(&[0.3, 0.2]), v(&[-0.1, 0.4]));
    let ode = compose_ode(&RealizationSpec::Maggiore, &p, &k, &q, 1000).unwrap();
    let exact = p_exact_maggiore(&p, &k, &q, 1.0).unwrap();
    assert!(dist(&ode.value, &exact) < 1e-10);
    assert!(ode.diagnostics.ode_converged);
    assert!(ode.diagnostics.ode_estimate < 1e-10);
}

#[test]
fn closed_flow_boundary_and_derivative() {
    let p = params(&[0.15, 0.05, -0.02], -0.04);
    let (k, q) = (v(&[0.5, 0.2, -0.3]), v(&[-0.1, 0.4, 0.2]));
    assert!(dist(&p_exact_maggiore(&p, &k, &q, 0.0).unwrap(), &q) < 1e-16);
    let flat = params(&[0.0, 0.0, 0.0], 0.0);
    assert!(dist(&p_exact_maggiore(&flat, &k, &q, 1.0).unwrap(), &(&k + &q)) < 1e-15);
    let (t, h) = (0.6, 1e-4);
    let fwd = p_exact_maggiore(&p, &k, &q, t + h).unwrap();
    let back = p_exact_maggiore(&p, &k, &q, t - h).unwrap();
    let mid = p_exact_maggiore(&p, &k, &q, t).unwrap();
    let rhs = ode::rhs(&RealizationSpec::Maggiore, &p, k.components(), mid.components()).unwrap();
    for mu in 0..3 {
        assert!(((fwd[mu] - back[mu]) / (2.0 * h) - rhs[mu]).abs() < 1e-8);
    }
}

#[test]
fn domain_guard() {
    let p = params(&[0.0, 0.0], 2.0);
    let q = v(&[0.0, 1.0]);
    assert!(p_exact_maggiore(&p, &v(&[0.1, 0.0]), &q, 1.0).is_err());
}

#[test]
fn kvec_agreement_and_round_trip() {
    let p = params(&[0.2, 0.0, 0.0, 0.0], 0.1);
    let k = v(&[0.5, 0.3, -0.4, 0.2]);
    let closed = kvec(&RealizationSpec::Maggiore, &p, &k).unwrap();
    let ode = kvec_via(&RealizationSpec::Maggiore, &p, &k, &Path::Ode { steps: 1000 }).unwrap();
    assert!(dist(&closed, &ode) < 1e-10);
    let inv = kvec_inverse(&RealizationSpec::Maggiore, &p, &k, 1e-12).unwrap();
    assert!(inv.residual <= 1e-12);
    let back = kvec(&RealizationSpec::Maggiore, &p, &v(&inv.x)).unwrap();
    assert!(dist(&back, &k) <= 1e-12);
    let zero = v(&[0.0; 4]);
    assert!(kvec(&RealizationSpec::Maggiore, &p, &zero).unwrap().norm() == 0.0);
    assert!(kvec_inverse(&RealizationSpec::Maggiore, &p, &zero, 1e-12).unwrap().x.iter().all(|c| *c == 0.0));
}

#[test]
fn compose_unit_laws_and_paths() {
    let p = params(&[0.1, 0.05], 0.05);
    let (k, q) = (v(&[0.3, 0.2]), v(&[-0.1, 0.4]));
    let zero = v(&[0.0, 0.0]);
    for spec in [RealizationSpec::Maggiore, RealizationSpec::Unit] {
        assert!(dist(&compose(&spec, &p, &k, &zero).unwrap().value, &k) < 1e-12);
        assert!(dist(&compose(&spec, &p, &zero, &q).unwrap().value, &q) < 1e-12);
    }
    let exact = compose(&RealizationSpec::Maggiore, &p, &k, &q).unwrap();
    assert_eq!(exact.method, Method::Exact);
    let ode = compose_via(&RealizationSpec::Maggiore, &p, &k, &q, &Path::Ode { steps: 1000 }).unwrap();
    assert_eq!(ode.method, Method::Ode);
    assert!(dist(&exact.value, &ode.value) < 1e-9);
    assert!(matches!(
        compose_via(&RealizationSpec::Unit, &p, &k, &q, &Path::Exact),
        Err(kappa_snyder::Error::WrongRealization { .. })
    ));
}

#[test]
fn closed_cases_match_flow() {
    let (k, q) = (v(&[0.3, 0.5]), v(&[-0.2, 0.4]));
    let snyder = params(&[0.0, 0.0], 0.1);
    let mag = compose(&RealizationSpec::Maggiore, &snyder, &k, &q).unwrap().value;
    assert!(dist(&compose_closed(ClosedCase::SnyderMaggiore, &snyder, &k, &q).unwrap(), &mag) < 1e-12);
    let unit = compose(&RealizationSpec::Unit, &snyder, &k, &q).unwrap().value;
    assert!(dist(&compose_closed(ClosedCase::SnyderUnit, &snyder, &k, &q).unwrap(), &unit) < 1e-9);
    let kappa = params(&[0.2, 0.1], 0.0);
    let exact = compose(&RealizationSpec::Maggiore, &kappa, &k, &q).unwrap().value;
    assert!(dist(&compose_closed(ClosedCase::Kappa, &kappa, &k, &q).unwrap(), &exact) < 1e-12);
    assert!(compose_closed(ClosedCase::Kappa, &snyder, &k, &q).is_err());
    assert!(compose_closed(ClosedCase::SnyderUnit, &kappa, &k, &q).is_err());
}

#[test]
fn antipodes() {
    let k = v(&[0.3, 0.4]);
    let snyder = params(&[0.0, 0.0], 0.1);
    for spec in [RealizationSpec::Maggiore, RealizationSpec::Unit] {
        let s = antipode(&spec, &snyder, &k, 1e-12).unwrap();
        assert!(dist(&s.value, &v(&[-0.3, -0.4])) < 1e-12, "{spec}");
    }
    let p = params(&[0.1, 0.05], 0.05);
    let s = antipode(&RealizationSpec::Maggiore, &p, &k, 1e-12).unwrap();
    assert!(s.residual <= 1e-12 && s.mirror_residual <= 1e-12, "{s:?}");
}

#[test]
fn z_and_box_identities() {
    let p = params(&[0.15, 0.05, 0.0], 0.05);
    let k = v(&[0.4, -0.3, 0.6]);
    assert!(zinv_of_k(&p, &k).unwrap().gap() < 1e-10);
    assert!(box_of_k(&p, &k).unwrap().gap() < 1e-10);
    let zero = v(&[0.0; 3]);
    assert_eq!(zinv_of_k(&p, &zero).unwrap().left, 1.0);
    assert_eq!(box_of_k(&p, &zero).unwrap().left, 0.0);
}

#[test]
fn maggiore_series_reproduce_second_order_formulas() {
    let p = params(&[0.7, 0.3, -0.2], 0.4);
    let (k, q) = (v(&[0.4, 0.3, -0.5]), v(&[-0.2, 0.6, 0.3]));
    for quantity in [Quantity::Compose, Quantity::Kvec, Quantity::KvecInverse] {
        let formula = formula_table(quantity, 0.5, &p, &k, &q, 3).unwrap();
        let exact = exact_table(quantity, &p, &k, &q, 3).unwrap();
        let gaps = exact.gaps(&formula);
        assert!(gaps[..3].iter().all(|g| *g < 1e-14), "{quantity}: {gaps:?}");
        assert!(gaps[3] > 1e-6, "{quantity}: third order should differ");
    }
    let timelike = params(&[0.7, 0.0, 0.0], 0.4);
    let formula = formula_table(Quantity::Antipode, 0.5, &timelike, &k, &q, 3).unwrap();
    let exact = exact_table(Quantity::Antipode, &timelike, &k, &q, 3).unwrap();
    assert!(exact.gaps(&formula)[..3].iter().all(|g| *g < 1e-14));
}

#[test]
fn antipode_alternative_form_fails_at_second_order() {
    let p = params(&[0.5, 0.0, 0.0], 0.0);
    let k = v(&[0.4, 0.3, -0.5]);
    let derived = antipode_perturbative(&p, &k).unwrap();
    let alt = antipode_perturbative_alternative(&p, &k).unwrap();
    assert!(dist(&derived, &alt) > 1e-3);
    assert!(antipode_perturbative(&params(&[0.5, 0.1, 0.0], 0.0), &k).is_err());
}

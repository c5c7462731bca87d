use kappa_snyder::hopf_star::{star_plane_waves, PlaneWave};
use kappa_snyder::momentum::{self, DEFAULT_TOL};
use kappa_snyder::numerics::mink::lorentz_boost;
use kappa_snyder::numerics::scalar::{rat, real};
use kappa_snyder::numerics::series::{EpsSeries, Taylor};
use kappa_snyder::numerics::{DeformParams, MinkVec, Rational, RealizationSpec};
use kappa_snyder::weyl::{Coef, Exps, Monomial, Poly, WeylOp};
use proptest::prelude::*;

const N: usize = 3;

fn small() -> impl Strategy<Value = f64> {
    -0.5..0.5f64
}

fn momentum() -> impl Strategy<Value = MinkVec> {
    prop::collection::vec(small(), N).prop_map(|c| MinkVec::from_slice(&c).unwrap())
}

/// Timelike a with |a| ≤ 0.2 and s ∈ [−0.1, 0.1].
fn params() -> impl Strategy<Value = DeformParams> {
    (-0.2..0.2f64, -0.1..0.1f64).prop_map(|(a0, s)| DeformParams::new(MinkVec::from_slice(&[a0, 0.0, 0.0]).unwrap(), s))
}

fn spec() -> impl Strategy<Value = RealizationSpec> {
    prop_oneof![Just(RealizationSpec::Maggiore), Just(RealizationSpec::Unit)]
}

fn series(order: usize) -> impl Strategy<Value = EpsSeries<Rational>> {
    prop::collection::vec(-9i64..=9, order + 1).prop_map(|c| EpsSeries::from_coeffs(c.into_iter().map(|x| rat(x, 3)).collect()))
}

fn nonconstant(order: usize) -> impl Strategy<Value = EpsSeries<Rational>> {
    series(order).prop_map(|s| {
        let mut c = s.into_coeffs();
        c[0] = rat(0, 1);
        EpsSeries::from_coeffs(c)
    })
}

/// Sum of up to three random `c·X^α D^β` terms with |α|,|β| ≤ 1 in two dimensions.
fn weyl_op() -> impl Strategy<Value = WeylOp> {
    prop::collection::vec((0usize..3, 0usize..3, -3i64..=3), 1..4).prop_map(|terms| {
        let exps = |i: usize| if i < 2 { Exps::unit(i) } else { Exps::default() };
        WeylOp::from_terms(
            2,
            2,
            terms.into_iter().map(|(x, d, c)| (Monomial { x: exps(x), d: exps(d) }, Coef::constant(real(rat(c, 1)), 2))),
        )
    })
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u8..3, 0u8..3, -3i64..=3), 1..4).prop_map(|terms| {
        Poly::from_terms(
            2,
            2,
            terms.into_iter().map(|(i, j, c)| {
                let mut e = Exps::default();
                e.0[0] = i;
                e.0[1] = j;
                (e, Coef::constant(real(rat(c, 1)), 2))
            }),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_product_is_associative_and_commutative(a in series(4), b in series(4), c in series(4)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn series_reciprocal_inverts(a in nonconstant(4)) {
        let one = EpsSeries::one(4);
        let unit = &one + &a;
        prop_assert_eq!(&unit * &unit.recip().unwrap(), one);
    }

    #[test]
    fn sqrt_series_squares_back(a in nonconstant(5)) {
        let root = a.apply_analytic(&Taylor::sqrt_1p(6)).unwrap();
        prop_assert_eq!(&root * &root, &EpsSeries::one(5) + &a);
    }

    #[test]
    fn weyl_product_is_associative(a in weyl_op(), b in weyl_op(), c in weyl_op()) {
        let left = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        let right = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn weyl_action_is_a_representation(a in weyl_op(), b in weyl_op(), p in poly()) {
        let product = a.try_mul(&b).unwrap().act(&p).unwrap();
        let nested = a.act(&b.act(&p).unwrap()).unwrap();
        prop_assert!(product == nested);
    }

    #[test]
    fn composition_has_two_sided_unit(spec in spec(), par in params(), k in momentum()) {
        let zero = MinkVec::zero(N).unwrap();
        let l = momentum::compose(&spec, &par, &k, &zero).unwrap().value;
        let r = momentum::compose(&spec, &par, &zero, &k).unwrap().value;
        prop_assert!((&l - &k).norm() <= 1e-12);
        prop_assert!((&r - &k).norm() <= 1e-12);
    }

    #[test]
    fn kvec_inverse_round_trips(par in params(), k in momentum()) {
        let spec = RealizationSpec::Maggiore;
        let inv = momentum::kvec_inverse(&spec, &par, &k, DEFAULT_TOL).unwrap();
        let back = momentum::kvec(&spec, &par, &MinkVec::from_slice(&inv.x).unwrap()).unwrap();
        prop_assert!((&back - &k).norm() <= 1e-12);
    }

    #[test]
    fn antipode_cancels_on_both_sides(par in params(), k in momentum()) {
        let s = momentum::antipode(&RealizationSpec::Maggiore, &par, &k, DEFAULT_TOL).unwrap();
        prop_assert!(s.residual <= 1e-12 && s.mirror_residual <= 1e-12);
    }

    #[test]
    fn plane_wave_product_carries_composed_momentum(par in params(), k in momentum(), q in momentum()) {
        let spec = RealizationSpec::Maggiore;
        let (wave, _) = star_plane_waves(&spec, &par, &PlaneWave::unit(k.clone()), &PlaneWave::unit(q.clone())).unwrap();
        let d = momentum::compose(&spec, &par, &k, &q).unwrap().value;
        prop_assert!((&wave.momentum - &d).norm() <= 1e-14);
    }

    #[test]
    fn snyder_composition_is_lorentz_covariant(k in momentum(), q in momentum(), angle in -1.0..1.0f64, s in -0.1..0.1f64) {
        let par = DeformParams::new(MinkVec::zero(N).unwrap(), s);
        let spec = RealizationSpec::Maggiore;
        let lk = lorentz_boost(&k, angle, (0, 1)).unwrap();
        let lq = lorentz_boost(&q, angle, (0, 1)).unwrap();
        let lhs = momentum::compose(&spec, &par, &lk, &lq).unwrap().value;
        let rhs = lorentz_boost(&momentum::compose(&spec, &par, &k, &q).unwrap().value, angle, (0, 1)).unwrap();
        prop_assert!((&lhs - &rhs).norm() <= 1e-10);
    }

    #[test]
    fn boosts_preserve_the_square(k in momentum(), angle in -2.0..2.0f64, plane in (0usize..N, 1usize..N)) {
        let (mu, off) = plane;
        let nu = (mu + off) % N;
        let b = lorentz_boost(&k, angle, (mu, nu)).unwrap();
        prop_assert!((b.square() - k.square()).abs() <= 1e-12 * (1.0 + angle.cosh().powi(2)));
    }
}

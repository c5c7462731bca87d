//! Realizations of the deformed coordinates inside the Weyl algebra,
//!
//!   x̂_μ = X_μ φ + i(aX) D_μ − (a²−s)(XD) D_μ γ₂(B),   φ = −A + f(B),
//!
//! with A = i a·D and B = (a²−s) D², together with the Lorentz generators,
//! the shift operator Z, the generalized d'Alembertian, the inverse map and
//! the map to Snyder coordinates, plus exact verification of the defining
//! commutation relations.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::mink::{eta, MinkVec};
use crate::numerics::params::{DeformParams, RealizationSpec};
use crate::numerics::scalar::{i_unit, int, rat, real, CRational, Rational};
use crate::numerics::series::{EpsSeries, Taylor};
use crate::weyl::{Coef, WeylOp};

/// Number of Taylor coefficients of a function of B needed at order `order`
/// (B carries ε-grade 2).
pub fn taylor_len(order: usize) -> usize {
    order / 2 + 1
}

/// Taylor coefficients of γ₂(t) = −(1 + 2ff′)/(f − 2tf′), `len` terms.
pub fn gamma2_taylor(spec: &RealizationSpec, len: usize) -> Taylor<Rational> {
    let (f, _) = f_series(spec, len);
    let df = f.derivative();
    let t = EpsSeries::monomial(Rational::one(), 1, f.order());
    let two = EpsSeries::constant(int(2), f.order());
    let num = -(EpsSeries::one(f.order()) + &two * &f * &df);
    let den = &f - &two * &t * &df;
    let gamma = &num * &den.recip().expect("f(0) = 1 keeps the denominator invertible");
    Taylor::truncated(gamma.into_coeffs().into_iter().take(len).collect())
}

/// Taylor coefficients of 1/(f(t) − tγ₂(t)), `len` terms.
pub fn box_kernel_taylor(spec: &RealizationSpec, len: usize) -> Taylor<Rational> {
    let (f, order) = f_series(spec, len);
    let gamma = EpsSeries::from_coeffs(gamma2_taylor(spec, order + 1).coeffs);
    let den = &f - &gamma.times_var();
    let g = den.recip().expect("f(0) = 1 keeps the denominator invertible");
    Taylor::truncated(g.into_coeffs().into_iter().take(len).collect())
}

/// f as a t-series with one spare coefficient so that f′ is exact to `len`.
fn f_series(spec: &RealizationSpec, len: usize) -> (EpsSeries<Rational>, usize) {
    let order = len;
    let mut coeffs = spec.f_taylor(order + 1).coeffs;
    coeffs.resize(order + 1, Rational::zero());
    (EpsSeries::from_coeffs(coeffs), order)
}

fn complex(t: &Taylor<Rational>) -> Taylor<CRational> {
    t.map(real)
}

/// Random rational deformation parameters with small numerators, for
/// seeded verification sweeps.
pub fn sample_params(seed: u64, dim: usize) -> Result<DeformParams<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a: Vec<Rational> = (0..dim).map(|_| rat(rng.random_range(-4..=4), 20)).collect();
    let s = rat(rng.random_range(-10..=10), 100);
    Ok(DeformParams::new(MinkVec::new(a)?, s))
}

/// Which form of the Lorentz generators to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MMode {
    /// X_μD_ν − X_νD_μ.
    Coordinate,
    /// (x̂_μD_ν − x̂_νD_μ)·φ⁻¹.
    FromXhat,
}

/// All operators of one realization at a fixed truncation order.
#[derive(Clone, Debug)]
pub struct RealizedFrame {
    pub spec: RealizationSpec,
    pub params: DeformParams<Rational>,
    pub order: usize,
    pub x: Vec<WeylOp>,
    pub d: Vec<WeylOp>,
    /// A = i a·D.
    pub a_op: WeylOp,
    /// B = (a²−s) D².
    pub b_op: WeylOp,
    pub f_of_b: WeylOp,
    pub gamma2_of_b: WeylOp,
    /// φ = −A + f(B) and its inverse.
    pub phi: WeylOp,
    pub phi_inv: WeylOp,
    pub xhat: Vec<WeylOp>,
    /// Coordinate-mode generators, `m[μ][ν]`.
    pub m: Vec<Vec<WeylOp>>,
    pub box_op: WeylOp,
}

impl RealizedFrame {
    pub fn build(spec: RealizationSpec, params: DeformParams<Rational>, order: usize) -> Result<Self> {
        let n = params.dim();
        if n > crate::weyl::MAX_DIM {
            return Err(Error::DimensionMismatch { expected: crate::weyl::MAX_DIM, found: n });
        }
        if let RealizationSpec::CustomTaylor(c) = &spec {
            if c.first().map(|c0| !c0.is_one()).unwrap_or(true) {
                return Err(Error::InvalidRealization("f(0) must equal 1".into()));
            }
        }
        let x: Vec<WeylOp> = (0..n).map(|mu| WeylOp::x(n, order, mu)).collect();
        let d: Vec<WeylOp> = (0..n).map(|mu| WeylOp::d(n, order, mu)).collect();
        let frame = Frame { n, order, params: &params, x: &x, d: &d };

        let a_op = frame.contract_a(&d).scale_graded(&i_unit(), 0);
        let b_op = frame.d_squared().scale_graded(&real(params.c()), 2);
        let len = taylor_len(order);
        let f_of_b = b_op.apply_taylor(&complex(&spec.f_taylor(len)))?;
        let gamma2_of_b = b_op.apply_taylor(&complex(&gamma2_taylor(&spec, len)))?;
        let phi = &f_of_b - &a_op;
        let phi_inv = phi.recip()?;

        let ax = frame.contract_a(&x).scale_graded(&i_unit(), 0);
        let xd = frame.contract(&x, &d);
        let c = real(params.c());
        let xhat = (0..n)
            .map(|mu| {
                let t1 = &x[mu] * &phi;
                let t2 = &ax * &d[mu];
                let t3 = (&(&xd * &d[mu]) * &gamma2_of_b).scale_graded(&c, 2);
                &(&t1 + &t2) - &t3
            })
            .collect();

        let m = (0..n)
            .map(|mu| (0..n).map(|nu| &(&x[mu] * &d[nu]) - &(&x[nu] * &d[mu])).collect())
            .collect();

        let kernel = complex(&box_kernel_taylor(&spec, len + 1));
        let integrated = EpsSeries::from_coeffs(kernel.coeffs).integral();
        // G(t) = (1/t)∫₀ᵗ g, so that □ = D²·G(B)
        let g_coeffs: Vec<CRational> = integrated.coeffs().iter().skip(1).cloned().collect();
        let box_op = &frame.d_squared() * &b_op.apply_taylor(&Taylor::truncated(g_coeffs))?;

        Ok(Self { spec, params, order, x, d, a_op, b_op, f_of_b, gamma2_of_b, phi, phi_inv, xhat, m, box_op })
    }

    pub fn dim(&self) -> usize {
        self.params.dim()
    }

    fn frame(&self) -> Frame<'_> {
        Frame { n: self.dim(), order: self.order, params: &self.params, x: &self.x, d: &self.d }
    }

    /// Lorentz generators in either construction.
    pub fn build_m(&self, mode: MMode) -> Vec<Vec<WeylOp>> {
        match mode {
            MMode::Coordinate => self.m.clone(),
            MMode::FromXhat => {
                let n = self.dim();
                (0..n)
                    .map(|mu| {
                        (0..n)
                            .map(|nu| {
                                let raw = &(&self.xhat[mu] * &self.d[nu]) - &(&self.xhat[nu] * &self.d[mu]);
                                &raw * &self.phi_inv
                            })
                            .collect()
                    })
                    .collect()
            }
        }
    }

    /// (Z, Z⁻¹) with Z⁻¹ = −A + √(1−B); only the Maggiore realization has it.
    pub fn build_z(&self) -> Result<(WeylOp, WeylOp)> {
        if !self.spec.is_maggiore() {
            return Err(Error::WrongRealization { required: "maggiore", found: self.spec.to_string() });
        }
        Ok((self.phi_inv.clone(), self.phi.clone()))
    }

    /// X_μ rebuilt from x̂ through the inverse realization,
    /// [x̂_μ − i(ax̂)hD_μ + (a²−s)(x̂D)hD_μγ₂]φ⁻¹ with h = 1/(f − Bγ₂).
    pub fn build_inverse(&self) -> Result<Vec<WeylOp>> {
        let n = self.dim();
        let frame = self.frame();
        let h = self.b_op.apply_taylor(&complex(&box_kernel_taylor(&self.spec, taylor_len(self.order))))?;
        let axhat = frame.contract_a(&self.xhat).scale_graded(&i_unit(), 0);
        let xhat_d = frame.contract(&self.xhat, &self.d);
        let c = real(self.params.c());
        Ok((0..n)
            .map(|mu| {
                let hd = &h * &self.d[mu];
                let t2 = &axhat * &hd;
                let t3 = (&(&xhat_d * &hd) * &self.gamma2_of_b).scale_graded(&c, 2);
                &(&(&self.xhat[mu] - &t2) + &t3) * &self.phi_inv
            })
            .collect())
    }

    /// x̃_μ = x̂_μ − i a^α M_αμ.
    pub fn snyder_map(&self) -> Vec<WeylOp> {
        let n = self.dim();
        (0..n)
            .map(|mu| {
                let mut out = self.xhat[mu].clone();
                for alpha in 0..n {
                    let coeff = -i_unit() * real(self.params.a.upper(alpha));
                    out = &out + &self.m[alpha][mu].scale_graded(&coeff, 1);
                }
                out
            })
            .collect()
    }

    /// The closed representation X_μ f(B) − (a²−s)(XD)D_μγ₂ of x̃_μ.
    pub fn snyder_representation(&self) -> Vec<WeylOp> {
        let frame = self.frame();
        let xd = frame.contract(&self.x, &self.d);
        let c = real(self.params.c());
        (0..self.dim())
            .map(|mu| {
                let t3 = (&(&xd * &self.d[mu]) * &self.gamma2_of_b).scale_graded(&c, 2);
                &(&self.x[mu] * &self.f_of_b) - &t3
            })
            .collect()
    }

    /// a_μ as an ε-grade-1 coefficient.
    fn a_coef(&self, mu: usize) -> Coef {
        Coef::monomial(real(self.params.a[mu].clone()), 1, self.order)
    }

    fn s_coef(&self) -> Coef {
        Coef::monomial(real(self.params.s.clone()), 2, self.order)
    }

    fn eta_op(&self, op: &WeylOp, mu: usize, nu: usize) -> WeylOp {
        if mu != nu {
            WeylOp::zero(self.dim(), self.order)
        } else {
            op.scale_graded(&real(int(eta(mu))), 0)
        }
    }
}

/// Shared index helpers for building contractions.
struct Frame<'a> {
    n: usize,
    order: usize,
    params: &'a DeformParams<Rational>,
    x: &'a [WeylOp],
    d: &'a [WeylOp],
}

impl Frame<'_> {
    /// Σ_α a^α v_α at ε-grade 1.
    fn contract_a(&self, v: &[WeylOp]) -> WeylOp {
        let mut out = WeylOp::zero(self.n, self.order);
        for (alpha, op) in v.iter().enumerate() {
            let a = self.params.a.upper(alpha);
            if !a.is_zero() {
                out = &out + &op.scale_graded(&real(a), 1);
            }
        }
        out
    }

    /// Σ_α u^α v_α.
    fn contract(&self, u: &[WeylOp], v: &[WeylOp]) -> WeylOp {
        let mut out = WeylOp::zero(self.n, self.order);
        for alpha in 0..self.n {
            out = &out + &(&u[alpha] * &v[alpha]).scale_graded(&real(int(eta(alpha))), 0);
        }
        out
    }

    fn d_squared(&self) -> WeylOp {
        let _ = self.x;
        self.contract(self.d, self.d)
    }
}

/// Result of checking one family of relations.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub relation: &'static str,
    /// Number of index combinations evaluated.
    pub count: usize,
    /// Largest coefficient magnitude over all residuals.
    pub max_abs: f64,
    /// First index combination with a nonzero residual.
    pub first_nonzero: Option<Vec<usize>>,
}

impl RelationCheck {
    pub fn is_zero(&self) -> bool {
        self.first_nonzero.is_none()
    }

    fn from_residuals(relation: &'static str, residuals: Vec<(Vec<usize>, WeylOp)>) -> Self {
        let count = residuals.len();
        let max_abs = residuals.iter().map(|(_, r)| r.max_abs_coeff()).fold(0.0, f64::max);
        let first_nonzero = residuals.into_iter().find(|(_, r)| !r.is_zero()).map(|(idx, _)| idx);
        Self { relation, count, max_abs, first_nonzero }
    }
}

/// Outcome of an identity sweep.
#[derive(Clone, Debug)]
pub struct AlgebraReport {
    pub checks: Vec<RelationCheck>,
}

impl AlgebraReport {
    pub fn all_zero(&self) -> bool {
        self.checks.iter().all(RelationCheck::is_zero)
    }

    pub fn max_abs(&self) -> f64 {
        self.checks.iter().map(|c| c.max_abs).fold(0.0, f64::max)
    }

    pub fn get(&self, relation: &str) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| c.relation == relation)
    }

    /// Fails with the first nonzero residual and its indices.
    pub fn ensure_zero(&self) -> Result<()> {
        match self.checks.iter().find(|c| !c.is_zero()) {
            None => Ok(()),
            Some(c) => Err(Error::NonzeroResidual {
                relation: c.relation.to_string(),
                indices: c.first_nonzero.clone().unwrap_or_default(),
            }),
        }
    }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|mu| (mu + 1..n).map(move |nu| (mu, nu))).collect()
}

type Check = fn(&RealizedFrame) -> Vec<(Vec<usize>, WeylOp)>;

fn check_xx(fr: &RealizedFrame) -> Vec<(Vec<usize>, WeylOp)> {
    let i = i_unit();
    pairs(fr.dim())
        .into_iter()
        .map(|(mu, nu)| {
            let lhs = &fr.xhat[mu] * &fr.xhat[nu] - &fr.xhat[nu] * &fr.xhat[mu];
            let kappa = (&fr.xhat[nu].scale(&fr.a_coef(mu)) - &fr.xhat[mu].scale(&fr.a_coef(nu))).scale_graded(&i, 0);
            let snyder = fr.m[mu][nu].scale(&fr.s_coef());
            (vec![mu, nu], &(&lhs - &kappa) - &snyder)
        })
        .collect()
}

fn m_commutator_rhs(fr: &RealizedFrame, m: &[Vec<WeylOp>], mu: usize, nu: usize, la: usize, rho: usize) -> WeylOp {
    let t1 = fr.eta_op(&m[mu][rho], nu, la);
    let t2 = fr.eta_op(&m[nu][rho], mu, la);
    let t3 = fr.eta_op(&m[mu][la], nu, rho);
    let t4 = fr.eta_op(&m[nu][la], mu, rho);
    &(&(&t1 - &t2) - &t3) + &t4
}

fn check_mm(fr: &RealizedFrame) -> Vec<(Vec<usize>, WeylOp)> {
    let planes = pairs(fr.dim());
    let mut out = Vec::new();
    for &(mu, nu) in &planes {
        for &(la, rho) in &planes {
            let lhs = fr.m[mu][nu].commutator(&fr.m[la][rho]).expect("same frame");
            out.push((vec![mu, nu, la, rho], &lhs - &m_commutator_rhs(fr, &fr.m, mu, nu, la, rho)));
        }
    }
    out
}

fn check_mx(fr: &RealizedFrame) -> Vec<(Vec<usize>, WeylOp)> {
    let n = fr.dim();
    let i = i_unit();
    let mut out = Vec::new();
    for (mu, nu) in pairs(n) {
        for la in 0..n {
            let lhs = fr.m[mu][nu].commutator(&fr.xhat[la]).expect("same frame");
            let lorentz = &fr.eta_op(&fr.xhat[mu], nu, la) - &fr.eta_op(&fr.xhat[nu], mu, la);
            let kappa =
                (&fr.m[nu][la].scale(&fr.a_coef(mu)) - &fr.m[mu][la].scale(&fr.a_coef(nu))).scale_graded(&i, 0);
            out.push((vec![mu, nu, la], &(&lhs - &lorentz) + &kappa));
        }
    }
    out
}

fn check_dd(fr: &RealizedFrame) -> Vec<(Vec<usize>, WeylOp)> {
    pairs(fr.dim())
        .into_iter()
        .map(|(mu, nu)| (vec![mu, nu], fr.d[mu].commutator(&fr.d[nu]).expect("same frame")))
        .collect()
}

fn check_md(fr: &RealizedFrame) -> Vec<(Vec<usize>, WeylOp)> {
    let n = fr.dim();
    let mut out = Vec::new();
    for (mu, nu) in pairs(n) {
        for la in 0..n {
            let lhs = fr.m[mu][nu].commutator(&fr.d[la]).expect("same frame");
            let rhs = &fr.eta_op(&fr.d[mu], nu, la) - &fr.eta_op(&fr.d[nu], mu, la);
            out.push((vec![mu, nu, la], &lhs - &rhs));
        }
    }
    out
}

fn check_dx(fr: &RealizedFrame) -> Vec<(Vec<usize>, WeylOp)> {
    let n = fr.dim();
    let c = real(fr.params.c());
    let mut out = Vec::new();
    for mu in 0..n {
        for nu in 0..n {
            let lhs = fr.d[mu].commutator(&fr.xhat[nu]).expect("same frame");
            let t1 = fr.eta_op(&fr.phi, mu, nu);
            let t2 = fr.d[nu].scale(&fr.a_coef(mu)).scale_graded(&i_unit(), 0);
            let t3 = (&(&fr.d[mu] * &fr.d[nu]) * &fr.gamma2_of_b).scale_graded(&c, 2);
            out.push((vec![mu, nu], &lhs - &(&(&t1 + &t2) - &t3)));
        }
    }
    out
}

fn check_trilinear(fr: &RealizedFrame) -> Vec<(Vec<usize>, WeylOp)> {
    let n = fr.dim();
    let mut out = Vec::new();
    for (mu, nu) in pairs(n) {
        let inner = fr.xhat[mu].commutator(&fr.xhat[nu]).expect("same frame");
        for la in 0..n {
            let lhs = inner.commutator(&fr.xhat[la]).expect("same frame");
            let kappa = (&fr.xhat[nu].scale(&fr.a_coef(mu)) - &fr.xhat[mu].scale(&fr.a_coef(nu))).scale(&fr.a_coef(la));
            let snyder =
                (&fr.eta_op(&fr.xhat[mu], nu, la) - &fr.eta_op(&fr.xhat[nu], mu, la)).scale(&fr.s_coef());
            out.push((vec![mu, nu, la], &lhs - &(&kappa + &snyder)));
        }
    }
    out
}

/// Generators x̂_μ, M_μν (μ<ν) and D_μ with their index labels.
fn generators(fr: &RealizedFrame) -> Vec<(Vec<usize>, &WeylOp)> {
    let n = fr.dim();
    let mut gens: Vec<(Vec<usize>, &WeylOp)> = (0..n).map(|mu| (vec![0, mu], &fr.xhat[mu])).collect();
    gens.extend(pairs(n).into_iter().map(|(mu, nu)| (vec![1, mu, nu], &fr.m[mu][nu])));
    gens.extend((0..n).map(|mu| (vec![2, mu], &fr.d[mu])));
    gens
}

fn check_jacobi(fr: &RealizedFrame) -> Vec<(Vec<usize>, WeylOp)> {
    let gens = generators(fr);
    let g = gens.len();
    let pair_list: Vec<(usize, usize)> = pairs(g);
    let brackets: Vec<WeylOp> =
        pair_list.par_iter().map(|&(i, j)| gens[i].1.commutator(gens[j].1).expect("same frame")).collect();
    let bracket = |i: usize, j: usize| -> WeylOp {
        // position of (i, j), i < j, in the row-major pair list
        let idx = i * g - i * (i + 1) / 2 + (j - i - 1);
        brackets[idx].clone()
    };
    let triples: Vec<(usize, usize, usize)> =
        (0..g).flat_map(|i| (i + 1..g).flat_map(move |j| (j + 1..g).map(move |k| (i, j, k)))).collect();
    triples
        .par_iter()
        .map(|&(i, j, k)| {
            let (a, b, c) = (gens[i].1, gens[j].1, gens[k].1);
            // [[a,b],c] + [[b,c],a] + [[c,a],b] with [c,a] = −[a,c]
            let t1 = bracket(i, j).commutator(c).expect("same frame");
            let t2 = bracket(j, k).commutator(a).expect("same frame");
            let t3 = bracket(i, k).commutator(b).expect("same frame");
            let mut label = gens[i].0.clone();
            label.extend(&gens[j].0);
            label.extend(&gens[k].0);
            (label, &(&t1 + &t2) - &t3)
        })
        .collect()
}

fn check_box_x(fr: &RealizedFrame) -> Vec<(Vec<usize>, WeylOp)> {
    (0..fr.dim())
        .map(|mu| {
            let lhs = fr.box_op.commutator(&fr.xhat[mu]).expect("same frame");
            (vec![mu], &lhs - &fr.d[mu].scale_graded(&real(int(2)), 0))
        })
        .collect()
}

fn check_m_box(fr: &RealizedFrame) -> Vec<(Vec<usize>, WeylOp)> {
    pairs(fr.dim())
        .into_iter()
        .map(|(mu, nu)| (vec![mu, nu], fr.m[mu][nu].commutator(&fr.box_op).expect("same frame")))
        .collect()
}

fn check_z(fr: &RealizedFrame) -> Vec<(Vec<usize>, WeylOp)> {
    let (z, zinv) = fr.build_z().expect("caller checked the realization");
    let n = fr.dim();
    let i = i_unit();
    let s = fr.s_coef();
    let mut out = vec![(vec![], &(&z * &zinv) - &WeylOp::one(n, fr.order))];
    let z2 = &z * &z;
    for mu in 0..n {
        let a_mu = fr.a_coef(mu);
        let lhs = zinv.commutator(&fr.xhat[mu]).expect("same frame");
        let rhs = &zinv.scale(&a_mu).scale_graded(&-i.clone(), 0) + &fr.d[mu].scale(&s);
        out.push((vec![0, mu], &lhs - &rhs));

        let lhs = z.commutator(&fr.xhat[mu]).expect("same frame");
        let rhs = &z.scale(&a_mu).scale_graded(&i, 0) - &(&fr.d[mu] * &z2).scale(&s);
        out.push((vec![1, mu], &lhs - &rhs));

        out.push((vec![2, mu], z.commutator(&fr.d[mu]).expect("same frame")));
    }
    for (mu, nu) in pairs(n) {
        let lhs = &(&fr.xhat[mu] * &z) * &fr.xhat[nu];
        let rhs = &(&fr.xhat[nu] * &z) * &fr.xhat[mu];
        out.push((vec![3, mu, nu], &lhs - &rhs));

        let lhs = zinv.commutator(&fr.m[mu][nu]).expect("same frame");
        let rhs = (&fr.d[nu].scale(&fr.a_coef(mu)) - &fr.d[mu].scale(&fr.a_coef(nu))).scale_graded(&-i.clone(), 0);
        out.push((vec![4, mu, nu], &lhs - &rhs));
    }
    out
}

/// Checks every defining relation of the extended algebra as an exact
/// operator identity: [x̂,x̂], [M,M], [M,x̂], [D,D], [M,D], [D,x̂], the
/// trilinear relation, Jacobi identities over {x̂, M, D}, [□,x̂] = 2D,
/// [M,□] = 0 and, for the Maggiore realization, the Z relations.
pub fn verify_algebra(frame: &RealizedFrame) -> AlgebraReport {
    let mut checks: Vec<(&'static str, Check)> = vec![
        ("xx", check_xx),
        ("MM", check_mm),
        ("Mx", check_mx),
        ("DD", check_dd),
        ("MD", check_md),
        ("Dx", check_dx),
        ("trilinear", check_trilinear),
        ("jacobi", check_jacobi),
        ("box_x", check_box_x),
        ("M_box", check_m_box),
    ];
    if frame.spec.is_maggiore() {
        checks.push(("Z", check_z));
    }
    let checks = checks
        .par_iter()
        .map(|(name, check)| RelationCheck::from_residuals(name, check(frame)))
        .collect();
    AlgebraReport { checks }
}

/// Consistency checks between derived operators: both forms of M, the
/// inverse-realization round trip, and the Snyder map.
pub fn verify_derived(frame: &RealizedFrame) -> Result<AlgebraReport> {
    let n = frame.dim();
    let mut checks = Vec::new();

    let m_alt = frame.build_m(MMode::FromXhat);
    let mut residuals = Vec::new();
    for (mu, nu) in pairs(n) {
        residuals.push((vec![mu, nu], &m_alt[mu][nu] - &frame.m[mu][nu]));
    }
    if frame.spec.is_maggiore() {
        let (z, _) = frame.build_z()?;
        for (mu, nu) in pairs(n) {
            let via_z = &(&(&frame.xhat[mu] * &frame.d[nu]) - &(&frame.xhat[nu] * &frame.d[mu])) * &z;
            residuals.push((vec![mu, nu, 1], &via_z - &frame.m[mu][nu]));
        }
    }
    checks.push(RelationCheck::from_residuals("M_modes", residuals));

    let inverse = frame.build_inverse()?;
    let residuals = (0..n).map(|mu| (vec![mu], &inverse[mu] - &frame.x[mu])).collect();
    checks.push(RelationCheck::from_residuals("inverse", residuals));

    checks.extend(verify_snyder(frame).checks);
    Ok(AlgebraReport { checks })
}

/// [x̃_μ,x̃_ν] = (s−a²)M_μν, [M_μν,x̃_λ] = η_νλx̃_μ − η_μλx̃_ν, and x̃ equal to
/// its closed representation.
pub fn verify_snyder(frame: &RealizedFrame) -> AlgebraReport {
    let n = frame.dim();
    let xt = frame.snyder_map();
    let s_minus_a2 = real(-frame.params.c());

    let comm = pairs(n)
        .into_par_iter()
        .map(|(mu, nu)| {
            let lhs = xt[mu].commutator(&xt[nu]).expect("same frame");
            (vec![mu, nu], &lhs - &frame.m[mu][nu].scale_graded(&s_minus_a2, 2))
        })
        .collect();

    let lorentz = pairs(n)
        .into_par_iter()
        .flat_map_iter(|(mu, nu)| {
            let xt = &xt;
            (0..n).map(move |la| {
                let lhs = frame.m[mu][nu].commutator(&xt[la]).expect("same frame");
                let rhs = &frame.eta_op(&xt[mu], nu, la) - &frame.eta_op(&xt[nu], mu, la);
                (vec![mu, nu, la], &lhs - &rhs)
            })
        })
        .collect();

    let repr = frame.snyder_representation();
    let same = (0..n).map(|mu| (vec![mu], &xt[mu] - &repr[mu])).collect();

    AlgebraReport {
        checks: vec![
            RelationCheck::from_residuals("snyder_xx", comm),
            RelationCheck::from_residuals("snyder_Mx", lorentz),
            RelationCheck::from_residuals("snyder_repr", same),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: &[(i64, i64)], s: (i64, i64)) -> DeformParams<Rational> {
        let a = a.iter().map(|&(p, q)| rat(p, q)).collect();
        DeformParams::new(MinkVec::new(a).unwrap(), rat(s.0, s.1))
    }

    #[test]
    fn gamma2_special_cases() {
        let zero = gamma2_taylor(&RealizationSpec::Maggiore, 5);
        assert!(zero.coeffs.iter().all(Zero::is_zero));
        let unit = gamma2_taylor(&RealizationSpec::Unit, 5);
        assert_eq!(unit.coeffs[0], int(-1));
        assert!(unit.coeffs[1..].iter().all(Zero::is_zero));
    }

    #[test]
    fn gamma2_general_u_matches_substitution() {
        // −(1 − 2u + 2u²t)/(1 + ut) = −(1−2u) − (2u² − u(1−2u)) t + …
        let u = rat(1, 3);
        let spec = RealizationSpec::GeneralU(u.clone());
        let g = gamma2_taylor(&spec, 4);
        let one = int(1);
        let two = int(2);
        let c0 = -(&one - &two * &u);
        let c1 = -(&two * &u * &u) + &u * (&one - &two * &u);
        assert_eq!(g.coeffs[0], c0);
        assert_eq!(g.coeffs[1], c1);
        // the next one: series of −(1−2u+2u²t)Σ(−ut)^m
        let c2 = -(&two * &u * &u * -&u) - (&one - &two * &u) * &u * &u;
        assert_eq!(g.coeffs[2], c2);
    }

    #[test]
    fn undeformed_limit() {
        let fr = RealizedFrame::build(RealizationSpec::Maggiore, DeformParams::undeformed(2).unwrap(), 2).unwrap();
        assert_eq!(fr.xhat, fr.x);
        assert_eq!(fr.box_op, &(&fr.d[1] * &fr.d[1]) - &(&fr.d[0] * &fr.d[0]));
        let report = verify_algebra(&fr);
        assert!(report.all_zero(), "{report:?}");
    }

    #[test]
    fn unit_snyder_realization() {
        // a = 0: x̂_μ = X_μ − s(XD)D_μ
        let p = params(&[(0, 1), (0, 1)], (1, 7));
        let fr = RealizedFrame::build(RealizationSpec::Unit, p, 2).unwrap();
        let s = real(rat(1, 7));
        for mu in 0..2 {
            let xd = &(&fr.x[0] * &fr.d[0]).scale_graded(&real(int(-1)), 0) + &(&fr.x[1] * &fr.d[1]);
            let expect = &fr.x[mu] - &(&xd * &fr.d[mu]).scale_graded(&s, 2);
            assert_eq!(fr.xhat[mu], expect);
        }
    }

    #[test]
    fn maggiore_snyder_realization() {
        // a = 0: x̂_μ = X_μ√(1 + sD²)
        let p = params(&[(0, 1), (0, 1)], (-2, 9));
        let fr = RealizedFrame::build(RealizationSpec::Maggiore, p, 4).unwrap();
        let sd2 = fr.box_op.grade_zero_part().scale_graded(&real(rat(-2, 9)), 2);
        let root = sd2.scale_graded(&real(int(-1)), 0).apply_taylor(&Taylor::sqrt_1m(3)).unwrap();
        for mu in 0..2 {
            assert_eq!(fr.xhat[mu], &fr.x[mu] * &root);
        }
    }

    #[test]
    fn box_maggiore_closed_form() {
        // □ = 2(1 − √(1−B))/(a²−s) = D²(1 + B/4 + B²/8 + …)
        let p = params(&[(1, 10), (1, 5)], (1, 50));
        let fr = RealizedFrame::build(RealizationSpec::Maggiore, p, 4).unwrap();
        let d2 = fr.box_op.grade_zero_part();
        let b = &fr.b_op;
        let expect = &d2 * &(&(&WeylOp::one(2, 4) + &b.scale_graded(&real(rat(1, 4)), 0)) + &(b * b).scale_graded(&real(rat(1, 8)), 0));
        assert_eq!(fr.box_op, expect);
    }

    #[test]
    fn small_frame_identities() {
        for spec in [RealizationSpec::Maggiore, RealizationSpec::Unit, RealizationSpec::GeneralU(rat(1, 3))] {
            let p = params(&[(1, 10), (-1, 20)], (1, 30));
            let fr = RealizedFrame::build(spec.clone(), p, 3).unwrap();
            let report = verify_algebra(&fr);
            report.ensure_zero().unwrap_or_else(|e| panic!("{spec}: {e}"));
            let derived = verify_derived(&fr).unwrap();
            derived.ensure_zero().unwrap_or_else(|e| panic!("{spec}: {e}"));
        }
    }

    #[test]
    fn z_only_for_maggiore() {
        let fr = RealizedFrame::build(RealizationSpec::Unit, DeformParams::undeformed(2).unwrap(), 2).unwrap();
        assert!(matches!(fr.build_z(), Err(Error::WrongRealization { .. })));
        let fr = RealizedFrame::build(RealizationSpec::Maggiore, DeformParams::undeformed(2).unwrap(), 2).unwrap();
        let (z, _) = fr.build_z().unwrap();
        assert_eq!(z, WeylOp::one(2, 2));
    }

    #[test]
    fn broken_realization_is_caught() {
        // replacing γ₂ by zero in the unit realization must violate [x̂,x̂]
        let p = params(&[(1, 10), (0, 1)], (1, 10));
        let mut fr = RealizedFrame::build(RealizationSpec::Unit, p, 3).unwrap();
        let ax = fr.frame().contract_a(&fr.x).scale_graded(&i_unit(), 0);
        fr.xhat = (0..2).map(|mu| &(&fr.x[mu] * &fr.phi) + &(&ax * &fr.d[mu])).collect();
        let err = verify_algebra(&fr).ensure_zero().unwrap_err();
        assert!(matches!(err, Error::NonzeroResidual { .. }));
    }
}

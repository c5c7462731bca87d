//! Star products of plane waves and polynomials, the associator, nested
//! compositions and the Leibniz rule for Lorentz generators.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::momentum::{self, exact, field::dot, ComposeResult, Path};
use crate::numerics::scalar::{i_unit, int, real};
use crate::numerics::{eta, lorentz_boost, CRational, DeformParams, MinkVec, Rational, RealizationSpec};
use crate::weyl::{Coef, Exps, Poly};

/// Amplitude times e^{ikX}.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneWave {
    pub momentum: MinkVec,
    pub amplitude: Complex64,
}

impl PlaneWave {
    pub fn new(momentum: MinkVec, amplitude: Complex64) -> Self {
        Self { momentum, amplitude }
    }

    pub fn unit(momentum: MinkVec) -> Self {
        Self::new(momentum, Complex64::one())
    }
}

/// e^{ikX} ⋆ e^{iqX} = e^{iD(k,q)X}, amplitudes multiplied.
pub fn star_plane_waves(spec: &RealizationSpec, params: &DeformParams, f: &PlaneWave, g: &PlaneWave) -> Result<(PlaneWave, ComposeResult)> {
    star_plane_waves_via(spec, params, f, g, &Path::for_spec(spec))
}

pub fn star_plane_waves_via(
    spec: &RealizationSpec,
    params: &DeformParams,
    f: &PlaneWave,
    g: &PlaneWave,
    path: &Path,
) -> Result<(PlaneWave, ComposeResult)> {
    let composed = momentum::compose_via(spec, params, &f.momentum, &g.momentum, path)?;
    Ok((PlaneWave::new(composed.value.clone(), f.amplitude * g.amplitude), composed))
}

/// Commutative polynomial in (X, ∂_Y, ∂_Z).
#[derive(Clone, Debug)]
struct Bidiff {
    order: usize,
    terms: BTreeMap<(Exps, Exps, Exps), Coef>,
}

impl Bidiff {
    fn zero(order: usize) -> Self {
        Self { order, terms: BTreeMap::new() }
    }

    fn term(order: usize, key: (Exps, Exps, Exps), c: Coef) -> Self {
        let mut out = Self::zero(order);
        out.push(key, c);
        out
    }

    fn constant(order: usize, c: CRational, grade: usize) -> Self {
        Self::term(order, Default::default(), Coef::monomial(c, grade, order))
    }

    fn push(&mut self, key: (Exps, Exps, Exps), c: Coef) {
        let entry = self.terms.entry(key).or_insert_with(|| Coef::zero(self.order));
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.push(*k, c.clone());
        }
        out
    }

    fn neg(&self) -> Self {
        Self { order: self.order, terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.order);
        for ((x1, y1, z1), c1) in &self.terms {
            for ((x2, y2, z2), c2) in &other.terms {
                let c = c1 * c2;
                if !c.is_zero() {
                    out.push((x1.plus(x2), y1.plus(y2), z1.plus(z2)), c);
                }
            }
        }
        out
    }

    fn scale(&self, c: &CRational) -> Self {
        let c = Coef::constant(c.clone(), self.order);
        Self { order: self.order, terms: self.terms.iter().map(|(k, v)| (*k, v * &c)).collect() }
    }
}

fn bidiff_dot(u: &[Bidiff], v: &[Bidiff]) -> Bidiff {
    let mut acc = u[0].mul(&v[0]).neg();
    for (x, y) in u.iter().zip(v).skip(1) {
        acc = acc.add(&x.mul(y));
    }
    acc
}

/// C(k, q) = D(k, q) − k − q from the second-order law at parameter u, with
/// k = −i∂_Y and q = −i∂_Z.
fn composition_correction(u: &Rational, params: &DeformParams<Rational>, order: usize) -> Vec<Bidiff> {
    let n = params.dim();
    let minus_i = -i_unit();
    let half = real(Rational::new(1.into(), 2.into()));
    let k: Vec<Bidiff> = (0..n).map(|mu| Bidiff::term(order, (Exps::default(), Exps::unit(mu), Exps::default()), Coef::constant(minus_i.clone(), order))).collect();
    let q: Vec<Bidiff> = (0..n).map(|mu| Bidiff::term(order, (Exps::default(), Exps::default(), Exps::unit(mu)), Coef::constant(minus_i.clone(), order))).collect();
    let a: Vec<Bidiff> = params.a.components().iter().map(|v| Bidiff::constant(order, real(v.clone()), 1)).collect();
    let s = Bidiff::constant(order, real(params.s.clone()), 2);
    let u = real(u.clone());
    let one = real(int(1));
    let a2 = bidiff_dot(&a, &a);
    let c = a2.sub(&s);
    let (kq, kk, qq, ak, aq) = (bidiff_dot(&k, &q), bidiff_dot(&k, &k), bidiff_dot(&q, &q), bidiff_dot(&a, &k), bidiff_dot(&a, &q));
    let two_u = &u + &u;
    // q-coefficient: −(1−2u)c[(kq) + ½k²]
    let q_coef = c.mul(&kq.add(&kk.scale(&half))).scale(&-(&one - &two_u));
    // k-coefficient: (aq) + uc q² − ½a²(kq) − ½(1−4u)c(kq)
    let four_u = &two_u + &two_u;
    let k_coef = aq
        .add(&c.mul(&qq).scale(&u))
        .sub(&a2.mul(&kq).scale(&half))
        .sub(&c.mul(&kq).scale(&(&half * &(&one - &four_u))));
    // a-coefficient: (kq)(ak) − (kq) − ½(aq)k²
    let a_coef = kq.mul(&ak).sub(&kq).sub(&bidiff_dot(&a, &q).mul(&kk).scale(&half));
    (0..n).map(|mu| q[mu].mul(&q_coef).add(&k[mu].mul(&k_coef)).add(&a[mu].mul(&a_coef))).collect()
}

fn poly_pow_derivative(p: &Poly, exps: &Exps) -> Poly {
    let mut out = p.clone();
    for (mu, &e) in exps.0.iter().enumerate() {
        for _ in 0..e {
            out = out.derivative(mu);
        }
    }
    out
}

/// f ⋆ g from the bidifferential form exp(iX_α C^α(−i∂_Y, −i∂_Z)) f(Y)g(Z)|_{Y=Z=X},
/// with C the second-order correction to the composition law at parameter u.
/// The truncation order is taken from `f` and must be at most 2.
pub fn star_poly(f: &Poly, g: &Poly, u: &Rational, params: &DeformParams<Rational>) -> Result<Poly> {
    let (order, dim) = (f.order(), f.dim());
    if g.order() != order {
        return Err(Error::OrderMismatch { left: order, right: g.order() });
    }
    if g.dim() != dim || params.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: if g.dim() != dim { g.dim() } else { params.dim() } });
    }
    if order > 2 {
        return Err(Error::InvalidInput(format!("polynomial star product is available to order 2, asked for {order}")));
    }
    let correction = composition_correction(u, params, order);
    let mut exponent = Bidiff::zero(order);
    for (alpha, c) in correction.iter().enumerate() {
        let x = Bidiff::term(order, (Exps::unit(alpha), Exps::default(), Exps::default()), Coef::constant(i_unit() * real(int(eta(alpha))), order));
        exponent = exponent.add(&x.mul(c));
    }
    // every term of the exponent has grade ≥ 1, so the series stops at `order`
    let mut series = Bidiff::term(order, Default::default(), Coef::one(order));
    let mut power = series.clone();
    let mut factorial = Rational::one();
    for j in 1..=order {
        power = power.mul(&exponent);
        factorial *= int(j as i64);
        series = series.add(&power.scale(&real(factorial.recip())));
    }
    let mut out = Poly::zero(dim, order);
    for ((x, y, z), c) in &series.terms {
        let fy = poly_pow_derivative(f, y);
        let gz = poly_pow_derivative(g, z);
        if fy.is_zero() || gz.is_zero() {
            continue;
        }
        let xc = Poly::from_terms(dim, order, [(*x, c.clone())]);
        out = &out + &(&(&xc * &fy) * &gz);
    }
    Ok(out)
}

/// D(p, D(k, q)) − D(D(p, k), q).
pub fn associator_defect(spec: &RealizationSpec, params: &DeformParams, p: &MinkVec, k: &MinkVec, q: &MinkVec) -> Result<MinkVec> {
    let right = compose_nested(spec, params, &[p.clone(), k.clone(), q.clone()], &Bracketing::right_comb(3))?;
    let left = compose_nested(spec, params, &[p.clone(), k.clone(), q.clone()], &Bracketing::left_comb(3))?;
    right.try_sub(&left)
}

/// A binary bracketing of momenta referenced by position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bracketing {
    Leaf(usize),
    Node(Box<Bracketing>, Box<Bracketing>),
}

impl Bracketing {
    /// 0 ⊕ (1 ⊕ (2 ⊕ …)).
    pub fn right_comb(n: usize) -> Self {
        let mut tree = Self::Leaf(n.saturating_sub(1));
        for i in (0..n.saturating_sub(1)).rev() {
            tree = Self::Node(Box::new(Self::Leaf(i)), Box::new(tree));
        }
        tree
    }

    /// ((0 ⊕ 1) ⊕ 2) ⊕ ….
    pub fn left_comb(n: usize) -> Self {
        let mut tree = Self::Leaf(0);
        for i in 1..n {
            tree = Self::Node(Box::new(tree), Box::new(Self::Leaf(i)));
        }
        tree
    }

    fn leaves(&self, out: &mut Vec<usize>) {
        match self {
            Self::Leaf(i) => out.push(*i),
            Self::Node(l, r) => {
                l.leaves(out);
                r.leaves(out);
            }
        }
    }
}

impl fmt::Display for Bracketing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Leaf(i) => write!(f, "{i}"),
            Self::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

/// Parses `(0 (1 2))`-style trees; bare indices are leaves.
impl FromStr for Bracketing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        fn parse(tokens: &[String], pos: &mut usize) -> Result<Bracketing> {
            let bad = || Error::InvalidInput("malformed bracketing".into());
            let tok = tokens.get(*pos).ok_or_else(bad)?;
            *pos += 1;
            if tok == "(" {
                let left = parse(tokens, pos)?;
                let right = parse(tokens, pos)?;
                if tokens.get(*pos).map(String::as_str) != Some(")") {
                    return Err(bad());
                }
                *pos += 1;
                Ok(Bracketing::Node(Box::new(left), Box::new(right)))
            } else {
                tok.parse().map(Bracketing::Leaf).map_err(|_| bad())
            }
        }
        let spaced = s.replace('(', " ( ").replace(')', " ) ").replace(',', " ");
        let tokens: Vec<String> = spaced.split_whitespace().map(str::to_owned).collect();
        let mut pos = 0;
        let tree = parse(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::InvalidInput("trailing tokens in bracketing".into()));
        }
        Ok(tree)
    }
}

/// Folds the composition law over `tree`. Every momentum must appear exactly once.
pub fn compose_nested(spec: &RealizationSpec, params: &DeformParams, momenta: &[MinkVec], tree: &Bracketing) -> Result<MinkVec> {
    if momenta.len() < 2 {
        return Err(Error::InvalidInput("nested composition needs at least two momenta".into()));
    }
    let mut leaves = Vec::new();
    tree.leaves(&mut leaves);
    leaves.sort_unstable();
    if leaves != (0..momenta.len()).collect::<Vec<_>>() {
        return Err(Error::InvalidInput(format!("bracketing {tree} does not use each of {} momenta once", momenta.len())));
    }
    fn fold(spec: &RealizationSpec, params: &DeformParams, momenta: &[MinkVec], tree: &Bracketing) -> Result<MinkVec> {
        match tree {
            Bracketing::Leaf(i) => Ok(momenta[*i].clone()),
            Bracketing::Node(l, r) => {
                let left = fold(spec, params, momenta, l)?;
                let right = fold(spec, params, momenta, r)?;
                Ok(momentum::compose(spec, params, &left, &right)?.value)
            }
        }
    }
    fold(spec, params, momenta, tree)
}

/// ‖D(Λk, Λq) − ΛD(k, q)‖ for a boost or rotation Λ in `plane`.
pub fn covariance_defect(
    spec: &RealizationSpec,
    params: &DeformParams,
    k: &MinkVec,
    q: &MinkVec,
    angle: f64,
    plane: (usize, usize),
) -> Result<f64> {
    let boosted = momentum::compose(spec, params, &lorentz_boost(k, angle, plane)?, &lorentz_boost(q, angle, plane)?)?;
    let composed = momentum::compose(spec, params, k, q)?;
    Ok((&boosted.value - &lorentz_boost(&composed.value, angle, plane)?).norm())
}

const JAC_STEP: f64 = 1e-4;

/// Five-point Jacobian J[i][j] = ∂F_i/∂x_j.
fn jacobian(f: impl Fn(&[f64]) -> Result<Vec<f64>>, x: &[f64]) -> Result<DMatrix<f64>> {
    let n = x.len();
    let mut jac = DMatrix::zeros(n, n);
    for j in 0..n {
        let at = |t: f64| -> Result<Vec<f64>> {
            let mut y = x.to_vec();
            y[j] += t * JAC_STEP;
            f(&y)
        };
        let (p1, m1, p2, m2) = (at(1.0)?, at(-1.0)?, at(2.0)?, at(-2.0)?);
        for i in 0..n {
            jac[(i, j)] = (8.0 * (p1[i] - m1[i]) - (p2[i] - m2[i])) / (12.0 * JAC_STEP);
        }
    }
    Ok(jac)
}

/// Both sides of the Leibniz rule for M_{μν} on e^{ikX} ⋆ e^{iqX}, Maggiore
/// realization, with
///
///   ΔM_{μν} = M_{μν}⊗1 + 1⊗M_{μν}
///             − i a_μ (D^λ − ½a^λ□) Z ⊗ M_{λν} + i a_ν (D^λ − ½a^λ□) Z ⊗ M_{λμ},
///
/// and Z, □ on the first leg evaluated at its momentum k. A degree-one
/// polynomial times e^{iD(k,q)X} is compared through its coefficients on X^α;
/// the norm of their difference is returned.
pub fn lorentz_leibniz_defect(params: &DeformParams, k: &MinkVec, q: &MinkVec, mu: usize, nu: usize) -> Result<f64> {
    let n = params.dim();
    params.check_dim(k)?;
    params.check_dim(q)?;
    if mu >= n || nu >= n || mu == nu {
        return Err(Error::InvalidPlane(mu, nu));
    }
    let a = params.a.components();
    let s = params.s;
    let (kc, qc) = (k.components(), q.components());
    let kappa = momentum::kvec_inverse_via(&RealizationSpec::Maggiore, params, k, momentum::DEFAULT_TOL, &Path::Exact)?.x;
    let composed = exact::p_exact_generic(a, &s, &kappa, qc, 1.0)?;
    // ∂D/∂k = (∂P/∂κ)(∂K/∂κ)⁻¹ and ∂D/∂q = ∂P/∂q, all on closed forms
    let dp_dkappa = jacobian(|x| exact::p_exact_generic(a, &s, x, qc, 1.0), &kappa)?;
    let dk_dkappa = jacobian(|x| exact::k_exact_generic(a, &s, x), &kappa)?;
    let dk_inv = dk_dkappa.try_inverse().ok_or(Error::DegenerateJacobian(0))?;
    let metric = DMatrix::from_fn(n, n, |i, j| if i == j { eta(i) as f64 } else { 0.0 });
    // raise the differentiation index: jk[(α, λ)] = ∂D_α/∂k^λ
    let jk = dp_dkappa * dk_inv * &metric;
    let jq = jacobian(|x| exact::p_exact_generic(a, &s, &kappa, x, 1.0), qc)? * &metric;

    let i = Complex64::i();
    let mut lhs = vec![Complex64::zero(); n];
    lhs[mu] += i * eta(mu) as f64 * composed[nu];
    lhs[nu] -= i * eta(nu) as f64 * composed[mu];

    let column = |m: &DMatrix<f64>, c: usize| -> Vec<f64> { (0..n).map(|r| m[(r, c)]).collect() };
    // (X_μ k_ν − X_ν k_μ) acting through the star product, per leg
    let leg = |mom: &[f64], jac: &DMatrix<f64>, m1: usize, m2: usize| -> Vec<Complex64> {
        let (c1, c2) = (column(jac, m1), column(jac, m2));
        (0..n).map(|r| i * (mom[m2] * c1[r] - mom[m1] * c2[r])).collect()
    };
    let mut rhs = vec![Complex64::zero(); n];
    for (r, v) in leg(kc, &jk, mu, nu).into_iter().zip(leg(qc, &jq, mu, nu)).enumerate() {
        rhs[r] += v.0 + v.1;
    }
    let c = params.c();
    let kk = dot(kc, kc);
    let root = (1.0 + c * kk).sqrt();
    let z = 1.0 / (dot(a, kc) + root);
    let box_k = -2.0 * kk / (1.0 + root);
    for (first, second, sign) in [(mu, nu, 1.0), (nu, mu, -1.0)] {
        for lam in 0..n {
            let raise = eta(lam) as f64;
            let left = i * a[first] * (i * raise * kc[lam] - i * raise * a[lam] / 2.0 * box_k) * z;
            for (r, v) in leg(qc, &jq, lam, second).into_iter().enumerate() {
                rhs[r] += sign * left * v;
            }
        }
    }
    Ok(lhs.iter().zip(&rhs).map(|(l, r)| (l - r).norm_sqr()).sum::<f64>().sqrt())
}

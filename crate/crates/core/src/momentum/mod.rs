//! Momentum space: the flow P(t), the map K and its inverse, the composition
//! law D(k,q) = P(K⁻¹(k), q), closed cases, second-order formulas and
//! antipodes.

pub mod closed;
pub mod exact;
pub mod expand;
pub mod field;
pub mod newton;
pub mod ode;
pub mod perturbative;

use std::fmt;

use crate::error::{Error, Result};
use crate::numerics::{DeformParams, MinkVec, RealizationSpec};

pub use closed::{compose_closed, ClosedCase};
pub use newton::{NewtonOutcome, DEFAULT_TOL};
pub use ode::{phi_matrix, DEFAULT_STEPS};

/// Richardson estimates above this mark an ODE result as not converged.
pub const ODE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exact,
    Ode,
    ClosedCase,
    Perturbative,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Exact => "exact",
            Self::Ode => "ode",
            Self::ClosedCase => "closed-case",
            Self::Perturbative => "perturbative",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Diagnostics {
    /// Residual of the Newton solve that produced K⁻¹(k), zero if none ran.
    pub residual: f64,
    pub newton_iters: usize,
    pub ode_steps: usize,
    /// Richardson estimate of the ODE error (zero off the ODE path).
    pub ode_estimate: f64,
    pub ode_converged: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComposeResult {
    pub value: MinkVec,
    pub method: Method,
    pub diagnostics: Diagnostics,
}

/// How a composition is evaluated.
#[derive(Clone, Debug, PartialEq)]
pub enum Path {
    /// Closed-form flow plus Newton inversion of K; Maggiore only.
    Exact,
    Ode { steps: usize },
    Perturbative { u: f64 },
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact => write!(f, "exact"),
            Self::Ode { steps } => write!(f, "ode(steps={steps})"),
            Self::Perturbative { u } => write!(f, "perturbative(u={u})"),
        }
    }
}

impl Path {
    /// Exact for Maggiore, ODE with default steps otherwise.
    pub fn for_spec(spec: &RealizationSpec) -> Self {
        if spec.is_maggiore() {
            Self::Exact
        } else {
            Self::Ode { steps: DEFAULT_STEPS }
        }
    }
}

fn vec_of(v: Vec<f64>) -> Result<MinkVec> {
    let out = MinkVec::from_slice(&v)?;
    if !out.is_finite() {
        return Err(Error::Domain("non-finite result".into()));
    }
    Ok(out)
}

fn require_maggiore(spec: &RealizationSpec) -> Result<()> {
    if spec.is_maggiore() {
        Ok(())
    } else {
        Err(Error::WrongRealization { required: "maggiore", found: spec.to_string() })
    }
}

fn check_q_domain(params: &DeformParams, q: &[f64]) -> Result<()> {
    let arg = 1.0 + params.c() * field::dot(q, q);
    if arg < 0.0 {
        return Err(Error::Domain(format!("1 + (a²−s)q² = {arg:e} < 0")));
    }
    Ok(())
}

/// The closed-form flow P(k, q; t) for f(B) = √(1−B).
pub fn p_exact_maggiore(params: &DeformParams, k: &MinkVec, q: &MinkVec, t: f64) -> Result<MinkVec> {
    params.check_dim(k)?;
    params.check_dim(q)?;
    check_q_domain(params, q.components())?;
    vec_of(exact::p_exact_generic(params.a.components(), &params.s, k.components(), q.components(), t)?)
}

/// P(1) from the ODE, with `steps` RK4 steps and a Richardson error estimate.
pub fn compose_ode(spec: &RealizationSpec, params: &DeformParams, k: &MinkVec, q: &MinkVec, steps: usize) -> Result<ComposeResult> {
    params.check_dim(k)?;
    params.check_dim(q)?;
    check_q_domain(params, q.components())?;
    let (value, estimate) = ode::integrate_with_estimate(spec, params, k.components(), q.components(), steps)?;
    Ok(ComposeResult {
        value: vec_of(value)?,
        method: Method::Ode,
        diagnostics: Diagnostics { ode_steps: steps, ode_estimate: estimate, ode_converged: estimate <= ODE_TOL, ..Diagnostics::default() },
    })
}

fn k_raw(spec: &RealizationSpec, params: &DeformParams, k: &[f64], path: &Path) -> Result<Vec<f64>> {
    let zero = vec![0.0; k.len()];
    match path {
        Path::Exact => exact::p_exact_generic(params.a.components(), &params.s, k, &zero, 1.0),
        Path::Ode { steps } => ode::integrate(spec, params, k, &zero, *steps),
        Path::Perturbative { u } => Ok(perturbative::kvec_generic(*u, params.a.components(), &params.s, k)),
    }
}

fn p_raw(spec: &RealizationSpec, params: &DeformParams, k: &[f64], q: &[f64], path: &Path) -> Result<Vec<f64>> {
    match path {
        Path::Exact => exact::p_exact_generic(params.a.components(), &params.s, k, q, 1.0),
        Path::Ode { steps } => ode::integrate(spec, params, k, q, *steps),
        Path::Perturbative { .. } => Err(Error::InvalidInput("no perturbative flow P(k, q)".into())),
    }
}

/// K(k) = P(k, 0): closed form for Maggiore, ODE otherwise.
pub fn kvec(spec: &RealizationSpec, params: &DeformParams, k: &MinkVec) -> Result<MinkVec> {
    kvec_via(spec, params, k, &Path::for_spec(spec))
}

pub fn kvec_via(spec: &RealizationSpec, params: &DeformParams, k: &MinkVec, path: &Path) -> Result<MinkVec> {
    params.check_dim(k)?;
    if *path == Path::Exact {
        require_maggiore(spec)?;
    }
    vec_of(k_raw(spec, params, k.components(), path)?)
}

/// Newton solution of K(x) = k starting from x = k.
pub fn kvec_inverse(spec: &RealizationSpec, params: &DeformParams, k: &MinkVec, tol: f64) -> Result<NewtonOutcome> {
    kvec_inverse_via(spec, params, k, tol, &Path::for_spec(spec))
}

pub fn kvec_inverse_via(spec: &RealizationSpec, params: &DeformParams, k: &MinkVec, tol: f64, path: &Path) -> Result<NewtonOutcome> {
    params.check_dim(k)?;
    if *path == Path::Exact {
        require_maggiore(spec)?;
    }
    let target = k.components();
    newton::solve(
        |x| {
            let image = k_raw(spec, params, x, path)?;
            Ok(image.iter().zip(target).map(|(a, b)| a - b).collect())
        },
        target,
        tol,
    )
}

/// D(k, q) along the default path for `spec`.
pub fn compose(spec: &RealizationSpec, params: &DeformParams, k: &MinkVec, q: &MinkVec) -> Result<ComposeResult> {
    compose_via(spec, params, k, q, &Path::for_spec(spec))
}

pub fn compose_via(spec: &RealizationSpec, params: &DeformParams, k: &MinkVec, q: &MinkVec, path: &Path) -> Result<ComposeResult> {
    params.check_dim(k)?;
    params.check_dim(q)?;
    if let Path::Perturbative { u } = path {
        return Ok(ComposeResult {
            value: compose_perturbative(*u, params, k, q)?,
            method: Method::Perturbative,
            diagnostics: Diagnostics::default(),
        });
    }
    check_q_domain(params, q.components())?;
    let inv = kvec_inverse_via(spec, params, k, DEFAULT_TOL, path)?;
    let mut diagnostics = Diagnostics { residual: inv.residual, newton_iters: inv.iterations, ..Diagnostics::default() };
    let (value, method) = match path {
        Path::Ode { steps } => {
            let (value, estimate) = ode::integrate_with_estimate(spec, params, &inv.x, q.components(), *steps)?;
            diagnostics.ode_steps = *steps;
            diagnostics.ode_estimate = estimate;
            diagnostics.ode_converged = estimate <= ODE_TOL;
            (value, Method::Ode)
        }
        _ => (p_raw(spec, params, &inv.x, q.components(), path)?, Method::Exact),
    };
    Ok(ComposeResult { value: vec_of(value)?, method, diagnostics })
}

pub fn compose_perturbative(u: f64, params: &DeformParams, k: &MinkVec, q: &MinkVec) -> Result<MinkVec> {
    params.check_dim(k)?;
    params.check_dim(q)?;
    vec_of(perturbative::compose_generic(u, params.a.components(), &params.s, k.components(), q.components()))
}

pub fn kvec_perturbative(u: f64, params: &DeformParams, k: &MinkVec) -> Result<MinkVec> {
    params.check_dim(k)?;
    vec_of(perturbative::kvec_generic(u, params.a.components(), &params.s, k.components()))
}

pub fn kvec_inverse_perturbative(u: f64, params: &DeformParams, k: &MinkVec) -> Result<MinkVec> {
    params.check_dim(k)?;
    vec_of(perturbative::kvec_inverse_generic(u, params.a.components(), &params.s, k.components()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct AntipodeResult {
    pub value: MinkVec,
    /// ‖D(S(k), k)‖, recomputed through the full composition.
    pub residual: f64,
    /// ‖D(k, S(k))‖.
    pub mirror_residual: f64,
    pub newton_iters: usize,
}

/// S(k) with D(S(k), k) = 0.
///
/// Since D(x, k) = P(K⁻¹(x), k), the solve runs on κ = K⁻¹(x): Newton finds
/// P(κ, k) = 0 from κ = −k, and S = K(κ). Both conditions are then evaluated
/// through [`compose_via`].
pub fn antipode(spec: &RealizationSpec, params: &DeformParams, k: &MinkVec, tol: f64) -> Result<AntipodeResult> {
    antipode_via(spec, params, k, tol, &Path::for_spec(spec))
}

pub fn antipode_via(spec: &RealizationSpec, params: &DeformParams, k: &MinkVec, tol: f64, path: &Path) -> Result<AntipodeResult> {
    params.check_dim(k)?;
    if *path == Path::Exact {
        require_maggiore(spec)?;
    }
    check_q_domain(params, k.components())?;
    let kc = k.components();
    let guess: Vec<f64> = kc.iter().map(|v| -v).collect();
    let solved = newton::solve(|kappa| p_raw(spec, params, kappa, kc, path), &guess, tol)?;
    let value = vec_of(k_raw(spec, params, &solved.x, path)?)?;
    let residual = compose_via(spec, params, &value, k, path)?.value.norm();
    let mirror_residual = compose_via(spec, params, k, &value, path)?.value.norm();
    Ok(AntipodeResult { value, residual, mirror_residual, newton_iters: solved.iterations })
}

fn require_timelike(params: &DeformParams) -> Result<()> {
    if params.a.components()[1..].iter().any(|v| *v != 0.0) {
        return Err(Error::InvalidInput("the second-order antipode needs a = (a₀, 0, …, 0)".into()));
    }
    Ok(())
}

/// Second-order antipode for timelike a, derived from D(S, k) = 0.
pub fn antipode_perturbative(params: &DeformParams, k: &MinkVec) -> Result<MinkVec> {
    params.check_dim(k)?;
    require_timelike(params)?;
    vec_of(perturbative::antipode_generic(&params.a[0], k.components()))
}

/// The alternative second-order antipode; see
/// [`perturbative::antipode_alternative_generic`].
pub fn antipode_perturbative_alternative(params: &DeformParams, k: &MinkVec) -> Result<MinkVec> {
    params.check_dim(k)?;
    require_timelike(params)?;
    vec_of(perturbative::antipode_alternative_generic(&params.a[0], k.components()))
}

/// A quantity computed two ways.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityPair {
    pub left: f64,
    pub right: f64,
}

impl IdentityPair {
    pub fn gap(&self) -> f64 {
        (self.left - self.right).abs()
    }
}

/// Z⁻¹ at momentum k: (ak) + √(1+(a²−s)k²) against
/// cosh W(κ) + (aκ)·sinh W(κ)/W(κ), κ = K⁻¹(k).
pub fn zinv_of_k(params: &DeformParams, k: &MinkVec) -> Result<IdentityPair> {
    params.check_dim(k)?;
    check_q_domain(params, k.components())?;
    let a = params.a.components();
    let left = exact::zinv_generic(a, &params.s, k.components())?;
    let kappa = kvec_inverse_via(&RealizationSpec::Maggiore, params, k, DEFAULT_TOL, &Path::Exact)?.x;
    let ak = field::dot(a, &kappa);
    let (cosh, sinhc, _) = field::Field::even_trig(&(ak * ak - params.s * field::dot(&kappa, &kappa)))?;
    Ok(IdentityPair { left, right: cosh + ak * sinhc })
}

/// □ at momentum k: −2k²/(1+√(1+(a²−s)k²)), which equals
/// (2/(a²−s))[1 − √(1+(a²−s)k²)], against −2κ²(cosh W(κ) − 1)/W(κ)².
pub fn box_of_k(params: &DeformParams, k: &MinkVec) -> Result<IdentityPair> {
    params.check_dim(k)?;
    check_q_domain(params, k.components())?;
    let kk = field::dot(k.components(), k.components());
    let left = -2.0 * kk / (1.0 + (1.0 + params.c() * kk).sqrt());
    let kappa = kvec_inverse_via(&RealizationSpec::Maggiore, params, k, DEFAULT_TOL, &Path::Exact)?.x;
    let ak = field::dot(params.a.components(), &kappa);
    let (_, _, coshm1c) = field::Field::even_trig(&(ak * ak - params.s * field::dot(&kappa, &kappa)))?;
    Ok(IdentityPair { left, right: -2.0 * field::dot(&kappa, &kappa) * coshm1c })
}

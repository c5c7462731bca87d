//! The flow dP/dt = Φ(iP)·k, integrated with fixed-step RK4.

use nalgebra::DMatrix;

use super::field::dot;
use crate::error::{Error, Result};
use crate::numerics::{eta, DeformParams, MinkVec, RealizationSpec};

pub const DEFAULT_STEPS: usize = 1000;

/// Φ_{μα} at D = iP:
/// η_{μα}((aP) + f(B)) − a_μP_α + (a²−s)P_μP_αγ₂(B), with B = −(a²−s)P².
pub fn phi_matrix(spec: &RealizationSpec, params: &DeformParams, p: &MinkVec) -> Result<DMatrix<f64>> {
    params.check_dim(p)?;
    let a = params.a.components();
    let pc = p.components();
    let c = params.c();
    let b = -c * dot(pc, pc);
    let f = f_of_b(spec, b)?;
    let g2 = spec.gamma2(b)?;
    let ap = dot(a, pc);
    let n = p.dim();
    Ok(DMatrix::from_fn(n, n, |mu, al| {
        let diag = if mu == al { eta(mu) as f64 * (ap + f) } else { 0.0 };
        diag - a[mu] * pc[al] + c * pc[mu] * pc[al] * g2
    }))
}

fn f_of_b(spec: &RealizationSpec, b: f64) -> Result<f64> {
    let (f, _) = spec.f_and_derivative(b)?;
    Ok(f)
}

/// Φ(iP)·k with the index of k raised: k(aP + f) − a(Pk) + (a²−s)P(Pk)γ₂.
pub fn rhs(spec: &RealizationSpec, params: &DeformParams, k: &[f64], p: &[f64]) -> Result<Vec<f64>> {
    let a = params.a.components();
    let c = params.c();
    let b = -c * dot(p, p);
    let f = f_of_b(spec, b)?;
    let g2 = spec.gamma2(b)?;
    let ap = dot(a, p);
    let pk = dot(p, k);
    Ok((0..k.len()).map(|mu| k[mu] * (ap + f) - a[mu] * pk + c * p[mu] * pk * g2).collect())
}

/// P(t_end) after `steps` RK4 steps.
pub fn integrate(spec: &RealizationSpec, params: &DeformParams, k: &[f64], q: &[f64], steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(Error::InvalidInput("ODE needs at least one step".into()));
    }
    let h = 1.0 / steps as f64;
    let mut y = q.to_vec();
    let shifted = |y: &[f64], d: &[f64], w: f64| -> Vec<f64> { y.iter().zip(d).map(|(a, b)| a + w * b).collect() };
    for _ in 0..steps {
        let k1 = rhs(spec, params, k, &y)?;
        let k2 = rhs(spec, params, k, &shifted(&y, &k1, h / 2.0))?;
        let k3 = rhs(spec, params, k, &shifted(&y, &k2, h / 2.0))?;
        let k4 = rhs(spec, params, k, &shifted(&y, &k3, h))?;
        for i in 0..y.len() {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("ODE trajectory left the finite range".into()));
        }
    }
    Ok(y)
}

/// P(1) at `steps` together with the Richardson estimate
/// ‖P_steps − P_2steps‖·16/15 of its error.
pub fn integrate_with_estimate(
    spec: &RealizationSpec,
    params: &DeformParams,
    k: &[f64],
    q: &[f64],
    steps: usize,
) -> Result<(Vec<f64>, f64)> {
    let coarse = integrate(spec, params, k, q, steps)?;
    let fine = integrate(spec, params, k, q, 2 * steps)?;
    let diff = coarse.iter().zip(&fine).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
    Ok((coarse, diff * 16.0 / 15.0))
}

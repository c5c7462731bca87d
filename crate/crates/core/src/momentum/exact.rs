//! Closed-form solution of the momentum flow for f(B) = √(1−B):
//!
//!   P(t) = q + (k Z⁻¹(q) − a(kq)) t·sinhc + [(k(ak) − ak²)Z⁻¹(q) + a(ak)(kq) − sk(kq)] t²·coshm1c
//!
//! with W² = (ak)² − sk² and the even functions evaluated at t²W².

use super::field::{dot, Field};
use crate::error::Result;

/// Z⁻¹(q) = (aq) + √(1 + (a²−s)q²).
pub fn zinv_generic<F: Field>(a: &[F], s: &F, q: &[F]) -> Result<F> {
    let c = dot(a, a) - s.clone();
    let root = (q[0].one_like() + c * dot(q, q)).sqrt()?;
    Ok(dot(a, q) + root)
}

pub fn p_exact_generic<F: Field>(a: &[F], s: &F, k: &[F], q: &[F], t: f64) -> Result<Vec<F>> {
    let ak = dot(a, k);
    let kk = dot(k, k);
    let kq = dot(k, q);
    let w2 = ak.clone() * ak.clone() - s.clone() * kk.clone();
    let (_, sinhc, coshm1c) = w2.scale(t * t).even_trig()?;
    let zi = zinv_generic(a, s, q)?;
    let lin = sinhc.scale(t);
    let quad = coshm1c.scale(t * t);
    Ok((0..k.len())
        .map(|mu| {
            let first = k[mu].clone() * zi.clone() - a[mu].clone() * kq.clone();
            let second = (k[mu].clone() * ak.clone() - a[mu].clone() * kk.clone()) * zi.clone()
                + a[mu].clone() * ak.clone() * kq.clone()
                - s.clone() * k[mu].clone() * kq.clone();
            q[mu].clone() + first * lin.clone() + second * quad.clone()
        })
        .collect())
}

/// K(k) = P(k, 0) at t = 1.
pub fn k_exact_generic<F: Field>(a: &[F], s: &F, k: &[F]) -> Result<Vec<F>> {
    let zero: Vec<F> = k.iter().map(Field::zero_like).collect();
    p_exact_generic(a, s, k, &zero, 1.0)
}

/// Solves K(κ) = k by the fixed-point map κ ← κ + k − K(κ). On ε-series the
/// map gains one order per sweep, so `order + 1` sweeps are exact.
pub fn k_inverse_series<F: Field>(a: &[F], s: &F, k: &[F], sweeps: usize) -> Result<Vec<F>> {
    let mut kappa = k.to_vec();
    for _ in 0..sweeps {
        let image = k_exact_generic(a, s, &kappa)?;
        kappa = (0..k.len()).map(|mu| kappa[mu].clone() + k[mu].clone() - image[mu].clone()).collect();
    }
    Ok(kappa)
}

/// D(k, q) = P(K⁻¹(k), q) on ε-series.
pub fn compose_series<F: Field>(a: &[F], s: &F, k: &[F], q: &[F], sweeps: usize) -> Result<Vec<F>> {
    let kappa = k_inverse_series(a, s, k, sweeps)?;
    p_exact_generic(a, s, &kappa, q, 1.0)
}

/// S(k) on ε-series: fixed point of x ← x − D(x, k), starting at −k.
pub fn antipode_series<F: Field>(a: &[F], s: &F, k: &[F], sweeps: usize) -> Result<Vec<F>> {
    let mut x: Vec<F> = k.iter().map(|c| -c.clone()).collect();
    for _ in 0..sweeps {
        let d = compose_series(a, s, &x, k, sweeps)?;
        x = (0..k.len()).map(|mu| x[mu].clone() - d[mu].clone()).collect();
    }
    Ok(x)
}

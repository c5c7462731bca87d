//! Second-order formulas in the deformation parameters for the family
//! f(B) = 1 − uB + O(B²). Here c = a² − s.

use super::field::{dot, Field};

/// D(k, q) to second order.
pub fn compose_generic<F: Field>(u: f64, a: &[F], s: &F, k: &[F], q: &[F]) -> Vec<F> {
    let a2 = dot(a, a);
    let c = a2.clone() - s.clone();
    let (kq, kk, qq, ak, aq) = (dot(k, q), dot(k, k), dot(q, q), dot(a, k), dot(a, q));
    let q_factor = kq.one_like() - c.scale(1.0 - 2.0 * u) * kq.clone() - (c.clone() * kk.clone()).scale(0.5 * (1.0 - 2.0 * u));
    let k_factor = kq.one_like() + aq.clone() + (c.clone() * qq).scale(u)
        - (a2 * kq.clone()).scale(0.5)
        - (c * kq.clone()).scale(0.5 * (1.0 - 4.0 * u));
    let a_factor = kq.clone() * (ak - kq.one_like()) - (aq * kk).scale(0.5);
    (0..k.len())
        .map(|mu| q[mu].clone() * q_factor.clone() + k[mu].clone() * k_factor.clone() + a[mu].clone() * a_factor.clone())
        .collect()
}

/// K(k) to second order.
pub fn kvec_generic<F: Field>(u: f64, a: &[F], s: &F, k: &[F]) -> Vec<F> {
    let a2 = dot(a, a);
    let c = a2.clone() - s.clone();
    let (kk, ak) = (dot(k, k), dot(a, k));
    let k_factor = kk.one_like() + ak.scale(0.5) + (ak.clone() * ak).scale(1.0 / 6.0) - (a2 * kk.clone()).scale(1.0 / 6.0)
        - (c * kk.clone()).scale((1.0 - 3.0 * u) / 3.0);
    let a_factor = kk.scale(-0.5);
    (0..k.len()).map(|mu| k[mu].clone() * k_factor.clone() + a[mu].clone() * a_factor.clone()).collect()
}

/// K⁻¹(k) to second order.
pub fn kvec_inverse_generic<F: Field>(u: f64, a: &[F], s: &F, k: &[F]) -> Vec<F> {
    let a2 = dot(a, a);
    let c = a2.clone() - s.clone();
    let (kk, ak) = (dot(k, k), dot(a, k));
    let k_factor = kk.one_like() - ak.scale(0.5) + (ak.clone() * ak.clone()).scale(1.0 / 3.0)
        - (a2 * kk.clone()).scale(1.0 / 12.0)
        + (c * kk.clone()).scale((1.0 - 3.0 * u) / 3.0);
    let a_factor = kk.scale(0.5) - (ak * kk).scale(0.25);
    (0..k.len()).map(|mu| k[mu].clone() * k_factor.clone() + a[mu].clone() * a_factor.clone()).collect()
}

/// Antipode to second order for a = (a₀, 0, …, 0), obtained by solving
/// D(S, k) = 0 order by order in the composition law above; the result does
/// not depend on u or s:
///
///   S(kᵢ) = −kᵢ[1 + a₀k₀ + ½a₀²(k₀² + Σⱼkⱼ²)],   S(k₀) = −k₀ − a₀Σⱼkⱼ²(1 + a₀k₀).
pub fn antipode_generic<F: Field>(a0: &F, k: &[F]) -> Vec<F> {
    let spatial = k[1..].iter().fold(k[0].zero_like(), |acc, c| acc + c.clone() * c.clone());
    let a0k0 = a0.clone() * k[0].clone();
    let one = k[0].one_like();
    let mut out = Vec::with_capacity(k.len());
    out.push(-k[0].clone() - a0.clone() * spatial.clone() * (one.clone() + a0k0.clone()));
    let factor = one + a0k0 + (a0.clone() * a0.clone() * (k[0].clone() * k[0].clone() + spatial)).scale(0.5);
    out.extend(k[1..].iter().map(|ki| -ki.clone() * factor.clone()));
    out
}

/// The second-order antipode in the form
/// S(kᵢ) = −kᵢ[1 + a₀k₀ + (a₀k₀)² − ½a₀²k²], S(k₀) = −k₀(1 − a₀²Σkᵢ²) − a₀Σkᵢ².
/// It differs from [`antipode_generic`] at second order and does not solve
/// D(S, k) = 0 beyond first order; kept for comparison.
pub fn antipode_alternative_generic<F: Field>(a0: &F, k: &[F]) -> Vec<F> {
    let spatial = k[1..].iter().fold(k[0].zero_like(), |acc, c| acc + c.clone() * c.clone());
    let kk = dot(k, k);
    let a0k0 = a0.clone() * k[0].clone();
    let one = k[0].one_like();
    let mut out = Vec::with_capacity(k.len());
    out.push(-k[0].clone() * (one.clone() - a0.clone() * a0.clone() * spatial.clone()) - a0.clone() * spatial);
    let factor = one + a0k0.clone() + a0k0.clone() * a0k0 - (a0.clone() * a0.clone() * kk).scale(0.5);
    out.extend(k[1..].iter().map(|ki| -ki.clone() * factor.clone()));
    out
}

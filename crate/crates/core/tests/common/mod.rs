//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use kappa_snyder::numerics::scalar::{int, real};
use kappa_snyder::numerics::{DeformParams, Rational, RealizationSpec};
use kappa_snyder::realizations::RealizedFrame;
use kappa_snyder::weyl::{Coef, Exps, Poly, WeylOp};
use num_traits::One;

/// Realization with f(B) = 1 − uB.
pub fn frame_for_u(u: &Rational, params: &DeformParams<Rational>, order: usize) -> RealizedFrame {
    let spec = RealizationSpec::GeneralU(u.clone());
    RealizedFrame::build(spec, params.clone(), order).unwrap()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Weyl-symmetrized product of x̂ over the multi-index `x`.
pub fn symmetrized(frame: &RealizedFrame, x: &Exps) -> WeylOp {
    let dim = frame.dim();
    let indices: Vec<usize> = (0..dim).flat_map(|mu| std::iter::repeat_n(mu, x.0[mu] as usize)).collect();
    let perms = permutations(&indices);
    let mut total = WeylOp::zero(dim, frame.order);
    for p in &perms {
        let mut op = WeylOp::one(dim, frame.order);
        for &mu in p {
            op = &op * &frame.xhat[mu];
        }
        total = &total + &op;
    }
    total.scale(&Coef::constant(real(Rational::one() / int(perms.len() as i64)), frame.order))
}

/// The symmetrically ordered f̂ with f̂ ⊳ 1 = f, built from the top degree down.
pub fn symmetric_lift(frame: &RealizedFrame, f: &Poly) -> WeylOp {
    let (dim, order) = (frame.dim(), frame.order);
    let one = Poly::one(dim, order);
    let mut lifted = WeylOp::zero(dim, order);
    let mut residual = f.clone();
    while !residual.is_zero() {
        let top = residual.degree();
        for (x, c) in residual.terms() {
            if x.degree() == top {
                lifted = &lifted + &symmetrized(frame, x).scale(c);
            }
        }
        residual = f - &lifted.act(&one).unwrap();
    }
    lifted
}

/// f ⋆ g = f̂ ⊳ g.
pub fn star_oracle(frame: &RealizedFrame, f: &Poly, g: &Poly) -> Poly {
    symmetric_lift(frame, f).act(g).unwrap()
}

/// All exponent vectors of total degree ≤ `max` in `dim` variables.
pub fn monomials(dim: usize, max: usize) -> Vec<Exps> {
    let mut out = vec![Exps::default()];
    for _ in 0..max {
        let mut next = Vec::new();
        for e in &out {
            for mu in 0..dim {
                let mut f = *e;
                f.0[mu] += 1;
                if f.degree() <= max && !next.contains(&f) && !out.contains(&f) {
                    next.push(f);
                }
            }
        }
        out.extend(next);
    }
    out
}

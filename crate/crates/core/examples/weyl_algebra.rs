//! The undeformed Weyl algebra with ε-graded coefficients: canonical
//! commutators, reordering and the action on polynomials.
//!
//!     cargo run --example weyl_algebra

use kappa_snyder::numerics::scalar::{imag, rat};
use kappa_snyder::weyl::{Coef, Exps, Poly, WeylOp};

fn main() -> kappa_snyder::Result<()> {
    let (dim, order) = (2, 2);
    let x0 = WeylOp::x(dim, order, 0);
    let x1 = WeylOp::x(dim, order, 1);
    let d0 = WeylOp::d(dim, order, 0);
    let d1 = WeylOp::d(dim, order, 1);

    println!("[D_0, X_0] = {}", d0.commutator(&x0)?);
    println!("[D_1, X_1] = {}", d1.commutator(&x1)?);
    println!("[D_0, X_1] = {}", d0.commutator(&x1)?);

    // D_0 X_0 X_1 D_1, written with every X to the left of every D
    let word = &(&(&d0 * &x0) * &x1) * &d1;
    println!("D_0 X_0 X_1 D_1 = {word}");

    // a graded coefficient: i a ε with a = 1/5
    let eps_term = WeylOp::scalar(dim, Coef::monomial(imag(rat(1, 5)), 1, order));
    let deformed = &x0 + &(&eps_term * &d1);
    println!("X_0 + (i/5)ε D_1 = {deformed}");
    println!("(X_0 + (i/5)ε D_1)² = {}", deformed.pow(2));

    let f = Poly::monomial(dim, order, Exps([2, 1, 0, 0, 0, 0, 0, 0]));
    println!("f = {f:?}");
    println!("(X_0 + (i/5)ε D_1) ⊳ f = {:?}", deformed.act(&f)?);
    Ok(())
}

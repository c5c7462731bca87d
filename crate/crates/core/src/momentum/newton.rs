//! Newton iteration with a forward-difference Jacobian.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

pub const FD_STEP: f64 = 1e-7;
pub const MAX_ITERATIONS: usize = 50;
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct NewtonOutcome {
    pub x: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

fn jacobian<F>(f: &F, x: &[f64], fx: &[f64]) -> Result<DMatrix<f64>>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    let n = x.len();
    let mut jac = DMatrix::zeros(fx.len(), n);
    let mut probe = x.to_vec();
    for j in 0..n {
        let h = FD_STEP * x[j].abs().max(1.0);
        probe[j] = x[j] + h;
        let shifted = f(&probe)?;
        probe[j] = x[j];
        for i in 0..fx.len() {
            jac[(i, j)] = (shifted[i] - fx[i]) / h;
        }
    }
    Ok(jac)
}

/// Solves f(x) = 0 from `x0` until ‖f(x)‖ ≤ tol. Once the tolerance is met,
/// further steps are taken only while they keep lowering the residual.
pub fn solve<F>(f: F, x0: &[f64], tol: f64) -> Result<NewtonOutcome>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    let mut x = x0.to_vec();
    let mut fx = f(&x)?;
    let mut residual = norm(&fx);
    let mut iterations = 0;
    while residual > tol {
        if iterations == MAX_ITERATIONS {
            return Err(Error::NotConverged { iterations, residual });
        }
        iterations += 1;
        let jac = jacobian(&f, &x, &fx)?;
        let rhs = DVector::from_column_slice(&fx);
        let step = jac.lu().solve(&rhs).ok_or(Error::DegenerateJacobian(iterations))?;
        for (xi, di) in x.iter_mut().zip(step.iter()) {
            *xi -= di;
        }
        fx = f(&x)?;
        residual = norm(&fx);
        if !residual.is_finite() {
            return Err(Error::NotConverged { iterations, residual });
        }
    }
    for _ in 0..3 {
        if residual == 0.0 {
            break;
        }
        let jac = jacobian(&f, &x, &fx)?;
        let Some(step) = jac.lu().solve(&DVector::from_column_slice(&fx)) else { break };
        let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(xi, di)| xi - di).collect();
        let ft = f(&trial)?;
        let rt = norm(&ft);
        if rt >= residual {
            break;
        }
        x = trial;
        fx = ft;
        residual = rt;
        iterations += 1;
    }
    Ok(NewtonOutcome { x, residual, iterations })
}

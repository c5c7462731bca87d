//! Scalars on which the momentum formulas can be evaluated: plain floats,
//! or ε-series with float coefficients to read off expansion tables.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::numerics::series::{EpsSeries, Taylor};

/// Below this |w| the even functions of √w switch to their Taylor series.
pub const SERIES_SWITCH: f64 = 1e-8;

pub trait Field:
    Clone + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    /// A constant of the same shape as `self`.
    fn constant_like(&self, v: f64) -> Self;

    fn sqrt(&self) -> Result<Self>;

    fn recip(&self) -> Result<Self>;

    /// (cosh √w, sinh √w / √w, (cosh √w − 1)/w), real for either sign of w.
    fn even_trig(&self) -> Result<(Self, Self, Self)>;

    fn scale(&self, v: f64) -> Self {
        self.clone() * self.constant_like(v)
    }

    fn zero_like(&self) -> Self {
        self.constant_like(0.0)
    }

    fn one_like(&self) -> Self {
        self.constant_like(1.0)
    }
}

impl Field for f64 {
    fn constant_like(&self, v: f64) -> Self {
        v
    }

    fn sqrt(&self) -> Result<Self> {
        if *self < 0.0 {
            return Err(Error::Domain(format!("square root of {self:e}")));
        }
        Ok(f64::sqrt(*self))
    }

    fn recip(&self) -> Result<Self> {
        if *self == 0.0 {
            return Err(Error::Domain("division by zero".into()));
        }
        Ok(1.0 / self)
    }

    fn even_trig(&self) -> Result<(Self, Self, Self)> {
        let w = *self;
        if w.abs() < SERIES_SWITCH {
            return Ok((1.0 + w / 2.0, 1.0 + w / 6.0, 0.5 + w / 24.0));
        }
        // half-angle forms avoid cancellation in cosh r − 1 and 1 − cos r
        if w > 0.0 {
            let r = w.sqrt();
            let half = (r / 2.0).sinh();
            Ok((r.cosh(), r.sinh() / r, 2.0 * half * half / w))
        } else {
            let r = (-w).sqrt();
            let half = (r / 2.0).sin();
            Ok((r.cos(), r.sin() / r, 2.0 * half * half / w.abs()))
        }
    }
}

impl Field for EpsSeries<f64> {
    fn constant_like(&self, v: f64) -> Self {
        EpsSeries::constant(v, self.order())
    }

    fn sqrt(&self) -> Result<Self> {
        let c0 = *self.coeff(0);
        if c0 <= 0.0 {
            if self.is_zero() {
                return Ok(self.clone());
            }
            return Err(Error::Domain(format!("series square root with constant term {c0:e}")));
        }
        let rest = self.scale(&(1.0 / c0)) - EpsSeries::one(self.order());
        let root = rest.apply_analytic(&Taylor::sqrt_1p(self.order() + 1))?;
        Ok(root.scale(&c0.sqrt()))
    }

    fn recip(&self) -> Result<Self> {
        EpsSeries::recip(self)
    }

    fn even_trig(&self) -> Result<(Self, Self, Self)> {
        if *self.coeff(0) != 0.0 {
            return Err(Error::NonzeroConstantTerm);
        }
        let len = self.order() + 1;
        Ok((
            self.apply_analytic(&Taylor::cosh_sqrt(len))?,
            self.apply_analytic(&Taylor::sinhc_sqrt(len))?,
            self.apply_analytic(&Taylor::coshm1c_sqrt(len))?,
        ))
    }
}

/// −u₀v₀ + Σ uᵢvᵢ over any field.
pub fn dot<F: Field>(u: &[F], v: &[F]) -> F {
    let mut acc = u[0].zero_like() - u[0].clone() * v[0].clone();
    for (x, y) in u.iter().zip(v).skip(1) {
        acc = acc + x.clone() * y.clone();
    }
    acc
}

pub fn axpy<F: Field>(alpha: &F, x: &[F], y: &[F]) -> Vec<F> {
    x.iter().zip(y).map(|(xi, yi)| alpha.clone() * xi.clone() + yi.clone()).collect()
}

pub fn scale_vec<F: Field>(alpha: &F, x: &[F]) -> Vec<F> {
    x.iter().map(|xi| alpha.clone() * xi.clone()).collect()
}

pub fn add_vec<F: Field>(x: &[F], y: &[F]) -> Vec<F> {
    x.iter().zip(y).map(|(a, b)| a.clone() + b.clone()).collect()
}

pub fn sub_vec<F: Field>(x: &[F], y: &[F]) -> Vec<F> {
    x.iter().zip(y).map(|(a, b)| a.clone() - b.clone()).collect()
}

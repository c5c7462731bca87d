//! Deformation parameters and the choice of realization function f(B).

use std::fmt;
use std::str::FromStr;

use num_traits::{One, ToPrimitive, Zero};

use super::mink::MinkVec;
use super::scalar::{parse_rational, to_f64, Coeff, Rational};
use super::series::Taylor;
use crate::error::{Error, Result};

/// The deformation vector `a` and scalar `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformParams<T = f64> {
    pub a: MinkVec<T>,
    pub s: T,
}

impl<T: Coeff> DeformParams<T> {
    pub fn new(a: MinkVec<T>, s: T) -> Self {
        Self { a, s }
    }

    pub fn undeformed(dim: usize) -> Result<Self> {
        Ok(Self { a: MinkVec::zero(dim)?, s: T::zero() })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn a2(&self) -> T {
        self.a.square()
    }

    /// a² − s, the coefficient that multiplies D² inside B.
    pub fn c(&self) -> T {
        self.a2() - self.s.clone()
    }

    /// Parameters at (εa, ε²s).
    pub fn graded(&self, eps: T) -> Self {
        Self { a: self.a.scale(&eps), s: self.s.clone() * eps.clone() * eps }
    }

    pub fn check_dim(&self, v: &MinkVec<T>) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: v.dim() });
        }
        Ok(())
    }
}

impl DeformParams<Rational> {
    pub fn to_f64(&self) -> DeformParams<f64> {
        DeformParams { a: self.a.map(to_f64), s: to_f64(&self.s) }
    }
}

/// Which member of the family f(B), f(0) = 1, defines the realization.
#[derive(Clone, Debug, PartialEq)]
pub enum RealizationSpec {
    /// f(B) = √(1−B).
    Maggiore,
    /// f(B) = 1.
    Unit,
    /// f(B) = 1 − uB.
    GeneralU(Rational),
    /// f given by its Taylor coefficients, read as a polynomial.
    CustomTaylor(Vec<Rational>),
}

impl RealizationSpec {
    pub fn custom(coeffs: Vec<Rational>) -> Result<Self> {
        match coeffs.first() {
            Some(c) if c.is_one() => Ok(Self::CustomTaylor(coeffs)),
            _ => Err(Error::InvalidRealization("f(0) must equal 1".into())),
        }
    }

    pub fn is_maggiore(&self) -> bool {
        matches!(self, Self::Maggiore)
    }

    /// Taylor coefficients of f with at least `len` entries (for series) or
    /// the exact polynomial.
    pub fn f_taylor(&self, len: usize) -> Taylor<Rational> {
        match self {
            Self::Maggiore => Taylor::sqrt_1m(len.max(1)),
            Self::Unit => Taylor::polynomial(vec![Rational::one()]),
            Self::GeneralU(u) => Taylor::polynomial(vec![Rational::one(), -u.clone()]),
            Self::CustomTaylor(c) => Taylor::polynomial(c.clone()),
        }
    }

    /// f(B) and f′(B) in floating point.
    pub fn f_and_derivative(&self, b: f64) -> Result<(f64, f64)> {
        match self {
            Self::Maggiore => {
                if b > 1.0 {
                    return Err(Error::Domain(format!("√(1−B) with B = {b}")));
                }
                let r = (1.0 - b).sqrt();
                Ok((r, -0.5 / r))
            }
            Self::Unit => Ok((1.0, 0.0)),
            Self::GeneralU(u) => {
                let u = to_f64(u);
                Ok((1.0 - u * b, -u))
            }
            Self::CustomTaylor(c) => {
                let mut f = 0.0;
                let mut df = 0.0;
                for (m, cm) in c.iter().enumerate().rev() {
                    let cm = to_f64(cm);
                    f = f * b + cm;
                    if m > 0 {
                        df = df * b + m as f64 * cm;
                    }
                }
                Ok((f, df))
            }
        }
    }

    /// γ₂(B) = −(1 + 2ff′)/(f − 2Bf′) in floating point.
    pub fn gamma2(&self, b: f64) -> Result<f64> {
        match self {
            Self::Maggiore => Ok(0.0),
            Self::Unit => Ok(-1.0),
            _ => {
                let (f, df) = self.f_and_derivative(b)?;
                let den = f - 2.0 * b * df;
                if den == 0.0 {
                    return Err(Error::Domain(format!("γ₂ denominator vanishes at B = {b}")));
                }
                Ok(-(1.0 + 2.0 * f * df) / den)
            }
        }
    }

    /// The parameter u when f is linear, with Maggiore and unit mapped to
    /// their second-order equivalents u = 1/2 and u = 0.
    pub fn effective_u(&self) -> Option<f64> {
        match self {
            Self::Maggiore => Some(0.5),
            Self::Unit => Some(0.0),
            Self::GeneralU(u) => u.to_f64(),
            Self::CustomTaylor(c) => Some(c.get(1).map(|c1| -to_f64(c1)).unwrap_or(0.0)),
        }
    }
}

impl fmt::Display for RealizationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Maggiore => write!(f, "maggiore"),
            Self::Unit => write!(f, "unit"),
            Self::GeneralU(u) => write!(f, "u={u}"),
            Self::CustomTaylor(c) => {
                let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
                write!(f, "taylor={}", parts.join(","))
            }
        }
    }
}

impl FromStr for RealizationSpec {
    type Err = Error;

    /// Accepts `maggiore`, `unit`, `u=<value>` and `taylor=<c0>,<c1>,…`.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        match text {
            "maggiore" => Ok(Self::Maggiore),
            "unit" => Ok(Self::Unit),
            _ => {
                if let Some(u) = text.strip_prefix("u=") {
                    let u = parse_rational(u).map_err(|_| Error::InvalidRealization(text.into()))?;
                    if u.is_zero() {
                        return Ok(Self::Unit);
                    }
                    Ok(Self::GeneralU(u))
                } else if let Some(list) = text.strip_prefix("taylor=") {
                    let coeffs = list
                        .split(',')
                        .map(parse_rational)
                        .collect::<Result<Vec<_>>>()
                        .map_err(|_| Error::InvalidRealization(text.into()))?;
                    Self::custom(coeffs)
                } else {
                    Err(Error::InvalidRealization(text.into()))
                }
            }
        }
    }
}

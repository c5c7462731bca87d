//! Truncated power series in the grading parameter ε.
//!
//! Every deformation input is tagged with its ε-degree (one per component of
//! `a`, two per `s`), so an identity that holds as a formal series can be
//! checked exactly order by order. The same type doubles as a univariate
//! Taylor polynomial when the variable is something other than ε.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::scalar::Coeff;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct EpsSeries<T> {
    coeffs: Vec<T>,
}

/// Taylor coefficients `c_m` of a function `F(t) = Σ c_m t^m`.
///
/// `polynomial` marks the list as the whole function rather than a
/// truncation of an infinite expansion; only polynomials may be applied to a
/// series with a nonzero constant term.
#[derive(Clone, Debug, PartialEq)]
pub struct Taylor<T> {
    pub coeffs: Vec<T>,
    pub polynomial: bool,
}

impl<T: Coeff> Taylor<T> {
    pub fn polynomial(coeffs: Vec<T>) -> Self {
        Self { coeffs, polynomial: true }
    }

    pub fn truncated(coeffs: Vec<T>) -> Self {
        Self { coeffs, polynomial: false }
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(T) -> U) -> Taylor<U> {
        Taylor { coeffs: self.coeffs.iter().cloned().map(f).collect(), polynomial: self.polynomial }
    }

    pub fn identity() -> Self {
        Self::polynomial(vec![T::zero(), T::one()])
    }

    fn ratio(p: i64, q: i64) -> T {
        T::from_i64(p).expect("integer coefficient") / T::from_i64(q).expect("integer coefficient")
    }

    /// √(1+t) = Σ binom(1/2, m) t^m.
    pub fn sqrt_1p(len: usize) -> Self {
        let mut coeffs = Vec::with_capacity(len);
        let mut c = T::one();
        for m in 0..len {
            coeffs.push(c.clone());
            // binom(1/2, m+1) = binom(1/2, m) * (1/2 - m) / (m + 1)
            c = c * Self::ratio(1 - 2 * m as i64, 2 * (m as i64 + 1));
        }
        Self::truncated(coeffs)
    }

    /// √(1−t).
    pub fn sqrt_1m(len: usize) -> Self {
        let mut t = Self::sqrt_1p(len);
        for (m, c) in t.coeffs.iter_mut().enumerate() {
            if m % 2 == 1 {
                *c = -c.clone();
            }
        }
        t
    }

    /// 1/(1+t).
    pub fn recip_1p(len: usize) -> Self {
        let coeffs = (0..len).map(|m| if m % 2 == 0 { T::one() } else { -T::one() }).collect();
        Self::truncated(coeffs)
    }

    /// 1/(1−t).
    pub fn geometric(len: usize) -> Self {
        Self::truncated(vec![T::one(); len])
    }

    fn factorial_recips(len: usize, offset: usize, step: usize) -> Self {
        let coeffs = (0..len)
            .map(|m| {
                let k = step * m + offset;
                let fact: i64 = (1..=k as i64).product();
                Self::ratio(1, fact)
            })
            .collect();
        Self::truncated(coeffs)
    }

    /// cosh(√w) as a series in w.
    pub fn cosh_sqrt(len: usize) -> Self {
        Self::factorial_recips(len, 0, 2)
    }

    /// sinh(√w)/√w as a series in w.
    pub fn sinhc_sqrt(len: usize) -> Self {
        Self::factorial_recips(len, 1, 2)
    }

    /// (cosh(√w) − 1)/w as a series in w.
    pub fn coshm1c_sqrt(len: usize) -> Self {
        Self::factorial_recips(len, 2, 2)
    }
}

impl<T: Coeff> EpsSeries<T> {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![T::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    pub fn constant(c: T, order: usize) -> Self {
        Self::monomial(c, 0, order)
    }

    /// `c·ε^grade`, or zero if the grade exceeds the truncation order.
    pub fn monomial(c: T, grade: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if grade <= order {
            s.coeffs[grade] = c;
        }
        s
    }

    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Lowest grade with a nonzero coefficient.
    pub fn min_grade(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn with_order(&self, order: usize) -> Self {
        let mut coeffs: Vec<T> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, T::zero());
        Self { coeffs }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&T::from_i64(k).expect("integer coefficient"))
    }

    /// Multiplies by `ε^k`, dropping whatever falls past the order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for j in 0..=n.saturating_sub(k) {
            if j + k <= n {
                out.coeffs[j + k] = self.coeffs[j].clone();
            }
        }
        out
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(
            self.order(),
            other.order(),
            "series truncation orders differ ({} vs {})",
            self.order(),
            other.order()
        );
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(self.mul_ref(other))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.check_order(other);
        let n = self.order();
        let mut out = vec![T::zero(); n + 1];
        let lo_a = self.min_grade();
        let lo_b = other.min_grade();
        let (Some(lo_a), Some(lo_b)) = (lo_a, lo_b) else {
            return Self { coeffs: out };
        };
        for i in lo_a..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in lo_b..=(n - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].clone() + self.coeffs[i].clone() * other.coeffs[j].clone();
            }
        }
        Self { coeffs: out }
    }

    pub fn pow(&self, m: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..m {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Σ taylor[m]·S^m, truncated at the series order.
    pub fn apply_analytic(&self, taylor: &Taylor<T>) -> Result<Self> {
        let n = self.order();
        match self.min_grade() {
            None => {
                let c0 = taylor.coeffs.first().cloned().unwrap_or_else(T::zero);
                return Ok(Self::constant(c0, n));
            }
            Some(0) if !taylor.polynomial => return Err(Error::NonzeroConstantTerm),
            Some(0) => {}
            Some(lo) => {
                let need = n / lo + 1;
                if !taylor.polynomial && taylor.coeffs.len() < need {
                    return Err(Error::TaylorTooShort { have: taylor.coeffs.len(), need });
                }
            }
        }
        let mut acc = Self::zero(n);
        for c in taylor.coeffs.iter().rev() {
            acc = acc.mul_ref(self);
            acc.coeffs[0] = acc.coeffs[0].clone() + c.clone();
        }
        Ok(acc)
    }

    /// Multiplicative inverse; the constant term must be invertible.
    pub fn recip(&self) -> Result<Self> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return Err(Error::Domain("series with zero constant term has no inverse".into()));
        }
        let inv0 = T::one() / c0;
        let rest = self.scale(&inv0) - Self::one(self.order());
        let geo = rest.apply_analytic(&Taylor::recip_1p(self.order() + 1))?;
        Ok(geo.scale(&inv0))
    }

    /// d/dt, reading the series as a polynomial in its own variable.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for m in 1..=n {
            out.coeffs[m - 1] = self.coeffs[m].clone() * T::from_usize(m).expect("integer");
        }
        out
    }

    /// ∫₀ᵗ, dropping the term pushed past the order.
    pub fn integral(&self) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for m in 0..n {
            out.coeffs[m + 1] = self.coeffs[m].clone() / T::from_usize(m + 1).expect("integer");
        }
        out
    }

    /// Multiplies by the series variable (t·S).
    pub fn times_var(&self) -> Self {
        self.shift(1)
    }

    /// Evaluates the series as a polynomial at `x`.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }
}

impl<T: Coeff> Add for &EpsSeries<T> {
    type Output = EpsSeries<T>;
    fn add(self, rhs: &EpsSeries<T>) -> EpsSeries<T> {
        self.check_order(rhs);
        EpsSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<T: Coeff> Sub for &EpsSeries<T> {
    type Output = EpsSeries<T>;
    fn sub(self, rhs: &EpsSeries<T>) -> EpsSeries<T> {
        self.check_order(rhs);
        EpsSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<T: Coeff> Mul for &EpsSeries<T> {
    type Output = EpsSeries<T>;
    fn mul(self, rhs: &EpsSeries<T>) -> EpsSeries<T> {
        self.mul_ref(rhs)
    }
}

impl<T: Coeff> Neg for &EpsSeries<T> {
    type Output = EpsSeries<T>;
    fn neg(self) -> EpsSeries<T> {
        EpsSeries { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<T: Coeff> $tr for EpsSeries<T> {
            type Output = EpsSeries<T>;
            fn $method(self, rhs: EpsSeries<T>) -> EpsSeries<T> {
                (&self).$method(&rhs)
            }
        }
        impl<T: Coeff> $tr<&EpsSeries<T>> for EpsSeries<T> {
            type Output = EpsSeries<T>;
            fn $method(self, rhs: &EpsSeries<T>) -> EpsSeries<T> {
                (&self).$method(rhs)
            }
        }
        impl<T: Coeff> $tr<EpsSeries<T>> for &EpsSeries<T> {
            type Output = EpsSeries<T>;
            fn $method(self, rhs: EpsSeries<T>) -> EpsSeries<T> {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Coeff> Neg for EpsSeries<T> {
    type Output = EpsSeries<T>;
    fn neg(self) -> EpsSeries<T> {
        -&self
    }
}

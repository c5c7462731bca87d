//! Vectors in n-dimensional Minkowski space, signature (−, +, …, +).

use std::ops::{Add, Index, Sub};

use super::scalar::Coeff;
use crate::error::{Error, Result};

/// An n-component Minkowski vector with lower indices; index 0 is time.
#[derive(Clone, Debug, PartialEq)]
pub struct MinkVec<T = f64> {
    components: Vec<T>,
}

/// Metric component η_μμ as an integer sign.
pub fn eta(mu: usize) -> i64 {
    if mu == 0 {
        -1
    } else {
        1
    }
}

impl<T: Coeff> MinkVec<T> {
    pub fn new(components: Vec<T>) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::DimensionTooSmall(components.len()));
        }
        Ok(Self { components })
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Self::new(vec![T::zero(); dim])
    }

    /// Unit vector along axis `mu`.
    pub fn basis(dim: usize, mu: usize) -> Result<Self> {
        let mut v = Self::zero(dim)?;
        v.components[mu] = T::one();
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[T] {
        &self.components
    }

    pub fn into_components(self) -> Vec<T> {
        self.components
    }

    /// Index-raised component η^μμ v_μ.
    pub fn upper(&self, mu: usize) -> T {
        if mu == 0 {
            -self.components[0].clone()
        } else {
            self.components[mu].clone()
        }
    }

    pub fn dot(&self, other: &Self) -> Result<T> {
        mink_dot(self, other)
    }

    /// u·u, which cannot fail.
    pub fn square(&self) -> T {
        self.components
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (mu, c)| {
                let sq = c.clone() * c.clone();
                if mu == 0 {
                    acc - sq
                } else {
                    acc + sq
                }
            })
    }

    pub fn scale(&self, c: &T) -> Self {
        Self { components: self.components.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(T::is_zero)
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> MinkVec<U> {
        MinkVec { components: self.components.iter().map(f).collect() }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self - other)
    }
}

impl MinkVec<f64> {
    /// Euclidean norm of the component array, used for residuals.
    pub fn norm(&self) -> f64 {
        self.components.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.components.iter().all(|c| c.is_finite())
    }

    pub fn from_slice(v: &[f64]) -> Result<Self> {
        Self::new(v.to_vec())
    }
}

impl<T> Index<usize> for MinkVec<T> {
    type Output = T;
    fn index(&self, mu: usize) -> &T {
        &self.components[mu]
    }
}

/// −u₀v₀ + Σᵢ uᵢvᵢ.
pub fn mink_dot<T: Coeff>(u: &MinkVec<T>, v: &MinkVec<T>) -> Result<T> {
    u.check_dim(v)?;
    let mut acc = T::zero();
    for (mu, (x, y)) in u.components.iter().zip(&v.components).enumerate() {
        let p = x.clone() * y.clone();
        acc = if mu == 0 { acc - p } else { acc + p };
    }
    Ok(acc)
}

impl<T: Coeff> Add for &MinkVec<T> {
    type Output = MinkVec<T>;
    fn add(self, rhs: &MinkVec<T>) -> MinkVec<T> {
        assert_eq!(self.dim(), rhs.dim(), "Minkowski vectors of different dimension");
        MinkVec {
            components: self.components.iter().zip(&rhs.components).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<T: Coeff> Sub for &MinkVec<T> {
    type Output = MinkVec<T>;
    fn sub(self, rhs: &MinkVec<T>) -> MinkVec<T> {
        assert_eq!(self.dim(), rhs.dim(), "Minkowski vectors of different dimension");
        MinkVec {
            components: self.components.iter().zip(&rhs.components).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

/// Boost in the (0, i) plane or rotation in the (i, j) plane by `angle`.
///
/// Components are lower-index; since η is diagonal with η₀₀ = −1, a boost of
/// the lower components has the same matrix as a boost of the upper ones.
pub fn lorentz_boost(v: &MinkVec, angle: f64, plane: (usize, usize)) -> Result<MinkVec> {
    let (p, q) = plane;
    let n = v.dim();
    if p == q || p >= n || q >= n {
        return Err(Error::InvalidPlane(p, q));
    }
    let mut out = v.components.clone();
    let (x, y) = (v.components[p], v.components[q]);
    if p == 0 || q == 0 {
        let (c, s) = (angle.cosh(), angle.sinh());
        out[p] = c * x + s * y;
        out[q] = s * x + c * y;
    } else {
        let (c, s) = (angle.cos(), angle.sin());
        out[p] = c * x - s * y;
        out[q] = s * x + c * y;
    }
    MinkVec::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> MinkVec {
        MinkVec::from_slice(c).unwrap()
    }

    #[test]
    fn signature() {
        assert_eq!(mink_dot(&v(&[1.0, 0.0]), &v(&[1.0, 0.0])).unwrap(), -1.0);
        assert_eq!(mink_dot(&v(&[0.0, 1.0]), &v(&[0.0, 1.0])).unwrap(), 1.0);
        assert_eq!(mink_dot(&v(&[3.0, 4.0]), &v(&[1.0, 2.0])).unwrap(), 5.0);
    }

    #[test]
    fn dimension_checks() {
        assert_eq!(
            mink_dot(&v(&[1.0, 0.0]), &v(&[1.0, 0.0, 0.0])),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        );
        assert_eq!(MinkVec::<f64>::new(vec![1.0]), Err(Error::DimensionTooSmall(1)));
    }

    #[test]
    fn boost_basics() {
        let x = v(&[0.3, -0.2, 0.7]);
        assert_eq!(lorentz_boost(&x, 0.0, (0, 2)).unwrap(), x);
        let b = lorentz_boost(&v(&[1.0, 0.0]), 0.4, (0, 1)).unwrap();
        assert!((b[0] - 0.4f64.cosh()).abs() < 1e-15 && (b[1] - 0.4f64.sinh()).abs() < 1e-15);
        for plane in [(0, 1), (2, 0), (1, 2)] {
            let y = lorentz_boost(&x, 0.83, plane).unwrap();
            assert!((y.square() - x.square()).abs() < 1e-13);
        }
        assert_eq!(lorentz_boost(&x, 0.1, (1, 1)), Err(Error::InvalidPlane(1, 1)));
        assert_eq!(lorentz_boost(&x, 0.1, (0, 3)), Err(Error::InvalidPlane(0, 3)));
    }
}

//! Scalar types for the two tracks: exact complex rationals for operator
//! algebra, and `f64` for momentum-space numerics.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type CRational = Complex<BigRational>;

/// Coefficient ring for truncated series and operator terms.
pub trait Coeff: Num + FromPrimitive + Clone + Neg<Output = Self> + Debug + Send + Sync {}

impl<T> Coeff for T where T: Num + FromPrimitive + Clone + Neg<Output = T> + Debug + Send + Sync {}

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn real(r: Rational) -> CRational {
    Complex::new(r, Rational::zero())
}

pub fn imag(r: Rational) -> CRational {
    Complex::new(Rational::zero(), r)
}

pub fn i_unit() -> CRational {
    Complex::new(Rational::zero(), Rational::one())
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Modulus of an exact complex value as a float, used for residual reporting.
pub fn abs_f64(c: &CRational) -> f64 {
    to_f64(&c.re).hypot(to_f64(&c.im))
}

/// Parses `p/q`, an integer, or a decimal literal (`-0.125`, `1e-2`) into an
/// exact rational. Decimal literals are read digit by digit, so `0.1` is 1/10.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::InvalidInput(format!("not a number: {text:?}"));
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = text[pos + 1..].parse().map_err(|_| bad())?;
            (&text[..pos], exp)
        }
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{whole}{frac}");
    let numer: BigInt = if all_digits.is_empty() {
        BigInt::zero()
    } else {
        all_digits.parse().map_err(|_| bad())?
    };
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Largest absolute value among real and imaginary parts, as a float.
pub fn max_abs_part(c: &CRational) -> f64 {
    to_f64(&c.re.abs()).max(to_f64(&c.im.abs()))
}

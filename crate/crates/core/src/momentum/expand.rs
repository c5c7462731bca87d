//! ε-expansions at (εa, ε²s): the second-order formulas and, for Maggiore,
//! the exact laws expanded as series.

use std::fmt;
use std::str::FromStr;

use super::exact;
use super::perturbative;
use crate::error::{Error, Result};
use crate::numerics::{DeformParams, EpsSeries, MinkVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Compose,
    Kvec,
    KvecInverse,
    Antipode,
}

impl Quantity {
    pub const ALL: [Quantity; 4] = [Self::Compose, Self::Kvec, Self::KvecInverse, Self::Antipode];
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Compose => "compose",
            Self::Kvec => "kvec",
            Self::KvecInverse => "kvec-inverse",
            Self::Antipode => "antipode",
        })
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|q| q.to_string() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown quantity {s:?}")))
    }
}

/// `coefficients[m][μ]` is the ε^m coefficient of component μ.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionTable {
    pub quantity: Quantity,
    pub coefficients: Vec<Vec<f64>>,
}

impl ExpansionTable {
    fn from_series(quantity: Quantity, series: &[EpsSeries<f64>]) -> Self {
        let order = series[0].order();
        let coefficients = (0..=order).map(|m| series.iter().map(|c| *c.coeff(m)).collect()).collect();
        Self { quantity, coefficients }
    }

    /// Largest coefficient difference at each order.
    pub fn gaps(&self, other: &Self) -> Vec<f64> {
        self.coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max))
            .collect()
    }
}

fn graded_inputs(params: &DeformParams, order: usize) -> (Vec<EpsSeries<f64>>, EpsSeries<f64>) {
    let a = params.a.components().iter().map(|v| EpsSeries::monomial(*v, 1, order)).collect();
    (a, EpsSeries::monomial(params.s, 2, order))
}

fn constants(v: &MinkVec, order: usize) -> Vec<EpsSeries<f64>> {
    v.components().iter().map(|c| EpsSeries::constant(*c, order)).collect()
}

/// The second-order formula for `quantity` at parameter u, expanded to `order`.
pub fn formula_table(quantity: Quantity, u: f64, params: &DeformParams, k: &MinkVec, q: &MinkVec, order: usize) -> Result<ExpansionTable> {
    params.check_dim(k)?;
    params.check_dim(q)?;
    let (a, s) = graded_inputs(params, order);
    let (kc, qc) = (constants(k, order), constants(q, order));
    let series = match quantity {
        Quantity::Compose => perturbative::compose_generic(u, &a, &s, &kc, &qc),
        Quantity::Kvec => perturbative::kvec_generic(u, &a, &s, &kc),
        Quantity::KvecInverse => perturbative::kvec_inverse_generic(u, &a, &s, &kc),
        Quantity::Antipode => {
            if params.a.components()[1..].iter().any(|v| *v != 0.0) {
                return Err(Error::InvalidInput("the second-order antipode needs a = (a₀, 0, …, 0)".into()));
            }
            perturbative::antipode_generic(&a[0], &kc)
        }
    };
    Ok(ExpansionTable::from_series(quantity, &series))
}

/// The exact Maggiore law for `quantity`, expanded to `order`.
pub fn exact_table(quantity: Quantity, params: &DeformParams, k: &MinkVec, q: &MinkVec, order: usize) -> Result<ExpansionTable> {
    params.check_dim(k)?;
    params.check_dim(q)?;
    let (a, s) = graded_inputs(params, order);
    let (kc, qc) = (constants(k, order), constants(q, order));
    let sweeps = order + 1;
    let series = match quantity {
        Quantity::Compose => exact::compose_series(&a, &s, &kc, &qc, sweeps)?,
        Quantity::Kvec => exact::k_exact_generic(&a, &s, &kc)?,
        Quantity::KvecInverse => exact::k_inverse_series(&a, &s, &kc, sweeps)?,
        Quantity::Antipode => exact::antipode_series(&a, &s, &kc, sweeps)?,
    };
    Ok(ExpansionTable::from_series(quantity, &series))
}

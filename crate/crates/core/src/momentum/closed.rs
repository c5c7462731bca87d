//! Closed-form composition laws for the three special cases, written on real
//! momenta: the left leg carries k, the right leg q, and D ↦ i·momentum on
//! each leg. Every formula is checked against the exact flow in the tests.

use std::fmt;
use std::str::FromStr;

use super::field::dot;
use crate::error::{Error, Result};
use crate::numerics::{DeformParams, MinkVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedCase {
    /// s = 0, f = √(1−B).
    Kappa,
    /// a = 0, f = 1.
    SnyderUnit,
    /// a = 0, f = √(1−B).
    SnyderMaggiore,
}

impl ClosedCase {
    pub const ALL: [ClosedCase; 3] = [Self::Kappa, Self::SnyderUnit, Self::SnyderMaggiore];
}

impl fmt::Display for ClosedCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Kappa => "kappa",
            Self::SnyderUnit => "snyder-unit",
            Self::SnyderMaggiore => "snyder-maggiore",
        })
    }
}

impl FromStr for ClosedCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kappa" => Ok(Self::Kappa),
            "snyder-unit" => Ok(Self::SnyderUnit),
            "snyder-maggiore" => Ok(Self::SnyderMaggiore),
            _ => Err(Error::InvalidInput(format!("unknown closed case {s:?}"))),
        }
    }
}

fn root(x: f64) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::Domain(format!("square root of {x:e}")));
    }
    Ok(x.sqrt())
}

/// Evaluates the closed-form composition law for `case`.
///
/// * kappa: D = kZ⁻¹(q) + q − a(kq)/Z⁻¹(k) + ½a□(k)(aq)/Z⁻¹(k),
///   Z⁻¹(v) = (av) + √(1+a²v²), □(k) = −2k²/(1+√(1+a²k²)).
/// * snyder-maggiore: D = k√(1−sq²) + q − sk(kq)/(1+√(1−sk²)).
/// * snyder-unit: D = [k(1 − s(kq)/(1+√(1+sk²))) + q√(1+sk²)] / (1 − s(kq)).
pub fn compose_closed(case: ClosedCase, params: &DeformParams, k: &MinkVec, q: &MinkVec) -> Result<MinkVec> {
    params.check_dim(k)?;
    params.check_dim(q)?;
    let (kc, qc) = (k.components(), q.components());
    let a = params.a.components();
    let s = params.s;
    let kq = dot(kc, qc);
    let kk = dot(kc, kc);
    let out: Vec<f64> = match case {
        ClosedCase::Kappa => {
            if s != 0.0 {
                return Err(Error::WrongCase(format!("kappa case needs s = 0, got {s}")));
            }
            let a2 = dot(a, a);
            let zinv = |v: &[f64]| -> Result<f64> { Ok(dot(a, v) + root(1.0 + a2 * dot(v, v))?) };
            let zk = zinv(kc)?;
            let zq = zinv(qc)?;
            let boxk = -2.0 * kk / (1.0 + root(1.0 + a2 * kk)?);
            let aq = dot(a, qc);
            (0..kc.len()).map(|mu| kc[mu] * zq + qc[mu] - a[mu] * kq / zk + 0.5 * a[mu] * boxk * aq / zk).collect()
        }
        ClosedCase::SnyderMaggiore | ClosedCase::SnyderUnit => {
            if !params.a.is_zero() {
                return Err(Error::WrongCase(format!("{case} case needs a = 0")));
            }
            if case == ClosedCase::SnyderMaggiore {
                let rq = root(1.0 - s * dot(qc, qc))?;
                let rk = root(1.0 - s * kk)?;
                (0..kc.len()).map(|mu| kc[mu] * rq + qc[mu] - s * kc[mu] * kq / (1.0 + rk)).collect()
            } else {
                let rk = root(1.0 + s * kk)?;
                let den = 1.0 - s * kq;
                if den <= 0.0 {
                    return Err(Error::Domain(format!("1 − s(kq) = {den:e}")));
                }
                let kf = 1.0 - s * kq / (1.0 + rk);
                (0..kc.len()).map(|mu| (kc[mu] * kf + qc[mu] * rk) / den).collect()
            }
        }
    };
    MinkVec::from_slice(&out)
}

//! Ordered-basis calculus in the deformed enveloping algebra.
//!
//! Elements are sums of `c · x̂^α D^β`, where `x̂^α` is the product of the
//! noncommutative coordinates in ascending index order and all derivatives
//! stand to the right. Words are brought to this form with two rewrite
//! rules of the Maggiore realization (γ₂ = 0):
//!
//!   D_μ x̂_ν → x̂_ν D_μ + η_μν Z⁻¹ + i a_μ D_ν
//!   x̂_ν x̂_μ → x̂_μ x̂_ν − i a_μ x̂_ν + i a_ν x̂_μ − s x̂_μ D_ν Z + s x̂_ν D_μ Z   (ν > μ)
//!
//! where Z⁻¹ = −A + √(1−B) and the Lorentz generators have been eliminated
//! through M_μν = (x̂_μ D_ν − x̂_ν D_μ) Z.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Sub};

use crate::error::{Error, Result};
use crate::numerics::mink::eta;
use crate::numerics::scalar::{i_unit, int, real, CRational};
use crate::realizations::RealizedFrame;
use crate::weyl::{Coef, Exps, Monomial, WeylOp};

/// A generator appearing in a word.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Xhat(usize),
    D(usize),
}

/// An element of the enveloping algebra in ordered form. In each key the
/// `x` multi-index counts x̂ factors and `d` counts D factors.
#[derive(Clone, PartialEq)]
pub struct NCOp(WeylOp);

impl NCOp {
    pub fn zero(dim: usize, order: usize) -> Self {
        Self(WeylOp::zero(dim, order))
    }

    pub fn one(dim: usize, order: usize) -> Self {
        Self(WeylOp::one(dim, order))
    }

    pub fn monomial(dim: usize, order: usize, m: Monomial, c: Coef) -> Self {
        Self(WeylOp::from_terms(dim, order, [(m, c)]))
    }

    pub fn from_terms(dim: usize, order: usize, terms: impl IntoIterator<Item = (Monomial, Coef)>) -> Self {
        Self(WeylOp::from_terms(dim, order, terms))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coef)> {
        self.0.terms()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.0.max_abs_coeff()
    }

    /// Highest number of x̂ factors in any term.
    pub fn xhat_degree(&self) -> usize {
        self.terms().map(|(m, _)| m.x.degree()).max().unwrap_or(0)
    }

    pub fn has_derivatives(&self) -> bool {
        self.terms().any(|(m, _)| !m.d.is_zero())
    }

    pub fn scale(&self, c: &Coef) -> Self {
        Self(self.0.scale(c))
    }

    pub fn scale_graded(&self, c: &CRational, grade: usize) -> Self {
        Self(self.0.scale_graded(c, grade))
    }
}

impl fmt::Debug for NCOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // same layout as the Weyl printer, with x̂ in place of X
        write!(f, "{}", self.0.to_string().replace('X', "x̂"))
    }
}

impl Add for &NCOp {
    type Output = NCOp;
    fn add(self, rhs: &NCOp) -> NCOp {
        NCOp(&self.0 + &rhs.0)
    }
}

impl Sub for &NCOp {
    type Output = NCOp;
    fn sub(self, rhs: &NCOp) -> NCOp {
        NCOp(&self.0 - &rhs.0)
    }
}

/// Drops every term that still carries a derivative: the ∘-action on 1.
pub fn circ_project(op: &NCOp) -> NCOp {
    NCOp(op.0.drop_derivatives())
}

fn word_of(m: &Monomial, dim: usize) -> Vec<Letter> {
    let mut word = Vec::with_capacity(m.degree());
    for mu in 0..dim {
        word.extend(std::iter::repeat_n(Letter::Xhat(mu), m.x.0[mu] as usize));
    }
    for mu in 0..dim {
        word.extend(std::iter::repeat_n(Letter::D(mu), m.d.0[mu] as usize));
    }
    word
}

fn lowest_index(e: &Exps, dim: usize) -> Option<usize> {
    (0..dim).find(|&mu| e.0[mu] > 0)
}

/// Rewriting engine for one parameter set. Products of a letter with an
/// ordered monomial are memoized; the cache is per instance and not shared
/// between threads.
pub struct NcAlgebra<'a> {
    frame: &'a RealizedFrame,
    dim: usize,
    order: usize,
    z: NCOp,
    zinv: NCOp,
    memo: RefCell<HashMap<(Letter, Monomial), NCOp>>,
}

impl<'a> NcAlgebra<'a> {
    /// Requires the Maggiore realization, the only one with a shift operator.
    pub fn new(frame: &'a RealizedFrame) -> Result<Self> {
        let (z, zinv) = frame.build_z()?;
        let dim = frame.dim();
        let order = frame.order;
        let lift = |op: &WeylOp| NCOp(op.clone());
        Ok(Self { frame, dim, order, z: lift(&z), zinv: lift(&zinv), memo: RefCell::new(HashMap::new()) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn frame(&self) -> &RealizedFrame {
        self.frame
    }

    pub fn xhat(&self, mu: usize) -> NCOp {
        NCOp::monomial(self.dim, self.order, Monomial { x: Exps::unit(mu), d: Exps::default() }, self.one_coef())
    }

    pub fn d(&self, mu: usize) -> NCOp {
        NCOp::monomial(self.dim, self.order, Monomial { x: Exps::default(), d: Exps::unit(mu) }, self.one_coef())
    }

    pub fn z(&self) -> &NCOp {
        &self.z
    }

    pub fn zinv(&self) -> &NCOp {
        &self.zinv
    }

    fn one_coef(&self) -> Coef {
        Coef::one(self.order)
    }

    fn a_coef(&self, mu: usize) -> Coef {
        Coef::monomial(real(self.frame.params.a[mu].clone()), 1, self.order)
    }

    fn s_coef(&self) -> Coef {
        Coef::monomial(real(self.frame.params.s.clone()), 2, self.order)
    }

    pub fn letter(&self, letter: Letter) -> NCOp {
        match letter {
            Letter::Xhat(mu) => self.xhat(mu),
            Letter::D(mu) => self.d(mu),
        }
    }

    /// Brings a word of generators to ordered form.
    pub fn normal_order(&self, word: &[Letter]) -> NCOp {
        let mut acc = NCOp::one(self.dim, self.order);
        for &letter in word.iter().rev() {
            acc = self.left_mul_letter(letter, &acc);
        }
        acc
    }

    /// Ordered product of two ordered elements.
    pub fn mul(&self, left: &NCOp, right: &NCOp) -> NCOp {
        let mut out = NCOp::zero(self.dim, self.order);
        for (m, c) in left.terms() {
            let mut acc = right.clone();
            for &letter in word_of(m, self.dim).iter().rev() {
                acc = self.left_mul_letter(letter, &acc);
            }
            out = &out + &acc.scale(c);
        }
        out
    }

    pub fn commutator(&self, left: &NCOp, right: &NCOp) -> NCOp {
        &self.mul(left, right) - &self.mul(right, left)
    }

    fn left_mul_letter(&self, letter: Letter, op: &NCOp) -> NCOp {
        let mut out = NCOp::zero(self.dim, self.order);
        for (m, c) in op.terms() {
            out = &out + &self.letter_times_monomial(letter, m).scale(c);
        }
        out
    }

    fn letter_times_monomial(&self, letter: Letter, m: &Monomial) -> NCOp {
        if let Some(hit) = self.memo.borrow().get(&(letter, *m)) {
            return hit.clone();
        }
        let result = self.rewrite(letter, m);
        self.memo.borrow_mut().insert((letter, *m), result.clone());
        result
    }

    fn rewrite(&self, letter: Letter, m: &Monomial) -> NCOp {
        let n = self.dim;
        let unit = |e: Exps| NCOp::monomial(n, self.order, Monomial { x: e, d: m.d }, self.one_coef());
        match letter {
            Letter::D(mu) => {
                let Some(nu) = lowest_index(&m.x, n) else {
                    let d = m.d.plus(&Exps::unit(mu));
                    return NCOp::monomial(n, self.order, Monomial { x: m.x, d }, self.one_coef());
                };
                // D_μ x̂_ν rest = x̂_ν (D_μ rest) + η_μν Z⁻¹ rest + i a_μ D_ν rest
                let mut rest = *m;
                rest.x.0[nu] -= 1;
                let rest_op = NCOp::monomial(n, self.order, rest, self.one_coef());
                let moved = self.left_mul_letter(Letter::Xhat(nu), &self.letter_times_monomial(Letter::D(mu), &rest));
                let mut out = moved;
                if mu == nu {
                    let shifted = self.mul(&self.zinv, &rest_op);
                    out = &out + &shifted.scale_graded(&real(int(eta(mu))), 0);
                }
                let kappa = self.letter_times_monomial(Letter::D(nu), &rest).scale(&self.a_coef(mu));
                &out + &kappa.scale_graded(&i_unit(), 0)
            }
            Letter::Xhat(nu) => {
                let mu = match lowest_index(&m.x, n) {
                    Some(mu) if mu < nu => mu,
                    _ => return unit(m.x.plus(&Exps::unit(nu))),
                };
                // x̂_ν x̂_μ rest, μ < ν
                let mut rest = *m;
                rest.x.0[mu] -= 1;
                let i = i_unit();
                let nu_rest = self.letter_times_monomial(Letter::Xhat(nu), &rest);
                let swapped = self.left_mul_letter(Letter::Xhat(mu), &nu_rest);
                let kappa_1 = nu_rest.scale(&self.a_coef(mu)).scale_graded(&-i.clone(), 0);
                let kappa_2 = unit(m.x).scale(&self.a_coef(nu)).scale_graded(&i, 0);
                let rest_op = NCOp::monomial(n, self.order, rest, self.one_coef());
                let z_rest = self.mul(&self.z, &rest_op);
                let snyder_1 = self.left_mul_letter(Letter::Xhat(mu), &self.left_mul_letter(Letter::D(nu), &z_rest));
                let snyder_2 = self.left_mul_letter(Letter::Xhat(nu), &self.left_mul_letter(Letter::D(mu), &z_rest));
                let snyder = (&snyder_2 - &snyder_1).scale(&self.s_coef());
                &(&(&swapped + &kappa_1) + &kappa_2) + &snyder
            }
        }
    }

    /// Normal order of x̂_{μ_{Π(1)}}…x̂_{μ_{Π(m)}} minus that of x̂_{μ_1}…x̂_{μ_m}.
    pub fn pbw_defect(&self, perm: &[usize], indices: &[usize]) -> Result<NCOp> {
        if perm.len() != indices.len() {
            return Err(Error::InvalidInput("permutation and index list differ in length".into()));
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::InvalidInput(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if let Some(&bad) = indices.iter().find(|&&mu| mu >= self.dim) {
            return Err(Error::DimensionMismatch { expected: self.dim, found: bad + 1 });
        }
        let permuted: Vec<Letter> = perm.iter().map(|&p| Letter::Xhat(indices[p])).collect();
        let original: Vec<Letter> = indices.iter().map(|&mu| Letter::Xhat(mu)).collect();
        Ok(&self.normal_order(&permuted) - &self.normal_order(&original))
    }

    /// X_μ through the inverse realization, [x̂_μ − i(ax̂) f(B)⁻¹ D_μ] Z,
    /// already in ordered form.
    pub fn inverse_coordinate(&self, mu: usize) -> NCOp {
        let n = self.dim;
        let inv_f = NCOp(self.frame.f_of_b.recip().expect("f(0) = 1 makes f(B) invertible"));
        let mut ax = NCOp::zero(n, self.order);
        for alpha in 0..n {
            let a_up = self.frame.params.a.upper(alpha);
            ax = &ax + &self.xhat(alpha).scale_graded(&real(a_up), 1);
        }
        let correction = self.mul(&self.mul(&ax, &self.d(mu)), &inv_f).scale_graded(&i_unit(), 0);
        self.mul(&(&self.xhat(mu) - &correction), &self.z)
    }

    /// Î₂ = (X_αX^α) ∘ 1 with each X rewritten in x̂ and D.
    pub fn invariant_i2(&self) -> NCOp {
        let mut sum = NCOp::zero(self.dim, self.order);
        for alpha in 0..self.dim {
            let x = self.inverse_coordinate(alpha);
            sum = &sum + &self.mul(&x, &x).scale_graded(&real(int(eta(alpha))), 0);
        }
        circ_project(&sum)
    }

    /// x̂_αx̂^α ∘ 1 − i(n−1) a_αx̂^α ∘ 1.
    pub fn invariant_i2_expected(&self) -> NCOp {
        let n = self.dim;
        let mut quad = NCOp::zero(n, self.order);
        let mut lin = NCOp::zero(n, self.order);
        for alpha in 0..n {
            let sign = real(int(eta(alpha)));
            let xx = self.normal_order(&[Letter::Xhat(alpha), Letter::Xhat(alpha)]);
            quad = &quad + &xx.scale_graded(&sign, 0);
            lin = &lin + &self.xhat(alpha).scale(&self.a_coef(alpha)).scale_graded(&sign, 0);
        }
        let lin = lin.scale_graded(&(-i_unit() * real(int(n as i64 - 1))), 0);
        &circ_project(&quad) + &lin
    }

    /// M_μν = (x̂_μD_ν − x̂_νD_μ) Z.
    pub fn lorentz(&self, mu: usize, nu: usize) -> NCOp {
        let raw = &self.mul(&self.xhat(mu), &self.d(nu)) - &self.mul(&self.xhat(nu), &self.d(mu));
        self.mul(&raw, &self.z)
    }

    /// M_μν ∘ Î₂ for every plane, reading the action as: multiply the ordered
    /// form of Î₂ by M_μν from the left, reorder, project.
    pub fn lorentz_defect(&self, i2: &NCOp) -> Vec<((usize, usize), NCOp)> {
        let n = self.dim;
        let mut out = Vec::new();
        for mu in 0..n {
            for nu in mu + 1..n {
                out.push(((mu, nu), circ_project(&self.mul(&self.lorentz(mu, nu), i2))));
            }
        }
        out
    }

    /// The ordered element as a Weyl operator, substituting the realization
    /// for each x̂.
    pub fn realize(&self, op: &NCOp) -> WeylOp {
        let n = self.dim;
        let mut out = WeylOp::zero(n, self.order);
        for (m, c) in op.terms() {
            let mut prod = WeylOp::one(n, self.order);
            for letter in word_of(m, n) {
                let factor = match letter {
                    Letter::Xhat(mu) => &self.frame.xhat[mu],
                    Letter::D(mu) => &self.frame.d[mu],
                };
                prod = &prod * factor;
            }
            out = &out + &prod.scale(c);
        }
        out
    }

    /// Realizes a raw word directly, without reordering.
    pub fn realize_word(&self, word: &[Letter]) -> WeylOp {
        word.iter().fold(WeylOp::one(self.dim, self.order), |acc, &letter| {
            let factor = match letter {
                Letter::Xhat(mu) => &self.frame.xhat[mu],
                Letter::D(mu) => &self.frame.d[mu],
            };
            &acc * factor
        })
    }

    /// Ordered form of a word computed by splitting it at `split` and
    /// multiplying the two ordered halves; a different rewrite path from
    /// [`NcAlgebra::normal_order`].
    pub fn normal_order_split(&self, word: &[Letter], split: usize) -> NCOp {
        let split = split.min(word.len());
        self.mul(&self.normal_order(&word[..split]), &self.normal_order(&word[split..]))
    }
}

/// True if `op` has x̂-degree at most `bound` and no derivative terms.
pub fn projected_degree_ok(op: &NCOp, bound: usize) -> bool {
    !op.has_derivatives() && op.xhat_degree() <= bound
}

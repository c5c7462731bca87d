//! Normal-ordered arithmetic in the Heisenberg–Weyl algebra generated by
//! commuting coordinates X_μ and derivatives D_μ = ∂/∂X^μ, [D_μ, X_ν] = η_μν.
//!
//! Every element is a finite sum of `c · X^α D^β` with all X factors to the
//! left. Coefficients are ε-graded series with exact complex-rational
//! coefficients; products are truncated at the series order, so operators
//! built from power series in D stay finite.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::scalar::{int, max_abs_part, real, CRational};
use crate::numerics::series::{EpsSeries, Taylor};

/// Largest supported spacetime dimension.
pub const MAX_DIM: usize = 8;

/// ε-graded coefficient of a Weyl term.
pub type Coef = EpsSeries<CRational>;

/// Multi-index of exponents, one entry per coordinate.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exps(pub [u8; MAX_DIM]);

impl Exps {
    pub fn unit(mu: usize) -> Self {
        let mut e = Self::default();
        e.0[mu] = 1;
        e
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = *self;
        for (o, e) in out.0.iter_mut().zip(other.0) {
            *o += e;
        }
        out
    }

    /// Sign of the metric raised to this multi-index, Π η_μμ^e_μ.
    pub fn eta_sign(&self) -> i64 {
        if self.0[0] % 2 == 1 {
            -1
        } else {
            1
        }
    }
}

/// `X^x D^d`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub x: Exps,
    pub d: Exps,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: Exps([0; MAX_DIM]), d: Exps([0; MAX_DIM]) };

    pub fn degree(&self) -> usize {
        self.x.degree() + self.d.degree()
    }
}

fn binomial(n: u8, k: u8) -> i64 {
    let (n, k) = (n as i64, k as i64);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: u8) -> i64 {
    (1..=n as i64).product()
}

/// Expands `D^b X^c` on one coordinate:
/// Σ_j j!·C(b,j)·C(c,j)·η^j X^(c−j) D^(b−j). Returns (j, coefficient) pairs.
fn reorder_factors(b: u8, c: u8, eta: i64) -> Vec<(u8, i64)> {
    (0..=b.min(c))
        .map(|j| {
            let sign = if j % 2 == 1 { eta } else { 1 };
            (j, sign * factorial(j) * binomial(b, j) * binomial(c, j))
        })
        .collect()
}

/// Normal-ordered product of two monomials as (monomial, integer coefficient).
pub fn monomial_product(left: &Monomial, right: &Monomial, dim: usize) -> Vec<(Monomial, i64)> {
    let mut acc = vec![(Monomial { x: left.x.plus(&right.x), d: left.d.plus(&right.d) }, 1i64)];
    for mu in 0..dim {
        let (b, c) = (left.d.0[mu], right.x.0[mu]);
        if b == 0 || c == 0 {
            continue;
        }
        let eta = if mu == 0 { -1 } else { 1 };
        let choices = reorder_factors(b, c, eta);
        let mut next = Vec::with_capacity(acc.len() * choices.len());
        for (m, k) in &acc {
            for &(j, w) in &choices {
                let mut m2 = *m;
                m2.x.0[mu] -= j;
                m2.d.0[mu] -= j;
                next.push((m2, k * w));
            }
        }
        acc = next;
    }
    acc
}

fn graded_terms(op: &WeylOp) -> Vec<(Monomial, &Coef, usize)> {
    op.terms.iter().filter_map(|(m, c)| c.min_grade().map(|g| (*m, c, g))).collect()
}

/// An element of the Weyl algebra in normal order.
#[derive(Clone, PartialEq)]
pub struct WeylOp {
    dim: usize,
    order: usize,
    terms: BTreeMap<Monomial, Coef>,
}

impl WeylOp {
    pub fn zero(dim: usize, order: usize) -> Self {
        assert!((2..=MAX_DIM).contains(&dim), "dimension {dim} outside 2..={MAX_DIM}");
        Self { dim, order, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize, order: usize) -> Self {
        Self::scalar(dim, Coef::one(order))
    }

    /// A scalar multiple of the identity.
    pub fn scalar(dim: usize, c: Coef) -> Self {
        let order = c.order();
        Self::zero(dim, order).with_term(Monomial::ONE, c)
    }

    /// `c·ε^grade·m`.
    pub fn term(dim: usize, order: usize, m: Monomial, c: CRational, grade: usize) -> Self {
        Self::zero(dim, order).with_term(m, Coef::monomial(c, grade, order))
    }

    pub fn x(dim: usize, order: usize, mu: usize) -> Self {
        Self::term(dim, order, Monomial { x: Exps::unit(mu), d: Exps::default() }, CRational::one(), 0)
    }

    pub fn d(dim: usize, order: usize, mu: usize) -> Self {
        Self::term(dim, order, Monomial { x: Exps::default(), d: Exps::unit(mu) }, CRational::one(), 0)
    }

    fn with_term(mut self, m: Monomial, c: Coef) -> Self {
        self.add_term(m, c);
        self
    }

    fn add_term(&mut self, m: Monomial, c: Coef) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Builds an operator from raw terms, merging duplicates.
    pub fn from_terms(dim: usize, order: usize, terms: impl IntoIterator<Item = (Monomial, Coef)>) -> Self {
        let mut op = Self::zero(dim, order);
        for (m, c) in terms {
            op.add_term(m, c.with_order(order));
        }
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coef)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Coef> {
        self.terms.get(m)
    }

    /// Largest modulus of any real or imaginary coefficient part.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .flat_map(|c| c.coeffs().iter())
            .map(max_abs_part)
            .fold(0.0, f64::max)
    }

    /// Highest total (x + d) degree among the terms.
    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// True if no term contains an X factor.
    pub fn is_function_of_d(&self) -> bool {
        self.terms.keys().all(|m| m.x.is_zero())
    }

    /// Lowest ε-grade present, `None` for the zero operator.
    pub fn min_grade(&self) -> Option<usize> {
        self.terms.values().filter_map(EpsSeries::min_grade).min()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_ref(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_ref(other, true))
    }

    fn add_ref(&self, other: &Self, negate: bool) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, if negate { -c } else { c.clone() });
        }
        out
    }

    pub fn scale(&self, c: &Coef) -> Self {
        assert_eq!(c.order(), self.order, "coefficient order differs from operator order");
        Self::from_terms(self.dim, self.order, self.terms.iter().map(|(m, t)| (*m, t * c)))
    }

    /// Multiplies by `c·ε^grade`.
    pub fn scale_graded(&self, c: &CRational, grade: usize) -> Self {
        self.scale(&Coef::monomial(c.clone(), grade, self.order))
    }

    /// Normal-ordered product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_ref(other))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let n = self.order;
        let left = graded_terms(self);
        let right = graded_terms(other);
        let mut acc: HashMap<Monomial, Coef> = HashMap::new();
        for (ml, cl, gl) in &left {
            for (mr, cr, gr) in &right {
                if gl + gr > n {
                    continue;
                }
                let product = *cl * *cr;
                for (m, k) in monomial_product(ml, mr, self.dim) {
                    let term = if k == 1 { product.clone() } else { product.scale(&real(int(k))) };
                    match acc.get_mut(&m) {
                        Some(existing) => *existing = &*existing + &term,
                        None => {
                            acc.insert(m, term);
                        }
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self { dim: self.dim, order: n, terms }
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.commutator_ref(other))
    }

    fn commutator_ref(&self, other: &Self) -> Self {
        self.mul_ref(other).add_ref(&other.mul_ref(self), true)
    }

    pub fn pow(&self, m: usize) -> Self {
        let mut acc = Self::one(self.dim, self.order);
        for _ in 0..m {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Σ taylor[m]·S^m with products truncated at the operator order.
    ///
    /// Like the scalar series version, a truncated expansion may only be
    /// applied to an operator whose terms all have positive ε-grade.
    pub fn apply_taylor(&self, taylor: &Taylor<CRational>) -> Result<Self> {
        let n = self.order;
        match self.min_grade() {
            None => {
                let c0 = taylor.coeffs.first().cloned().unwrap_or_else(CRational::zero);
                return Ok(Self::scalar(self.dim, Coef::constant(c0, n)));
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
        let mut acc = Self::zero(self.dim, n);
        for c in taylor.coeffs.iter().rev() {
            acc = acc.mul_ref(self);
            acc.add_term(Monomial::ONE, Coef::constant(c.clone(), n));
        }
        Ok(acc)
    }

    /// Grade-zero part of every coefficient.
    pub fn grade_zero_part(&self) -> Self {
        Self::from_terms(
            self.dim,
            self.order,
            self.terms.iter().map(|(m, c)| (*m, Coef::constant(c.coeff(0).clone(), self.order))),
        )
    }

    /// Inverse of an operator whose ε⁰ part is a nonzero scalar, as the
    /// geometric series in the graded remainder.
    pub fn recip(&self) -> Result<Self> {
        let base = self.grade_zero_part();
        let c0 = match base.terms.iter().next() {
            Some((m, c)) if base.terms.len() == 1 && *m == Monomial::ONE => c.coeff(0).clone(),
            _ => {
                return Err(Error::Domain("only operators with a scalar ε⁰ part are inverted".into()));
            }
        };
        let inv0 = CRational::one() / c0;
        let rest = self.scale_graded(&inv0, 0).add_ref(&Self::one(self.dim, self.order), true);
        let len = self.order + 1;
        let geometric = rest.apply_taylor(&Taylor::<CRational>::recip_1p(len))?;
        Ok(geometric.scale_graded(&inv0, 0))
    }

    /// Keeps only the terms without D factors.
    pub fn drop_derivatives(&self) -> Self {
        Self::from_terms(
            self.dim,
            self.order,
            self.terms.iter().filter(|(m, _)| m.d.is_zero()).map(|(m, c)| (*m, c.clone())),
        )
    }

    /// The ⊳-action on a commutative polynomial.
    pub fn act(&self, p: &Poly) -> Result<Poly> {
        if self.dim != p.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim, found: p.dim() });
        }
        if self.order != p.order() {
            return Err(Error::OrderMismatch { left: self.order, right: p.order() });
        }
        Ok(Poly(self.mul_ref(&p.0).drop_derivatives()))
    }
}

impl fmt::Debug for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "(")?;
            let mut any = false;
            for (g, v) in c.coeffs().iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                if any {
                    write!(f, " + ")?;
                }
                any = true;
                write!(f, "({v})ε^{g}")?;
            }
            write!(f, ")")?;
            for (label, e) in [("X", &m.x), ("D", &m.d)] {
                for (mu, &k) in e.0.iter().enumerate().take(self.dim) {
                    match k {
                        0 => {}
                        1 => write!(f, "·{label}{mu}")?,
                        _ => write!(f, "·{label}{mu}^{k}")?,
                    }
                }
            }
        }
        Ok(())
    }
}

macro_rules! weyl_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr for &WeylOp {
            type Output = WeylOp;
            fn $method(self, rhs: &WeylOp) -> WeylOp {
                self.check(rhs).expect("incompatible Weyl operators");
                let f: fn(&WeylOp, &WeylOp) -> WeylOp = $body;
                f(self, rhs)
            }
        }
        impl $tr for WeylOp {
            type Output = WeylOp;
            fn $method(self, rhs: WeylOp) -> WeylOp {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&WeylOp> for WeylOp {
            type Output = WeylOp;
            fn $method(self, rhs: &WeylOp) -> WeylOp {
                (&self).$method(rhs)
            }
        }
        impl $tr<WeylOp> for &WeylOp {
            type Output = WeylOp;
            fn $method(self, rhs: WeylOp) -> WeylOp {
                self.$method(&rhs)
            }
        }
    };
}

weyl_binop!(Add, add, |a, b| a.add_ref(b, false));
weyl_binop!(Sub, sub, |a, b| a.add_ref(b, true));
weyl_binop!(Mul, mul, |a, b| a.mul_ref(b));

impl Neg for &WeylOp {
    type Output = WeylOp;
    fn neg(self) -> WeylOp {
        WeylOp::from_terms(self.dim, self.order, self.terms.iter().map(|(m, c)| (*m, -c)))
    }
}

impl Neg for WeylOp {
    type Output = WeylOp;
    fn neg(self) -> WeylOp {
        -&self
    }
}

/// Sums operators of a common shape; `None` for an empty iterator.
pub fn sum_ops<'a>(ops: impl IntoIterator<Item = &'a WeylOp>) -> Option<WeylOp> {
    let mut it = ops.into_iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, op| acc.add_ref(op, false)))
}

/// A commutative polynomial in X with ε-graded coefficients.
#[derive(Clone, PartialEq)]
pub struct Poly(WeylOp);

impl Poly {
    pub fn zero(dim: usize, order: usize) -> Self {
        Self(WeylOp::zero(dim, order))
    }

    pub fn one(dim: usize, order: usize) -> Self {
        Self(WeylOp::one(dim, order))
    }

    /// `X^x` with coefficient 1.
    pub fn monomial(dim: usize, order: usize, x: Exps) -> Self {
        Self(WeylOp::term(dim, order, Monomial { x, d: Exps::default() }, CRational::one(), 0))
    }

    pub fn coordinate(dim: usize, order: usize, mu: usize) -> Self {
        Self::monomial(dim, order, Exps::unit(mu))
    }

    pub fn from_terms(dim: usize, order: usize, terms: impl IntoIterator<Item = (Exps, Coef)>) -> Self {
        Self(WeylOp::from_terms(dim, order, terms.into_iter().map(|(x, c)| (Monomial { x, d: Exps::default() }, c))))
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Coef)> {
        self.0.terms.iter().map(|(m, c)| (&m.x, c))
    }

    pub fn coeff(&self, x: &Exps) -> Option<&Coef> {
        self.0.terms.get(&Monomial { x: *x, d: Exps::default() })
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn degree(&self) -> usize {
        self.0.max_degree()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.0.max_abs_coeff()
    }

    /// The polynomial as a multiplication operator.
    pub fn as_op(&self) -> &WeylOp {
        &self.0
    }

    pub fn scale(&self, c: &Coef) -> Self {
        Self(self.0.scale(c))
    }

    /// ∂/∂X^μ.
    pub fn derivative(&self, mu: usize) -> Self {
        let d = WeylOp::d(self.dim(), self.order(), mu);
        Self(d.mul_ref(&self.0).drop_derivatives())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly(&self.0 + &rhs.0)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly(&self.0 - &rhs.0)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly(&self.0 * &rhs.0)
    }
}

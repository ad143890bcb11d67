use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use num_bigint::BigInt;

use super::{clear_denominators, Rat};
use crate::error::{Error, Result};

/// Univariate series `Σ c_n t^n`, valid through degree `order`.
///
/// Stored densely; `coeffs.len() == order + 1` always holds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series1 {
    order: usize,
    coeffs: Vec<Rat>,
}

impl Series1 {
    pub fn zero(order: usize) -> Self {
        Series1 { order, coeffs: vec![Rat::zero(); order + 1] }
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The identity germ `t`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(1, Rat::one(), order)
    }

    pub fn monomial(n: usize, c: Rat, order: usize) -> Self {
        let mut s = Self::zero(order);
        if n <= order {
            s.coeffs[n] = c;
        }
        s
    }

    /// Builds from coefficients `c_0, c_1, ...`; entries past `order` are dropped.
    pub fn from_coeffs<I: IntoIterator<Item = Rat>>(order: usize, coeffs: I) -> Self {
        let mut s = Self::zero(order);
        for (n, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.coeffs[n] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, n: usize) -> Rat {
        self.coeffs.get(n).cloned().unwrap_or_else(Rat::zero)
    }

    pub(crate) fn coeff_ref(&self, n: usize) -> &Rat {
        &self.coeffs[n]
    }

    pub fn set_coeff(&mut self, n: usize, c: Rat) {
        if n <= self.order {
            self.coeffs[n] = c;
        }
    }

    /// Nonzero terms in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Series1 { order, coeffs: self.coeffs[..=order].to_vec() }
    }

    /// Raises the validity order, filling the new degrees with zeros.
    pub(crate) fn zero_extend(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order.max(self.order) + 1, Rat::zero());
        Series1 { order: order.max(self.order), coeffs }
    }

    /// Equality of the two germs through the smaller validity order.
    pub fn eq_to_order(&self, other: &Self) -> bool {
        let n = self.order.min(other.order);
        self.coeffs[..=n] == other.coeffs[..=n]
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Series1 { order: self.order, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// `t ↦ h(a t)`.
    pub fn scale_var(&self, a: &Rat) -> Self {
        let mut p = Rat::one();
        let mut out = Self::zero(self.order);
        for (n, c) in self.coeffs.iter().enumerate() {
            out.coeffs[n] = c * &p;
            p *= a;
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::constant(Rat::one(), self.order);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `self ∘ inner`; `inner` must vanish at zero.
    pub fn compose(&self, inner: &Series1) -> Result<Series1> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order.min(inner.order);
        let inner = inner.truncate(order);
        let mut acc = Self::constant(self.coeffs[0].clone(), order);
        let mut power = inner.clone();
        for n in 1..=order {
            let c = &self.coeffs[n];
            if !c.is_zero() {
                for (a, b) in acc.coeffs.iter_mut().zip(&power.coeffs).skip(n) {
                    *a += c * b;
                }
            }
            if n < order {
                power = &power * &inner;
            }
        }
        Ok(acc)
    }

    /// Compositional inverse of a formal line diffeomorphism.
    ///
    /// Runs `g ← g + (t − h(g))/h₁`, which fixes one more degree per pass.
    pub fn invert(&self) -> Result<Series1> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotInvertible("constant term is nonzero"));
        }
        if self.order == 0 {
            return Ok(Self::zero(0));
        }
        let lin = &self.coeffs[1];
        if lin.is_zero() {
            return Err(Error::NotInvertible("linear coefficient vanishes"));
        }
        let inv_lin = lin.recip();
        // Pass k only needs to see degrees up to k.
        let mut g = Self::identity(1).scale(&inv_lin);
        for k in 2..=self.order {
            let gk = g.zero_extend(k);
            let defect = &Self::identity(k) - &self.truncate(k).compose(&gk)?;
            g = &gk + &defect.scale(&inv_lin);
        }
        Ok(g)
    }

    pub fn derivative(&self) -> Result<Series1> {
        if self.order == 0 {
            return Err(Error::InsufficientOrder { order: 0, needed: 1 });
        }
        Ok(Series1::from_coeffs(
            self.order - 1,
            self.coeffs.iter().enumerate().skip(1).map(|(n, c)| c * Rat::from_integer(n.into())),
        ))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rat, &Rat) -> Rat) -> Self {
        let order = self.order.min(other.order);
        Series1 {
            order,
            coeffs: (0..=order).map(|n| f(&self.coeffs[n], &other.coeffs[n])).collect(),
        }
    }
}

impl<'a> Add<&'a Series1> for &'a Series1 {
    type Output = Series1;
    fn add(self, rhs: &Series1) -> Series1 {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a Series1> for &'a Series1 {
    type Output = Series1;
    fn sub(self, rhs: &Series1) -> Series1 {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<'a> Mul<&'a Series1> for &'a Series1 {
    type Output = Series1;
    fn mul(self, rhs: &Series1) -> Series1 {
        // Convolve integer numerators and reduce each coefficient once.
        let order = self.order.min(rhs.order);
        let (a, da) = clear_denominators(&self.coeffs[..=order]);
        let (b, db) = clear_denominators(&rhs.coeffs[..=order]);
        let mut acc = vec![BigInt::zero(); order + 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[..=order - i].iter().enumerate() {
                if !y.is_zero() {
                    acc[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        Series1 { order, coeffs: acc.into_iter().map(|n| Rat::new(n, den.clone())).collect() }
    }
}

impl Neg for &Series1 {
    type Output = Series1;
    fn neg(self) -> Series1 {
        Series1 { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for Series1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::expr::write_terms(f, self.terms().map(|(n, c)| (c, [('t', n)])))
    }
}

use num_traits::Zero;

use super::{Rat, Series2};
use crate::error::{Error, Result};

/// A formal plane map `(x, y) ↦ (first, second)` fixing the origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlaneMap {
    first: Series2,
    second: Series2,
}

impl PlaneMap {
    /// Both components are truncated to the smaller validity order.
    pub fn new(first: Series2, second: Series2) -> Result<Self> {
        if !first.constant_term().is_zero() || !second.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        Ok(Self::from_parts_unchecked(first, second))
    }

    pub(crate) fn from_parts_unchecked(first: Series2, second: Series2) -> Self {
        let order = first.order().min(second.order());
        PlaneMap { first: first.truncate(order), second: second.truncate(order) }
    }

    pub fn identity(order: usize) -> Self {
        PlaneMap { first: Series2::x(order), second: Series2::y(order) }
    }

    /// `(x, y) ↦ (a x + b y, c x + d y)` for `[a, b, c, d]`.
    pub fn linear(m: [Rat; 4], order: usize) -> Self {
        let [a, b, c, d] = m;
        PlaneMap { first: Series2::linear(a, b, order), second: Series2::linear(c, d, order) }
    }

    pub fn first(&self) -> &Series2 {
        &self.first
    }

    pub fn second(&self) -> &Series2 {
        &self.second
    }

    pub fn into_parts(self) -> (Series2, Series2) {
        (self.first, self.second)
    }

    pub fn order(&self) -> usize {
        self.first.order()
    }

    pub fn truncate(&self, order: usize) -> Self {
        PlaneMap { first: self.first.truncate(order), second: self.second.truncate(order) }
    }

    pub(crate) fn zero_extend(&self, order: usize) -> Self {
        PlaneMap { first: self.first.zero_extend(order), second: self.second.zero_extend(order) }
    }

    /// Jacobian at the origin as `[a, b, c, d]`.
    pub fn linear_part(&self) -> [Rat; 4] {
        [
            self.first.coeff(1, 0),
            self.first.coeff(0, 1),
            self.second.coeff(1, 0),
            self.second.coeff(0, 1),
        ]
    }

    pub fn jacobian_det(&self) -> Rat {
        let [a, b, c, d] = self.linear_part();
        a * d - b * c
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PlaneMap) -> Result<PlaneMap> {
        Ok(PlaneMap {
            first: self.first.compose(inner)?,
            second: self.second.compose(inner)?,
        })
    }

    /// `self ∘ self ∘ … ∘ self` (`k` factors, identity for `k = 0`).
    pub fn iterate(&self, k: usize) -> Result<PlaneMap> {
        let mut acc = PlaneMap::identity(self.order());
        for _ in 0..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        *self == PlaneMap::identity(self.order())
    }

    /// Compositional inverse.
    ///
    /// Iterates `n ← n + L⁻¹(id − m ∘ n)`, with `L` the linear part; each pass
    /// fixes one more degree, so pass `k` runs at truncation `k`.
    pub fn invert(&self) -> Result<PlaneMap> {
        let det = self.jacobian_det();
        if det.is_zero() {
            return Err(Error::NotInvertible("linear part is singular"));
        }
        let order = self.order();
        let [a, b, c, d] = self.linear_part();
        let inv = [&d / &det, -&b / &det, -&c / &det, &a / &det];
        let mut n = PlaneMap::linear(inv.clone(), order.min(1));
        for k in 2..=order {
            let nk = n.zero_extend(k);
            let image = self.truncate(k).compose(&nk)?;
            let du = &Series2::x(k) - &image.first;
            let dv = &Series2::y(k) - &image.second;
            let (mut first, mut second) = nk.into_parts();
            first.axpy(&inv[0], &du);
            first.axpy(&inv[1], &dv);
            second.axpy(&inv[2], &du);
            second.axpy(&inv[3], &dv);
            n = PlaneMap { first, second };
        }
        Ok(n)
    }

    /// Applies `(x, y) ↦ (a x + b y, c x + d y)` after `self`.
    pub fn then_linear(&self, m: &[Rat; 4]) -> PlaneMap {
        let [a, b, c, d] = m;
        let comb = |p: &Rat, q: &Rat| {
            let mut out = Series2::zero(self.order());
            out.axpy(p, &self.first);
            out.axpy(q, &self.second);
            out
        };
        PlaneMap { first: comb(a, b), second: comb(c, d) }
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use num_bigint::BigInt;

use super::{clear_denominators, PlaneMap, Rat, Series1};
use crate::error::{Error, Result};

/// Bivariate series `Σ c_rs x^r y^s`, valid through total degree `order`.
///
/// Coefficients live in one graded array: degree `d` occupies a contiguous
/// block of `d + 1` slots ordered by decreasing `r`. Within that block the
/// offset of `x^r y^s` is therefore `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series2 {
    order: usize,
    coeffs: Vec<Rat>,
}

/// Divisors supported by [`Series2::div_exact`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Divisor {
    X,
    Y,
    XMinusY,
}

#[inline]
fn block(d: usize) -> usize {
    d * (d + 1) / 2
}

#[inline]
fn index(r: usize, s: usize) -> usize {
    block(r + s) + s
}

impl Series2 {
    pub fn zero(order: usize) -> Self {
        Series2 { order, coeffs: vec![Rat::zero(); block(order + 1)] }
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        Self::monomial(0, 0, c, order)
    }

    pub fn monomial(r: usize, s: usize, c: Rat, order: usize) -> Self {
        let mut out = Self::zero(order);
        out.set_coeff(r, s, c);
        out
    }

    pub fn x(order: usize) -> Self {
        Self::monomial(1, 0, Rat::one(), order)
    }

    pub fn y(order: usize) -> Self {
        Self::monomial(0, 1, Rat::one(), order)
    }

    /// `a x + b y`.
    pub fn linear(a: Rat, b: Rat, order: usize) -> Self {
        let mut out = Self::zero(order);
        out.set_coeff(1, 0, a);
        out.set_coeff(0, 1, b);
        out
    }

    /// Sums the given terms; exponents past `order` are dropped.
    pub fn from_terms<I: IntoIterator<Item = (usize, usize, Rat)>>(order: usize, terms: I) -> Self {
        let mut out = Self::zero(order);
        for (r, s, c) in terms {
            if r + s <= order {
                out.coeffs[index(r, s)] += c;
            }
        }
        out
    }

    /// Lifts `h(t)` to the series `h(x)`.
    pub fn from_x(h: &Series1) -> Self {
        Self::from_terms(h.order(), h.terms().map(|(n, c)| (n, 0, c.clone())))
    }

    /// Lifts `h(t)` to the series `h(y)`.
    pub fn from_y(h: &Series1) -> Self {
        Self::from_terms(h.order(), h.terms().map(|(n, c)| (0, n, c.clone())))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, r: usize, s: usize) -> Rat {
        if r + s > self.order {
            return Rat::zero();
        }
        self.coeffs[index(r, s)].clone()
    }

    pub fn set_coeff(&mut self, r: usize, s: usize, c: Rat) {
        if r + s <= self.order {
            self.coeffs[index(r, s)] = c;
        }
    }

    pub fn constant_term(&self) -> &Rat {
        &self.coeffs[0]
    }

    /// Nonzero terms `(r, s, c)`, by total degree ascending, then `r` descending.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Rat)> + '_ {
        (0..=self.order).flat_map(move |d| {
            (0..=d).filter_map(move |s| {
                let c = &self.coeffs[block(d) + s];
                (!c.is_zero()).then_some((d - s, s, c))
            })
        })
    }

    /// Coefficients of the degree-`d` part, indexed by the `y` exponent.
    pub fn homogeneous(&self, d: usize) -> &[Rat] {
        &self.coeffs[block(d)..block(d + 1)]
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        (0..=self.order).find(|&d| self.homogeneous(d).iter().any(|c| !c.is_zero()))
    }

    /// The homogeneous part of degree `d` as a series of the same order.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        let mut out = Self::zero(self.order);
        if d <= self.order {
            out.coeffs[block(d)..block(d + 1)].clone_from_slice(self.homogeneous(d));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Series2 { order, coeffs: self.coeffs[..block(order + 1)].to_vec() }
    }

    /// Raises the validity order, filling the new degrees with zeros. Only for
    /// iterations that determine those degrees afterwards.
    pub(crate) fn zero_extend(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(block(order.max(self.order) + 1), Rat::zero());
        Series2 { order: order.max(self.order), coeffs }
    }

    /// Equality of the two germs through the smaller validity order.
    pub fn eq_to_order(&self, other: &Self) -> bool {
        let n = block(self.order.min(other.order) + 1);
        self.coeffs[..n] == other.coeffs[..n]
    }

    /// True when the 1-jet (constant and linear terms) vanishes.
    pub fn has_vanishing_1jet(&self) -> bool {
        self.coeffs.iter().take(3).all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Series2 { order: self.order, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// `(x, y) ↦ f(a x, b y)`.
    pub fn scale_vars(&self, a: &Rat, b: &Rat) -> Self {
        let apow: Vec<Rat> = powers(a, self.order);
        let bpow: Vec<Rat> = powers(b, self.order);
        let mut out = self.clone();
        for d in 0..=self.order {
            for s in 0..=d {
                let c = &mut out.coeffs[block(d) + s];
                if !c.is_zero() {
                    *c *= &apow[d - s] * &bpow[s];
                }
            }
        }
        out
    }

    /// `(x, y) ↦ f(y, x)`.
    pub fn swap_vars(&self) -> Self {
        let mut out = Self::zero(self.order);
        for (r, s, c) in self.terms() {
            out.coeffs[index(s, r)] = c.clone();
        }
        out
    }

    /// Keeps only the monomials accepted by `keep(r, s)`.
    pub fn filter_terms(&self, keep: impl Fn(usize, usize) -> bool) -> Self {
        Self::from_terms(
            self.order,
            self.terms().filter(|&(r, s, _)| keep(r, s)).map(|(r, s, c)| (r, s, c.clone())),
        )
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::constant(Rat::one(), self.order);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `f ∘ m`, truncated to the smaller of the two validity orders.
    pub fn compose(&self, m: &PlaneMap) -> Result<Series2> {
        let order = self.order.min(m.order());
        let u = m.first().truncate(order);
        let v = m.second().truncate(order);
        if !u.constant_term().is_zero() || !v.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        // f(u, v) = Σ_r u^r · h_r(v) with h_r(v) = Σ_s f_rs v^s, evaluated by Horner in u.
        let mut vpow = Vec::with_capacity(order + 1);
        vpow.push(Self::constant(Rat::one(), order));
        for s in 1..=order {
            let next = &vpow[s - 1] * &v;
            vpow.push(next);
        }
        let inner = |r: usize| {
            let mut h = Self::zero(order);
            for (s, vs) in vpow.iter().enumerate().take(order - r + 1) {
                let c = &self.coeffs[index(r, s)];
                if !c.is_zero() {
                    h.axpy(c, vs);
                }
            }
            h
        };
        let mut acc = inner(order);
        for r in (0..order).rev() {
            acc = &acc * &u;
            acc = &acc + &inner(r);
        }
        Ok(acc)
    }

    /// `h ∘ self` for a univariate outer series; `self` must vanish at the origin.
    pub fn reparametrize(&self, h: &Series1) -> Result<Series2> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order.min(h.order());
        // Σ hₙ selfⁿ: the powers keep the small coefficients of `self`, which
        // is much cheaper than Horner once `h` has large denominators.
        let inner = self.truncate(order);
        let mut acc = Self::constant(h.coeff(0), order);
        let mut power = inner.clone();
        for n in 1..=order {
            let c = h.coeff_ref(n);
            if !c.is_zero() {
                acc.axpy(c, &power);
            }
            if n < order {
                power = &power * &inner;
            }
        }
        Ok(acc)
    }

    /// The univariate series `t ↦ f(a t, b t)`.
    pub fn restrict_line(&self, a: &Rat, b: &Rat) -> Series1 {
        let apow = powers(a, self.order);
        let bpow = powers(b, self.order);
        Series1::from_coeffs(
            self.order,
            (0..=self.order).map(|d| {
                self.homogeneous(d)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .fold(Rat::zero(), |acc, (s, c)| acc + c * &apow[d - s] * &bpow[s])
            }),
        )
    }

    /// Exact quotient by `x`, `y` or `x − y`; the validity order drops by one.
    pub fn div_exact(&self, d: Divisor) -> Result<Series2> {
        if self.order == 0 {
            return Err(Error::InsufficientOrder { order: 0, needed: 1 });
        }
        if !self.coeffs[0].is_zero() {
            return Err(Error::InexactDivision { degree: 0 });
        }
        let order = self.order - 1;
        let mut q = Self::zero(order);
        for deg in 1..=self.order {
            let h = self.homogeneous(deg);
            let out = &mut q.coeffs[block(deg - 1)..block(deg)];
            match d {
                Divisor::X => {
                    // x^r y^s with r ≥ 1 ↦ x^(r-1) y^s; the pure y^deg slot must vanish.
                    if !h[deg].is_zero() {
                        return Err(Error::InexactDivision { degree: deg });
                    }
                    out.clone_from_slice(&h[..deg]);
                }
                Divisor::Y => {
                    if !h[0].is_zero() {
                        return Err(Error::InexactDivision { degree: deg });
                    }
                    out.clone_from_slice(&h[1..]);
                }
                Divisor::XMinusY => {
                    // h_(r,s) = q_(r-1,s) − q_(r,s-1); solve by increasing s.
                    let mut prev = Rat::zero();
                    for s in 0..deg {
                        let cur = &h[s] + &prev;
                        out[s] = cur.clone();
                        prev = cur;
                    }
                    if h[deg] != -prev {
                        return Err(Error::InexactDivision { degree: deg });
                    }
                }
            }
        }
        Ok(q)
    }

    pub fn dx(&self) -> Result<Series2> {
        if self.order == 0 {
            return Err(Error::InsufficientOrder { order: 0, needed: 1 });
        }
        Ok(Self::from_terms(
            self.order - 1,
            self.terms()
                .filter(|&(r, _, _)| r > 0)
                .map(|(r, s, c)| (r - 1, s, c * Rat::from_integer(r.into()))),
        ))
    }

    pub fn dy(&self) -> Result<Series2> {
        if self.order == 0 {
            return Err(Error::InsufficientOrder { order: 0, needed: 1 });
        }
        Ok(Self::from_terms(
            self.order - 1,
            self.terms()
                .filter(|&(_, s, _)| s > 0)
                .map(|(r, s, c)| (r, s - 1, c * Rat::from_integer(s.into()))),
        ))
    }

    /// `log(1 + u) = Σ (−1)^(k+1) u^k / k` for `u(0, 0) = 0`.
    pub fn log1p(&self) -> Result<Series2> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut out = Self::zero(self.order);
        let mut power = self.clone();
        for k in 1..=self.order {
            let w = Rat::new(if k % 2 == 1 { 1.into() } else { (-1).into() }, k.into());
            out.axpy(&w, &power);
            power = &power * self;
        }
        Ok(out)
    }

    /// `self += k · other` over the common order.
    pub(crate) fn axpy(&mut self, k: &Rat, other: &Series2) {
        let n = block(self.order.min(other.order) + 1);
        self.truncate_in_place(self.order.min(other.order));
        for (a, b) in self.coeffs[..n].iter_mut().zip(&other.coeffs[..n]) {
            if !b.is_zero() {
                *a += k * b;
            }
        }
    }

    fn truncate_in_place(&mut self, order: usize) {
        if order < self.order {
            self.order = order;
            self.coeffs.truncate(block(order + 1));
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rat, &Rat) -> Rat) -> Self {
        let order = self.order.min(other.order);
        let n = block(order + 1);
        Series2 {
            order,
            coeffs: self.coeffs[..n].iter().zip(&other.coeffs[..n]).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

fn powers(a: &Rat, n: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(n + 1);
    let mut p = Rat::one();
    for _ in 0..=n {
        out.push(p.clone());
        p *= a;
    }
    out
}

impl<'a> Add<&'a Series2> for &'a Series2 {
    type Output = Series2;
    fn add(self, rhs: &Series2) -> Series2 {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a Series2> for &'a Series2 {
    type Output = Series2;
    fn sub(self, rhs: &Series2) -> Series2 {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<'a> Mul<&'a Series2> for &'a Series2 {
    type Output = Series2;
    fn mul(self, rhs: &Series2) -> Series2 {
        // Convolve integer numerators and reduce each coefficient once.
        let order = self.order.min(rhs.order);
        let n = block(order + 1);
        let (a, da) = clear_denominators(&self.coeffs[..n]);
        let (b, db) = clear_denominators(&rhs.coeffs[..n]);
        let nonzero = |v: &[BigInt], d: usize| v[block(d)..block(d + 1)].iter().any(|c| !c.is_zero());
        let a_live: Vec<bool> = (0..=order).map(|d| nonzero(&a, d)).collect();
        let b_live: Vec<bool> = (0..=order).map(|d| nonzero(&b, d)).collect();
        let mut acc = vec![BigInt::zero(); n];
        for da_ in (0..=order).filter(|&d| a_live[d]) {
            let ha = &a[block(da_)..block(da_ + 1)];
            for db_ in (0..=order - da_).filter(|&d| b_live[d]) {
                let hb = &b[block(db_)..block(db_ + 1)];
                let base = block(da_ + db_);
                for (sa, x) in ha.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (sb, y) in hb.iter().enumerate() {
                        if !y.is_zero() {
                            acc[base + sa + sb] += x * y;
                        }
                    }
                }
            }
        }
        let den = da * db;
        Series2 { order, coeffs: acc.into_iter().map(|c| Rat::new(c, den.clone())).collect() }
    }
}

impl Neg for &Series2 {
    type Output = Series2;
    fn neg(self) -> Series2 {
        Series2 { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty { (&self).$m(rhs) }
        }
    )*};
}

forward_owned!(Series2, Add::add, Sub::sub, Mul::mul);
forward_owned!(Series1, Add::add, Sub::sub, Mul::mul);

impl Neg for Series2 {
    type Output = Series2;
    fn neg(self) -> Series2 {
        -&self
    }
}

impl Neg for Series1 {
    type Output = Series1;
    fn neg(self) -> Series1 {
        -&self
    }
}

impl fmt::Display for Series2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::expr::write_terms(f, self.terms().map(|(r, s, c)| (c, [('x', r), ('y', s)])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, rat};

    fn p(src: &str, order: usize) -> Series2 {
        crate::expr::parse_series2(src, order).unwrap()
    }

    #[test]
    fn product_of_binomials() {
        assert_eq!(p("1+x", 5) * p("1+y", 5), p("1+x+y+x*y", 5));
    }

    #[test]
    fn additive_identity() {
        let f = p("x + 3y - 1/2 x^2 y", 6);
        assert_eq!(&f + &Series2::zero(6), f);
    }

    #[test]
    fn order_is_min_of_operands() {
        let a = p("x + y^3", 7);
        let b = p("1 + x*y", 4);
        assert_eq!((&a * &b).order(), 4);
        assert_eq!((&a + &b).order(), 4);
    }

    #[test]
    fn compose_linear_substitution() {
        let m = PlaneMap::linear([int(-1), int(-1), int(1), int(0)], 6);
        assert_eq!(p("x+y", 6).compose(&m).unwrap(), p("-y", 6));
    }

    #[test]
    fn compose_expands_directly() {
        let m = PlaneMap::new(p("x + y^2", 6), p("y", 6)).unwrap();
        assert_eq!(p("x*y", 6).compose(&m).unwrap(), p("x*y + y^3", 6));
    }

    #[test]
    fn compose_rejects_nonzero_constant() {
        let m = PlaneMap::from_parts_unchecked(p("1 + x", 4), p("y", 4));
        assert_eq!(p("x", 4).compose(&m), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn restrict_along_lines() {
        let f = p("x + y + x*y", 6);
        assert_eq!(f.restrict_line(&int(1), &int(0)), Series1::identity(6));
        assert_eq!(
            f.restrict_line(&int(1), &int(1)),
            Series1::from_coeffs(6, [int(0), int(2), int(1)])
        );
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("x^2 y - x y^2", 6).div_exact(Divisor::XMinusY).unwrap(), p("x y", 5));
        let p0 = p("x y (x-y)(x+y)(2x+y)(x+2y)", 9);
        assert_eq!(p0.div_exact(Divisor::X).unwrap(), p("y(x-y)(x+y)(2x+y)(x+2y)", 8));
        assert_eq!(
            p("x + y", 5).div_exact(Divisor::XMinusY),
            Err(Error::InexactDivision { degree: 1 })
        );
        assert_eq!(p("x + y^2", 5).div_exact(Divisor::X), Err(Error::InexactDivision { degree: 2 }));
        assert_eq!(p("x^3 + y", 5).div_exact(Divisor::Y), Err(Error::InexactDivision { degree: 3 }));
    }

    #[test]
    fn derivatives_and_log() {
        let f = p("x y (x - y)", 6);
        assert_eq!(f.dx().unwrap(), p("2 x y - y^2", 5));
        assert_eq!(p("2 x y", 4).dx().unwrap().dy().unwrap(), p("2", 2));
        let mercator = p("x", 6).log1p().unwrap();
        for k in 1..=6i64 {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            assert_eq!(mercator.coeff(k as usize, 0), rat(sign, k));
        }
        assert_eq!(p("1 + x", 3).log1p(), Err(Error::NonzeroConstantTerm));
        assert!(matches!(Series2::zero(0).dx(), Err(Error::InsufficientOrder { .. })));
    }

    #[test]
    fn valuation_and_homogeneous_part() {
        let f = p("x^3 + 2 x y^2 + y^4", 6);
        assert_eq!(f.valuation(), Some(3));
        assert_eq!(f.homogeneous_part(3), p("x^3 + 2 x y^2", 6));
        assert_eq!(Series2::zero(5).valuation(), None);
    }
}

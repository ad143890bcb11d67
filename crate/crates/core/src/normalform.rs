//! Reduction of a web `(x, y, f)` to the normal form `x + y + xy(x − y) g`.
//!
//! The pipeline:
//!
//! 1. rescale both axes so that the linear part of `f` becomes `x + y`;
//! 2. substitute `x ← a⁻¹(x)`, `y ← b⁻¹(y)` where `a(t) = f(t, 0)` and
//!    `b(t) = f(0, t)`, which straightens both boundary restrictions to `t`;
//! 3. conjugate the diagonal restriction `c(t)` to doubling by solving
//!    `k(2t) = c(k(t))`, then relabel leaves with `Z = k⁻¹`.
//!
//! The result is certified afterwards by the three restriction identities
//! `f̃(t,0) = t`, `f̃(0,t) = t`, `f̃(t,t) = 2t`, and `g` is obtained by exact
//! division of `f̃ − x − y` by `y`, `x` and `x − y`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::series::{int, rat_pow, sign, Divisor, PlaneMap, Rat, Series1, Series2};

/// A web presented as verticals, horizontals and the level sets of `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Web {
    f: Series2,
}

impl Web {
    /// Requires `f(0,0) = 0` and both first partials nonzero at the origin.
    pub fn new(f: Series2) -> Result<Self> {
        if !f.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        if f.order() == 0 {
            return Err(Error::InsufficientOrder { order: 0, needed: 1 });
        }
        if f.coeff(1, 0).is_zero() {
            return Err(Error::DegenerateLinearPart("∂f/∂x vanishes at the origin"));
        }
        if f.coeff(0, 1).is_zero() {
            return Err(Error::DegenerateLinearPart("∂f/∂y vanishes at the origin"));
        }
        Ok(Web { f })
    }

    pub fn f(&self) -> &Series2 {
        &self.f
    }

    pub fn order(&self) -> usize {
        self.f.order()
    }
}

/// Coordinate changes `X, Y, Z` and the residual `g` such that
/// `Z(f(X(x), Y(y))) = x + y + xy(x − y) g(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub x_map: Series1,
    pub y_map: Series1,
    pub z_map: Series1,
    pub g: Series2,
}

impl NormalForm {
    /// A web already in normal form with residual `g`; all coordinate changes are the identity.
    pub fn from_residual(g: Series2) -> Self {
        let order = g.order() + 3;
        NormalForm {
            x_map: Series1::identity(order),
            y_map: Series1::identity(order),
            z_map: Series1::identity(order),
            g,
        }
    }

    /// `x + y + xy(x − y) g`, valid through `order(g) + 3`.
    pub fn function(&self) -> Series2 {
        normal_form_function(&self.g)
    }

    pub fn web(&self) -> Web {
        Web::new(self.function()).expect("normal form has linear part x + y")
    }

    /// `(x, y) ↦ (X(x), Y(y))`, the map from normal to original coordinates.
    pub fn coordinate_map(&self) -> PlaneMap {
        PlaneMap::new(Series2::from_x(&self.x_map), Series2::from_y(&self.y_map))
            .expect("X and Y fix the origin")
    }
}

/// `x + y + xy(x − y) g`.
pub fn normal_form_function(g: &Series2) -> Series2 {
    let order = g.order() + 3;
    let x = Series2::x(order);
    let y = Series2::y(order);
    let lifted = Series2::from_terms(order, g.terms().map(|(r, s, c)| (r, s, c.clone())));
    let cubic = &(&x * &y) * &(&x - &y);
    &(&x + &y) + &(&cubic * &lifted)
}

/// Boundary and diagonal restrictions `f(t,0)`, `f(0,t)`, `f(t,t)` of the web
/// after its axes have been rescaled so that the linear part of `f` is `x + y`.
pub fn boundary_and_diagonal(w: &Web) -> Result<(Series1, Series1, Series1)> {
    let f1 = rescale_axes(w.f());
    Ok((
        f1.restrict_line(&Rat::one(), &Rat::zero()),
        f1.restrict_line(&Rat::zero(), &Rat::one()),
        f1.restrict_line(&Rat::one(), &Rat::one()),
    ))
}

fn rescale_axes(f: &Series2) -> Series2 {
    f.scale_vars(&f.coeff(1, 0).recip(), &f.coeff(0, 1).recip())
}

/// Solves `k(2t) = c(k(t))` with `k(t) = t + …` for `c(t) = 2t + …`.
///
/// Degree `n` of the equation reads `2ⁿ kₙ = 2 kₙ + Rₙ`, where `Rₙ` only
/// involves `k₁, …, kₙ₋₁`.
pub fn sternberg_k(c: &Series1) -> Result<Series1> {
    if !c.coeff(0).is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let two = int(2);
    if c.order() >= 1 && c.coeff(1) != two {
        return Err(Error::BadLinearCoefficient {
            expected: "2".into(),
            found: crate::series::format_rat(&c.coeff(1)),
        });
    }
    let order = c.order();
    let mut k = Series1::identity(order);
    if order == 0 {
        return Ok(Series1::zero(0));
    }
    let mut two_n = two.clone();
    for n in 2..=order {
        two_n *= &two;
        let denom = &two_n - &two;
        assert!(!denom.is_zero(), "2^n - 2 vanishes only for n = 1");
        let rn = c.truncate(n).compose(&k.truncate(n))?.coeff(n);
        k.set_coeff(n, rn / denom);
    }
    Ok(k)
}

/// Reduces `w` to normal form; see the module docs for the pipeline.
pub fn normalize(w: &Web) -> Result<NormalForm> {
    let f = w.f();
    let order = f.order();
    if order < 3 {
        return Err(Error::InsufficientOrder { order, needed: 3 });
    }
    let p = f.coeff(1, 0);
    let q = f.coeff(0, 1);
    let f1 = rescale_axes(f);

    let a = f1.restrict_line(&Rat::one(), &Rat::zero());
    let b = f1.restrict_line(&Rat::zero(), &Rat::one());
    let a_inv = a.invert()?;
    let b_inv = b.invert()?;
    let straighten = PlaneMap::new(Series2::from_x(&a_inv), Series2::from_y(&b_inv))?;
    let f2 = f1.compose(&straighten)?;

    let c = f2.restrict_line(&Rat::one(), &Rat::one());
    let k = sternberg_k(&c)?;
    let x_map = a_inv.compose(&k)?.scale(&p.recip());
    let y_map = b_inv.compose(&k)?.scale(&q.recip());
    let z_map = k.invert()?;

    let chart = PlaneMap::new(Series2::from_x(&x_map), Series2::from_y(&y_map))?;
    let f_tilde = f.compose(&chart)?.reparametrize(&z_map)?;
    let g = extract_residual(&f_tilde)?;
    Ok(NormalForm { x_map, y_map, z_map, g })
}

/// Checks the three restriction identities and divides `f − x − y` by `y`, `x`, `x − y`.
pub fn extract_residual(f: &Series2) -> Result<Series2> {
    let order = f.order();
    if order < 3 {
        return Err(Error::InsufficientOrder { order, needed: 3 });
    }
    if !satisfies_normal_identities(f) {
        return Err(Error::Residual("normal-form restriction identities fail".into()));
    }
    let rest = f - &Series2::linear(Rat::one(), Rat::one(), order);
    rest.div_exact(Divisor::Y)?.div_exact(Divisor::X)?.div_exact(Divisor::XMinusY)
}

/// `f(t,0) = t`, `f(0,t) = t` and `f(t,t) = 2t` through the order of `f`.
pub fn satisfies_normal_identities(f: &Series2) -> bool {
    let n = f.order();
    let t = Series1::identity(n);
    let one = Rat::one();
    let zero = Rat::zero();
    f.restrict_line(&one, &zero) == t
        && f.restrict_line(&zero, &one) == t
        && f.restrict_line(&one, &one) == t.scale(&int(2))
}

/// Residual of the web rescaled by the homothety `(x, y) ↦ (λx, λy)`:
/// `g_rs ↦ g_rs λ^(r+s+2)`.
pub fn lambda_action(g: &Series2, lambda: &Rat) -> Result<Series2> {
    if lambda.is_zero() {
        return Err(Error::ZeroLambda);
    }
    Ok(g.scale_vars(lambda, lambda).scale(&(lambda * lambda)))
}

/// Exact certificate that `g2 = lambda_action(g1, λ)` for some real `λ ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomothetyCertificate {
    /// First nonzero coefficient `(r₀, s₀)`; `None` when both residuals vanish.
    pub anchor: Option<(usize, usize)>,
    /// `r₀ + s₀ + 2`.
    pub exponent: u32,
    /// The rational value of `λ^exponent`.
    pub lambda_power: Rat,
    /// Sign of `λ` when forced by some odd exponent, `None` if either sign works.
    pub lambda_sign: Option<i8>,
    /// Order through which the equivalence was checked.
    pub order: usize,
}

/// Decides whether `g2` is the homothety image of `g1`, without irrational arithmetic.
///
/// The anchor is the first nonzero coefficient by total degree, then by `r`
/// ascending. Every other coefficient must satisfy
/// `(g2_rs / g1_rs)^(n+2) = (λ^(n+2))^(r+s+2)` together with the sign
/// constraints of real roots.
pub fn scale_equivalent(g1: &Series2, g2: &Series2) -> Option<HomothetyCertificate> {
    let order = g1.order().min(g2.order());
    let mut ratios = Vec::new();
    for d in 0..=order {
        for r in 0..=d {
            let (a, b) = (g1.coeff(r, d - r), g2.coeff(r, d - r));
            match (a.is_zero(), b.is_zero()) {
                (true, true) => {}
                (false, false) => ratios.push((r, d - r, b / a)),
                _ => return None,
            }
        }
    }
    let Some((r0, s0, power)) = ratios.first().cloned() else {
        return Some(HomothetyCertificate {
            anchor: None,
            exponent: 2,
            lambda_power: Rat::one(),
            lambda_sign: None,
            order,
        });
    };
    let e0 = (r0 + s0 + 2) as i64;
    if e0 % 2 == 0 && power.is_negative() {
        return None;
    }
    let mut lambda_sign = (e0 % 2 == 1).then(|| sign(&power));
    for (r, s, rho) in &ratios[1..] {
        let e = (r + s + 2) as i64;
        if rat_pow(rho, e0) != rat_pow(&power, e) {
            return None;
        }
        if e % 2 == 0 {
            if rho.is_negative() {
                return None;
            }
        } else {
            let sg = sign(rho);
            match lambda_sign {
                Some(forced) if forced != sg => return None,
                _ => lambda_sign = Some(sg),
            }
        }
    }
    Some(HomothetyCertificate {
        anchor: Some((r0, s0)),
        exponent: e0 as u32,
        lambda_power: power,
        lambda_sign,
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_series1, parse_series2};
    use crate::series::rat;

    fn web(src: &str, n: usize) -> Web {
        Web::new(parse_series2(src, n).unwrap()).unwrap()
    }

    #[test]
    fn web_invariants() {
        assert_eq!(Web::new(parse_series2("1 + x + y", 4).unwrap()), Err(Error::NonzeroConstantTerm));
        assert!(matches!(
            Web::new(parse_series2("x + x y", 4).unwrap()),
            Err(Error::DegenerateLinearPart(_))
        ));
    }

    #[test]
    fn boundary_and_diagonal_examples() {
        let (a, b, c) = boundary_and_diagonal(&web("x + y + x y", 6)).unwrap();
        assert_eq!(a, Series1::identity(6));
        assert_eq!(b, Series1::identity(6));
        assert_eq!(c, parse_series1("2t + t^2", 6).unwrap());
        let (_, _, c) = boundary_and_diagonal(&web("x + y", 6)).unwrap();
        assert_eq!(c, parse_series1("2t", 6).unwrap());
        let (a, b, c) = boundary_and_diagonal(&web("x + y + x^2 y", 6)).unwrap();
        assert_eq!((a.clone(), b), (Series1::identity(6), Series1::identity(6)));
        assert_eq!(c, parse_series1("2t + t^3", 6).unwrap());
        // Rescaling happens first: 3x − 2y has unit boundary restrictions afterwards.
        let (a, b, c) = boundary_and_diagonal(&web("3x - 2y", 4)).unwrap();
        assert_eq!((a, b, c), (Series1::identity(4), Series1::identity(4), parse_series1("2t", 4).unwrap()));
    }

    #[test]
    fn sternberg_identity_and_exponential() {
        assert_eq!(sternberg_k(&parse_series1("2t", 8).unwrap()).unwrap(), Series1::identity(8));
        let k = sternberg_k(&parse_series1("2t + t^2", 8).unwrap()).unwrap();
        let mut fact = 1i64;
        for n in 1..=8 {
            fact *= n;
            assert_eq!(k.coeff(n as usize), rat(1, fact));
        }
        let k = sternberg_k(&parse_series1("2t + t^3", 8).unwrap()).unwrap();
        assert_eq!(k.coeff(2), Rat::zero());
        assert_eq!(k.coeff(3), rat(1, 6));
    }

    #[test]
    fn sternberg_rejects_bad_slope() {
        assert!(matches!(
            sternberg_k(&parse_series1("3t", 5).unwrap()),
            Err(Error::BadLinearCoefficient { .. })
        ));
    }

    #[test]
    fn normalize_flat_and_cubic() {
        let nf = normalize(&web("x + y", 8)).unwrap();
        assert!(nf.g.is_zero());
        assert_eq!(nf.x_map, Series1::identity(8));
        let nf = normalize(&web("x + y + x y (x - y)", 8)).unwrap();
        assert_eq!(nf.g, Series2::constant(Rat::one(), 5));
        assert_eq!(nf.z_map, Series1::identity(8));
    }

    #[test]
    fn normalize_product_web() {
        let nf = normalize(&web("x + y + x y", 9)).unwrap();
        assert!(nf.g.is_zero());
        let mut fact = 1i64;
        for n in 1..=9 {
            fact *= n;
            assert_eq!(nf.x_map.coeff(n as usize), rat(1, fact));
            assert_eq!(nf.y_map.coeff(n as usize), rat(1, fact));
            let sign = if n % 2 == 1 { 1 } else { -1 };
            assert_eq!(nf.z_map.coeff(n as usize), rat(sign, n));
        }
    }

    #[test]
    fn lambda_action_examples() {
        let x = parse_series2("x", 4).unwrap();
        assert_eq!(lambda_action(&x, &int(2)).unwrap(), parse_series2("8x", 4).unwrap());
        let one = parse_series2("1", 4).unwrap();
        assert_eq!(lambda_action(&one, &int(3)).unwrap(), parse_series2("9", 4).unwrap());
        let g = parse_series2("1/2 - x y + 3 y^3", 4).unwrap();
        assert_eq!(lambda_action(&g, &int(1)).unwrap(), g);
        assert_eq!(lambda_action(&g, &Rat::zero()), Err(Error::ZeroLambda));
    }

    #[test]
    fn scale_equivalence_examples() {
        let p = |s: &str| parse_series2(s, 5).unwrap();
        let c = scale_equivalent(&p("x"), &p("8x")).unwrap();
        assert_eq!((c.anchor, c.exponent, c.lambda_power.clone()), (Some((1, 0)), 3, int(8)));
        let c = scale_equivalent(&p("x"), &p("-x")).unwrap();
        assert_eq!(c.lambda_power, int(-1));
        assert_eq!(c.lambda_sign, Some(-1));
        assert!(scale_equivalent(&p("x^2"), &p("x")).is_none());
        // λ = 2: 1 ↦ 4, x ↦ 8x, x^2 ↦ 16 x^2.
        assert!(scale_equivalent(&p("1 + x + x^2"), &p("4 + 8x + 16x^2")).is_some());
        // λ = -2 flips the odd-degree coefficient only.
        let c = scale_equivalent(&p("1 + x + x^2"), &p("4 - 8x + 16x^2")).unwrap();
        assert_eq!(c.lambda_sign, Some(-1));
        // 1 ↦ 4 forces |λ| = 2, so x ↦ 4x is inconsistent.
        assert!(scale_equivalent(&p("1 + x"), &p("4 + 4x")).is_none());
        // λ² = -4 has no real root.
        assert!(scale_equivalent(&p("1"), &p("-4")).is_none());
        // Conflicting signs between two odd-exponent coefficients.
        assert!(scale_equivalent(&p("1 + x + y"), &p("4 + 8x - 8y")).is_none());
    }
}

//! Blaschke curvature `K = ∂x∂y log(f_x / f_y)` of the web `(x, y, f)`.
//!
//! A web is hexagonal exactly when `K` vanishes, which gives a flatness test
//! that shares nothing with the normal-form reduction.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::normalform::Web;
use crate::series::Series2;

/// Writes `f_x = c₁(1 + u)`, `f_y = c₂(1 + v)` and returns
/// `∂x∂y(log1p(u) − log1p(v))`; the constants `log c₁`, `log c₂` drop out.
/// The result is valid through `order(f) − 3`.
pub fn blaschke_curvature(w: &Web) -> Result<Series2> {
    let f = w.f();
    if f.order() < 3 {
        return Err(Error::InsufficientOrder { order: f.order(), needed: 3 });
    }
    let fx = f.dx()?;
    let fy = f.dy()?;
    let c1 = fx.constant_term().clone();
    let c2 = fy.constant_term().clone();
    if c1.is_zero() || c2.is_zero() {
        return Err(Error::DegenerateLinearPart("a first partial of f vanishes at the origin"));
    }
    let one = Series2::constant(num_rational::BigRational::one(), fx.order());
    let u = &fx.scale(&c1.recip()) - &one;
    let v = &fy.scale(&c2.recip()) - &one;
    let log_ratio = &u.log1p()? - &v.log1p()?;
    log_ratio.dx()?.dy()
}

//! Synthesis of webs with a circular symmetry.
//!
//! Given data `V = y + Ṽ` and `μ`, find a formal diffeomorphism
//! `ψ = (A, B)` tangent to the identity with
//!
//! ```text
//! V(A, B) = y,        V(L(A, B)) = μ(x),
//! ```
//!
//! where `L` is the linear model. Then `ψ⁻¹ = (U, V)`, `φ = ψ⁻¹ ∘ L ∘ ψ =
//! (F, G)` with `G = μ(x)`, and `φ` permutes the foliations of `(x, y, f)`,
//! `f = ±F`, cyclically.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::normalform::{normalize, satisfies_normal_identities, Web};
use crate::series::{format_rat, int, rat, PlaneMap, Rat, Series1, Series2};
use crate::symmetry::{classify_simple, foliation_permutation, FoliationPermutation, SimpleClass};

/// Linear part of the circular symmetry in coordinates where `f = x + y + …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LinearModel {
    /// `(x, y) ↦ (−x − y, x)`, of order three.
    Order3,
    /// `(x, y) ↦ (x + y, −x)`, of order six; its cube is `−Id`.
    Order6,
}

impl LinearModel {
    pub fn name(self) -> &'static str {
        match self {
            LinearModel::Order3 => "order3",
            LinearModel::Order6 => "order6",
        }
    }

    /// `[a, b, c, d]` for `(x, y) ↦ (a x + b y, c x + d y)`.
    pub fn matrix(self) -> [Rat; 4] {
        match self {
            LinearModel::Order3 => [int(-1), int(-1), int(1), int(0)],
            LinearModel::Order6 => [int(1), int(1), int(-1), int(0)],
        }
    }

    pub fn action(self, order: usize) -> PlaneMap {
        PlaneMap::linear(self.matrix(), order)
    }

    pub fn period(self) -> usize {
        match self {
            LinearModel::Order3 => 3,
            LinearModel::Order6 => 6,
        }
    }

    /// Linear coefficient of `G = μ(x)`; the second row of the matrix is `(±1, 0)`.
    pub fn mu_slope(self) -> Rat {
        self.matrix()[2].clone()
    }

    /// Sign turning `F` into the level function `f = x + y + …`.
    pub fn level_sign(self) -> Rat {
        self.matrix()[0].clone()
    }

    /// The `μ` used by the fast path: `μ(x) = ±x`, matching the model's slope.
    pub fn default_mu(self, order: usize) -> Series1 {
        Series1::identity(order).scale(&self.mu_slope())
    }

    /// Condition on `P` under which `V = y + P`, `μ = ±x` reduces to the
    /// single equation `θ + P(x + θ, y + θ) = 0`: `P ∘ L = P` for the order-3
    /// model and `P ∘ L = −P` for the order-6 model.
    pub fn admits_fast_path(self, p: &Series2) -> bool {
        let pulled = p.compose(&self.action(p.order())).expect("linear action fixes the origin");
        match self {
            LinearModel::Order3 => pulled == *p,
            LinearModel::Order6 => pulled == -p,
        }
    }
}

impl std::str::FromStr for LinearModel {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "order3" => Ok(LinearModel::Order3),
            "order6" => Ok(LinearModel::Order6),
            other => Err(format!("unknown model `{other}` (expected order3 or order6)")),
        }
    }
}

/// Checks gathered after a solve. Every field is a boolean verdict through `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircularReport {
    pub order: usize,
    /// `U(A, B) = x`.
    pub inverse_first: bool,
    /// `V(A, B) = y`.
    pub inverse_second: bool,
    /// `F = U ∘ L ∘ ψ`.
    pub first_component: bool,
    /// `G = V ∘ L ∘ ψ`.
    pub second_component: bool,
    /// `V ∘ L ∘ ψ = μ(x)`.
    pub vertical_to_horizontal: bool,
    /// The second component of `ψ⁻¹` reproduces the input `V`.
    pub inverse_recovers_v: bool,
    /// `G` has no monomial involving `y`.
    pub g_independent_of_y: bool,
    /// `φ^period = Id`.
    pub period_ok: bool,
    /// `φ^(period/2)` has linear part `−Id`; only meaningful for the order-6 model.
    pub half_period_is_minus_id: Option<bool>,
    /// How `φ` permutes the foliations of `(x, y, f)`.
    pub permutation: Option<FoliationPermutation>,
    /// Normal-form verdict for the synthesized web.
    pub flatness: SimpleClass,
}

impl CircularReport {
    pub fn residuals_vanish(&self) -> bool {
        self.inverse_first
            && self.inverse_second
            && self.first_component
            && self.second_component
            && self.vertical_to_horizontal
    }

    pub fn is_cycle(&self) -> bool {
        self.permutation == Some(FoliationPermutation::CYCLE)
    }

    /// All checks pass, i.e. `φ` is a certified circular symmetry of `(x, y, f)`.
    pub fn certified(&self) -> bool {
        self.residuals_vanish()
            && self.inverse_recovers_v
            && self.g_independent_of_y
            && self.period_ok
            && self.half_period_is_minus_id != Some(false)
            && self.is_cycle()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircularResult {
    pub model: LinearModel,
    pub a: Series2,
    pub b: Series2,
    pub u: Series2,
    pub big_f: Series2,
    pub big_g: Series1,
    pub f: Series2,
    /// Solution of `θ + P(x + θ, y + θ) = 0`, when produced by the fast path.
    pub theta: Option<Series2>,
    pub report: CircularReport,
}

impl CircularResult {
    /// `φ = (F, G(x))`.
    pub fn phi(&self) -> PlaneMap {
        PlaneMap::new(self.big_f.clone(), Series2::from_x(&self.big_g)).expect("φ fixes the origin")
    }

    pub fn psi(&self) -> PlaneMap {
        PlaneMap::new(self.a.clone(), self.b.clone()).expect("ψ fixes the origin")
    }
}

fn check_v(v: &Series2) -> Result<()> {
    let bad = |what: &str| Err(Error::BadLinearPart(format!("V must be y + higher order terms; {what}")));
    if !v.constant_term().is_zero() {
        return bad("constant term is nonzero");
    }
    if !v.coeff(1, 0).is_zero() || !v.coeff(0, 1).is_one() {
        return bad(&format!(
            "linear part is {}*x + {}*y",
            format_rat(&v.coeff(1, 0)),
            format_rat(&v.coeff(0, 1))
        ));
    }
    Ok(())
}

fn check_mu(mu: &Series1, model: LinearModel) -> Result<()> {
    let slope = model.mu_slope();
    if !mu.coeff(0).is_zero() || mu.coeff(1) != slope {
        return Err(Error::BadLinearPart(format!(
            "mu must be {}x + higher order terms for the {} model",
            if slope.is_one() { "" } else { "-" },
            model.name()
        )));
    }
    Ok(())
}

/// Solves for `ψ`, then `U`, `F`, `G` and `f`, and fills in the report.
///
/// The pair `V(A, B) = y`, `V(L(A, B)) = μ(x)` is rewritten as the contraction
/// `A = ±(μ(x) − Ṽ(L(A, B)))`, `B = y − Ṽ(A, B)`; since `Ṽ` has a vanishing
/// 1-jet, each pass fixes one more degree, so pass `k` runs at truncation `k`.
pub fn solve_circular(v: &Series2, mu: &Series1, model: LinearModel, order: usize) -> Result<CircularResult> {
    check_v(v)?;
    check_mu(mu, model)?;
    let order = order.min(v.order()).min(mu.order());
    if order < 3 {
        return Err(Error::InsufficientOrder { order, needed: 3 });
    }
    let v = v.truncate(order);
    let mu = mu.truncate(order);
    let y = Series2::y(order);
    let v_tilde = &v - &y;
    let mu_x = Series2::from_x(&mu);
    let slope = model.mu_slope();
    let matrix = model.matrix();

    let mut psi = PlaneMap::identity(1);
    for k in 2..=order {
        let psi_k = psi.zero_extend(k);
        let vk = v_tilde.truncate(k);
        let rotated = psi_k.then_linear(&matrix);
        let a = (&mu_x.truncate(k) - &vk.compose(&rotated)?).scale(&slope);
        let b = &y.truncate(k) - &vk.compose(&psi_k)?;
        psi = PlaneMap::new(a, b)?;
    }

    let psi_inv = psi.invert()?;
    let (u, v_back) = psi_inv.into_parts();
    let l_psi = psi.then_linear(&matrix);
    let big_f = u.compose(&l_psi)?;
    let g_full = v.compose(&l_psi)?;
    let big_g = mu.clone();
    let f = big_f.scale(&model.level_sign());

    let x = Series2::x(order);
    let inverse_first = u.compose(&psi)? == x;
    let inverse_second = v.compose(&psi)? == y;
    let first_component = big_f == u.compose(&psi.then_linear(&matrix))?;
    let second_component = Series2::from_x(&big_g) == g_full;
    let vertical_to_horizontal = g_full == mu_x;
    if !(inverse_first && inverse_second && vertical_to_horizontal) {
        return Err(Error::Residual("circular solve left a nonzero residual".into()));
    }

    let phi = PlaneMap::new(big_f.clone(), Series2::from_x(&big_g))?;
    let period_ok = phi.iterate(model.period())?.is_identity();
    let half_period_is_minus_id = match model {
        LinearModel::Order3 => None,
        LinearModel::Order6 => {
            let [a, b, c, d] = phi.iterate(3)?.linear_part();
            Some(a == int(-1) && b.is_zero() && c.is_zero() && d == int(-1))
        }
    };
    let web = Web::new(f.clone())?;
    let permutation = foliation_permutation(&phi, &web)?;
    let flatness = classify_simple(&normalize(&web)?.g);

    let report = CircularReport {
        order,
        inverse_first,
        inverse_second,
        first_component,
        second_component,
        vertical_to_horizontal,
        inverse_recovers_v: v_back == v,
        g_independent_of_y: g_full.terms().all(|(_, s, _)| s == 0),
        period_ok,
        half_period_is_minus_id,
        permutation,
        flatness,
    };
    let (a, b) = psi.into_parts();
    Ok(CircularResult { model, a, b, u, big_f, big_g, f, theta: None, report })
}

/// The unique `θ` with vanishing 1-jet solving `θ + P(x + θ, y + θ) = 0`.
pub fn solve_theta(p: &Series2, order: usize) -> Result<Series2> {
    if !p.has_vanishing_1jet() {
        return Err(Error::BadJet);
    }
    let order = order.min(p.order());
    let p = p.truncate(order);
    let x = Series2::x(order);
    let y = Series2::y(order);
    let mut theta = Series2::zero(order.min(1));
    for k in 2..=order {
        let t = theta.zero_extend(k);
        let shifted = PlaneMap::new(&x.truncate(k) + &t, &y.truncate(k) + &t)?;
        theta = -p.truncate(k).compose(&shifted)?;
    }
    Ok(theta)
}

pub fn is_linear_invariant(p: &Series2, model: LinearModel) -> bool {
    p.compose(&model.action(p.order())).map(|q| q == *p).unwrap_or(false)
}

/// Fast path for `V = y + P`, `μ = ±x`: runs the general solver and asserts
/// the closed form `f = x + y + 3θ` (so `F = −x − y − 3θ` for the order-3 model).
pub fn lemma1_synthesize(p: &Series2, model: LinearModel, order: usize) -> Result<CircularResult> {
    if !p.has_vanishing_1jet() {
        return Err(Error::BadJet);
    }
    if !model.admits_fast_path(p) {
        return Err(Error::NotInvariant(model.name()));
    }
    let order = order.min(p.order());
    let v = &Series2::y(order) + &p.truncate(order);
    let mut result = solve_circular(&v, &model.default_mu(order), model, order)?;
    let theta = solve_theta(p, order)?;
    let closed = &Series2::linear(Rat::one(), Rat::one(), order) + &theta.scale(&int(3));
    if result.f != closed {
        return Err(Error::Residual("fast-path closed form disagrees with the general solver".into()));
    }
    let shift = PlaneMap::new(&Series2::x(order) + &theta, &Series2::y(order) + &theta)?;
    if result.psi() != shift {
        return Err(Error::Residual("ψ differs from (x + θ, y + θ)".into()));
    }
    result.theta = Some(theta);
    Ok(result)
}

/// `x y (x − y)(x + y)(2x + y)(x + 2y)`.
pub fn p0(order: usize) -> Series2 {
    let x = Series2::x(order);
    let y = Series2::y(order);
    let two = int(2);
    [
        x.clone(),
        y.clone(),
        &x - &y,
        &x + &y,
        &x.scale(&two) + &y,
        &x + &y.scale(&two),
    ]
    .iter()
    .fold(Series2::constant(Rat::one(), order), |acc, s| &acc * s)
}

/// Extra checks for the non-flat order-3 example built from `P₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem3Example {
    pub result: CircularResult,
    /// `f(t,0) = t`, `f(0,t) = t`, `f(t,t) = 2t`.
    pub normal_form_identities: bool,
    /// `f(−t,2t) = f(0,t) = f(t/2,t/2) = f(t,0) = f(2t,−t) = t`.
    pub line_points: bool,
    /// Normal-form residual of `f`.
    pub g: Series2,
    pub non_flat: bool,
}

pub fn theorem3_example(order: usize) -> Result<Theorem3Example> {
    if order < 8 {
        return Err(Error::InsufficientOrder { order, needed: 8 });
    }
    let result = lemma1_synthesize(&p0(order), LinearModel::Order3, order)?;
    let f = &result.f;
    let t = Series1::identity(order);
    let points = [(int(-1), int(2)), (int(0), int(1)), (rat(1, 2), rat(1, 2)), (int(1), int(0)), (int(2), int(-1))];
    let line_points = points.iter().all(|(a, b)| f.restrict_line(a, b) == t);
    let normal_form_identities = satisfies_normal_identities(f);
    let g = normalize(&Web::new(f.clone())?)?.g;
    let non_flat = !classify_simple(&g).is_flat();
    Ok(Theorem3Example { result, normal_form_identities, line_points, g, non_flat })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_series2;

    fn s2(src: &str, n: usize) -> Series2 {
        parse_series2(src, n).unwrap()
    }

    #[test]
    fn model_orders() {
        let m3 = LinearModel::Order3.action(4);
        assert!(m3.iterate(3).unwrap().is_identity());
        let m6 = LinearModel::Order6.action(4);
        assert!(m6.iterate(6).unwrap().is_identity());
        assert_eq!(m6.iterate(3).unwrap(), PlaneMap::linear([int(-1), int(0), int(0), int(-1)], 4));
    }

    #[test]
    fn invariance_examples() {
        assert!(is_linear_invariant(&p0(8), LinearModel::Order3));
        assert!(!is_linear_invariant(&s2("x^2", 6), LinearModel::Order3));
        assert!(is_linear_invariant(&s2("x^2 + x y + y^2", 6), LinearModel::Order3));
    }

    #[test]
    fn zero_perturbation_is_linear_model() {
        let r = solve_circular(&s2("y", 8), &Series1::identity(8), LinearModel::Order3, 8).unwrap();
        assert_eq!(r.a, Series2::x(8));
        assert_eq!(r.b, Series2::y(8));
        assert_eq!(r.u, Series2::x(8));
        assert_eq!(r.big_f, s2("-x - y", 8));
        assert_eq!(r.f, s2("x + y", 8));
        assert!(r.report.flatness.is_flat());
        assert!(r.report.certified());
    }

    #[test]
    fn quadratic_perturbation_low_order() {
        let r = solve_circular(&s2("y + x^2", 8), &Series1::identity(8), LinearModel::Order3, 8).unwrap();
        // A + (A + B)^2 = x and B + A^2 = y, one pass by hand.
        assert!(r.a.truncate(2).eq_to_order(&s2("x - (x+y)^2", 2)));
        assert!(r.b.truncate(2).eq_to_order(&s2("y - x^2", 2)));
        assert!(r.report.certified());
    }

    #[test]
    fn preconditions() {
        let id = Series1::identity(6);
        assert!(matches!(
            solve_circular(&s2("2y", 6), &id, LinearModel::Order3, 6),
            Err(Error::BadLinearPart(_))
        ));
        assert!(matches!(
            solve_circular(&s2("y + x", 6), &id, LinearModel::Order3, 6),
            Err(Error::BadLinearPart(_))
        ));
        assert!(matches!(
            solve_circular(&s2("y", 6), &id.scale(&int(2)), LinearModel::Order3, 6),
            Err(Error::BadLinearPart(_))
        ));
        assert!(matches!(
            solve_circular(&s2("y", 6), &id, LinearModel::Order6, 6),
            Err(Error::BadLinearPart(_))
        ));
        assert_eq!(solve_theta(&s2("x + y^2", 6), 6), Err(Error::BadJet));
        assert_eq!(lemma1_synthesize(&s2("x^2", 6), LinearModel::Order3, 6).unwrap_err(), Error::NotInvariant("order3"));
    }

    #[test]
    fn theta_examples() {
        assert!(solve_theta(&Series2::zero(8), 8).unwrap().is_zero());
        let th = solve_theta(&s2("x^2", 8), 8).unwrap();
        assert!(th.truncate(4).eq_to_order(&s2("-x^2 + 2x^3 - 5x^4", 4)));
        let th = solve_theta(&p0(10), 10).unwrap();
        assert_eq!(th.valuation(), Some(6));
        assert_eq!(th.homogeneous_part(6), -p0(10));
    }

    #[test]
    fn fast_path_zero_is_flat() {
        let r = lemma1_synthesize(&Series2::zero(8), LinearModel::Order3, 8).unwrap();
        assert!(r.theta.as_ref().unwrap().is_zero());
        assert_eq!(r.big_f, s2("-x - y", 8));
    }

    #[test]
    fn order6_fast_path_needs_antiinvariance() {
        let p = s2("x y (x + y)", 8);
        assert!(LinearModel::Order6.admits_fast_path(&p));
        assert!(!LinearModel::Order6.admits_fast_path(&s2("x^2 + x y + y^2", 8)));
        let r = lemma1_synthesize(&p, LinearModel::Order6, 8).unwrap();
        assert!(r.report.certified(), "{:?}", r.report);

        // An invariant (hence even) perturbation solves the same equations but
        // φ then fails to carry horizontals onto level sets.
        let v = s2("y + x^2 + x y + y^2", 8);
        let r = solve_circular(&v, &LinearModel::Order6.default_mu(8), LinearModel::Order6, 8).unwrap();
        assert!(r.report.residuals_vanish() && r.report.period_ok);
        assert!(!r.report.is_cycle());
        assert!(!r.report.certified());
    }
}

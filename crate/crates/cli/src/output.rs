//! JSON views of the library types. Fractions are always strings.

use serde::Serialize;
use threeweb::circular::{CircularReport, CircularResult, Theorem3Example};
use threeweb::series::format_rat;
use threeweb::symmetry::{Foliation, FoliationPermutation, MirrorClass, SimpleClass};
use threeweb::{NormalForm, PlaneMap, Series1, Series2};

#[derive(Serialize)]
pub struct Term2 {
    pub exponent: [usize; 2],
    pub coeff: String,
}

#[derive(Serialize)]
pub struct Series2Json {
    pub order: usize,
    pub coeffs: Vec<Term2>,
    pub text: String,
}

impl From<&Series2> for Series2Json {
    fn from(s: &Series2) -> Self {
        Series2Json {
            order: s.order(),
            coeffs: s.terms().map(|(r, t, c)| Term2 { exponent: [r, t], coeff: format_rat(c) }).collect(),
            text: s.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct Term1 {
    pub exponent: usize,
    pub coeff: String,
}

#[derive(Serialize)]
pub struct Series1Json {
    pub order: usize,
    pub coeffs: Vec<Term1>,
    pub text: String,
}

impl From<&Series1> for Series1Json {
    fn from(s: &Series1) -> Self {
        Series1Json {
            order: s.order(),
            coeffs: s.terms().map(|(n, c)| Term1 { exponent: n, coeff: format_rat(c) }).collect(),
            text: s.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct PlaneMapJson {
    pub first: Series2Json,
    pub second: Series2Json,
}

impl From<&PlaneMap> for PlaneMapJson {
    fn from(m: &PlaneMap) -> Self {
        PlaneMapJson { first: m.first().into(), second: m.second().into() }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "PascalCase")]
pub struct PermutationJson {
    pub vertical: &'static str,
    pub horizontal: &'static str,
    pub level: &'static str,
}

impl From<&FoliationPermutation> for PermutationJson {
    fn from(p: &FoliationPermutation) -> Self {
        PermutationJson {
            vertical: p.image(Foliation::Vertical).name(),
            horizontal: p.image(Foliation::Horizontal).name(),
            level: p.image(Foliation::Level).name(),
        }
    }
}

#[derive(Serialize)]
pub struct SimpleClassJson {
    pub tag: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
}

impl From<SimpleClass> for SimpleClassJson {
    fn from(c: SimpleClass) -> Self {
        let order = match c {
            SimpleClass::FlatToOrder { order } => Some(order),
            _ => None,
        };
        SimpleClassJson { tag: c.tag(), order }
    }
}

#[derive(Serialize)]
pub struct MirrorClassJson {
    pub swap_mirror: bool,
    pub antiswap_mirror: bool,
}

impl From<MirrorClass> for MirrorClassJson {
    fn from(c: MirrorClass) -> Self {
        MirrorClassJson { swap_mirror: c.swap_mirror, antiswap_mirror: c.antiswap_mirror }
    }
}

#[derive(Serialize)]
#[allow(non_snake_case)]
pub struct NormalFormJson {
    pub X: Series1Json,
    pub Y: Series1Json,
    pub Z: Series1Json,
    pub g: Series2Json,
}

impl From<&NormalForm> for NormalFormJson {
    fn from(nf: &NormalForm) -> Self {
        NormalFormJson { X: (&nf.x_map).into(), Y: (&nf.y_map).into(), Z: (&nf.z_map).into(), g: (&nf.g).into() }
    }
}

#[derive(Serialize)]
pub struct WitnessJson {
    pub map: PlaneMapJson,
    pub permutation: PermutationJson,
}

#[derive(Serialize)]
pub struct ClassifyJson {
    pub simple: SimpleClassJson,
    pub mirror: MirrorClassJson,
    pub witnesses: Vec<WitnessJson>,
}

#[derive(Serialize)]
pub struct ReportJson {
    pub order: usize,
    pub inverse_first: bool,
    pub inverse_second: bool,
    pub first_component: bool,
    pub second_component: bool,
    pub vertical_to_horizontal: bool,
    pub inverse_recovers_v: bool,
    pub g_independent_of_y: bool,
    pub period_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub half_period_is_minus_id: Option<bool>,
    pub permutation: Option<PermutationJson>,
    pub flatness: SimpleClassJson,
    pub certified: bool,
}

impl From<&CircularReport> for ReportJson {
    fn from(r: &CircularReport) -> Self {
        ReportJson {
            order: r.order,
            inverse_first: r.inverse_first,
            inverse_second: r.inverse_second,
            first_component: r.first_component,
            second_component: r.second_component,
            vertical_to_horizontal: r.vertical_to_horizontal,
            inverse_recovers_v: r.inverse_recovers_v,
            g_independent_of_y: r.g_independent_of_y,
            period_ok: r.period_ok,
            half_period_is_minus_id: r.half_period_is_minus_id,
            permutation: r.permutation.as_ref().map(Into::into),
            flatness: r.flatness.into(),
            certified: r.certified(),
        }
    }
}

#[derive(Serialize)]
#[allow(non_snake_case)]
pub struct CircularJson {
    pub model: &'static str,
    pub A: Series2Json,
    pub B: Series2Json,
    pub U: Series2Json,
    pub F: Series2Json,
    pub G: Series1Json,
    pub f: Series2Json,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<Series2Json>,
    pub report: ReportJson,
}

impl From<&CircularResult> for CircularJson {
    fn from(r: &CircularResult) -> Self {
        CircularJson {
            model: r.model.name(),
            A: (&r.a).into(),
            B: (&r.b).into(),
            U: (&r.u).into(),
            F: (&r.big_f).into(),
            G: (&r.big_g).into(),
            f: (&r.f).into(),
            theta: r.theta.as_ref().map(Into::into),
            report: (&r.report).into(),
        }
    }
}

#[derive(Serialize)]
pub struct NonFlatExampleJson {
    #[serde(flatten)]
    pub result: CircularJson,
    pub normal_form_identities: bool,
    pub line_points: bool,
    pub g: Series2Json,
    pub non_flat: bool,
}

impl From<&Theorem3Example> for NonFlatExampleJson {
    fn from(e: &Theorem3Example) -> Self {
        NonFlatExampleJson {
            result: (&e.result).into(),
            normal_form_identities: e.normal_form_identities,
            line_points: e.line_points,
            g: (&e.g).into(),
            non_flat: e.non_flat,
        }
    }
}

#[derive(Serialize)]
#[allow(non_snake_case)]
pub struct CurvatureJson {
    pub K: Series2Json,
    pub flat: bool,
}

#[derive(Serialize)]
pub struct VerifyJson {
    pub permutation: Option<PermutationJson>,
    pub kind: &'static str,
}

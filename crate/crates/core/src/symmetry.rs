//! Simple and mirror symmetries read off the normal-form residual `g`, and a
//! general test of how a candidate map permutes the three foliations.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::normalform::{NormalForm, Web};
use crate::series::{int, PlaneMap, Rat, Series2};

/// Simple-symmetry verdict for a residual `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SimpleClass {
    /// `g ≡ 0` through the given order.
    FlatToOrder { order: usize },
    /// Some odd-degree coefficient survives; the identity is the only simple symmetry.
    OnlyId,
    /// `g(−x, −y) = g(x, y)` and `g ≢ 0`; `−Id` is a second simple symmetry.
    IdAndInvolution,
}

impl SimpleClass {
    pub fn tag(&self) -> &'static str {
        match self {
            SimpleClass::FlatToOrder { .. } => "FlatToOrder",
            SimpleClass::OnlyId => "OnlyId",
            SimpleClass::IdAndInvolution => "IdAndInvolution",
        }
    }

    pub fn is_flat(&self) -> bool {
        matches!(self, SimpleClass::FlatToOrder { .. })
    }
}

/// Which of the two mirror conditions `g` satisfies.
///
/// The `antiswap` mirror `(x, y) ↦ (−y, −x)` is what older write-ups describe
/// as the mirror symmetry of order four; in normal coordinates it squares to
/// the identity like the swap does.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MirrorClass {
    /// `g(y, x) = −g(x, y)`, witnessed by `(x, y) ↦ (y, x)`.
    pub swap_mirror: bool,
    /// `g(−y, −x) = −g(x, y)`, witnessed by `(x, y) ↦ (−y, −x)`.
    pub antiswap_mirror: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Foliation {
    Vertical,
    Horizontal,
    Level,
}

impl Foliation {
    pub const ALL: [Foliation; 3] = [Foliation::Vertical, Foliation::Horizontal, Foliation::Level];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Foliation::Vertical => "Vertical",
            Foliation::Horizontal => "Horizontal",
            Foliation::Level => "Level",
        }
    }
}

/// A bijection of the three foliations, `images[i]` being the image of `Foliation::ALL[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FoliationPermutation {
    images: [Foliation; 3],
}

impl FoliationPermutation {
    pub const IDENTITY: Self = FoliationPermutation { images: Foliation::ALL };
    pub const SWAP_AXES: Self = FoliationPermutation {
        images: [Foliation::Horizontal, Foliation::Vertical, Foliation::Level],
    };
    /// Vertical → Horizontal → Level → Vertical.
    pub const CYCLE: Self = FoliationPermutation {
        images: [Foliation::Horizontal, Foliation::Level, Foliation::Vertical],
    };

    pub fn new(images: [Foliation; 3]) -> Option<Self> {
        let mut seen = [false; 3];
        for f in images {
            if std::mem::replace(&mut seen[f.index()], true) {
                return None;
            }
        }
        Some(FoliationPermutation { images })
    }

    pub fn image(&self, f: Foliation) -> Foliation {
        self.images[f.index()]
    }

    pub fn images(&self) -> [Foliation; 3] {
        self.images
    }

    pub fn fixed_count(&self) -> usize {
        Foliation::ALL.iter().filter(|&&f| self.image(f) == f).count()
    }
}

impl fmt::Display for FoliationPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Foliation::ALL
            .iter()
            .map(|&src| format!("{}->{}", src.name(), self.image(src).name()))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

pub fn classify_simple(g: &Series2) -> SimpleClass {
    if g.is_zero() {
        SimpleClass::FlatToOrder { order: g.order() }
    } else if g.terms().all(|(r, s, _)| (r + s) % 2 == 0) {
        SimpleClass::IdAndInvolution
    } else {
        SimpleClass::OnlyId
    }
}

pub fn classify_mirror(g: &Series2) -> MirrorClass {
    let neg = -g;
    let swapped = g.swap_vars();
    let antiswapped = swapped.scale_vars(&int(-1), &int(-1));
    MirrorClass { swap_mirror: swapped == neg, antiswap_mirror: antiswapped == neg }
}

/// Decides how `m` permutes the foliations of `w`.
///
/// Foliation `i` is carried onto foliation `j` iff `u_j ∘ m` is functionally
/// dependent on `u_i`, tested by the vanishing of the Jacobian determinant of
/// the pair; `u` ranges over `x`, `y` and `f`. Returns `None` when the
/// resulting assignment is not a bijection.
pub fn foliation_permutation(m: &PlaneMap, w: &Web) -> Result<Option<FoliationPermutation>> {
    if m.jacobian_det().is_zero() {
        return Err(Error::NotInvertible("candidate map has a singular linear part"));
    }
    let order = m.order().min(w.order());
    let m = m.truncate(order);
    let defining = [Series2::x(order), Series2::y(order), w.f().truncate(order)];
    let grads = defining
        .iter()
        .map(|u| Ok((u.dx()?, u.dy()?)))
        .collect::<Result<Vec<_>>>()?;
    let pulled = defining
        .iter()
        .map(|u| {
            let v = u.compose(&m)?;
            Ok((v.dx()?, v.dy()?))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut images = [Foliation::Vertical; 3];
    for (i, (ux, uy)) in grads.iter().enumerate() {
        let targets: Vec<usize> = pulled
            .iter()
            .enumerate()
            .filter(|(_, (vx, vy))| (&(vx * uy) - &(vy * ux)).is_zero())
            .map(|(j, _)| j)
            .collect();
        match targets.as_slice() {
            [j] => images[i] = Foliation::ALL[*j],
            _ => return Ok(None),
        }
    }
    Ok(FoliationPermutation::new(images))
}

/// Linear witnesses of the non-trivial simple and mirror symmetries, in normal
/// coordinates, each certified by [`foliation_permutation`].
pub fn symmetry_witnesses(nf: &NormalForm) -> Result<Vec<(PlaneMap, FoliationPermutation)>> {
    let web = nf.web();
    let order = web.order();
    let one = || int(1);
    let neg = || int(-1);
    let zero = Rat::zero;
    let mut candidates = Vec::new();
    if classify_simple(&nf.g) == SimpleClass::IdAndInvolution {
        candidates.push(([neg(), zero(), zero(), neg()], FoliationPermutation::IDENTITY));
    }
    let mirror = classify_mirror(&nf.g);
    if mirror.swap_mirror {
        candidates.push(([zero(), one(), one(), zero()], FoliationPermutation::SWAP_AXES));
    }
    if mirror.antiswap_mirror {
        candidates.push(([zero(), neg(), neg(), zero()], FoliationPermutation::SWAP_AXES));
    }
    let mut out = Vec::with_capacity(candidates.len());
    for (matrix, expected) in candidates {
        let m = PlaneMap::linear(matrix, order);
        match foliation_permutation(&m, &web)? {
            Some(p) if p == expected => out.push((m, p)),
            found => {
                return Err(Error::Residual(format!(
                    "witness {m:?} permutes foliations as {found:?}, expected {expected}"
                )))
            }
        }
    }
    Ok(out)
}

/// Conjugates a normal-coordinate map back to the original coordinates of the
/// web that produced `nf`: `Φ = χ ∘ φ ∘ χ⁻¹` with `χ(x, y) = (X(x), Y(y))`.
pub fn to_original_coordinates(nf: &NormalForm, phi: &PlaneMap) -> Result<PlaneMap> {
    let chart = nf.coordinate_map();
    let chart_inv = chart.invert()?;
    chart.compose(&phi.compose(&chart_inv)?)
}

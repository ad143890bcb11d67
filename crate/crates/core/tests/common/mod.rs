#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use threeweb::series::{rat, Rat};
use threeweb::{Series1, Series2};

pub fn small_rat() -> impl Strategy<Value = Rat> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rat() -> impl Strategy<Value = Rat> {
    ((1i64..=4), any::<bool>(), 1i64..=3).prop_map(|(n, neg, d)| rat(if neg { -n } else { n }, d))
}

/// Dense polynomial of total degree in `lo..=hi`, truncated at `order`.
pub fn poly2(lo: usize, hi: usize, order: usize) -> impl Strategy<Value = Series2> {
    let monos: Vec<(usize, usize)> =
        (lo..=hi).flat_map(|d| (0..=d).map(move |s| (d - s, s))).collect();
    let n = monos.len();
    proptest::collection::vec(small_rat(), n).prop_map(move |cs| {
        Series2::from_terms(order, monos.iter().zip(cs).map(|(&(r, s), c)| (r, s, c)))
    })
}

/// `c₁ t + c₂ t² + …` with `c₁ ≠ 0`.
pub fn diffeo1(hi: usize, order: usize) -> impl Strategy<Value = Series1> {
    (nonzero_rat(), proptest::collection::vec(small_rat(), hi.saturating_sub(1))).prop_map(
        move |(lin, rest)| {
            Series1::from_coeffs(order, std::iter::once(Rat::from_integer(BigInt::from(0))).chain(std::iter::once(lin)).chain(rest))
        },
    )
}

/// Same as [`diffeo1`] with unit slope.
pub fn unit_diffeo1(hi: usize, order: usize) -> impl Strategy<Value = Series1> {
    proptest::collection::vec(small_rat(), hi.saturating_sub(1)).prop_map(move |rest| {
        Series1::from_coeffs(order, [rat(0, 1), rat(1, 1)].into_iter().chain(rest))
    })
}

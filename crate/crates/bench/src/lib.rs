//! Fixed inputs shared by the benchmarks in `benches/`.

use threeweb::{parse_series2, PlaneMap, Series2, Web};

/// A dense degree-5 web with mixed denominators.
pub fn sample_web(order: usize) -> Web {
    let f = parse_series2(
        "3/2 x - 2/3 y + 4/3 x^2 - 1/2 x y + 7/3 y^2 - 4/3 x^3 + 2 x^2 y - 3/2 y^3 \
         + 1/3 x^4 - 5/2 x y^3 + 4/3 x^5 - 1/3 x^2 y^3 + 2 y^5",
        order,
    )
    .expect("fixture parses");
    Web::new(f).expect("fixture has nonzero linear coefficients")
}

pub fn sample_map(order: usize) -> PlaneMap {
    let first = parse_series2("x + 1/2 y^2 - 2 x^2 y + 1/3 x^3", order).expect("fixture parses");
    let second = parse_series2("y - x^2 + 2/5 x y^2", order).expect("fixture parses");
    PlaneMap::new(first, second).expect("fixture fixes the origin")
}

/// `y` plus a quartic perturbation with vanishing 1-jet.
pub fn sample_v(order: usize) -> Series2 {
    parse_series2("y + 3/2 x^2 - 2/3 x y + 4/3 y^2 - 4/3 x^3 + 2 x^2 y + 1/3 x^4 - 5/2 x y^3", order)
        .expect("fixture parses")
}

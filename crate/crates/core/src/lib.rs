//! Exact computations on planar 3-webs `(x, y, f)` around the origin.
//!
//! Everything is carried out on truncated power series with rational
//! coefficients: reduction to the normal form `x + y + xy(x − y) g`, the
//! simple and mirror symmetry classification read off `g`, synthesis of webs
//! with a circular symmetry, and an independent Blaschke-curvature flatness
//! test.

pub mod circular;
pub mod curvature;
pub mod error;
pub mod expr;
pub mod normalform;
pub mod series;
pub mod symmetry;

pub use circular::{CircularReport, CircularResult, LinearModel};
pub use error::{Error, Result};
pub use expr::{format_series1, format_series2, parse_expr, parse_series1, parse_series2, Expr};
pub use normalform::{NormalForm, Web};
pub use series::{Divisor, PlaneMap, Rat, Series1, Series2};
pub use symmetry::{Foliation, FoliationPermutation, MirrorClass, SimpleClass};

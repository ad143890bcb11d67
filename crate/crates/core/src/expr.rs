//! Concrete syntax for series: a small recursive-descent parser and the
//! canonical printer.
//!
//! ```text
//! expr   := ("+"|"-")? term (("+"|"-") term)*
//! term   := factor ("*"? factor)*
//! factor := base ("^" nat)?
//! base   := rational | "x" | "y" | "t" | "(" expr ")"
//! rational := int ("/" posint)?
//! ```
//!
//! Juxtaposition multiplies, so `x y (x-y)` is `x*y*(x-y)`. The optional
//! leading sign is what lets printed series such as `-x + y` parse back.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::series::{format_rat, Rat, Series1, Series2};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rat),
    Var { name: char, offset: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.expected(&["operator", "end of input"]));
    }
    Ok(e)
}

/// Parses `src` as a series in `x, y` truncated at `order`.
pub fn parse_series2(src: &str, order: usize) -> Result<Series2> {
    parse_expr(src)?.to_series2(order)
}

/// Parses `src` as a series in `t` truncated at `order`.
pub fn parse_series1(src: &str, order: usize) -> Result<Series1> {
    parse_expr(src)?.to_series1(order, &['t'])
}

pub fn format_series2(s: &Series2) -> String {
    s.to_string()
}

pub fn format_series1(s: &Series1) -> String {
    s.to_string()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expected(&self, what: &[&str]) -> Error {
        Error::Parse { offset: self.pos, expected: what.iter().map(|s| s.to_string()).collect() }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Expr::Neg(Box::new(self.term()?))
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(c) if starts_base(c) => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek() {
            Some(b'-') => Err(Error::NegativeExponent { offset: self.pos }),
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let digits = self.digits();
                digits
                    .parse::<u32>()
                    .map(|k| Expr::Pow(Box::new(base), k))
                    .map_err(|_| Error::Parse { offset: start, expected: vec!["exponent below 2^32".into()] })
            }
            _ => Err(self.expected(&["non-negative integer exponent"])),
        }
    }

    fn base(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(c @ (b'x' | b'y' | b't')) => {
                let offset = self.pos;
                self.pos += 1;
                Ok(Expr::Var { name: c as char, offset })
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.expected(&["')'", "operator"]));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let numer: BigInt = self.digits().parse().expect("ascii digits");
                if self.peek() != Some(b'/') {
                    return Ok(Expr::Num(Rat::from_integer(numer)));
                }
                self.pos += 1;
                match self.peek() {
                    Some(c) if c.is_ascii_digit() => {
                        let start = self.pos;
                        let denom: BigInt = self.digits().parse().expect("ascii digits");
                        if denom.is_zero() {
                            return Err(Error::Parse { offset: start, expected: vec!["positive integer".into()] });
                        }
                        Ok(Expr::Num(Rat::new(numer, denom)))
                    }
                    _ => Err(self.expected(&["positive integer"])),
                }
            }
            _ => Err(self.expected(&["number", "variable", "'('"])),
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }
}

fn starts_base(c: u8) -> bool {
    c.is_ascii_digit() || matches!(c, b'x' | b'y' | b't' | b'(')
}

impl Expr {
    /// Evaluates in `x, y`; `t` is rejected.
    pub fn to_series2(&self, order: usize) -> Result<Series2> {
        Ok(match self {
            Expr::Num(q) => Series2::constant(q.clone(), order),
            Expr::Var { name: 'x', .. } => Series2::x(order),
            Expr::Var { name: 'y', .. } => Series2::y(order),
            Expr::Var { name, offset } => {
                return Err(Error::UnexpectedVariable { name: *name, offset: *offset })
            }
            Expr::Neg(a) => -a.to_series2(order)?,
            Expr::Add(a, b) => a.to_series2(order)? + b.to_series2(order)?,
            Expr::Sub(a, b) => a.to_series2(order)? - b.to_series2(order)?,
            Expr::Mul(a, b) => a.to_series2(order)? * b.to_series2(order)?,
            Expr::Pow(a, k) => {
                let base = a.to_series2(order)?;
                if base.constant_term().is_zero() && *k as usize > order {
                    Series2::zero(order)
                } else {
                    base.pow(*k as usize)
                }
            }
        })
    }

    /// Evaluates as a series in one variable; any name in `vars` denotes it.
    pub fn to_series1(&self, order: usize, vars: &[char]) -> Result<Series1> {
        Ok(match self {
            Expr::Num(q) => Series1::constant(q.clone(), order),
            Expr::Var { name, offset } => {
                if !vars.contains(name) {
                    return Err(Error::UnexpectedVariable { name: *name, offset: *offset });
                }
                Series1::identity(order)
            }
            Expr::Neg(a) => -a.to_series1(order, vars)?,
            Expr::Add(a, b) => a.to_series1(order, vars)? + b.to_series1(order, vars)?,
            Expr::Sub(a, b) => a.to_series1(order, vars)? - b.to_series1(order, vars)?,
            Expr::Mul(a, b) => a.to_series1(order, vars)? * b.to_series1(order, vars)?,
            Expr::Pow(a, k) => {
                let base = a.to_series1(order, vars)?;
                if base.coeff(0).is_zero() && *k as usize > order {
                    Series1::zero(order)
                } else {
                    base.pow(*k as usize)
                }
            }
        })
    }
}

/// Canonical printer shared by both series types: `x^2 + 1/2*x*y`, `0` when empty.
pub(crate) fn write_terms<'a, I, const K: usize>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (&'a Rat, [(char, usize); K])>,
{
    let mut first = true;
    for (c, vars) in terms {
        let neg = c.is_negative();
        match (first, neg) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        let abs = c.abs();
        let mono: Vec<String> = vars
            .iter()
            .filter(|(_, e)| *e > 0)
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        if mono.is_empty() {
            f.write_str(&format_rat(&abs))?;
        } else {
            if !abs.is_one() {
                write!(f, "{}*", format_rat(&abs))?;
            }
            f.write_str(&mono.join("*"))?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, rat};

    #[test]
    fn parses_product() {
        let s = parse_series2("x*y*(x-y)", 5).unwrap();
        assert_eq!(s.to_string(), "x^2*y - x*y^2");
    }

    #[test]
    fn parses_power() {
        assert_eq!(parse_series2("(x+y)^2", 5).unwrap().to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn juxtaposition_builds_p0() {
        let p0 = parse_series2("x y (x-y)(x+y)(2x+y)(x+2y)", 8).unwrap();
        let expanded = parse_series2("2 x^5 y + 5 x^4 y^2 - 5 x^2 y^4 - 2 x y^5", 8).unwrap();
        assert_eq!(p0, expanded);
    }

    #[test]
    fn formats_canonically() {
        let s = Series2::from_terms(4, [(2, 0, int(1)), (1, 1, rat(1, 2))]);
        assert_eq!(format_series2(&s), "x^2 + 1/2*x*y");
        assert_eq!(format_series2(&Series2::zero(3)), "0");
        let s = Series2::from_terms(4, [(0, 0, int(-3)), (0, 1, rat(-2, 3)), (1, 1, int(-1))]);
        assert_eq!(format_series2(&s), "-3 - 2/3*y - x*y");
        assert_eq!(format_series1(&parse_series1("t - t^3", 4).unwrap()), "t - t^3");
    }

    #[test]
    fn reports_offsets() {
        match parse_expr("x + * y") {
            Err(Error::Parse { offset, expected }) => {
                assert_eq!(offset, 4);
                assert!(expected.contains(&"number".to_string()));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(parse_expr("x^-2"), Err(Error::NegativeExponent { offset: 2 }));
        assert!(matches!(parse_expr("(x + y"), Err(Error::Parse { offset: 6, .. })));
        assert!(matches!(parse_expr("1/0"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_expr("x )"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_expr(""), Err(Error::Parse { offset: 0, .. })));
    }

    #[test]
    fn variable_discipline() {
        assert!(matches!(parse_series2("x + t", 3), Err(Error::UnexpectedVariable { name: 't', offset: 4 })));
        assert!(matches!(parse_series1("x", 3), Err(Error::UnexpectedVariable { name: 'x', .. })));
        let mu = parse_expr("x + x^2").unwrap().to_series1(4, &['x', 't']).unwrap();
        assert_eq!(mu.to_string(), "t + t^2");
    }

    #[test]
    fn huge_power_truncates() {
        assert!(parse_series2("x^4000000000", 6).unwrap().is_zero());
    }
}

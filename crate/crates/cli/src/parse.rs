//! Text format for ideals.
//!
//! ```text
//! ideal  := gen ("," gen)*
//! gen    := term ("+" term)*
//! term   := [coeff "*"] factor ("*" factor)*
//! factor := var ["^" nat]
//! coeff  := nat | "t" | "t^" nat | nat "*t" | nat "*t^" nat
//! ```
//!
//! Variables default to `x, y, z, w`, or `x1, ..., xn` once a subscripted
//! name appears. `t` is reserved for the parameter of `F_p[t]`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use lctkit::charp::{Coefficient, SparsePolynomial};
use lctkit::{ExponentVector, MonomialIdeal};
use thiserror::Error;

const LETTERS: [&str; 4] = ["x", "y", "z", "w"];

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{message} at position {position}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        position,
        message: message.into(),
    })
}

/// Names `x, y, z, w` for up to four variables, `x1..xn` beyond.
pub fn default_vars(dim: usize) -> Vec<String> {
    if dim <= LETTERS.len() {
        LETTERS[..dim].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=dim).map(|i| format!("x{i}")).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct RawTerm {
    scale: u64,
    t_power: u64,
    has_t: bool,
    factors: Vec<(String, usize, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Monomial(MonomialIdeal),
    Polynomial(Vec<SparsePolynomial>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpec {
    pub vars: Vec<String>,
    pub characteristic: u64,
    pub parametric: bool,
    pub ideal: Parsed,
}

impl IdealSpec {
    pub fn dim(&self) -> usize {
        self.vars.len()
    }
}

struct Lexer<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return err(start, "expected a number");
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii digits");
        s.parse().or_else(|_| err(start, "number too large"))
    }

    fn ident(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        if !self.text.get(self.pos).is_some_and(u8::is_ascii_alphabetic) {
            return None;
        }
        while self.pos < self.text.len() && (self.text[self.pos].is_ascii_alphanumeric() || self.text[self.pos] == b'_') {
            self.pos += 1;
        }
        Some((start, String::from_utf8_lossy(&self.text[start..self.pos]).into_owned()))
    }

    fn exponent(&mut self) -> Result<u64, ParseError> {
        if self.eat(b'^') {
            self.nat()
        } else {
            Ok(1)
        }
    }
}

fn parse_term(lx: &mut Lexer<'_>) -> Result<(usize, RawTerm), ParseError> {
    lx.skip_ws();
    let start = lx.pos;
    let mut term = RawTerm {
        scale: 1,
        t_power: 0,
        has_t: false,
        factors: Vec::new(),
    };
    let mut need_factor;
    if lx.peek().is_some_and(|c| c.is_ascii_digit()) {
        term.scale = lx.nat()?;
        if !lx.eat(b'*') {
            return err(lx.pos, "a coefficient must be followed by '*'");
        }
    }
    loop {
        let Some((at, name)) = lx.ident() else {
            return err(lx.pos, "expected a variable");
        };
        let power = lx.exponent()?;
        if name == "t" {
            if term.has_t || !term.factors.is_empty() {
                return err(at, "the parameter t may only appear once, in the coefficient");
            }
            term.has_t = true;
            term.t_power = power;
            need_factor = true;
        } else {
            term.factors.push((name, at, power));
            need_factor = false;
        }
        if !lx.eat(b'*') {
            break;
        }
    }
    if need_factor {
        return err(lx.pos, "expected a variable after the coefficient");
    }
    Ok((start, term))
}

/// Assigns variable indices, inferring the ring when `vars` is `None`.
fn resolve_vars(terms: &[Vec<RawTerm>], vars: Option<&[String]>) -> Result<Vec<String>, ParseError> {
    if let Some(v) = vars {
        for (i, name) in v.iter().enumerate() {
            if name == "t" || name.is_empty() || v[..i].contains(name) {
                return err(0, format!("invalid variable list entry '{name}'"));
            }
        }
        for (name, at, _) in terms.iter().flatten().flat_map(|t| &t.factors) {
            if !v.contains(name) {
                return err(*at, format!("unknown variable '{name}'"));
            }
        }
        return Ok(v.to_vec());
    }
    let names: Vec<&(String, usize, u64)> = terms.iter().flatten().flat_map(|t| &t.factors).collect();
    let indexed = |s: &str| s.len() > 1 && s.starts_with('x') && s[1..].bytes().all(|b| b.is_ascii_digit());
    if names.iter().any(|(n, _, _)| indexed(n)) {
        let mut dim = 0;
        for (name, at, _) in &names {
            let k: usize = if indexed(name) { name[1..].parse().unwrap_or(0) } else { 0 };
            if k == 0 {
                return err(*at, format!("unknown variable '{name}' (expected x1, x2, ...)"));
            }
            dim = dim.max(k);
        }
        return Ok((1..=dim).map(|i| format!("x{i}")).collect());
    }
    let mut dim = 1;
    for (name, at, _) in &names {
        match LETTERS.iter().position(|l| l == name) {
            Some(k) => dim = dim.max(k + 1),
            None => return err(*at, format!("unknown variable '{name}'")),
        }
    }
    Ok(default_vars(dim))
}

/// Parses an ideal. Generators with a single term become a monomial ideal;
/// anything else needs a prime characteristic.
pub fn parse_ideal(text: &str, vars: Option<&[String]>, characteristic: u64, parametric: bool) -> Result<IdealSpec, ParseError> {
    if characteristic != 0 && !lctkit::thresholds::is_prime(characteristic) {
        return err(0, format!("characteristic {characteristic} is not prime"));
    }
    let mut lx = Lexer {
        text: text.as_bytes(),
        pos: 0,
    };
    let mut gens: Vec<Vec<RawTerm>> = Vec::new();
    let mut starts = Vec::new();
    loop {
        let mut gen = Vec::new();
        lx.skip_ws();
        starts.push(lx.pos);
        loop {
            let (at, term) = parse_term(&mut lx)?;
            if term.has_t && !parametric {
                return err(at, "the parameter t needs --parametric");
            }
            if term.has_t && characteristic == 0 {
                return err(at, "the parameter t needs a prime characteristic");
            }
            gen.push(term);
            if !lx.eat(b'+') {
                break;
            }
        }
        gens.push(gen);
        if !lx.eat(b',') {
            break;
        }
    }
    if let Some(c) = lx.peek() {
        return err(lx.pos, format!("unexpected '{}'", c as char));
    }
    let names = resolve_vars(&gens, vars)?;
    let dim = names.len();

    // combine like terms; coefficients live in Z (char 0) or F_p[t]
    let mut combined: Vec<BTreeMap<Vec<u64>, Vec<u64>>> = Vec::new();
    for gen in &gens {
        let mut map: BTreeMap<Vec<u64>, Vec<u64>> = BTreeMap::new();
        for term in gen {
            let mut u = vec![0u64; dim];
            for (name, _, power) in &term.factors {
                let k = names.iter().position(|n| n == name).expect("resolved");
                u[k] = u[k].saturating_add(*power);
            }
            let coeff = map.entry(u).or_default();
            let k = term.t_power as usize;
            if coeff.len() <= k {
                coeff.resize(k + 1, 0);
            }
            coeff[k] = if characteristic == 0 {
                coeff[k].saturating_add(term.scale)
            } else {
                (coeff[k] + term.scale % characteristic) % characteristic
            };
        }
        map.retain(|_, c| c.iter().any(|&v| v != 0));
        combined.push(map);
    }

    let monomial = combined.iter().all(|m| m.len() <= 1 && m.values().all(|c| c.len() == 1));
    let ideal = if monomial {
        let exps = combined.iter().flat_map(|m| m.keys().cloned().map(ExponentVector::new));
        Parsed::Monomial(MonomialIdeal::new(dim, exps.collect::<Vec<_>>()).map_err(|e| ParseError {
            position: 0,
            message: e.to_string(),
        })?)
    } else {
        if characteristic == 0 {
            let at = combined.iter().position(|m| m.len() > 1).map_or(0, |i| starts[i]);
            return err(at, "polynomial generators need --char p");
        }
        let polys = combined
            .into_iter()
            .filter(|m| !m.is_empty())
            .map(|m| {
                let terms = m
                    .into_iter()
                    .map(|(u, c)| (ExponentVector::new(u), Coefficient::from_dense(c, characteristic)));
                SparsePolynomial::from_terms(characteristic, dim, terms).map_err(|e| ParseError {
                    position: 0,
                    message: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Parsed::Polynomial(polys)
    };
    Ok(IdealSpec {
        vars: names,
        characteristic,
        parametric,
        ideal,
    })
}

pub fn format_monomial(u: &ExponentVector, vars: &[String]) -> String {
    if u.is_zero() {
        return format!("{}^0", vars.first().map_or("x", String::as_str));
    }
    let mut out = String::new();
    for (k, &a) in u.coords().iter().enumerate() {
        if a == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('*');
        }
        out.push_str(&vars[k]);
        if a > 1 {
            let _ = write!(out, "^{a}");
        }
    }
    out
}

/// Generators joined by `", "`; the zero ideal prints as `"0"`.
pub fn format_ideal(ideal: &MonomialIdeal, vars: &[String]) -> String {
    if ideal.is_zero() {
        return "0".into();
    }
    ideal.gens().iter().rev().map(|g| format_monomial(g, vars)).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn monomial(text: &str) -> MonomialIdeal {
        match parse_ideal(text, None, 0, false).unwrap().ideal {
            Parsed::Monomial(m) => m,
            other => panic!("expected a monomial ideal, got {other:?}"),
        }
    }

    #[test]
    fn threshold_example() {
        let i = monomial("x^6, x^5*y, x^3*y^2, x^2*y^3, x*y^4, y^6");
        assert_eq!(i.dim(), 2);
        assert_eq!(i.num_gens(), 6);
    }

    #[test]
    fn unit_and_dimension() {
        assert!(monomial("x^0").is_unit());
        assert_eq!(monomial("z^4").dim(), 3);
        assert_eq!(monomial("x3*x5^2").dim(), 5);
        assert_eq!(monomial("3*x^2").gens()[0].coords(), &[2]);
    }

    #[test]
    fn parametric_polynomial() {
        let spec = parse_ideal("x^2 + t*y^2", None, 2, true).unwrap();
        let Parsed::Polynomial(polys) = spec.ideal else {
            panic!("expected a polynomial");
        };
        assert_eq!(polys.len(), 1);
        assert_eq!(polys[0].display_with(&spec.vars), "x^2 + t*y^2");
        let spec = parse_ideal("2*t^3*x + y", None, 5, true).unwrap();
        let Parsed::Polynomial(polys) = spec.ideal else {
            panic!("expected a polynomial");
        };
        assert_eq!(polys[0].display_with(&spec.vars), "2*t^3*x + y");
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_ideal("x^2, q", None, 0, false).unwrap_err().position, 5);
        assert!(parse_ideal("x + y", None, 0, false).unwrap_err().message.contains("--char"));
        assert!(parse_ideal("t*x", None, 3, false).unwrap_err().message.contains("--parametric"));
        assert_eq!(parse_ideal("x^", None, 0, false).unwrap_err().position, 2);
        assert!(parse_ideal("x, y)", None, 0, false).is_err());
        assert!(parse_ideal("x, y", None, 4, false).is_err());
        assert!(parse_ideal("x1, y", None, 0, false).is_err());
    }

    #[test]
    fn explicit_variables() {
        let vars: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let spec = parse_ideal("a*b, c^2", Some(&vars), 0, false).unwrap();
        assert_eq!(spec.dim(), 3);
        assert!(parse_ideal("a*d", Some(&vars), 0, false).is_err());
    }

    #[test]
    fn cancellation_in_char_p() {
        let spec = parse_ideal("x + 2*x, y", None, 3, false).unwrap();
        assert_eq!(spec.ideal, Parsed::Monomial(MonomialIdeal::from_exponents(2, &[&[0, 1]]).unwrap()));
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(
            dim in 1usize..=6,
            raw in prop::collection::vec(prop::collection::vec(0u64..5, 6), 1..5),
        ) {
            let gens: Vec<ExponentVector> = raw.into_iter().map(|c| ExponentVector::new(c[..dim].to_vec())).collect();
            let ideal = MonomialIdeal::new(dim, gens).unwrap();
            let vars = default_vars(dim);
            let text = format_ideal(&ideal, &vars);
            let back = parse_ideal(&text, Some(&vars), 0, false).unwrap();
            prop_assert_eq!(back.ideal, Parsed::Monomial(ideal));
        }
    }
}

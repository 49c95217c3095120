//! Sparse polynomials over `F_p` and `F_p[t]`.
//!
//! Coefficients are dense polynomials in a parameter `t` over `F_p`; an
//! ordinary `F_p` scalar is a coefficient of degree 0. Membership in a
//! monomial Frobenius power only asks which terms survive, so no division is
//! ever needed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::monomials::{ExponentVector, MonomialIdeal};
use crate::thresholds::is_prime;

/// Element of `F_p[t]`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coefficient(Vec<u64>);

impl Coefficient {
    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn constant(value: u64, p: u64) -> Self {
        Self::from_dense(vec![value % p], p)
    }

    /// `scale * t^k`.
    pub fn t_power(scale: u64, k: usize, p: u64) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = scale % p;
        Self::from_dense(v, p)
    }

    pub fn from_dense(mut coeffs: Vec<u64>, p: u64) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    /// Degree in `t`; constants have degree 0.
    pub fn t_degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn add(&self, other: &Self, p: u64) -> Self {
        let len = self.0.len().max(other.0.len());
        let v = (0..len)
            .map(|i| (self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0)) % p)
            .collect();
        Self::from_dense(v, p)
    }

    pub fn mul(&self, other: &Self, p: u64) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![0u64; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                v[i + j] = ((v[i + j] as u128 + a as u128 * b as u128) % p as u128) as u64;
            }
        }
        Self::from_dense(v, p)
    }

    fn render(&self) -> String {
        let mut parts = Vec::new();
        for (k, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            parts.push(match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}*t"),
                (k, 1) => format!("t^{k}"),
                (k, c) => format!("{c}*t^{k}"),
            });
        }
        parts.join(" + ")
    }
}

/// Polynomial in `n` variables with coefficients in `F_p[t]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    p: u64,
    dim: usize,
    terms: BTreeMap<ExponentVector, Coefficient>,
}

impl SparsePolynomial {
    pub fn zero(p: u64, dim: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("characteristic {p} is not prime")));
        }
        Ok(Self {
            p,
            dim,
            terms: BTreeMap::new(),
        })
    }

    pub fn one(p: u64, dim: usize) -> Result<Self> {
        Self::from_terms(p, dim, vec![(ExponentVector::zeros(dim), Coefficient::constant(1, p))])
    }

    /// Sums the given terms; zero coefficients vanish.
    pub fn from_terms(p: u64, dim: usize, terms: impl IntoIterator<Item = (ExponentVector, Coefficient)>) -> Result<Self> {
        let mut f = Self::zero(p, dim)?;
        for (u, c) in terms {
            if u.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: u.dim(),
                });
            }
            f.add_term(u, &c);
        }
        Ok(f)
    }

    /// The monomial `x^u` with coefficient 1.
    pub fn monomial(p: u64, u: ExponentVector) -> Result<Self> {
        let dim = u.dim();
        Self::from_terms(p, dim, vec![(u, Coefficient::constant(1, p))])
    }

    fn add_term(&mut self, u: ExponentVector, c: &Coefficient) {
        let p = self.p;
        let entry = self.terms.entry(u).or_insert_with(Coefficient::zero);
        *entry = entry.add(c, p);
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Coefficient)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &ExponentVector> {
        self.terms.keys()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True when every coefficient is a constant.
    pub fn is_over_prime_field(&self) -> bool {
        self.terms.values().all(|c| c.t_degree() == 0)
    }

    /// True when `f` is a single term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::CharacteristicMismatch(self.p, other.p));
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (u, c) in &other.terms {
            out.add_term(u.clone(), c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut acc: BTreeMap<ExponentVector, Coefficient> = BTreeMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let prod = a.mul(b, self.p);
                let entry = acc.entry(u.add(v)).or_insert_with(Coefficient::zero);
                *entry = entry.add(&prod, self.p);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Self {
            p: self.p,
            dim: self.dim,
            terms: acc,
        })
    }

    pub fn pow(&self, mut m: u64) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = Self::one(self.p, self.dim)?;
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            m >>= 1;
            if m > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Drops every term lying in `J^[q]`; the result is 0 iff `f ∈ J^[q]`.
    pub fn reduce_mod_frobenius(&self, target: &MonomialIdeal, q: u64) -> Result<Self> {
        let frob = target.frobenius_power(q)?;
        self.reduce_mod(&frob)
    }

    /// Drops every term lying in the monomial ideal `ideal`.
    pub fn reduce_mod(&self, ideal: &MonomialIdeal) -> Result<Self> {
        if ideal.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: ideal.dim(),
            });
        }
        let terms = self
            .terms
            .iter()
            .filter(|(u, _)| !ideal.gens().iter().any(|g| g.divides(u)))
            .map(|(u, c)| (u.clone(), c.clone()))
            .collect();
        Ok(Self {
            p: self.p,
            dim: self.dim,
            terms,
        })
    }

    /// Renders with the given variable names, highest terms first.
    pub fn display_with(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (u, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let mono: Vec<String> = u
                .coords()
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(k, &a)| if a == 1 { vars[k].clone() } else { format!("{}^{a}", vars[k]) })
                .collect();
            let coeff = c.render();
            let single_term_coeff = c.coeffs().iter().filter(|&&v| v != 0).count() == 1;
            match (mono.is_empty(), coeff.as_str()) {
                (true, _) => out.push_str(&coeff),
                (false, "1") => {}
                (false, _) if single_term_coeff => {
                    let _ = write!(out, "{coeff}*");
                }
                (false, _) => {
                    let _ = write!(out, "({coeff})*");
                }
            }
            out.push_str(&mono.join("*"));
        }
        out
    }
}

/// Linear functional `λ(u) = Σ λ_i u_i` on exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerWeight(pub Vec<BigInt>);

impl IntegerWeight {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn eval(&self, u: &[u64]) -> BigInt {
        self.0.iter().zip(u).map(|(l, &a)| l * BigInt::from(a)).sum()
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// Sum of the terms of `f` on which `λ` is largest.
pub fn initial_form(f: &SparsePolynomial, weight: &IntegerWeight) -> Result<SparsePolynomial> {
    if f.is_zero() {
        return Err(Error::InvalidParameter("initial form of the zero polynomial".into()));
    }
    if weight.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: weight.dim(),
        });
    }
    let top = f.support().map(|u| weight.eval(u.coords())).max().expect("nonzero");
    let terms = f
        .terms
        .iter()
        .filter(|(u, _)| weight.eval(u.coords()) == top)
        .map(|(u, c)| (u.clone(), c.clone()))
        .collect();
    Ok(SparsePolynomial {
        p: f.p,
        dim: f.dim,
        terms,
    })
}

/// Default cap on distinct reduced products kept by [`nu_poly`].
pub const DEFAULT_BFS_BUDGET: usize = 200_000;

/// `ν_a^J(p^e)` for `a` generated by `gens`: the largest `t` such that some
/// product of `t` generators survives reduction modulo `J^[p^e]`.
///
/// Products are built one level at a time. A product that reduces to 0 is
/// dropped, because every multiple of it lies in `J^[q]` as well.
pub fn nu_poly(gens: &[SparsePolynomial], target: &MonomialIdeal, p: u64, e: u32, budget: usize) -> Result<u64> {
    let first = gens
        .first()
        .ok_or_else(|| Error::InvalidParameter("no generators given".into()))?;
    for g in gens {
        first.check_compatible(g)?;
        if g.is_zero() {
            return Err(Error::InvalidParameter("generators must be nonzero".into()));
        }
        if g.terms.keys().any(ExponentVector::is_zero) {
            return Err(Error::InvalidParameter(
                "a generator has a nonzero constant term, so ν is unbounded".into(),
            ));
        }
    }
    if first.p != p {
        return Err(Error::CharacteristicMismatch(first.p, p));
    }
    if target.dim() != first.dim {
        return Err(Error::DimensionMismatch {
            expected: first.dim,
            found: target.dim(),
        });
    }
    if !target.is_m_primary() {
        return Err(Error::NotPrimary);
    }
    let q = p.checked_pow(e).ok_or(Error::Overflow)?;
    let frob = target.frobenius_power(q)?;
    let reduced: Vec<SparsePolynomial> = gens.iter().map(|g| g.reduce_mod(&frob)).collect::<Result<_>>()?;

    let mut level: BTreeSet<Vec<(ExponentVector, Coefficient)>> = BTreeSet::new();
    level.insert(canonical(&SparsePolynomial::one(p, first.dim)?));
    let mut nu = 0u64;
    loop {
        let mut next = BTreeSet::new();
        for state in &level {
            let f = SparsePolynomial {
                p,
                dim: first.dim,
                terms: state.iter().cloned().collect(),
            };
            for g in &reduced {
                let h = f.mul(g)?.reduce_mod(&frob)?;
                if !h.is_zero() {
                    next.insert(canonical(&h));
                    if next.len() > budget {
                        return Err(Error::BudgetExceeded {
                            budget,
                            lower_bound: Some(nu + 1),
                        });
                    }
                }
            }
        }
        if next.is_empty() {
            return Ok(nu);
        }
        nu += 1;
        level = next;
    }
}

fn canonical(f: &SparsePolynomial) -> Vec<(ExponentVector, Coefficient)> {
    f.terms.iter().map(|(u, c)| (u.clone(), c.clone())).collect()
}

/// `x^p + y^{p+1}` over `F_p`.
pub fn pos_char_example(p: u64) -> Result<SparsePolynomial> {
    SparsePolynomial::from_terms(
        p,
        2,
        vec![
            (ExponentVector::new(vec![p, 0]), Coefficient::constant(1, p)),
            (ExponentVector::new(vec![0, p + 1]), Coefficient::constant(1, p)),
        ],
    )
}

/// `x^p + t y^p` over `F_p[t]`.
pub fn imperfect_field_example(p: u64) -> Result<SparsePolynomial> {
    SparsePolynomial::from_terms(
        p,
        2,
        vec![
            (ExponentVector::new(vec![p, 0]), Coefficient::constant(1, p)),
            (ExponentVector::new(vec![0, p]), Coefficient::t_power(1, 1, p)),
        ],
    )
}

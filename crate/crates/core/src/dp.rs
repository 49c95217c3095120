//! The Demailly-Pham invariant `E_l(I) = 1/σ_1 + σ_1/σ_2 + ... + σ_{l-1}/σ_l`,
//! its comparison with the log canonical threshold, and the classification of
//! monomial ideals attaining `E_l = c`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::monomials::MonomialIdeal;
use crate::multiplicities::{sigma_vector, GridConfig};
use crate::polytope::integral_closure;
use crate::rational::{from_u64, Rational};
use crate::thresholds::lct_monomial;

/// `E_l(I)`, defined when `codim(I) >= l`.
pub fn dp_invariant(ideal: &MonomialIdeal, l: usize) -> Result<Rational> {
    dp_invariant_with(ideal, l, &GridConfig::default())
}

pub fn dp_invariant_with(ideal: &MonomialIdeal, l: usize, config: &GridConfig) -> Result<Rational> {
    let sigmas = finite_sigmas(ideal, l, config)?;
    Ok(dp_from_sigmas(&sigmas))
}

fn finite_sigmas(ideal: &MonomialIdeal, l: usize, config: &GridConfig) -> Result<Vec<u64>> {
    if l < 1 || l > ideal.dim() {
        return Err(Error::InvalidParameter(format!("l = {l} outside 1..={}", ideal.dim())));
    }
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let codim = ideal.codimension()?;
    if l > codim {
        return Err(Error::NotApplicable(format!(
            "sigma_{l} is infinite because the height is {codim}"
        )));
    }
    sigma_vector(ideal, l, config)?
        .into_iter()
        .map(|s| s.ok_or_else(|| Error::Postcondition("finite sigma expected below the height".into())))
        .collect()
}

/// `Σ σ_{j-1}/σ_j` with `σ_0 = 1`.
pub fn dp_from_sigmas(sigmas: &[u64]) -> Rational {
    let mut previous = 1u64;
    let mut total = Rational::zero();
    for &s in sigmas {
        total += Rational::new(BigInt::from(previous), BigInt::from(s));
        previous = s;
    }
    total
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpReport {
    pub l: usize,
    pub sigmas: Vec<u64>,
    pub e: Rational,
    pub c: Rational,
    /// `c - E_l`, never negative for a correct implementation.
    pub slack: Rational,
    pub equality: bool,
}

/// Compares `E_l(I)` with `c(I)` exactly.
pub fn check_bound(ideal: &MonomialIdeal, l: usize) -> Result<DpReport> {
    check_bound_with(ideal, l, &GridConfig::default())
}

pub fn check_bound_with(ideal: &MonomialIdeal, l: usize, config: &GridConfig) -> Result<DpReport> {
    let sigmas = finite_sigmas(ideal, l, config)?;
    let e = dp_from_sigmas(&sigmas);
    let c = lct_monomial(ideal)?;
    let slack = &c - &e;
    Ok(DpReport {
        l,
        equality: slack.is_zero(),
        sigmas,
        e,
        c,
        slack,
    })
}

/// Model `(x_{π(1)}^{d_1}, ..., x_{π(l)}^{d_l})` with the same integral closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationWitness {
    /// `permutation[j]` is the variable carrying `x^{d_{j+1}}`; the remaining
    /// entries list the unused variables in increasing order.
    pub permutation: Vec<usize>,
    pub degrees: Vec<u64>,
}

impl ClassificationWitness {
    pub fn model(&self, dim: usize) -> MonomialIdeal {
        let mut exps = vec![0u64; dim];
        let gens = self.degrees.iter().zip(&self.permutation).map(|(&d, &v)| {
            exps.iter_mut().for_each(|e| *e = 0);
            exps[v] = d;
            crate::ExponentVector::new(exps.clone())
        });
        MonomialIdeal::new(dim, gens.collect::<Vec<_>>()).expect("model has the ambient dimension")
    }
}

/// Outcome of the equality classifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// `E_l < c`: nothing to classify.
    NotApplicable(DpReport),
    /// Equality holds and a permuted model with the same closure was found.
    Witness(ClassificationWitness),
    /// Equality holds but no monomial model matched; a finding, not an error.
    NoMonomialWitness(DpReport),
}

/// Searches coordinate permutations and degree tuples for a model of `Ī`.
///
/// Candidate degrees come from `σ_j / σ_{j-1}` first and then from all
/// nondecreasing tuples bounded by the largest generator degree.
pub fn classify_equality(ideal: &MonomialIdeal, l: usize) -> Result<Classification> {
    classify_equality_with(ideal, l, &GridConfig::default())
}

pub fn classify_equality_with(ideal: &MonomialIdeal, l: usize, config: &GridConfig) -> Result<Classification> {
    let report = check_bound_with(ideal, l, config)?;
    if !report.equality {
        return Ok(Classification::NotApplicable(report));
    }
    let n = ideal.dim();
    let closure = integral_closure(ideal)?;

    let mut candidates: Vec<Vec<u64>> = Vec::new();
    let mut previous = 1u64;
    let ratios: Option<Vec<u64>> = report
        .sigmas
        .iter()
        .map(|&s| {
            let d = (s % previous == 0).then(|| s / previous);
            previous = s;
            d
        })
        .collect();
    if let Some(d) = ratios.filter(|d| d.windows(2).all(|w| w[0] <= w[1]) && d.iter().all(|&x| x > 0)) {
        candidates.push(d);
    }
    let max_degree = ideal.max_degree().max(1);
    let mut tuple = Vec::with_capacity(l);
    nondecreasing_tuples(l, 1, max_degree, &mut tuple, &mut candidates);

    let prefixes = permutation_prefixes(n, l);
    let mut tried: HashSet<(Vec<u64>, Vec<usize>)> = HashSet::new();
    for degrees in &candidates {
        for prefix in &prefixes {
            if !tried.insert((degrees.clone(), prefix.clone())) {
                continue;
            }
            let mut permutation = prefix.clone();
            permutation.extend((0..n).filter(|v| !prefix.contains(v)));
            let witness = ClassificationWitness {
                permutation,
                degrees: degrees.clone(),
            };
            if integral_closure(&witness.model(n))? == closure {
                return Ok(Classification::Witness(witness));
            }
        }
    }
    Ok(Classification::NoMonomialWitness(report))
}

fn nondecreasing_tuples(len: usize, low: u64, high: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if current.len() == len {
        out.push(current.clone());
        return;
    }
    for d in low..=high {
        current.push(d);
        nondecreasing_tuples(len, d, high, current, out);
        current.pop();
    }
}

/// Ordered selections of `l` distinct variables, lexicographically.
fn permutation_prefixes(n: usize, l: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, l: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == l {
            out.push(current.clone());
            return;
        }
        for v in 0..n {
            if !current.contains(&v) {
                current.push(v);
                go(n, l, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, l, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoDegreeReport {
    pub d1: u64,
    pub d2: u64,
    /// `c(I_1 + m^{d_2})`.
    pub lhs: Rational,
    /// `n/d_2 + c(I_1)(d_2 - d_1)/d_2`.
    pub rhs: Rational,
    pub holds: bool,
}

/// Evaluates both sides of the two-degree formula for `I = I_1 + m^{d_2}`.
pub fn two_degree_check(i1: &MonomialIdeal, d2: u64) -> Result<TwoDegreeReport> {
    let d1 = i1
        .equigenerated_degree()
        .ok_or_else(|| Error::InvalidParameter("I_1 must be generated in a single degree".into()))?;
    if d1 == 0 {
        return Err(Error::UnitIdeal);
    }
    if d2 <= d1 {
        return Err(Error::InvalidParameter(format!("need d2 > d1, got d1 = {d1}, d2 = {d2}")));
    }
    let n = i1.dim() as u64;
    let whole = i1.sum(&MonomialIdeal::maximal_power(i1.dim(), d2))?;
    let lhs = lct_monomial(&whole)?;
    let rhs = Rational::new(BigInt::from(n), BigInt::from(d2))
        + lct_monomial(i1)? * Rational::new(BigInt::from(d2 - d1), BigInt::from(d2));
    Ok(TwoDegreeReport {
        d1,
        d2,
        holds: lhs == rhs,
        lhs,
        rhs,
    })
}

/// `(σ_1, σ_2/σ_1, ..., σ_l/σ_{l-1})`, the simplex intercepts at equality.
pub fn sigma_intercepts(sigmas: &[u64]) -> Vec<Rational> {
    let mut previous = 1u64;
    sigmas
        .iter()
        .map(|&s| {
            let r = from_u64(s) / from_u64(previous);
            previous = s;
            r
        })
        .collect()
}

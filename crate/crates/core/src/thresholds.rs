//! Thresholds of monomial ideals.
//!
//! The log canonical threshold of a monomial ideal is `1 / mu` of its Newton
//! polyhedron, and the same number is the F-pure threshold in every
//! characteristic. F-thresholds at a finite level `q = p^e` are computed
//! combinatorially: for monomial ideals they do not depend on `p`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomials::{for_each_in_box, ExponentVector, MonomialIdeal};
use crate::polytope::{self, floor_u64};
use crate::rational::{from_u64, Rational};

/// Default cap on DP states for `nu_monomial`.
pub const DEFAULT_STATE_BUDGET: usize = 20_000_000;

/// `c(I) = 1 / mu(I)`.
pub fn lct_monomial(ideal: &MonomialIdeal) -> Result<Rational> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    Ok(polytope::mu(ideal)?.recip())
}

/// Like [`lct_monomial`] but `0` for the zero ideal, which is how a threshold
/// behaves after restricting to a hyperplane containing the whole zero locus.
pub fn lct_or_zero(ideal: &MonomialIdeal) -> Result<Rational> {
    if ideal.is_zero() {
        return Ok(Rational::zero());
    }
    lct_monomial(ideal)
}

/// `nu_I^J(q)`: the largest `t` with `I^t` not inside `J^[q]`.
///
/// Longest path from `0` through the monomials outside `J^[q]`, where each
/// step adds a generator of `I`.
pub fn nu_monomial(ideal: &MonomialIdeal, target: &MonomialIdeal, q: u64, budget: usize) -> Result<u64> {
    if ideal.dim() != target.dim() {
        return Err(Error::DimensionMismatch {
            expected: target.dim(),
            found: ideal.dim(),
        });
    }
    if q < 1 {
        return Err(Error::InvalidParameter(format!("q must be positive, got {q}")));
    }
    if !target.is_m_primary() {
        return Err(Error::NotPrimary);
    }
    if ideal.is_unit() {
        return Err(Error::InvalidParameter(
            "the unit ideal is not contained in the radical of J".into(),
        ));
    }
    if ideal.is_zero() {
        return Ok(0);
    }
    if ideal.gens().iter().any(ExponentVector::is_zero) {
        return Err(Error::InvalidParameter("ideal contains a unit".into()));
    }
    let frob = target.frobenius_power(q)?;
    let bounds: Vec<u64> = frob
        .pure_power_exponents()
        .into_iter()
        .map(|a| a.expect("m-primary"))
        .collect();
    let size = bounds
        .iter()
        .try_fold(1usize, |acc, &b| acc.checked_mul(usize::try_from(b).ok()?))
        .filter(|&s| s <= budget)
        .ok_or(Error::BudgetExceeded {
            budget,
            lower_bound: None,
        })?;

    let n = bounds.len();
    let mut strides = vec![1usize; n];
    for i in (0..n.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * bounds[i + 1] as usize;
    }
    let inside = frobenius_membership(&frob, &bounds, &strides, size);

    const OUT: u32 = u32::MAX;
    let mut best = vec![OUT; size];
    let mut coords = vec![0u64; n];
    for flat in (0..size).rev() {
        if inside[flat] {
            continue;
        }
        let mut rem = flat;
        for i in 0..n {
            coords[i] = (rem / strides[i]) as u64;
            rem %= strides[i];
        }
        let mut value = 0u32;
        for g in ideal.gens() {
            let mut next = 0usize;
            let mut fits = true;
            for i in 0..n {
                let c = coords[i] + g[i];
                if c >= bounds[i] {
                    fits = false;
                    break;
                }
                next += c as usize * strides[i];
            }
            if fits && best[next] != OUT {
                value = value.max(best[next] + 1);
            }
        }
        best[flat] = value;
    }
    Ok(u64::from(best[0]))
}

/// `inside[u]` for every `u` in the box, via `u ∈ J` iff `u` is a generator or
/// some `u - e_i` is inside.
fn frobenius_membership(frob: &MonomialIdeal, bounds: &[u64], strides: &[usize], size: usize) -> Vec<bool> {
    let mut inside = vec![false; size];
    for g in frob.gens() {
        if g.coords().iter().zip(bounds).all(|(a, b)| a < b) {
            let flat: usize = g.coords().iter().zip(strides).map(|(&a, s)| a as usize * s).sum();
            inside[flat] = true;
        }
    }
    let n = bounds.len();
    let mut coords = vec![0u64; n];
    for flat in 0..size {
        if inside[flat] {
            continue;
        }
        let mut rem = flat;
        for i in 0..n {
            coords[i] = (rem / strides[i]) as u64;
            rem %= strides[i];
        }
        inside[flat] = (0..n).any(|i| coords[i] > 0 && inside[flat - strides[i]]);
    }
    inside
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketEntry {
    pub e: u32,
    pub q: u64,
    pub nu: u64,
    /// `nu / q`.
    pub lower: Rational,
    /// `(nu + g) / q` with `g` the number of generators.
    pub upper: Rational,
    pub contains_limit: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FptBrackets {
    pub limit: Rational,
    pub entries: Vec<BracketEntry>,
    /// `nu(p^{e+1}) >= p nu(p^e)` for all consecutive levels.
    pub monotone: bool,
}

/// `nu(p^e)` against `m` for `e = 1..=e_max`, with certified brackets.
///
/// If `I` has `g` generators then `I^{s(k-1) + g(s-1) + 1} ⊆ (I^k)^[s]`, which
/// gives `fpt <= (nu(q) + g) / q`. The width `1/q` bracket only holds for
/// principal ideals.
pub fn fpt_brackets(ideal: &MonomialIdeal, p: u64, e_max: u32, budget: usize) -> Result<FptBrackets> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if e_max < 1 {
        return Err(Error::InvalidParameter("e_max must be at least 1".into()));
    }
    let limit = lct_monomial(ideal)?;
    let m = MonomialIdeal::maximal(ideal.dim());
    let g = ideal.num_gens() as u64;
    let mut entries = Vec::new();
    let mut q = 1u64;
    for e in 1..=e_max {
        q = q.checked_mul(p).ok_or(Error::Overflow)?;
        let nu = nu_monomial(ideal, &m, q, budget)?;
        let lower = Rational::new(BigInt::from(nu), BigInt::from(q));
        let upper = Rational::new(BigInt::from(nu + g), BigInt::from(q));
        let contains_limit = lower <= limit && limit <= upper;
        entries.push(BracketEntry {
            e,
            q,
            nu,
            lower,
            upper,
            contains_limit,
        });
    }
    let monotone = entries.windows(2).all(|w| w[1].nu >= p * w[0].nu);
    Ok(FptBrackets {
        limit,
        entries,
        monotone,
    })
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `(m^[q] : m^t)` by the closed formula.
pub fn colon_frobenius_maxideal(n: usize, q: u64, t: u64) -> Result<MonomialIdeal> {
    if q < 1 || t < 1 || n < 1 {
        return Err(Error::InvalidParameter("need n, q, t >= 1".into()));
    }
    let corner = (n as u64) * q - n as u64 + 1;
    if t >= corner {
        return Ok(MonomialIdeal::unit(n));
    }
    let frob = MonomialIdeal::maximal(n).frobenius_power(q)?;
    frob.sum(&MonomialIdeal::maximal_power(n, corner - t))
}

/// `(I : J)` by enumerating monomials, for m-primary `I`.
pub fn colon_by_enumeration(ideal: &MonomialIdeal, by: &MonomialIdeal) -> Result<MonomialIdeal> {
    if ideal.dim() != by.dim() {
        return Err(Error::DimensionMismatch {
            expected: ideal.dim(),
            found: by.dim(),
        });
    }
    if by.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.is_unit() {
        return Ok(ideal.clone());
    }
    if !ideal.is_m_primary() {
        return Err(Error::NotPrimary);
    }
    // x_i^{a_i} lies in the colon, so its minimal generators fit in the box.
    let bounds: Vec<u64> = ideal
        .pure_power_exponents()
        .into_iter()
        .map(|a| a.expect("m-primary") + 1)
        .collect();
    let mut found = Vec::new();
    for_each_in_box(&bounds, |u| {
        let u = ExponentVector::new(u.to_vec());
        if by.gens().iter().all(|g| ideal.contains_monomial(&u.add(g)).unwrap_or(false)) {
            found.push(u);
        }
    });
    MonomialIdeal::new(ideal.dim(), found)
}

/// Monomial valuation with `v(x_i) = weights[i] >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialValuation {
    weights: Vec<Rational>,
}

impl MonomialValuation {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.iter().any(Signed::is_negative) {
            return Err(Error::InvalidParameter("valuation weights must be nonnegative".into()));
        }
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn value(&self, u: &[u64]) -> Rational {
        u.iter().zip(&self.weights).map(|(&a, w)| from_u64(a) * w).sum()
    }

    /// `{f : v(f) >= level}`, or `> level` when `strict`.
    pub fn ideal(&self, level: &Rational, strict: bool) -> MonomialIdeal {
        let n = self.dim();
        let trivially_all = if strict { level.is_negative() } else { !level.is_positive() };
        if trivially_all {
            return MonomialIdeal::unit(n);
        }
        if self.weights.iter().all(Zero::is_zero) {
            return MonomialIdeal::zero(n);
        }
        let bounds: Vec<u64> = self
            .weights
            .iter()
            .map(|w| {
                if w.is_zero() {
                    return 1;
                }
                let ratio = level / w;
                let top = if strict {
                    floor_u64(&ratio) + 1
                } else {
                    floor_u64(&ratio.ceil())
                };
                top + 1
            })
            .collect();
        let mut found = Vec::new();
        for_each_in_box(&bounds, |u| {
            let v = self.value(u);
            if (strict && v > *level) || (!strict && v >= *level) {
                found.push(ExponentVector::new(u.to_vec()));
            }
        });
        MonomialIdeal::new(n, found).expect("box points have the right dimension")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationColon {
    pub brute_force: MonomialIdeal,
    pub formula: MonomialIdeal,
}

impl ValuationColon {
    pub fn agrees(&self) -> bool {
        self.brute_force == self.formula
    }
}

/// Both sides of `((x_1^q, ..., x_n^q) : a_l) = (x_1^q, ..., x_n^q) + a^+_{(q-1) v(x_1...x_n) - l}`.
pub fn valuation_colon(v: &MonomialValuation, q: u64, level: &Rational) -> Result<ValuationColon> {
    if q < 1 {
        return Err(Error::InvalidParameter(format!("q must be positive, got {q}")));
    }
    if level.is_negative() {
        return Err(Error::InvalidParameter("level must be nonnegative".into()));
    }
    let n = v.dim();
    let frob = MonomialIdeal::maximal(n).frobenius_power(q)?;
    let a = v.ideal(level, false);
    let brute_force = if a.is_zero() {
        MonomialIdeal::unit(n)
    } else {
        colon_by_enumeration(&frob, &a)?
    };
    let corner = vec![q - 1; n];
    let shifted = v.value(&corner) - level;
    let formula = frob.sum(&v.ideal(&shifted, true))?;
    Ok(ValuationColon { brute_force, formula })
}

/// Least `t` with `m^t` inside the integral closure; `None` when not m-primary.
pub fn lojasiewicz_exponent(ideal: &MonomialIdeal) -> Result<Option<u64>> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.is_unit() {
        return Ok(Some(0));
    }
    if !ideal.is_m_primary() {
        return Ok(None);
    }
    let closure = polytope::integral_closure(ideal)?;
    let n = ideal.dim();
    let mut t = 1;
    loop {
        if closure.contains(&MonomialIdeal::maximal_power(n, t))? {
            return Ok(Some(t));
        }
        t += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneDrop {
    pub coordinate: usize,
    pub c: Rational,
    pub c_restricted: Rational,
    pub bound: Rational,
    pub holds: bool,
}

/// `c(I) - c(I|_H) >= 1/L_0(I)` for each coordinate hyperplane `x_k = 0`.
pub fn lojasiewicz_drops(ideal: &MonomialIdeal) -> Result<Vec<HyperplaneDrop>> {
    let c = lct_monomial(ideal)?;
    let bound = match lojasiewicz_exponent(ideal)? {
        Some(l) if l > 0 => Rational::new(BigInt::one(), BigInt::from(l)),
        _ => Rational::zero(),
    };
    (0..ideal.dim())
        .map(|k| {
            let c_restricted = lct_or_zero(&ideal.restrict_coordinate(k)?)?;
            let holds = &c - &c_restricted >= bound;
            Ok(HyperplaneDrop {
                coordinate: k,
                c: c.clone(),
                c_restricted,
                bound: bound.clone(),
                holds,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn ideal(dim: usize, gens: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(dim, gens).unwrap()
    }

    const B: usize = DEFAULT_STATE_BUDGET;

    #[test]
    fn howald() {
        let ex = ideal(2, &[&[6, 0], &[5, 1], &[3, 2], &[2, 3], &[1, 4], &[0, 6]]);
        assert_eq!(lct_monomial(&ex).unwrap(), ratio(2, 5));
        assert_eq!(lct_monomial(&MonomialIdeal::maximal_power(3, 4)).unwrap(), ratio(3, 4));
        assert_eq!(
            lct_monomial(&MonomialIdeal::pure_powers(&[2, 3, 7])).unwrap(),
            ratio(1, 2) + ratio(1, 3) + ratio(1, 7)
        );
        assert_eq!(lct_monomial(&MonomialIdeal::unit(2)), Err(Error::UnitIdeal));
    }

    #[test]
    fn nu_examples() {
        let m = MonomialIdeal::maximal(2);
        for q in [2, 3, 4, 8, 9] {
            assert_eq!(nu_monomial(&m, &m, q, B).unwrap(), 2 * (q - 1));
        }
        assert_eq!(nu_monomial(&ideal(2, &[&[1, 1]]), &m, 8, B).unwrap(), 7);
        // (x^2, y^3) at q = 9: x^a y^b with 2a <= 8, 3b <= 8 -> a + b <= 4 + 2
        assert_eq!(nu_monomial(&ideal(2, &[&[2, 0], &[0, 3]]), &m, 9, B).unwrap(), 6);
        // a generator already in m^[2]
        assert_eq!(nu_monomial(&ideal(1, &[&[5]]), &MonomialIdeal::maximal(1), 2, B).unwrap(), 0);
        assert!(matches!(
            nu_monomial(&m, &ideal(2, &[&[1, 1]]), 2, B),
            Err(Error::NotPrimary)
        ));
        assert!(matches!(nu_monomial(&m, &m, 1000, 10), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn bracket_width_one_over_q_fails_for_the_maximal_ideal() {
        let m = MonomialIdeal::maximal(2);
        let b = fpt_brackets(&m, 2, 3, B).unwrap();
        let last = &b.entries[2];
        assert_eq!(last.nu, 14);
        assert!(ratio(15, 8) < int(2));
        assert_eq!(last.upper, int(2));
        assert!(b.entries.iter().all(|e| e.contains_limit));
        assert!(b.monotone);
    }

    #[test]
    fn brackets_contain_the_threshold() {
        let i = ideal(2, &[&[2, 0], &[0, 3]]);
        let b = fpt_brackets(&i, 5, 3, B).unwrap();
        assert_eq!(b.limit, ratio(5, 6));
        assert!(b.entries.iter().all(|e| e.contains_limit));
        let ex = ideal(2, &[&[6, 0], &[5, 1], &[3, 2], &[2, 3], &[1, 4], &[0, 6]]);
        let b = fpt_brackets(&ex, 7, 2, B).unwrap();
        assert!(b.entries.iter().all(|e| e.contains_limit) && b.monotone);
        assert!(fpt_brackets(&i, 4, 1, B).is_err());
    }

    #[test]
    fn colon_formula() {
        assert!(colon_frobenius_maxideal(2, 4, 7).unwrap().is_unit());
        let m = MonomialIdeal::maximal(2);
        let expected = m.frobenius_power(4).unwrap().sum(&MonomialIdeal::maximal_power(2, 4)).unwrap();
        assert_eq!(colon_frobenius_maxideal(2, 4, 3).unwrap(), expected);
        let frob = m.frobenius_power(4).unwrap();
        assert_eq!(colon_by_enumeration(&frob, &m.power(3)).unwrap(), expected);
        assert_eq!(colon_frobenius_maxideal(1, 5, 1).unwrap(), ideal(1, &[&[4]]));
    }

    #[test]
    fn valuation_ideals() {
        let v = MonomialValuation::new(vec![int(1), int(1)]).unwrap();
        assert_eq!(v.ideal(&int(2), false), MonomialIdeal::maximal_power(2, 2));
        let w = MonomialValuation::new(vec![ratio(1, 2), ratio(1, 3)]).unwrap();
        assert_eq!(w.ideal(&int(1), false), ideal(2, &[&[2, 0], &[1, 2], &[0, 3]]));
        let z = MonomialValuation::new(vec![int(1), int(0)]).unwrap();
        assert_eq!(z.ideal(&int(3), false), ideal(2, &[&[3, 0]]));
        assert_eq!(z.ideal(&int(3), true), ideal(2, &[&[4, 0]]));
        assert!(v.ideal(&int(0), false).is_unit());
        let zero = MonomialValuation::new(vec![int(0), int(0)]).unwrap();
        assert!(zero.ideal(&int(1), false).is_zero());
        assert!(MonomialValuation::new(vec![int(-1)]).is_err());
    }

    #[test]
    fn valuation_colons() {
        let v = MonomialValuation::new(vec![int(1), int(1)]).unwrap();
        assert!(valuation_colon(&v, 3, &int(2)).unwrap().agrees());
        let w = MonomialValuation::new(vec![ratio(1, 2), ratio(1, 3)]).unwrap();
        assert!(valuation_colon(&w, 4, &int(1)).unwrap().agrees());
        assert!(valuation_colon(&w, 4, &int(0)).unwrap().agrees());
    }

    #[test]
    fn lojasiewicz() {
        assert_eq!(lojasiewicz_exponent(&MonomialIdeal::maximal_power(2, 3)).unwrap(), Some(3));
        assert_eq!(lojasiewicz_exponent(&ideal(2, &[&[2, 0], &[0, 3]])).unwrap(), Some(3));
        assert_eq!(lojasiewicz_exponent(&ideal(2, &[&[1, 1]])).unwrap(), None);
        let drops = lojasiewicz_drops(&ideal(2, &[&[2, 0], &[0, 3]])).unwrap();
        assert!(drops.iter().all(|d| d.holds));
        // dropping y leaves (x^2): 5/6 - 1/2 = 1/3 >= 1/3
        assert_eq!(drops[1].c_restricted, ratio(1, 2));
    }
}

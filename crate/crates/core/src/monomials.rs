//! Monomial ideals in `k[x_1, ..., x_n]`, represented by exponent vectors.
//!
//! A [`MonomialIdeal`] always stores its minimal generators in lexicographic
//! order, so two ideals are equal exactly when their structs compare equal.
//! The zero ideal has no generators and the unit ideal has the single zero
//! vector as generator.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Exponent tuple `(a_1, ..., a_n)` of the monomial `x_1^a_1 ... x_n^a_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u64>);

impl ExponentVector {
    pub fn new(coords: Vec<u64>) -> Self {
        Self(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    /// `scale * b_index`.
    pub fn basis(dim: usize, index: usize, scale: u64) -> Self {
        let mut v = vec![0; dim];
        v[index] = scale;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u64> {
        self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// True iff `x^self` divides `x^other`, i.e. `self <= other` componentwise.
    pub fn divides(&self, other: &Self) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise `max(self - other, 0)`: the generator of `(x^self) : x^other`.
    pub fn saturating_sub(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        )
    }

    /// Componentwise maximum: the lcm of two monomials.
    pub fn lcm(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn checked_scale(&self, q: u64) -> Result<Self> {
        self.0
            .iter()
            .map(|a| a.checked_mul(q).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, _)| i)
    }

    /// If this is a pure power `x_i^a` with `a > 0`, returns `(i, a)`.
    pub fn as_pure_power(&self) -> Option<(usize, u64)> {
        let mut support = self.support();
        let i = support.next()?;
        if support.next().is_some() {
            return None;
        }
        Some((i, self.0[i]))
    }
}

impl From<Vec<u64>> for ExponentVector {
    fn from(v: Vec<u64>) -> Self {
        Self(v)
    }
}

impl std::ops::Index<usize> for ExponentVector {
    type Output = u64;

    fn index(&self, i: usize) -> &u64 {
        &self.0[i]
    }
}

/// Returns the minimal elements of `raw` under divisibility, in canonical order.
pub fn minimalize(dim: usize, raw: impl IntoIterator<Item = ExponentVector>) -> Result<Vec<ExponentVector>> {
    let mut candidates: Vec<ExponentVector> = Vec::new();
    for v in raw {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.dim(),
            });
        }
        candidates.push(v);
    }
    Ok(minimal_elements(candidates))
}

fn minimal_elements(mut candidates: Vec<ExponentVector>) -> Vec<ExponentVector> {
    // A divisor has degree at most that of its multiple, so scanning by degree
    // only has to compare against already accepted vectors.
    candidates.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    candidates.dedup();
    let mut kept: Vec<ExponentVector> = Vec::new();
    for v in candidates {
        if !kept.iter().any(|k| k.divides(&v)) {
            kept.push(v);
        }
    }
    kept.sort();
    kept
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialIdeal {
    dim: usize,
    gens: Vec<ExponentVector>,
}

impl MonomialIdeal {
    pub fn new(dim: usize, raw: impl IntoIterator<Item = ExponentVector>) -> Result<Self> {
        Ok(Self {
            dim,
            gens: minimalize(dim, raw)?,
        })
    }

    /// Convenience constructor from plain coordinate vectors.
    pub fn from_exponents(dim: usize, raw: &[&[u64]]) -> Result<Self> {
        Self::new(dim, raw.iter().map(|c| ExponentVector::new(c.to_vec())))
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, gens: Vec::new() }
    }

    pub fn unit(dim: usize) -> Self {
        Self {
            dim,
            gens: vec![ExponentVector::zeros(dim)],
        }
    }

    /// The homogeneous maximal ideal `m = (x_1, ..., x_n)`.
    pub fn maximal(dim: usize) -> Self {
        Self::pure_powers(&vec![1; dim])
    }

    /// `(x_1^d_1, ..., x_n^d_n)`; a zero entry yields the unit ideal.
    pub fn pure_powers(degrees: &[u64]) -> Self {
        let dim = degrees.len();
        let gens = degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| ExponentVector::basis(dim, i, d));
        Self {
            dim,
            gens: minimal_elements(gens.collect()),
        }
    }

    /// `m^d`, generated by all monomials of total degree `d`.
    pub fn maximal_power(dim: usize, d: u64) -> Self {
        let mut gens = Vec::new();
        let mut current = vec![0u64; dim];
        compositions(dim, d, 0, &mut current, &mut gens);
        Self {
            dim,
            gens: minimal_elements(gens),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[ExponentVector] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_zero()
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn contains_monomial(&self, u: &ExponentVector) -> Result<bool> {
        if u.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: u.dim(),
            });
        }
        Ok(self.gens.iter().any(|g| g.divides(u)))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.check_dim(other)?;
        Ok(other.gens.iter().all(|h| self.gens.iter().any(|g| g.divides(h))))
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let sums = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.add(b)));
        Ok(Self {
            dim: self.dim,
            gens: minimal_elements(sums.collect()),
        })
    }

    pub fn power(&self, m: u64) -> Self {
        let mut acc = Self::unit(self.dim);
        for _ in 0..m {
            acc = acc.multiply(self).expect("same dimension");
        }
        acc
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            dim: self.dim,
            gens: minimal_elements(self.gens.iter().chain(&other.gens).cloned().collect()),
        })
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let lcms = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.lcm(b)));
        Ok(Self {
            dim: self.dim,
            gens: minimal_elements(lcms.collect()),
        })
    }

    /// `(self : x^g)`.
    pub fn colon_monomial(&self, g: &ExponentVector) -> Result<Self> {
        if g.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: g.dim(),
            });
        }
        Ok(Self {
            dim: self.dim,
            gens: minimal_elements(self.gens.iter().map(|h| h.saturating_sub(g)).collect()),
        })
    }

    /// `(self : other)`, the intersection of `(self : x^g)` over generators `g` of `other`.
    pub fn colon(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        if other.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let mut acc = Self::unit(self.dim);
        for g in &other.gens {
            acc = acc.intersect(&self.colon_monomial(g)?)?;
        }
        Ok(acc)
    }

    /// `J^[q]`: every generator raised to the `q`-th power.
    pub fn frobenius_power(&self, q: u64) -> Result<Self> {
        if q < 1 {
            return Err(Error::InvalidParameter(format!("Frobenius exponent must be >= 1, got {q}")));
        }
        let gens = self
            .gens
            .iter()
            .map(|g| g.checked_scale(q))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            dim: self.dim,
            gens: minimal_elements(gens),
        })
    }

    /// Exponent `a` of the pure power `x_i^a` among the generators, if any.
    pub fn pure_power_exponents(&self) -> Vec<Option<u64>> {
        let mut out = vec![None; self.dim];
        for g in &self.gens {
            if let Some((i, a)) = g.as_pure_power() {
                out[i] = Some(a);
            }
        }
        out
    }

    pub fn is_m_primary(&self) -> bool {
        !self.is_zero() && !self.is_unit() && self.pure_power_exponents().iter().all(Option::is_some)
    }

    /// Unit ideal or m-primary: `R/I` has finite length.
    pub fn has_finite_colength(&self) -> bool {
        self.is_unit() || self.is_m_primary()
    }

    /// Largest coordinate of any generator in each direction.
    pub fn max_coords(&self) -> Vec<u64> {
        let mut out = vec![0; self.dim];
        for g in &self.gens {
            for (o, &a) in out.iter_mut().zip(g.coords()) {
                *o = (*o).max(a);
            }
        }
        out
    }

    pub fn max_degree(&self) -> u64 {
        self.gens.iter().map(ExponentVector::degree).max().unwrap_or(0)
    }

    /// `ord_m(I)`, the least total degree of a generator.
    pub fn order(&self) -> Option<u64> {
        self.gens.iter().map(ExponentVector::degree).min()
    }

    /// True when every generator has the same total degree.
    pub fn equigenerated_degree(&self) -> Option<u64> {
        let d = self.order()?;
        self.gens.iter().all(|g| g.degree() == d).then_some(d)
    }

    /// `dim_k R/I`, counted as the monomials outside `I`.
    pub fn length_quotient(&self) -> Result<u64> {
        if self.is_unit() {
            return Ok(0);
        }
        if !self.is_m_primary() {
            return Err(Error::NotPrimary);
        }
        let bounds: Vec<u64> = self
            .pure_power_exponents()
            .into_iter()
            .map(|a| a.expect("m-primary"))
            .collect();
        let mut count = 0u64;
        for_each_in_box(&bounds, |u| {
            if !self.gens.iter().any(|g| g.coords().iter().zip(u).all(|(a, b)| a <= b)) {
                count += 1;
            }
        });
        Ok(count)
    }

    /// Height of the ideal: the fewest variables meeting every generator's support.
    pub fn codimension(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let supports: Vec<u64> = self
            .gens
            .iter()
            .map(|g| g.support().fold(0u64, |mask, i| mask | (1 << i)))
            .collect();
        let mut best = self.dim;
        for subset in 0u64..(1u64 << self.dim) {
            let size = subset.count_ones() as usize;
            if size < best && supports.iter().all(|s| s & subset != 0) {
                best = size;
            }
        }
        Ok(best)
    }

    /// Image in `k[x_1, .., x_{k-1}, x_{k+1}, .., x_n]` after setting `x_k = 0` (0-based `k`).
    pub fn restrict_coordinate(&self, k: usize) -> Result<Self> {
        if k >= self.dim {
            return Err(Error::InvalidParameter(format!(
                "coordinate {k} out of range for dimension {}",
                self.dim
            )));
        }
        let gens = self
            .gens
            .iter()
            .filter(|g| g[k] == 0)
            .map(|g| {
                let mut c = g.coords().to_vec();
                c.remove(k);
                ExponentVector::new(c)
            })
            .collect();
        Ok(Self {
            dim: self.dim - 1,
            gens: minimal_elements(gens),
        })
    }

    /// Relabels variables: `x_i` becomes `x_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: perm.len(),
            });
        }
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut c = vec![0; self.dim];
                for (i, &a) in g.coords().iter().enumerate() {
                    c[perm[i]] = a;
                }
                ExponentVector::new(c)
            })
            .collect();
        Ok(Self {
            dim: self.dim,
            gens: minimal_elements(gens),
        })
    }

    pub fn gen_set(&self) -> HashSet<&ExponentVector> {
        self.gens.iter().collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", g.coords())?;
        }
        write!(f, ")")
    }
}

fn compositions(dim: usize, remaining: u64, pos: usize, current: &mut Vec<u64>, out: &mut Vec<ExponentVector>) {
    if dim == 0 {
        if remaining == 0 {
            out.push(ExponentVector::new(Vec::new()));
        }
        return;
    }
    if pos == dim - 1 {
        current[pos] = remaining;
        out.push(ExponentVector::new(current.clone()));
        return;
    }
    for a in 0..=remaining {
        current[pos] = a;
        compositions(dim, remaining - a, pos + 1, current, out);
    }
}

/// Calls `f` on every lattice point of `[0, bounds_0) x ... x [0, bounds_{n-1})`,
/// last coordinate fastest.
pub(crate) fn for_each_in_box(bounds: &[u64], mut f: impl FnMut(&[u64])) {
    if bounds.contains(&0) {
        return;
    }
    let mut u = vec![0u64; bounds.len()];
    loop {
        f(&u);
        let mut i = bounds.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            u[i] += 1;
            if u[i] < bounds[i] {
                break;
            }
            u[i] = 0;
        }
    }
}

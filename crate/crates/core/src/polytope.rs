//! Newton polyhedra `conv(gens) + R^n_{>=0}` of monomial ideals.
//!
//! Only the generators are stored. Every query is an exact LP over the convex
//! weights of the generators.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lp::{self, Constraint, Outcome, Relation};
use crate::monomials::{ExponentVector, MonomialIdeal};
use crate::rational::{from_u64, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolytope {
    dim: usize,
    gens: Vec<ExponentVector>,
}

impl NewtonPolytope {
    pub fn of(ideal: &MonomialIdeal) -> Self {
        Self {
            dim: ideal.dim(),
            gens: ideal.gens().to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[ExponentVector] {
        &self.gens
    }

    /// Rows `sum_i lambda_i g_ij  (<=) rhs_j` and `sum_i lambda_i = 1`, with
    /// `extra` trailing columns left for the caller.
    fn convex_rows(&self, rhs: &[Rational], extra: &[Vec<Rational>]) -> Vec<Constraint> {
        let k = self.gens.len();
        let mut rows = Vec::with_capacity(self.dim + 1);
        for j in 0..self.dim {
            let mut coeffs: Vec<Rational> = self.gens.iter().map(|g| from_u64(g[j])).collect();
            coeffs.extend(extra.get(j).cloned().unwrap_or_default());
            rows.push(Constraint {
                coeffs,
                relation: Relation::Le,
                rhs: rhs[j].clone(),
            });
        }
        let width = k + extra.first().map_or(0, Vec::len);
        let mut ones = vec![Rational::zero(); width];
        for c in ones[..k].iter_mut() {
            *c = Rational::one();
        }
        rows.push(Constraint {
            coeffs: ones,
            relation: Relation::Eq,
            rhs: Rational::one(),
        });
        rows
    }

    /// Whether `p` lies in the polyhedron.
    pub fn member(&self, p: &[Rational]) -> Result<bool> {
        if p.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: p.len(),
            });
        }
        if p.iter().any(Signed::is_negative) {
            return Err(Error::InvalidParameter("point has a negative coordinate".into()));
        }
        if self.gens.is_empty() {
            return Ok(false);
        }
        let dominated = self
            .gens
            .iter()
            .any(|g| g.coords().iter().zip(p).all(|(&a, b)| from_u64(a) <= *b));
        if dominated {
            return Ok(true);
        }
        Ok(lp::feasible(self.gens.len(), &self.convex_rows(p, &[])))
    }

    /// Membership of a lattice point.
    pub fn contains_lattice_point(&self, u: &[u64]) -> Result<bool> {
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: u.len(),
            });
        }
        if self.gens.iter().any(|g| g.coords().iter().zip(u).all(|(a, b)| a <= b)) {
            return Ok(true);
        }
        let p: Vec<Rational> = u.iter().map(|&a| from_u64(a)).collect();
        self.member(&p)
    }

    /// Least `t` with `(t, ..., t)` in the polyhedron.
    pub fn mu(&self) -> Result<Rational> {
        if self.gens.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        let k = self.gens.len();
        let zeros = vec![Rational::zero(); self.dim];
        let t_column: Vec<Vec<Rational>> = (0..self.dim).map(|_| vec![-Rational::one()]).collect();
        let rows = self.convex_rows(&zeros, &t_column);
        let mut cost = vec![Rational::zero(); k + 1];
        cost[k] = Rational::one();
        match lp::minimize(&cost, &rows) {
            Outcome::Optimal { value, .. } => Ok(value),
            other => Err(Error::Postcondition(format!("diagonal LP returned {other:?}"))),
        }
    }
}

/// `mu` of the Newton polyhedron of `ideal`.
pub fn mu(ideal: &MonomialIdeal) -> Result<Rational> {
    NewtonPolytope::of(ideal).mu()
}

/// Integral closure: the ideal of lattice points of the Newton polyhedron.
///
/// A minimal lattice point `u` has `u_j <= max_g g_j` in every coordinate: if
/// `u_j` were larger, lowering it to that maximum keeps the point above the
/// same convex combination. So searching that box is enough.
pub fn integral_closure(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.is_unit() || ideal.gens().len() == 1 {
        return Ok(ideal.clone());
    }
    let poly = NewtonPolytope::of(ideal);
    let bounds = ideal.max_coords();
    let mut points: Vec<Vec<u64>> = Vec::new();
    let box_bounds: Vec<u64> = bounds.iter().map(|b| b + 1).collect();
    crate::monomials::for_each_in_box(&box_bounds, |u| points.push(u.to_vec()));
    points.sort_by_key(|u| u.iter().sum::<u64>());

    let mut found: Vec<ExponentVector> = Vec::new();
    for u in points {
        if found.iter().any(|f| f.coords().iter().zip(&u).all(|(a, b)| a <= b)) {
            continue;
        }
        if poly.contains_lattice_point(&u)? {
            found.push(ExponentVector::new(u));
        }
    }
    MonomialIdeal::new(ideal.dim(), found)
}

/// Whether the polyhedron equals `{x >= 0 : sum_j x_j / a_j >= 1}`.
pub fn simplex_region_equals(ideal: &MonomialIdeal, a: &[Rational]) -> Result<bool> {
    if a.len() != ideal.dim() {
        return Err(Error::DimensionMismatch {
            expected: ideal.dim(),
            found: a.len(),
        });
    }
    if a.iter().any(|v| !v.is_positive()) {
        return Err(Error::InvalidParameter("simplex intercepts must be positive".into()));
    }
    if !ideal.is_m_primary() {
        return Err(Error::NotPrimary);
    }
    let above = ideal.gens().iter().all(|g| {
        let s: Rational = g.coords().iter().zip(a).map(|(&x, aj)| from_u64(x) / aj).sum();
        s >= Rational::one()
    });
    if !above {
        return Ok(false);
    }
    let poly = NewtonPolytope::of(ideal);
    for (j, aj) in a.iter().enumerate() {
        let mut vertex = vec![Rational::zero(); ideal.dim()];
        vertex[j] = aj.clone();
        if !poly.member(&vertex)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `floor` of a nonnegative rational as `u64`, saturating.
pub(crate) fn floor_u64(r: &Rational) -> u64 {
    let f: BigInt = r.floor().to_integer();
    u64::try_from(f).unwrap_or(u64::MAX)
}

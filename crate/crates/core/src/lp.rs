//! Dense two-phase simplex over exact rationals.
//!
//! Small problems only: Bland's rule picks pivots, so the solver never cycles
//! but makes no attempt to be fast. The tableau is first run over `i128`
//! fractions with checked arithmetic and redone with `BigRational` only if some
//! entry overflows.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Relation {
    Le,
    Eq,
    #[cfg_attr(not(test), allow(dead_code))]
    Ge,
}

#[derive(Clone, Debug)]
pub(crate) struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Outcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, point: Vec<Rational> },
}

/// Exact ordered field; `None` from an operation means overflow.
trait Field: Clone + PartialOrd + Zero + One + Signed {
    fn add_(&self, o: &Self) -> Option<Self>;
    fn sub_(&self, o: &Self) -> Option<Self>;
    fn mul_(&self, o: &Self) -> Option<Self>;
    fn div_(&self, o: &Self) -> Option<Self>;
    fn lift(r: &Rational) -> Option<Self>;
    fn lower(&self) -> Rational;
}

impl Field for Rational {
    fn add_(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub_(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul_(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div_(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn lift(r: &Rational) -> Option<Self> {
        Some(r.clone())
    }
    fn lower(&self) -> Rational {
        self.clone()
    }
}

type Small = Ratio<i128>;

impl Field for Small {
    fn add_(&self, o: &Self) -> Option<Self> {
        self.checked_add(o)
    }
    fn sub_(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn mul_(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn div_(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
    fn lift(r: &Rational) -> Option<Self> {
        // keep well away from i128::MIN so negation cannot overflow
        let bound = i128::MAX / 2;
        let n = r.numer().to_i128().filter(|n| n.abs() < bound)?;
        let d = r.denom().to_i128().filter(|d| d.abs() < bound)?;
        Some(Small::new(n, d))
    }
    fn lower(&self) -> Rational {
        Rational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

/// Minimizes `cost . x` subject to `constraints` and `x >= 0`.
pub(crate) fn minimize(cost: &[Rational], constraints: &[Constraint]) -> Outcome {
    solve::<Small>(cost, constraints).unwrap_or_else(|| solve::<Rational>(cost, constraints).expect("bigint arithmetic cannot overflow"))
}

/// True iff the constraints have a nonnegative solution.
pub(crate) fn feasible(num_vars: usize, constraints: &[Constraint]) -> bool {
    let zero = vec![Rational::zero(); num_vars];
    !matches!(minimize(&zero, constraints), Outcome::Infeasible)
}

fn lift_all<F: Field>(values: &[Rational]) -> Option<Vec<F>> {
    values.iter().map(F::lift).collect()
}

fn solve<F: Field>(cost: &[Rational], constraints: &[Constraint]) -> Option<Outcome> {
    let n = cost.len();
    let slack_count = constraints.iter().filter(|c| c.relation != Relation::Eq).count();
    let art_start = n + slack_count;

    // Rows whose slack enters with +1 after fixing the sign of the rhs start
    // with the slack basic; the rest get an artificial column.
    let mut rows: Vec<Vec<F>> = Vec::with_capacity(constraints.len());
    let mut basis: Vec<Option<usize>> = Vec::with_capacity(constraints.len());
    let mut slack = n;
    for c in constraints {
        debug_assert_eq!(c.coeffs.len(), n);
        let mut row = lift_all::<F>(&c.coeffs)?;
        row.resize(art_start + 1, F::zero());
        let slack_col = match c.relation {
            Relation::Le => Some((slack, F::one())),
            Relation::Ge => Some((slack, -F::one())),
            Relation::Eq => None,
        };
        if let Some((col, sign)) = &slack_col {
            row[*col] = sign.clone();
            slack += 1;
        }
        row[art_start] = F::lift(&c.rhs)?;
        if row[art_start].is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        basis.push(slack_col.map(|(col, _)| col).filter(|&col| row[col].is_positive()));
        rows.push(row);
    }
    let art_count = basis.iter().filter(|b| b.is_none()).count();
    let width = art_start + art_count;
    let mut next_art = art_start;
    let basis: Vec<usize> = rows
        .iter_mut()
        .zip(basis)
        .map(|(row, b)| {
            let rhs = row.pop().expect("row has a rhs");
            row.resize(width, F::zero());
            row.push(rhs);
            b.unwrap_or_else(|| {
                row[next_art] = F::one();
                next_art += 1;
                next_art - 1
            })
        })
        .collect();
    let mut t = Tableau { rows, basis, width };

    if art_count > 0 {
        let mut phase_one = vec![F::zero(); width];
        for c in phase_one[art_start..].iter_mut() {
            *c = F::one();
        }
        let all: Vec<bool> = vec![true; width];
        t.optimize(&phase_one, &all)?;
        if !t.objective(&phase_one)?.is_zero() {
            return Some(Outcome::Infeasible);
        }
        t.evict_artificials(art_start)?;
    }

    let mut phase_two = lift_all::<F>(cost)?;
    phase_two.resize(width, F::zero());
    let allowed: Vec<bool> = (0..width).map(|j| j < art_start).collect();
    if !t.optimize(&phase_two, &allowed)? {
        return Some(Outcome::Unbounded);
    }
    let mut point = vec![Rational::zero(); n];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < n {
            point[b] = t.rows[r][width].lower();
        }
    }
    Some(Outcome::Optimal {
        value: t.objective(&phase_two)?.lower(),
        point,
    })
}

struct Tableau<F> {
    rows: Vec<Vec<F>>,
    basis: Vec<usize>,
    width: usize,
}

impl<F: Field> Tableau<F> {
    fn objective(&self, cost: &[F]) -> Option<F> {
        let mut total = F::zero();
        for (&b, row) in self.basis.iter().zip(&self.rows) {
            if !cost[b].is_zero() {
                total = total.add_(&cost[b].mul_(&row[self.width])?)?;
            }
        }
        Some(total)
    }

    fn reduced_cost(&self, cost: &[F], j: usize) -> Option<F> {
        let mut z = cost[j].clone();
        for (&b, row) in self.basis.iter().zip(&self.rows) {
            if !row[j].is_zero() && !cost[b].is_zero() {
                z = z.sub_(&cost[b].mul_(&row[j])?)?;
            }
        }
        Some(z)
    }

    /// Runs simplex iterations; `Some(false)` when the objective is unbounded.
    fn optimize(&mut self, cost: &[F], allowed: &[bool]) -> Option<bool> {
        loop {
            let mut entering = None;
            for (j, &ok) in allowed.iter().enumerate().take(self.width) {
                if ok && !self.basis.contains(&j) && self.reduced_cost(cost, j)?.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(col) = entering else {
                return Some(true);
            };
            let mut best: Option<(F, usize, usize)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if row[col].is_positive() {
                    let ratio = row[self.width].div_(&row[col])?;
                    let better = match &best {
                        None => true,
                        Some((q, _, b)) => ratio < *q || (ratio == *q && self.basis[r] < *b),
                    };
                    if better {
                        best = Some((ratio, r, self.basis[r]));
                    }
                }
            }
            let Some((_, row, _)) = best else {
                return Some(false);
            };
            self.pivot(row, col)?;
        }
    }

    fn pivot(&mut self, r: usize, c: usize) -> Option<()> {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v = v.div_(&p)?;
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.sub_(&f.mul_(pv)?)?;
                }
            }
        }
        self.basis[r] = c;
        Some(())
    }

    /// After a successful phase one, pivots artificial columns out of the basis
    /// and drops rows that turn out to be redundant.
    fn evict_artificials(&mut self, art_start: usize) -> Option<()> {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= art_start {
                match (0..art_start).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(j) => self.pivot(r, j)?,
                    None => {
                        self.rows.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        Some(())
    }
}

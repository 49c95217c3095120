//! Hilbert-Samuel and mixed multiplicities from exact lattice-point counts.
//!
//! For an m-primary monomial ideal `I` the colength `L(r, s) = l(R / I^r m^s)`
//! is a polynomial in `(r, s)` once both are large enough, and
//! `e_j(I) = Δ_r^j Δ_s^{n-j} L`. Counting uses two tables over a box of
//! exponents: `ord_I(u)`, the largest `r` with `x^u ∈ I^r`, and
//! `φ_r(u) = min{|v| : v <= u, ord_I(v) >= r}`. Then `x^u ∈ I^r m^s` exactly
//! when `|u| - φ_r(u) >= s`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::monomials::MonomialIdeal;

/// Grid placement and resource limits for the length oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridConfig {
    /// First power of `I`; at least 1.
    pub r0: u64,
    /// First power of `m`; `None` means the largest generator degree.
    pub s0: Option<u64>,
    /// How many times the grid may be pushed outward before giving up.
    pub attempts: u32,
    /// Largest box of exponents the oracle may allocate.
    pub max_states: usize,
    /// Worker threads for the per-`r` tables.
    pub jobs: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            r0: 1,
            s0: None,
            attempts: 4,
            max_states: 30_000_000,
            jobs: 1,
        }
    }
}

/// `(e_0, ..., e_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedMultiplicities(pub Vec<u64>);

impl MixedMultiplicities {
    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn get(&self, j: usize) -> u64 {
        self.0[j]
    }

    /// `e_n(I) = e(I)`.
    pub fn top(&self) -> u64 {
        *self.0.last().expect("nonempty")
    }
}

/// Colength table `L(r, s)` for `r` in `r_lo..=r_hi`, `s` in `s_lo..=s_hi`.
struct LengthGrid {
    r_lo: u64,
    s_lo: u64,
    values: Vec<Vec<i128>>,
}

impl LengthGrid {
    fn at(&self, r: u64, s: u64) -> i128 {
        self.values[(r - self.r_lo) as usize][(s - self.s_lo) as usize]
    }

    /// `Δ_r^a Δ_s^b L` at `(r, s)`.
    fn difference(&self, r: u64, s: u64, a: u64, b: u64) -> i128 {
        let mut total = 0i128;
        for i in 0..=a {
            for k in 0..=b {
                let sign = if (a - i + b - k).is_multiple_of(2) { 1 } else { -1 };
                total += sign * binomial(a, i) * binomial(b, k) * self.at(r + i, s + k);
            }
        }
        total
    }
}

fn binomial(n: u64, k: u64) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

struct BoxShape {
    bounds: Vec<u64>,
    strides: Vec<usize>,
    size: usize,
}

impl BoxShape {
    fn new(bounds: Vec<u64>, max_states: usize) -> Result<Self> {
        let size = bounds
            .iter()
            .try_fold(1usize, |acc, &b| acc.checked_mul(usize::try_from(b).ok()?))
            .filter(|&s| s <= max_states)
            .ok_or(Error::BudgetExceeded {
                budget: max_states,
                lower_bound: None,
            })?;
        let n = bounds.len();
        let mut strides = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * bounds[i + 1] as usize;
        }
        Ok(Self { bounds, strides, size })
    }

    fn decode(&self, mut flat: usize, out: &mut [u64]) {
        for (o, s) in out.iter_mut().zip(&self.strides) {
            *o = (flat / s) as u64;
            flat %= s;
        }
    }
}

/// `min(ord_I(u), cap)` over the box, in flat order.
fn order_table(ideal: &MonomialIdeal, shape: &BoxShape, cap: u64) -> Vec<u16> {
    let n = shape.bounds.len();
    let cap = cap.min(u64::from(u16::MAX - 1)) as u16;
    let offsets: Vec<(Vec<u64>, usize)> = ideal
        .gens()
        .iter()
        .map(|g| {
            let flat = g.coords().iter().zip(&shape.strides).map(|(&a, s)| a as usize * s).sum();
            (g.coords().to_vec(), flat)
        })
        .collect();
    let mut ord = vec![0u16; shape.size];
    let mut u = vec![0u64; n];
    for flat in 0..shape.size {
        shape.decode(flat, &mut u);
        let mut best = 0u16;
        for (g, off) in &offsets {
            if g.iter().zip(&u).all(|(a, b)| a <= b) {
                best = best.max(ord[flat - off] + 1);
                if best >= cap {
                    best = cap;
                    break;
                }
            }
        }
        ord[flat] = best;
    }
    ord
}

/// Histogram of `|u| - φ_r(u)` capped at `cap`, plus the number of points with
/// `φ_r = ∞` (those outside `I^r`).
fn excess_histogram(ord: &[u16], shape: &BoxShape, r: u64, cap: u64) -> (u64, Vec<u64>) {
    const NONE: u32 = u32::MAX;
    let n = shape.bounds.len();
    let mut phi = vec![NONE; shape.size];
    let mut hist = vec![0u64; cap as usize + 1];
    let mut outside = 0u64;
    let mut u = vec![0u64; n];
    for flat in 0..shape.size {
        shape.decode(flat, &mut u);
        let degree: u64 = u.iter().sum();
        let below = (0..n)
            .filter(|&i| u[i] > 0)
            .map(|i| phi[flat - shape.strides[i]])
            .min()
            .unwrap_or(NONE);
        let value = if u64::from(ord[flat]) >= r {
            below.min(degree as u32)
        } else {
            below
        };
        phi[flat] = value;
        if value == NONE {
            outside += 1;
        } else {
            let excess = (degree - u64::from(value)).min(cap);
            hist[excess as usize] += 1;
        }
    }
    (outside, hist)
}

fn length_grid(ideal: &MonomialIdeal, r_lo: u64, r_hi: u64, s_lo: u64, s_hi: u64, config: &GridConfig) -> Result<LengthGrid> {
    let pure: Vec<u64> = ideal
        .pure_power_exponents()
        .into_iter()
        .map(|a| a.ok_or(Error::NotPrimary))
        .collect::<Result<_>>()?;
    // x_i^{r p_i + s} ∈ I^r m^s, so the complement fits in this box.
    let bounds = pure
        .iter()
        .map(|p| p.checked_mul(r_hi).and_then(|v| v.checked_add(s_hi)).ok_or(Error::Overflow))
        .collect::<Result<Vec<_>>>()?;
    let shape = BoxShape::new(bounds, config.max_states)?;
    let ord = order_table(ideal, &shape, r_hi);

    let row = |r: u64| -> Vec<i128> {
        let (outside, hist) = excess_histogram(&ord, &shape, r, s_hi);
        let mut below = 0u64;
        let mut out = Vec::new();
        for s in 0..=s_hi {
            if s >= s_lo {
                out.push(i128::from(outside + below));
            }
            below += hist[s as usize];
        }
        out
    };
    let rs: Vec<u64> = (r_lo..=r_hi).collect();
    let values = if config.jobs > 1 {
        let chunk = rs.len().div_ceil(config.jobs);
        std::thread::scope(|scope| {
            let handles: Vec<_> = rs
                .chunks(chunk)
                .map(|part| scope.spawn(|| part.iter().map(|&r| row(r)).collect::<Vec<_>>()))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("length worker panicked"))
                .collect()
        })
    } else {
        rs.iter().map(|&r| row(r)).collect()
    };
    Ok(LengthGrid { r_lo, s_lo, values })
}

/// `e_j(I) = e(I^[j], m^[n-j])` for `j = 0..=n`.
pub fn mixed_multiplicities(ideal: &MonomialIdeal) -> Result<MixedMultiplicities> {
    mixed_multiplicities_with(ideal, &GridConfig::default())
}

pub fn mixed_multiplicities_with(ideal: &MonomialIdeal, config: &GridConfig) -> Result<MixedMultiplicities> {
    if !ideal.is_m_primary() {
        return Err(Error::NotPrimary);
    }
    let n = ideal.dim() as u64;
    let mut r0 = config.r0.max(1);
    let mut s0 = config.s0.unwrap_or_else(|| ideal.max_degree());
    for _ in 0..config.attempts.max(1) {
        let grid = length_grid(ideal, r0, r0 + n + 1, s0, s0 + n + 1, config)?;
        let at = |r: u64, s: u64| -> Vec<i128> { (0..=n).map(|j| grid.difference(r, s, j, n - j)).collect() };
        let base = at(r0, s0);
        let stable = [(r0 + 1, s0), (r0, s0 + 1), (r0 + 1, s0 + 1)]
            .iter()
            .all(|&(r, s)| at(r, s) == base);
        if stable {
            return base
                .into_iter()
                .map(|v| u64::try_from(v).map_err(|_| Error::Postcondition(format!("negative mixed multiplicity {v}"))))
                .collect::<Result<Vec<_>>>()
                .map(MixedMultiplicities);
        }
        r0 += 1;
        s0 += ideal.max_degree().max(1);
    }
    Err(Error::NotStabilized(format!(
        "mixed differences still moving at r = {r0}, s = {s0}"
    )))
}

/// `e(I)`, the normalized leading coefficient of `t -> l(R / I^t)`.
pub fn hilbert_samuel(ideal: &MonomialIdeal) -> Result<u64> {
    hilbert_samuel_with(ideal, &GridConfig::default())
}

pub fn hilbert_samuel_with(ideal: &MonomialIdeal, config: &GridConfig) -> Result<u64> {
    if !ideal.is_m_primary() {
        return Err(Error::NotPrimary);
    }
    let n = ideal.dim() as u64;
    let mut t0 = config.r0;
    for _ in 0..config.attempts.max(1) {
        let t_hi = t0 + n + 1;
        let grid = length_grid(ideal, t0, t_hi, 0, 0, config)?;
        let diff = |t: u64| grid.difference(t, 0, n, 0);
        if diff(t0) == diff(t0 + 1) {
            return u64::try_from(diff(t0)).map_err(|_| Error::Postcondition("negative multiplicity".into()));
        }
        t0 += n;
    }
    Err(Error::NotStabilized("Hilbert-Samuel differences did not settle".into()))
}

/// `σ_j(I) = sup_t e_j(I + m^t)`; `None` stands for `∞`.
pub fn sigma(ideal: &MonomialIdeal, j: usize) -> Result<Option<u64>> {
    sigma_with(ideal, j, &GridConfig::default())
}

pub fn sigma_with(ideal: &MonomialIdeal, j: usize, config: &GridConfig) -> Result<Option<u64>> {
    let n = ideal.dim();
    if j < 1 || j > n {
        return Err(Error::InvalidParameter(format!("sigma index {j} outside 1..={n}")));
    }
    if ideal.is_zero() {
        return Ok(None);
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    if j > ideal.codimension()? {
        return Ok(None);
    }
    if ideal.is_m_primary() {
        return Ok(Some(mixed_multiplicities_with(ideal, config)?.get(j)));
    }
    let mut t = ideal.max_degree().max(1) + 1;
    let mut previous: Option<u64> = None;
    for _ in 0..8 {
        let truncated = ideal.sum(&MonomialIdeal::maximal_power(n, t))?;
        let value = mixed_multiplicities_with(&truncated, config)?.get(j);
        if previous == Some(value) {
            return Ok(Some(value));
        }
        previous = Some(value);
        t *= 2;
    }
    Err(Error::NotStabilized(format!("e_{j}(I + m^t) still changing at t = {t}")))
}

/// `(σ_1, ..., σ_l)`.
pub fn sigma_vector(ideal: &MonomialIdeal, l: usize, config: &GridConfig) -> Result<Vec<Option<u64>>> {
    if ideal.is_m_primary() {
        let e = mixed_multiplicities_with(ideal, config)?;
        if l > ideal.dim() {
            return Err(Error::InvalidParameter(format!("l = {l} exceeds the dimension")));
        }
        return Ok((1..=l).map(|j| Some(e.get(j))).collect());
    }
    (1..=l).map(|j| sigma_with(ideal, j, config)).collect()
}

/// `e_j^2 <= e_{j-1} e_{j+1}` wherever all three entries are finite.
pub fn minkowski_check(values: &[Option<u64>]) -> bool {
    values.windows(3).all(|w| match (w[0], w[1], w[2]) {
        (Some(a), Some(b), Some(c)) => BigInt::from(b) * b <= BigInt::from(a) * c,
        _ => true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(dim: usize, gens: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(dim, gens).unwrap()
    }

    #[test]
    fn hilbert_samuel_examples() {
        assert_eq!(hilbert_samuel(&MonomialIdeal::maximal(2)).unwrap(), 1);
        assert_eq!(hilbert_samuel(&MonomialIdeal::pure_powers(&[2, 3, 4])).unwrap(), 24);
        assert_eq!(hilbert_samuel(&ideal(2, &[&[3, 0], &[1, 1], &[0, 3]])).unwrap(), 6);
        assert_eq!(hilbert_samuel(&ideal(2, &[&[1, 1]])), Err(Error::NotPrimary));
    }

    #[test]
    fn complete_intersections() {
        let e = mixed_multiplicities(&MonomialIdeal::pure_powers(&[2, 3, 4])).unwrap();
        assert_eq!(e.values(), &[1, 2, 6, 24]);
    }

    #[test]
    fn staircase_example() {
        let i = ideal(2, &[&[6, 0], &[5, 1], &[3, 2], &[2, 3], &[1, 4], &[0, 6]]);
        // twice the area under the staircase hull: shoelace over (0,6),(1,4),(2,3),(3,2),(6,0)
        let hull = [(0i64, 6i64), (1, 4), (2, 3), (3, 2), (6, 0), (0, 0)];
        let twice_area: i64 = hull
            .iter()
            .zip(hull.iter().cycle().skip(1))
            .map(|((x1, y1), (x2, y2))| x1 * y2 - x2 * y1)
            .sum::<i64>()
            .abs();
        assert_eq!(twice_area, 28);
        assert_eq!(mixed_multiplicities(&i).unwrap().values(), &[1, 5, 28]);
    }

    #[test]
    fn pinched() {
        let c = ideal(3, &[&[3, 0, 0], &[1, 1, 0], &[0, 3, 0], &[0, 0, 4]]);
        let e = mixed_multiplicities(&c).unwrap();
        assert_eq!(e.get(2), 6);
        assert_eq!(e.top(), 24);
        assert_eq!(e.get(1), 2);
    }

    #[test]
    fn sigmas() {
        let x = ideal(2, &[&[1, 0]]);
        assert_eq!(sigma(&x, 1).unwrap(), Some(1));
        assert_eq!(sigma(&x, 2).unwrap(), None);
        // ord(x^2, xy) = 2
        assert_eq!(sigma(&ideal(2, &[&[2, 0], &[1, 1]]), 1).unwrap(), Some(2));
        let m2 = MonomialIdeal::maximal_power(2, 2);
        assert_eq!(sigma(&m2, 2).unwrap(), Some(4));
        assert!(sigma(&m2, 3).is_err());
    }

    #[test]
    fn threaded_grid_matches() {
        let i = ideal(3, &[&[3, 0, 0], &[1, 1, 1], &[0, 2, 0], &[0, 0, 3]]);
        let serial = mixed_multiplicities(&i).unwrap();
        let config = GridConfig {
            jobs: 3,
            ..GridConfig::default()
        };
        assert_eq!(mixed_multiplicities_with(&i, &config).unwrap(), serial);
    }

    #[test]
    fn minkowski() {
        assert!(minkowski_check(&[Some(1), Some(5), Some(28)]));
        assert!(minkowski_check(&[Some(1), Some(3), Some(9)]));
        assert!(!minkowski_check(&[Some(1), Some(3), Some(10), Some(25)]));
        assert!(minkowski_check(&[Some(1), Some(1), None]));
    }
}

//! Weight orders that degenerate an aligned complete intersection towards
//! the monomial model `D = closure(x_1^{d_1}, ..., x_r^{d_r})`.
//!
//! Exponents here live in `Z^r`, one coordinate per degree class; a monomial
//! of the polynomial ring is sent there by `ρ`, which adds up the exponents of
//! each block of variables. Classes are indexed from 0 in code, so the first
//! class (the one with `u_1` in the usual notation) is index 0 and the sets
//! `S_i` may only be nonempty for `1 <= i <= r - 2`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::charp::{initial_form, IntegerWeight, SparsePolynomial};
use crate::error::{Error, Result};
use crate::monomials::ExponentVector;
use crate::rational::{from_u64, lcm_of_denominators, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationInput {
    /// Strictly increasing class degrees `d_1 < ... < d_r`.
    pub degrees: Vec<u64>,
    /// `classes[i]` is `S_{i+1}`; the first and last entries must be empty.
    pub classes: Vec<Vec<ExponentVector>>,
}

/// A failed hypothesis of the weight-order construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TooFewClasses(usize),
    DegreesNotIncreasing,
    ClassCountMismatch { degrees: usize, classes: usize },
    OuterClassNonempty(usize),
    WrongLength { class: usize, u: ExponentVector },
    /// `|u| != d_i`.
    WrongDegree { class: usize, u: ExponentVector },
    /// `u_1 = 0` and `ν_d(u) < 1`.
    LowValuationOffFirstBlock { class: usize, u: ExponentVector },
    /// `d_i b_i ∈ S_i`.
    ContainsPurePower { class: usize },
    /// Every `u` has `ν_d(u) >= 1`.
    NoLowValuation,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewClasses(r) => write!(f, "need at least 3 degree classes, got {r}"),
            Violation::DegreesNotIncreasing => write!(f, "degrees must be positive and strictly increasing"),
            Violation::ClassCountMismatch { degrees, classes } => {
                write!(f, "{degrees} degrees but {classes} classes")
            }
            Violation::OuterClassNonempty(i) => write!(f, "class {} must be empty", i + 1),
            Violation::WrongLength { class, u } => {
                write!(f, "vector {:?} in class {} has the wrong length", u.coords(), class + 1)
            }
            Violation::WrongDegree { class, u } => {
                write!(f, "(1) vector {:?} in class {} has the wrong degree", u.coords(), class + 1)
            }
            Violation::LowValuationOffFirstBlock { class, u } => write!(
                f,
                "(2) vector {:?} in class {} has u_1 = 0 and valuation below 1",
                u.coords(),
                class + 1
            ),
            Violation::ContainsPurePower { class } => write!(f, "(3) class {} contains d_i b_i", class + 1),
            Violation::NoLowValuation => write!(f, "(4) no vector has valuation below 1"),
        }
    }
}

impl DegenerationInput {
    pub fn new(degrees: Vec<u64>, classes: Vec<Vec<ExponentVector>>) -> Self {
        Self { degrees, classes }
    }

    pub fn r(&self) -> usize {
        self.degrees.len()
    }

    /// `ν_d(u) = Σ u_i / d_i`.
    pub fn nu(&self, u: &ExponentVector) -> Rational {
        u.coords()
            .iter()
            .zip(&self.degrees)
            .map(|(&a, &d)| Rational::new(BigInt::from(a), BigInt::from(d)))
            .sum()
    }

    /// `d_i b_i`.
    pub fn pure(&self, class: usize) -> ExponentVector {
        ExponentVector::basis(self.r(), class, self.degrees[class])
    }

    /// All failed hypotheses; empty means the input is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let r = self.r();
        let mut out = Vec::new();
        if r < 3 {
            out.push(Violation::TooFewClasses(r));
        }
        if self.degrees.first() == Some(&0) || self.degrees.windows(2).any(|w| w[0] >= w[1]) {
            out.push(Violation::DegreesNotIncreasing);
        }
        if self.classes.len() != r {
            out.push(Violation::ClassCountMismatch {
                degrees: r,
                classes: self.classes.len(),
            });
            return out;
        }
        for i in [0, r.saturating_sub(1)] {
            if self.classes.get(i).is_some_and(|c| !c.is_empty()) {
                out.push(Violation::OuterClassNonempty(i));
            }
        }
        let mut any_low = false;
        for (i, class) in self.classes.iter().enumerate() {
            for u in class {
                if u.dim() != r {
                    out.push(Violation::WrongLength { class: i, u: u.clone() });
                    continue;
                }
                if u.degree() != self.degrees[i] {
                    out.push(Violation::WrongDegree { class: i, u: u.clone() });
                }
                let low = self.nu(u) < Rational::one();
                if u[0] == 0 && low {
                    out.push(Violation::LowValuationOffFirstBlock { class: i, u: u.clone() });
                }
                any_low |= low;
            }
            if class.contains(&self.pure(i)) {
                out.push(Violation::ContainsPurePower { class: i });
            }
        }
        if !any_low {
            out.push(Violation::NoLowValuation);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LayerKind {
    /// `λ_0(u) = t_0 u_1 - ν_d(u)`.
    Zeroth,
    /// `λ_1(u) = t_1 u_1 - Σ_{k>=2} d_r^k u_k`.
    First,
    /// `λ_{k+1}(u) = -t u_1 + u_{i_k}`, refining away class `pivot`.
    Refine { pivot: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub kind: LayerKind,
    pub t: Rational,
    pub coeffs: Vec<Rational>,
    /// `S_i^{(k)}` after this layer, as indices into the input classes.
    pub surviving: Vec<Vec<usize>>,
}

impl Layer {
    pub fn eval(&self, u: &ExponentVector) -> Rational {
        self.coeffs.iter().zip(u.coords()).map(|(c, &a)| c * from_u64(a)).sum()
    }

    /// `Λ_k`: classes with a survivor.
    pub fn active(&self) -> Vec<usize> {
        (0..self.surviving.len()).filter(|&i| !self.surviving[i].is_empty()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationOrder {
    pub weight: IntegerWeight,
    /// The distinguished class, 0-based.
    pub m: usize,
    pub layers: Vec<Layer>,
}

impl DegenerationOrder {
    pub fn t0(&self) -> &Rational {
        &self.layers[0].t
    }
}

fn eval_int(weight: &IntegerWeight, u: &ExponentVector) -> BigInt {
    weight.eval(u.coords())
}

/// Builds `λ` and `m` with, for `u_i^*` ranging over `S_i`:
/// every class `i != m` stays strictly below `λ(d_m b_m)`, the maximum over
/// `S_m` equals `λ(d_m b_m)`, and each maximizer has `u_1 >= 1`, `ν_d < 1`.
pub fn degeneration_order(input: &DegenerationInput) -> Result<DegenerationOrder> {
    let violations = input.validate();
    if !violations.is_empty() {
        let msg: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(Error::InvalidDegeneration(msg.join("; ")));
    }
    let r = input.r();
    let d = &input.degrees;
    let classes = &input.classes;
    let one = Rational::one();

    // λ_0
    let t0 = classes
        .iter()
        .flatten()
        .filter(|u| u[0] >= 1)
        .map(|u| (input.nu(u) - &one) / from_u64(u[0]))
        .min()
        .ok_or_else(|| Error::Postcondition("no vector with u_1 >= 1".into()))?;
    let mut coeffs: Vec<Rational> = d.iter().map(|&di| -Rational::new(BigInt::one(), BigInt::from(di))).collect();
    coeffs[0] += &t0;
    let mut zeroth = Layer {
        kind: LayerKind::Zeroth,
        t: t0,
        coeffs,
        surviving: Vec::new(),
    };
    zeroth.surviving = restrict(input, &zeroth, &all_indices(classes));
    let mut layers = vec![zeroth];

    // λ_1
    let dr = BigInt::from(d[r - 1]);
    let power = |k: usize| -> BigInt { num_traits::pow(dr.clone(), k + 1) };
    let tail = |u: &ExponentVector| -> BigInt { (1..r).map(|k| power(k) * BigInt::from(u[k])).sum() };
    let prev = &layers[0].surviving;
    let t1 = (0..r)
        .flat_map(|i| prev[i].iter().map(move |&idx| (i, idx)))
        .filter(|&(i, idx)| classes[i][idx][0] != 0)
        .map(|(i, idx)| {
            let u = &classes[i][idx];
            let num = tail(u) - BigInt::from(d[i]) * power(i);
            Rational::new(num, BigInt::from(u[0]))
        })
        .min()
        .ok_or_else(|| Error::Postcondition("first layer: no survivor with u_1 != 0".into()))?;
    let mut coeffs: Vec<Rational> = (0..r).map(|k| -Rational::from_integer(power(k))).collect();
    coeffs[0] = t1.clone();
    let mut first = Layer {
        kind: LayerKind::First,
        t: t1,
        coeffs,
        surviving: Vec::new(),
    };
    first.surviving = restrict(input, &first, &layers[0].surviving);
    layers.push(first);

    // λ_{k+1} while |Λ_k| >= 2
    loop {
        let last = layers.last().expect("nonempty");
        let active = last.active();
        if active.len() <= 1 {
            break;
        }
        let pivot = active[0];
        let t = active[1..]
            .iter()
            .flat_map(|&j| last.surviving[j].iter().map(move |&idx| &classes[j][idx]))
            .map(|u| Rational::new(BigInt::from(u[pivot]), BigInt::from(u[0])))
            .max()
            .expect("a later class is active");
        let mut coeffs = vec![Rational::zero(); r];
        coeffs[0] = -t.clone();
        coeffs[pivot] += &one;
        let mut layer = Layer {
            kind: LayerKind::Refine { pivot },
            t,
            coeffs,
            surviving: Vec::new(),
        };
        layer.surviving = restrict(input, &layer, &last.surviving);
        layers.push(layer);
    }

    let active = layers.last().expect("nonempty").active();
    let m = match active.as_slice() {
        [m] => *m,
        other => {
            return Err(Error::Postcondition(format!(
                "final layer leaves {} active classes",
                other.len()
            )))
        }
    };
    verify_layers(input, &layers)?;
    let weight = combine(input, &layers);
    let order = DegenerationOrder { weight, m, layers };
    verify_final(input, &order)?;
    Ok(order)
}

fn all_indices(classes: &[Vec<ExponentVector>]) -> Vec<Vec<usize>> {
    classes.iter().map(|c| (0..c.len()).collect()).collect()
}

/// Keeps the members of `previous` on which the layer ties with `d_i b_i`.
fn restrict(input: &DegenerationInput, layer: &Layer, previous: &[Vec<usize>]) -> Vec<Vec<usize>> {
    previous
        .iter()
        .enumerate()
        .map(|(i, members)| {
            let target = layer.eval(&input.pure(i));
            members
                .iter()
                .copied()
                .filter(|&idx| layer.eval(&input.classes[i][idx]) == target)
                .collect()
        })
        .collect()
}

/// Clears denominators layer by layer and stacks them in base `B`, most
/// significant first, with `B` larger than the spread of everything below.
fn combine(input: &DegenerationInput, layers: &[Layer]) -> IntegerWeight {
    let r = input.r();
    let mut points: Vec<ExponentVector> = input.classes.iter().flatten().cloned().collect();
    points.extend((0..r).map(|i| input.pure(i)));

    let integral: Vec<Vec<BigInt>> = layers
        .iter()
        .map(|l| {
            let scale = lcm_of_denominators(&l.coeffs);
            l.coeffs
                .iter()
                .map(|c| (c * Rational::from_integer(scale.clone())).to_integer())
                .collect()
        })
        .collect();

    let mut acc = IntegerWeight(integral.last().expect("at least two layers").clone());
    for layer in integral.iter().rev().skip(1) {
        let values: Vec<BigInt> = points.iter().map(|u| eval_int(&acc, u)).collect();
        let spread = values.iter().max().expect("nonempty") - values.iter().min().expect("nonempty");
        let base = spread + BigInt::one();
        acc = IntegerWeight(layer.iter().zip(&acc.0).map(|(hi, lo)| hi * &base + lo).collect());
    }
    acc
}

fn fail(layer: &str, what: &str) -> Error {
    Error::Postcondition(format!("{layer}: {what}"))
}

/// Checks the intermediate properties of every layer on the input sets.
fn verify_layers(input: &DegenerationInput, layers: &[Layer]) -> Result<()> {
    let classes = &input.classes;
    let one = Rational::one();
    let zeroth = &layers[0];
    let mut witness = false;
    for (i, class) in classes.iter().enumerate() {
        let target = zeroth.eval(&input.pure(i));
        for u in class {
            let v = zeroth.eval(u);
            if v > target {
                return Err(fail("layer 0", "(B.i) value above d_i b_i"));
            }
            if v == target {
                let nu = input.nu(u);
                if nu > one {
                    return Err(fail("layer 0", "(B.ii) tie with valuation above 1"));
                }
                if u[0] >= 1 && nu >= one {
                    return Err(fail("layer 0", "(B.iii) tie on the first block with valuation 1"));
                }
                witness |= u[0] >= 1;
            }
        }
    }
    if !witness {
        return Err(fail("layer 0", "(B.iv) no tie with u_1 >= 1"));
    }

    let first = &layers[1];
    let mut witness = false;
    for (i, members) in zeroth.surviving.iter().enumerate() {
        let target = first.eval(&input.pure(i));
        for &idx in members {
            let u = &classes[i][idx];
            let v = first.eval(u);
            if u[0] == 0 && v >= target {
                return Err(fail("layer 1", "(C.i) u_1 = 0 not strictly below"));
            }
            if u[0] >= 1 && v > target {
                return Err(fail("layer 1", "(C.ii) value above d_i b_i"));
            }
            witness |= u[0] >= 1 && v == target;
        }
    }
    if !witness {
        return Err(fail("layer 1", "(C.iii) no tie with u_1 >= 1"));
    }

    for k in 2..layers.len() {
        let name = format!("layer {k}");
        let before = &layers[k - 1];
        let layer = &layers[k];
        let LayerKind::Refine { pivot } = layer.kind else {
            return Err(fail(&name, "expected a refining layer"));
        };
        let mut witness = false;
        for (j, members) in before.surviving.iter().enumerate() {
            let target = layer.eval(&input.pure(j));
            for &idx in members {
                let v = layer.eval(&classes[j][idx]);
                if j == pivot && v >= target {
                    return Err(fail(&name, "(D.i) pivot class not strictly below"));
                }
                if j > pivot {
                    if v > target {
                        return Err(fail(&name, "(D.ii) value above d_j b_j"));
                    }
                    witness |= v == target;
                }
            }
        }
        if !witness {
            return Err(fail(&name, "(D.iii) no tie in a later class"));
        }
        if layer.active().len() >= before.active().len() {
            return Err(fail(&name, "active classes did not shrink"));
        }
    }
    Ok(())
}

/// Checks the three defining properties of the final order.
pub fn verify_final(input: &DegenerationInput, order: &DegenerationOrder) -> Result<()> {
    let m = order.m;
    let top = eval_int(&order.weight, &input.pure(m));
    for (i, class) in input.classes.iter().enumerate() {
        if i == m {
            continue;
        }
        if class.iter().any(|u| eval_int(&order.weight, u) >= top) {
            return Err(fail("final order", "(A.i) another class reaches λ(d_m b_m)"));
        }
    }
    let values: Vec<BigInt> = input.classes[m].iter().map(|u| eval_int(&order.weight, u)).collect();
    if values.iter().max() != Some(&top) {
        return Err(fail("final order", "(A.ii) maximum over S_m differs from λ(d_m b_m)"));
    }
    for (u, v) in input.classes[m].iter().zip(&values) {
        if *v == top && (u[0] < 1 || input.nu(u) >= Rational::one()) {
            return Err(fail("final order", "(A.iii) maximizer fails u_1 >= 1, ν_d < 1"));
        }
    }
    Ok(())
}

/// One degree class of generators; its variables are the next `polys.len()`
/// variables of the ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub degree: u64,
    pub polys: Vec<SparsePolynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degeneration {
    pub input: DegenerationInput,
    pub order: DegenerationOrder,
    /// `λ ∘ ρ` on the polynomial ring.
    pub ring_weight: IntegerWeight,
    /// `ini_{λ∘ρ}(f)` for every generator, grouped by block.
    pub initial_forms: Vec<Vec<SparsePolynomial>>,
}

/// Degenerates an aligned complete intersection with generators grouped in
/// degree blocks, and checks that the distinguished block keeps a mixed part
/// supported on low-valuation monomials in the first block of variables.
pub fn degenerate_ideal(blocks: &[Block]) -> Result<Degeneration> {
    let r = blocks.len();
    if r < 3 {
        return Err(Error::InvalidDegeneration(format!("need at least 3 blocks, got {r}")));
    }
    let degrees: Vec<u64> = blocks.iter().map(|b| b.degree).collect();
    if degrees[0] == 0 || degrees.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidDegeneration("block degrees must be strictly increasing".into()));
    }
    let sizes: Vec<usize> = blocks.iter().map(|b| b.polys.len()).collect();
    if sizes.contains(&0) {
        return Err(Error::InvalidDegeneration("every block needs a generator".into()));
    }
    let n: usize = sizes.iter().sum();
    let mut block_of = Vec::with_capacity(n);
    for (i, &a) in sizes.iter().enumerate() {
        block_of.extend(std::iter::repeat_n(i, a));
    }
    let rho = |u: &ExponentVector| -> ExponentVector {
        let mut v = vec![0u64; r];
        for (k, &a) in u.coords().iter().enumerate() {
            v[block_of[k]] += a;
        }
        ExponentVector::new(v)
    };
    let low = |v: &ExponentVector| -> bool {
        let w: Rational = v
            .coords()
            .iter()
            .zip(&degrees)
            .map(|(&a, &d)| Rational::new(BigInt::from(a), BigInt::from(d)))
            .sum();
        w < Rational::one()
    };

    let mut classes = vec![Vec::new(); r];
    for (i, block) in blocks.iter().enumerate() {
        for f in &block.polys {
            if f.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: f.dim(),
                });
            }
            if f.is_zero() {
                return Err(Error::InvalidDegeneration("generators must be nonzero".into()));
            }
            for u in f.support() {
                if u.degree() != block.degree {
                    return Err(Error::InvalidDegeneration(format!(
                        "generator in block {} is not homogeneous of degree {}",
                        i + 1,
                        block.degree
                    )));
                }
                let v = rho(u);
                if i == 0 && v[0] != u.degree() {
                    return Err(Error::InvalidDegeneration(
                        "the first block is not extended from its own variables".into(),
                    ));
                }
                if v[0] == 0 && low(&v) {
                    return Err(Error::InvalidDegeneration(format!(
                        "a term of block {} lies outside D + (x_1)",
                        i + 1
                    )));
                }
                let own = v[i] == u.degree();
                let earlier = v.coords()[..i].iter().any(|&a| a > 0);
                if !own && !earlier {
                    return Err(Error::InvalidDegeneration(format!(
                        "a term of block {} is neither in its own variables nor in earlier blocks",
                        i + 1
                    )));
                }
                if !own && i >= 1 && i + 1 < r && !classes[i].contains(&v) {
                    classes[i].push(v);
                }
            }
        }
    }
    for c in classes.iter_mut() {
        c.sort();
    }
    let input = DegenerationInput::new(degrees.clone(), classes);
    let order = degeneration_order(&input)?;
    let ring_weight = IntegerWeight(block_of.iter().map(|&b| order.weight.0[b].clone()).collect());
    let initial_forms: Vec<Vec<SparsePolynomial>> = blocks
        .iter()
        .map(|b| b.polys.iter().map(|f| initial_form(f, &ring_weight)).collect())
        .collect::<Result<_>>()?;

    // (i)-(ii) on the distinguished block, and untouched middle blocks elsewhere
    let m = order.m;
    let mut mixed_seen = false;
    for (f, h) in blocks[m].polys.iter().zip(&initial_forms[m]) {
        for u in h.support() {
            let v = rho(u);
            if v[m] == u.degree() {
                continue;
            }
            if v[0] < 1 || !low(&v) {
                return Err(fail("initial forms", "(i) mixed term outside (x_1) or of valuation >= 1"));
            }
            mixed_seen = true;
        }
        let own_part: Vec<_> = f.support().filter(|u| rho(u)[m] == u.degree()).collect();
        if own_part.iter().any(|u| !h.support().any(|w| w == *u)) {
            return Err(fail("initial forms", "(i) part in the block's own variables was lost"));
        }
    }
    if !mixed_seen {
        return Err(fail("initial forms", "(ii) every mixed part vanished"));
    }
    for (i, forms) in initial_forms.iter().enumerate().take(r - 1).skip(1) {
        if i == m {
            continue;
        }
        for h in forms {
            if h.support().any(|u| rho(u)[i] != u.degree()) {
                return Err(fail("initial forms", "a block other than m kept a mixed term"));
            }
        }
    }
    Ok(Degeneration {
        input,
        order,
        ring_weight,
        initial_forms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charp::Coefficient;
    use crate::rational::{int, ratio};

    fn ev(c: &[u64]) -> ExponentVector {
        ExponentVector::new(c.to_vec())
    }

    fn worked() -> DegenerationInput {
        DegenerationInput::new(
            vec![2, 3, 4, 5],
            vec![vec![], vec![ev(&[1, 0, 0, 2])], vec![ev(&[0, 2, 0, 2])], vec![]],
        )
    }

    #[test]
    fn worked_example() {
        let input = worked();
        assert!(input.validate().is_empty());
        let order = degeneration_order(&input).unwrap();
        assert_eq!(order.t0(), &ratio(-1, 10));
        let l0 = &order.layers[0];
        assert_eq!(l0.eval(&ev(&[1, 0, 0, 2])), int(-1));
        assert_eq!(l0.eval(&input.pure(1)), int(-1));
        assert_eq!(l0.eval(&ev(&[0, 2, 0, 2])), ratio(-16, 15));
        assert_eq!(order.layers[1].t, int(1175));
        assert_eq!(order.m, 1);
        assert_eq!(order.layers.len(), 2);
        verify_final(&input, &order).unwrap();
    }

    #[test]
    fn violations() {
        let mut bad = worked();
        bad.classes[1].push(ev(&[0, 3, 0, 0]));
        assert!(bad.validate().contains(&Violation::ContainsPurePower { class: 1 }));

        let high = DegenerationInput::new(vec![2, 3, 4, 5], vec![vec![], vec![], vec![ev(&[0, 2, 0, 2])], vec![]]);
        assert_eq!(high.validate(), vec![Violation::NoLowValuation]);
        assert!(matches!(degeneration_order(&high), Err(Error::InvalidDegeneration(_))));

        let off = DegenerationInput::new(vec![2, 3, 4, 5], vec![vec![], vec![ev(&[0, 1, 1, 2])], vec![], vec![]]);
        assert!(off.validate().iter().any(|v| matches!(v, Violation::WrongDegree { .. })));
    }

    #[test]
    fn single_vector_forces_m() {
        let input = DegenerationInput::new(vec![2, 3, 7, 20], vec![vec![], vec![], vec![ev(&[1, 0, 0, 6])], vec![]]);
        assert!(input.validate().is_empty());
        let order = degeneration_order(&input).unwrap();
        assert_eq!(order.m, 2);
        assert_eq!(order.layers.len(), 2);
    }

    #[test]
    fn several_classes() {
        let input = DegenerationInput::new(
            vec![2, 3, 4, 5, 7],
            vec![
                vec![],
                vec![ev(&[1, 0, 0, 0, 2]), ev(&[1, 1, 1, 0, 0])],
                vec![ev(&[1, 0, 0, 0, 3])],
                vec![ev(&[2, 0, 0, 0, 3]), ev(&[0, 1, 2, 0, 2])],
                vec![],
            ],
        );
        assert!(input.validate().is_empty());
        let order = degeneration_order(&input).unwrap();
        assert_eq!(order.m, 1);
        verify_final(&input, &order).unwrap();
    }

    fn poly(p: u64, terms: &[&[u64]]) -> SparsePolynomial {
        SparsePolynomial::from_terms(p, terms[0].len(), terms.iter().map(|t| (ev(t), Coefficient::constant(1, p)))).unwrap()
    }

    #[test]
    fn toy_ideal() {
        let p = 5;
        let blocks = vec![
            Block {
                degree: 2,
                polys: vec![poly(p, &[&[2, 0, 0]])],
            },
            Block {
                degree: 3,
                polys: vec![poly(p, &[&[0, 3, 0], &[1, 1, 1]])],
            },
            Block {
                degree: 7,
                polys: vec![poly(p, &[&[0, 0, 7]])],
            },
        ];
        let out = degenerate_ideal(&blocks).unwrap();
        assert_eq!(out.input.classes[1], vec![ev(&[1, 1, 1])]);
        assert_eq!(out.input.nu(&ev(&[1, 1, 1])), ratio(41, 42));
        assert_eq!(out.order.m, 1);
        assert_eq!(out.initial_forms[1][0], blocks[1].polys[0]);
    }

    #[test]
    fn four_block_ideal() {
        let p = 7;
        let block = |degree, terms: &[&[u64]]| Block {
            degree,
            polys: vec![poly(p, terms)],
        };
        let blocks = vec![
            block(2, &[&[2, 0, 0, 0]]),
            block(3, &[&[0, 3, 0, 0], &[1, 0, 0, 2]]),
            block(4, &[&[0, 0, 4, 0], &[0, 2, 0, 2]]),
            block(5, &[&[0, 0, 0, 5]]),
        ];
        let out = degenerate_ideal(&blocks).unwrap();
        assert_eq!(out.input, worked());
        assert_eq!(out.order.m, 1);
        assert_eq!(out.initial_forms[1][0], blocks[1].polys[0]);
        assert_eq!(out.initial_forms[2][0], poly(p, &[&[0, 0, 4, 0]]));
    }

    #[test]
    fn aligned_but_already_inside_d_is_rejected() {
        let p = 3;
        let blocks = vec![
            Block {
                degree: 1,
                polys: vec![poly(p, &[&[1, 0, 0]])],
            },
            Block {
                degree: 2,
                polys: vec![poly(p, &[&[0, 2, 0]])],
            },
            Block {
                degree: 3,
                polys: vec![poly(p, &[&[0, 0, 3]])],
            },
        ];
        assert!(matches!(degenerate_ideal(&blocks), Err(Error::InvalidDegeneration(_))));
    }
}

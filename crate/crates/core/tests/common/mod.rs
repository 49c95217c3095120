#![allow(dead_code)]

use lctkit::degeneration::DegenerationInput;
use lctkit::{ExponentVector, MonomialIdeal, Rational};
use num_traits::One;
use proptest::prelude::*;
use rand::Rng;

/// Random monomial of total degree at most `max_deg`.
fn clip(mut coords: Vec<u64>, max_deg: u64) -> ExponentVector {
    while coords.iter().sum::<u64>() > max_deg {
        let i = coords.iter().position(|&a| a > 0).expect("positive sum");
        coords[i] -= 1;
    }
    ExponentVector::new(coords)
}

pub fn monomial(n: usize, max_deg: u64) -> impl Strategy<Value = ExponentVector> {
    prop::collection::vec(0..=max_deg, n).prop_map(move |c| clip(c, max_deg))
}

/// m-primary: pure powers of every variable plus a few mixed monomials.
pub fn m_primary(n: usize, max_deg: u64) -> impl Strategy<Value = MonomialIdeal> {
    (
        prop::collection::vec(1..=max_deg, n),
        prop::collection::vec(monomial(n, max_deg), 0..4),
    )
        .prop_map(move |(pure, extra)| {
            let mut gens: Vec<ExponentVector> = (0..n).map(|i| ExponentVector::basis(n, i, pure[i])).collect();
            gens.extend(extra.into_iter().filter(|u| !u.is_zero()));
            MonomialIdeal::new(n, gens).unwrap()
        })
}

/// Nonzero, proper, not necessarily m-primary.
pub fn proper(n: usize, max_deg: u64) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(monomial(n, max_deg), 1..4).prop_filter_map("proper nonzero", move |gens| {
        let gens: Vec<_> = gens.into_iter().filter(|u| !u.is_zero()).collect();
        if gens.is_empty() {
            None
        } else {
            Some(MonomialIdeal::new(n, gens).unwrap())
        }
    })
}

pub fn random_m_primary<R: Rng>(rng: &mut R, n: usize, max_deg: u64) -> MonomialIdeal {
    let mut gens: Vec<ExponentVector> = (0..n).map(|i| ExponentVector::basis(n, i, rng.gen_range(1..=max_deg))).collect();
    for _ in 0..rng.gen_range(0..6) {
        let coords: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=max_deg)).collect();
        let u = clip(coords, max_deg);
        if !u.is_zero() {
            gens.push(u);
        }
    }
    MonomialIdeal::new(n, gens).unwrap()
}

fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for a in 0..=total {
        for mut rest in compositions(total - a, parts - 1) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// Random input satisfying all four degeneration hypotheses.
pub fn random_degeneration_input<R: Rng>(rng: &mut R, max_r: usize, max_size: usize) -> DegenerationInput {
    use rand::seq::SliceRandom;
    loop {
        let r = rng.gen_range(3..=max_r);
        let mut pool: Vec<u64> = (1..=9).collect();
        pool.shuffle(rng);
        let mut degrees: Vec<u64> = pool[..r].to_vec();
        degrees.sort_unstable();
        let shell = DegenerationInput::new(degrees.clone(), vec![Vec::new(); r]);
        let mut classes = vec![Vec::new(); r];
        let size = rng.gen_range(1..=max_size);
        for _ in 0..size {
            let i = rng.gen_range(1..r - 1);
            let pure = shell.pure(i);
            let options: Vec<ExponentVector> = compositions(degrees[i], r)
                .into_iter()
                .map(ExponentVector::new)
                .filter(|u| *u != pure && (u[0] >= 1 || shell.nu(u) >= Rational::one()))
                .filter(|u| !classes[i].contains(u))
                .collect();
            if let Some(u) = options.choose(rng) {
                classes[i].push(u.clone());
            }
        }
        let input = DegenerationInput::new(degrees, classes);
        if input.validate().is_empty() {
            return input;
        }
    }
}

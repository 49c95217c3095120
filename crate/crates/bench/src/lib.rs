//! Fixtures shared by the benchmarks.

use lctkit::charp::{Coefficient, SparsePolynomial};
use lctkit::degeneration::DegenerationInput;
use lctkit::{ExponentVector, MonomialIdeal};

fn ev(c: &[u64]) -> ExponentVector {
    ExponentVector::new(c.to_vec())
}

/// Ideal generated by the given exponent vectors.
pub fn ideal(dim: usize, gens: &[&[u64]]) -> MonomialIdeal {
    MonomialIdeal::new(dim, gens.iter().map(|g| ev(g))).expect("fixture ideal")
}

/// Two-variable staircase with a pinched Newton polygon.
pub fn staircase() -> MonomialIdeal {
    ideal(2, &[&[6, 0], &[5, 1], &[3, 2], &[2, 3], &[1, 4], &[0, 6]])
}

/// Primary ideal in three variables with a few mixed generators.
pub fn three_variable() -> MonomialIdeal {
    ideal(3, &[&[4, 0, 0], &[0, 5, 0], &[0, 0, 6], &[1, 1, 1], &[2, 0, 2], &[0, 3, 1]])
}

/// Pure powers with the given degrees.
pub fn pure(degrees: &[u64]) -> MonomialIdeal {
    MonomialIdeal::pure_powers(degrees)
}

/// The binomial x^a + y^b over F_p.
pub fn binomial(p: u64, a: u64, b: u64) -> SparsePolynomial {
    let one = Coefficient::constant(1, p);
    SparsePolynomial::from_terms(p, 2, [(ev(&[a, 0]), one.clone()), (ev(&[0, b]), one)]).expect("fixture polynomial")
}

/// Degree data with a vector in each middle class.
pub fn degeneration_input() -> DegenerationInput {
    DegenerationInput::new(
        vec![2, 3, 4, 5],
        vec![vec![], vec![ev(&[1, 0, 0, 2])], vec![ev(&[0, 2, 0, 2])], vec![]],
    )
}

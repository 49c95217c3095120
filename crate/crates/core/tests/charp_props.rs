mod common;

use common::{m_primary, monomial};
use lctkit::charp::{initial_form, nu_poly, Coefficient, IntegerWeight, SparsePolynomial, DEFAULT_BFS_BUDGET};
use lctkit::thresholds::{nu_monomial, DEFAULT_STATE_BUDGET};
use lctkit::MonomialIdeal;
use proptest::prelude::*;

const P: u64 = 3;

fn polynomial(n: usize) -> impl Strategy<Value = SparsePolynomial> {
    prop::collection::vec((monomial(n, 4), 0u64..P, 0usize..3), 1..5).prop_map(move |terms| {
        let terms = terms.into_iter().map(|(u, c, k)| (u, Coefficient::t_power(c, k, P)));
        SparsePolynomial::from_terms(P, n, terms).unwrap()
    })
}

fn as_polynomials(ideal: &MonomialIdeal, p: u64) -> Vec<SparsePolynomial> {
    ideal
        .gens()
        .iter()
        .map(|g| SparsePolynomial::monomial(p, g.clone()).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bfs_matches_lattice_dp(
        i in m_primary(2, 4),
        (p, e) in prop::sample::select(vec![(2u64, 1u32), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2)]),
    ) {
        let m = MonomialIdeal::maximal(2);
        let q = p.pow(e);
        let expected = nu_monomial(&i, &m, q, DEFAULT_STATE_BUDGET).unwrap();
        prop_assert_eq!(nu_poly(&as_polynomials(&i, p), &m, p, e, DEFAULT_BFS_BUDGET).unwrap(), expected);
    }

    #[test]
    fn nu_series_is_superadditive(i in m_primary(2, 3), p in prop::sample::select(vec![2u64, 3])) {
        let m = MonomialIdeal::maximal(2);
        let gens = as_polynomials(&i, p);
        let series: Vec<u64> = (1..=3).map(|e| nu_poly(&gens, &m, p, e, DEFAULT_BFS_BUDGET).unwrap()).collect();
        for w in series.windows(2) {
            prop_assert!(w[1] >= p * w[0]);
        }
    }

    #[test]
    fn initial_forms_multiply(f in polynomial(2), g in polynomial(2), w in prop::collection::vec(-3i64..=3, 2)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let weight = IntegerWeight::from_i64(&w);
        let product = f.mul(&g).unwrap();
        let lead = initial_form(&f, &weight).unwrap().mul(&initial_form(&g, &weight).unwrap()).unwrap();
        if !lead.is_zero() {
            prop_assert_eq!(initial_form(&product, &weight).unwrap(), lead);
        }
    }

    #[test]
    fn frobenius_reduction_is_idempotent_and_linear(f in polynomial(2), g in polynomial(2), q in 1u64..=4) {
        let m = MonomialIdeal::maximal(2);
        let rf = f.reduce_mod_frobenius(&m, q).unwrap();
        prop_assert_eq!(rf.reduce_mod_frobenius(&m, q).unwrap(), rf.clone());
        let rg = g.reduce_mod_frobenius(&m, q).unwrap();
        let sum = f.add(&g).unwrap().reduce_mod_frobenius(&m, q).unwrap();
        prop_assert_eq!(sum, rf.add(&rg).unwrap());
    }
}

#[test]
fn twenty_seven_is_reachable() {
    let i = MonomialIdeal::from_exponents(2, &[&[2, 0], &[1, 1], &[0, 3]]).unwrap();
    let m = MonomialIdeal::maximal(2);
    let expected = nu_monomial(&i, &m, 27, DEFAULT_STATE_BUDGET).unwrap();
    assert_eq!(nu_poly(&as_polynomials(&i, 3), &m, 3, 3, DEFAULT_BFS_BUDGET).unwrap(), expected);
}

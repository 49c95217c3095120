mod common;

use common::{m_primary, proper};
use lctkit::dp::{check_bound, dp_invariant, sigma_intercepts, two_degree_check};
use lctkit::multiplicities::sigma;
use lctkit::polytope::{integral_closure, simplex_region_equals};
use lctkit::{ExponentVector, MonomialIdeal, Rational};
use num_traits::Zero;
use proptest::prelude::*;

fn equigenerated(n: usize, d: u64) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(prop::collection::vec(0..=d, n), 1..4).prop_map(move |raw| {
        let gens: Vec<ExponentVector> = raw
            .into_iter()
            .map(|mut c| {
                let mut total: u64 = c.iter().sum();
                while total > d {
                    let i = c.iter().position(|&a| a > 0).unwrap();
                    c[i] -= 1;
                    total -= 1;
                }
                c[n - 1] += d - total;
                ExponentVector::new(c)
            })
            .collect();
        MonomialIdeal::new(n, gens).unwrap()
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn dp_bound_slack(i in m_primary(3, 6)) {
        let report = check_bound(&i, i.dim()).unwrap();
        prop_assert!(report.slack >= Rational::zero(), "{:?}", report);
        if report.equality {
            let intercepts = sigma_intercepts(&report.sigmas);
            let found = permutations(i.dim()).iter().any(|perm| {
                let placed: Vec<Rational> = perm.iter().map(|&k| intercepts[k].clone()).collect();
                simplex_region_equals(&i, &placed).unwrap()
            });
            prop_assert!(found);
        }
    }

    #[test]
    fn dp_grows_with_l(i in m_primary(3, 4)) {
        let mut previous = None;
        for l in 1..=i.dim() {
            let e = dp_invariant(&i, l).unwrap();
            if let Some(p) = previous {
                prop_assert!(e > p);
            }
            previous = Some(e);
        }
    }

    #[test]
    fn closure_shares_sigmas(i in proper(3, 4)) {
        let c = integral_closure(&i).unwrap();
        let codim = i.codimension().unwrap();
        for j in 1..=codim {
            prop_assert_eq!(sigma(&i, j).unwrap(), sigma(&c, j).unwrap());
        }
    }

    #[test]
    fn two_degree_formula(
        (i1, d1, extra) in (1usize..=3, 1u64..=4).prop_flat_map(|(n, d1)| (equigenerated(n, d1), Just(d1), 1u64..=4))
    ) {
        let report = two_degree_check(&i1, d1 + extra).unwrap();
        prop_assert!(report.holds, "{:?}", report);
    }
}

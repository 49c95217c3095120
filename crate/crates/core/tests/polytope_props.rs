mod common;

use common::{m_primary, proper};
use lctkit::multiplicities::hilbert_samuel;
use lctkit::polytope::{integral_closure, mu, NewtonPolytope};
use lctkit::rational::from_u64;
use lctkit::Rational;
use proptest::prelude::*;

fn point(u: &[u64]) -> Vec<Rational> {
    u.iter().map(|&a| from_u64(a)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generators_are_members_and_membership_is_monotone(i in proper(3, 5), bump in prop::collection::vec(0u64..3, 3)) {
        let poly = NewtonPolytope::of(&i);
        for g in i.gens() {
            prop_assert!(poly.member(&point(g.coords())).unwrap());
            let up: Vec<u64> = g.coords().iter().zip(&bump).map(|(a, b)| a + b).collect();
            prop_assert!(poly.member(&point(&up)).unwrap());
        }
    }

    #[test]
    fn mu_scales_with_powers(i in m_primary(2, 5), t in 1u64..=4) {
        prop_assert_eq!(mu(&i.power(t)).unwrap(), mu(&i).unwrap() * from_u64(t));
    }

    #[test]
    fn closure_is_an_idempotent_enlargement(i in m_primary(3, 4), t in 1u64..=2) {
        let c = integral_closure(&i).unwrap();
        prop_assert!(c.contains(&i).unwrap());
        prop_assert_eq!(integral_closure(&c).unwrap(), c.clone());
        let ct = integral_closure(&i.power(t)).unwrap();
        prop_assert!(ct.contains(&c.power(t)).unwrap());
    }

    #[test]
    fn briancon_skoda(i in m_primary(2, 4), t in 0u64..=2) {
        let n = i.dim() as u64;
        let c = integral_closure(&i).unwrap();
        prop_assert!(i.power(t + 1).contains(&c.power(t + n)).unwrap());
    }

    #[test]
    fn closure_keeps_multiplicity(i in m_primary(2, 5)) {
        let c = integral_closure(&i).unwrap();
        prop_assert_eq!(hilbert_samuel(&i).unwrap(), hilbert_samuel(&c).unwrap());
    }
}

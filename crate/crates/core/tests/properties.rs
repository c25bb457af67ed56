use proptest::prelude::*;

use gmlocus::gmaction::{attractor, fixed_points, repeller};
use gmlocus::{Field, GradedAlgebra, Monomial, Polynomial, RingSpec, Scalar};

fn weights_and_exps() -> impl Strategy<Value = (Vec<i64>, Vec<u32>)> {
    (1usize..=5).prop_flat_map(|n| (prop::collection::vec(-3i64..=3, n), prop::collection::vec(0u32..=4, n)))
}

fn space(w: &[i64]) -> GradedAlgebra {
    let names: Vec<String> = (0..w.len()).map(|i| format!("x{i}")).collect();
    let pairs: Vec<(&str, i64)> = names.iter().map(String::as_str).zip(w.iter().copied()).collect();
    GradedAlgebra::affine_space(&RingSpec::with_weights(&pairs, Field::Rational).unwrap())
}

proptest! {
    // J⁻ is generated by the negative-weight variables, yet it has to hold
    // every monomial of negative degree
    #[test]
    fn negative_monomials_lie_in_j_minus((w, e) in weights_and_exps()) {
        let a = space(&w);
        let m = Monomial::new(e);
        let deg = m.weighted_degree(&w);
        let p = Polynomial::monomial(a.ring(), m, Scalar::from(1));
        let member = a.j_minus().contains(&p).unwrap();
        if deg < 0 {
            prop_assert!(member);
        }
        let positive = a.j_plus().contains(&p).unwrap();
        if deg > 0 {
            prop_assert!(positive);
        }
    }

    #[test]
    fn negating_weights_swaps_attractor_and_repeller(w in prop::collection::vec(-3i64..=3, 1..=4)) {
        let a = space(&w);
        let n = a.negate_weights();
        prop_assert!(attractor(&n).ideal().ideal_eq(&repeller(&a).ideal().rehome(n.ring()).unwrap()).unwrap());
        prop_assert!(fixed_points(&n).ideal().ideal_eq(&fixed_points(&a).ideal().rehome(n.ring()).unwrap()).unwrap());
    }
}

mod common;

use common::*;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use verlinde_core::lie::{LieType, RootDatum, TorusPoint, Weight};

const SMALL: [(LieType, usize); 7] = [
    (LieType::A, 1),
    (LieType::A, 2),
    (LieType::A, 3),
    (LieType::B, 2),
    (LieType::C, 3),
    (LieType::D, 4),
    (LieType::G, 2),
];

fn weight_strategy(rank: usize, max: i32) -> impl Strategy<Value = Weight> {
    proptest::collection::vec(0..=max, rank).prop_map(Weight)
}

fn point_strategy(rank: usize) -> impl Strategy<Value = TorusPoint> {
    (7i64..=53).prop_flat_map(move |den| {
        proptest::collection::vec(0..den, rank).prop_map(move |num| TorusPoint::from_pairings(num, den))
    })
}

fn algebra_and(max: i32) -> impl Strategy<Value = (usize, Weight, Weight, TorusPoint)> {
    (0..SMALL.len()).prop_flat_map(move |k| {
        let n = SMALL[k].1;
        (Just(k), weight_strategy(n, max), weight_strategy(n, max), point_strategy(n))
    })
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + b.norm())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weyl_quotient_matches_weight_sum((k, l, _m, p) in algebra_and(3)) {
        let (t, n) = SMALL[k];
        let rd = datum(t, n);
        prop_assume!(p.is_regular(&rd));
        let a = rd.character_value(&l, &p).unwrap().value;
        let b = rd.character_value_by_weights(&l, &p).unwrap().value;
        prop_assert!(close(a, b, 1e-9), "{} {} at {}: {} vs {}", rd.name(), l, p, a, b);
    }

    #[test]
    fn tensor_products_are_symmetric((k, l, m, _p) in algebra_and(2)) {
        let (t, n) = SMALL[k];
        let rd = datum(t, n);
        let lm = rd.tensor_multiplicities(&l, &m).unwrap();
        let ml = rd.tensor_multiplicities(&m, &l).unwrap();
        prop_assert_eq!(&lm, &ml);
        let total: u64 = lm.iter().map(|(e, c)| c * rd.weyl_dimension(e).unwrap()).sum();
        prop_assert_eq!(total, rd.weyl_dimension(&l).unwrap() * rd.weyl_dimension(&m).unwrap());
    }

    #[test]
    fn characters_are_multiplicative((k, l, m, p) in algebra_and(2)) {
        let (t, n) = SMALL[k];
        let rd = datum(t, n);
        // Keep the terms small enough that 1e-8 is above double rounding.
        prop_assume!(rd.weyl_dimension(&l).unwrap() * rd.weyl_dimension(&m).unwrap() <= 20_000);
        let lhs = rd.character_value_by_weights(&l, &p).unwrap().value
            * rd.character_value_by_weights(&m, &p).unwrap().value;
        let rhs: Complex64 = rd
            .tensor_multiplicities(&l, &m)
            .unwrap()
            .iter()
            .map(|(e, c)| rd.character_value_by_weights(e, &p).unwrap().value * *c as f64)
            .sum();
        prop_assert!(close(lhs, rhs, 1e-8), "{} {} {} at {}: {} vs {}", rd.name(), l, m, p, lhs, rhs);
    }

    #[test]
    fn characters_are_weyl_invariant((k, l, _m, p) in algebra_and(3), pick in any::<prop::sample::Index>()) {
        let (t, n) = SMALL[k];
        let rd = datum(t, n);
        let idx = pick.index(rd.weyl_group().order());
        let q = p.transform(&rd, idx);
        let a = rd.character_value_by_weights(&l, &p).unwrap().value;
        let b = rd.character_value_by_weights(&l, &q).unwrap().value;
        prop_assert!(close(a, b, 1e-9));
        prop_assert_eq!(p.is_regular(&rd), q.is_regular(&rd));
    }

    #[test]
    fn multiplicities_are_weyl_invariant((k, l, _m, _p) in algebra_and(3)) {
        let (t, n) = SMALL[k];
        let rd = datum(t, n);
        let mults = rd.weight_multiplicities(&l).unwrap();
        let wg = rd.weyl_group();
        for (mu, m) in &mults {
            for i in 0..n {
                let r = rd.reflect(mu, i);
                prop_assert_eq!(mults.get(&r), Some(m));
            }
            let (dom, _) = rd.to_dominant(mu);
            prop_assert!(dom.is_dominant());
            prop_assert!(rd.orbit(mu).contains(&dom));
        }
        prop_assert_eq!(mults.values().sum::<u64>(), rd.weyl_dimension(&l).unwrap());
        prop_assert_eq!(wg.rank(), n);
    }

    #[test]
    fn dual_is_an_involution((k, l, m, _p) in algebra_and(3)) {
        let (t, n) = SMALL[k];
        let rd = datum(t, n);
        prop_assert_eq!(rd.dual(&rd.dual(&l)), l.clone());
        prop_assert_eq!(rd.weyl_dimension(&rd.dual(&l)).unwrap(), rd.weyl_dimension(&l).unwrap());
        // V(l) (x) V(m) contains the trivial representation iff m is dual to l.
        let has_trivial = rd.tensor_multiplicities(&l, &m).unwrap().get(&Weight::zero(n)).copied();
        prop_assert_eq!(has_trivial, (rd.dual(&l) == m).then_some(1));
    }
}

/// 200 random cases on every supported algebra, through the public entry points.
#[test]
fn two_routes_agree_on_every_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for (t, n) in supported_algebras() {
        let rd = datum(t, n);
        let heavy = rd.weyl_group().order() > 50_000;
        let cases = if heavy { 12 } else { 60 };
        let weights = dominant_up_to(n, if n <= 2 { 4 } else { 2 });
        for k in 0..cases {
            let l = &weights[(k * 7919) % weights.len()];
            let p = random_regular_point(&rd, &mut rng);
            check_pair(&rd, l, &p);
        }
    }
}

fn check_pair(rd: &RootDatum, l: &Weight, p: &TorusPoint) {
    let a = rd.character_value(l, p).unwrap().value;
    let b = rd.character_value_by_weights(l, p).unwrap().value;
    assert!(close(a, b, 1e-9), "{} {} at {}: {} vs {}", rd.name(), l, p, a, b);
}

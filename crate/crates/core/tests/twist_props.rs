mod common;

use common::*;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use verlinde_core::alcove::enumerate_sigma_c;
use verlinde_core::lie::{LieType, Weight};
use verlinde_core::twist::{bijection_formula, build_twist, TwistKind};
use verlinde_core::Error;

#[test]
fn fixed_algebras_follow_the_table() {
    for (t, n, k) in twisted_rows() {
        let tw = twist(t, n, k);
        let f = tw.fixed();
        let expected = match (t, k) {
            (LieType::A, TwistKind::Diagram2) if n % 2 == 1 => (LieType::C, (n + 1) / 2),
            (LieType::A, TwistKind::Standard4) => (LieType::C, n / 2),
            (LieType::A, TwistKind::Diagram2) => (LieType::B, n / 2),
            (LieType::D, TwistKind::Diagram2) => (LieType::B, n - 1),
            (LieType::D, TwistKind::Diagram3) => (LieType::G, 2),
            (LieType::E, TwistKind::Diagram2) => (LieType::F, 4),
            _ => unreachable!(),
        };
        assert_eq!(f.rank(), expected.1, "{t}{n} {k}");
        // Rank one C and B are both sl2.
        if expected.1 > 1 {
            assert_eq!(f.lie_type(), expected.0, "{t}{n} {k}");
        }
        assert_eq!(tw.a0(), if k == TwistKind::Standard4 { 2 } else { 1 });
    }
}

#[test]
fn illegal_pairs_are_rejected() {
    let bad = [
        (LieType::A, 3, TwistKind::Standard4),
        (LieType::D, 5, TwistKind::Diagram3),
        (LieType::B, 3, TwistKind::Diagram2),
        (LieType::C, 3, TwistKind::Diagram2),
        (LieType::G, 2, TwistKind::Diagram3),
        (LieType::F, 4, TwistKind::Diagram2),
        (LieType::A, 1, TwistKind::Diagram2),
    ];
    for (t, n, k) in bad {
        assert!(
            matches!(build_twist(t, n, k), Err(Error::IllegalPair { .. })),
            "{t}{n} {k} should be illegal"
        );
    }
}

/// `nu(theta_sigma^vee)` computed with the ambient form restricted to the
/// fixed Cartan is a positive multiple of `theta_sigma`. The multiple is
/// `kappa / a0`, and rescaling the form by `1/kappa` gives `theta_sigma / a0`.
#[test]
fn theta_check_is_dual_to_theta_sigma() {
    let kappa = |t: LieType, n: usize, k: TwistKind| -> i32 {
        match (t, k) {
            (LieType::A, TwistKind::Standard4) => 8,
            (LieType::A, TwistKind::Diagram2) if n % 2 == 0 => 4,
            (_, TwistKind::Diagram3) => 3,
            _ => 2,
        }
    };
    for (t, n, k) in twisted_rows() {
        let tw = twist(t, n, k);
        let amb = tw.ambient();
        let mut v = Weight::zero(amb.rank());
        for (row, &c) in tw.restriction_matrix().iter().zip(tw.theta_check_coroot_coords()) {
            for (i, &m) in row.iter().enumerate() {
                if m != 0 {
                    v = v.add(&amb.simple_root(i).scale(c * m));
                }
            }
        }
        let lhs = tw.restrict(&v).scale(tw.a0() as i32);
        let rhs = tw.theta_sigma().scale(kappa(t, n, k));
        assert_eq!(lhs, rhs, "{t}{n} {k}");
    }
}

#[test]
fn alphabets_match_brute_force() {
    for (t, n, k) in twisted_rows() {
        let tw = twist(t, n, k);
        let f = tw.fixed();
        for c in 0..=3u32 {
            let got = tw.weight_alphabet(c);
            if tw.is_a2n_diagram() {
                let std4 = tw.companion().unwrap();
                let mut image: Vec<Weight> =
                    std4.weight_alphabet(c).iter().map(|l| bijection_formula(c, l)).collect();
                image.sort();
                assert_eq!(got.members, image, "{t}{n} {k} c={c}");
                continue;
            }
            // <lambda, theta_sigma^vee> <= c, with the coroot of the short
            // highest root, or twice the coroot of the highest root.
            let check: Vec<i32> = if k == TwistKind::Standard4 {
                f.highest_root().coroot_coords.iter().map(|x| 2 * x).collect()
            } else {
                f.highest_short_root().coroot_coords.clone()
            };
            let brute: Vec<Weight> = dominant_up_to(f.rank(), c as i32)
                .into_iter()
                .filter(|l| l.0.iter().zip(&check).map(|(a, b)| a * b).sum::<i32>() <= c as i32)
                .collect();
            let mut brute = brute;
            brute.sort();
            assert_eq!(got.members, brute, "{t}{n} {k} c={c}");
        }
    }
}

#[test]
fn alphabets_are_self_dual() {
    for (t, n, k) in twisted_rows() {
        let tw = twist(t, n, k);
        for c in 0..=3 {
            for l in tw.weight_alphabet(c).iter() {
                assert_eq!(&tw.fixed().dual(l), l, "{t}{n} {k}");
            }
        }
    }
}

#[test]
fn a2n_bijection_round_trips() {
    for n in [2, 4, 6] {
        let std4 = build_twist(LieType::A, n, TwistKind::Standard4).unwrap();
        let diag = build_twist(LieType::A, n, TwistKind::Diagram2).unwrap();
        for c in 1..=3 {
            let target = diag.weight_alphabet(c);
            let source = std4.weight_alphabet(c);
            assert_eq!(source.len(), target.len());
            for l in source.iter() {
                let b = std4.a2n_weight_bijection(c, l).unwrap();
                assert!(target.contains(&b));
                assert_eq!(diag.a2n_weight_bijection(c, l).unwrap(), b);
            }
        }
    }
    // C2 -> B2: at c = 1 only 0 -> (0,1); at c = 2, omega_1 -> (1,2).
    let std4 = build_twist(LieType::A, 4, TwistKind::Standard4).unwrap();
    assert_eq!(std4.weight_alphabet(1).members, vec![w(&[0, 0])]);
    assert_eq!(std4.a2n_weight_bijection(1, &w(&[0, 0])).unwrap(), w(&[0, 1]));
    assert_eq!(std4.a2n_weight_bijection(2, &w(&[1, 0])).unwrap(), w(&[1, 2]));
    assert_eq!(bijection_formula(0, &w(&[0, 1])), w(&[0, 2]));
    assert!(matches!(
        std4.a2n_weight_bijection(1, &w(&[1, 0])),
        Err(Error::NotInAlphabet { .. })
    ));
}

#[test]
fn branching_preserves_dimension_and_characters() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (t, n, k) in small_rows() {
        let tw = twist(t, n, k);
        let (amb, f) = (tw.ambient(), tw.fixed());
        let nus: Vec<Weight> = dominant_up_to(amb.rank(), 2)
            .into_iter()
            .filter(|nu| amb.weyl_dimension(nu).unwrap() <= 3000)
            .collect();
        let points: Vec<_> = (0..4).map(|_| random_regular_point(f, &mut rng)).collect();
        for nu in &nus {
            let b = tw.branch_to_fixed(nu).unwrap();
            let total: u64 = b.iter().map(|(eta, m)| m * f.weyl_dimension(eta).unwrap()).sum();
            assert_eq!(total, amb.weyl_dimension(nu).unwrap(), "{t}{n} {k} {nu}");
            for p in &points {
                let lhs: Complex64 = b
                    .iter()
                    .map(|(eta, m)| f.character_value_by_weights(eta, p).unwrap().value * *m as f64)
                    .sum();
                let rhs = amb.character_value_by_weights(nu, &tw.lift_point(p)).unwrap().value;
                assert!((lhs - rhs).norm() < 1e-8 * (1.0 + rhs.norm()), "{t}{n} {k} {nu} at {p}");
            }
        }
    }
}

#[test]
fn known_branchings() {
    // sl4 -> sp4: 4 stays irreducible, 6 = 5 + 1.
    let tw = twist(LieType::A, 3, TwistKind::Diagram2);
    let b = tw.branch_to_fixed(&w(&[1, 0, 0])).unwrap();
    assert_eq!(b.into_iter().collect::<Vec<_>>(), vec![(w(&[1, 0]), 1)]);
    let b = tw.branch_to_fixed(&w(&[0, 1, 0])).unwrap();
    assert_eq!(b.len(), 2);
    assert_eq!(b[&w(&[0, 0])], 1);
    assert_eq!(b[&w(&[0, 1])], 1);
    // so8 -> G2: 8_v = 7 + 1 for every one of the three 8s.
    let tw = twist(LieType::D, 4, TwistKind::Diagram3);
    for i in [0, 2, 3] {
        let b = tw.branch_to_fixed(&Weight::fundamental(4, i)).unwrap();
        assert_eq!(b[&w(&[1, 0])], 1);
        assert_eq!(b[&w(&[0, 0])], 1);
    }
    // E6 -> F4: 27 = 26 + 1.
    let tw = twist(LieType::E, 6, TwistKind::Diagram2);
    let b = tw.branch_to_fixed(&Weight::fundamental(6, 0)).unwrap();
    assert_eq!(b.len(), 2);
    assert_eq!(b[&w(&[0, 0, 0, 0])], 1);
}

#[test]
fn lifted_points_of_sigma_c_are_regular() {
    for (t, n, k) in small_rows() {
        let tw = twist(t, n, k);
        let working = tw.companion().cloned().unwrap_or_else(|| tw.clone());
        for c in 1..=2 {
            let e = enumerate_sigma_c(&tw, c);
            for p in &e.points {
                assert!(p.is_regular(working.fixed()), "{t}{n} {k} {p}");
                assert!(working.lift_point(p).is_regular(tw.ambient()), "{t}{n} {k} lift of {p}");
            }
        }
    }
}

mod common;

use common::{preserves_form, random_model, random_token, MukaiOracle, Mv};
use mukai_lattice::{build_named, build_word, K3Model, MukaiVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_words_are_isometries(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = random_model(&mut rng);
        let len = rng.gen_range(0..=8);
        let tokens: Vec<String> = (0..len).map(|_| random_token(&mut rng, model.picard_rank())).collect();
        let phi = build_named(model.clone(), &tokens).unwrap();
        let g = model.algebraic_mukai_lattice().gram().to_rows();
        prop_assert!(preserves_form(&phi.matrix().to_rows(), &g));
        prop_assert!(phi.compose(&phi.inverse()).unwrap().is_identity());
        prop_assert!(phi.inverse().compose(&phi).unwrap().is_identity());
    }

    #[test]
    fn composition_is_associative_and_conjugation_preserves_order(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = random_model(&mut rng);
        let mut word = || {
            let len = rng.gen_range(1..=3);
            let tokens: Vec<String> = (0..len).map(|_| random_token(&mut rng, model.picard_rank())).collect();
            build_named(model.clone(), &tokens).unwrap()
        };
        let (a, b, c) = (word(), word(), word());
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left.matrix(), right.matrix());
        let conj = a.conjugate(&b).unwrap();
        prop_assert_eq!(conj.pow(2).is_identity(), a.pow(2).is_identity());
        prop_assert_eq!(conj.transcendental_sign(), a.transcendental_sign());
    }

    #[test]
    fn quartic_with_line_matches_hand_formulas(
        r in -4i64..=4, c in prop::collection::vec(-4i64..=4, 2), s in -4i64..=4,
        l in prop::collection::vec(-3i64..=3, 2),
    ) {
        let model = std::sync::Arc::new(K3Model::quartic_with_line());
        let oracle = MukaiOracle { pic: vec![vec![4, 3], vec![3, 0]] };
        let w: Mv = (r, c.clone(), s);
        let class = format!("{}D+{}E", l[0], l[1]).replace("+-", "-");
        let phi = build_word(model.clone(), &format!("shift tw:O({class}) lb:{class}")).unwrap();
        let lb = oracle.line_bundle(&l);
        let expected = oracle.shift(&oracle.twist(&lb, &oracle.tensor(&l, &w)));
        let got = phi.apply(&MukaiVector::from_i64(r, &c, s)).unwrap();
        prop_assert_eq!(got, MukaiVector::from_i64(expected.0, &expected.1, expected.2));
    }
}

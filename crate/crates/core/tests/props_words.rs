//! Property tests for free-word algebra: reduction, inversion, and the
//! evaluation homomorphism, over arbitrary generated words.

use proptest::prelude::*;

use orbitalis_core::models::bs12;
use orbitalis_core::words::{Letter, Word};

fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..2usize, any::<bool>()), 0..=max_len)
        .prop_map(|ls| Word::from(ls.into_iter().map(|(g, i)| Letter::new(g, i)).collect::<Vec<_>>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn reduction_is_idempotent_and_reduced(w in word_strategy(14)) {
        let r = w.reduce();
        prop_assert!(r.is_reduced());
        prop_assert_eq!(r.reduce(), r.clone());
        prop_assert!(r.len() <= w.len());
    }

    #[test]
    fn word_times_inverse_reduces_to_identity(w in word_strategy(12)) {
        prop_assert_eq!(w.concat(&w.inverse()).reduce(), Word::empty());
        prop_assert_eq!(w.inverse().concat(&w).reduce(), Word::empty());
        prop_assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn evaluation_respects_reduction_and_concatenation(
        w1 in word_strategy(8),
        w2 in word_strategy(8),
    ) {
        let assign = bs12();
        prop_assert_eq!(assign.evaluate(&w1.reduce()), assign.evaluate(&w1));
        prop_assert_eq!(
            assign.evaluate(&w1.concat(&w2)),
            assign.evaluate(&w1).compose(&assign.evaluate(&w2))
        );
        prop_assert_eq!(assign.evaluate(&w1.inverse()), assign.evaluate(&w1).invert());
    }

    #[test]
    fn order_is_length_first_then_letter_lexicographic(
        a in word_strategy(6),
        b in word_strategy(6),
    ) {
        let key = |w: &Word| (w.len(), w.letters().to_vec());
        prop_assert_eq!(a.cmp(&b), key(&a).cmp(&key(&b)));
    }
}

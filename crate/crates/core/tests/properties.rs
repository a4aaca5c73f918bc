mod common;

use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn context_is_append_only(seed in any::<u64>()) {
        common::check_append_only(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn ledger_totals_follow_transfer_arity(seed in any::<u64>()) {
        common::check_ledger(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn word_order_matters(seed in any::<u64>()) {
        common::check_anti_bag(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn split_particles_read_like_adjacent_ones(seed in any::<u64>()) {
        common::check_particle_split(seed).map_err(TestCaseError::fail)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn answers_are_backed_by_stored_items(seed in any::<u64>()) {
        common::check_soundness(seed).map_err(TestCaseError::fail)?;
    }
}

#[test]
fn verb_grid_round_trips() {
    for pred in ["p:speak", "p:eat.chew", "p:go", "p:give"] {
        assert_eq!(common::check_verb_grid(pred), Ok(48), "{pred}");
    }
}

#[test]
fn frames_choose_word_senses() {
    common::check_wsd().unwrap();
}

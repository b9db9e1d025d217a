use grpd_core::gpath::{
    chi, chi_inverse, colimit_normal_form, gpath_equivalent_direct, iso_check, random_gpath, GPath,
};
use grpd_core::{corpus, GroupAction};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn actions() -> Vec<GroupAction> {
    vec![
        corpus::reflection_action(),
        corpus::free_rotation_action(),
        (*corpus::plus_graph().unwrap().action).clone(),
        GroupAction::point(grpd_core::FiniteGroup::symmetric(3)),
    ]
}

fn draw(a: &GroupAction, seed: u64, t: usize) -> GPath {
    random_gpath(a, t, 4, &mut StdRng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normal_form_is_idempotent(which in 0usize..4, seed: u64, t in 0usize..5) {
        let a = &actions()[which];
        let p = draw(a, seed, t);
        let n = colimit_normal_form(a, &p);
        prop_assert_eq!(colimit_normal_form(a, &n), n.clone());
        prop_assert_eq!(chi(a, &n), chi(a, &p));
        prop_assert!(iso_check(a, &p, &n).unwrap().is_some());
    }

    #[test]
    fn chi_inverse_recovers_class(which in 0usize..4, seed: u64, t in 0usize..5) {
        let a = &actions()[which];
        let p = draw(a, seed, t);
        let back = chi_inverse(&chi(a, &p));
        prop_assert_eq!(back.piece_count(), 1);
        prop_assert_eq!(iso_check(a, &p, &back).unwrap(), Some(a.group().identity()));
    }

    #[test]
    fn oracles_agree_on_random_pairs(which in 0usize..4, s1: u64, s2: u64, t in 0usize..4) {
        let a = &actions()[which];
        let (p, q) = (draw(a, s1, t), draw(a, s2, t));
        let fast = iso_check(a, &p, &q).unwrap();
        let direct = gpath_equivalent_direct(a, &p, &q).unwrap();
        prop_assert_eq!(fast.is_some(), direct.is_some());
        if let Some(w) = direct {
            prop_assert!(w.validate(a).is_ok());
        }
    }
}

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sympal::regularity::{
    check_npower_distinct, check_npower_distinct_auto, max_admissible_weight, random_profile, twist_by_cyclotomic,
    validate_profile, NpowerVerdict,
};

fn cell() -> impl Strategy<Value = (u64, u32)> {
    prop::sample::select(vec![(7u64, 2u32), (11, 2), (13, 2), (53, 2), (79, 4), (97, 4), (101, 3), (29, 3)])
}

proptest! {
    #[test]
    fn admissible_profiles_are_distinct((ell, n) in cell(), seed in any::<u64>()) {
        let k = max_admissible_weight(ell, n).unwrap().min(ell - 1);
        prop_assume!(k + 1 >= n as u64);
        let p = random_profile(&mut ChaCha8Rng::seed_from_u64(seed), ell, n, k);
        prop_assert!(validate_profile(&p).is_ok());
        let auto = check_npower_distinct_auto(&p).unwrap();
        prop_assert!(auto.is_distinct());
        if let Ok(small) = check_npower_distinct::<u128>(&p) {
            prop_assert_eq!(small.is_distinct(), auto.is_distinct());
        }
    }

    #[test]
    fn twisting_preserves_the_verdict((ell, n) in cell(), seed in any::<u64>(), a in -20i64..20) {
        let p = random_profile(&mut ChaCha8Rng::seed_from_u64(seed), ell, n, ell - 1);
        let before = check_npower_distinct_auto(&p).unwrap().is_distinct();
        if let Ok(t) = twist_by_cyclotomic(&p, a) {
            prop_assert_eq!(check_npower_distinct_auto(&t).unwrap().is_distinct(), before);
        }
    }
}

#[test]
fn large_weights_can_collide() {
    // with weights up to l - 1 some profiles collide once n! is large enough
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let collisions = (0..400)
        .map(|_| random_profile(&mut rng, 13, 4, 12))
        .filter(|p| matches!(check_npower_distinct_auto(p).unwrap(), NpowerVerdict::Collision { .. }))
        .count();
    assert!(collisions > 0);
}

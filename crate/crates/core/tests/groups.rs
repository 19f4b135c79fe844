use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sympal::classify::{classify, fixtures, transport, ClassifyError};
use sympal::groupkit::{group_order, is_irreducible, random_similitude, DEFAULT_CAP};
use sympal::npgroup::{build_chi, build_np_group, find_np_primes, frobenius_relation_holds, NpError, NpParams};

#[test]
fn enumeration_is_closed_and_has_inverses() {
    let g = fixtures::sp2(7, 1);
    let e = g.enumerate(DEFAULT_CAP).unwrap();
    assert_eq!(e.len(), 336);
    let all: Vec<_> = e.iter().collect();
    for a in all.iter().step_by(7) {
        assert!(e.contains(&a.inverse().unwrap()));
        for b in all.iter().step_by(11) {
            assert!(e.contains(&(a * b)));
        }
    }
}

#[test]
fn cap_is_reported() {
    let err = group_order(&fixtures::sp2(5, 2), 1000).unwrap_err();
    assert!(err.to_string().contains("1000"), "{err}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn conjugation_preserves_order_and_transports_verdicts(seed in any::<u64>(), which in 0usize..3) {
        let g = [fixtures::reducible_sp4(5), fixtures::induced_sp4(5), fixtures::sp2(5, 2)][which].clone();
        let a = random_similitude(g.space(), &mut ChaCha8Rng::seed_from_u64(seed));
        let h = g.conjugate_by(&a).unwrap();
        prop_assert_eq!(group_order(&g, DEFAULT_CAP).unwrap(), group_order(&h, DEFAULT_CAP).unwrap());
        let v = classify(&g, DEFAULT_CAP).unwrap();
        let moved = transport(&v, &a);
        prop_assert!(moved.verify(&h).is_ok());
        prop_assert_eq!(moved.case_name(), classify(&h, DEFAULT_CAP).unwrap().case_name());
    }
}

#[test]
fn np_groups_satisfy_their_relations() {
    let mut built = 0;
    for (q, p) in find_np_primes(2, 30).unwrap() {
        for ell in [5u64, 7, 11, 13, 17, 19, 23] {
            if ell == q || ell == p {
                continue;
            }
            let Ok(params) = NpParams::new(2, q, p, ell) else { continue };
            let Ok(chi) = build_chi(&params) else { continue };
            let np = match build_np_group(&chi) {
                Ok(np) => np,
                // field too large for the exhaustive irreducibility scan
                Err(NpError::Unverified) => continue,
                Err(e) => panic!("(q, p, l) = ({q}, {p}, {ell}): {e}"),
            };
            assert!(frobenius_relation_holds(&np), "(q, p, l) = ({q}, {p}, {ell})");
            assert!(is_irreducible(&np.group).is_irreducible());
            assert_eq!(group_order(&np.group, DEFAULT_CAP).unwrap(), 4 * p);
            // no transvections in a group of order prime to l
            assert!(matches!(classify(&np.group, DEFAULT_CAP), Err(ClassifyError::NoTransvection)));
            built += 1;
        }
    }
    assert!(built > 5);
}

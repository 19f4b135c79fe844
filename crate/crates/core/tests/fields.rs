use proptest::prelude::*;
use sympal::field_make;

fn fields() -> impl Strategy<Value = (u64, u32)> {
    prop::sample::select(vec![(2u64, 1u32), (3, 2), (5, 1), (5, 2), (7, 1), (7, 2), (3, 3), (2, 4), (11, 1)])
}

proptest! {
    #[test]
    fn ring_axioms((ell, d) in fields(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field_make(ell, d).unwrap();
        let q = f.order();
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != f.zero() {
            let inv = f.inv(a).unwrap();
            prop_assert_eq!(f.mul(a, inv), f.one());
            prop_assert_eq!(f.gen_pow(f.log(a).unwrap() as i64), a);
        } else {
            prop_assert!(f.inv(a).is_none());
        }
    }

    #[test]
    fn frobenius_is_additive_and_multiplicative((ell, d) in fields(), a in any::<u32>(), b in any::<u32>()) {
        let f = field_make(ell, d).unwrap();
        let q = f.order();
        let (a, b) = (a % q, b % q);
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.frobenius(a), f.pow(a, ell));
        // x^q = x
        prop_assert_eq!(f.pow(a, q as u64), a);
        prop_assert_eq!(f.in_subfield(a, 1), f.frobenius(a) == a);
    }

    #[test]
    fn coefficient_round_trip((ell, d) in fields(), a in any::<u32>()) {
        let f = field_make(ell, d).unwrap();
        let a = a % f.order();
        let c = f.coeffs(a);
        prop_assert_eq!(c.len(), d as usize);
        prop_assert_eq!(f.from_coeffs(&c).unwrap(), a);
    }
}

#[test]
fn generator_has_full_order() {
    for (ell, d) in [(2, 4), (3, 3), (5, 2), (7, 2), (13, 1)] {
        let f = field_make(ell, d).unwrap();
        assert_eq!(f.multiplicative_order(f.generator()), Some(f.order() as u64 - 1));
    }
}

#[test]
fn rejects_non_prime_characteristic() {
    assert!(field_make(6, 1).is_err());
    assert!(field_make(5, 0).is_err());
}

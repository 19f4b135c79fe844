//! Weight profiles of regular representations, their diagonal characters as
//! exponent data, and the `n!`-th power distinctness check.
//!
//! Characters are powers of the fundamental character `ψ_r` of niveau `r`,
//! stored as exponents modulo `ℓ^r - 1`. Exponent arithmetic is generic over
//! [`ExpInt`]; the `*_auto` entry points fall back from `u128` to `BigUint`.

use std::fmt::{Debug, Display};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, ToPrimitive};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numth::{factorial, is_prime};

/// Integer type carrying exponents.
pub trait ExpInt:
    Clone
    + Ord
    + Debug
    + Display
    + Integer
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
{
}

impl<T> ExpInt for T where
    T: Clone
        + Ord
        + Debug
        + Display
        + Integer
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
{
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegularityError {
    #[error("invalid profile: {0}")]
    Invalid(String),
    #[error("exponent arithmetic overflowed the integer type")]
    Overflow,
    #[error("twisted weights collide: {0:?}")]
    TwistBreaksRegularity(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Part {
    pub niveau: u32,
    /// `a_{i,1}, ..., a_{i,r_i}`: the base-`ℓ` digits of `b_i`, least significant first.
    pub weights: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightProfile {
    pub ell: u64,
    pub n: u32,
    pub parts: Vec<Part>,
}

/// `ψ_r^e` with `e` reduced modulo `ℓ^r - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NiveauCharacter<T> {
    pub niveau: u32,
    pub exponent: T,
}

fn from_u64<T: ExpInt>(x: u64) -> T {
    T::from_u64(x).expect("every exponent type holds u64")
}

fn checked_pow<T: ExpInt>(base: u64, e: u32) -> Result<T, RegularityError> {
    let b: T = from_u64(base);
    (0..e).try_fold(T::one(), |acc, _| acc.checked_mul(&b).ok_or(RegularityError::Overflow))
}

/// `ℓ^r - 1`.
pub fn cyclic_order<T: ExpInt>(ell: u64, r: u32) -> Result<T, RegularityError> {
    Ok(checked_pow::<T>(ell, r)? - T::one())
}

impl<T: ExpInt> NiveauCharacter<T> {
    pub fn new(niveau: u32, exponent: T, ell: u64) -> Result<Self, RegularityError> {
        if niveau == 0 {
            return Err(RegularityError::Invalid("niveau must be positive".into()));
        }
        let m = cyclic_order::<T>(ell, niveau)?;
        Ok(NiveauCharacter {
            niveau,
            exponent: exponent.mod_floor(&m),
        })
    }

    /// Exponent of the same character as a power of `ψ_{target}`;
    /// `target` must be a multiple of the niveau.
    pub fn lift(&self, target: u32, ell: u64) -> Result<T, RegularityError> {
        assert_eq!(target % self.niveau, 0, "lift target is not a multiple of the niveau");
        let big = cyclic_order::<T>(ell, target)?;
        let small = cyclic_order::<T>(ell, self.niveau)?;
        let scale = big.div_floor(&small);
        Ok(self
            .exponent
            .checked_mul(&scale)
            .ok_or(RegularityError::Overflow)?
            .mod_floor(&big))
    }

    /// `c^k`.
    pub fn power(&self, k: u64, ell: u64) -> Result<Self, RegularityError> {
        let e = self
            .exponent
            .checked_mul(&from_u64(k))
            .ok_or(RegularityError::Overflow)?;
        NiveauCharacter::new(self.niveau, e, ell)
    }

    /// Same character with `BigUint` exponent.
    pub fn to_big(&self) -> NiveauCharacter<BigUint> {
        NiveauCharacter {
            niveau: self.niveau,
            exponent: BigUint::parse_bytes(self.exponent.to_string().as_bytes(), 10).unwrap(),
        }
    }
}

pub type NiveauCharacterU128 = NiveauCharacter<u128>;
pub type NiveauCharacterBig = NiveauCharacter<BigUint>;

/// Summary of a valid profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileInfo {
    /// Largest weight.
    pub k: u64,
}

pub fn validate_profile(p: &WeightProfile) -> Result<ProfileInfo, RegularityError> {
    let bad = |s: String| Err(RegularityError::Invalid(s));
    if !is_prime(p.ell) {
        return bad(format!("ell = {} is not prime", p.ell));
    }
    if p.n == 0 || p.parts.is_empty() {
        return bad("profile is empty".into());
    }
    let mut all = Vec::new();
    for (i, part) in p.parts.iter().enumerate() {
        if part.niveau == 0 {
            return bad(format!("part {i} has niveau 0"));
        }
        if part.weights.len() != part.niveau as usize {
            return bad(format!("part {i} has {} weights for niveau {}", part.weights.len(), part.niveau));
        }
        if let Some(w) = part.weights.iter().find(|&&w| w >= p.ell) {
            return bad(format!("weight {w} is not in [0, ell - 1]"));
        }
        all.extend(part.weights.iter().copied());
    }
    let total: u64 = p.parts.iter().map(|x| x.niveau as u64).sum();
    if total != p.n as u64 {
        return bad(format!("niveaus sum to {total}, not n = {}", p.n));
    }
    let mut sorted = all.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != all.len() {
        return bad("weights are not distinct".into());
    }
    Ok(ProfileInfo {
        k: *sorted.last().unwrap(),
    })
}

/// `b = Σ_j a_j ℓ^j`.
pub fn part_exponent<T: ExpInt>(part: &Part, ell: u64) -> Result<T, RegularityError> {
    part.weights.iter().rev().try_fold(T::zero(), |acc, &w| {
        acc.checked_mul(&from_u64(ell))
            .and_then(|x| x.checked_add(&from_u64(w)))
            .ok_or(RegularityError::Overflow)
    })
}

/// The `n` characters `ψ_{r_i}^{b_i ℓ^j}`, part by part.
pub fn diag_characters<T: ExpInt>(p: &WeightProfile) -> Result<Vec<NiveauCharacter<T>>, RegularityError> {
    validate_profile(p)?;
    let mut out = Vec::with_capacity(p.n as usize);
    for part in &p.parts {
        let m = cyclic_order::<T>(p.ell, part.niveau)?;
        let mut e = part_exponent::<T>(part, p.ell)?.mod_floor(&m);
        for _ in 0..part.niveau {
            out.push(NiveauCharacter {
                niveau: part.niveau,
                exponent: e.clone(),
            });
            e = e
                .checked_mul(&from_u64(p.ell))
                .ok_or(RegularityError::Overflow)?
                .mod_floor(&m);
        }
    }
    Ok(out)
}

/// Compares after lifting both to niveau `r_1 r_2`.
pub fn characters_equal<T: ExpInt>(
    c1: &NiveauCharacter<T>,
    c2: &NiveauCharacter<T>,
    ell: u64,
) -> Result<bool, RegularityError> {
    let r = c1.niveau * c2.niveau;
    Ok(c1.lift(r, ell)? == c2.lift(r, ell)?)
}

/// `C_0 = |L_1 f e_1 - L_2 f e_2|` for the lifting factors `L_i` to niveau
/// `r_1 r_2` and the power `f`, with `ℓ^{r_1 r_2} - 1` alongside.
pub fn c0_certificate<T: ExpInt>(
    c1: &NiveauCharacter<T>,
    c2: &NiveauCharacter<T>,
    factor: u64,
    ell: u64,
) -> Result<Certificate<T>, RegularityError> {
    let r = c1.niveau * c2.niveau;
    let big = cyclic_order::<T>(ell, r)?;
    let scaled = |c: &NiveauCharacter<T>| -> Result<T, RegularityError> {
        let f = big.div_floor(&cyclic_order::<T>(ell, c.niveau)?);
        c.exponent
            .checked_mul(&f)
            .and_then(|x| x.checked_mul(&from_u64(factor)))
            .ok_or(RegularityError::Overflow)
    };
    let (x, y) = (scaled(c1)?, scaled(c2)?);
    let c0 = if x >= y { x - y } else { y - x };
    Ok(Certificate { c0, modulus: big })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate<T> {
    pub c0: T,
    /// `ℓ^{r_i r_j} - 1`.
    pub modulus: T,
}

impl<T: ExpInt> Certificate<T> {
    /// `0 < C_0 < ℓ^{r_i r_j} - 1`, the bound from the proof.
    pub fn within_bound(&self) -> bool {
        !self.c0.is_zero() && self.c0 < self.modulus
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum NpowerVerdict<T> {
    Distinct {
        /// One per unordered pair `(i, j)`, `i < j`, in lexicographic order.
        certificates: Vec<(usize, usize, Certificate<T>)>,
    },
    Collision {
        first: usize,
        second: usize,
        /// The two `n!`-th powers.
        characters: (NiveauCharacter<T>, NiveauCharacter<T>),
        /// Their common exponent at niveau `r_i r_j`.
        lifted: T,
    },
}

impl<T> NpowerVerdict<T> {
    pub fn is_distinct(&self) -> bool {
        matches!(self, NpowerVerdict::Distinct { .. })
    }
}

pub fn check_npower_distinct<T: ExpInt>(p: &WeightProfile) -> Result<NpowerVerdict<T>, RegularityError> {
    let fact = factorial(p.n as u64).ok_or(RegularityError::Overflow)?;
    let diag = diag_characters::<T>(p)?;
    let powered: Vec<NiveauCharacter<T>> = diag
        .iter()
        .map(|c| c.power(fact, p.ell))
        .collect::<Result<_, _>>()?;
    let mut certificates = Vec::new();
    for i in 0..powered.len() {
        for j in i + 1..powered.len() {
            let (a, b) = (&powered[i], &powered[j]);
            if characters_equal(a, b, p.ell)? {
                return Ok(NpowerVerdict::Collision {
                    first: i,
                    second: j,
                    characters: (a.clone(), b.clone()),
                    lifted: a.lift(a.niveau * b.niveau, p.ell)?,
                });
            }
            certificates.push((i, j, c0_certificate(&diag[i], &diag[j], fact, p.ell)?));
        }
    }
    Ok(NpowerVerdict::Distinct { certificates })
}

fn verdict_to_big<T: ExpInt>(v: NpowerVerdict<T>) -> NpowerVerdict<BigUint> {
    let big = |x: &T| BigUint::parse_bytes(x.to_string().as_bytes(), 10).unwrap();
    match v {
        NpowerVerdict::Distinct { certificates } => NpowerVerdict::Distinct {
            certificates: certificates
                .iter()
                .map(|(i, j, c)| {
                    (
                        *i,
                        *j,
                        Certificate {
                            c0: big(&c.c0),
                            modulus: big(&c.modulus),
                        },
                    )
                })
                .collect(),
        },
        NpowerVerdict::Collision {
            first,
            second,
            characters,
            lifted,
        } => NpowerVerdict::Collision {
            first,
            second,
            characters: (characters.0.to_big(), characters.1.to_big()),
            lifted: big(&lifted),
        },
    }
}

/// [`check_npower_distinct`] in `u128`, redone in `BigUint` on overflow.
pub fn check_npower_distinct_auto(p: &WeightProfile) -> Result<NpowerVerdict<BigUint>, RegularityError> {
    match check_npower_distinct::<u128>(p) {
        Ok(v) => Ok(verdict_to_big(v)),
        Err(RegularityError::Overflow) => check_npower_distinct::<BigUint>(p),
        Err(e) => Err(e),
    }
}

/// Base-`ℓ` digits of `e`, least significant first, `r` of them.
fn digits<T: ExpInt>(mut e: T, ell: u64, r: u32) -> Vec<u64> {
    let l: T = from_u64(ell);
    (0..r)
        .map(|_| {
            let (q, d) = e.div_rem(&l);
            e = q;
            d.to_u64().unwrap()
        })
        .collect()
}

fn twist_with<T: ExpInt>(p: &WeightProfile, a: u64) -> Result<WeightProfile, RegularityError> {
    let mut parts = Vec::with_capacity(p.parts.len());
    for part in &p.parts {
        let m = cyclic_order::<T>(p.ell, part.niveau)?;
        // χ_ℓ = ψ_1 lifted to niveau r is ψ_r^{(ℓ^r - 1)/(ℓ - 1)}
        let shift = m
            .div_floor(&from_u64(p.ell - 1))
            .checked_mul(&from_u64(a))
            .ok_or(RegularityError::Overflow)?;
        let e = part_exponent::<T>(part, p.ell)?
            .checked_add(&shift)
            .ok_or(RegularityError::Overflow)?
            .mod_floor(&m);
        parts.push(Part {
            niveau: part.niveau,
            weights: digits(e, p.ell, part.niveau),
        });
    }
    Ok(WeightProfile {
        ell: p.ell,
        n: p.n,
        parts,
    })
}

/// `χ_ℓ^a ⊗ ρ`. Each `b_i` gains `a (ℓ^{r_i} - 1)/(ℓ - 1)` and is written back
/// in base `ℓ`; without carries this shifts every weight by `a mod (ℓ - 1)`.
pub fn twist_by_cyclotomic(p: &WeightProfile, a: i64) -> Result<WeightProfile, RegularityError> {
    validate_profile(p)?;
    let a = a.rem_euclid(p.ell as i64 - 1) as u64;
    if a == 0 {
        return Ok(p.clone());
    }
    let out = match twist_with::<u128>(p, a) {
        Err(RegularityError::Overflow) => twist_with::<BigUint>(p, a)?,
        other => other?,
    };
    if validate_profile(&out).is_err() {
        return Err(RegularityError::TwistBreaksRegularity(
            out.parts.iter().flat_map(|x| x.weights.iter().copied()).collect(),
        ));
    }
    Ok(out)
}

/// A uniformly shaped random valid profile with weights in `[0, k]`
/// (requires `k + 1 ≥ n`).
pub fn random_profile<R: Rng>(rng: &mut R, ell: u64, n: u32, k: u64) -> WeightProfile {
    assert!(k + 1 >= n as u64 && k < ell, "no profile with n distinct weights in [0, k]");
    let mut pool: Vec<u64> = (0..=k).collect();
    pool.shuffle(rng);
    let mut weights = pool[..n as usize].to_vec();
    let mut parts = Vec::new();
    let mut left = n;
    while left > 0 {
        let r = rng.gen_range(1..=left);
        parts.push(Part {
            niveau: r,
            weights: weights.drain(..r as usize).collect(),
        });
        left -= r;
    }
    WeightProfile { ell, n, parts }
}

/// Largest `k` with `ℓ > k n! + 1`, if any.
pub fn max_admissible_weight(ell: u64, n: u32) -> Option<u64> {
    let f = factorial(n as u64)?;
    (ell >= 2).then(|| (ell - 2) / f)
}

/// The collision example: `ℓ = 5`, `n = 2`, weights `{0}` and `{2}` at niveau 1.
pub fn collision_fixture() -> WeightProfile {
    WeightProfile {
        ell: 5,
        n: 2,
        parts: vec![
            Part {
                niveau: 1,
                weights: vec![0],
            },
            Part {
                niveau: 1,
                weights: vec![2],
            },
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn profile(ell: u64, n: u32, parts: &[(u32, &[u64])]) -> WeightProfile {
        WeightProfile {
            ell,
            n,
            parts: parts
                .iter()
                .map(|(r, w)| Part {
                    niveau: *r,
                    weights: w.to_vec(),
                })
                .collect(),
        }
    }

    fn ch(r: u32, e: u128) -> NiveauCharacterU128 {
        NiveauCharacter { niveau: r, exponent: e }
    }

    #[test]
    fn validation() {
        assert_eq!(validate_profile(&profile(7, 2, &[(2, &[0, 1])])).unwrap().k, 1);
        assert!(validate_profile(&profile(7, 2, &[(1, &[0]), (1, &[0])])).is_err());
        assert!(validate_profile(&profile(5, 3, &[(2, &[0, 1])])).is_err());
        assert!(validate_profile(&profile(5, 1, &[(1, &[5])])).is_err());
        assert!(validate_profile(&profile(6, 1, &[(1, &[0])])).is_err());
    }

    #[test]
    fn diagonal_examples() {
        let d = diag_characters::<u128>(&profile(7, 2, &[(2, &[0, 1])])).unwrap();
        assert_eq!(d, vec![ch(2, 7), ch(2, 1)]);
        assert_eq!(diag_characters::<u128>(&profile(5, 1, &[(1, &[3])])).unwrap(), vec![ch(1, 3)]);
        assert_eq!(diag_characters::<u128>(&profile(7, 1, &[(1, &[0])])).unwrap(), vec![ch(1, 0)]);
    }

    #[test]
    fn equality_examples() {
        assert!(characters_equal(&ch(2, 5), &ch(2, 5), 7).unwrap());
        assert!(characters_equal(&ch(1, 1), &ch(2, 8), 7).unwrap());
        assert!(!characters_equal(&ch(2, 1), &ch(2, 7), 7).unwrap());
    }

    #[test]
    fn npower_examples() {
        let v = check_npower_distinct::<u128>(&profile(7, 2, &[(2, &[0, 1])])).unwrap();
        assert!(v.is_distinct());
        match check_npower_distinct::<u128>(&collision_fixture()).unwrap() {
            NpowerVerdict::Collision {
                first,
                second,
                characters,
                ..
            } => {
                assert_eq!((first, second), (0, 1));
                assert_eq!(characters, (ch(1, 0), ch(1, 0)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn twist_examples() {
        let p = profile(7, 2, &[(2, &[0, 1])]);
        assert_eq!(twist_by_cyclotomic(&p, 0).unwrap(), p);
        assert_eq!(twist_by_cyclotomic(&p, 6).unwrap(), p);
        assert_eq!(twist_by_cyclotomic(&p, 2).unwrap(), profile(7, 2, &[(2, &[2, 3])]));
        let q = profile(7, 2, &[(1, &[0]), (1, &[1])]);
        assert_eq!(twist_by_cyclotomic(&q, 2).unwrap(), profile(7, 2, &[(1, &[2]), (1, &[3])]));
        assert_eq!(twist_by_cyclotomic(&q, -4).unwrap(), twist_by_cyclotomic(&q, 2).unwrap());
        // ψ_1^0 = ψ_1^6, so after the shift both weights read 1
        let clash = profile(7, 2, &[(1, &[0]), (1, &[6])]);
        assert!(matches!(
            twist_by_cyclotomic(&clash, 1),
            Err(RegularityError::TwistBreaksRegularity(_))
        ));
    }

    #[test]
    fn big_fallback_agrees() {
        let p = profile(53, 4, &[(4, &[0, 1, 2, 3])]);
        let a = check_npower_distinct::<u128>(&p).map(verdict_to_big);
        let b = check_npower_distinct::<BigUint>(&p);
        assert_eq!(a, b);
        // 53^25 does not fit in u128
        let wide = profile(53, 5, &[(5, &[0, 1, 2, 3, 4])]);
        assert_eq!(check_npower_distinct::<u128>(&wide), Err(RegularityError::Overflow));
        assert!(check_npower_distinct_auto(&wide).is_ok());
    }

    fn arb_profile() -> impl Strategy<Value = WeightProfile> {
        (prop::sample::select(vec![7u64, 11, 13, 53]), 1u32..=4, any::<u64>()).prop_map(|(ell, n, seed)| {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let k = rand::Rng::gen_range(&mut rng, n as u64 - 1..ell);
            random_profile(&mut rng, ell, n, k)
        })
    }

    proptest! {
        #[test]
        fn equality_is_an_equivalence(p in arb_profile(), seed in any::<u64>()) {
            let cs = diag_characters::<u128>(&p).unwrap();
            let ell = p.ell;
            let k = (seed % 6) + 1;
            let xs: Vec<_> = cs.iter().map(|c| c.power(k, ell).unwrap()).collect();
            for a in &xs {
                prop_assert!(characters_equal(a, a, ell).unwrap());
                for b in &xs {
                    let ab = characters_equal(a, b, ell).unwrap();
                    prop_assert_eq!(ab, characters_equal(b, a, ell).unwrap());
                    for c in &xs {
                        if ab && characters_equal(b, c, ell).unwrap() {
                            prop_assert!(characters_equal(a, c, ell).unwrap());
                        }
                    }
                }
            }
        }

        #[test]
        fn bounded_weights_give_distinct_powers(p in arb_profile()) {
            let k = validate_profile(&p).unwrap().k;
            prop_assume!(max_admissible_weight(p.ell, p.n).is_some_and(|m| k <= m));
            match check_npower_distinct::<BigUint>(&p).unwrap() {
                NpowerVerdict::Distinct { certificates } => {
                    prop_assert!(certificates.iter().all(|(_, _, c)| c.within_bound()));
                }
                other => prop_assert!(false, "{:?}", other),
            }
        }

        #[test]
        fn frobenius_orbits_are_closed(p in arb_profile()) {
            let cs = diag_characters::<u128>(&p).unwrap();
            let mut start = 0;
            for part in &p.parts {
                let r = part.niveau as usize;
                let m = (p.ell as u128).pow(part.niveau) - 1;
                let mut block: Vec<u128> = cs[start..start + r].iter().map(|c| c.exponent).collect();
                let mut shifted: Vec<u128> = block.iter().map(|e| e * p.ell as u128 % m).collect();
                block.sort_unstable();
                shifted.sort_unstable();
                prop_assert_eq!(block, shifted);
                start += r;
            }
        }

        #[test]
        fn certificates_recompute(p in arb_profile()) {
            if let NpowerVerdict::Distinct { certificates } = check_npower_distinct::<BigUint>(&p).unwrap() {
                let cs = diag_characters::<BigUint>(&p).unwrap();
                let f = BigUint::from(factorial(p.n as u64).unwrap());
                for (i, j, c) in certificates {
                    let (ri, rj) = (cs[i].niveau, cs[j].niveau);
                    let l = BigUint::from(p.ell);
                    let big = l.pow(ri * rj) - 1u32;
                    let x = (&big / (l.pow(ri) - 1u32)) * &f * &cs[i].exponent;
                    let y = (&big / (l.pow(rj) - 1u32)) * &f * &cs[j].exponent;
                    let c0 = if x >= y { x - y } else { y - x };
                    prop_assert_eq!(&c.c0, &c0);
                    prop_assert!(!(&c0 % &big == BigUint::from(0u32)));
                }
            }
        }
    }
}

//! Exact arithmetic in `Q(ζ_m)`: coordinates in the power basis
//! `1, ζ, ..., ζ^{φ(m)-1}` modulo the `m`-th cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::Rational64;
use num_traits::{Num, One};

/// Reduction data for `Q(ζ_m)`.
#[derive(Debug)]
pub struct CycloField {
    m: u64,
    /// `Φ_m`, constant term first.
    phi: Vec<i64>,
    /// Power-basis coordinates of `ζ^k` for `k = 0..m`.
    powers: Vec<Vec<i64>>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert_eq!(*den.last().unwrap(), 1, "monic divisor");
    let mut q = vec![0; rem.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

/// `Φ_m` with integer coefficients.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

impl CycloField {
    fn build(m: u64) -> CycloField {
        assert!(m >= 1, "m must be positive");
        let phi = cyclotomic_polynomial(m);
        let deg = phi.len() - 1;
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; deg];
        cur[0] = 1;
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by x and reduce by the monic Φ_m
            let top = cur[deg - 1];
            let mut next = vec![0i64; deg];
            next[1..deg].copy_from_slice(&cur[..deg - 1]);
            for i in 0..deg {
                next[i] -= top * phi[i];
            }
            cur = next;
        }
        CycloField { m, phi, powers }
    }

    /// Shared instance for each `m`.
    pub fn get(m: u64) -> Arc<CycloField> {
        static REGISTRY: OnceLock<Mutex<HashMap<u64, Arc<CycloField>>>> = OnceLock::new();
        let mut reg = REGISTRY.get_or_init(Default::default).lock().unwrap();
        reg.entry(m).or_insert_with(|| Arc::new(CycloField::build(m))).clone()
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// `φ(m)`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn phi(&self) -> &[i64] {
        &self.phi
    }
}

/// Coefficient ring bound for [`Cyclotomic`].
pub trait CycCoeff: Clone + Num + From<i64> + fmt::Debug {}
impl<T: Clone + Num + From<i64> + fmt::Debug> CycCoeff for T {}

/// An element of `Q(ζ_m)` (or `Z[ζ_m]`) with coefficients in `T`.
#[derive(Clone)]
pub struct Cyclotomic<T> {
    field: Arc<CycloField>,
    coeffs: Vec<T>,
}

pub type CycInt = Cyclotomic<i64>;
pub type CycRat = Cyclotomic<Rational64>;

impl<T: CycCoeff> PartialEq for Cyclotomic<T> {
    fn eq(&self, other: &Self) -> bool {
        self.field.m == other.field.m && self.coeffs == other.coeffs
    }
}
impl<T: CycCoeff> Eq for Cyclotomic<T> where T: Eq {}

impl<T: CycCoeff + fmt::Display> fmt::Debug for Cyclotomic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})z"),
                _ => format!("({c})z^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl<T: CycCoeff> Cyclotomic<T> {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        Cyclotomic {
            field: field.clone(),
            coeffs: vec![T::zero(); field.degree()],
        }
    }

    pub fn from_scalar(field: &Arc<CycloField>, c: T) -> Self {
        let mut z = Self::zero(field);
        z.coeffs[0] = c;
        z
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_scalar(field, T::one())
    }

    /// `ζ_m^k`.
    pub fn zeta_pow(field: &Arc<CycloField>, k: i64) -> Self {
        let m = field.m as i64;
        let row = &field.powers[k.rem_euclid(m) as usize];
        Cyclotomic {
            field: field.clone(),
            coeffs: row.iter().map(|&x| T::from(x)).collect(),
        }
    }

    /// `Σ_k counts[k] ζ^k` for exponents modulo `m`.
    pub fn from_exponent_counts(field: &Arc<CycloField>, counts: &[i64]) -> Self {
        let deg = field.degree();
        let mut acc = vec![0i64; deg];
        for (k, &c) in counts.iter().enumerate() {
            if c != 0 {
                let row = &field.powers[k % field.m as usize];
                for i in 0..deg {
                    acc[i] += c * row[i];
                }
            }
        }
        Cyclotomic {
            field: field.clone(),
            coeffs: acc.into_iter().map(T::from).collect(),
        }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The value as a scalar when it lies in the base ring.
    pub fn to_scalar(&self) -> Option<T> {
        self.coeffs[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| self.coeffs[0].clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    fn check_field(&self, other: &Self) {
        assert_eq!(self.field.m, other.field.m, "elements of different cyclotomic fields");
    }

    /// `σ_k: ζ ↦ ζ^k`; `k = -1` is complex conjugation.
    pub fn galois(&self, k: i64) -> Self {
        let m = self.field.m as i64;
        let deg = self.field.degree();
        let mut acc = vec![T::zero(); deg];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &self.field.powers[(k * i as i64).rem_euclid(m) as usize];
            for j in 0..deg {
                if row[j] != 0 {
                    acc[j] = acc[j].clone() + c.clone() * T::from(row[j]);
                }
            }
        }
        Cyclotomic {
            field: self.field.clone(),
            coeffs: acc,
        }
    }

    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        self.check_field(other);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a = a.clone() + b.clone();
            }
        }
    }
}

impl<T: CycCoeff> Add for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn add(self, rhs: &Cyclotomic<T>) -> Cyclotomic<T> {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<T: CycCoeff> Sub for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn sub(self, rhs: &Cyclotomic<T>) -> Cyclotomic<T> {
        self.check_field(rhs);
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: CycCoeff> Neg for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn neg(self) -> Cyclotomic<T> {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| T::zero() - a.clone()).collect(),
        }
    }
}

impl<T: CycCoeff> Mul for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn mul(self, rhs: &Cyclotomic<T>) -> Cyclotomic<T> {
        self.check_field(rhs);
        let f = &self.field;
        let deg = f.degree();
        let m = f.m as usize;
        let mut acc = vec![T::zero(); deg];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.clone() * b.clone();
                let row = &f.powers[(i + j) % m];
                for k in 0..deg {
                    if row[k] != 0 {
                        acc[k] = acc[k].clone() + ab.clone() * T::from(row[k]);
                    }
                }
            }
        }
        Cyclotomic {
            field: f.clone(),
            coeffs: acc,
        }
    }
}

impl CycInt {
    pub fn to_rational(&self) -> CycRat {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&c| Rational64::from_integer(c)).collect(),
        }
    }
}

impl CycRat {
    /// Integral coordinates when every coefficient is an integer.
    pub fn to_integral(&self) -> Option<CycInt> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<i64>>>()
            .map(|coeffs| Cyclotomic {
                field: self.field.clone(),
                coeffs,
            })
    }

    pub fn is_one(&self) -> bool {
        self.to_scalar().is_some_and(|c| c.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient outside {-1, 0, 1}
        assert!(cyclotomic_polynomial(105).contains(&-2));
        assert_eq!(CycloField::get(21).degree(), 12);
    }

    #[test]
    fn roots_of_unity() {
        for m in [1u64, 2, 3, 4, 6, 12, 21, 52, 55] {
            let f = CycloField::get(m);
            let z: CycInt = Cyclotomic::zeta_pow(&f, 1);
            let mut acc = CycInt::one(&f);
            for _ in 0..m {
                acc = &acc * &z;
            }
            assert_eq!(acc, CycInt::one(&f), "m = {m}");
            // Σ_k ζ^k = 0 for m > 1
            let total = Cyclotomic::<i64>::from_exponent_counts(&f, &vec![1; m as usize]);
            assert_eq!(total.is_zero(), m > 1);
            assert_eq!(&z.conj() * &z, CycInt::one(&f));
        }
    }

    #[test]
    fn ring_laws_on_samples() {
        let f = CycloField::get(12);
        let a: CycRat = Cyclotomic::from_exponent_counts(&f, &[1, 2, 0, -1, 0, 0, 3]).to_rational();
        let b: CycRat = Cyclotomic::from_exponent_counts(&f, &[0, 0, 5, 0, 0, 1]).to_rational();
        let c: CycRat = Cyclotomic::zeta_pow(&f, 7);
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        assert_eq!(&a * &b, &b * &a);
        assert!((&a - &a).is_zero());
        assert_eq!((&a * &b).galois(5), &a.galois(5) * &b.galois(5));
        let half = CycRat::from_scalar(&f, Rational64::new(1, 2));
        assert_eq!((&half * &CycRat::from_scalar(&f, 2.into())).to_scalar(), Some(1.into()));
        assert!((&half + &half).is_one());
    }
}

//! Exact arithmetic in `F_{ell^r}`.
//!
//! A [`FieldSpec`] is a cheap, shareable handle to the field context:
//! characteristic, degree, the canonical modulus and the log/antilog tables
//! that back multiplication. Elements are raw codes ([`Elem`]) interpreted
//! relative to a spec; [`FieldElement`] pairs a code with its spec for
//! self-describing use at API boundaries.
//!
//! The canonical modulus for `(ell, r)` is the lexicographically least monic
//! irreducible polynomial of degree `r`, comparing coefficient sequences with
//! the constant term first. Codes follow the same ordering: the code of
//! `c_0 + c_1 x + ... + c_{r-1} x^{r-1}` is `c_0 ell^{r-1} + ... + c_{r-1}`,
//! so numeric order on codes is the canonical element order.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::numth;

/// An element of some field, as a canonical code in `[0, ell^r)`.
pub type Elem = u32;

/// Largest field order with tabulated arithmetic.
pub const MAX_FIELD_ORDER: u64 = 1_000_000;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field degree must be at least 1")]
    InvalidDegree,
    #[error("field of order {ell}^{degree} exceeds the supported size {MAX_FIELD_ORDER}")]
    FieldTooLarge { ell: u64, degree: u32 },
    #[error("discrete logarithm of zero")]
    ZeroArgument,
    #[error("element is not a generator of the multiplicative group")]
    NotGenerator,
    #[error("no embedding of F_{small_ell}^{small_degree} into F_{big_ell}^{big_degree}")]
    NoEmbedding {
        small_ell: u32,
        small_degree: u32,
        big_ell: u32,
        big_degree: u32,
    },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("invalid coefficient vector: {0}")]
    InvalidCoefficients(String),
}

struct FieldInner {
    ell: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    generator: Elem,
    one: Elem,
    /// `place[i] = ell^(r-1-i)`, the code weight of coefficient `i`.
    place: Vec<u32>,
    /// `exp[k] = g^k` for `k < 2(q-1)`, doubled to skip a reduction.
    exp: Vec<Elem>,
    log: Vec<u32>,
    neg: Vec<Elem>,
    /// Zech logarithms `log(1 + g^k)`; empty for prime fields.
    zech: Vec<u32>,
}

/// Handle to the finite field `F_{ell^r}` with its canonical modulus.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<FieldInner>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.ell == other.inner.ell && self.inner.degree == other.inner.degree)
    }
}
impl Eq for FieldSpec {}

impl Hash for FieldSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.inner.ell.hash(state);
        self.inner.degree.hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 1 {
            write!(f, "F_{}", self.ell())
        } else {
            write!(f, "F_{}^{}", self.ell(), self.degree())
        }
    }
}

fn registry() -> &'static Mutex<HashMap<(u32, u32), FieldSpec>> {
    static REGISTRY: OnceLock<Mutex<HashMap<(u32, u32), FieldSpec>>> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds (or fetches) the canonical spec for `F_{ell^degree}`.
pub fn field_make(ell: u64, degree: u32) -> Result<FieldSpec, FieldError> {
    FieldSpec::new(ell, degree)
}

impl FieldSpec {
    pub fn new(ell: u64, degree: u32) -> Result<Self, FieldError> {
        if !numth::is_prime(ell) {
            return Err(FieldError::NotPrime(ell));
        }
        if degree == 0 {
            return Err(FieldError::InvalidDegree);
        }
        let order = ell
            .checked_pow(degree)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(FieldError::FieldTooLarge { ell, degree })?;
        let key = (ell as u32, degree);
        if let Some(spec) = registry().lock().unwrap().get(&key) {
            return Ok(spec.clone());
        }
        let spec = FieldSpec {
            inner: Arc::new(build(ell as u32, degree, order as u32)),
        };
        // another thread may have raced us; keep the first one registered
        let mut reg = registry().lock().unwrap();
        Ok(reg.entry(key).or_insert(spec).clone())
    }

    pub fn ell(&self) -> u32 {
        self.inner.ell
    }

    pub fn degree(&self) -> u32 {
        self.inner.degree
    }

    /// Number of elements `ell^degree`.
    pub fn order(&self) -> u32 {
        self.inner.order
    }

    /// Monic modulus, constant term first. Prime fields use `x`.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        self.inner.one
    }

    /// The canonical multiplicative generator.
    pub fn generator(&self) -> Elem {
        self.inner.generator
    }

    /// Image of an integer under `Z -> F_ell -> F_{ell^r}`.
    pub fn from_int(&self, k: i64) -> Elem {
        let ell = self.inner.ell as i64;
        k.rem_euclid(ell) as u32 * self.inner.place[0]
    }

    /// Prime-field elements as integers in `[0, ell)`, `None` otherwise.
    pub fn to_prime_int(&self, a: Elem) -> Option<u32> {
        let p0 = self.inner.place[0];
        (a % p0 == 0).then_some(a / p0)
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let ell = self.inner.ell;
        self.inner.place.iter().map(|&w| (a / w) % ell).collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem, FieldError> {
        if coeffs.len() != self.inner.degree as usize {
            return Err(FieldError::InvalidCoefficients(format!(
                "expected {} coefficients, got {}",
                self.inner.degree,
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.inner.ell) {
            return Err(FieldError::InvalidCoefficients(format!(
                "coefficient {c} not reduced mod {}",
                self.inner.ell
            )));
        }
        Ok(coeffs
            .iter()
            .zip(&self.inner.place)
            .map(|(&c, &w)| c * w)
            .sum())
    }

    pub fn element(&self, a: Elem) -> FieldElement {
        debug_assert!(a < self.order());
        FieldElement {
            field: self.clone(),
            code: a,
        }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.inner;
        if inner.degree == 1 {
            let s = a + b;
            return if s >= inner.ell { s - inner.ell } else { s };
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let q1 = inner.order - 1;
        let la = inner.log[a as usize];
        let lb = inner.log[b as usize];
        let k = if lb >= la { lb - la } else { lb + q1 - la };
        match inner.zech[k as usize] {
            NO_LOG => 0,
            z => inner.exp[(la + z) as usize],
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.inner.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.inner;
        if inner.degree == 1 {
            return ((a as u64 * b as u64) % inner.ell as u64) as u32;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        inner.exp[(inner.log[a as usize] + inner.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let inner = &*self.inner;
        let q1 = inner.order - 1;
        let la = inner.log[a as usize];
        Some(inner.exp[((q1 - la) % q1.max(1)) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        if k == 0 {
            return self.one();
        }
        if a == 0 {
            return 0;
        }
        let q1 = (self.order() - 1) as u64;
        let e = (self.inner.log[a as usize] as u64 * (k % q1)) % q1;
        self.inner.exp[e as usize]
    }

    /// `g^k` for the canonical generator, any integer `k`.
    pub fn gen_pow(&self, k: i64) -> Elem {
        let q1 = (self.order() - 1) as i64;
        self.inner.exp[k.rem_euclid(q1) as usize]
    }

    /// Logarithm to the canonical generator.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.inner.log[a as usize])
    }

    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.ell() as u64)
    }

    pub fn multiplicative_order(&self, a: Elem) -> Option<u64> {
        let l = self.log(a)? as u64;
        let q1 = (self.order() - 1) as u64;
        Some(q1 / num_integer::gcd(l, q1))
    }

    /// Whether `a` lies in the subfield of order `ell^d` (requires `d | degree`).
    pub fn in_subfield(&self, a: Elem, d: u32) -> bool {
        self.pow(a, (self.ell() as u64).pow(d)) == a
    }
}

/// Builds field tables. Only the slow coefficient-vector arithmetic is used
/// here; everything afterwards goes through the tables.
fn build(ell: u32, degree: u32, order: u32) -> FieldInner {
    let r = degree as usize;
    let place: Vec<u32> = (0..r).map(|i| ell.pow((r - 1 - i) as u32)).collect();
    let modulus = if degree == 1 {
        vec![0, 1]
    } else {
        canonical_modulus(ell, degree)
    };
    let to_code = |c: &[u32]| -> u32 { c.iter().zip(&place).map(|(&c, &w)| c * w).sum() };
    let from_code = |a: u32| -> Vec<u32> { place.iter().map(|&w| (a / w) % ell).collect() };
    let slow_mul = |a: u32, b: u32| -> u32 {
        if degree == 1 {
            ((a as u64 * b as u64) % ell as u64) as u32
        } else {
            let p = poly::mul_mod(&from_code(a), &from_code(b), &modulus, ell);
            let mut c = p;
            c.resize(r, 0);
            to_code(&c)
        }
    };
    let slow_pow = |a: u32, mut k: u64| -> u32 {
        let mut base = a;
        let mut acc = to_code(&{
            let mut one = vec![0; r];
            one[0] = 1;
            one
        });
        while k > 0 {
            if k & 1 == 1 {
                acc = slow_mul(acc, base);
            }
            base = slow_mul(base, base);
            k >>= 1;
        }
        acc
    };
    let one = place[0];
    let q1 = (order - 1) as u64;
    let factors = numth::prime_divisors(q1);
    let generator = (1..order)
        .find(|&a| factors.iter().all(|&p| slow_pow(a, q1 / p) != one))
        .expect("a finite field has a cyclic unit group");

    let mut exp = vec![0u32; 2 * q1 as usize];
    let mut log = vec![NO_LOG; order as usize];
    let mut x = one;
    for k in 0..q1 as usize {
        exp[k] = x;
        exp[k + q1 as usize] = x;
        log[x as usize] = k as u32;
        x = slow_mul(x, generator);
    }
    if q1 == 0 {
        exp = vec![one, one];
    }
    if order == 2 {
        log[1] = 0;
    }

    let neg: Vec<u32> = (0..order)
        .map(|a| {
            let c: Vec<u32> = from_code(a).iter().map(|&c| (ell - c) % ell).collect();
            to_code(&c)
        })
        .collect();

    let zech = if degree == 1 {
        Vec::new()
    } else {
        (0..q1 as usize)
            .map(|k| {
                let mut c = from_code(exp[k]);
                c[0] = (c[0] + 1) % ell;
                let s = to_code(&c);
                if s == 0 {
                    NO_LOG
                } else {
                    log[s as usize]
                }
            })
            .collect()
    };

    FieldInner {
        ell,
        degree,
        order,
        modulus,
        generator,
        one,
        place,
        exp,
        log,
        neg,
        zech,
    }
}

/// Lexicographically least monic irreducible of the given degree,
/// comparing coefficients constant term first.
fn canonical_modulus(ell: u32, degree: u32) -> Vec<u32> {
    let r = degree as usize;
    let count = (ell as u64).pow(degree);
    (0..count)
        .map(|idx| {
            // idx enumerates (c_0, ..., c_{r-1}) with c_0 most significant
            let mut c = vec![0u32; r + 1];
            let mut t = idx;
            for i in (0..r).rev() {
                c[i] = (t % ell as u64) as u32;
                t /= ell as u64;
            }
            c[r] = 1;
            c
        })
        .find(|f| poly::is_irreducible(f, ell))
        .expect("irreducible polynomials exist in every degree")
}

/// Dense polynomials over `F_ell`, constant term first.
pub(crate) mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv_mod(a: u32, ell: u32) -> u32 {
        crate::numth::pow_mod(a as u64, ell as u64 - 2, ell as u64) as u32
    }

    pub fn rem(a: &[u32], f: &[u32], ell: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut f = f.to_vec();
        trim(&mut a);
        trim(&mut f);
        let df = f.len() - 1;
        let lead_inv = inv_mod(f[df], ell) as u64;
        while a.len() > df {
            let top = a.len() - 1;
            let c = (a[top] as u64 * lead_inv) % ell as u64;
            if c != 0 {
                for i in 0..=df {
                    let sub = (c * f[i] as u64) % ell as u64;
                    let slot = &mut a[top - df + i];
                    *slot = ((*slot as u64 + ell as u64 - sub) % ell as u64) as u32;
                }
            }
            a.pop();
            trim(&mut a);
        }
        a
    }

    pub fn mul(a: &[u32], b: &[u32], ell: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % ell as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|x| x as u32).collect();
        trim(&mut out);
        out
    }

    pub fn mul_mod(a: &[u32], b: &[u32], f: &[u32], ell: u32) -> Vec<u32> {
        rem(&mul(a, b, ell), f, ell)
    }

    pub fn sub(a: &[u32], b: &[u32], ell: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out: Vec<u32> = (0..n)
            .map(|i| {
                let x = *a.get(i).unwrap_or(&0);
                let y = *b.get(i).unwrap_or(&0);
                (x + ell - y) % ell
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn gcd(a: &[u32], b: &[u32], ell: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, ell);
            a = b;
            b = r;
        }
        a
    }

    fn pow_mod(base: &[u32], mut k: u64, f: &[u32], ell: u32) -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut b = rem(base, f, ell);
        while k > 0 {
            if k & 1 == 1 {
                acc = mul_mod(&acc, &b, f, ell);
            }
            b = mul_mod(&b, &b, f, ell);
            k >>= 1;
        }
        acc
    }

    /// Ben-Or: `f` of degree `r` is irreducible iff
    /// `gcd(f, x^(ell^i) - x) = 1` for `i = 1..=r/2`.
    pub fn is_irreducible(f: &[u32], ell: u32) -> bool {
        let mut f = f.to_vec();
        trim(&mut f);
        let r = f.len().saturating_sub(1);
        if r == 0 {
            return false;
        }
        if r == 1 {
            return true;
        }
        let x = vec![0u32, 1];
        let mut h = x.clone();
        for _ in 1..=r / 2 {
            h = pow_mod(&h, ell as u64, &f, ell);
            let g = gcd(&f, &sub(&h, &x, ell), ell);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

/// A field element that carries its field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FieldSpec,
    code: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.coeffs(), self.field)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs().serialize(s)
    }
}

impl FieldElement {
    pub fn new(field: &FieldSpec, code: Elem) -> Result<Self, FieldError> {
        if code >= field.order() {
            return Err(FieldError::InvalidCoefficients(format!(
                "code {code} out of range"
            )));
        }
        Ok(field.element(code))
    }

    pub fn from_coeffs(field: &FieldSpec, coeffs: &[u32]) -> Result<Self, FieldError> {
        Ok(field.element(field.from_coeffs(coeffs)?))
    }

    pub fn from_int(field: &FieldSpec, k: i64) -> Self {
        field.element(field.from_int(k))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn code(&self) -> Elem {
        self.code
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn is_one(&self) -> bool {
        self.code == self.field.one()
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(self.field.element(self.field.add(self.code, other.code)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(self.field.element(self.field.sub(self.code, other.code)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(self.field.element(self.field.mul(self.code, other.code)))
    }

    pub fn inv(&self) -> Option<Self> {
        self.field.inv(self.code).map(|c| self.field.element(c))
    }

    pub fn pow(&self, k: u64) -> Self {
        self.field.element(self.field.pow(self.code, k))
    }

    /// `x^ell`.
    pub fn frobenius(&self) -> Self {
        self.field.element(self.field.frobenius(self.code))
    }

    pub fn multiplicative_order(&self) -> Option<u64> {
        self.field.multiplicative_order(self.code)
    }
}

macro_rules! checked_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            /// Panics when the operands live in different fields.
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("mixed-field arithmetic")
            }
        }
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}
checked_binop!(Add, add, try_add);
checked_binop!(Sub, sub, try_sub);
checked_binop!(Mul, mul, try_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.element(self.field.neg(self.code))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// The canonical generator: least element (canonical order) of full order.
pub fn mult_generator(spec: &FieldSpec) -> FieldElement {
    spec.element(spec.generator())
}

/// `k` in `[0, ell^r - 1)` with `g^k = x`.
pub fn discrete_log(x: &FieldElement, g: &FieldElement) -> Result<u64, FieldError> {
    x.same_field(g)?;
    let field = &x.field;
    let q1 = (field.order() - 1) as u64;
    if x.is_zero() {
        return Err(FieldError::ZeroArgument);
    }
    if g.multiplicative_order() != Some(q1) {
        return Err(FieldError::NotGenerator);
    }
    if q1 == 1 {
        return Ok(0);
    }
    let lx = field.log(x.code).unwrap() as u64;
    let lg = field.log(g.code).unwrap() as u64;
    let lg_inv = numth::inv_mod(lg, q1).ok_or(FieldError::NotGenerator)?;
    Ok(numth::mul_mod(lx, lg_inv, q1))
}

pub fn frobenius(x: &FieldElement) -> FieldElement {
    x.frobenius()
}

/// An embedding `F_{ell^s} -> F_{ell^r}` for `s | r`, determined by the
/// image of the small field's polynomial variable.
#[derive(Clone, Debug)]
pub struct Embedding {
    small: FieldSpec,
    big: FieldSpec,
    root: Elem,
    generator_image: Elem,
}

/// Least embedding (by the canonical order of the chosen root).
pub fn subfield_embed(small: &FieldSpec, big: &FieldSpec) -> Result<Embedding, FieldError> {
    if small.ell() != big.ell() || big.degree() % small.degree() != 0 {
        return Err(FieldError::NoEmbedding {
            small_ell: small.ell(),
            small_degree: small.degree(),
            big_ell: big.ell(),
            big_degree: big.degree(),
        });
    }
    let root = if small.degree() == 1 {
        0
    } else {
        let m = small.modulus();
        big.elements()
            .find(|&b| eval_in(big, m, b) == 0)
            .expect("the modulus splits in any extension of matching degree")
    };
    let mut emb = Embedding {
        small: small.clone(),
        big: big.clone(),
        root,
        generator_image: 0,
    };
    emb.generator_image = emb.apply(small.generator());
    Ok(emb)
}

/// Evaluates an `F_ell` polynomial (constant first) at a point of `field`.
fn eval_in(field: &FieldSpec, poly: &[u32], x: Elem) -> Elem {
    poly.iter().rev().fold(0, |acc, &c| {
        field.add(field.mul(acc, x), field.from_int(c as i64))
    })
}

impl Embedding {
    pub fn small(&self) -> &FieldSpec {
        &self.small
    }

    pub fn big(&self) -> &FieldSpec {
        &self.big
    }

    /// Image of the small field's canonical generator.
    pub fn generator_image(&self) -> Elem {
        self.generator_image
    }

    pub fn apply(&self, a: Elem) -> Elem {
        if self.small.degree() == 1 {
            return self.big.from_int(a as i64);
        }
        eval_in(&self.big, &self.small.coeffs(a), self.root)
    }

    pub fn apply_element(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if a.field != self.small {
            return Err(FieldError::FieldMismatch);
        }
        Ok(self.big.element(self.apply(a.code)))
    }

    /// Evaluates through the generator image: `x = g^k` maps to `img^k`.
    pub fn apply_via_generator(&self, a: Elem) -> Elem {
        match self.small.log(a) {
            None => 0,
            Some(k) => self.big.pow(self.generator_image, k as u64),
        }
    }

    /// Composition with the `j`-th power of Frobenius on the big field.
    pub fn frobenius_twist(&self, j: u32) -> Embedding {
        let ell = self.big.ell() as u64;
        let mut root = self.root;
        let mut img = self.generator_image;
        for _ in 0..j {
            root = self.big.pow(root, ell);
            img = self.big.pow(img, ell);
        }
        Embedding {
            small: self.small.clone(),
            big: self.big.clone(),
            root,
            generator_image: img,
        }
    }

    /// All `degree(small)` embeddings.
    pub fn all(&self) -> Vec<Embedding> {
        (0..self.small.degree()).map(|j| self.frobenius_twist(j)).collect()
    }
}

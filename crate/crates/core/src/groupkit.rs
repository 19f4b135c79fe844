//! Finitely generated matrix groups: closure enumeration, transvection
//! harvesting, normal closures and the spinning irreducibility test.

use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use thiserror::Error;

use crate::ffield::{Elem, FieldSpec};
use crate::linalg;
use crate::symplectic::{
    detect_transvection, make_transvection, multiplier_code, SqMatrix, Subspace, SympSpace,
    SymplecticError, TransvectionData, TransvectionKind,
};

pub const DEFAULT_CAP: u64 = 20_000_000;

/// Largest `q^n` for which the exhaustive line scan runs.
pub const EXHAUSTIVE_LIMIT: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group has more than {cap} elements (reached {reached})")]
    CapExceeded { cap: u64, reached: u64 },
    #[error("generator {index} is not an invertible similitude: {source}")]
    BadGenerator {
        index: usize,
        source: SymplecticError,
    },
    #[error("generator {0} acts on a different space")]
    WrongSpace(usize),
    #[error("cap must be at least 1")]
    ZeroCap,
}

/// Bit-packing of a matrix into a fixed-width key.
#[derive(Clone, Copy, Debug)]
pub struct Packer {
    bits: u32,
    len: usize,
}

impl Packer {
    pub fn new(field: &FieldSpec, n: usize) -> Packer {
        let q = field.order();
        let bits = 32 - (q - 1).leading_zeros();
        Packer {
            bits: bits.max(1),
            len: n * n,
        }
    }

    pub fn total_bits(&self) -> u64 {
        self.bits as u64 * self.len as u64
    }
}

pub trait PackedKey: Clone + Eq + Hash + Send + Sync {
    fn pack(p: &Packer, data: &[Elem]) -> Self;
    fn unpack(&self, p: &Packer) -> Vec<Elem>;
}

macro_rules! int_key {
    ($t:ty) => {
        impl PackedKey for $t {
            #[inline]
            fn pack(p: &Packer, data: &[Elem]) -> Self {
                data.iter().fold(0, |acc, &x| (acc << p.bits) | x as $t)
            }
            fn unpack(&self, p: &Packer) -> Vec<Elem> {
                let mask: $t = (1 << p.bits) - 1;
                (0..p.len)
                    .rev()
                    .map(|i| ((self >> (i as u32 * p.bits)) & mask) as Elem)
                    .collect()
            }
        }
    };
}
int_key!(u64);
int_key!(u128);

impl PackedKey for Box<[Elem]> {
    fn pack(_: &Packer, data: &[Elem]) -> Self {
        data.into()
    }
    fn unpack(&self, _: &Packer) -> Vec<Elem> {
        self.to_vec()
    }
}

/// Enumerated elements in breadth-first order with an index.
pub struct Store<K> {
    elements: Vec<K>,
    index: FxHashMap<K, u32>,
}

impl<K: PackedKey> Store<K> {
    fn enumerate(
        field: &FieldSpec,
        n: usize,
        packer: &Packer,
        gens: &[Vec<Elem>],
        cap: u64,
    ) -> Result<Store<K>, GroupError> {
        let id = K::pack(packer, &linalg::identity(field, n));
        let mut elements = vec![id.clone()];
        let mut index = FxHashMap::default();
        index.insert(id, 0u32);
        let mut start = 0;
        while start < elements.len() {
            let end = elements.len();
            let products: Vec<Vec<K>> = elements[start..end]
                .par_iter()
                .map(|k| {
                    let x = k.unpack(packer);
                    let mut out = vec![0; n * n];
                    gens.iter()
                        .map(|g| {
                            linalg::mat_mul_into(field, n, g, &x, &mut out);
                            K::pack(packer, &out)
                        })
                        .collect()
                })
                .collect();
            for k in products.into_iter().flatten() {
                if !index.contains_key(&k) {
                    if elements.len() as u64 >= cap {
                        return Err(GroupError::CapExceeded {
                            cap,
                            reached: elements.len() as u64 + 1,
                        });
                    }
                    index.insert(k.clone(), elements.len() as u32);
                    elements.push(k);
                }
            }
            start = end;
        }
        Ok(Store { elements, index })
    }
}

enum Keys {
    Small(Store<u64>),
    Mid(Store<u128>),
    Wide(Store<Box<[Elem]>>),
}

macro_rules! dispatch {
    ($keys:expr, $s:ident => $body:expr) => {
        match $keys {
            Keys::Small($s) => $body,
            Keys::Mid($s) => $body,
            Keys::Wide($s) => $body,
        }
    };
}

/// The full element set of a matrix group.
pub struct Enumeration {
    space: SympSpace,
    packer: Packer,
    keys: Keys,
}

impl Enumeration {
    pub fn len(&self) -> usize {
        dispatch!(&self.keys, s => s.elements.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Raw entries of the `i`-th element in enumeration order.
    pub fn data(&self, i: usize) -> Vec<Elem> {
        dispatch!(&self.keys, s => s.elements[i].unpack(&self.packer))
    }

    pub fn matrix(&self, i: usize) -> SqMatrix {
        self.space.matrix(self.data(i)).expect("stored element")
    }

    pub fn index_of_data(&self, data: &[Elem]) -> Option<usize> {
        let p = &self.packer;
        match &self.keys {
            Keys::Small(s) => s.index.get(&u64::pack(p, data)).map(|&i| i as usize),
            Keys::Mid(s) => s.index.get(&u128::pack(p, data)).map(|&i| i as usize),
            Keys::Wide(s) => s.index.get(&Box::<[Elem]>::pack(p, data)).map(|&i| i as usize),
        }
    }

    pub fn index_of(&self, a: &SqMatrix) -> Option<usize> {
        self.index_of_data(a.data())
    }

    pub fn contains(&self, a: &SqMatrix) -> bool {
        self.index_of(a).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = SqMatrix> + '_ {
        (0..self.len()).map(|i| self.matrix(i))
    }

    pub fn par_map<T: Send, F>(&self, f: F) -> Vec<T>
    where
        F: Fn(usize, Vec<Elem>) -> T + Sync + Send,
    {
        (0..self.len())
            .into_par_iter()
            .map(|i| f(i, self.data(i)))
            .collect()
    }
}

/// Breadth-first closure of the identity under left multiplication by `gens`.
pub fn enumerate_raw(
    space: &SympSpace,
    gens: &[Vec<Elem>],
    cap: u64,
) -> Result<Enumeration, GroupError> {
    if cap == 0 {
        return Err(GroupError::ZeroCap);
    }
    let field = space.field();
    let n = space.dim();
    let packer = Packer::new(field, n);
    let keys = if packer.total_bits() <= 64 {
        Keys::Small(Store::enumerate(field, n, &packer, gens, cap)?)
    } else if packer.total_bits() <= 128 {
        Keys::Mid(Store::enumerate(field, n, &packer, gens, cap)?)
    } else {
        Keys::Wide(Store::enumerate(field, n, &packer, gens, cap)?)
    };
    Ok(Enumeration {
        space: space.clone(),
        packer,
        keys,
    })
}

/// A finitely generated subgroup of `GSp(V)`.
#[derive(Clone)]
pub struct MatrixGroup {
    space: SympSpace,
    generators: Vec<SqMatrix>,
    cache: Arc<OnceLock<Arc<Enumeration>>>,
}

impl std::fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MatrixGroup")
            .field("space", &self.space)
            .field("generators", &self.generators)
            .finish()
    }
}

impl MatrixGroup {
    /// Validates that every generator is an invertible similitude of the form.
    /// An empty list yields the trivial group generated by the identity.
    pub fn new(space: &SympSpace, generators: Vec<SqMatrix>) -> Result<MatrixGroup, GroupError> {
        for (i, g) in generators.iter().enumerate() {
            if g.space() != space {
                return Err(GroupError::WrongSpace(i));
            }
            multiplier_code(g).map_err(|source| GroupError::BadGenerator { index: i, source })?;
        }
        let generators = if generators.is_empty() {
            vec![space.identity()]
        } else {
            generators
        };
        Ok(MatrixGroup {
            space: space.clone(),
            generators,
            cache: Arc::new(OnceLock::new()),
        })
    }

    pub fn space(&self) -> &SympSpace {
        &self.space
    }

    pub fn field(&self) -> &FieldSpec {
        self.space.field()
    }

    pub fn generators(&self) -> &[SqMatrix] {
        &self.generators
    }

    pub fn is_enumerated(&self) -> bool {
        self.cache.get().is_some()
    }

    /// The element set, computed once and cached.
    pub fn enumerate(&self, cap: u64) -> Result<Arc<Enumeration>, GroupError> {
        if let Some(e) = self.cache.get() {
            if e.len() as u64 > cap {
                return Err(GroupError::CapExceeded {
                    cap,
                    reached: cap + 1,
                });
            }
            return Ok(e.clone());
        }
        let gens: Vec<Vec<Elem>> = self.generators.iter().map(|g| g.data().to_vec()).collect();
        let e = Arc::new(enumerate_raw(&self.space, &gens, cap)?);
        Ok(self.cache.get_or_init(|| e).clone())
    }

    /// Conjugate group `A G A^{-1}`.
    pub fn conjugate_by(&self, a: &SqMatrix) -> Result<MatrixGroup, GroupError> {
        let ainv = a.inverse().ok_or(GroupError::BadGenerator {
            index: 0,
            source: SymplecticError::Singular,
        })?;
        let gens = self.generators.iter().map(|g| &(a * g) * &ainv).collect();
        MatrixGroup::new(&self.space, gens)
    }
}

pub fn closure_enumerate(g: &MatrixGroup, cap: u64) -> Result<Arc<Enumeration>, GroupError> {
    g.enumerate(cap)
}

pub fn group_order(g: &MatrixGroup, cap: u64) -> Result<u64, GroupError> {
    Ok(g.enumerate(cap)?.len() as u64)
}

/// All nontrivial transvections in `G`, in enumeration order.
pub fn harvest_transvections(
    g: &MatrixGroup,
    cap: u64,
) -> Result<Vec<(SqMatrix, TransvectionData)>, GroupError> {
    let e = g.enumerate(cap)?;
    let space = g.space().clone();
    let found = e.par_map(|_, data| {
        let m = space.matrix(data).unwrap();
        match detect_transvection(&m) {
            TransvectionKind::Nontrivial(d) => Some((m, d)),
            _ => None,
        }
    });
    Ok(found.into_iter().flatten().collect())
}

/// Closure of `seeds` that only keeps a generator when it is not already in
/// the group generated by the previous ones. Returns the group with its cache
/// attached.
pub fn incremental_closure(
    space: &SympSpace,
    seeds: &[SqMatrix],
    cap: u64,
) -> Result<MatrixGroup, GroupError> {
    let mut kept: Vec<SqMatrix> = Vec::new();
    let mut current: Option<Arc<Enumeration>> = None;
    for s in seeds {
        if s.is_identity() || current.as_ref().is_some_and(|e| e.contains(s)) {
            continue;
        }
        kept.push(s.clone());
        let gens: Vec<Vec<Elem>> = kept.iter().map(|g| g.data().to_vec()).collect();
        current = Some(Arc::new(enumerate_raw(space, &gens, cap)?));
    }
    let group = MatrixGroup::new(space, kept)?;
    match current {
        Some(e) => {
            let _ = group.cache.set(e);
        }
        None => {
            group.enumerate(cap)?;
        }
    }
    Ok(group)
}

/// Smallest subgroup containing `seeds` and normalised by `G`'s generators.
pub fn normal_closure(
    g: &MatrixGroup,
    seeds: &[SqMatrix],
    cap: u64,
) -> Result<MatrixGroup, GroupError> {
    let conj: Vec<(SqMatrix, SqMatrix)> = g
        .generators()
        .iter()
        .map(|x| (x.clone(), x.inverse().expect("validated generator")))
        .collect();
    let mut k = incremental_closure(g.space(), seeds, cap)?;
    loop {
        let e = k.enumerate(cap)?;
        let mut extra: Vec<SqMatrix> = Vec::new();
        for s in k.generators() {
            for (x, xinv) in &conj {
                let c = &(x * s) * xinv;
                if !e.contains(&c) && !extra.contains(&c) {
                    extra.push(c);
                }
            }
        }
        if extra.is_empty() {
            return Ok(k);
        }
        let mut all = k.generators().to_vec();
        all.extend(extra);
        k = incremental_closure(g.space(), &all, cap)?;
    }
}

/// Smallest subspace containing `seed` and invariant under `gens`
/// (flat `n x n` matrices over `field`).
pub fn spin_raw(field: &FieldSpec, n: usize, gens: &[Vec<Elem>], seed: &[Elem]) -> Vec<Vec<Elem>> {
    let mut basis: Vec<Vec<Elem>> = Vec::new();
    let mut queue: Vec<Vec<Elem>> = vec![seed.to_vec()];
    while let Some(v) = queue.pop() {
        let mut trial = basis.clone();
        trial.push(v.clone());
        if linalg::rank(field, &trial, n) == basis.len() {
            continue;
        }
        basis.push(v.clone());
        if basis.len() == n {
            break;
        }
        for g in gens {
            queue.push(linalg::mat_vec(field, n, g, &v));
        }
    }
    linalg::rref(field, &mut basis, n);
    basis
}

pub fn spin(gens: &[SqMatrix], seed: &[Elem]) -> Subspace {
    let space = gens[0].space();
    let raw: Vec<Vec<Elem>> = gens.iter().map(|g| g.data().to_vec()).collect();
    Subspace::span(space, &spin_raw(space.field(), space.dim(), &raw, seed))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// Basis (echelon rows) of a proper nonzero invariant subspace.
    Reducible(Vec<Vec<Elem>>),
    /// Every spin filled the space but the space is too large to scan.
    Unverified,
}

fn invariant(field: &FieldSpec, n: usize, gens: &[Vec<Elem>], basis: &[Vec<Elem>]) -> bool {
    let r = basis.len();
    gens.iter().all(|g| {
        basis.iter().all(|b| {
            let mut rows = basis.to_vec();
            rows.push(linalg::mat_vec(field, n, g, b));
            linalg::rank(field, &rows, n) == r
        })
    })
}

/// Irreducibility test on raw generator matrices of size `n x n`.
pub fn irreducibility_raw(
    field: &FieldSpec,
    n: usize,
    gens: &[Vec<Elem>],
    seed: u64,
) -> Irreducibility {
    let proper = |b: &Vec<Vec<Elem>>| !b.is_empty() && b.len() < n;
    let found = |b: Vec<Vec<Elem>>| {
        debug_assert!(invariant(field, n, gens, &b));
        Irreducibility::Reducible(b)
    };
    let q = field.order() as u64;
    let mut seeds: Vec<Vec<Elem>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = field.one();
            v
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 {
        let v: Vec<Elem> = (0..n).map(|_| rng.gen_range(0..q) as Elem).collect();
        if v.iter().any(|&x| x != 0) {
            seeds.push(v);
        }
    }
    for s in &seeds {
        let b = spin_raw(field, n, gens, s);
        if proper(&b) {
            return found(b);
        }
    }
    // a proper invariant subspace of the transposes has a proper invariant annihilator
    let transposed: Vec<Vec<Elem>> = gens.iter().map(|g| linalg::transpose(n, g)).collect();
    for s in &seeds {
        let b = spin_raw(field, n, &transposed, s);
        if proper(&b) {
            let mut ann = linalg::nullspace(field, &b, n);
            linalg::rref(field, &mut ann, n);
            return found(ann);
        }
    }
    let fits = (q as u128)
        .checked_pow(n as u32)
        .is_some_and(|c| c <= EXHAUSTIVE_LIMIT as u128);
    if !fits {
        return Irreducibility::Unverified;
    }
    // every proper invariant subspace contains a line whose spin is proper
    for v in projective_points(field, n) {
        let b = spin_raw(field, n, gens, &v);
        if proper(&b) {
            return found(b);
        }
    }
    Irreducibility::Irreducible
}

/// One representative per line of `F^n`: first nonzero coordinate equal to 1.
pub fn projective_points(field: &FieldSpec, n: usize) -> impl Iterator<Item = Vec<Elem>> + '_ {
    let q = field.order() as u64;
    (0..n).flat_map(move |lead| {
        let tail = n - lead - 1;
        (0..q.pow(tail as u32)).map(move |mut idx| {
            let mut v = vec![0; n];
            v[lead] = field.one();
            for x in v.iter_mut().skip(lead + 1) {
                *x = (idx % q) as Elem;
                idx /= q;
            }
            v
        })
    })
}

pub fn is_irreducible(g: &MatrixGroup) -> IrreducibleResult {
    is_irreducible_seeded(g, 0)
}

/// Verdict of [`is_irreducible`] with the witness as a [`Subspace`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrreducibleResult {
    Irreducible,
    Reducible(Subspace),
    Unverified,
}

impl IrreducibleResult {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, IrreducibleResult::Irreducible)
    }
}

pub fn is_irreducible_seeded(g: &MatrixGroup, seed: u64) -> IrreducibleResult {
    let raw: Vec<Vec<Elem>> = g.generators().iter().map(|x| x.data().to_vec()).collect();
    match irreducibility_raw(g.field(), g.space().dim(), &raw, seed) {
        Irreducibility::Irreducible => IrreducibleResult::Irreducible,
        Irreducibility::Unverified => IrreducibleResult::Unverified,
        Irreducibility::Reducible(b) => IrreducibleResult::Reducible(Subspace::span(g.space(), &b)),
    }
}

/// A pseudo-random similitude: a product of random transvections followed by
/// a random multiplier, which together generate `GSp(V)`.
pub fn random_similitude<R: Rng>(space: &SympSpace, rng: &mut R) -> SqMatrix {
    let f = space.field();
    let n = space.dim();
    let q = f.order();
    let mut a = space.identity();
    for _ in 0..4 * n {
        let v: Vec<Elem> = (0..n).map(|_| rng.gen_range(0..q)).collect();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let lambda = rng.gen_range(1..q);
        a = &make_transvection(space, &v, lambda) * &a;
    }
    let alpha = rng.gen_range(1..q);
    &a * &space.standard_similitude(alpha)
}

/// Distinct elements, keeping first occurrences.
pub fn dedup_matrices(ms: &[SqMatrix]) -> Vec<SqMatrix> {
    let mut seen = FxHashSet::default();
    ms.iter()
        .filter(|m| seen.insert(m.data().to_vec()))
        .cloned()
        .collect()
}

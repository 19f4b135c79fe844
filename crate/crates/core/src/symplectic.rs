//! Symplectic spaces, similitudes and symplectic transvections.
//!
//! The form is `<u, v> = u^T J v` for the Gram matrix `J`; matrices act on
//! column vectors. The transvection with direction `v` and parameter `λ` is
//! `T_v[λ]: u ↦ u + λ <u, v> v`, i.e. the matrix `I + λ v (J v)^T`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Mul;
use std::sync::Arc;

use thiserror::Error;

use crate::ffield::{Elem, FieldElement, FieldSpec};
use crate::linalg;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymplecticError {
    #[error("dimension {0} is not a positive even integer")]
    OddDimension(usize),
    #[error("Gram matrix is not alternating")]
    NotAlternating,
    #[error("Gram matrix is singular")]
    SingularForm,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not a similitude of the form")]
    NotSimilitude,
    #[error("expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("entry out of range for the field")]
    BadEntry,
    #[error("vector has wrong length or lies in another space")]
    BadVector,
}

struct SpaceInner {
    field: FieldSpec,
    n: usize,
    gram: Vec<Elem>,
    standard: bool,
}

/// A symplectic space `(F^n, J)`; cheap to clone.
#[derive(Clone)]
pub struct SympSpace {
    inner: Arc<SpaceInner>,
}

impl PartialEq for SympSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.field == other.inner.field
                && self.inner.n == other.inner.n
                && self.inner.gram == other.inner.gram)
    }
}
impl Eq for SympSpace {}

impl fmt::Debug for SympSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SympSpace({:?}^{}", self.field(), self.dim())?;
        if !self.inner.standard {
            write!(f, ", gram={:?}", self.inner.gram)?;
        }
        write!(f, ")")
    }
}

/// Standard Gram matrix: `<e_i, e_{i+n/2}> = 1`.
pub fn standard_gram(field: &FieldSpec, n: usize) -> Vec<Elem> {
    let m = n / 2;
    let mut g = vec![0; n * n];
    for i in 0..m {
        g[i * n + i + m] = field.one();
        g[(i + m) * n + i] = field.neg(field.one());
    }
    g
}

impl SympSpace {
    pub fn standard(field: &FieldSpec, n: usize) -> Result<Self, SymplecticError> {
        if n == 0 || n % 2 == 1 {
            return Err(SymplecticError::OddDimension(n));
        }
        Ok(SympSpace {
            inner: Arc::new(SpaceInner {
                field: field.clone(),
                n,
                gram: standard_gram(field, n),
                standard: true,
            }),
        })
    }

    pub fn with_gram(field: &FieldSpec, n: usize, gram: Vec<Elem>) -> Result<Self, SymplecticError> {
        if n == 0 || n % 2 == 1 {
            return Err(SymplecticError::OddDimension(n));
        }
        if gram.len() != n * n {
            return Err(SymplecticError::Shape {
                expected: n * n,
                got: gram.len(),
            });
        }
        if gram.iter().any(|&x| x >= field.order()) {
            return Err(SymplecticError::BadEntry);
        }
        for i in 0..n {
            if gram[i * n + i] != 0 {
                return Err(SymplecticError::NotAlternating);
            }
            for j in 0..i {
                if gram[i * n + j] != field.neg(gram[j * n + i]) {
                    return Err(SymplecticError::NotAlternating);
                }
            }
        }
        if linalg::rank_square(field, n, &gram) < n {
            return Err(SymplecticError::SingularForm);
        }
        let standard = gram == standard_gram(field, n);
        Ok(SympSpace {
            inner: Arc::new(SpaceInner {
                field: field.clone(),
                n,
                gram,
                standard,
            }),
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.inner.field
    }

    pub fn dim(&self) -> usize {
        self.inner.n
    }

    pub fn gram(&self) -> &[Elem] {
        &self.inner.gram
    }

    pub fn is_standard(&self) -> bool {
        self.inner.standard
    }

    /// `<u, v>`.
    pub fn form(&self, u: &[Elem], v: &[Elem]) -> Elem {
        let f = self.field();
        let jv = linalg::mat_vec(f, self.dim(), self.gram(), v);
        linalg::dot(f, u, &jv)
    }

    /// Standard basis vector `e_i`.
    pub fn basis_vector(&self, i: usize) -> Vec<Elem> {
        let mut v = vec![0; self.dim()];
        v[i] = self.field().one();
        v
    }

    pub fn identity(&self) -> SqMatrix {
        SqMatrix {
            space: self.clone(),
            data: linalg::identity(self.field(), self.dim()),
        }
    }

    /// Matrix from row-major codes.
    pub fn matrix(&self, data: Vec<Elem>) -> Result<SqMatrix, SymplecticError> {
        let n = self.dim();
        if data.len() != n * n {
            return Err(SymplecticError::Shape {
                expected: n * n,
                got: data.len(),
            });
        }
        if data.iter().any(|&x| x >= self.field().order()) {
            return Err(SymplecticError::BadEntry);
        }
        Ok(SqMatrix {
            space: self.clone(),
            data,
        })
    }

    /// Matrix from small integers (reduced into the prime field).
    pub fn matrix_from_ints(&self, rows: &[&[i64]]) -> Result<SqMatrix, SymplecticError> {
        let f = self.field();
        self.matrix(rows.iter().flat_map(|r| r.iter().map(|&x| f.from_int(x))).collect())
    }

    /// `diag(1, ..., 1, α, ..., α)`, a similitude of the standard form with multiplier `α`.
    pub fn standard_similitude(&self, alpha: Elem) -> SqMatrix {
        let n = self.dim();
        let mut m = self.identity();
        for i in n / 2..n {
            m.data[i * n + i] = alpha;
        }
        m
    }
}

/// A square matrix acting on a symplectic space.
#[derive(Clone)]
pub struct SqMatrix {
    space: SympSpace,
    data: Vec<Elem>,
}

impl PartialEq for SqMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.data == other.data && self.space == other.space
    }
}
impl Eq for SqMatrix {}

impl Hash for SqMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.data.hash(state);
    }
}

impl fmt::Debug for SqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        let field = self.field();
        let rows: Vec<Vec<Vec<u32>>> = (0..n)
            .map(|i| (0..n).map(|j| field.coeffs(self.data[i * n + j])).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

impl SqMatrix {
    pub fn space(&self) -> &SympSpace {
        &self.space
    }

    pub fn field(&self) -> &FieldSpec {
        self.space.field()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Elem> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.dim() + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> FieldElement {
        self.field().element(self.get(i, j))
    }

    pub fn is_identity(&self) -> bool {
        self.data == linalg::identity(self.field(), self.dim())
    }

    pub fn apply(&self, v: &[Elem]) -> Vec<Elem> {
        linalg::mat_vec(self.field(), self.dim(), &self.data, v)
    }

    pub fn try_mul(&self, other: &SqMatrix) -> Result<SqMatrix, SymplecticError> {
        if self.space != other.space {
            return Err(SymplecticError::BadVector);
        }
        Ok(SqMatrix {
            space: self.space.clone(),
            data: linalg::mat_mul(self.field(), self.dim(), &self.data, &other.data),
        })
    }

    pub fn inverse(&self) -> Option<SqMatrix> {
        linalg::inverse(self.field(), self.dim(), &self.data).map(|data| SqMatrix {
            space: self.space.clone(),
            data,
        })
    }

    pub fn det(&self) -> Elem {
        linalg::det(self.field(), self.dim(), &self.data)
    }

    pub fn trace(&self) -> Elem {
        linalg::trace(self.field(), self.dim(), &self.data)
    }

    pub fn rank(&self) -> usize {
        linalg::rank_square(self.field(), self.dim(), &self.data)
    }

    pub fn transpose(&self) -> SqMatrix {
        SqMatrix {
            space: self.space.clone(),
            data: linalg::transpose(self.dim(), &self.data),
        }
    }

    pub fn scale(&self, c: Elem) -> SqMatrix {
        let f = self.field();
        SqMatrix {
            space: self.space.clone(),
            data: self.data.iter().map(|&x| f.mul(c, x)).collect(),
        }
    }

    pub fn pow(&self, mut k: u64) -> SqMatrix {
        let mut acc = self.space.identity();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// `self - I`.
    pub fn minus_identity(&self) -> Vec<Elem> {
        let f = self.field();
        let n = self.dim();
        let mut d = self.data.clone();
        for i in 0..n {
            d[i * n + i] = f.sub(d[i * n + i], f.one());
        }
        d
    }

    /// `A B A^{-1}`.
    pub fn conjugate(&self, b: &SqMatrix) -> Option<SqMatrix> {
        Some(&(self * b) * &self.inverse()?)
    }

    /// Same entries, reinterpreted in another space over the same field.
    pub fn in_space(&self, space: &SympSpace) -> Result<SqMatrix, SymplecticError> {
        if space.field() != self.field() || space.dim() != self.dim() {
            return Err(SymplecticError::BadVector);
        }
        Ok(SqMatrix {
            space: space.clone(),
            data: self.data.clone(),
        })
    }
}

impl Mul<&SqMatrix> for &SqMatrix {
    type Output = SqMatrix;
    /// Panics if the operands act on different spaces.
    fn mul(self, rhs: &SqMatrix) -> SqMatrix {
        self.try_mul(rhs).expect("matrices act on different spaces")
    }
}

/// The scalar `α` with `A^T J A = α J`.
pub fn multiplier_of(a: &SqMatrix) -> Result<FieldElement, SymplecticError> {
    multiplier_code(a).map(|c| a.field().element(c))
}

pub(crate) fn multiplier_code(a: &SqMatrix) -> Result<Elem, SymplecticError> {
    let f = a.field();
    let n = a.dim();
    if a.rank() < n {
        return Err(SymplecticError::Singular);
    }
    let j = a.space.gram();
    let at = linalg::transpose(n, &a.data);
    let m = linalg::mat_mul(f, n, &linalg::mat_mul(f, n, &at, j), &a.data);
    let k = j.iter().position(|&x| x != 0).expect("nonsingular form");
    let alpha = f.div(m[k], j[k]).unwrap();
    let scaled: Vec<Elem> = j.iter().map(|&x| f.mul(alpha, x)).collect();
    if scaled == m {
        Ok(alpha)
    } else {
        Err(SymplecticError::NotSimilitude)
    }
}

/// The matrix of `T_v[λ]`.
pub fn make_transvection(space: &SympSpace, v: &[Elem], lambda: Elem) -> SqMatrix {
    let f = space.field();
    let n = space.dim();
    assert_eq!(v.len(), n, "direction vector has wrong length");
    let jv = linalg::mat_vec(f, n, space.gram(), v);
    let mut data = linalg::identity(f, n);
    for i in 0..n {
        let c = f.mul(lambda, v[i]);
        if c == 0 {
            continue;
        }
        for k in 0..n {
            data[i * n + k] = f.add(data[i * n + k], f.mul(c, jv[k]));
        }
    }
    SqMatrix {
        space: space.clone(),
        data,
    }
}

/// Direction and parameter of a symplectic transvection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransvectionData {
    /// Scaled so that its first nonzero coordinate is 1.
    pub direction: Vec<Elem>,
    pub parameter: Elem,
}

impl TransvectionData {
    pub fn to_matrix(&self, space: &SympSpace) -> SqMatrix {
        make_transvection(space, &self.direction, self.parameter)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransvectionKind {
    Trivial,
    Nontrivial(TransvectionData),
    NotTransvection,
}

pub fn detect_transvection(a: &SqMatrix) -> TransvectionKind {
    let f = a.field();
    let n = a.dim();
    let d = a.minus_identity();
    let Some(first) = d.iter().position(|&x| x != 0) else {
        return TransvectionKind::Trivial;
    };
    // image of A - I is spanned by its first nonzero column
    let col = first % n;
    let w: Vec<Elem> = (0..n).map(|i| d[i * n + col]).collect();
    let lead = w.iter().position(|&x| x != 0).unwrap();
    let inv = f.inv(w[lead]).unwrap();
    let v: Vec<Elem> = w.iter().map(|&x| f.mul(inv, x)).collect();
    let jv = linalg::mat_vec(f, n, a.space.gram(), &v);
    let Some(k) = jv.iter().position(|&x| x != 0) else {
        return TransvectionKind::NotTransvection;
    };
    // row `lead` of D equals λ (Jv)^T since v[lead] = 1
    let lambda = f.div(d[lead * n + k], jv[k]).unwrap();
    if lambda == 0 {
        return TransvectionKind::NotTransvection;
    }
    for i in 0..n {
        let c = f.mul(lambda, v[i]);
        for j in 0..n {
            if d[i * n + j] != f.mul(c, jv[j]) {
                return TransvectionKind::NotTransvection;
            }
        }
    }
    TransvectionKind::Nontrivial(TransvectionData {
        direction: v,
        parameter: lambda,
    })
}

/// A subspace stored by its reduced row echelon basis.
#[derive(Clone)]
pub struct Subspace {
    space: SympSpace,
    basis: Vec<Vec<Elem>>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.space == other.space
    }
}
impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.basis.hash(state);
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.space.field();
        let rows: Vec<Vec<Vec<u32>>> = self
            .basis
            .iter()
            .map(|r| r.iter().map(|&x| field.coeffs(x)).collect())
            .collect();
        write!(f, "span{rows:?}")
    }
}

impl Subspace {
    pub fn span(space: &SympSpace, vectors: &[Vec<Elem>]) -> Subspace {
        let mut rows: Vec<Vec<Elem>> = vectors.to_vec();
        for r in &rows {
            assert_eq!(r.len(), space.dim(), "vector has wrong length");
        }
        linalg::rref(space.field(), &mut rows, space.dim());
        Subspace {
            space: space.clone(),
            basis: rows,
        }
    }

    pub fn zero(space: &SympSpace) -> Subspace {
        Subspace {
            space: space.clone(),
            basis: Vec::new(),
        }
    }

    pub fn whole(space: &SympSpace) -> Subspace {
        let vs: Vec<Vec<Elem>> = (0..space.dim()).map(|i| space.basis_vector(i)).collect();
        Subspace::span(space, &vs)
    }

    pub fn space(&self) -> &SympSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Echelon basis rows.
    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.dim() == self.space.dim()
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        linalg::rank(self.space.field(), &rows, self.space.dim()) == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(&self.space, &vs)
    }

    /// `A U`.
    pub fn image(&self, a: &SqMatrix) -> Subspace {
        let vs: Vec<Vec<Elem>> = self.basis.iter().map(|v| a.apply(v)).collect();
        Subspace::span(&self.space, &vs)
    }

    pub fn perp(&self) -> Subspace {
        perp(self)
    }

    pub fn is_nonsingular(&self) -> bool {
        is_nonsingular_subspace(self)
    }

    /// Whether `<u, w> = 0` for all `u` in self and `w` in other.
    pub fn is_orthogonal_to(&self, other: &Subspace) -> bool {
        self.basis
            .iter()
            .all(|u| other.basis.iter().all(|w| self.space.form(u, w) == 0))
    }

    /// Coordinates of `v` in the echelon basis; `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        let f = self.space.field();
        // the echelon basis has a pivot 1 in each row, so coordinates are the
        // entries of v at pivot columns
        let coords: Vec<Elem> = self
            .basis
            .iter()
            .map(|row| v[row.iter().position(|&x| x != 0).unwrap()])
            .collect();
        let mut recon = vec![0; self.space.dim()];
        for (c, row) in coords.iter().zip(&self.basis) {
            recon = linalg::add_vec(f, &recon, &linalg::scale_vec(f, *c, row));
        }
        (recon == v).then_some(coords)
    }

    /// The `m x m` matrix of `a` restricted to this (invariant) subspace,
    /// acting on coordinate columns.
    pub fn restrict(&self, a: &SqMatrix) -> Option<Vec<Elem>> {
        let m = self.dim();
        let mut out = vec![0; m * m];
        for (j, b) in self.basis.iter().enumerate() {
            let coords = self.coordinates(&a.apply(b))?;
            for i in 0..m {
                out[i * m + j] = coords[i];
            }
        }
        Some(out)
    }

    /// Gram matrix of the restricted form on the echelon basis.
    pub fn restricted_gram(&self) -> Vec<Elem> {
        let m = self.dim();
        let mut g = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                g[i * m + j] = self.space.form(&self.basis[i], &self.basis[j]);
            }
        }
        g
    }

    /// Every subspace of the ambient space, by enumerating echelon forms.
    /// Intended for small exhaustive checks.
    pub fn enumerate_all(space: &SympSpace) -> Vec<Subspace> {
        let n = space.dim();
        let q = space.field().order();
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let pivots: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            // free slots: (row r, column c) with c > pivot r and c not a pivot
            let slots: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &p)| {
                    let pivots = &pivots;
                    (p + 1..n).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
                })
                .collect();
            let total = (q as u64).pow(slots.len() as u32);
            for mut idx in 0..total {
                let mut rows: Vec<Vec<Elem>> = pivots
                    .iter()
                    .map(|&p| {
                        let mut r = vec![0; n];
                        r[p] = space.field().one();
                        r
                    })
                    .collect();
                for &(r, c) in &slots {
                    rows[r][c] = (idx % q as u64) as Elem;
                    idx /= q as u64;
                }
                out.push(Subspace {
                    space: space.clone(),
                    basis: rows,
                });
            }
        }
        out
    }
}

/// `U^⊥ = {x : <x, u> = 0 for all u in U}`.
pub fn perp(u: &Subspace) -> Subspace {
    let space = &u.space;
    let f = space.field();
    let n = space.dim();
    // <x, u> = x^T (J u): one linear condition per basis vector
    let rows: Vec<Vec<Elem>> = u
        .basis
        .iter()
        .map(|b| linalg::mat_vec(f, n, space.gram(), b))
        .collect();
    let ns = if rows.is_empty() {
        (0..n).map(|i| space.basis_vector(i)).collect()
    } else {
        linalg::nullspace(f, &rows, n)
    };
    Subspace::span(space, &ns)
}

pub fn is_nonsingular_subspace(u: &Subspace) -> bool {
    let m = u.dim();
    linalg::rank_square(u.space.field(), m, &u.restricted_gram()) == m
}

/// Whether `A U = U`.
pub fn stabilizes(a: &SqMatrix, u: &Subspace) -> bool {
    u.image(a) == *u
}

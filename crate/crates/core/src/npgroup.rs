//! `(n, p)`-groups: the prime search, the order-`2p` character `χ_q`, and the
//! monomial group `⟨D, F⟩` of the induced representation with its invariant
//! alternating form.

use thiserror::Error;

use crate::ffield::{field_make, Elem, FieldError, FieldSpec};
use crate::groupkit::{is_irreducible, GroupError, IrreducibleResult, MatrixGroup};
use crate::linalg;
use crate::numth::{factorize, is_prime, multiplicative_order, pow_mod};
use crate::symplectic::{SqMatrix, SympSpace, SymplecticError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NpError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("no nonsingular alternating form is preserved")]
    NoInvariantForm,
    #[error("constructed group is not irreducible")]
    NotIrreducible,
    #[error("irreducibility could not be verified exhaustively")]
    Unverified,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error("q^(n/2) + 1 does not fit in 64 bits for q = {0}")]
    TooLarge(u64),
}

/// `(n, q, p, ell)` together with `m = ord_p(ell)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NpParams {
    pub n: u32,
    pub q: u64,
    pub p: u64,
    pub ell: u64,
    pub ext_degree: u32,
}

fn invalid(msg: impl Into<String>) -> NpError {
    NpError::InvalidParams(msg.into())
}

/// Checks the congruence conditions shared by the prime search and the
/// construction; `None` when they all hold.
fn congruence_violation(n: u32, q: u64, p: u64) -> Option<String> {
    let n64 = n as u64;
    if n == 0 || n % 2 == 1 {
        return Some(format!("n = {n} is not a positive even integer"));
    }
    if !is_prime(q) {
        return Some(format!("q = {q} is not prime"));
    }
    if !is_prime(p) {
        return Some(format!("p = {p} is not prime"));
    }
    if q <= n64 || p <= n64 {
        return Some("p and q must exceed n".into());
    }
    if p % n64 != 1 {
        return Some(format!("p = {p} is not 1 mod n"));
    }
    if pow_mod(q, n64, p) != 1 {
        return Some(format!("p = {p} does not divide q^n - 1"));
    }
    if pow_mod(q, n64 / 2, p) == 1 {
        return Some(format!("p = {p} divides q^(n/2) - 1"));
    }
    if multiplicative_order(q, p) != Some(n64) {
        return Some(format!("the order of q mod p is not {n}"));
    }
    None
}

impl NpParams {
    pub fn new(n: u32, q: u64, p: u64, ell: u64) -> Result<NpParams, NpError> {
        if let Some(v) = congruence_violation(n, q, p) {
            return Err(invalid(v));
        }
        if !is_prime(ell) {
            return Err(invalid(format!("ell = {ell} is not prime")));
        }
        if ell == 2 {
            return Err(invalid("ell = 2: -1 = 1 and the form cannot be symplectic"));
        }
        if ell == p || ell == q {
            return Err(invalid("ell must differ from p and q"));
        }
        let m = multiplicative_order(ell, p).expect("ell is prime and differs from p");
        Ok(NpParams {
            n,
            q,
            p,
            ell,
            ext_degree: m as u32,
        })
    }

    /// Exponents `q^i mod p`, `i = 0..n-1`, of the torsion restrictions of
    /// `χ, χ^q, ..., χ^{q^{n-1}}`.
    pub fn torsion_exponents(&self) -> Vec<u64> {
        (0..self.n as u64).map(|i| pow_mod(self.q, i, self.p)).collect()
    }
}

/// All `(q, p)` with `n < q ≤ q_max` satisfying the congruence conditions,
/// ascending. The splitting condition in `L_0` is left to the caller.
pub fn find_np_primes(n: u32, q_max: u64) -> Result<Vec<(u64, u64)>, NpError> {
    if n == 0 || n % 2 == 1 {
        return Err(invalid(format!("n = {n} is not a positive even integer")));
    }
    let mut out = Vec::new();
    for q in (n as u64 + 1)..=q_max {
        if !is_prime(q) {
            continue;
        }
        // p odd with p | q^n - 1 and p ∤ q^{n/2} - 1 forces p | q^{n/2} + 1
        let half = q
            .checked_pow(n / 2)
            .and_then(|x| x.checked_add(1))
            .ok_or(NpError::TooLarge(q))?;
        for (p, _) in factorize(half) {
            if congruence_violation(n, q, p).is_none() {
                out.push((q, p));
            }
        }
    }
    Ok(out)
}

/// `χ_q`: a generator of `μ_{q^n-1}` goes to `ζ_p`, and `q` goes to `-1`.
#[derive(Clone, Debug)]
pub struct ChiQ {
    pub params: NpParams,
    pub field: FieldSpec,
    /// `ζ_p = g^{zeta_index}` for the canonical generator `g`.
    pub zeta_index: u64,
    pub zeta: Elem,
    pub value_at_q: Elem,
}

impl ChiQ {
    /// `lcm(p, 2)`.
    pub fn order(&self) -> u64 {
        2 * self.params.p
    }

    pub fn torsion_order(&self) -> u64 {
        self.field.multiplicative_order(self.zeta).unwrap()
    }
}

pub fn build_chi(params: &NpParams) -> Result<ChiQ, NpError> {
    let field = field_make(params.ell, params.ext_degree)?;
    let units = field.order() as u64 - 1;
    if units % params.p != 0 {
        return Err(invalid("F_{ell^m} has no primitive p-th root of unity"));
    }
    // primitive p-th roots are g^{k (ell^m - 1)/p} with p ∤ k; k = 1 is least
    let zeta_index = units / params.p;
    let zeta = field.gen_pow(zeta_index as i64);
    let chi = ChiQ {
        params: *params,
        zeta_index,
        zeta,
        value_at_q: field.neg(field.one()),
        field,
    };
    debug_assert_eq!(chi.torsion_order(), params.p);
    Ok(chi)
}

/// The `(n, p)`-group with its generators and preserved form.
#[derive(Clone, Debug)]
pub struct NpGroup {
    pub chi: ChiQ,
    pub group: MatrixGroup,
    /// `diag(ζ, ζ^q, ..., ζ^{q^{n-1}})`.
    pub d: SqMatrix,
    /// `e_i ↦ e_{i+1}`, `e_n ↦ χ_q(q) e_1`, times the twist scalar.
    pub f: SqMatrix,
    pub twist: Elem,
}

impl NpGroup {
    pub fn space(&self) -> &SympSpace {
        self.group.space()
    }

    pub fn form(&self) -> &[Elem] {
        self.space().gram()
    }
}

/// Nonzero alternating matrices `J` with `X^T J X = J` for every `X`.
fn invariant_forms(field: &FieldSpec, n: usize, mats: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let unit = |a: usize, b: usize| {
        let mut e = vec![0; n * n];
        e[a * n + b] = field.one();
        e[b * n + a] = field.neg(field.one());
        e
    };
    // column k of the system is X^T E_k X - E_k, flattened
    let mut rows: Vec<Vec<Elem>> = vec![Vec::with_capacity(pairs.len()); n * n * mats.len()];
    for &(a, b) in &pairs {
        let e = unit(a, b);
        for (xi, x) in mats.iter().enumerate() {
            let xt = linalg::transpose(n, x);
            let img = linalg::mat_mul(field, n, &linalg::mat_mul(field, n, &xt, &e), x);
            for k in 0..n * n {
                rows[xi * n * n + k].push(field.sub(img[k], e[k]));
            }
        }
    }
    linalg::nullspace(field, &rows, pairs.len())
        .into_iter()
        .map(|sol| {
            let mut j = vec![0; n * n];
            for (c, &(a, b)) in sol.iter().zip(&pairs) {
                j[a * n + b] = *c;
                j[b * n + a] = field.neg(*c);
            }
            j
        })
        .collect()
}

fn monomial_f(field: &FieldSpec, n: usize, corner: Elem, scale: Elem) -> Vec<Elem> {
    let mut f = vec![0; n * n];
    for i in 0..n - 1 {
        // column i holds the image of e_i
        f[(i + 1) * n + i] = scale;
    }
    f[n - 1] = field.mul(corner, scale);
    f
}

fn diag(n: usize, entries: &[Elem]) -> Vec<Elem> {
    let mut d = vec![0; n * n];
    for (i, &x) in entries.iter().enumerate() {
        d[i * n + i] = x;
    }
    d
}

fn assemble(chi: &ChiQ, twist: Elem) -> Result<NpGroup, NpError> {
    let field = &chi.field;
    let n = chi.params.n as usize;
    let entries: Vec<Elem> = (0..n as u32)
        .map(|i| field.pow(chi.zeta, pow_mod(chi.params.q, i as u64, chi.params.p)))
        .collect();
    let d = diag(n, &entries);
    let f = monomial_f(field, n, chi.value_at_q, twist);
    let untwisted = monomial_f(field, n, chi.value_at_q, field.one());
    // scalars preserve the form up to a multiplier, so solve on the untwisted F
    let forms = invariant_forms(field, n, &[d.clone(), untwisted]);
    let mut j = forms
        .into_iter()
        .find(|j| linalg::rank_square(field, n, j) == n)
        .ok_or(NpError::NoInvariantForm)?;
    let lead = j.iter().copied().find(|&x| x != 0).unwrap();
    let inv = field.inv(lead).unwrap();
    for x in j.iter_mut() {
        *x = field.mul(*x, inv);
    }
    let space = SympSpace::with_gram(field, n, j)?;
    let d = space.matrix(d)?;
    let f = space.matrix(f)?;
    let group = MatrixGroup::new(&space, vec![d.clone(), f.clone()])?;
    match is_irreducible(&group) {
        IrreducibleResult::Irreducible => {}
        IrreducibleResult::Reducible(_) => return Err(NpError::NotIrreducible),
        IrreducibleResult::Unverified => return Err(NpError::Unverified),
    }
    Ok(NpGroup {
        chi: chi.clone(),
        group,
        d,
        f,
        twist,
    })
}

pub fn build_np_group(chi: &ChiQ) -> Result<NpGroup, NpError> {
    assemble(chi, chi.field.one())
}

/// True iff the exponents are pairwise distinct modulo `modulus`.
pub fn induced_irreducible_criterion(exponents: &[u64], modulus: u64) -> bool {
    let mut seen: Vec<u64> = exponents.iter().map(|e| e % modulus).collect();
    seen.sort_unstable();
    seen.windows(2).all(|w| w[0] != w[1])
}

/// `ρ ⊗ α` for an unramified `α`: `F` is scaled by `alpha`, `D` is unchanged.
pub fn twist_unramified(g: &NpGroup, alpha: Elem) -> Result<NpGroup, NpError> {
    let field = &g.chi.field;
    if alpha == 0 || alpha >= field.order() {
        return Err(invalid("twist scalar must be a nonzero field element"));
    }
    let p = g.chi.params;
    if !induced_irreducible_criterion(&p.torsion_exponents(), p.p) {
        return Err(NpError::NotIrreducible);
    }
    assemble(&g.chi, field.mul(g.twist, alpha))
}

/// `F^{-1} D F = D^q`.
pub fn frobenius_relation_holds(g: &NpGroup) -> bool {
    let finv = g.f.inverse().unwrap();
    &(&finv * &g.d) * &g.f == g.d.pow(g.chi.params.q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::group_order;
    use crate::symplectic::multiplier_of;

    fn base() -> NpGroup {
        let params = NpParams::new(2, 5, 3, 7).unwrap();
        build_np_group(&build_chi(&params).unwrap()).unwrap()
    }

    #[test]
    fn prime_search_examples() {
        assert!(find_np_primes(2, 5).unwrap().contains(&(5, 3)));
        assert!(find_np_primes(4, 7).unwrap().contains(&(7, 5)));
        assert!(find_np_primes(2, 2).unwrap().is_empty());
        assert!(find_np_primes(3, 10).is_err());
    }

    #[test]
    fn prime_search_matches_brute_force() {
        for n in [2u32, 4] {
            let mut brute = Vec::new();
            for q in (n as u64 + 1)..=40 {
                if !(2..q).all(|d| q % d != 0) {
                    continue;
                }
                for p in (n as u64 + 1)..=(q.pow(n / 2) + 1) {
                    if p == q || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
                        continue;
                    }
                    let ord = (1..=p).find(|&k| pow_mod(q, k, p) == 1).unwrap();
                    let divides = (q as u128).pow(n) % p as u128 == 1;
                    let not_half = (q as u128).pow(n / 2) % p as u128 != 1;
                    if ord == n as u64 && p % n as u64 == 1 && divides && not_half {
                        brute.push((q, p));
                    }
                }
            }
            assert_eq!(find_np_primes(n, 40).unwrap(), brute, "n = {n}");
        }
    }

    #[test]
    fn chi_for_the_base_fixture() {
        let chi = build_chi(&NpParams::new(2, 5, 3, 7).unwrap()).unwrap();
        assert_eq!(chi.field.generator(), 3);
        assert_eq!(chi.zeta_index, 2);
        assert_eq!(chi.zeta, 2);
        assert_eq!(chi.order(), 6);
        assert_eq!(chi.torsion_order(), 3);
        assert_eq!(chi.value_at_q, 6);
    }

    #[test]
    fn base_group() {
        let g = base();
        let f = g.chi.field.clone();
        assert_eq!(g.f, g.space().matrix_from_ints(&[&[0, -1], &[1, 0]]).unwrap());
        assert_eq!(g.d, g.space().matrix_from_ints(&[&[2, 0], &[0, 4]]).unwrap());
        assert_eq!(group_order(&g.group, 1000).unwrap(), 12);
        assert!(multiplier_of(&g.d).unwrap().is_one());
        assert!(multiplier_of(&g.f).unwrap().is_one());
        assert!(frobenius_relation_holds(&g));
        // for n = 2 both conjugation directions agree
        assert_eq!(g.f.conjugate(&g.d).unwrap(), g.d.pow(5));
        assert_eq!(g.f.pow(2), g.space().identity().scale(f.neg(f.one())));
        assert_eq!(g.form(), &[0, 1, 6, 0]);
    }

    #[test]
    fn four_dimensional_groups() {
        for ell in [11u64, 31] {
            let params = NpParams::new(4, 7, 5, ell).unwrap();
            let g = build_np_group(&build_chi(&params).unwrap()).unwrap();
            let f = g.chi.field.clone();
            assert!(frobenius_relation_holds(&g));
            assert_eq!(g.f.pow(4), g.space().identity().scale(f.neg(f.one())));
            let order = group_order(&g.group, 100_000).unwrap();
            assert_eq!((2 * 5 * 4) % order, 0, "ell = {ell}");
            assert!(induced_irreducible_criterion(&params.torsion_exponents(), 5));
            let diag: Vec<Elem> = (0..4).map(|i| g.d.get(i, i)).collect();
            let mut sorted = diag.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), 4);
        }
    }

    #[test]
    fn twists_stay_irreducible() {
        let g = base();
        let f = g.chi.field.clone();
        let same = twist_unramified(&g, 1).unwrap();
        assert_eq!(same.f, g.f);
        for alpha in 1..7 {
            let t = twist_unramified(&g, alpha).unwrap();
            assert_eq!(t.d, g.d);
            let order = group_order(&t.group, 10_000).unwrap();
            let ord_alpha = f.multiplicative_order(alpha).unwrap();
            assert_eq!((2 * 3 * 2 * ord_alpha) % order, 0);
        }
        let minus = twist_unramified(&g, 6).unwrap();
        assert_eq!(minus.f, g.f.scale(6));
        assert_eq!(group_order(&minus.group, 1000).unwrap(), 12);
    }

    #[test]
    fn criterion() {
        assert!(induced_irreducible_criterion(&[1, 2], 3));
        assert!(!induced_irreducible_criterion(&[1, 4], 3));
        assert!(induced_irreducible_criterion(&[5], 3));
        assert_eq!(NpParams::new(2, 5, 3, 7).unwrap().torsion_exponents(), vec![1, 2]);
    }

    #[test]
    fn invalid_parameters() {
        assert!(NpParams::new(2, 5, 7, 3).is_err());
        assert!(NpParams::new(2, 5, 3, 2).is_err());
        assert!(NpParams::new(2, 5, 3, 5).is_err());
        assert!(NpParams::new(3, 5, 3, 7).is_err());
        // F_{3^4}^4 is too large for the exhaustive irreducibility scan
        let far = NpParams::new(4, 7, 5, 3).unwrap();
        assert_eq!(far.ext_degree, 4);
        assert_eq!(build_np_group(&build_chi(&far).unwrap()).unwrap_err(), NpError::Unverified);
    }
}

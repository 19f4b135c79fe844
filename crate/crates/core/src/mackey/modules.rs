//! Induced monomial representations over a prime field, used to check
//! character computations by plain linear algebra.

use num_rational::Rational64;

use super::character::LinearCharacter;
use super::group::Subgroup;
use super::MackeyError;
use crate::cyclotomic::CycRat;
use crate::ffield::{field_make, Elem, FieldSpec};
use crate::linalg;
use crate::numth::is_prime;

/// Least prime `ℓ ≡ 1 mod m`.
pub fn split_prime(m: u64) -> u64 {
    (1..).map(|k| k * m + 1).find(|&l| is_prime(l)).expect("Dirichlet")
}

/// `Ind_K^G λ` realized on `F_ℓ^{(G:K)}`, one matrix per element of `G`.
#[derive(Clone, Debug)]
pub struct MonomialRep {
    pub field: FieldSpec,
    pub dim: usize,
    /// Image of `ζ_M` for the `M` the representation was built for.
    pub zeta: Elem,
    pub zeta_order: u64,
    pub matrices: Vec<Vec<Elem>>,
}

/// Builds the induced representation with `ζ_M ↦` an element of order `M`
/// in `F_ℓ`; `M` must be a multiple of the character's `m` and divide `ℓ - 1`.
pub fn monomial_representation(k: &Subgroup, lambda: &LinearCharacter, ell: u64, big_m: u64) -> Result<MonomialRep, MackeyError> {
    if !std::sync::Arc::ptr_eq(k.group(), lambda.group()) {
        return Err(MackeyError::GroupMismatch);
    }
    if big_m % lambda.m() != 0 || (ell - 1) % big_m != 0 {
        return Err(MackeyError::Malformed("need m | M | ell - 1".into()));
    }
    let field = field_make(ell, 1).map_err(|e| MackeyError::Malformed(e.to_string()))?;
    let zeta = field.pow(field.generator(), (ell - 1) / big_m);
    let step = big_m / lambda.m();
    let g = k.parent();
    let reps = g.left_transversal(k.elements());
    let d = reps.len();
    let matrices = (0..g.order())
        .map(|x| {
            let mut a = vec![field.zero(); d * d];
            for (j, &tj) in reps.iter().enumerate() {
                let y = g.mul(x, tj);
                let (i, kk) = reps
                    .iter()
                    .enumerate()
                    .find_map(|(i, &ti)| k.position(g.mul(g.inv(ti), y)).map(|p| (i, p)))
                    .expect("transversal covers G");
                a[i * d + j] = field.pow(zeta, step * lambda.exponent_at(kk));
            }
            a
        })
        .collect();
    Ok(MonomialRep {
        field,
        dim: d,
        zeta,
        zeta_order: big_m,
        matrices,
    })
}

impl MonomialRep {
    pub fn trace(&self, x: usize) -> Elem {
        linalg::trace(&self.field, self.dim, &self.matrices[x])
    }

    /// `dim End_G(V)`, from the linear system `XA = AX` over the given
    /// elements (a generating set suffices).
    pub fn commutant_dimension(&self, elements: &[usize]) -> usize {
        let f = &self.field;
        let d = self.dim;
        let mut rows = Vec::with_capacity(elements.len() * d * d);
        for &x in elements {
            let a = &self.matrices[x];
            for r in 0..d {
                for c in 0..d {
                    // (XA - AX)[r][c] = Σ_t X[r][t] A[t][c] - A[r][t] X[t][c]
                    let mut row = vec![f.zero(); d * d];
                    for t in 0..d {
                        row[r * d + t] = f.add(row[r * d + t], a[t * d + c]);
                        row[t * d + c] = f.sub(row[t * d + c], a[r * d + t]);
                    }
                    rows.push(row);
                }
            }
        }
        linalg::nullspace(f, &rows, d * d).len()
    }

    /// Reduction of a cyclotomic value through `ζ_M ↦ zeta`.
    pub fn reduce(&self, v: &CycRat) -> Option<Elem> {
        let f = &self.field;
        assert_eq!(v.field().m(), self.zeta_order, "value lives in Q(ζ_M)");
        let mut acc = f.zero();
        let mut power = f.one();
        for c in v.coeffs() {
            acc = f.add(acc, f.mul(rational_mod(f, c)?, power));
            power = f.mul(power, self.zeta);
        }
        Some(acc)
    }
}

fn rational_mod(f: &FieldSpec, c: &Rational64) -> Option<Elem> {
    let den = f.inv(f.from_int(*c.denom()))?;
    Some(f.mul(f.from_int(*c.numer()), den))
}

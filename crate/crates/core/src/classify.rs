//! The reducible / induced / huge trichotomy for subgroups of `GSp(V)` that
//! contain a symplectic transvection, with checkable witnesses.

use std::sync::Arc;

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::ffield::Elem;
use crate::groupkit::{
    harvest_transvections, incremental_closure, irreducibility_raw, Enumeration, GroupError,
    Irreducibility, IrreducibleResult, MatrixGroup,
};
use crate::linalg;
use crate::numth::divisors;
use crate::symplectic::{detect_transvection, SqMatrix, Subspace, SympSpace, TransvectionKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("characteristic {0} is below 5")]
    CharTooSmall(u32),
    #[error("group contains no nontrivial symplectic transvection")]
    NoTransvection,
    #[error("group has more than {cap} elements (reached {reached})")]
    CapExceeded { cap: u64, reached: u64 },
    #[error("invalid group: {0}")]
    Group(GroupError),
    #[error("witness check failed: {0}")]
    WitnessCheckFailed(String),
    #[error("order {order} is not |Sp_{n}(ell^d)| for any divisor d of the field degree")]
    NoOrderMatch { order: u64, n: usize },
    #[error("irreducibility could not be verified exhaustively")]
    Unverified,
}

impl From<GroupError> for ClassifyError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::CapExceeded { cap, reached } => ClassifyError::CapExceeded { cap, reached },
            other => ClassifyError::Group(other),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Reducible {
        witness: Subspace,
    },
    Induced {
        blocks: Vec<Subspace>,
        block_dim: usize,
        block_count: usize,
        /// `action[k][i] = j` when generator `k` maps block `i` onto block `j`.
        action: Vec<Vec<usize>>,
    },
    Huge {
        subfield_degree: u32,
        transvection_subgroup_order: u64,
    },
}

impl Classification {
    pub fn case_name(&self) -> &'static str {
        match self {
            Classification::Reducible { .. } => "reducible",
            Classification::Induced { .. } => "induced",
            Classification::Huge { .. } => "huge",
        }
    }

    /// Checks the witness invariants against the generators of `g`.
    pub fn verify(&self, g: &MatrixGroup) -> Result<(), String> {
        let space = g.space();
        let n = space.dim();
        match self {
            Classification::Reducible { witness } => {
                if witness.is_zero() || witness.is_whole() {
                    return Err("witness is not proper".into());
                }
                if !g.generators().iter().all(|x| witness.image(x) == *witness) {
                    return Err("witness is not invariant".into());
                }
                Ok(())
            }
            Classification::Induced {
                blocks,
                block_dim,
                block_count,
                action,
            } => {
                if blocks.len() != *block_count || block_count * block_dim != n || *block_count < 2 {
                    return Err("block counts do not multiply to the dimension".into());
                }
                for (i, b) in blocks.iter().enumerate() {
                    if b.dim() != *block_dim {
                        return Err(format!("block {i} has the wrong dimension"));
                    }
                    if !b.is_nonsingular() {
                        return Err(format!("block {i} is singular"));
                    }
                    for c in &blocks[..i] {
                        if !b.is_orthogonal_to(c) {
                            return Err(format!("block {i} is not orthogonal to an earlier block"));
                        }
                    }
                }
                let total = blocks
                    .iter()
                    .fold(Subspace::zero(space), |acc, b| acc.sum(b));
                if !total.is_whole() {
                    return Err("blocks do not span the space".into());
                }
                if action.len() != g.generators().len() {
                    return Err("action has the wrong number of permutations".into());
                }
                for (x, sigma) in g.generators().iter().zip(action) {
                    let mut seen = vec![false; blocks.len()];
                    for (i, b) in blocks.iter().enumerate() {
                        let j = sigma[i];
                        if j >= blocks.len() || b.image(x) != blocks[j] || seen[j] {
                            return Err("action does not match the generators".into());
                        }
                        seen[j] = true;
                    }
                }
                let mut reached = vec![false; blocks.len()];
                reached[0] = true;
                let mut stack = vec![0];
                while let Some(i) = stack.pop() {
                    for sigma in action {
                        if !reached[sigma[i]] {
                            reached[sigma[i]] = true;
                            stack.push(sigma[i]);
                        }
                    }
                }
                if reached.iter().any(|r| !r) {
                    return Err("block action is not transitive".into());
                }
                Ok(())
            }
            Classification::Huge {
                subfield_degree,
                transvection_subgroup_order,
            } => {
                let q = (g.field().ell() as u64).pow(*subfield_degree);
                if sp_order(n, q) != Some(*transvection_subgroup_order as u128) {
                    return Err("order does not match the symplectic order formula".into());
                }
                if g.field().degree() % subfield_degree != 0 {
                    return Err("subfield degree does not divide the field degree".into());
                }
                Ok(())
            }
        }
    }
}

/// `|Sp_n(q)| = q^{m^2} ∏_{i=1..m} (q^{2i} - 1)` for `n = 2m`.
pub fn sp_order(n: usize, q: u64) -> Option<u128> {
    let m = (n / 2) as u32;
    let q = q as u128;
    let mut acc = q.checked_pow(m * m)?;
    for i in 1..=m {
        acc = acc.checked_mul(q.checked_pow(2 * i)? - 1)?;
    }
    Some(acc)
}

fn check_preconditions(g: &MatrixGroup) -> Result<(), ClassifyError> {
    let ell = g.field().ell();
    if ell < 5 {
        return Err(ClassifyError::CharTooSmall(ell));
    }
    Ok(())
}

/// The subgroup generated by the transvections of `G`, with its cache.
pub fn transvection_subgroup(g: &MatrixGroup, cap: u64) -> Result<MatrixGroup, ClassifyError> {
    let all_transvections = g
        .generators()
        .iter()
        .all(|x| matches!(detect_transvection(x), TransvectionKind::Nontrivial(_)));
    if all_transvections {
        g.enumerate(cap)?;
        return Ok(g.clone());
    }
    let found = harvest_transvections(g, cap)?;
    if found.is_empty() {
        return Err(ClassifyError::NoTransvection);
    }
    let ms: Vec<SqMatrix> = found.into_iter().map(|(m, _)| m).collect();
    Ok(incremental_closure(g.space(), &ms, cap)?)
}

pub fn classify(g: &MatrixGroup, cap: u64) -> Result<Classification, ClassifyError> {
    classify_seeded(g, cap, 0)
}

/// [`classify`] with an explicit seed for the randomized spin vectors.
pub fn classify_seeded(g: &MatrixGroup, cap: u64, seed: u64) -> Result<Classification, ClassifyError> {
    check_preconditions(g)?;
    let h = transvection_subgroup(g, cap)?;
    let verdict = match crate::groupkit::is_irreducible_seeded(g, seed) {
        IrreducibleResult::Unverified => return Err(ClassifyError::Unverified),
        IrreducibleResult::Reducible(witness) => Classification::Reducible { witness },
        IrreducibleResult::Irreducible => match crate::groupkit::is_irreducible_seeded(&h, seed) {
            IrreducibleResult::Unverified => return Err(ClassifyError::Unverified),
            IrreducibleResult::Reducible(w) => induced_blocks(g, &h, &w)?,
            IrreducibleResult::Irreducible => {
                let d = recognize_sp_over_subfield(&h, cap)?;
                Classification::Huge {
                    subfield_degree: d,
                    transvection_subgroup_order: h.enumerate(cap)?.len() as u64,
                }
            }
        },
    };
    verdict.verify(g).map_err(ClassifyError::WitnessCheckFailed)?;
    Ok(verdict)
}

fn restrict_all(w: &Subspace, gens: &[SqMatrix]) -> Result<Vec<Vec<Elem>>, ClassifyError> {
    gens.iter()
        .map(|x| {
            w.restrict(x)
                .ok_or_else(|| ClassifyError::WitnessCheckFailed("subspace is not invariant".into()))
        })
        .collect()
}

/// An irreducible `H`-submodule inside `within`, seeded by a transvection
/// direction when one lies in `within`.
fn irreducible_submodule(h: &MatrixGroup, within: &Subspace) -> Result<Subspace, ClassifyError> {
    let space = h.space();
    let f = space.field();
    let seed = h
        .generators()
        .iter()
        .filter_map(|x| match detect_transvection(x) {
            TransvectionKind::Nontrivial(d) => Some(d.direction),
            _ => None,
        })
        .find(|v| within.contains(v))
        .unwrap_or_else(|| within.basis()[0].clone());
    let mut w = crate::groupkit::spin(h.generators(), &seed);
    loop {
        let m = w.dim();
        let restricted = restrict_all(&w, h.generators())?;
        match irreducibility_raw(f, m, &restricted, 0) {
            Irreducibility::Irreducible => return Ok(w),
            Irreducibility::Unverified => return Err(ClassifyError::Unverified),
            Irreducibility::Reducible(coords) => {
                let vs: Vec<Vec<Elem>> = coords
                    .iter()
                    .map(|c| {
                        c.iter().zip(w.basis()).fold(vec![0; space.dim()], |acc, (&k, b)| {
                            linalg::add_vec(f, &acc, &linalg::scale_vec(f, k, b))
                        })
                    })
                    .collect();
                w = Subspace::span(space, &vs);
            }
        }
    }
}

fn induced_blocks(
    g: &MatrixGroup,
    h: &MatrixGroup,
    reducible_witness: &Subspace,
) -> Result<Classification, ClassifyError> {
    let w = irreducible_submodule(h, reducible_witness)?;
    let (blocks, action) = block_orbit(g.generators(), &w);
    Ok(Classification::Induced {
        block_dim: w.dim(),
        block_count: blocks.len(),
        blocks,
        action,
    })
}

/// Orbit of `w` under `gens` in breadth-first order, with the permutation
/// each generator induces on it.
pub fn block_orbit(gens: &[SqMatrix], w: &Subspace) -> (Vec<Subspace>, Vec<Vec<usize>>) {
    let mut blocks = vec![w.clone()];
    let mut pos: FxHashMap<Subspace, usize> = FxHashMap::default();
    pos.insert(w.clone(), 0);
    let mut action: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
    let mut i = 0;
    while i < blocks.len() {
        for (k, x) in gens.iter().enumerate() {
            let img = blocks[i].image(x);
            let j = *pos.entry(img.clone()).or_insert_with(|| {
                blocks.push(img);
                blocks.len() - 1
            });
            action[k].push(j);
        }
        i += 1;
    }
    (blocks, action)
}

/// The divisor `d` of the field degree with `|H| = |Sp_n(ell^d)|`.
pub fn recognize_sp_over_subfield(h: &MatrixGroup, cap: u64) -> Result<u32, ClassifyError> {
    check_preconditions(h)?;
    let order = h.enumerate(cap)?.len() as u64;
    let f = h.field();
    let n = h.space().dim();
    divisors(f.degree() as u64)
        .into_iter()
        .find(|&d| sp_order(n, (f.ell() as u64).pow(d as u32)) == Some(order as u128))
        .map(|d| d as u32)
        .ok_or(ClassifyError::NoOrderMatch { order, n })
}

pub fn is_huge(g: &MatrixGroup, cap: u64) -> Result<bool, ClassifyError> {
    match classify(g, cap)? {
        Classification::Huge {
            transvection_subgroup_order,
            ..
        } => {
            let floor = sp_order(g.space().dim(), g.field().ell() as u64);
            if floor.is_some_and(|x| (transvection_subgroup_order as u128) < x) {
                return Err(ClassifyError::WitnessCheckFailed(
                    "huge verdict below |Sp_n(ell)|".into(),
                ));
            }
            Ok(true)
        }
        _ => Ok(false),
    }
}

/// Data of `ρ = Ind(ρ')` for an induced verdict.
#[derive(Clone, Debug)]
pub struct Induction {
    /// Generators of the stabilizer of the first block.
    pub stabilizer_generators: Vec<SqMatrix>,
    /// Their `m x m` matrices on the first block, in its echelon basis.
    pub block_matrices: Vec<Vec<Elem>>,
    pub index: usize,
    pub stabilizer_order: u64,
    /// Coset representatives `t_i` with `t_i S_1 = S_i`.
    pub transversal: Vec<SqMatrix>,
}

pub fn extract_induction(
    g: &MatrixGroup,
    verdict: &Classification,
    cap: u64,
) -> Result<Induction, ClassifyError> {
    let space = g.space().clone();
    let blocks: Vec<Subspace> = match verdict {
        Classification::Induced { blocks, .. } => blocks.clone(),
        _ => vec![Subspace::whole(&space)],
    };
    let h = blocks.len();
    let gens = g.generators();
    let s1 = &blocks[0];
    let block_index = |u: &Subspace| blocks.iter().position(|b| b == u);

    // transversal by breadth-first search over the block orbit
    let mut transversal: Vec<Option<SqMatrix>> = vec![None; h];
    transversal[0] = Some(space.identity());
    let mut queue = vec![0];
    let mut qi = 0;
    while qi < queue.len() {
        let i = queue[qi];
        qi += 1;
        for x in gens {
            let j = block_index(&blocks[i].image(x))
                .ok_or_else(|| ClassifyError::WitnessCheckFailed("blocks not permuted".into()))?;
            if transversal[j].is_none() {
                transversal[j] = Some(x * transversal[i].as_ref().unwrap());
                queue.push(j);
            }
        }
    }
    let transversal: Vec<SqMatrix> = transversal
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| ClassifyError::WitnessCheckFailed("block action not transitive".into()))?;
    let tinv: Vec<SqMatrix> = transversal.iter().map(|t| t.inverse().unwrap()).collect();

    // Schreier generators t_j^{-1} x t_i
    let mut schreier: Vec<SqMatrix> = Vec::new();
    for i in 0..h {
        for x in gens {
            let j = block_index(&blocks[i].image(x)).unwrap();
            let s = &(&tinv[j] * x) * &transversal[i];
            if !s.is_identity() && !schreier.contains(&s) {
                schreier.push(s);
            }
        }
    }
    let stab = incremental_closure(&space, &schreier, cap)?;
    let stab_order = stab.enumerate(cap)?.len() as u64;
    let g_enum = g.enumerate(cap)?;
    if g_enum.len() as u64 != stab_order * h as u64 {
        return Err(ClassifyError::WitnessCheckFailed(format!(
            "index {} differs from block count {h}",
            g_enum.len() as u64 / stab_order.max(1)
        )));
    }
    let block_matrices = restrict_all(s1, stab.generators())?;
    check_induced_character(&g_enum, &blocks, &transversal, &tinv)?;
    Ok(Induction {
        stabilizer_generators: stab.generators().to_vec(),
        block_matrices,
        index: h,
        stabilizer_order: stab_order,
        transversal,
    })
}

/// `tr(x) = Σ_{i : x S_i = S_i} tr(t_i^{-1} x t_i |_{S_1})` for every enumerated `x`.
fn check_induced_character(
    e: &Arc<Enumeration>,
    blocks: &[Subspace],
    transversal: &[SqMatrix],
    tinv: &[SqMatrix],
) -> Result<(), ClassifyError> {
    let space = transversal[0].space().clone();
    let f = space.field().clone();
    let m = blocks[0].dim();
    let bad = e.par_map(|_, data| {
        let x = space.matrix(data).unwrap();
        let mut induced = 0;
        for (i, b) in blocks.iter().enumerate() {
            if b.image(&x) == *b {
                let y = &(&tinv[i] * &x) * &transversal[i];
                let r = blocks[0].restrict(&y).expect("stabilizer element");
                induced = f.add(induced, linalg::trace(&f, m, &r));
            }
        }
        induced != x.trace()
    });
    if bad.into_iter().any(|b| b) {
        return Err(ClassifyError::WitnessCheckFailed(
            "induced character differs from the character on V".into(),
        ));
    }
    Ok(())
}

/// `A`-transport of a verdict: the witnesses for `A G A^{-1}`.
pub fn transport(verdict: &Classification, a: &SqMatrix) -> Classification {
    match verdict {
        Classification::Reducible { witness } => Classification::Reducible {
            witness: witness.image(a),
        },
        Classification::Induced {
            blocks,
            block_dim,
            block_count,
            action,
        } => Classification::Induced {
            blocks: blocks.iter().map(|b| b.image(a)).collect(),
            block_dim: *block_dim,
            block_count: *block_count,
            action: action.clone(),
        },
        huge => huge.clone(),
    }
}

/// Test fixtures shared by unit, integration and acceptance tests.
pub mod fixtures {
    use super::*;
    use crate::ffield::{field_make, subfield_embed};
    use crate::symplectic::make_transvection;

    fn tv(s: &SympSpace, v: &[i64], lambda: Elem) -> SqMatrix {
        let f = s.field();
        let v: Vec<Elem> = v.iter().map(|&x| f.from_int(x)).collect();
        make_transvection(s, &v, lambda)
    }

    /// `⟨T_{e1}[1], T_{e2}[g]⟩ = Sp_2(F_q)` for a field generator `g`.
    pub fn sp2(ell: u64, degree: u32) -> MatrixGroup {
        let s = SympSpace::standard(&field_make(ell, degree).unwrap(), 2).unwrap();
        let g = s.field().generator();
        MatrixGroup::new(&s, vec![tv(&s, &[1, 0], s.field().one()), tv(&s, &[0, 1], g)]).unwrap()
    }

    /// `Sp_2(F_ell)` inside `GSp_2(F_{ell^degree})`, built from the embedded
    /// prime-field generators.
    pub fn sp2_subfield(ell: u64, degree: u32) -> MatrixGroup {
        let big = field_make(ell, degree).unwrap();
        let small = field_make(ell, 1).unwrap();
        let emb = subfield_embed(&small, &big).unwrap();
        let s = SympSpace::standard(&big, 2).unwrap();
        let one = emb.apply(small.one());
        MatrixGroup::new(&s, vec![tv(&s, &[1, 0], one), tv(&s, &[0, 1], one)]).unwrap()
    }

    /// `Sp_4(F_ell)` from five transvections.
    pub fn sp4(ell: u64) -> MatrixGroup {
        let s = SympSpace::standard(&field_make(ell, 1).unwrap(), 4).unwrap();
        let gens = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 1, 1]]
            .iter()
            .map(|v| tv(&s, v, 1))
            .collect();
        MatrixGroup::new(&s, gens).unwrap()
    }

    /// Reducible: transvections along the Lagrangian `span(e1, e2)` and a
    /// similitude preserving it, in `GSp_4(F_ell)`.
    pub fn reducible_sp4(ell: u64) -> MatrixGroup {
        let s = SympSpace::standard(&field_make(ell, 1).unwrap(), 4).unwrap();
        let f = s.field().clone();
        MatrixGroup::new(
            &s,
            vec![
                tv(&s, &[1, 0, 0, 0], 1),
                tv(&s, &[1, 1, 0, 0], f.from_int(2)),
                s.standard_similitude(f.from_int(2)),
            ],
        )
        .unwrap()
    }

    /// `Sp_2 × Sp_2` on the hyperbolic planes `span(e1, f1)`, `span(e2, f2)`
    /// together with the swap of the planes.
    pub fn induced_sp4(ell: u64) -> MatrixGroup {
        let s = SympSpace::standard(&field_make(ell, 1).unwrap(), 4).unwrap();
        let swap = s
            .matrix_from_ints(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]])
            .unwrap();
        MatrixGroup::new(
            &s,
            vec![
                tv(&s, &[1, 0, 0, 0], 1),
                tv(&s, &[0, 0, 1, 0], 1),
                tv(&s, &[0, 1, 0, 0], 1),
                tv(&s, &[0, 0, 0, 1], 1),
                swap,
            ],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::ffield::field_make;
    use crate::groupkit::{group_order, random_similitude};
    use crate::symplectic::make_transvection;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const CAP: u64 = 1_000_000;

    #[test]
    fn order_formula() {
        assert_eq!(sp_order(2, 5), Some(120));
        assert_eq!(sp_order(2, 7), Some(336));
        assert_eq!(sp_order(2, 25), Some(15600));
        assert_eq!(sp_order(4, 5), Some(9_360_000));
    }

    #[test]
    fn cyclic_transvection_group_is_reducible() {
        let s = SympSpace::standard(&field_make(5, 1).unwrap(), 2).unwrap();
        let g = MatrixGroup::new(&s, vec![make_transvection(&s, &s.basis_vector(0), 1)]).unwrap();
        assert_eq!(
            classify(&g, CAP).unwrap(),
            Classification::Reducible {
                witness: Subspace::span(&s, &[s.basis_vector(0)])
            }
        );
        assert!(!is_huge(&g, CAP).unwrap());
    }

    #[test]
    fn sp2_is_huge() {
        let v = classify(&sp2(5, 1), CAP).unwrap();
        assert_eq!(
            v,
            Classification::Huge {
                subfield_degree: 1,
                transvection_subgroup_order: 120
            }
        );
        assert!(is_huge(&sp2(5, 1), CAP).unwrap());
        assert_eq!(recognize_sp_over_subfield(&sp2(5, 2), CAP), Ok(2));
        assert_eq!(recognize_sp_over_subfield(&sp2_subfield(5, 2), CAP), Ok(1));
    }

    #[test]
    fn induced_fixture() {
        let g = induced_sp4(5);
        assert_eq!(group_order(&g, CAP).unwrap(), 28800);
        let v = classify(&g, CAP).unwrap();
        match &v {
            Classification::Induced {
                block_dim,
                block_count,
                ..
            } => assert_eq!((*block_dim, *block_count), (2, 2)),
            other => panic!("{other:?}"),
        }
        assert!(!is_huge(&g, CAP).unwrap());
        let ind = extract_induction(&g, &v, CAP).unwrap();
        assert_eq!(ind.index, 2);
        assert_eq!(ind.stabilizer_order, 14400);
        // the block action generates Sp_2(F_5) on S_1
        let s1 = match &v {
            Classification::Induced { blocks, .. } => blocks[0].clone(),
            _ => unreachable!(),
        };
        let f = g.field().clone();
        let plane = SympSpace::with_gram(&f, 2, s1.restricted_gram()).unwrap();
        let ms: Vec<SqMatrix> = ind
            .block_matrices
            .iter()
            .map(|m| plane.matrix(m.clone()).unwrap())
            .collect();
        let on_block = MatrixGroup::new(&plane, ms).unwrap();
        assert_eq!(group_order(&on_block, CAP).unwrap(), 120);
        // elements swapping the blocks have trace 0
        let swap = &g.generators()[4];
        assert_eq!(swap.trace(), 0);
    }

    #[test]
    fn trivial_induction_for_whole_space() {
        let g = sp2(5, 1);
        let v = classify(&g, CAP).unwrap();
        let ind = extract_induction(&g, &v, CAP).unwrap();
        assert_eq!(ind.index, 1);
        assert_eq!(ind.stabilizer_order, 120);
    }

    #[test]
    fn reducible_fixture() {
        let g = reducible_sp4(5);
        let v = classify(&g, CAP).unwrap();
        assert_eq!(v.case_name(), "reducible");
        v.verify(&g).unwrap();
    }

    #[test]
    fn preconditions() {
        let s = SympSpace::standard(&field_make(3, 1).unwrap(), 2).unwrap();
        let g = MatrixGroup::new(&s, vec![make_transvection(&s, &s.basis_vector(0), 1)]).unwrap();
        assert_eq!(classify(&g, CAP), Err(ClassifyError::CharTooSmall(3)));
        let s = SympSpace::standard(&field_make(5, 1).unwrap(), 2).unwrap();
        let d = s.matrix_from_ints(&[&[2, 0], &[0, 3]]).unwrap();
        let g = MatrixGroup::new(&s, vec![d]).unwrap();
        assert_eq!(classify(&g, CAP), Err(ClassifyError::NoTransvection));
        assert!(matches!(
            classify(&sp2(5, 1), 50),
            Err(ClassifyError::CapExceeded { cap: 50, .. })
        ));
    }

    #[test]
    fn conjugation_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in [sp2(5, 1), reducible_sp4(5), induced_sp4(5)] {
            let v = classify(&g, CAP).unwrap();
            for _ in 0..2 {
                let a = random_similitude(g.space(), &mut rng);
                let c = g.conjugate_by(&a).unwrap();
                let w = classify(&c, CAP).unwrap();
                assert_eq!(w.case_name(), v.case_name());
                transport(&v, &a).verify(&c).unwrap();
                if let Classification::Huge { .. } = v {
                    assert_eq!(w, v);
                }
            }
        }
    }

    #[test]
    fn huge_transvections_regenerate() {
        let g = sp2(7, 1);
        let v = classify(&g, CAP).unwrap();
        let h = transvection_subgroup(&g, CAP).unwrap();
        let again = transvection_subgroup(&h, CAP).unwrap();
        match v {
            Classification::Huge {
                transvection_subgroup_order,
                ..
            } => assert_eq!(group_order(&again, CAP).unwrap(), transvection_subgroup_order),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn broken_witnesses_are_rejected() {
        let g = induced_sp4(5);
        let v = classify(&g, CAP).unwrap();
        if let Classification::Induced {
            blocks,
            block_dim,
            block_count,
            action,
        } = v
        {
            // singular lines never pass as blocks
            let s = g.space();
            let lines: Vec<Subspace> = (0..4).map(|i| Subspace::span(s, &[s.basis_vector(i)])).collect();
            let bad = Classification::Induced {
                blocks: lines,
                block_dim: 1,
                block_count: 4,
                action: action.clone(),
            };
            assert!(bad.verify(&g).is_err());
            let mut swapped = action.clone();
            swapped[0] = vec![1, 0];
            let bad = Classification::Induced {
                blocks,
                block_dim,
                block_count,
                action: swapped,
            };
            assert!(bad.verify(&g).is_err());
        }
    }
}

//! Exact class functions, induction, restriction and Mackey's formula.

use std::collections::VecDeque;
use std::sync::Arc;

use num_rational::Rational64;

use super::group::{double_cosets, FiniteGroup, Subgroup};
use super::MackeyError;
use crate::cyclotomic::{CycRat, CycloField, Cyclotomic};

/// A class function with values in `Q(ζ_m)`, one value per class.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    field: Arc<CycloField>,
    values: Vec<CycRat>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.values == other.values
    }
}

impl ClassFunction {
    pub fn new(group: &Arc<FiniteGroup>, field: &Arc<CycloField>, values: Vec<CycRat>) -> Result<Self, MackeyError> {
        if values.len() != group.classes().len() || values.iter().any(|v| v.field().m() != field.m()) {
            return Err(MackeyError::Malformed("one value per class, all in the same field".into()));
        }
        Ok(ClassFunction {
            group: group.clone(),
            field: field.clone(),
            values,
        })
    }

    /// Values taken from a function on elements, read at class representatives.
    pub fn from_fn(group: &Arc<FiniteGroup>, field: &Arc<CycloField>, f: impl Fn(usize) -> CycRat) -> Self {
        let values = group.classes().iter().map(|c| f(c[0])).collect();
        ClassFunction {
            group: group.clone(),
            field: field.clone(),
            values,
        }
    }

    pub fn trivial(group: &Arc<FiniteGroup>, field: &Arc<CycloField>) -> Self {
        Self::from_fn(group, field, |_| CycRat::one(field))
    }

    /// `|G|` at the identity, zero elsewhere.
    pub fn regular(group: &Arc<FiniteGroup>, field: &Arc<CycloField>) -> Self {
        let n = group.order() as i64;
        Self::from_fn(group, field, |x| {
            CycRat::from_scalar(field, Rational64::from_integer(if x == 0 { n } else { 0 }))
        })
    }

    /// Indicator of one conjugacy class.
    pub fn class_indicator(group: &Arc<FiniteGroup>, field: &Arc<CycloField>, class: usize) -> Self {
        let values = (0..group.classes().len())
            .map(|c| CycRat::from_scalar(field, Rational64::from_integer((c == class) as i64)))
            .collect();
        ClassFunction {
            group: group.clone(),
            field: field.clone(),
            values,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn values(&self) -> &[CycRat] {
        &self.values
    }

    pub fn value(&self, x: usize) -> &CycRat {
        &self.values[self.group.class_of(x)]
    }

    /// Value at the identity, as a rational.
    pub fn degree(&self) -> Option<Rational64> {
        self.values[self.group.class_of(0)].to_scalar()
    }

    pub fn add(&self, other: &Self) -> Result<Self, MackeyError> {
        self.same_group(other)?;
        Ok(ClassFunction {
            group: self.group.clone(),
            field: self.field.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MackeyError> {
        self.same_group(other)?;
        Ok(ClassFunction {
            group: self.group.clone(),
            field: self.field.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn zero_like(&self) -> Self {
        ClassFunction {
            group: self.group.clone(),
            field: self.field.clone(),
            values: vec![CycRat::zero(&self.field); self.values.len()],
        }
    }

    fn same_group(&self, other: &Self) -> Result<(), MackeyError> {
        if Arc::ptr_eq(&self.group, &other.group) && self.field.m() == other.field.m() {
            Ok(())
        } else {
            Err(MackeyError::GroupMismatch)
        }
    }
}

/// `(1/|G|) Σ_g φ₁(g⁻¹) φ₂(g)`.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<CycRat, MackeyError> {
    a.same_group(b)?;
    let g = &a.group;
    let mut acc = CycRat::zero(&a.field);
    for (c, members) in g.classes().iter().enumerate() {
        let inv_class = g.class_of(g.inv(members[0]));
        let term = &a.values[inv_class] * &b.values[c];
        acc.add_assign_ref(&term.scale(&Rational64::from_integer(members.len() as i64)));
    }
    Ok(acc.scale(&Rational64::new(1, g.order() as i64)))
}

fn check_sub(sub: &Subgroup, f: &ClassFunction, on_sub: bool) -> Result<(), MackeyError> {
    let expected = if on_sub { sub.group() } else { sub.parent() };
    if Arc::ptr_eq(expected, &f.group) {
        Ok(())
    } else {
        Err(MackeyError::GroupMismatch)
    }
}

/// `Ind_H^G ψ` for `ψ` a class function on `sub.group()`.
pub fn induce(sub: &Subgroup, psi: &ClassFunction) -> Result<ClassFunction, MackeyError> {
    check_sub(sub, psi, true)?;
    let g = sub.parent();
    let h = sub.group();
    let field = &psi.field;
    let scale = Rational64::new(1, sub.order() as i64);
    let values = g
        .classes()
        .iter()
        .map(|c| {
            let rep = c[0];
            let mut counts = vec![0i64; h.classes().len()];
            for x in 0..g.order() {
                // x⁻¹ g x
                if let Some(pos) = sub.position(g.conj(g.inv(x), rep)) {
                    counts[h.class_of(pos)] += 1;
                }
            }
            let mut acc = CycRat::zero(field);
            for (hc, &k) in counts.iter().enumerate() {
                if k != 0 {
                    acc.add_assign_ref(&psi.values[hc].scale(&Rational64::from_integer(k)));
                }
            }
            acc.scale(&scale)
        })
        .collect();
    Ok(ClassFunction {
        group: g.clone(),
        field: field.clone(),
        values,
    })
}

/// `Res_H φ` for `φ` a class function on `sub.parent()`.
pub fn restrict(sub: &Subgroup, phi: &ClassFunction) -> Result<ClassFunction, MackeyError> {
    check_sub(sub, phi, false)?;
    let h = sub.group();
    let values = h
        .classes()
        .iter()
        .map(|c| phi.value(sub.elements()[c[0]]).clone())
        .collect();
    Ok(ClassFunction {
        group: h.clone(),
        field: phi.field.clone(),
        values,
    })
}

/// Compares both sides of Mackey's formula
/// `Res_H Ind_N^G χ = Σ_γ Ind_{H ∩ γNγ⁻¹}^H χ^γ`, `χ^γ(x) = χ(γ⁻¹xγ)`.
pub fn mackey_check(h: &Subgroup, n: &Subgroup, chi: &ClassFunction) -> Result<bool, MackeyError> {
    check_sub(n, chi, true)?;
    let g = h.parent();
    let lhs = restrict(h, &induce(n, chi)?)?;
    let mut rhs = lhs.zero_like();
    for gamma in double_cosets(h, n)? {
        let conj_n = n.conjugate_elements(gamma);
        let k_in_h: Vec<usize> = conj_n.iter().filter_map(|&x| h.position(x)).collect();
        let k = Subgroup::new(h.group(), &k_in_h)?;
        let gamma_inv = g.inv(gamma);
        let chi_gamma = ClassFunction::from_fn(k.group(), &chi.field, |kx| {
            let x = h.elements()[k.elements()[kx]];
            let y = g.conj(gamma_inv, x);
            chi.value(n.position(y).expect("γ⁻¹xγ lies in N")).clone()
        });
        rhs = rhs.add(&induce(&k, &chi_gamma)?)?;
    }
    Ok(lhs == rhs)
}

/// `⟨Ind ψ, φ⟩_G == ⟨ψ, Res φ⟩_H`.
pub fn frobenius_check(sub: &Subgroup, psi: &ClassFunction, phi: &ClassFunction) -> Result<bool, MackeyError> {
    let left = inner_product(&induce(sub, psi)?, phi)?;
    let right = inner_product(psi, &restrict(sub, phi)?)?;
    Ok(left == right)
}

/// A homomorphism to the `m`-th roots of unity, stored as exponents of `ζ_m`.
#[derive(Clone, Debug)]
pub struct LinearCharacter {
    group: Arc<FiniteGroup>,
    m: u64,
    exps: Vec<u64>,
}

impl PartialEq for LinearCharacter {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.m == other.m && self.exps == other.exps
    }
}

impl Eq for LinearCharacter {}

impl LinearCharacter {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn exponent_at(&self, x: usize) -> u64 {
        self.exps[x]
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn order(&self) -> u64 {
        use num_integer::Integer;
        self.exps.iter().fold(1u64, |acc, &e| acc.lcm(&(self.m / self.m.gcd(&e))))
    }

    pub fn power(&self, k: u64) -> Self {
        LinearCharacter {
            group: self.group.clone(),
            m: self.m,
            exps: self.exps.iter().map(|&e| (e * (k % self.m)) % self.m).collect(),
        }
    }

    /// `χ^σ(x) = χ(σ⁻¹ x σ)` for `self` on a normal subgroup `n` and `σ` in the parent.
    pub fn conjugate(&self, n: &Subgroup, sigma: usize) -> Result<Self, MackeyError> {
        if !Arc::ptr_eq(n.group(), &self.group) {
            return Err(MackeyError::GroupMismatch);
        }
        let g = n.parent();
        let sinv = g.inv(sigma);
        let exps = n
            .elements()
            .iter()
            .map(|&x| n.position(g.conj(sinv, x)).map(|p| self.exps[p]).ok_or(MackeyError::NotNormal))
            .collect::<Result<_, _>>()?;
        Ok(LinearCharacter {
            group: self.group.clone(),
            m: self.m,
            exps,
        })
    }

    pub fn to_class_function(&self, field: &Arc<CycloField>) -> ClassFunction {
        assert_eq!(field.m() % self.m, 0, "field must contain the m-th roots of unity");
        let step = (field.m() / self.m) as i64;
        ClassFunction::from_fn(&self.group, field, |x| Cyclotomic::zeta_pow(field, step * self.exps[x] as i64))
    }

    /// Restriction to `sub` where `self` lives on `sub.parent()`.
    pub fn restrict(&self, sub: &Subgroup) -> Result<Self, MackeyError> {
        if !Arc::ptr_eq(sub.parent(), &self.group) {
            return Err(MackeyError::GroupMismatch);
        }
        Ok(LinearCharacter {
            group: sub.group().clone(),
            m: self.m,
            exps: sub.elements().iter().map(|&x| self.exps[x]).collect(),
        })
    }
}

/// All linear characters of `group`, valued in the `exponent(group)`-th roots
/// of unity, found by assigning values to a generating set and checking
/// consistency on the Cayley graph.
pub fn linear_characters(group: &Arc<FiniteGroup>) -> Vec<LinearCharacter> {
    let m = group.exponent();
    let all: Vec<usize> = (0..group.order()).collect();
    let gens = group.generating_set(&all);
    let orders: Vec<u64> = gens.iter().map(|&g| group.element_order(g)).collect();
    let mut out = Vec::new();
    let mut choice = vec![0u64; gens.len()];
    loop {
        let assigned: Vec<u64> = choice.iter().zip(&orders).map(|(&c, &o)| c * (m / o)).collect();
        if let Some(exps) = extend_homomorphism(group, &gens, &assigned, m) {
            out.push(LinearCharacter {
                group: group.clone(),
                m,
                exps,
            });
        }
        // odometer over choice[i] in 0..orders[i]
        let mut i = 0;
        loop {
            if i == gens.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < orders[i] {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn extend_homomorphism(group: &FiniteGroup, gens: &[usize], values: &[u64], m: u64) -> Option<Vec<u64>> {
    let mut exps = vec![u64::MAX; group.order()];
    exps[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&g, &v) in gens.iter().zip(values) {
            let y = group.mul(g, x);
            let e = (exps[x] + v) % m;
            if exps[y] == u64::MAX {
                exps[y] = e;
                queue.push_back(y);
            } else if exps[y] != e {
                return None;
            }
        }
    }
    Some(exps)
}

/// Irreducible characters of a monomial group, as inductions of linear
/// characters of subgroups with norm one.  Fails when the squared degrees
/// do not add up to the group order.
pub fn irreducible_characters(group: &Arc<FiniteGroup>, field: &Arc<CycloField>) -> Result<Vec<ClassFunction>, MackeyError> {
    let mut found: Vec<ClassFunction> = Vec::new();
    let mut total = 0i64;
    // larger subgroups first: their inductions have small degree
    let mut subs = group.all_subgroups();
    subs.reverse();
    for elems in subs {
        let k = Subgroup::new(group, &elems)?;
        for lambda in linear_characters(k.group()) {
            let chi = induce(&k, &lambda.to_class_function(field))?;
            if !inner_product(&chi, &chi)?.is_one() || found.contains(&chi) {
                continue;
            }
            let d = chi.degree().expect("rational degree").to_integer();
            total += d * d;
            found.push(chi);
        }
        if total == group.order() as i64 {
            break;
        }
    }
    if total != group.order() as i64 {
        return Err(MackeyError::NotMonomial {
            found: found.len(),
            order: group.order(),
        });
    }
    found.sort_by_key(|c| c.degree().map(|d| d.to_integer()));
    Ok(found)
}

/// The field used for all class functions on `group` and its subgroups.
pub fn character_field(group: &FiniteGroup) -> Arc<CycloField> {
    CycloField::get(group.exponent())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::zoo;

    fn s3_setup() -> (Arc<FiniteGroup>, Arc<CycloField>, Subgroup) {
        let s3 = zoo::symmetric(3);
        let field = character_field(&s3);
        let a3: Vec<usize> = s3.all_subgroups().into_iter().find(|s| s.len() == 3).unwrap();
        let a3 = Subgroup::new(&s3, &a3).unwrap();
        (s3, field, a3)
    }

    fn int(field: &Arc<CycloField>, k: i64) -> CycRat {
        CycRat::from_scalar(field, Rational64::from_integer(k))
    }

    #[test]
    fn s3_two_dimensional_character() {
        let (s3, field, a3) = s3_setup();
        let lin = linear_characters(a3.group());
        assert_eq!(lin.len(), 3);
        let chi = lin.iter().find(|l| !l.is_trivial()).unwrap();
        let ind = induce(&a3, &chi.to_class_function(&field)).unwrap();
        // classes of S3 ordered by least element: identity first
        for (c, members) in s3.classes().iter().enumerate() {
            let expected = match (members.len(), s3.element_order(members[0])) {
                (1, _) => 2,
                (_, 2) => 0,
                _ => -1,
            };
            assert_eq!(ind.values()[c], int(&field, expected));
        }
        assert!(inner_product(&ind, &ind).unwrap().is_one());
        // restriction to A3 is the sum of both nontrivial linear characters
        let res = restrict(&a3, &ind).unwrap();
        let sum = lin
            .iter()
            .filter(|l| !l.is_trivial())
            .map(|l| l.to_class_function(&field))
            .reduce(|a, b| a.add(&b).unwrap())
            .unwrap();
        assert_eq!(res, sum);
    }

    #[test]
    fn regular_and_trivial() {
        let g = zoo::alternating(4);
        let field = character_field(&g);
        let one = Subgroup::new(&g, &[0]).unwrap();
        let reg = induce(&one, &ClassFunction::trivial(one.group(), &field)).unwrap();
        assert_eq!(reg, ClassFunction::regular(&g, &field));
        assert!(inner_product(&reg, &ClassFunction::trivial(&g, &field)).unwrap().is_one());
        let whole = Subgroup::whole(&g);
        let t = ClassFunction::trivial(&g, &field);
        let lifted = ClassFunction::trivial(whole.group(), &field);
        assert_eq!(restrict(&whole, &t).unwrap(), lifted);
        assert_eq!(induce(&whole, &lifted).unwrap(), t);
    }

    #[test]
    fn character_tables_by_sum_of_squares() {
        for (g, k) in [
            (zoo::symmetric(4), 5),
            (zoo::quaternion(), 5),
            (zoo::frobenius(7, 3, 2), 5),
            (zoo::alternating(4), 4),
        ] {
            let field = character_field(&g);
            let irr = irreducible_characters(&g, &field).unwrap();
            assert_eq!(irr.len(), k, "{}", g.name());
            for (i, a) in irr.iter().enumerate() {
                for (j, b) in irr.iter().enumerate() {
                    let ip = inner_product(a, b).unwrap();
                    assert_eq!(ip.to_scalar(), Some(Rational64::from_integer((i == j) as i64)));
                }
            }
        }
    }

    #[test]
    fn non_monomial_groups_are_reported() {
        for g in [zoo::alternating(5), zoo::sl2_3()] {
            let field = character_field(&g);
            assert!(matches!(irreducible_characters(&g, &field), Err(MackeyError::NotMonomial { .. })));
        }
    }

    #[test]
    fn mackey_special_cases() {
        let g = zoo::dihedral(4);
        let field = character_field(&g);
        let whole = Subgroup::whole(&g);
        for elems in g.all_subgroups() {
            let s = Subgroup::new(&g, &elems).unwrap();
            for lam in linear_characters(s.group()) {
                let chi = lam.to_class_function(&field);
                assert!(mackey_check(&whole, &s, &chi).unwrap());
                assert!(mackey_check(&s, &s, &chi).unwrap());
            }
        }
    }

    #[test]
    fn mismatched_groups_rejected() {
        let (s3, field, a3) = s3_setup();
        let t = ClassFunction::trivial(&s3, &field);
        assert!(matches!(induce(&a3, &t), Err(MackeyError::GroupMismatch)));
        let r = (0..6).find(|&x| s3.element_order(x) == 3).unwrap();
        assert!(matches!(Subgroup::new(&s3, &[0, r]), Err(MackeyError::NotSubgroup)));
    }
}

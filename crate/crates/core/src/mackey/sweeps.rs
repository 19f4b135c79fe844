//! Brute-force checks of the normal-subgroup criterion for induced
//! characters and of the nontrivial-restriction lemma.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::character::{character_field, induce, irreducible_characters, linear_characters, ClassFunction, LinearCharacter};
use super::group::{FiniteGroup, Subgroup};
use super::MackeyError;
use crate::numth::{factorize, is_prime, prime_divisors};

fn failed(clause: &str) -> MackeyError {
    MackeyError::HypothesisFailed(clause.to_string())
}

/// Splits the order of `chi` as `p^k · r` and returns `(χ₁, k)`, where
/// `χ₁` is the `p`-primary part of `chi`.
pub fn p_primary_part(chi: &LinearCharacter, p: u64) -> (LinearCharacter, u32) {
    let order = chi.order();
    let k = factorize(order).into_iter().find(|&(q, _)| q == p).map_or(0, |(_, e)| e);
    let pk = p.pow(k);
    let r = order / pk;
    // e ≡ 1 mod p^k and e ≡ 0 mod r
    let e = (0..pk).map(|t| t * r).find(|&e| e % pk == 1 % pk).unwrap_or(0);
    (chi.power(if k == 0 { 0 } else { e }), k)
}

/// Checks every hypothesis except the induced-character identity and
/// returns `Ind_N^G χ`.
fn prop_hypotheses(n: &Subgroup, chi: &LinearCharacter, p: u64) -> Result<ClassFunction, MackeyError> {
    if !n.is_normal() {
        return Err(failed("N is not normal in G"));
    }
    if !Arc::ptr_eq(chi.group(), n.group()) {
        return Err(MackeyError::GroupMismatch);
    }
    let index = n.index() as u64;
    if !is_prime(p) {
        return Err(failed("p is not prime"));
    }
    if p <= index {
        return Err(failed("p > n"));
    }
    let (chi1, k) = p_primary_part(chi, p);
    if k == 0 {
        return Err(failed("order of chi_1 is not a nontrivial power of p"));
    }
    let g = n.parent();
    let conjugates = g
        .left_transversal(n.elements())
        .into_iter()
        .map(|s| chi1.conjugate(n, s))
        .collect::<Result<Vec<_>, _>>()?;
    for i in 0..conjugates.len() {
        for j in 0..i {
            if conjugates[i] == conjugates[j] {
                return Err(failed("the n conjugates of chi_1 are pairwise distinct"));
            }
        }
    }
    let field = character_field(g);
    induce(n, &chi.to_class_function(&field))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub group: String,
    pub n_elements: Vec<usize>,
    pub h_elements: Vec<usize>,
    pub chi_exponents: Vec<u64>,
    pub p: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PropVerdict {
    Holds,
    Counterexample(CounterexampleReport),
}

/// Given `N ⊴ G`, `H ≤ G`, a linear character `χ` of `N`, a class
/// function `S` on `H` and a prime `p`: checks the hypotheses and then
/// whether `N ≤ H`.
pub fn verify_prop_nh(
    n: &Subgroup,
    h: &Subgroup,
    chi: &LinearCharacter,
    s: &ClassFunction,
    p: u64,
) -> Result<PropVerdict, MackeyError> {
    if !Arc::ptr_eq(n.parent(), h.parent()) {
        return Err(MackeyError::DifferentParents);
    }
    let ind_chi = prop_hypotheses(n, chi, p)?;
    if induce(h, s)? != ind_chi {
        return Err(failed("Ind_H(S) = Ind_N(chi)"));
    }
    Ok(conclusion(n, h, chi, p))
}

fn conclusion(n: &Subgroup, h: &Subgroup, chi: &LinearCharacter, p: u64) -> PropVerdict {
    if h.contains_subgroup(n) {
        PropVerdict::Holds
    } else {
        PropVerdict::Counterexample(CounterexampleReport {
            group: n.parent().name().to_string(),
            n_elements: n.elements().to_vec(),
            h_elements: h.elements().to_vec(),
            chi_exponents: (0..n.order()).map(|x| chi.exponent_at(x)).collect(),
            p,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PropSweepReport {
    pub group: String,
    pub order: usize,
    /// `(N, χ, p)` triples meeting every hypothesis on `N` and `χ`.
    pub qualifying: usize,
    /// `(N, χ, p)` triples rejected by a hypothesis.
    pub skipped: usize,
    /// `(H, S)` pairs with `Ind_H S = Ind_N χ` over the qualifying triples.
    pub matches: usize,
    pub holds: usize,
    pub counterexamples: Vec<CounterexampleReport>,
}

/// Runs over every normal `N`, every prime `p` dividing `|N|`, every
/// linear `χ` of `N`, every subgroup `H` and every irreducible `S` of `H`.
/// Triples failing a hypothesis are counted as skipped.
pub fn sweep_prop_nh(g: &Arc<FiniteGroup>) -> Result<PropSweepReport, MackeyError> {
    sweep_prop_nh_with_primes(g, None)
}

/// [`sweep_prop_nh`] with the primes `p` given explicitly.
pub fn sweep_prop_nh_with_primes(g: &Arc<FiniteGroup>, primes: Option<&[u64]>) -> Result<PropSweepReport, MackeyError> {
    let field = character_field(g);
    let subgroups: Vec<Subgroup> = g
        .all_subgroups()
        .iter()
        .map(|e| Subgroup::new(g, e))
        .collect::<Result<_, _>>()?;
    // Ind_H S for each irreducible S of each H
    let induced: Vec<Vec<ClassFunction>> = subgroups
        .par_iter()
        .map(|h| {
            irreducible_characters(h.group(), &field)?
                .iter()
                .map(|s| induce(h, s))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;

    let mut triples = Vec::new();
    for n in subgroups.iter().filter(|n| n.is_normal()) {
        let ps = primes.map_or_else(|| prime_divisors(n.order() as u64), |ps| ps.to_vec());
        for p in ps {
            for chi in linear_characters(n.group()) {
                triples.push((n, p, chi));
            }
        }
    }
    let partial: Vec<PropSweepReport> = triples
        .par_iter()
        .map(|(n, p, chi)| {
            let mut r = PropSweepReport::default();
            let Ok(ind_chi) = prop_hypotheses(n, chi, *p) else {
                r.skipped += 1;
                return r;
            };
            r.qualifying += 1;
            for (h, inds) in subgroups.iter().zip(&induced) {
                for ind in inds {
                    if *ind == ind_chi {
                        r.matches += 1;
                        match conclusion(n, h, chi, *p) {
                            PropVerdict::Holds => r.holds += 1,
                            PropVerdict::Counterexample(c) => r.counterexamples.push(c),
                        }
                    }
                }
            }
            r
        })
        .collect();
    let mut report = PropSweepReport {
        group: g.name().to_string(),
        order: g.order(),
        ..Default::default()
    };
    for r in partial {
        report.qualifying += r.qualifying;
        report.skipped += r.skipped;
        report.matches += r.matches;
        report.holds += r.holds;
        report.counterexamples.extend(r.counterexamples);
    }
    Ok(report)
}

/// Given `N ⊴ G`, `H ≤ G` with `(G:H) ≤ bound`, a prime `p > bound` and a
/// linear `χ` of `N` whose order is a nontrivial power of `p`: whether the
/// restriction of `χ` to `H ∩ N` is nontrivial.
pub fn check_res_nontrivial(
    n: &Subgroup,
    h: &Subgroup,
    chi: &LinearCharacter,
    p: u64,
    bound: u64,
) -> Result<bool, MackeyError> {
    if !Arc::ptr_eq(n.parent(), h.parent()) {
        return Err(MackeyError::DifferentParents);
    }
    if !Arc::ptr_eq(chi.group(), n.group()) {
        return Err(MackeyError::GroupMismatch);
    }
    if !n.is_normal() {
        return Err(failed("N is not normal in G"));
    }
    if h.index() as u64 > bound {
        return Err(failed("(G:H) <= n"));
    }
    if !is_prime(p) || p <= bound {
        return Err(failed("p > n"));
    }
    let order = chi.order();
    if order == 1 || factorize(order).len() != 1 || order % p != 0 {
        return Err(failed("order of chi is a nontrivial power of p"));
    }
    Ok(h.intersection(n)
        .iter()
        .any(|&x| chi.exponent_at(n.position(x).expect("x lies in N")) != 0))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ResSweepReport {
    pub group: String,
    pub order: usize,
    pub checked: usize,
    pub trivial_restrictions: usize,
}

/// Every normal `N`, every `H` with `n = (G:H)`, every prime `p > n`
/// dividing `|N|` and every `χ` of nontrivial `p`-power order.
pub fn sweep_res_nontrivial(g: &Arc<FiniteGroup>) -> Result<ResSweepReport, MackeyError> {
    let subgroups: Vec<Subgroup> = g
        .all_subgroups()
        .iter()
        .map(|e| Subgroup::new(g, e))
        .collect::<Result<_, _>>()?;
    let mut report = ResSweepReport {
        group: g.name().to_string(),
        order: g.order(),
        ..Default::default()
    };
    for n in subgroups.iter().filter(|n| n.is_normal()) {
        let chars = linear_characters(n.group());
        for h in &subgroups {
            let bound = h.index() as u64;
            for p in prime_divisors(n.order() as u64).into_iter().filter(|&p| p > bound) {
                for chi in &chars {
                    let o = chi.order();
                    if o == 1 || factorize(o).len() != 1 || o % p != 0 {
                        continue;
                    }
                    report.checked += 1;
                    if !check_res_nontrivial(n, h, chi, p, bound)? {
                        report.trivial_restrictions += 1;
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::zoo;

    fn c7_in_f21() -> (Arc<FiniteGroup>, Subgroup) {
        let g = zoo::frobenius(7, 3, 2);
        let n = g.all_subgroups().into_iter().find(|s| s.len() == 7).unwrap();
        let n = Subgroup::new(&g, &n).unwrap();
        (g, n)
    }

    #[test]
    fn primary_parts() {
        let g = zoo::cyclic(12);
        let chars = linear_characters(&g);
        for chi in &chars {
            let (c2, k2) = p_primary_part(chi, 2);
            let (c3, k3) = p_primary_part(chi, 3);
            assert_eq!(c2.order(), 2u64.pow(k2));
            assert_eq!(c3.order(), 3u64.pow(k3));
            assert_eq!(c2.order() * c3.order(), chi.order());
            // χ = χ₂ χ₃
            for x in 0..12 {
                assert_eq!((c2.exponent_at(x) + c3.exponent_at(x)) % 12, chi.exponent_at(x));
            }
        }
    }

    #[test]
    fn prop_on_f21() {
        let (g, n) = c7_in_f21();
        let field = character_field(&g);
        let whole = Subgroup::whole(&g);
        let chi = linear_characters(n.group()).into_iter().find(|c| c.order() == 7).unwrap();
        let ind = induce(&n, &chi.to_class_function(&field)).unwrap();
        // whole.group() relabels nothing, so the class lists agree
        let s = ClassFunction::new(whole.group(), &field, ind.values().to_vec()).unwrap();
        assert_eq!(verify_prop_nh(&n, &whole, &chi, &s, 7).unwrap(), PropVerdict::Holds);
        // S = χ on H = N
        let s = chi.to_class_function(&field);
        assert_eq!(verify_prop_nh(&n, &n, &chi, &s, 7).unwrap(), PropVerdict::Holds);
        // p = 3 does not exceed n = 3
        let whole_n = Subgroup::whole(&g);
        let lin = linear_characters(whole_n.group()).into_iter().find(|c| c.order() == 3).unwrap();
        let s = lin.to_class_function(&field);
        let err = verify_prop_nh(&n, &whole_n, &chi, &s, 3).unwrap_err();
        assert!(matches!(err, MackeyError::HypothesisFailed(ref c) if c == "p > n"));
        // trivial χ
        let triv = linear_characters(n.group()).into_iter().find(|c| c.is_trivial()).unwrap();
        assert!(verify_prop_nh(&n, &n, &triv, &triv.to_class_function(&field), 7).is_err());
    }

    #[test]
    fn sweep_f21() {
        let g = zoo::frobenius(7, 3, 2);
        let r = sweep_prop_nh(&g).unwrap();
        assert!(r.counterexamples.is_empty());
        // N = C7: six characters of order 7, each matched by H = G once and
        // by H = N through its three conjugates.  N = G with p = 3: the two
        // characters of order 3, matched only by themselves.
        assert_eq!(r.qualifying, 6 + 2);
        assert_eq!(r.matches, 6 * 4 + 2);
        assert_eq!(r.holds, r.matches);
    }

    #[test]
    fn res_nontrivial_guards() {
        let (g, n) = c7_in_f21();
        let whole = Subgroup::whole(&g);
        let chi = linear_characters(n.group()).into_iter().find(|c| c.order() == 7).unwrap();
        assert!(check_res_nontrivial(&n, &whole, &chi, 7, 3).unwrap());
        let c3 = g.all_subgroups().into_iter().find(|s| s.len() == 3).unwrap();
        let c3 = Subgroup::new(&g, &c3).unwrap();
        assert!(check_res_nontrivial(&n, &c3, &chi, 7, 3).is_err());
        let triv = linear_characters(n.group()).into_iter().find(|c| c.is_trivial()).unwrap();
        assert!(check_res_nontrivial(&n, &whole, &triv, 7, 3).is_err());
        let r = sweep_res_nontrivial(&g).unwrap();
        assert!(r.checked > 0);
        assert_eq!(r.trivial_restrictions, 0);
    }
}

//! Finite groups given by a multiplication table.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use num_integer::Integer;

use super::MackeyError;

/// Table size up to which `from_table` checks associativity exhaustively.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 200;

/// A finite group on the elements `0..order`; `0` is the identity.
#[derive(Debug)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    element_order: Vec<u64>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    exponent: u64,
}

impl FiniteGroup {
    /// Closure of permutations of `0..degree`; the product is
    /// `(a * b)(x) = a(b(x))`.
    pub fn from_permutations(name: &str, gens: &[Vec<usize>]) -> Result<Arc<Self>, MackeyError> {
        let degree = gens.first().map_or(1, |g| g.len());
        for (i, g) in gens.iter().enumerate() {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(MackeyError::Malformed(format!("generator {i} is not a permutation of 0..{degree}")));
            }
        }
        let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&x| a[x]).collect() };
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let next = compose(g, &elements[i]);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        let table = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        Ok(Arc::new(Self::from_checked_table(name, table)))
    }

    /// Validates a Cayley table and relabels so the identity is `0`.
    pub fn from_table(name: &str, table: Vec<Vec<usize>>) -> Result<Arc<Self>, MackeyError> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(MackeyError::Malformed("table is not square over 0..n".into()));
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| MackeyError::Malformed("no identity element".into()))?;
        for x in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for y in 0..n {
                if std::mem::replace(&mut row[table[x][y]], true) || std::mem::replace(&mut col[table[y][x]], true) {
                    return Err(MackeyError::Malformed("table is not a Latin square".into()));
                }
            }
        }
        if n <= ASSOCIATIVITY_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = table[a][b];
                    for c in 0..n {
                        if table[ab][c] != table[a][table[b][c]] {
                            return Err(MackeyError::Malformed(format!("not associative at ({a}, {b}, {c})")));
                        }
                    }
                }
            }
        }
        // swap labels 0 and e
        let relabel = |x: usize| if x == e { 0 } else if x == 0 { e } else { x };
        let mut t = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                t[relabel(a)][relabel(b)] = relabel(table[a][b]);
            }
        }
        Ok(Arc::new(Self::from_checked_table(name, t)))
    }

    fn from_checked_table(name: &str, table: Vec<Vec<usize>>) -> Self {
        let n = table.len();
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| table[a][b] == 0).expect("group table");
        }
        let element_order: Vec<u64> = (0..n)
            .map(|a| {
                let (mut x, mut k) = (a, 1u64);
                while x != 0 {
                    x = table[a][x];
                    k += 1;
                }
                k
            })
            .collect();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let members: BTreeSet<usize> = (0..n).map(|g| table[table[g][x]][inverse[g]]).collect();
            for &y in &members {
                class_of[y] = classes.len();
            }
            classes.push(members.into_iter().collect());
        }
        let exponent = element_order.iter().fold(1u64, |acc, &o| acc.lcm(&o));
        FiniteGroup {
            name: name.to_string(),
            table,
            inverse,
            element_order,
            classes,
            class_of,
            exponent,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g x g^{-1}`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.table[self.table[g][x]][self.inverse[g]]
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.element_order[a]
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.table[g][x];
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        !set.is_empty()
            && set.iter().all(|&x| x < self.order())
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.table[a][self.inverse[b]])))
    }

    pub fn is_normal(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        (0..self.order()).all(|g| set.iter().all(|&x| set.contains(&self.conj(g, x))))
    }

    /// Every subgroup, as sorted element lists, ordered by size.
    pub fn all_subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = (0..self.order()).map(|x| self.closure(&[x])).collect();
        let mut frontier: Vec<Vec<usize>> = found.iter().cloned().collect();
        let cyclic: Vec<Vec<usize>> = frontier.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for a in &frontier {
                for c in &cyclic {
                    if c.iter().all(|x| a.binary_search(x).is_ok()) {
                        continue;
                    }
                    let gens: Vec<usize> = a.iter().chain(c.iter()).copied().collect();
                    let joined = self.closure(&gens);
                    if found.insert(joined.clone()) {
                        next.push(joined);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().collect();
        out.sort_by_key(|s| (s.len(), s.clone()));
        out
    }

    pub fn normal_subgroups(&self) -> Vec<Vec<usize>> {
        self.all_subgroups().into_iter().filter(|s| self.is_normal(s)).collect()
    }

    /// A small generating set, picked greedily.
    pub fn generating_set(&self, elems: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = vec![0usize];
        let mut by_order: Vec<usize> = elems.to_vec();
        by_order.sort_by_key(|&x| std::cmp::Reverse(self.element_order[x]));
        for x in by_order {
            if current.binary_search(&x).is_err() {
                gens.push(x);
                current = self.closure(&gens);
            }
        }
        gens
    }

    /// Left-coset representatives of `sub` (least element of each coset).
    pub fn left_transversal(&self, sub: &[usize]) -> Vec<usize> {
        let mut covered = vec![false; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if !covered[g] {
                reps.push(g);
                for &h in sub {
                    covered[self.table[g][h]] = true;
                }
            }
        }
        reps
    }
}

/// A subgroup of `parent`, carried as a group in its own right.
#[derive(Debug, Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    group: Arc<FiniteGroup>,
    /// Parent index of each subgroup element.
    elements: Vec<usize>,
    /// Inverse of `elements`.
    position: HashMap<usize, usize>,
}

impl Subgroup {
    pub fn new(parent: &Arc<FiniteGroup>, elems: &[usize]) -> Result<Self, MackeyError> {
        if !parent.is_subgroup(elems) {
            return Err(MackeyError::NotSubgroup);
        }
        let mut elements: Vec<usize> = elems.to_vec();
        elements.sort_unstable();
        elements.dedup();
        let position: HashMap<usize, usize> = elements.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let table = elements
            .iter()
            .map(|&a| elements.iter().map(|&b| position[&parent.mul(a, b)]).collect())
            .collect();
        // elements[0] is the identity 0, so the table is already normalized
        let group = Arc::new(FiniteGroup::from_checked_table(&format!("{} <= {}", elements.len(), parent.name()), table));
        Ok(Subgroup {
            parent: parent.clone(),
            group,
            elements,
            position,
        })
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        Self::new(parent, &(0..parent.order()).collect::<Vec<_>>()).expect("whole group")
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.elements.len()
    }

    /// Subgroup index of a parent element, if it lies in the subgroup.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.position.get(&x).copied()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.position.contains_key(&x)
    }

    pub fn is_normal(&self) -> bool {
        self.parent.is_normal(&self.elements)
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        other.elements.iter().all(|x| self.contains(*x))
    }

    /// `self ∩ other`, as parent indices.
    pub fn intersection(&self, other: &Subgroup) -> Vec<usize> {
        self.elements.iter().copied().filter(|x| other.contains(*x)).collect()
    }

    /// `g S g^{-1}`, as parent indices.
    pub fn conjugate_elements(&self, g: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.elements.iter().map(|&x| self.parent.conj(g, x)).collect();
        out.sort_unstable();
        out
    }
}

/// Double coset representatives for `H \ G / K`, least parent index first.
pub fn double_cosets(h: &Subgroup, k: &Subgroup) -> Result<Vec<usize>, MackeyError> {
    if !Arc::ptr_eq(h.parent(), k.parent()) {
        return Err(MackeyError::DifferentParents);
    }
    let g = h.parent();
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if covered[x] {
            continue;
        }
        reps.push(x);
        for &a in h.elements() {
            let ax = g.mul(a, x);
            for &b in k.elements() {
                covered[g.mul(ax, b)] = true;
            }
        }
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::zoo;

    #[test]
    fn permutation_closure_orders() {
        assert_eq!(zoo::symmetric(4).order(), 24);
        assert_eq!(zoo::alternating(5).order(), 60);
        assert_eq!(zoo::dihedral(6).order(), 12);
        assert_eq!(zoo::quaternion().order(), 8);
        assert_eq!(zoo::sl2_3().order(), 24);
        assert_eq!(zoo::frobenius(13, 4, 5).order(), 52);
    }

    #[test]
    fn class_counts_and_subgroup_counts() {
        // (group, classes, subgroups)
        let cases = [
            (zoo::symmetric(3), 3, 6),
            (zoo::symmetric(4), 5, 30),
            (zoo::alternating(4), 4, 10),
            (zoo::alternating(5), 5, 59),
            (zoo::quaternion(), 5, 6),
            (zoo::dihedral(4), 5, 10),
            (zoo::sl2_3(), 7, 15),
            (zoo::frobenius(7, 3, 2), 5, 10),
        ];
        for (g, k, s) in cases {
            assert_eq!(g.classes().len(), k, "{}", g.name());
            assert_eq!(g.all_subgroups().len(), s, "{}", g.name());
        }
        assert_eq!(zoo::alternating(5).normal_subgroups().len(), 2);
        assert_eq!(zoo::symmetric(4).normal_subgroups().len(), 4);
    }

    #[test]
    fn table_validation() {
        let z3 = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = FiniteGroup::from_table("C3", z3).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.mul(0, 2), 2);
        assert_eq!(g.exponent(), 3);
        // a Latin square that is not associative (a loop of order 5)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table("L", loop5), Err(MackeyError::Malformed(_))));
        assert!(FiniteGroup::from_table("bad", vec![vec![0, 0], vec![0, 1]]).is_err());
        assert!(FiniteGroup::from_permutations("bad", &[vec![0, 0, 1]]).is_err());
    }

    #[test]
    fn double_coset_counts() {
        let s4 = zoo::symmetric(4);
        let subs = s4.all_subgroups();
        for h in &subs {
            for k in &subs {
                let h = Subgroup::new(&s4, h).unwrap();
                let k = Subgroup::new(&s4, k).unwrap();
                let reps = double_cosets(&h, &k).unwrap();
                // |HxK| = |H||K| / |H ∩ xKx^{-1}|
                let total: usize = reps
                    .iter()
                    .map(|&x| {
                        let conj = Subgroup::new(&s4, &k.conjugate_elements(x)).unwrap();
                        h.order() * k.order() / h.intersection(&conj).len()
                    })
                    .sum();
                assert_eq!(total, 24);
                assert_eq!(reps[0], 0);
            }
        }
    }
}

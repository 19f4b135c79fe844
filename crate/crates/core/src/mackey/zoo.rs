//! Small groups used as test fixtures and sweep targets.

use std::sync::Arc;

use super::group::FiniteGroup;

fn perm_group(name: &str, gens: &[Vec<usize>]) -> Arc<FiniteGroup> {
    FiniteGroup::from_permutations(name, gens).expect("fixture generators are permutations")
}

fn cycle(n: usize) -> Vec<usize> {
    (0..n).map(|i| (i + 1) % n).collect()
}

pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
    perm_group(&format!("C{n}"), &[cycle(n.max(1))])
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> Arc<FiniteGroup> {
    let flip: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    perm_group(&format!("D{n}"), &[cycle(n), flip])
}

pub fn symmetric(n: usize) -> Arc<FiniteGroup> {
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    perm_group(&format!("S{n}"), &[cycle(n), swap])
}

pub fn alternating(n: usize) -> Arc<FiniteGroup> {
    // 3-cycles (0 1 k) generate A_n
    let gens: Vec<Vec<usize>> = (2..n)
        .map(|k| {
            let mut p: Vec<usize> = (0..n).collect();
            p[0] = 1;
            p[1] = k;
            p[k] = 0;
            p
        })
        .collect();
    perm_group(&format!("A{n}"), &gens)
}

/// Quaternion group, acting on itself by left multiplication.
pub fn quaternion() -> Arc<FiniteGroup> {
    // element 4*s + u means (-1)^s * [1, i, j, k][u]
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let left = |u: usize| -> Vec<usize> {
        (0..8)
            .map(|x| {
                let (s, v) = (x / 4, x % 4);
                let (t, w) = UNIT[u][v];
                4 * ((s + t) % 2) + w
            })
            .collect()
    };
    perm_group("Q8", &[left(1), left(2)])
}

/// `SL(2, 3)` acting on the nonzero vectors of `F_3^2`.
pub fn sl2_3() -> Arc<FiniteGroup> {
    let vecs: Vec<(usize, usize)> = (0..9).map(|i| (i / 3, i % 3)).filter(|&v| v != (0, 0)).collect();
    let act = |m: [[usize; 2]; 2]| -> Vec<usize> {
        vecs.iter()
            .map(|&(x, y)| {
                let img = ((m[0][0] * x + m[0][1] * y) % 3, (m[1][0] * x + m[1][1] * y) % 3);
                vecs.iter().position(|&v| v == img).unwrap()
            })
            .collect()
    };
    perm_group("SL(2,3)", &[act([[1, 1], [0, 1]]), act([[1, 0], [1, 1]])])
}

/// `C_p ⋊ C_n` acting on `Z/p` by `x ↦ x + 1` and `x ↦ a x`, where `a`
/// has multiplicative order `n` modulo `p`.
pub fn frobenius(p: usize, n: usize, a: usize) -> Arc<FiniteGroup> {
    let mult: Vec<usize> = (0..p).map(|x| x * a % p).collect();
    let g = perm_group(&format!("C{p}:C{n}"), &[cycle(p), mult]);
    assert_eq!(g.order(), p * n, "a must have order n modulo p");
    g
}

/// Direct product of permutation groups on disjoint point sets.
pub fn direct_product(name: &str, factors: &[Vec<Vec<usize>>]) -> Arc<FiniteGroup> {
    let degrees: Vec<usize> = factors.iter().map(|gens| gens[0].len()).collect();
    let total: usize = degrees.iter().sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for (gs, &d) in factors.iter().zip(&degrees) {
        for g in gs {
            let mut p: Vec<usize> = (0..total).collect();
            for i in 0..d {
                p[offset + i] = offset + g[i];
            }
            gens.push(p);
        }
        offset += d;
    }
    perm_group(name, &gens)
}

/// Groups of order at most 24.
pub fn small_groups() -> Vec<Arc<FiniteGroup>> {
    let s3 = vec![cycle(3), vec![1, 0, 2]];
    let mut out: Vec<Arc<FiniteGroup>> = (1..=8).map(cyclic).collect();
    out.extend([
        direct_product("C2xC2", &[vec![cycle(2)], vec![cycle(2)]]),
        direct_product("C2xC4", &[vec![cycle(2)], vec![cycle(4)]]),
        direct_product("C2xC2xC2", &[vec![cycle(2)], vec![cycle(2)], vec![cycle(2)]]),
        symmetric(3),
        dihedral(4),
        quaternion(),
        cyclic(9),
        dihedral(5),
        cyclic(12),
        alternating(4),
        dihedral(6),
        direct_product("C3xS3", &[vec![cycle(3)], s3]),
        frobenius(5, 4, 2),
        frobenius(7, 3, 2),
        sl2_3(),
        symmetric(4),
    ]);
    out
}

/// The Frobenius groups used for the normal-subgroup sweeps.
pub fn frobenius_targets() -> Vec<Arc<FiniteGroup>> {
    vec![frobenius(7, 3, 2), frobenius(13, 4, 5), frobenius(11, 5, 3)]
}

/// Groups of order at most 60.
pub fn groups_up_to_60() -> Vec<Arc<FiniteGroup>> {
    let mut out = small_groups();
    out.extend([dihedral(10), alternating(5), frobenius(13, 4, 5), frobenius(11, 5, 3)]);
    out
}

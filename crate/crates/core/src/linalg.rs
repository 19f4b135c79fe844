//! Dense linear algebra over a [`FieldSpec`], on raw element codes.
//!
//! Square matrices are flat row-major slices of length `n * n`; general
//! matrices are `Vec` of rows. Vectors are column vectors.

use crate::ffield::{Elem, FieldSpec};

pub fn identity(f: &FieldSpec, n: usize) -> Vec<Elem> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = f.one();
    }
    m
}

/// `out = a * b` for `n x n` matrices.
#[inline]
pub fn mat_mul_into(f: &FieldSpec, n: usize, a: &[Elem], b: &[Elem], out: &mut [Elem]) {
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0;
            for k in 0..n {
                let x = a[i * n + k];
                if x != 0 {
                    acc = f.add(acc, f.mul(x, b[k * n + j]));
                }
            }
            out[i * n + j] = acc;
        }
    }
}

pub fn mat_mul(f: &FieldSpec, n: usize, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut out = vec![0; n * n];
    mat_mul_into(f, n, a, b, &mut out);
    out
}

pub fn mat_vec(f: &FieldSpec, n: usize, a: &[Elem], v: &[Elem]) -> Vec<Elem> {
    (0..n)
        .map(|i| {
            (0..n).fold(0, |acc, k| f.add(acc, f.mul(a[i * n + k], v[k])))
        })
        .collect()
}

pub fn transpose(n: usize, a: &[Elem]) -> Vec<Elem> {
    let mut t = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            t[j * n + i] = a[i * n + j];
        }
    }
    t
}

pub fn dot(f: &FieldSpec, u: &[Elem], v: &[Elem]) -> Elem {
    u.iter().zip(v).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

pub fn scale_vec(f: &FieldSpec, c: Elem, v: &[Elem]) -> Vec<Elem> {
    v.iter().map(|&x| f.mul(c, x)).collect()
}

pub fn add_vec(f: &FieldSpec, u: &[Elem], v: &[Elem]) -> Vec<Elem> {
    u.iter().zip(v).map(|(&x, &y)| f.add(x, y)).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
/// Zero rows are dropped.
pub fn rref(f: &FieldSpec, rows: &mut Vec<Vec<Elem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]).unwrap();
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(f: &FieldSpec, rows: &[Vec<Elem>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m, ncols).len()
}

/// Rank of a flat square matrix.
pub fn rank_square(f: &FieldSpec, n: usize, a: &[Elem]) -> usize {
    rank(f, &rows_of(n, a), n)
}

pub fn rows_of(n: usize, a: &[Elem]) -> Vec<Vec<Elem>> {
    if n == 0 {
        return Vec::new();
    }
    a.chunks(n).map(|r| r.to_vec()).collect()
}

/// Basis of `{x : A x = 0}` for `A` given by rows.
pub fn nullspace(f: &FieldSpec, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let mut m = rows.to_vec();
    let pivots = rref(f, &mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![0; ncols];
            x[fc] = f.one();
            for (row, &pc) in m.iter().zip(&pivots) {
                x[pc] = f.neg(row[fc]);
            }
            x
        })
        .collect()
}

pub fn inverse(f: &FieldSpec, n: usize, a: &[Elem]) -> Option<Vec<Elem>> {
    let mut aug: Vec<Vec<Elem>> = (0..n)
        .map(|i| {
            let mut row = a[i * n..(i + 1) * n].to_vec();
            row.extend((0..n).map(|j| if i == j { f.one() } else { 0 }));
            row
        })
        .collect();
    let pivots = rref(f, &mut aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().flat_map(|row| row[n..].to_vec()).collect())
}

pub fn det(f: &FieldSpec, n: usize, a: &[Elem]) -> Elem {
    let mut m = rows_of(n, a);
    let mut d = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| m[i][c] != 0) else {
            return 0;
        };
        if p != c {
            m.swap(p, c);
            d = f.neg(d);
        }
        d = f.mul(d, m[c][c]);
        let inv = f.inv(m[c][c]).unwrap();
        for i in c + 1..n {
            if m[i][c] != 0 {
                let factor = f.mul(m[i][c], inv);
                for j in c..n {
                    let y = m[c][j];
                    m[i][j] = f.sub(m[i][j], f.mul(factor, y));
                }
            }
        }
    }
    d
}

pub fn trace(f: &FieldSpec, n: usize, a: &[Elem]) -> Elem {
    (0..n).fold(0, |acc, i| f.add(acc, a[i * n + i]))
}

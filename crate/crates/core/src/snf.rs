//! Dense column echelon form and Smith normal form over a Euclidean ring,
//! with the transforms needed to read off homology bases.

use crate::ring::EuclideanRing;

pub(crate) type Mat<E> = Vec<Vec<E>>;

pub(crate) fn identity<R: EuclideanRing>(r: &R, n: usize) -> Mat<R::E> {
    (0..n).map(|i| (0..n).map(|j| if i == j { r.one() } else { r.zero() }).collect()).collect()
}

/// Column echelon form of `b` (rows × n) by unimodular column operations.
/// Returns `(u, u_inv, rank)` with `b·u` having exactly its first `rank`
/// columns nonzero; the last `n − rank` columns of `u` span ker b.
pub(crate) fn column_echelon<R: EuclideanRing>(r: &R, mut b: Mat<R::E>, n: usize) -> (Mat<R::E>, Mat<R::E>, usize) {
    let mut u = identity(r, n);
    let mut u_inv = identity(r, n);
    let mut rank = 0;
    let rows = b.len();
    for row in 0..rows {
        if rank == n {
            break;
        }
        loop {
            // smallest nonzero entry of this row among the free columns
            let best = (rank..n).filter(|&c| !r.is_zero(&b[row][c])).min_by_key(|&c| (r.norm(&b[row][c]), c));
            let Some(p) = best else { break };
            let mut clean = true;
            for c in rank..n {
                if c == p || r.is_zero(&b[row][c]) {
                    continue;
                }
                let (q, rem) = r.div_rem(&b[row][c], &b[row][p]);
                // column c -= q · column p
                for x in b.iter_mut() {
                    let t = r.mul(&q, &x[p]);
                    x[c] = r.sub(&x[c], &t);
                }
                for x in u.iter_mut() {
                    let t = r.mul(&q, &x[p]);
                    x[c] = r.sub(&x[c], &t);
                }
                // inverse: row p of u_inv += q · row c
                let rc = u_inv[c].clone();
                for (k, v) in rc.iter().enumerate() {
                    u_inv[p][k] = r.add(&u_inv[p][k], &r.mul(&q, v));
                }
                if !r.is_zero(&rem) {
                    clean = false;
                }
            }
            if clean {
                for x in b.iter_mut() {
                    x.swap(p, rank);
                }
                for x in u.iter_mut() {
                    x.swap(p, rank);
                }
                u_inv.swap(p, rank);
                rank += 1;
                break;
            }
        }
    }
    (u, u_inv, rank)
}

/// Smith normal form data of an m × k matrix `a`: `p·a·q = diag(d)`.
/// Only `p` and `p⁻¹` are kept.
pub(crate) struct Smith<E> {
    pub diag: Vec<E>,
    pub p: Mat<E>,
    pub p_inv: Mat<E>,
}

pub(crate) fn smith<R: EuclideanRing>(r: &R, mut a: Mat<R::E>, cols: usize) -> Smith<R::E> {
    let m = a.len();
    let mut p = identity(r, m);
    let mut p_inv = identity(r, m);
    let mut diag = Vec::new();

    // row ops keep p and p⁻¹ in step
    let row_axpy = |a: &mut Mat<R::E>, p: &mut Mat<R::E>, p_inv: &mut Mat<R::E>, dst: usize, q: &R::E, src: usize| {
        // row dst += q · row src
        for mat in [&mut *a, &mut *p] {
            let s = mat[src].clone();
            for (k, v) in s.iter().enumerate() {
                mat[dst][k] = r.add(&mat[dst][k], &r.mul(q, v));
            }
        }
        // p⁻¹: column src -= q · column dst
        for x in p_inv.iter_mut() {
            let t = r.mul(q, &x[dst]);
            x[src] = r.sub(&x[src], &t);
        }
    };
    let row_swap = |a: &mut Mat<R::E>, p: &mut Mat<R::E>, p_inv: &mut Mat<R::E>, i: usize, j: usize| {
        a.swap(i, j);
        p.swap(i, j);
        for x in p_inv.iter_mut() {
            x.swap(i, j);
        }
    };

    let mut t = 0;
    while t < m.min(cols) {
        let best = (t..m)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !r.is_zero(&a[i][j]))
            .min_by_key(|&(i, j)| (r.norm(&a[i][j]), i, j));
        let Some((pi, pj)) = best else { break };
        row_swap(&mut a, &mut p, &mut p_inv, t, pi);
        for x in a.iter_mut() {
            x.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if r.is_zero(&a[i][t]) {
                    continue;
                }
                let (q, rem) = r.div_rem(&a[i][t], &a[t][t]);
                row_axpy(&mut a, &mut p, &mut p_inv, i, &r.neg(&q), t);
                dirty |= !r.is_zero(&rem);
            }
            for j in t + 1..cols {
                if r.is_zero(&a[t][j]) {
                    continue;
                }
                let (q, rem) = r.div_rem(&a[t][j], &a[t][t]);
                for x in a.iter_mut() {
                    let s = r.mul(&q, &x[t]);
                    x[j] = r.sub(&x[j], &s);
                }
                dirty |= !r.is_zero(&rem);
            }
            if dirty {
                // a remainder is now smaller than the pivot: move it in
                let best = (t..m)
                    .flat_map(|i| (t..cols).map(move |j| (i, j)))
                    .filter(|&(i, j)| (i == t || j == t) && !r.is_zero(&a[i][j]))
                    .min_by_key(|&(i, j)| (r.norm(&a[i][j]), i, j))
                    .unwrap();
                row_swap(&mut a, &mut p, &mut p_inv, t, best.0);
                for x in a.iter_mut() {
                    x.swap(t, best.1);
                }
                continue;
            }
            // divisibility of the rest by the pivot
            let bad = (t + 1..m).find(|&i| (t + 1..cols).any(|j| !r.divides(&a[t][t], &a[i][j])));
            match bad {
                Some(i) => {
                    let one = r.one();
                    row_axpy(&mut a, &mut p, &mut p_inv, t, &one, i);
                }
                None => break,
            }
        }
        // canonical associate
        let s = r.associate_unit(&a[t][t]);
        if s != r.one() {
            let s_inv = r.unit_inverse(&s);
            for k in 0..cols {
                a[t][k] = r.mul(&s, &a[t][k]);
            }
            for k in 0..m {
                p[t][k] = r.mul(&s, &p[t][k]);
            }
            for x in p_inv.iter_mut() {
                x[t] = r.mul(&x[t], &s_inv);
            }
        }
        diag.push(a[t][t].clone());
        t += 1;
    }
    Smith { diag, p, p_inv }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, Rationals};

    fn mul(a: &Mat<i64>, b: &Mat<i64>) -> Mat<i64> {
        let n = b.first().map_or(0, |r| r.len());
        a.iter().map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect()).collect()
    }

    #[test]
    fn kernel_of_small_matrix() {
        let b = vec![vec![2i64, 4, 6], vec![1, 1, 1]];
        let (u, u_inv, rank) = column_echelon(&Integers, b.clone(), 3);
        assert_eq!(rank, 2);
        assert_eq!(mul(&u, &u_inv), identity(&Integers, 3));
        let bu = mul(&b, &u);
        assert!(bu.iter().all(|row| row[2] == 0));
        assert_ne!(u.iter().map(|row| row[2]).collect::<Vec<_>>(), vec![0, 0, 0]);
    }

    #[test]
    fn smith_of_diagonalizable() {
        let a = vec![vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith(&Integers, a.clone(), 3);
        assert_eq!(s.diag, vec![2, 6, 12]);
        assert_eq!(mul(&s.p, &s.p_inv), identity(&Integers, 3));
    }

    #[test]
    fn smith_needs_divisibility_fix() {
        let a = vec![vec![2i64, 0], vec![0, 3]];
        let s = smith(&Integers, a, 2);
        assert_eq!(s.diag, vec![1, 6]);
    }

    #[test]
    fn smith_over_rationals() {
        use num_rational::BigRational;
        let q = |x: i64| BigRational::from_integer(x.into());
        let s = smith(&Rationals, vec![vec![q(2), q(4)], vec![q(1), q(2)]], 2);
        assert_eq!(s.diag, vec![q(1)]);
    }
}

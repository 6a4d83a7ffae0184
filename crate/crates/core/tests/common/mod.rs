#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;
use toric_fsig::linalg::IntMat;

/// Determinant by permutation expansion; independent of the library's
/// elimination code.
pub fn leibniz_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = BigInt::zero();
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(perm: &mut Vec<usize>, k: usize, m: &[Vec<i64>], total: &mut BigInt) {
    let n = perm.len();
    if k == n {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        let mut prod = BigInt::from(1);
        for (i, &j) in perm.iter().enumerate() {
            prod *= m[i][j];
        }
        if inversions % 2 == 0 {
            *total += prod;
        } else {
            *total -= prod;
        }
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(perm, k + 1, m, total);
        perm.swap(k, i);
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all k×k minors, the k-th determinantal divisor.
pub fn determinantal_divisor(a: &[Vec<i64>], k: usize) -> BigInt {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut g = BigInt::zero();
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let minor: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j]).collect()).collect();
            g = g.gcd(&leibniz_det(&minor));
        }
    }
    g
}

pub fn random_matrix<R: Rng>(rng: &mut R, max_dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let r = rng.gen_range(0..=max_dim);
    let c = rng.gen_range(0..=max_dim);
    (0..r).map(|_| (0..c).map(|_| rng.gen_range(-bound..=bound)).collect()).collect()
}

pub fn to_mat(rows: &[Vec<i64>], cols: usize) -> IntMat {
    IntMat::from_rows(cols, rows)
}

/// Product of random elementary row operations applied to the identity.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> IntMat {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if n >= 2 {
        for _ in 0..6 {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n);
            while j == i {
                j = rng.gen_range(0..n);
            }
            match rng.gen_range(0..3) {
                0 => m.swap(i, j),
                1 => {
                    for x in m[i].iter_mut() {
                        *x = -*x;
                    }
                }
                _ => {
                    let f = rng.gen_range(-3..=3);
                    let src = m[j].clone();
                    for (x, y) in m[i].iter_mut().zip(src) {
                        *x += f * y;
                    }
                }
            }
        }
    }
    IntMat::from_rows(n, &m)
}

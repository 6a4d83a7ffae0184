//! Exact rational polytopes given by inequalities `a·x <= b`.
//!
//! Vertices are found by brute force over `d`-subsets of the constraints and
//! the volume by a pulling triangulation of the face lattice. Both are
//! exponential in the number of constraints and only meant for the small
//! dimensions that occur here.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type Point = Vec<BigRational>;

/// The closed half-space `normal · x <= bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSpace {
    pub normal: Vec<BigRational>,
    pub bound: BigRational,
}

impl HalfSpace {
    fn eval(&self, x: &[BigRational]) -> BigRational {
        dot(&self.normal, x)
    }

    fn contains(&self, x: &[BigRational]) -> bool {
        self.eval(x) <= self.bound
    }

    fn is_tight(&self, x: &[BigRational]) -> bool {
        self.eval(x) == self.bound
    }
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Rank of a list of rational vectors.
pub fn rank(vectors: &[Vec<BigRational>]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = vectors.to_vec();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &rows[r][c];
            for j in c..cols {
                let v = &f * &rows[r][j];
                rows[i][j] -= v;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Dimension of the affine hull of a point set (`None` when empty).
pub fn affine_rank(points: &[Point]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Vec<Vec<BigRational>> = rest
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    Some(rank(&diffs))
}

/// Solves the square system `a · x = b`, returning `None` if singular.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for v in m[c].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..=n {
                let v = &f * &m[c][j];
                m[i][j] -= v;
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// All vertices of `{x : h.normal·x <= h.bound for all h}` in `R^dim`,
/// sorted and deduplicated.
pub fn vertices(constraints: &[HalfSpace], dim: usize) -> Vec<Point> {
    let mut found = BTreeSet::new();
    if dim == 0 {
        if constraints.iter().all(|h| BigRational::zero() <= h.bound) {
            found.insert(Vec::new());
        }
        return found.into_iter().collect();
    }
    for subset in Combinations::new(constraints.len(), dim) {
        let a: Vec<Vec<BigRational>> = subset.iter().map(|&i| constraints[i].normal.clone()).collect();
        let b: Vec<BigRational> = subset.iter().map(|&i| constraints[i].bound.clone()).collect();
        if let Some(x) = solve(&a, &b) {
            if constraints.iter().all(|h| h.contains(&x)) {
                found.insert(x);
            }
        }
    }
    found.into_iter().collect()
}

/// Volume of the polytope with the given constraints and vertex set.
///
/// Uses a pulling triangulation: the polytope is coned from its first
/// vertex over every facet that avoids it, recursively. Returns zero for
/// lower-dimensional input.
pub fn volume(constraints: &[HalfSpace], verts: &[Point], dim: usize) -> BigRational {
    if verts.is_empty() || affine_rank(verts) != Some(dim) {
        return BigRational::zero();
    }
    let all: Vec<usize> = (0..verts.len()).collect();
    let mut simplices = Vec::new();
    triangulate(constraints, verts, &all, dim, &mut simplices);
    let mut fact = BigInt::from(1);
    for k in 2..=dim {
        fact *= k;
    }
    let total = simplices
        .iter()
        .map(|s| simplex_volume_times_factorial(verts, s))
        .fold(BigRational::zero(), |a, b| a + b);
    total / BigRational::from_integer(fact)
}

fn triangulate(
    constraints: &[HalfSpace],
    verts: &[Point],
    face: &[usize],
    dim: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if dim == 0 {
        out.push(vec![face[0]]);
        return;
    }
    let apex = face[0];
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for h in constraints {
        let sub: Vec<usize> = face.iter().copied().filter(|&v| h.is_tight(&verts[v])).collect();
        if sub.is_empty() || sub.contains(&apex) || seen.contains(&sub) {
            continue;
        }
        let pts: Vec<Point> = sub.iter().map(|&v| verts[v].clone()).collect();
        if affine_rank(&pts) != Some(dim - 1) {
            continue;
        }
        seen.insert(sub.clone());
        let start = out.len();
        triangulate(constraints, verts, &sub, dim - 1, out);
        for s in &mut out[start..] {
            s.push(apex);
        }
    }
}

fn simplex_volume_times_factorial(verts: &[Point], simplex: &[usize]) -> BigRational {
    let base = &verts[simplex[0]];
    let rows: Vec<Vec<BigRational>> = simplex[1..]
        .iter()
        .map(|&v| verts[v].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    det(rows).abs()
}

fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut acc = BigRational::from_integer(BigInt::from(1));
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            acc = -acc;
        }
        acc *= &m[c][c];
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[c][c];
            for j in c..n {
                let v = &f * &m[c][j];
                m[i][j] -= v;
            }
        }
    }
    acc
}

/// Lexicographic `k`-subsets of `0..n`.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn slab(normal: &[i64]) -> [HalfSpace; 2] {
        let n: Vec<BigRational> = normal.iter().map(|&x| r(x, 1)).collect();
        [
            HalfSpace {
                normal: n.iter().map(|x| -x).collect(),
                bound: r(0, 1),
            },
            HalfSpace {
                normal: n,
                bound: r(1, 1),
            },
        ]
    }

    fn slabs(normals: &[&[i64]]) -> Vec<HalfSpace> {
        normals.iter().flat_map(|n| slab(n)).collect()
    }

    #[test]
    fn combinations_count() {
        assert_eq!(Combinations::new(5, 2).count(), 10);
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn unit_cube() {
        for d in 1..=4 {
            let normals: Vec<Vec<i64>> = (0..d)
                .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
                .collect();
            let refs: Vec<&[i64]> = normals.iter().map(|v| v.as_slice()).collect();
            let h = slabs(&refs);
            let v = vertices(&h, d);
            assert_eq!(v.len(), 1 << d);
            assert_eq!(volume(&h, &v, d), r(1, 1));
        }
    }

    #[test]
    fn quadric_box() {
        let h = slabs(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, -1]]);
        let v = vertices(&h, 3);
        assert_eq!(volume(&h, &v, 3), r(2, 3));
    }

    #[test]
    fn triangle_and_degenerate() {
        // x >= 0, y >= 0, x + y <= 1
        let h = vec![
            HalfSpace { normal: vec![r(-1, 1), r(0, 1)], bound: r(0, 1) },
            HalfSpace { normal: vec![r(0, 1), r(-1, 1)], bound: r(0, 1) },
            HalfSpace { normal: vec![r(1, 1), r(1, 1)], bound: r(1, 1) },
        ];
        let v = vertices(&h, 2);
        assert_eq!(v.len(), 3);
        assert_eq!(volume(&h, &v, 2), r(1, 2));

        // a segment in the plane has zero area
        let h = slabs(&[&[1, 0], &[0, 1], &[1, 1]])
            .into_iter()
            .chain(std::iter::once(HalfSpace { normal: vec![r(1, 1), r(-1, 1)], bound: r(0, 1) }))
            .chain(std::iter::once(HalfSpace { normal: vec![r(-1, 1), r(1, 1)], bound: r(0, 1) }))
            .collect::<Vec<_>>();
        let v = vertices(&h, 2);
        assert_eq!(affine_rank(&v), Some(1));
        assert_eq!(volume(&h, &v, 2), r(0, 1));
    }

    #[test]
    fn rank_and_solve() {
        let a = vec![vec![r(1, 1), r(2, 1)], vec![r(2, 1), r(4, 1)]];
        assert_eq!(rank(&a), 1);
        assert!(solve(&a, &[r(1, 1), r(2, 1)]).is_none());
        let a = vec![vec![r(2, 1), r(0, 1)], vec![r(1, 1), r(1, 1)]];
        assert_eq!(solve(&a, &[r(1, 1), r(1, 1)]), Some(vec![r(1, 2), r(1, 2)]));
    }
}

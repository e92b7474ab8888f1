//! Dense exact linear algebra over the rationals.
//!
//! Matrices are plain row-major `Vec<Point>`; everything here is desk-scale
//! (a handful of rows and columns) so no attempt is made at fraction-free
//! elimination.

use num_traits::{One, Zero};

use crate::rational::{Point, Rational};

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Point]) -> (Vec<Point>, Vec<usize>) {
    let mut m: Vec<Point> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &factor * p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Point]) -> usize {
    rref(rows).1.len()
}

/// True iff the two row sets span the same subspace.
pub fn row_space_eq(a: &[Point], b: &[Point]) -> bool {
    let ra = rank(a);
    if ra != rank(b) {
        return false;
    }
    let mut joined = a.to_vec();
    joined.extend_from_slice(b);
    rank(&joined) == ra
}

/// Some solution of `A x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(a: &[Point], b: &[Rational]) -> Option<Point> {
    let ncols = a.first().map_or(0, Vec::len);
    let augmented: Vec<Point> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (reduced, pivots) = rref(&augmented);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &c) in reduced.iter().zip(&pivots) {
        x[c] = row[ncols].clone();
    }
    Some(x)
}

/// A basis of `{x : A x = 0}`, one vector per free column.
pub fn nullspace(a: &[Point], ncols: usize) -> Vec<Point> {
    let (reduced, pivots) = rref(a);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); ncols];
            v[free] = Rational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

pub fn transpose(rows: &[Point]) -> Vec<Point> {
    let ncols = rows.first().map_or(0, Vec::len);
    (0..ncols)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect()
}

pub fn mat_vec(a: &[Point], x: &[Rational]) -> Point {
    a.iter().map(|row| crate::rational::dot(row, x)).collect()
}

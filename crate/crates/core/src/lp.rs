//! Exact feasibility for small rational linear systems.
//!
//! Equalities are removed by Gaussian elimination (the solution set is
//! parametrised as `x0 + N t`), the remaining inequalities in `t` go through
//! Fourier–Motzkin elimination, and a witness is rebuilt by back-substitution.
//! Everything is exact; intended for systems with at most a dozen variables.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::linalg;
use crate::rational::{dot, Point, Rational};

/// `coeffs · x <= bound`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Point,
    pub bound: Rational,
}

impl Inequality {
    pub fn new(coeffs: Point, bound: Rational) -> Self {
        Inequality { coeffs, bound }
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        dot(&self.coeffs, x) <= self.bound
    }
}

/// A point satisfying every equality `a · x = b` and every inequality, if one exists.
pub fn feasible_point(
    nvars: usize,
    equalities: &[(Point, Rational)],
    inequalities: &[Inequality],
) -> Option<Point> {
    let (base, directions) = if equalities.is_empty() {
        let identity = (0..nvars)
            .map(|i| {
                let mut e = vec![Rational::zero(); nvars];
                e[i] = Rational::one();
                e
            })
            .collect();
        (vec![Rational::zero(); nvars], identity)
    } else {
        let a: Vec<Point> = equalities.iter().map(|(row, _)| row.clone()).collect();
        let b: Vec<Rational> = equalities.iter().map(|(_, rhs)| rhs.clone()).collect();
        let base = linalg::solve(&a, &b)?;
        (base, linalg::nullspace(&a, nvars))
    };

    let reduced: Vec<(Point, Rational)> = inequalities
        .iter()
        .map(|ineq| {
            let coeffs = directions.iter().map(|d| dot(&ineq.coeffs, d)).collect();
            (coeffs, &ineq.bound - dot(&ineq.coeffs, &base))
        })
        .collect();
    let t = fourier_motzkin(reduced, directions.len())?;

    let mut x = base;
    for (d, tk) in directions.iter().zip(&t) {
        for (xi, di) in x.iter_mut().zip(d) {
            *xi += di * tk;
        }
    }
    Some(x)
}

/// Drops trivial rows, detects `0 <= negative`, rescales and keeps the tightest
/// bound per coefficient direction.
fn normalize(rows: Vec<(Point, Rational)>) -> Option<Vec<(Point, Rational)>> {
    let mut tightest: BTreeMap<Point, Rational> = BTreeMap::new();
    for (coeffs, bound) in rows {
        let Some(lead) = coeffs.iter().find(|c| !c.is_zero()).map(Signed::abs) else {
            if bound.is_negative() {
                return None;
            }
            continue;
        };
        let coeffs: Point = coeffs.iter().map(|c| c / &lead).collect();
        let bound = bound / &lead;
        tightest
            .entry(coeffs)
            .and_modify(|b| {
                if bound < *b {
                    *b = bound.clone();
                }
            })
            .or_insert(bound);
    }
    Some(tightest.into_iter().collect())
}

fn eliminate(rows: &[(Point, Rational)], k: usize) -> Option<Vec<(Point, Rational)>> {
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    let mut next = Vec::new();
    for row in rows {
        if row.0[k].is_positive() {
            upper.push(row);
        } else if row.0[k].is_negative() {
            lower.push(row);
        } else {
            next.push(row.clone());
        }
    }
    for (pa, pb) in &upper {
        for (qa, qb) in &lower {
            let sp = Rational::one() / &pa[k];
            let sq = Rational::one() / -qa[k].clone();
            let coeffs: Point = pa.iter().zip(qa).map(|(p, q)| p * &sp + q * &sq).collect();
            next.push((coeffs, pb * &sp + qb * &sq));
        }
    }
    normalize(next)
}

/// Returns some `t` with `a · t <= b` for every row, or `None` if infeasible.
fn fourier_motzkin(rows: Vec<(Point, Rational)>, nvars: usize) -> Option<Point> {
    let mut current = normalize(rows)?;
    let mut stages = Vec::with_capacity(nvars);
    for k in (0..nvars).rev() {
        let next = eliminate(&current, k)?;
        stages.push(current);
        current = next;
    }

    let mut t = vec![Rational::zero(); nvars];
    for k in 0..nvars {
        let system = &stages[nvars - 1 - k];
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for (a, b) in system {
            if a[k].is_zero() {
                continue;
            }
            let rest: Rational = (0..k).fold(Rational::zero(), |acc, j| acc + &a[j] * &t[j]);
            let limit = (b - rest) / &a[k];
            if a[k].is_positive() {
                if hi.as_ref().is_none_or(|h| limit < *h) {
                    hi = Some(limit);
                }
            } else if lo.as_ref().is_none_or(|l| limit > *l) {
                lo = Some(limit);
            }
        }
        t[k] = match (lo, hi) {
            (Some(l), _) => l,
            (None, Some(h)) => h,
            (None, None) => Rational::zero(),
        };
    }
    Some(t)
}

/// Barycentric coordinates of `target` with respect to `points`, if it lies in their hull.
pub fn convex_combination(target: &[Rational], points: &[Point]) -> Option<Point> {
    if points.is_empty() {
        return None;
    }
    let m = points.len();
    let mut equalities: Vec<(Point, Rational)> = (0..target.len())
        .map(|c| {
            (
                points.iter().map(|p| p[c].clone()).collect(),
                target[c].clone(),
            )
        })
        .collect();
    equalities.push((vec![Rational::one(); m], Rational::one()));
    let nonneg: Vec<Inequality> = (0..m)
        .map(|j| {
            let mut row = vec![Rational::zero(); m];
            row[j] = -Rational::one();
            Inequality::new(row, Rational::zero())
        })
        .collect();
    feasible_point(m, &equalities, &nonneg)
}

pub fn in_convex_hull(target: &[Rational], points: &[Point]) -> bool {
    convex_combination(target, points).is_some()
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for i in start..n {
            if n - i < k - acc.len() {
                break;
            }
            acc.push(i);
            go(i + 1, n, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Vertices of `{x >= 0 : A x = b}` via basic feasible solutions: for every choice of
/// `rank(A)` columns with a nonsingular submatrix, the other coordinates are set to zero
/// and the square system is solved. Sorted and deduplicated.
pub fn standard_form_vertices(a: &[Point], b: &[Rational]) -> Vec<Point> {
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
    let (reduced, pivots) = linalg::rref(&augmented);
    if pivots.last() == Some(&ncols) {
        return Vec::new();
    }
    let rows: Vec<Point> = reduced.iter().map(|r| r[..ncols].to_vec()).collect();
    let rhs: Vec<Rational> = reduced.iter().map(|r| r[ncols].clone()).collect();
    let r = rows.len();

    let mut out: Vec<Point> = Vec::new();
    for basis in combinations(ncols, r) {
        let sub: Vec<Point> = rows
            .iter()
            .map(|row| basis.iter().map(|&c| row[c].clone()).collect())
            .collect();
        if linalg::rank(&sub) < r {
            continue;
        }
        let Some(xb) = linalg::solve(&sub, &rhs) else {
            continue;
        };
        if xb.iter().any(Signed::is_negative) {
            continue;
        }
        let mut x = vec![Rational::zero(); ncols];
        for (&c, v) in basis.iter().zip(xb) {
            x[c] = v;
        }
        out.push(x);
    }
    out.sort();
    out.dedup();
    out
}

/// True iff `{x >= 0 : A x = b}` contains no ray, i.e. `A x = 0, x >= 0` forces `x = 0`.
pub fn standard_form_bounded(a: &[Point]) -> bool {
    let ncols = a.first().map_or(0, Vec::len);
    let mut equalities: Vec<(Point, Rational)> = a
        .iter()
        .map(|row| (row.clone(), Rational::zero()))
        .collect();
    equalities.push((vec![Rational::one(); ncols], Rational::one()));
    let nonneg: Vec<Inequality> = (0..ncols)
        .map(|j| {
            let mut row = vec![Rational::zero(); ncols];
            row[j] = -Rational::one();
            Inequality::new(row, Rational::zero())
        })
        .collect();
    feasible_point(ncols, &equalities, &nonneg).is_none()
}

/// A linear functional that is at least 1 on every generator, if the generators span a
/// pointed cone not containing the origin among them.
pub fn positive_functional(generators: &[Point]) -> Option<Point> {
    let dim = generators.first()?.len();
    let ineqs: Vec<Inequality> = generators
        .iter()
        .map(|g| Inequality::new(g.iter().map(|x| -x.clone()).collect(), -Rational::one()))
        .collect();
    feasible_point(dim, &[], &ineqs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, point};

    #[test]
    fn hull_membership_on_a_segment() {
        let pts = vec![point(&[1]), point(&[3])];
        assert!(in_convex_hull(&point(&[2]), &pts));
        assert!(!in_convex_hull(&point(&[4]), &pts));
        let lambda = convex_combination(&[frac(5, 2)], &pts).unwrap();
        assert_eq!(lambda, vec![frac(1, 4), frac(3, 4)]);
    }

    #[test]
    fn hull_membership_in_the_plane() {
        let square = vec![
            point(&[0, 0]),
            point(&[2, 0]),
            point(&[0, 2]),
            point(&[2, 2]),
        ];
        assert!(in_convex_hull(&point(&[1, 1]), &square));
        assert!(in_convex_hull(&point(&[2, 1]), &square));
        assert!(!in_convex_hull(&[frac(5, 2), int(0)], &square));
        assert!(!in_convex_hull(&point(&[1, 1]), &[]));
    }

    #[test]
    fn infeasible_inequalities() {
        // x <= 1 and -x <= -2
        let ineqs = vec![
            Inequality::new(point(&[1]), int(1)),
            Inequality::new(point(&[-1]), int(-2)),
        ];
        assert!(feasible_point(1, &[], &ineqs).is_none());
    }

    #[test]
    fn witness_satisfies_system() {
        let ineqs = vec![
            Inequality::new(point(&[1, 1]), int(4)),
            Inequality::new(point(&[-1, 0]), int(-1)),
            Inequality::new(point(&[0, -1]), int(-2)),
            Inequality::new(point(&[1, -3]), int(0)),
        ];
        let x = feasible_point(2, &[], &ineqs).unwrap();
        assert!(ineqs.iter().all(|i| i.holds(&x)));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn simplex_vertices_in_standard_form() {
        // x + y + z = 1
        let v = standard_form_vertices(&[point(&[1, 1, 1])], &[int(1)]);
        assert_eq!(
            v,
            vec![point(&[0, 0, 1]), point(&[0, 1, 0]), point(&[1, 0, 0])]
        );
        assert!(standard_form_bounded(&[point(&[1, 1, 1])]));
        assert!(!standard_form_bounded(&[point(&[1, -1, 0])]));
    }

    #[test]
    fn pointed_and_non_pointed_cones() {
        let gens = vec![point(&[1, 0]), point(&[1, 1]), point(&[1, -1])];
        let phi = positive_functional(&gens).unwrap();
        assert!(gens.iter().all(|g| dot(g, &phi) >= int(1)));
        assert!(positive_functional(&[point(&[1, 0]), point(&[-1, 0])]).is_none());
    }
}

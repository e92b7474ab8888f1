//! Valuation matrices of maximal cones and the Newton-Okounkov data built from them.
//!
//! For `S = {s, t}` the matrix `M_S` has rows `v_f`, the kernel vectors in
//! `(i, j)` order (then unit vectors of unused coordinates), and `w_i` for
//! `i ∉ S` ascending. Its columns are the valuations of the variables and
//! generate the value semigroup; dividing each column by the degree of its
//! variable and taking the hull gives the Newton-Okounkov body.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg;
use crate::lp;
use crate::newton::{graded_cmp, LatticePolytope};
use crate::polynomial::{ExponentVector, SparsePolynomial};
use crate::rational::{dot, int, Point, Rational};
use crate::tropical::{lineality_basis, ray_generator};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationMatrix {
    /// The two (0-based) terms of `S`.
    pub terms: [usize; 2],
    pub rows: Vec<Point>,
}

impl ValuationMatrix {
    pub fn n(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// `𝔳_S(x_j)`: the `j`-th column.
    pub fn column(&self, j: usize) -> Point {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    /// Valuation of a monomial: exponent-weighted sum of columns.
    pub fn monomial_valuation(&self, exponent: &ExponentVector) -> Point {
        self.rows
            .iter()
            .map(|r| crate::rational::dot_exponent(r, exponent.entries()))
            .collect()
    }
}

pub fn valuation_matrix(f: &SparsePolynomial, subset: &[usize]) -> Result<ValuationMatrix> {
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != 2 {
        return Err(Error::SubsetSize {
            expected: 2,
            found: s.len(),
        });
    }
    if let Some(&bad) = s.iter().find(|&&i| i >= f.len()) {
        return Err(Error::TermIndex {
            index: bad,
            len: f.len(),
        });
    }
    let basis = lineality_basis(f)?;
    let mut rows: Vec<Point> = basis.rows().into_iter().map(|r| r.0).collect();
    for i in (0..f.len()).filter(|i| !s.contains(i)) {
        rows.push(ray_generator(f, i)?.w.0);
    }
    let expected = f.n() - 1;
    let found = linalg::rank(&rows);
    if rows.len() != expected || found != expected {
        return Err(Error::RankDeficient { expected, found });
    }
    Ok(ValuationMatrix {
        terms: [s[0], s[1]],
        rows,
    })
}

/// `(variable, column)` for every variable.
pub fn variable_valuations(m: &ValuationMatrix) -> Vec<(usize, Point)> {
    (0..m.n()).map(|j| (j, m.column(j))).collect()
}

/// Whether `target` is a non-negative integer combination of `generators`. The
/// generators must admit a functional positive on all of them.
pub fn semigroup_contains(generators: &[Point], target: &[Rational]) -> Result<bool> {
    let gens: Vec<Point> = generators
        .iter()
        .filter(|g| g.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    if target.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    if gens.is_empty() {
        return Ok(false);
    }
    let phi = lp::positive_functional(&gens).ok_or(Error::NotPointed)?;
    let heights: Vec<Rational> = gens.iter().map(|g| dot(g, &phi)).collect();
    let mut failed = HashSet::new();
    Ok(reachable(
        &gens,
        &heights,
        &phi,
        target.to_vec(),
        &mut failed,
    ))
}

fn reachable(
    gens: &[Point],
    heights: &[Rational],
    phi: &[Rational],
    target: Point,
    failed: &mut HashSet<Point>,
) -> bool {
    if target.iter().all(Zero::is_zero) {
        return true;
    }
    if failed.contains(&target) {
        return false;
    }
    let h = dot(&target, phi);
    for (g, gh) in gens.iter().zip(heights) {
        if *gh <= h {
            let rest: Point = target.iter().zip(g).map(|(x, y)| x - y).collect();
            if reachable(gens, heights, phi, rest, failed) {
                return true;
            }
        }
    }
    failed.insert(target);
    false
}

/// The irreducible elements among `generators`: distinct nonzero generators that are not
/// sums of the others. Graded-lex order.
pub fn minimal_generators(generators: &[Point]) -> Result<Vec<Point>> {
    let mut gens: Vec<Point> = generators
        .iter()
        .filter(|g| g.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    gens.sort_by(|a, b| graded_cmp(a, b));
    gens.dedup();
    if gens.is_empty() {
        return Ok(gens);
    }
    if lp::positive_functional(&gens).is_none() {
        return Err(Error::NotPointed);
    }
    let mut out = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let others: Vec<Point> = gens
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, h)| h.clone())
            .collect();
        if !semigroup_contains(&others, g)? {
            out.push(g.clone());
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingImage {
    /// `(variable, degree)` for every variable.
    pub degrees: Vec<(usize, Point)>,
    pub generators: Vec<Point>,
}

/// Degrees of the variables under arbitrary grading rows, with the minimal generators
/// of the semigroup they span.
pub fn grading_image_from_rows(rows: &[Point]) -> Result<GradingImage> {
    let degrees: Vec<(usize, Point)> = linalg::transpose(rows).into_iter().enumerate().collect();
    let cols: Vec<Point> = degrees.iter().map(|(_, d)| d.clone()).collect();
    Ok(GradingImage {
        generators: minimal_generators(&cols)?,
        degrees,
    })
}

/// Grading by the lineality basis rows (`v_f` first).
pub fn grading_image(f: &SparsePolynomial) -> Result<GradingImage> {
    let rows: Vec<Point> = lineality_basis(f)?
        .rows()
        .into_iter()
        .map(|r| r.0)
        .collect();
    grading_image_from_rows(&rows)
}

/// A positive integer vector making `f` homogeneous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    d: Vec<u32>,
    degree: u64,
}

impl Grading {
    pub fn new(f: &SparsePolynomial, d: Vec<u32>) -> Result<Self> {
        if d.len() != f.n() {
            return Err(Error::DimensionMismatch {
                expected: f.n(),
                found: d.len(),
            });
        }
        if d.contains(&0) {
            return Err(Error::InvalidGrading("entries must be positive".into()));
        }
        let degs: Vec<u64> = f
            .exponents()
            .map(|a| {
                a.entries()
                    .iter()
                    .zip(&d)
                    .map(|(&e, &w)| u64::from(e) * u64::from(w))
                    .sum()
            })
            .collect();
        if degs.iter().any(|&x| x != degs[0]) {
            return Err(Error::InvalidGrading(format!(
                "term degrees differ: {degs:?}"
            )));
        }
        Ok(Grading { degree: degs[0], d })
    }

    pub fn weights(&self) -> &[u32] {
        &self.d
    }

    /// The common degree of the terms.
    pub fn degree(&self) -> u64 {
        self.degree
    }
}

/// Hull of a finite rational point set, with its area when it spans a plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OkounkovBody {
    pub points: Vec<Point>,
    /// Minimal vertex set. For planar bodies this is the boundary cycle, counter-clockwise
    /// from the lexicographically smallest vertex; otherwise graded-lex order.
    pub vertices: Vec<Point>,
    pub dimension: usize,
    area: Option<Rational>,
}

impl OkounkovBody {
    pub fn from_points(points: Vec<Point>) -> Result<Self> {
        let n = points.first().map_or(0, Vec::len);
        let hull = LatticePolytope::from_points(n, points.iter().cloned())?;
        let dimension = hull.dimension();
        let mut vertices = hull.vertices().to_vec();
        let mut area = None;

        // Coordinates that vary across the points; a planar body with exactly two of
        // them lives in a translate of a coordinate plane and has an exact area.
        let free: Vec<usize> = (0..n)
            .filter(|&c| points.iter().any(|p| p[c] != points[0][c]))
            .collect();
        if dimension == 2 && free.len() == 2 {
            let planar: Vec<[Rational; 2]> = vertices
                .iter()
                .map(|v| [v[free[0]].clone(), v[free[1]].clone()])
                .collect();
            let order = convex_hull_2d(&planar);
            let cycle: Vec<[Rational; 2]> = order.iter().map(|&i| planar[i].clone()).collect();
            area = Some(shoelace_area(&cycle));
            vertices = order.into_iter().map(|i| vertices[i].clone()).collect();
        }
        Ok(OkounkovBody {
            points,
            vertices,
            dimension,
            area,
        })
    }

    pub fn area(&self) -> Result<Rational> {
        match &self.area {
            Some(a) => Ok(a.clone()),
            None if self.dimension == 2 => Err(Error::Precondition(
                "planar body is not parallel to a coordinate plane".into(),
            )),
            None => Err(Error::NotPlanar(self.dimension)),
        }
    }
}

fn cross(o: &[Rational; 2], a: &[Rational; 2], b: &[Rational; 2]) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Monotone chain. Returns indices of the hull vertices counter-clockwise, starting at the
/// lexicographically smallest point; collinear boundary points are dropped.
pub fn convex_hull_2d(points: &[[Rational; 2]]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| points[a].cmp(&points[b]));
    idx.dedup_by(|a, b| points[*a] == points[*b]);
    if idx.len() <= 2 {
        return idx;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2
            && !cross(
                &points[lower[lower.len() - 2]],
                &points[lower[lower.len() - 1]],
                &points[i],
            )
            .is_positive()
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && !cross(
                &points[upper[upper.len() - 2]],
                &points[upper[upper.len() - 1]],
                &points[i],
            )
            .is_positive()
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn shoelace_area(cycle: &[[Rational; 2]]) -> Rational {
    let n = cycle.len();
    let twice: Rational = (0..n)
        .map(|i| {
            let (p, q) = (&cycle[i], &cycle[(i + 1) % n]);
            &p[0] * &q[1] - &q[0] * &p[1]
        })
        .sum();
    twice.abs() / int(2)
}

/// Area as a sum of triangles fanned out from the first vertex.
pub fn fan_area(cycle: &[[Rational; 2]]) -> Rational {
    (1..cycle.len().saturating_sub(1))
        .map(|i| cross(&cycle[0], &cycle[i], &cycle[i + 1]).abs() / int(2))
        .sum()
}

/// Columns of `M_S` divided by the degrees of their variables, and their hull.
pub fn nok_body(f: &SparsePolynomial, grading: &Grading, subset: &[usize]) -> Result<OkounkovBody> {
    let m = valuation_matrix(f, subset)?;
    let points = (0..m.n())
        .map(|j| {
            let d = Rational::from_integer(BigInt::from(grading.weights()[j]));
            m.column(j).into_iter().map(|x| x / &d).collect()
        })
        .collect();
    OkounkovBody::from_points(points)
}

/// Columns of `base_rows` with `extra_row` appended, as generators of a cone over `ℚ_{>=0}`.
pub fn global_nok_cone(base_rows: &[Point], extra_row: &[Rational]) -> Result<Vec<Point>> {
    let n = base_rows.first().map_or(extra_row.len(), Vec::len);
    if let Some(r) = base_rows.iter().map(Vec::len).find(|&l| l != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: r,
        });
    }
    if extra_row.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: extra_row.len(),
        });
    }
    let mut rows = base_rows.to_vec();
    rows.push(extra_row.to_vec());
    Ok(linalg::transpose(&rows))
}

/// `global_nok_cone` over the lineality basis of `f`.
pub fn global_nok_cone_for(f: &SparsePolynomial, extra_row: &[Rational]) -> Result<Vec<Point>> {
    let rows: Vec<Point> = lineality_basis(f)?
        .rows()
        .into_iter()
        .map(|r| r.0)
        .collect();
    global_nok_cone(&rows, extra_row)
}

/// `⟨row, a⟩ = target`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub row: Vec<i64>,
    pub target: i64,
}

impl Constraint {
    pub fn new(row: Vec<i64>, target: i64) -> Self {
        Constraint { row, target }
    }
}

fn constraint_system(constraints: &[Constraint], n: usize) -> Result<(Vec<Point>, Vec<Rational>)> {
    if let Some(c) = constraints.iter().find(|c| c.row.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: c.row.len(),
        });
    }
    let a = constraints
        .iter()
        .map(|c| c.row.iter().map(|&x| int(x)).collect())
        .collect();
    let b = constraints.iter().map(|c| int(c.target)).collect();
    Ok((a, b))
}

/// Vertices of `{a ∈ ℚ_{>=0}^n : ⟨row, a⟩ = target for every constraint}`.
pub fn polytope_vertices(constraints: &[Constraint], n: usize) -> Result<Vec<Point>> {
    let (a, b) = constraint_system(constraints, n)?;
    if a.is_empty() {
        return Err(Error::Unbounded);
    }
    let vertices = lp::standard_form_vertices(&a, &b);
    if !vertices.is_empty() && !lp::standard_form_bounded(&a) {
        return Err(Error::Unbounded);
    }
    Ok(vertices)
}

/// All non-negative integer solutions of the constraints, graded-lex ascending.
///
/// The solution set must be bounded; per-coordinate bounds come from the vertices of the
/// rational polytope.
pub fn graded_component(constraints: &[Constraint], n: usize) -> Result<Vec<ExponentVector>> {
    let vertices = polytope_vertices(constraints, n)?;
    if vertices.is_empty() {
        return Ok(Vec::new());
    }
    let bounds: Vec<i64> = (0..n)
        .map(|c| {
            let max = vertices.iter().map(|v| &v[c]).max().expect("nonempty");
            i64::try_from(max.floor().to_integer()).unwrap_or(i64::MAX)
        })
        .collect();

    let first: Vec<i64> = (0..=bounds[0]).collect();
    let mut out: Vec<ExponentVector> = first
        .par_iter()
        .flat_map_iter(|&x0| {
            let mut found = Vec::new();
            let mut partial: Vec<i64> = constraints.iter().map(|c| c.row[0] * x0).collect();
            let mut current = vec![x0];
            search(
                constraints,
                &bounds,
                1,
                &mut current,
                &mut partial,
                &mut found,
            );
            found
        })
        .collect();
    out.sort();
    Ok(out)
}

fn search(
    constraints: &[Constraint],
    bounds: &[i64],
    depth: usize,
    current: &mut Vec<i64>,
    partial: &mut [i64],
    found: &mut Vec<ExponentVector>,
) {
    // What the remaining coordinates can still add to each row.
    for (k, c) in constraints.iter().enumerate() {
        let (mut lo, mut hi) = (0i64, 0i64);
        for (r, b) in c.row[depth..].iter().zip(&bounds[depth..]) {
            let t = r * b;
            if t < 0 {
                lo += t;
            } else {
                hi += t;
            }
        }
        let need = c.target - partial[k];
        if need < lo || need > hi {
            return;
        }
    }
    if depth == bounds.len() {
        found.push(ExponentVector::new(
            current.iter().map(|&x| x as u32).collect(),
        ));
        return;
    }
    for x in 0..=bounds[depth] {
        for (k, c) in constraints.iter().enumerate() {
            partial[k] += c.row[depth] * x;
        }
        current.push(x);
        search(constraints, bounds, depth + 1, current, partial, found);
        current.pop();
        for (k, c) in constraints.iter().enumerate() {
            partial[k] -= c.row[depth] * x;
        }
    }
}

/// Image of `points` under the linear map with the given rows, and its hull.
pub fn projected_body(points: &[Point], rows: &[Point]) -> Result<OkounkovBody> {
    if points.is_empty() {
        return Err(Error::Precondition("no points to project".into()));
    }
    let n = points[0].len();
    for r in rows.iter().map(Vec::len).chain(points.iter().map(Vec::len)) {
        if r != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r,
            });
        }
    }
    let images = points.iter().map(|p| linalg::mat_vec(rows, p)).collect();
    OkounkovBody::from_points(images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, point};

    fn example() -> SparsePolynomial {
        SparsePolynomial::parse("x + y^2 + z*w", &["x", "y", "z", "w"]).unwrap()
    }

    fn rows(m: &[&[i64]]) -> Vec<Point> {
        m.iter().map(|r| point(r)).collect()
    }

    #[test]
    fn example_matrices() {
        let f = example();
        assert_eq!(
            valuation_matrix(&f, &[0, 1]).unwrap().rows,
            rows(&[&[2, 1, 1, 1], &[0, 0, 1, -1], &[0, 0, -1, -1]])
        );
        assert_eq!(
            valuation_matrix(&f, &[0, 2]).unwrap().rows,
            rows(&[&[2, 1, 1, 1], &[0, 0, 1, -1], &[0, -1, 0, 0]])
        );
        assert_eq!(
            valuation_matrix(&f, &[1, 2]).unwrap().rows,
            rows(&[&[2, 1, 1, 1], &[0, 0, 1, -1], &[-1, 0, 0, 0]])
        );
        assert_eq!(
            valuation_matrix(&f, &[0]),
            Err(Error::SubsetSize {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn columns_of_m23() {
        let m = valuation_matrix(&example(), &[1, 2]).unwrap();
        let cols = variable_valuations(&m);
        assert_eq!(cols[0].1, point(&[2, 0, -1]));
        assert_eq!(cols[1].1, point(&[1, 0, 0]));
        assert_eq!(cols[2].1, point(&[1, 1, 0]));
        assert_eq!(cols[3].1, point(&[1, -1, 0]));
        let gens: Vec<Point> = cols.into_iter().map(|(_, c)| c).collect();
        assert!(semigroup_contains(&gens, &point(&[2, 1, 0])).unwrap());
        assert!(!semigroup_contains(&gens, &point(&[0, 1, 0])).unwrap());
    }

    #[test]
    fn grading_of_example() {
        let g = grading_image(&example()).unwrap();
        let degs: Vec<Point> = g.degrees.iter().map(|(_, d)| d.clone()).collect();
        assert_eq!(degs, rows(&[&[2, 0], &[1, 0], &[1, 1], &[1, -1]]));
        assert_eq!(g.generators, rows(&[&[1, -1], &[1, 0], &[1, 1]]));

        let f = SparsePolynomial::parse("x + y", &["x", "y"]).unwrap();
        let g = grading_image(&f).unwrap();
        assert_eq!(g.generators, rows(&[&[1]]));
    }

    #[test]
    fn del_pezzo_class_group_degrees() {
        let g = grading_image_from_rows(&rows(&[&[1, -1, 0, -1, 1], &[1, 1, 1, 0, 2]])).unwrap();
        let degs: Vec<Point> = g.degrees.iter().map(|(_, d)| d.clone()).collect();
        assert_eq!(degs, rows(&[&[1, 1], &[-1, 1], &[0, 1], &[-1, 0], &[1, 2]]));
    }

    #[test]
    fn non_pointed_semigroup_is_rejected() {
        assert_eq!(
            minimal_generators(&rows(&[&[1, 0], &[-1, 0]])),
            Err(Error::NotPointed)
        );
    }

    #[test]
    fn example_body() {
        let f = example();
        let d = Grading::new(&f, vec![2, 1, 1, 1]).unwrap();
        let body = nok_body(&f, &d, &[1, 2]).unwrap();
        assert_eq!(
            body.points,
            vec![
                vec![int(1), int(0), frac(-1, 2)],
                point(&[1, 0, 0]),
                point(&[1, 1, 0]),
                point(&[1, -1, 0]),
            ]
        );
        assert!(body.points.iter().all(|p| p[0] == int(1)));
        assert_eq!(body.vertices.len(), 3);
        assert_eq!(body.area().unwrap(), frac(1, 2));
    }

    #[test]
    fn invalid_grading() {
        let f = example();
        assert!(matches!(
            Grading::new(&f, vec![1, 1, 1, 1]),
            Err(Error::InvalidGrading(_))
        ));
        assert!(matches!(
            Grading::new(&f, vec![0, 1, 1, 1]),
            Err(Error::InvalidGrading(_))
        ));
    }

    #[test]
    fn point_body() {
        let f = SparsePolynomial::parse("x + y", &["x", "y"]).unwrap();
        let d = Grading::new(&f, vec![1, 1]).unwrap();
        let body = nok_body(&f, &d, &[0, 1]).unwrap();
        assert_eq!(body.vertices, vec![point(&[1])]);
        assert_eq!(body.dimension, 0);
        assert_eq!(body.area(), Err(Error::NotPlanar(0)));
    }

    #[test]
    fn appended_rows() {
        let m = rows(&[&[1, 1, 1, 1, 1], &[1, -1, 0, -1, 1], &[1, 1, 1, 0, 2]]);
        let cone = global_nok_cone(&m, &point(&[1, 1, 1, 0, 0])).unwrap();
        assert_eq!(cone.len(), 5);
        assert_eq!(cone[0], point(&[1, 1, 1, 1]));
        let zero = global_nok_cone(&m, &point(&[0, 0, 0, 0, 0])).unwrap();
        assert!(zero.iter().all(|c| c[3].is_zero()));
        assert!(global_nok_cone(&m, &point(&[1, 1])).is_err());
    }

    #[test]
    fn graded_components() {
        let c = vec![
            Constraint::new(vec![1, -1, 0, -1, 1], 0),
            Constraint::new(vec![1, 1, 1, 0, 2], 6),
        ];
        // Independent brute force over {0..12}^5 also finds 34 solutions.
        assert_eq!(graded_component(&c, 5).unwrap().len(), 34);
        let origin = graded_component(&[Constraint::new(vec![1, 1], 0)], 2).unwrap();
        assert_eq!(origin, vec![ExponentVector::new(vec![0, 0])]);
        let deg = graded_component(
            &[
                Constraint::new(vec![2, 1, 1, 1], 2),
                Constraint::new(vec![0, 0, 1, -1], 0),
            ],
            4,
        )
        .unwrap();
        assert_eq!(
            deg,
            vec![
                ExponentVector::new(vec![1, 0, 0, 0]),
                ExponentVector::new(vec![0, 0, 1, 1]),
                ExponentVector::new(vec![0, 2, 0, 0]),
            ]
        );
        assert_eq!(
            graded_component(&[Constraint::new(vec![1, -1], 0)], 2),
            Err(Error::Unbounded)
        );
    }

    #[test]
    fn hull_and_areas() {
        let pts: Vec<[Rational; 2]> = [[0, 0], [2, 0], [1, 1], [2, 2], [0, 2], [1, 0]]
            .iter()
            .map(|&[a, b]| [int(a), int(b)])
            .collect();
        let hull = convex_hull_2d(&pts);
        assert_eq!(hull, vec![0, 1, 3, 4]);
        let cycle: Vec<[Rational; 2]> = hull.iter().map(|&i| pts[i].clone()).collect();
        assert_eq!(shoelace_area(&cycle), int(4));
        assert_eq!(fan_area(&cycle), int(4));
    }
}

//! Newton polytopes: vertex detection, simplex test, lattice points, the faces of
//! empty simplices and Minkowski-decomposition evidence.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg;
use crate::lp;
use crate::polynomial::{
    exponent_gcd, is_disjointly_supported, ExponentVector, SparsePolynomial, WeightVector,
};
use crate::rational::{dot, Point, Rational};

/// Sum of coordinates first, then lexicographic.
pub fn graded_cmp(a: &[Rational], b: &[Rational]) -> Ordering {
    let sa: Rational = a.iter().sum();
    let sb: Rational = b.iter().sum();
    sa.cmp(&sb).then_with(|| a.cmp(b))
}

/// A polytope given by its vertices, kept in minimal form and graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    n: usize,
    vertices: Vec<Point>,
}

impl LatticePolytope {
    /// Hull of `points`; points inside the hull of the others are discarded.
    pub fn from_points(n: usize, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut pts: Vec<Point> = points.into_iter().collect();
        if let Some(p) = pts.iter().find(|p| p.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.len(),
            });
        }
        if pts.is_empty() {
            return Err(Error::Precondition(
                "a polytope needs at least one point".into(),
            ));
        }
        pts.sort_by(|a, b| graded_cmp(a, b));
        pts.dedup();
        let keep = vertex_mask(&pts);
        let vertices = pts
            .into_iter()
            .zip(keep)
            .filter_map(|(p, k)| k.then_some(p))
            .collect();
        Ok(LatticePolytope { n, vertices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Affine dimension.
    pub fn dimension(&self) -> usize {
        let base = &self.vertices[0];
        let diffs: Vec<Point> = self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(base).map(|(x, y)| x - y).collect())
            .collect();
        linalg::rank(&diffs)
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        p.len() == self.n && lp::in_convex_hull(p, &self.vertices)
    }

    pub fn is_integral(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| crate::rational::is_integral(v))
    }
}

/// `true` at position `i` iff `pts[i]` is not a convex combination of the other points.
/// Assumes `pts` is duplicate-free.
fn vertex_mask(pts: &[Point]) -> Vec<bool> {
    (0..pts.len())
        .map(|i| {
            let others: Vec<Point> = pts
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.clone())
                .collect();
            !lp::in_convex_hull(&pts[i], &others)
        })
        .collect()
}

pub fn newton_polytope(f: &SparsePolynomial) -> LatticePolytope {
    LatticePolytope::from_points(f.n(), f.exponents().map(ExponentVector::to_rational))
        .expect("exponents match the ambient dimension")
}

/// Term indices whose exponents are vertices of `N(f)`.
pub fn vertex_terms(f: &SparsePolynomial) -> Vec<usize> {
    let pts: Vec<Point> = f.exponents().map(ExponentVector::to_rational).collect();
    vertex_mask(&pts)
        .into_iter()
        .enumerate()
        .filter_map(|(i, v)| v.then_some(i))
        .collect()
}

/// Affine independence of the vertices.
pub fn is_simplex(p: &LatticePolytope) -> bool {
    p.dimension() + 1 == p.vertices.len()
}

/// Barycentric coordinates with respect to affinely independent vertices, factored once:
/// `λ = L·(p, 1)` whenever `C·(p, 1) = 0`, and `p` is off the affine hull otherwise.
struct Barycentric {
    left_inverse: Vec<Point>,
    hull_equations: Vec<Point>,
}

impl Barycentric {
    fn new(vertices: &[Point]) -> Self {
        let m = vertices.len();
        let n = vertices[0].len();
        let one = Rational::from_integer(1.into());
        let augmented: Vec<Point> = (0..=n)
            .map(|c| {
                let mut row: Point = vertices
                    .iter()
                    .map(|v| if c < n { v[c].clone() } else { one.clone() })
                    .collect();
                row.extend((0..=n).map(|k| {
                    if k == c {
                        one.clone()
                    } else {
                        Rational::zero()
                    }
                }));
                row
            })
            .collect();
        let (reduced, pivots) = linalg::rref(&augmented);
        let mut left_inverse = Vec::new();
        let mut hull_equations = Vec::new();
        for (row, &pivot) in reduced.into_iter().zip(&pivots) {
            let tail = row[m..].to_vec();
            if pivot < m {
                left_inverse.push(tail);
            } else {
                hull_equations.push(tail);
            }
        }
        Barycentric {
            left_inverse,
            hull_equations,
        }
    }

    fn contains(&self, p: &[Rational]) -> bool {
        let mut lifted = p.to_vec();
        lifted.push(Rational::from_integer(1.into()));
        self.hull_equations
            .iter()
            .all(|r| dot(r, &lifted).is_zero())
            && self
                .left_inverse
                .iter()
                .all(|r| !dot(r, &lifted).is_negative())
    }
}

fn integer_range(lo: &Rational, hi: &Rational) -> Vec<BigInt> {
    let start = lo.ceil().to_integer();
    let end = hi.floor().to_integer();
    let mut out = Vec::new();
    let mut x = start;
    while x <= end {
        out.push(x.clone());
        x += 1;
    }
    out
}

/// All integer points of `p`, in graded-lex order. Enumerates the bounding box; simplices
/// use a direct barycentric solve, other polytopes an exact hull-membership test.
pub fn lattice_points(p: &LatticePolytope) -> Vec<Point> {
    let ranges: Vec<Vec<BigInt>> = (0..p.n)
        .map(|c| {
            let lo = p.vertices.iter().map(|v| &v[c]).min().expect("nonempty");
            let hi = p.vertices.iter().map(|v| &v[c]).max().expect("nonempty");
            integer_range(lo, hi)
        })
        .collect();
    if ranges.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let simplex = is_simplex(p).then(|| Barycentric::new(&p.vertices));
    let member = |q: &Point| -> bool {
        match &simplex {
            Some(b) => b.contains(q),
            None => lp::in_convex_hull(q, &p.vertices),
        }
    };

    let first = ranges.first().cloned().unwrap_or_default();
    let mut found: Vec<Point> = first
        .par_iter()
        .flat_map_iter(|x0| {
            let mut local = Vec::new();
            let mut current = vec![Rational::from_integer(x0.clone())];
            box_walk(&ranges, 1, &mut current, &mut |q| {
                if member(q) {
                    local.push(q.clone());
                }
            });
            local
        })
        .collect();
    if p.n == 0 {
        found = vec![Vec::new()];
    }
    found.sort_by(|a, b| graded_cmp(a, b));
    found
}

fn box_walk(
    ranges: &[Vec<BigInt>],
    depth: usize,
    current: &mut Point,
    visit: &mut dyn FnMut(&Point),
) {
    if depth == ranges.len() {
        visit(current);
        return;
    }
    for x in &ranges[depth] {
        current.push(Rational::from_integer(x.clone()));
        box_walk(ranges, depth + 1, current, visit);
        current.pop();
    }
}

/// A face of `N(f)` named by the terms it carries, with a weight exhibiting it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceDescriptor {
    pub terms: Vec<usize>,
    pub supporting_weight: WeightVector,
}

/// Every nonempty subset of terms is a face when `N(f)` is an empty simplex, i.e. when `f`
/// is disjointly supported with pairwise exponent gcd 1. Faces are listed by size, then
/// lexicographically.
///
/// The weight for `S` is `Σ_{i∉S} w_i` with `w_i = -1` on `supp(a_i)`. If a constant term
/// lies outside `S` it cannot be pushed down that way, so the terms of `S` are lifted to
/// value 1 instead.
pub fn faces(f: &SparsePolynomial) -> Result<Vec<FaceDescriptor>> {
    if !is_disjointly_supported(f) {
        return Err(Error::Precondition(
            "faces are only enumerated for disjointly supported polynomials".into(),
        ));
    }
    let exps: Vec<&ExponentVector> = f.exponents().collect();
    for i in 0..exps.len() {
        for j in i + 1..exps.len() {
            if exponent_gcd(exps[i], exps[j])? != 1 {
                return Err(Error::Precondition(format!(
                    "terms {} and {} have exponent gcd != 1",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let k = exps.len();
    let constant = exps.iter().position(|a| a.is_constant());
    let mut subsets: Vec<Vec<usize>> = (1u64..(1 << k))
        .map(|mask| (0..k).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    Ok(subsets
        .into_iter()
        .map(|s| {
            let mut w = vec![Rational::zero(); f.n()];
            let lift = constant.is_some_and(|c| !s.contains(&c));
            for (i, a) in exps.iter().enumerate() {
                let value = if !s.contains(&i) {
                    -Rational::from_integer(1.into())
                } else if lift {
                    Rational::new(1.into(), BigInt::from(a.degree()))
                } else {
                    continue;
                };
                for j in a.support() {
                    w[j] = value.clone();
                }
            }
            FaceDescriptor {
                terms: s,
                supporting_weight: WeightVector(w),
            }
        })
        .collect())
}

/// The lattice point `a + (b - a)/g` strictly inside the segment `[a, b]`, where `g` is
/// the gcd of the entries of `b - a`; `None` when the segment has no interior lattice point.
pub fn edge_interior_point(a: &[Rational], b: &[Rational]) -> Option<Point> {
    if !crate::rational::is_integral(a) || !crate::rational::is_integral(b) {
        return None;
    }
    let diff: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| (y - x).to_integer()).collect();
    let g = diff.iter().fold(BigInt::zero(), |acc, d| acc.gcd(d));
    if g <= BigInt::from(1) {
        return None;
    }
    Some(
        a.iter()
            .zip(&diff)
            .map(|(x, d)| x + Rational::from_integer(d / &g))
            .collect(),
    )
}

/// An edge `[u, v]` written as `[u, p] + [0, v - p]` through an interior lattice point `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSplit {
    pub edge: (Point, Point),
    pub point: Point,
    pub summands: [(Point, Point); 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinkowskiReport {
    pub lattice_points: Vec<Point>,
    pub non_vertex_points: Vec<Point>,
    /// Every Minkowski decomposition is a point plus a translate of the polytope.
    pub trivial_only: bool,
    pub edge_split: Option<EdgeSplit>,
}

/// Lattice-point census of a simplex with disjointly supported vertices. An empty census
/// (vertices only) certifies that only trivial decompositions exist; otherwise an edge
/// carrying an interior lattice point is split when one exists.
pub fn minkowski_decomposition_witness(p: &LatticePolytope) -> Result<MinkowskiReport> {
    if !is_simplex(p) {
        return Err(Error::Precondition("polytope is not a simplex".into()));
    }
    if !p.is_integral() {
        return Err(Error::Precondition(
            "vertices must be lattice points".into(),
        ));
    }
    for (i, u) in p.vertices.iter().enumerate() {
        for v in &p.vertices[i + 1..] {
            if u.iter().zip(v).any(|(x, y)| !x.is_zero() && !y.is_zero()) {
                return Err(Error::Precondition("vertex supports overlap".into()));
            }
        }
    }
    let census = lattice_points(p);
    let non_vertex: Vec<Point> = census
        .iter()
        .filter(|q| !p.vertices.contains(q))
        .cloned()
        .collect();
    let mut edge_split = None;
    'outer: for (i, u) in p.vertices.iter().enumerate() {
        for v in &p.vertices[i + 1..] {
            if let Some(mid) = edge_interior_point(u, v) {
                let origin = vec![Rational::zero(); p.n];
                let rest: Point = v.iter().zip(&mid).map(|(x, y)| x - y).collect();
                edge_split = Some(EdgeSplit {
                    edge: (u.clone(), v.clone()),
                    point: mid.clone(),
                    summands: [(u.clone(), mid), (origin, rest)],
                });
                break 'outer;
            }
        }
    }
    Ok(MinkowskiReport {
        trivial_only: non_vertex.is_empty(),
        lattice_points: census,
        non_vertex_points: non_vertex,
        edge_split,
    })
}

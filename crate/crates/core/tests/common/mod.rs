//! Random instance generators and brute-force oracles shared by the integration tests.
//!
//! The oracles deliberately avoid the library's linear algebra and LP code: hull
//! membership is decided by Carathéodory enumeration over affinely independent
//! subsets, each solved with the local elimination routine below.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wellpoised::rational::{Point, Rational};
use wellpoised::{SparsePolynomial, Term};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn joint_gcd(a: &[u32], b: &[u32]) -> u32 {
    a.iter().chain(b).fold(0, |g, &x| gcd(g, x))
}

fn random_coefficient(rng: &mut ChaCha8Rng) -> Rational {
    let numer = loop {
        let v: i64 = rng.gen_range(-5..=5);
        if v != 0 {
            break v;
        }
    };
    Rational::new(BigInt::from(numer), BigInt::from(rng.gen_range(1..=3)))
}

/// Builds a polynomial whose term `i` is supported on the variables assigned block `i`.
fn from_blocks(
    rng: &mut ChaCha8Rng,
    n: usize,
    blocks: &[Vec<usize>],
    max_exp: u32,
) -> (SparsePolynomial, Vec<Vec<u32>>) {
    let exps: Vec<Vec<u32>> = blocks
        .iter()
        .map(|b| {
            let mut e = vec![0u32; n];
            for &j in b {
                e[j] = rng.gen_range(1..=max_exp);
            }
            e
        })
        .collect();
    let terms = exps
        .iter()
        .map(|e| Term::new(random_coefficient(rng), e.clone()));
    (SparsePolynomial::new(n, terms).unwrap(), exps)
}

/// Random partition of `vars` into `k` nonempty blocks.
fn partition(rng: &mut ChaCha8Rng, vars: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut shuffled = vars.to_vec();
    shuffled.shuffle(rng);
    let mut blocks: Vec<Vec<usize>> = shuffled[..k].iter().map(|&v| vec![v]).collect();
    for &v in &shuffled[k..] {
        blocks[rng.gen_range(0..k)].push(v);
    }
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks
}

/// A well-poised polynomial: every variable is assigned to exactly one of `K >= 2`
/// terms, and pairwise exponent gcds are forced to 1 by rejection.
pub fn random_well_poised(rng: &mut ChaCha8Rng, max_n: usize, max_exp: u32) -> SparsePolynomial {
    loop {
        let n = rng.gen_range(2..=max_n);
        let k = rng.gen_range(2..=n);
        let vars: Vec<usize> = (0..n).collect();
        let blocks = partition(rng, &vars, k);
        let (f, exps) = from_blocks(rng, n, &blocks, max_exp);
        let ok = (0..k).all(|i| (i + 1..k).all(|j| joint_gcd(&exps[i], &exps[j]) == 1));
        if ok {
            return f;
        }
    }
}

/// A disjointly supported polynomial without constant term; some variables may be unused.
pub fn random_disjoint(rng: &mut ChaCha8Rng, max_n: usize, max_exp: u32) -> SparsePolynomial {
    let n = rng.gen_range(2..=max_n);
    let mut vars: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.85)).collect();
    if vars.len() < 2 {
        vars = (0..n).collect();
    }
    let k = rng.gen_range(2..=vars.len().min(4));
    let blocks = partition(rng, &vars, k);
    from_blocks(rng, n, &blocks, max_exp).0
}

/// Arbitrary small polynomial: `n <= max_n`, entries in `0..=max_exp`.
pub fn random_small(rng: &mut ChaCha8Rng, max_n: usize, max_exp: u32) -> SparsePolynomial {
    let n = rng.gen_range(1..=max_n);
    let k = rng.gen_range(1..=7);
    let terms: Vec<Term> = (0..k)
        .map(|_| {
            let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
            Term::new(random_coefficient(rng), e)
        })
        .collect();
    // Coefficients of repeated exponents could cancel; retry in that case.
    SparsePolynomial::new(n, terms).unwrap_or_else(|_| random_small(rng, max_n, max_exp))
}

pub fn exponent_points(f: &SparsePolynomial) -> Vec<Point> {
    f.exponents().map(|a| a.to_rational()).collect()
}

/// Unique solution of `A x = b` when `A` has full column rank and the system is
/// consistent; `None` otherwise.
pub fn oracle_solve_unique(a: &[Point], b: &[Rational]) -> Option<Point> {
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Point> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut row = r.clone();
            row.push(x.clone());
            row
        })
        .collect();
    let mut row = 0;
    for c in 0..cols {
        let p = (row..m.len()).find(|&i| !m[i][c].is_zero())?;
        m.swap(row, p);
        let pivot = m[row][c].clone();
        for x in m[row].iter_mut() {
            *x /= pivot.clone();
        }
        for i in 0..m.len() {
            if i != row && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                let pr = m[row].clone();
                for (x, y) in m[i].iter_mut().zip(pr) {
                    *x -= factor.clone() * y;
                }
            }
        }
        row += 1;
    }
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|c| m[c][cols].clone()).collect())
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

/// Carathéodory enumeration: `p` is in the hull iff some affinely independent subset of at
/// most `dim + 1` points has non-negative barycentric coordinates for it.
pub fn oracle_in_hull(p: &[Rational], pts: &[Point]) -> bool {
    let n = p.len();
    for size in 1..=pts.len().min(n + 1) {
        for s in subsets(pts.len(), size) {
            let mut a: Vec<Point> = (0..n)
                .map(|c| s.iter().map(|&i| pts[i][c].clone()).collect())
                .collect();
            a.push(vec![Rational::one(); size]);
            let mut b = p.to_vec();
            b.push(Rational::one());
            if let Some(lambda) = oracle_solve_unique(&a, &b) {
                if lambda.iter().all(|x| !x.is_negative()) {
                    return true;
                }
            }
        }
    }
    false
}

/// Indices of points that are not in the hull of the others.
pub fn oracle_vertices(pts: &[Point]) -> Vec<usize> {
    (0..pts.len())
        .filter(|&i| {
            let others: Vec<Point> = (0..pts.len())
                .filter(|&j| j != i && pts[j] != pts[i])
                .map(|j| pts[j].clone())
                .collect();
            !oracle_in_hull(&pts[i], &others)
        })
        .collect()
}

/// Affine independence via the full-column-rank test on the lifted point matrix.
pub fn oracle_affinely_independent(pts: &[Point]) -> bool {
    let n = pts[0].len();
    let mut a: Vec<Point> = (0..n)
        .map(|c| pts.iter().map(|p| p[c].clone()).collect())
        .collect();
    a.push(vec![Rational::one(); pts.len()]);
    let zero = vec![Rational::zero(); n + 1];
    // Homogeneous system: the unique solution exists iff the columns are independent.
    oracle_solve_unique(&a, &zero).is_some()
}

/// All integer points of the hull by box enumeration plus the oracle membership test.
pub fn oracle_lattice_points(pts: &[Point]) -> Vec<Point> {
    let n = pts[0].len();
    let lo: Vec<i64> = (0..n)
        .map(|c| {
            pts.iter()
                .map(|p| p[c].floor().to_integer())
                .min()
                .unwrap()
                .try_into()
                .unwrap()
        })
        .collect();
    let hi: Vec<i64> = (0..n)
        .map(|c| {
            pts.iter()
                .map(|p| p[c].ceil().to_integer())
                .max()
                .unwrap()
                .try_into()
                .unwrap()
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = lo.clone();
    loop {
        let p: Point = cur.iter().map(|&x| q(x)).collect();
        if oracle_in_hull(&p, pts) {
            out.push(p);
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            if cur[k] < hi[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = lo[k];
            k += 1;
        }
    }
}

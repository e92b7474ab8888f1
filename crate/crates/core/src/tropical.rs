//! Cone decomposition of the tropical hypersurface of a disjointly supported
//! polynomial without constant term.
//!
//! For `S ⊆ [K]` the cone `C_S = {ω : in_ω(f) = f_S}` equals
//! `L_f + Σ_{i∉S} ℝ_{>0} w_i`, where `L_f` is the homogeneity space of `f` and
//! `w_i` is `-1` on `supp(a_i)` and `0` elsewhere. `Trop(f)` is the union of
//! the `C_S` with `|S| >= 2`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::polynomial::{initial_terms, shared_variable, SparsePolynomial, WeightVector};
use crate::rational::{int, Point, Rational};

/// Kernel vector `v_{i,j}`: pairs the first support coordinate of term `i` with its `j`-th.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelVector {
    pub term: usize,
    /// Position within the support of the term, starting at 2.
    pub position: usize,
    pub vector: WeightVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinealityBasis {
    /// `v_f`, taking the value `ℓ / ℓ_i` on `supp(a_i)`.
    pub v_f: WeightVector,
    /// `ℓ = lcm(ℓ_i)`.
    pub lcm: u64,
    /// `ℓ_i = ⟨1, a_i⟩` per term.
    pub term_degrees: Vec<u64>,
    pub kernel: Vec<KernelVector>,
    /// Coordinates used by no term; each contributes its unit vector.
    pub free_coordinates: Vec<usize>,
}

impl LinealityBasis {
    /// `v_f`, the kernel vectors in `(i, j)` order, then unit vectors of unused coordinates.
    pub fn rows(&self) -> Vec<WeightVector> {
        let n = self.v_f.len();
        let mut rows = vec![self.v_f.clone()];
        rows.extend(self.kernel.iter().map(|k| k.vector.clone()));
        for &c in &self.free_coordinates {
            let mut e = WeightVector::zero(n);
            e.0[c] = int(1);
            rows.push(e);
        }
        rows
    }

    pub fn dimension(&self) -> usize {
        1 + self.kernel.len() + self.free_coordinates.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayGenerator {
    pub term: usize,
    pub w: WeightVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalCone {
    /// `S`, ascending 0-based term indices.
    pub terms: Vec<usize>,
    pub lineality: LinealityBasis,
    /// `w_i` for `i ∉ S`, ascending in `i`.
    pub rays: Vec<RayGenerator>,
    pub dimension: usize,
}

impl TropicalCone {
    /// `Σ c_r·(lineality row r) + Σ λ_i·w_i`; every `λ_i` must be strictly positive.
    pub fn point(&self, lineality: &[Rational], rays: &[Rational]) -> Result<WeightVector> {
        let rows = self.lineality.rows();
        if lineality.len() != rows.len() {
            return Err(Error::DimensionMismatch {
                expected: rows.len(),
                found: lineality.len(),
            });
        }
        if rays.len() != self.rays.len() {
            return Err(Error::DimensionMismatch {
                expected: self.rays.len(),
                found: rays.len(),
            });
        }
        if rays.iter().any(|l| !l.is_positive()) {
            return Err(Error::Precondition(
                "ray coefficients must be positive".into(),
            ));
        }
        let mut w = WeightVector::zero(self.lineality.v_f.len());
        let gens = rows
            .iter()
            .zip(lineality)
            .chain(self.rays.iter().map(|r| &r.w).zip(rays));
        for (g, c) in gens {
            for (x, y) in w.0.iter_mut().zip(g.entries()) {
                *x += c * y;
            }
        }
        Ok(w)
    }
}

fn check_preconditions(f: &SparsePolynomial) -> Result<()> {
    if f.has_constant_term() {
        return Err(Error::ConstantTerm);
    }
    if let Some((variable, first, second)) = shared_variable(f) {
        return Err(Error::OverlappingSupports {
            variable,
            first,
            second,
        });
    }
    Ok(())
}

pub fn homogeneity_vector(f: &SparsePolynomial) -> Result<WeightVector> {
    Ok(lineality_basis(f)?.v_f)
}

pub fn lineality_basis(f: &SparsePolynomial) -> Result<LinealityBasis> {
    check_preconditions(f)?;
    let n = f.n();
    let term_degrees: Vec<u64> = f.exponents().map(|a| a.degree()).collect();
    let lcm = term_degrees.iter().fold(1u64, |acc, &d| acc.lcm(&d));

    let mut v_f = WeightVector::zero(n);
    let mut used = vec![false; n];
    let mut kernel = Vec::new();
    for (i, a) in f.exponents().enumerate() {
        let support = a.support();
        let value = Rational::from_integer(BigInt::from(lcm / term_degrees[i]));
        for &j in &support {
            v_f.0[j] = value.clone();
            used[j] = true;
        }
        let first = support[0];
        let a_first = a.entries()[first];
        for (pos, &s) in support.iter().enumerate().skip(1) {
            let a_s = a.entries()[s];
            let g = a_first.gcd(&a_s);
            let mut v = WeightVector::zero(n);
            v.0[first] = int(i64::from(a_s / g));
            v.0[s] = int(-i64::from(a_first / g));
            kernel.push(KernelVector {
                term: i,
                position: pos + 1,
                vector: v,
            });
        }
    }
    let free_coordinates = (0..n).filter(|&j| !used[j]).collect();
    Ok(LinealityBasis {
        v_f,
        lcm,
        term_degrees,
        kernel,
        free_coordinates,
    })
}

/// `w_i`: `-1` on `supp(a_i)`, `0` elsewhere.
pub fn ray_generator(f: &SparsePolynomial, i: usize) -> Result<RayGenerator> {
    let a = &f.term(i)?.exponent;
    let mut w = WeightVector::zero(f.n());
    for j in a.support() {
        w.0[j] = int(-1);
    }
    Ok(RayGenerator { term: i, w })
}

pub fn cone(f: &SparsePolynomial, subset: &[usize]) -> Result<TropicalCone> {
    let mut terms = subset.to_vec();
    terms.sort_unstable();
    terms.dedup();
    if terms.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some(&bad) = terms.iter().find(|&&i| i >= f.len()) {
        return Err(Error::TermIndex {
            index: bad,
            len: f.len(),
        });
    }
    let lineality = lineality_basis(f)?;
    let rays = (0..f.len())
        .filter(|i| !terms.contains(i))
        .map(|i| ray_generator(f, i))
        .collect::<Result<Vec<_>>>()?;
    let dimension = f.n() + 1 - terms.len();
    Ok(TropicalCone {
        terms,
        lineality,
        rays,
        dimension,
    })
}

/// The `S` with `ω ∈ C_S`: the terms maximising `⟨ω, a_i⟩`.
pub fn classify_weight(f: &SparsePolynomial, weight: &WeightVector) -> Result<Vec<usize>> {
    initial_terms(f, weight)
}

pub fn in_tropical_variety(f: &SparsePolynomial, weight: &WeightVector) -> Result<bool> {
    Ok(classify_weight(f, weight)?.len() >= 2)
}

fn cones_by_size(f: &SparsePolynomial, min_size: usize) -> Result<Vec<TropicalCone>> {
    check_preconditions(f)?;
    let k = f.len();
    let mut subsets: Vec<Vec<usize>> = (1u64..(1 << k))
        .map(|mask| (0..k).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s| s.len() >= min_size)
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets.iter().map(|s| cone(f, s)).collect()
}

/// All `C_S` with `|S| >= 2`, by decreasing dimension and then lexicographically in `S`.
pub fn tropical_variety(f: &SparsePolynomial) -> Result<Vec<TropicalCone>> {
    cones_by_size(f, 2)
}

/// Every `C_S`, singletons included; their union is all of weight space.
pub fn all_cones(f: &SparsePolynomial) -> Result<Vec<TropicalCone>> {
    cones_by_size(f, 1)
}

/// Exact witness that `ω ∈ C_S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeCertificate {
    pub terms: Vec<usize>,
    /// `(i, λ_i)` for `i ∉ S`, with `λ_i = (k - k_i) / ℓ_i > 0`.
    pub ray_coefficients: Vec<(usize, Rational)>,
    /// Coordinates of `ω - Σ λ_i w_i` in the lineality basis rows.
    pub lineality_coordinates: Vec<Rational>,
}

impl ConeCertificate {
    /// Recombines the certificate and compares with `weight`.
    pub fn verify(&self, f: &SparsePolynomial, weight: &WeightVector) -> Result<bool> {
        if self.ray_coefficients.iter().any(|(_, l)| !l.is_positive()) {
            return Ok(false);
        }
        let c = cone(f, &self.terms)?;
        let lambdas: Vec<Rational> = self
            .ray_coefficients
            .iter()
            .map(|(_, l)| l.clone())
            .collect();
        let rays_match = self
            .ray_coefficients
            .iter()
            .map(|(i, _)| *i)
            .eq(c.rays.iter().map(|r| r.term));
        Ok(rays_match && c.point(&self.lineality_coordinates, &lambdas)? == *weight)
    }
}

/// Splits `ω` as a lineality part plus a strictly positive combination of the rays of
/// its cone, following `ω - Σ (k - k_i)/ℓ_i · w_i ∈ L_f`.
pub fn decompose(f: &SparsePolynomial, weight: &WeightVector) -> Result<ConeCertificate> {
    let basis = lineality_basis(f)?;
    let terms = classify_weight(f, weight)?;
    let values: Vec<Rational> = f.exponents().map(|a| weight.pair(a)).collect();
    let top = values[terms[0]].clone();

    let mut residual = weight.clone();
    let mut ray_coefficients = Vec::new();
    for i in (0..f.len()).filter(|i| !terms.contains(i)) {
        let lambda = (&top - &values[i]) / Rational::from_integer(basis.term_degrees[i].into());
        let w = ray_generator(f, i)?.w;
        for (x, y) in residual.0.iter_mut().zip(w.entries()) {
            *x -= &lambda * y;
        }
        ray_coefficients.push((i, lambda));
    }

    let rows: Vec<Point> = basis.rows().into_iter().map(|r| r.0).collect();
    let lineality_coordinates = linalg::solve(&linalg::transpose(&rows), residual.entries())
        .ok_or_else(|| {
            Error::Precondition("residual weight is not in the homogeneity space".into())
        })?;
    Ok(ConeCertificate {
        terms,
        ray_coefficients,
        lineality_coordinates,
    })
}

/// Whether every term pairs to the same value with `u`, i.e. `u ∈ L_f`.
pub fn in_homogeneity_space(f: &SparsePolynomial, u: &WeightVector) -> bool {
    let mut values = f.exponents().map(|a| u.pair(a));
    let first = values.next().unwrap_or_else(Rational::zero);
    values.all(|v| v == first)
}

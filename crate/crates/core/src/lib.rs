//! Exact computations around well-poised hypersurfaces.
//!
//! A polynomial is well-poised when every non-monomial initial form is
//! irreducible; this holds exactly when its terms have pairwise disjoint
//! supports and pairwise exponent gcd 1. The crate classifies polynomials,
//! computes Newton polytopes and their lattice points, describes the tropical
//! hypersurface of disjointly supported polynomials cone by cone, and builds
//! the valuation matrices and Newton-Okounkov bodies of its maximal cones.
//!
//! All arithmetic is exact over ℚ.

pub mod error;
pub mod json;
pub mod linalg;
pub mod lp;
pub mod newton;
pub mod okounkov;
pub mod polynomial;
pub mod rational;
pub mod tropical;

pub use error::{Error, Result};
pub use newton::{
    faces, is_simplex, lattice_points, minkowski_decomposition_witness, newton_polytope,
    FaceDescriptor, LatticePolytope,
};
pub use okounkov::{
    global_nok_cone, graded_component, grading_image, nok_body, projected_body, valuation_matrix,
    variable_valuations, Constraint, Grading, OkounkovBody, ValuationMatrix,
};
pub use polynomial::{
    exponent_gcd, initial_form, is_disjointly_supported, is_irreducible_binomial, is_well_poised,
    ExponentVector, SparsePolynomial, Term, WeightVector, WellPoisedReport, Witness,
};
pub use rational::Rational;
pub use tropical::{
    classify_weight, cone, homogeneity_vector, lineality_basis, ray_generator, tropical_variety,
    LinealityBasis, RayGenerator, TropicalCone,
};

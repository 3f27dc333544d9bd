//! Exact combinatorial commutative algebra for matroid complexes: face
//! vectors, Macaulay bounds, pure O-sequences, Stanley-Reisner quotients and
//! hard Lefschetz rank certificates, all over exact integer and rational
//! arithmetic.

pub mod complexes;
pub mod corpus;
pub mod error;
pub mod formats;
pub mod linalg;
pub mod macaulay;
pub mod matroid;
pub mod oseq;
pub mod report;
pub mod sr;

#[cfg(any(test, feature = "oracles"))]
pub mod oracles;

pub use complexes::{
    build_complex, disjoint_relabel, face_vectors, poly_mul, poset_product, ps_sphere, ps_sphere_h,
    verify_ps_decomposition, Ear, EarDecomposition, FaceVectors, SimplicialComplex, SphereFactor,
};
pub use error::{Error, Result};
pub use linalg::{ExactMatrix, ExactScalar, IntegerMatrix};
pub use macaulay::{check_flatness, check_g_inequalities, is_m_sequence, macaulay_representation, pseudopower};
pub use matroid::{certify_gale_pair, gale_dual, matroid_from_bases, matroid_from_matrix, verify_matroid_property, Matroid};
pub use oseq::{check_ihl, find_pure_o_realization, order_ideal, pure_o_sequence, Monomial, MonomialSet};
pub use report::{CheckReport, IhlReport, MapRank};
pub use sr::{quotient_dims, random_lsop, sr_ihl_check, standard_monomials, LsopCandidate, QuotientReport};

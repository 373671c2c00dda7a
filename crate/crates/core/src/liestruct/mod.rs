//! Type-A Lie structure: matrix Lie algebras with the trace pairing,
//! partitions labelling nilpotent orbits, parabolics and Richardson orbits,
//! and Weyl double cosets.

pub mod algebra;
pub mod parabolic;
pub mod partition;
pub mod weyl;

pub use algebra::{
    ad_orbit_tangent_rank, bracket, cartan_element, elementary, jordan_matrix, jordan_type, AlgebraKind, Mat,
    MatrixLieAlgebra,
};
pub use parabolic::{nilradical_basis, richardson_partition, ParabolicComposition};
pub use partition::{dominance_leq, Partition};
pub use weyl::{double_coset_representatives, weyl_double_coset_count};

/// `n^2 - sum (lambda'_i)^2`.
pub fn orbit_dim(lambda: &Partition) -> usize {
    lambda.orbit_dim()
}

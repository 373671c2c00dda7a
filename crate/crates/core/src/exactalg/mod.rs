//! Exact arithmetic substrate: fields, dense matrices, polynomials over `F_p`,
//! prime generation and seeded randomness.

pub mod field;
pub mod genericity;
pub mod matrix;
pub mod poly;
pub mod prime;
pub mod rng;

pub use field::{Field, PrimeField, Rationals};
pub use genericity::{per_prime, Genericity};
pub use matrix::DenseMatrix;
pub use poly::{resultant_in_t, univariate_roots, BiPoly, UniPoly};
pub use prime::{is_prime, random_prime};
pub use rng::SeededRng;

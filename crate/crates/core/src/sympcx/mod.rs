//! Symplectic complexity of homogeneous spaces: the KKS form on nilpotent
//! orbits, samplers for `O ∩ h^perp`, interval bounds for `sc_O` and `sc_Xi`,
//! and the identity checks built on them.

pub mod invariant;
pub mod kks;
pub mod sample;
pub mod sampler;
pub mod verify;

pub use invariant::{sc_orbit, sc_orbit_over_primes, sc_set, OrbitOnPrime, OrbitSet, ScOrbit, ScSet};
pub use kks::{kirillov_gram, kks_eval, kks_gram, KksForm};
pub use sample::{Catalog, Exactness, IntersectionContext, IntersectionSample};
pub use sampler::{sample_intersection, Emptiness, SampleBatch, SamplerConfig, Strategy};
pub use verify::{
    orbital_variety_check, question_evidence, verify_clause_i, verify_clause_iii, verify_clause_iv, verify_cor_b,
    verify_theorem_a, Certificate, Clause, ReportValue, ScReport, TheoremCheck, Verdict,
};

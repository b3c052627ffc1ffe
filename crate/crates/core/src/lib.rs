//! Minimal generators of the ideals of nilpotent orbit closures.
//!
//! For a partition `μ` of `n`, the ideal `J_μ` of polynomial functions on
//! `n × n` matrices vanishing on the closure of the nilpotent orbit of
//! Jordan type `μ` is generated by the invariants `t_p` and by spaces of
//! sums of minors `U_{i,μ(i)}`. This crate computes which of these spaces
//! form a minimal generating set, builds the generators explicitly, and
//! checks minimality and redundancy with exact arithmetic.
//!
//! ```
//! use orbit_ideals::{minimal_schedule, Partition};
//!
//! let mu: Partition = "4,2^3,1^5".parse().unwrap();
//! let schedule = minimal_schedule(&mu);
//! assert_eq!(schedule.minor_pairs(), vec![(1, 4), (2, 5), (3, 6), (5, 7), (6, 7), (7, 7)]);
//! ```

pub mod error;
pub mod linalg;
pub mod matrix;
pub mod membership;
pub mod minors;
pub mod orbit;
pub mod partition;
pub mod polyring;
pub mod schedule;
pub mod schur;
pub mod witness;

pub use error::{Error, Result};
pub use matrix::RationalMatrix;
pub use membership::{
    ideal_contains, verify_certificate, verify_filtration_step, verify_minimal, verify_redundant,
    Certificate, ContainmentReport, GradedCoefficientMatrix, GradedOracle, MembershipMode,
    MembershipStatus, MembershipVerdict, MinimalityReport, RedundancyReport, VerifyOptions,
};
pub use minors::{invariant_t, minor, v_element, v_span_basis, MinorIndex, VBasis, VElement};
pub use orbit::{jordan_matrix, sample_orbit, vanishing_check, OrbitSample, VanishingReport};
pub use partition::{partitions_of, Partition};
pub use polyring::{EvaluationPoint, Monomial, Polynomial, Variable};
pub use schedule::{
    excluded_indices, minimal_schedule, rank_variety_schedule, weyman_schedule,
    GeneratorDescriptor, GeneratorKind, Schedule,
};
pub use schur::{u_complement_basis, udim, UDimensionTable};
pub use witness::{minimality_witness, redundancy_witness, MinimalityWitness, RedundancyWitness};

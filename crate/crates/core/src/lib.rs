//! Exact combinatorics on finite set families.
//!
//! * [`family`]: set families, membership signatures, boolean atoms and the
//!   two file formats.
//! * [`shatter`]: the dual shatter function, exact and greedy.
//! * [`pq`]: (p,q)-properties, maximum disjoint subfamilies, greedy disjoint
//!   sequences avoiding a target.
//! * [`piercing`]: minimum partitions into consistent classes (piercing sets).
//! * [`witness`]: quadratic lower-bound witness chains and their verifier.
//! * [`generators`]: seeded families with known structure.

pub mod bits;
pub mod error;
pub mod family;
pub mod generators;
pub mod piercing;
pub mod pq;
pub mod rng;
pub mod shatter;
pub mod witness;

pub use bits::PointSet;
pub use error::{Error, Location, Result};
pub use family::{
    atoms_meeting, boolean_atoms, parse_family, point_signature, serialize_family,
    serialize_incidence, AtomDecomposition, NamedSet, SetFamily, Signature,
};
pub use generators::GeneratorSpec;
pub use piercing::{
    transversal_exact, transversal_greedy, verify_partition, ExactPiercing, PartitionVerdict,
    PiercingSolution,
};
pub use pq::{disjoint_sequence_greedy, has_pq, max_disjoint, DisjointResult, PropertyReport};
pub use shatter::{dual_shatter, growth_profile, GrowthProfile, ShatterMode, ShatterResult};
pub use witness::{
    build_quadratic_witness, candidate_theta, verify_witness, StuckCertificate, StuckReason,
    VerificationReport, WitnessChain, WitnessOutcome,
};

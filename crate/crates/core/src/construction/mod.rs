//! The evaluation-functional construction and the machinery that refutes
//! linear candidates against it.

pub mod certificate;
pub mod counting;
pub mod exhaustive;
pub mod family;
pub mod map;
pub mod pairs;
pub mod sweep;
pub mod witness;

pub use certificate::{
    refute, refute_family, validate, validate_certificate, Certificate, CertificateDoc, CheckFailure,
    Variant, VariantTag,
};
pub use counting::{counting_chain_check, u_diagnostic, CountingReport, Implication, UDiagnostic};
pub use exhaustive::{refute_exhaustive, ExhaustiveVerdict};
pub use family::{
    build_family, check_family, property3_check, Family, FamilyOutcome, RandomFamily, VFamily,
};
pub use map::{decompose, phi, LinearMap};
pub use pairs::{check_pair, find_violating_pair, PairSearch, PairStrategy, Violation};
pub use sweep::{sweep, FamilySource, SweepCell, SweepRow};
pub use witness::{build_witness, check_witness, WitnessFailure};

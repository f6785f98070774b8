//! Finite, local and truncated F_q-shtukas.

pub mod finite;
pub mod local;
pub mod truncated;

pub use finite::{colie, decompose_etale_nilpotent, iterate_frobenius, nilpotence_checks, verschiebung_finite, CoLieData, Decomposition, FiniteShtuka, NilpotenceReport};
pub use local::{boundedness_check, dual, hom, local_nilpotence_checks, tensor, verschiebung_local, BoundCertificate, BoundednessReport, LocalNilpotenceReport, LocalShtuka};
pub use truncated::{sequence_check, truncate, SequenceReport, TruncatedShtuka};

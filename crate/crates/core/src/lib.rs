//! Finite fields, (extended) generalized Reed-Solomon codes and their
//! Euclidean hulls: certificates of self-orthogonality, reductions that
//! produce MDS codes with any prescribed hull dimension, explicit seed
//! families, and brute-force oracles.

pub mod construct;
pub mod error;
pub mod families;
pub mod gf;
pub mod grs;
pub mod hull;
pub mod linalg;
pub mod oracle;
pub mod selftest;

pub use construct::{Choices, ReductionPlan, Route, SeedCode, TernaryKind};
pub use error::{Error, Result};
pub use families::{Family, FamilyParams, FamilySeed, Variant};
pub use gf::{Elem, Field};
pub use grs::{EvaluationSet, GrsSpec};
pub use hull::{hull_report, Certificate, CertificateKind, Classification, HullReport, LinearCode};
pub use linalg::{Matrix, Poly};
pub use oracle::OracleBudget;

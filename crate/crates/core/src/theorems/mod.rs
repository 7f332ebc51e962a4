//! Predicted values, the trace form of an extension, the Galois
//! obstruction and the verification harness.

pub mod galois;
pub mod predict;
pub mod report;
pub mod revoy;
pub mod verify;

pub use galois::{example1_audit, galois_obstruction, Example1Audit, GaloisCheck, GaloisVerdict};
#[cfg(feature = "rational")]
pub use galois::{galois_obstruction_rational, RationalGaloisCheck};
pub use predict::*;
pub use report::{Claim, Params, Record, Report, Verdict};
pub use revoy::revoy_trace_form;
pub use verify::{cases, run_cases, run_verification, small_fields, standard_extension, Case, Grid};

//! Generalized quasi-cyclic (GQC) codes over finite fields.
//!
//! Provides exact finite field towers, factorization of x^m - 1, minimal
//! cyclic codes and their primitive idempotents, the CRT/constituent
//! decomposition of GQC codes, concatenated and trace representations, a
//! Jensen-type minimum distance bound, dual-code structure with self-dual
//! and LCD verdicts, and juxtaposition constructions of long LCD codes.

pub mod bounds;
pub mod codespec;
pub mod construct;
pub mod cyclic;
pub mod duality;
pub mod error;
pub mod gf;
pub mod gqc;
pub mod lincode;
pub mod polyring;

pub use bounds::BoundReport;
pub use error::{Error, Result};
pub use gf::{Field, FieldElement};
pub use gqc::{ConstituentSet, GqcCode};
pub use lincode::{DualForm, LinearCode};
pub use polyring::{Factorization, Poly};

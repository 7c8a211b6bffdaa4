//! Support-class rings of 2x2 matrix groups over finite fields.

pub mod algebra;
pub mod chars;
mod error;
pub mod gf;
pub mod groupring;
pub mod idempotents;
pub mod linalg;
pub mod oracle;
pub mod rational;
pub mod report;
pub mod schemes;
pub mod scring;
pub mod sl2;

pub use error::{Error, Result};
pub use gf::{ExtElem, FieldElem, GaloisField, QuadraticExtension};
pub use groupring::{GroupAlgebraElement, GroupKind, MatrixGroup};
pub use rational::Rational;
pub use report::{Check, Checks, Report, Status, VerificationReport};
pub use scring::{QPolynomial, StructureTable, SupportVector};
pub use sl2::{Mat2, RefinedType, SupportClass};

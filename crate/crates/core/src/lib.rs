//! Exact kernel for ordinals, sign-sequence surreals, logarithmic
//! hyperseries and hyperlogarithm ladders.

pub mod axiom_audit;
pub mod conway;
pub mod derivation;
pub mod hypercalc;
pub mod lhm;
pub mod ordinal;
pub mod series;
pub mod signseq;
pub mod text;

pub use axiom_audit::{audit, AuditConfig, AuditError, AuditReport, Axiom};
pub use conway::{ConwayCalculator, ConwayError, RationalInterval, UpperBound};
pub use derivation::{derive, derive_k, derive_monomial, DerivationError};
pub use lhm::{LhmError, Monomial, Piece};
pub use ordinal::{Ordinal, OrdinalError, OrdinalKind};
pub use series::{Decomposition, Series, SeriesError};
pub use signseq::{Sign, SignSeq, SignSeqError};
pub use text::{format_rational, parse_rational, ParseError, Rational};

//! Finite binary relations between sets of nonzero non-units of an integral
//! domain, viewed as a category: structural predicates, categorical
//! classification, factorization search and bounded axiom verification.
//!
//! Everything is generic over the label type; the `Int*` aliases fix it to
//! `i64`.

pub mod budget;
pub mod carrier;
pub mod categorical;
pub mod class;
pub mod error;
pub mod factorization;
pub mod label;
pub mod matrix;
pub mod predicates;
pub mod sink;
pub mod verify;

pub use budget::{Budget, DEFAULT_BUDGET};
pub use carrier::{compose, Carrier, Relation};
pub use class::{ClassKind, ClassSpec};
pub use error::{Error, Result};
pub use factorization::{DiagonalResult, FactorizationPair};
pub use label::Label;
pub use matrix::BitMatrix;
pub use predicates::PredicateReport;
pub use sink::Sink;
pub use verify::{AxiomReport, Counterexample, PropertyId, Status};

pub type IntCarrier = Carrier<i64>;
pub type IntRelation = Relation<i64>;
pub type IntSink = Sink<i64>;
pub type IntFactorization = FactorizationPair<i64>;
pub type IntAxiomReport = AxiomReport<i64>;

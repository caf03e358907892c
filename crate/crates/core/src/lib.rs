//! Sphere-packing upper bounds and sphere-covering lower bounds on code
//! sizes for combinatorial channels.
//!
//! A channel is a 0/1 incidence between inputs and outputs ([`Channel`]).
//! Codes are input sets whose output neighborhoods are pairwise disjoint.
//! The crate provides exact fractional and integer packing/covering solvers,
//! closed-form and iterative bounds, and the run-class machinery for
//! deletion and grain channels.

pub mod bounds;
pub mod certificate;
pub mod channel;
pub mod error;
pub mod io;
pub mod lp;
pub mod rational;
pub mod runs;
pub mod zoo;

pub use bounds::{BoundReport, Direction};
pub use certificate::{Certificate, CertificateKind};
pub use channel::{Channel, Graph, Labels, Side, Violation, WeightVec};
pub use error::{Error, Result};
pub use rational::Rational;
pub use zoo::{BinaryWord, RunProfile};

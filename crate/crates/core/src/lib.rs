//! SINR analysis over general decay spaces.
//!
//! A [`DecaySpace`] is a finite node set with a non-negative decay matrix.
//! On top of it the crate computes metricity parameters and quasi-distances
//! ([`metricity`]), affectance and feasibility for link sets ([`link`]),
//! uniform-power capacity with an exhaustive optimum and partition lemmas
//! ([`capacity`]), fading and dimension diagnostics ([`analysis`]), and the
//! instance families used to exercise all of these ([`generators`]).

pub mod analysis;
pub mod capacity;
pub mod error;
pub mod generators;
pub mod link;
pub mod metricity;
pub mod search;
pub mod space;

pub use error::{Error, Result};
pub use link::{Direction, Link, LinkSystem, PowerAssignment, SinrParams};
pub use metricity::{metricity_report, quasi_distances, MetricityReport, QuasiMetric};
pub use space::{DecaySpace, SpaceMode};

//! Growth and fading diagnostics of decay spaces.

mod fading;
mod independence;
mod packing;
mod zeta_fn;

pub use fading::{fading_bound, fading_parameter, FadingReport, SeparationUnits};
pub use independence::{guard_set, independence_dimension, is_independent, IndependenceReport};
pub use packing::{
    assouad_estimate, ball, ball_closed, half_radius_cover, packing_number, DimensionEstimate, PackingConstant,
    PackingResult, DEFAULT_Q_GRID,
};
pub use zeta_fn::riemann_zeta;

/// Default node-count limit for exact combinatorial searches.
pub const DEFAULT_EXACT_LIMIT: usize = 24;

//! Error type shared by every module of the crate.

use thiserror::Error;

use crate::space::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("decay matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },

    #[error("decay space violates its axioms: {}", first_violation(.0))]
    InvalidSpace(Vec<Violation>),

    #[error("metricity is unbounded: triple ({}, {}, {}) cannot satisfy the relaxed triangle inequality", .0[0], .0[1], .0[2])]
    UnboundedMetricity([usize; 3]),

    #[error("quasi-distances at zeta = {zeta} violate the triangle inequality on triple ({x}, {y}, {z})")]
    TriangleViolation {
        zeta: f64,
        x: usize,
        y: usize,
        z: usize,
    },

    #[error("link {0} is drowned by noise")]
    DrownedLink(usize),

    #[error("invalid link {index}: {reason}")]
    InvalidLink { index: usize, reason: String },

    #[error("operation requires a uniform power assignment")]
    NonUniformPower,

    #[error("{links} links exceed the exhaustive oracle limit of {max}; sample a subset")]
    TooManyLinks { links: usize, max: usize },

    #[error("links {v} and {w} are not {eta}-separated")]
    NotSeparated { v: usize, w: usize, eta: f64 },

    #[error("link set is not {k}-feasible (link {link} has in-affectance {value})")]
    NotFeasible { k: f64, link: usize, value: f64 },

    #[error("zeta series diverges at s = {0} (needs s > 1)")]
    Divergent(f64),

    #[error("partition of {links} links exceeded its bound of {bound} classes")]
    PartitionBound { links: usize, bound: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn first_violation(v: &[Violation]) -> String {
    match v {
        [] => "no violations recorded".to_string(),
        [one] => one.to_string(),
        [first, rest @ ..] => format!("{first} (and {} more)", rest.len()),
    }
}

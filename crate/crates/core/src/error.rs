use std::path::PathBuf;

use thiserror::Error;

use crate::medium::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown material `{name}` (available: {})", available.join(", "))]
    UnknownMaterial {
        name: String,
        available: Vec<String>,
    },

    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{}: missing required key `{key}`", path.display())]
    MissingKey { path: PathBuf, key: &'static str },

    #[error("invalid material: {}", join_violations(.0))]
    Validation(Vec<Violation>),

    #[error("on sound cone: |dx| = {r:e} m equals c*|dt| = {ct:e} m, correlator is singular")]
    SoundCone { r: f64, ct: f64 },

    #[error("coincident points: the correlator diverges at zero separation")]
    Coincidence,

    #[error("point lies on the boundary (z = 0): the fluctuation shift diverges")]
    BoundaryContact,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("quadrature did not converge: estimated error {estimate:e} exceeds target {target:e}")]
    Convergence { estimate: f64, target: f64 },

    #[error(
        "regulator extrapolation did not converge: error estimate {estimate:e} exceeds {limit:e}"
    )]
    Extrapolation { estimate: f64, limit: f64 },

    #[error(
        "displacement {norm:e} m aliases on a periodic box of side {side:e} m (need |dx| < L/2)"
    )]
    Aliasing { norm: f64, side: f64 },

    #[error("ill-posed convergence study: {0}")]
    IllPosedStudy(String),

    #[error("material `{material}` has no `{field}`, required for this quantity")]
    MissingProperty {
        material: String,
        field: &'static str,
    },

    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

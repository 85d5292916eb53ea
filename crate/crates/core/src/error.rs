use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("frame is not orthonormal: {0}")]
    NotOrthonormal(String),

    #[error("{path}: line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}: {message}")]
    InvalidScene { path: PathBuf, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("image dimensions differ: {a_width}x{a_height} vs {b_width}x{b_height}")]
    DimensionMismatch {
        a_width: usize,
        a_height: usize,
        b_width: usize,
        b_height: usize,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why an approximation stage produced no contribution. Not an error for the
/// caller: the affected term is simply zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum Degeneracy {
    #[error("light is at or below the reflector plane")]
    LightBelowPlane,
    #[error("shading point is behind the reflector")]
    ReceiverBehindReflector,
    #[error("sampling disk does not overlap the rectangle")]
    DiskMissesRectangle,
    #[error("view direction is grazing with respect to the half vector")]
    GrazingView,
    #[error("shading point coincides with the specular peak")]
    CoincidentPeak,
    #[error("reflected direction is below the receiver's horizon")]
    BelowReceiverHorizon,
}

use std::fmt;

use thiserror::Error;

use crate::lincore::{MarkedSubset, Rational};

/// A hyperplane `phi(I, .) = k` that a linearization was found to lie on.
///
/// Symmetric linearizations report whole cardinality classes instead of
/// listing every subset of that size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hyperplane {
    Subset { subset: MarkedSubset, k: u32 },
    SizeClass { size: usize, k: u32 },
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hyperplane::Subset { subset, k } => write!(f, "({subset}, {k})"),
            Hyperplane::SizeClass { size, k } => write!(f, "(I_{size}, {k})"),
        }
    }
}

fn list_hyperplanes(hs: &[Hyperplane]) -> String {
    const SHOWN: usize = 6;
    let mut out: Vec<String> = hs.iter().take(SHOWN).map(|h| h.to_string()).collect();
    if hs.len() > SHOWN {
        out.push(format!("... {} more", hs.len() - SHOWN));
    }
    out.join(", ")
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("cannot parse rational {0:?}: expected \"p/q\" or an integer")]
    ParseRational(String),

    #[error("point violates the cross-section identity (d-1)*gamma + sum(c) = d+1; residual {residual}")]
    CrossSection { residual: Rational },

    #[error("linearization is not in the open region 0 < gamma, c_i < 1")]
    NotInterior,

    #[error("phi is undefined at gamma = 1 (exterior wall)")]
    GammaOne,

    #[error("linearization lies on {} wall(s): {}", .hyperplanes.len(), list_hyperplanes(.hyperplanes))]
    OnWall { hyperplanes: Vec<Hyperplane> },

    #[error("linearization is not on the requested wall {0}")]
    NotOnWall(Hyperplane),

    #[error("enumeration cap exceeded: {what} needs {size}, cap is {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },

    #[error("projection from mark {mark} is undefined: {reason}")]
    ProjectionUndefined { mark: usize, reason: String },

    #[error("sigma({0}) = 0: the marks collide and there is no tail factor")]
    NoTailFactor(MarkedSubset),

    #[error("linearization is interior; no exterior wall applies")]
    InteriorPoint,

    #[error("{source_name}:{line}: {message}")]
    Format { source_name: String, line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } => 3,
            Error::OnWall { .. } => 4,
            Error::Io(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

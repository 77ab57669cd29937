use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("holomorphic data is not conformal: F'.F' = {0}")]
    NonConformal(String),
    #[error("holomorphic data has vanishing differential")]
    ZeroDifferential,
    #[error("ambient dimension must be at least 3, got {0}")]
    AmbientDimension(usize),
    #[error("Hopf differential vanishes identically")]
    DegenerateSurface,
    #[error("surface is not superconformal")]
    NotSuperconformal,
    #[error("<kappa, kappa> vanishes identically and no mu was supplied")]
    SuperconformalInput,
    #[error("second fundamental form is tangential everywhere")]
    UmbilicDegenerate,
    #[error("eta# has rank below 2 at {0}")]
    RankDrop(String),
    #[error("surface does not extend over the end at {0}")]
    NonCompact(String),
    #[error("x_z has nonzero residue {residue} at {at}")]
    ResidueEnd { at: String, residue: String },
    #[error("no independent second Laurent direction at {0}")]
    DependentLeadingVectors(String),
    #[error("all sections vanish identically")]
    AllZero,
    #[error("constraint system inconsistent at equation {0}")]
    Inconsistent(usize),
    #[error("rank {rank} exceeds ambient dimension {n}")]
    RankExceedsDimension { rank: usize, n: usize },
    #[error("residue obstruction: logarithmic part {0}")]
    ResidueObstruction(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

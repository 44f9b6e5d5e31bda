use thiserror::Error;

use crate::surface::{BranchId, SectorId};

/// Everything that can go wrong across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sector {0} has no prebranches")]
    EmptySectorBoundary(SectorId),
    #[error("sector {sector} references unknown branch {branch}")]
    DanglingBranchReference { sector: SectorId, branch: BranchId },
    #[error("prebranch of sector {sector} on branch {branch} has oriented degree 0")]
    ZeroDegree { sector: SectorId, branch: BranchId },
    #[error("branch {0} has no prebranch attached")]
    IsolatedBranch(BranchId),
    #[error("duplicate branch id {0}")]
    DuplicateBranch(BranchId),
    #[error("duplicate sector id {0}")]
    DuplicateSector(SectorId),
    #[error("unknown branch {0}")]
    UnknownBranch(BranchId),
    #[error("unknown sector {0}")]
    UnknownSector(SectorId),
    #[error("surface is not regular (branch {0} carries prebranches of different degrees)")]
    NotRegular(BranchId),
    #[error("surface is disconnected")]
    Disconnected,
    #[error("sector {0} is nonorientable")]
    NonorientableSector(SectorId),
    #[error("internal mismatch: {0}")]
    InternalMismatch(String),
    #[error("boundary component {component} has odd Euler characteristic {chi}")]
    OddComponentChi { component: usize, chi: i64 },
    #[error("sector {0} is not an annulus")]
    NotAnAnnulus(SectorId),
    #[error("annulus {0} has an end of degree other than 1")]
    DegreeNotOne(SectorId),
    #[error("both ends of annulus {0} lie on the same branch")]
    SameBranch(SectorId),
    #[error("builder degree {0} has absolute value below 2")]
    DegreeTooSmall(i64),
    #[error("degree list is empty")]
    EmptyDegrees,
    #[error("graph vertex {0} has no incident edge")]
    IsolatedVertex(usize),
    #[error("builder argument: {0}")]
    InvalidArgument(String),
    #[error("minor enumeration exceeded {0} results")]
    ResultCapExceeded(usize),
    #[error("neighborhood-minor search exceeded {0} states")]
    SearchBudgetExceeded(usize),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("semantic error at line {line}: {source}")]
    Semantic {
        line: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

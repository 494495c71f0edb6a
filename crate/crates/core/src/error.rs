use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error(
        "ambiguous snap: point ({0}, {1}) is within snap tolerance of two registered vertices"
    )]
    AmbiguousSnap(f64, f64),
    #[error(
        "vertices {0} and {1} are separated by {2}, between SNAP_TOL and MIN_SEP; construction bug"
    )]
    MinSepViolation(usize, usize, f64),
    #[error("degenerate polygon: consecutive vertices coincide at corner {0}")]
    DegeneratePolygon(usize),
    #[error("tiles {0} and {1} have overlapping interiors")]
    OverlappingTiles(usize, usize),
    #[error("non-manifold edge ({0}, {1}): more than two tiles claim it")]
    NonmanifoldEdge(usize, usize),
    #[error("no closed vertices in patch")]
    NoClosedVertices,
    #[error("labelling is not total: edge ({0}, {1}) has no weight")]
    PartialCoverage(usize, usize),
    #[error("conflicting table weights for edge ({0}, {1}): {2} vs {3}")]
    TableConflict(usize, usize, u8, u8),
    #[error("rule `{0}` needs metadata the patch does not carry: {1}")]
    MissingMetadata(String, String),
    #[error("inflation level {0} exceeds cap {1}")]
    LevelCapExceeded(usize, usize),
    #[error("tiles left over after supertile grouping: {0} ungrouped")]
    UngroupableTiles(usize),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("unknown configuration catalogue `{0}`")]
    UnknownCatalogue(String),
    #[error("rule `{0}` is not a supertile rule")]
    NotSupertileRule(String),
    #[error("rule `{0}` is not a vertex-configuration rule")]
    NotConfigRule(String),
    #[error("period basis is singular")]
    SingularBasis,
    #[error("factor graph is not connected")]
    NotConnected,
    #[error("factor graph has a loop; N too small or spec invalid")]
    LoopDetected,
    #[error("finite solver found no labelling for the factor graph even after doubling N")]
    FactorUnsat,
    #[error("verification window too small: no vertex has a complete neighbourhood")]
    WindowTooSmall,
    #[error("graph too large for exhaustive enumeration: {0} edges (limit {1})")]
    TooLarge(usize, usize),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

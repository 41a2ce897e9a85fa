use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("torsion level mismatch: expected {expected}, got {got}")]
    LevelMismatch { expected: u32, got: u32 },

    #[error("enumeration refused: level {level} exceeds cap {cap} ({points} points)")]
    EnumerationCapExceeded { level: u32, cap: u32, points: u128 },

    #[error("subset element {0} outside {{1..6}}")]
    InvalidSubsetElement(u8),

    #[error("not a configuration: {0}")]
    NotAConfiguration(String),

    #[error("not a design: {0}")]
    NotADesign(String),

    #[error("divisor classes live on different lattices")]
    LatticeMismatch,

    #[error("gram matrix is not symmetric of matching dimension")]
    BadGramMatrix,

    #[error("pullback by n requires n >= 1, got {0}")]
    BadPullbackFactor(i64),

    #[error("pullback requires an unblown lattice (found exceptional generators)")]
    BlownLattice,

    #[error("duplicate point id in strict transform: {0}")]
    DuplicatePointId(String),

    #[error("odd integer self-intersection {0}: the curve cannot be a degree-2 quotient image")]
    OddSelfIntersection(i128),

    #[error("parity violation: {total} - {fixed} is odd")]
    ParityViolation { total: u128, fixed: u128 },

    #[error("singular set is empty")]
    EmptySingularSet,

    #[error("multiplicity {0} is below 2")]
    MultiplicityTooSmall(u32),

    #[error("empty point set: a + b + c must be positive")]
    EmptyPointSet(),

    #[error("brute-force oracle refused: {s} singular points exceeds cap 12")]
    SubsetCapExceeded { s: u64 },

    #[error("transversality accounting failed: components plus crossings give {expected}, profile declares {declared}")]
    TransversalityMismatch { expected: String, declared: String },

    #[error("invalid parameter for family {family}: {reason}")]
    InvalidFamilyParameter { family: String, reason: String },

    #[error("unknown family name: {0}")]
    UnknownFamily(String),

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("value out of the renderable integer range")]
    RenderOverflow,
}

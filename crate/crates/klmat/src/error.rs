use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// The matroid has a loop (an element of rank zero).
    #[error("matroid has loops: element {0} has rank 0")]
    LoopsPresent(usize),
    /// An explicit flat list failed geometric-lattice validation.
    #[error("not a geometric lattice: {0}")]
    InvalidLattice(String),
    /// The lattice would exceed the configured flat cap.
    #[error("lattice exceeds the flat cap of {cap}: {detail}")]
    TooLarge { cap: usize, detail: String },
    /// Ground sets are stored as 128-bit sets.
    #[error("ground set has {0} elements; at most 128 are supported")]
    GroundSetTooLarge(usize),
    /// Möbius values are only defined on comparable pairs.
    #[error("flats are not comparable")]
    NotComparable,
    /// A flat argument does not belong to the lattice.
    #[error("flat {0} is not in the lattice")]
    FlatNotInLattice(String),
    /// A Whitney-number index lies outside `0..=rk M`.
    #[error("rank index out of range")]
    RankOutOfRange,
    /// The internal antisymmetry check `t^rk R(1/t) = -R(t)` failed.
    /// This signals an arithmetic bug, never bad input.
    #[error("antisymmetry check failed: {0}")]
    AntisymmetryViolated(String),
    /// The operation requires a matroid of positive rank.
    #[error("operation requires positive rank")]
    RankZero,
    /// Closed-form coefficients exist only for indices 0..=3.
    #[error("closed-form coefficient only available for i <= 3 (got {0})")]
    UnsupportedIndex(usize),
    /// A Stirling or Whitney index is out of its valid range.
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    /// An h-polynomial coefficient came out negative, which signals an
    /// upstream bug.
    #[error("negative h-polynomial coefficient: {0}")]
    NegativeHCoefficient(String),
    /// `t^n p(1/t)` needs `deg p <= n`.
    #[error("polynomial reversal needs degree <= {limit}, got {degree}")]
    ReversalDegree { limit: usize, degree: usize },
    /// A matroid spec string or file could not be parsed.
    #[error("spec parse error: {0}")]
    SpecParse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

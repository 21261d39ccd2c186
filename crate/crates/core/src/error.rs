use thiserror::Error;

/// Errors raised by the inference engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("variable `{0}` has an empty frame")]
    EmptyFrame(String),
    #[error("duplicate value `{value}` in frame of `{variable}`")]
    DuplicateValue { variable: String, value: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown value `{value}` for variable `{variable}`")]
    UnknownValue { variable: String, value: String },
    #[error("configuration count {count} exceeds the cap of {cap}")]
    SizeCap { count: u128, cap: u64 },
    #[error("domain {sub} is not contained in {sup}")]
    NotSubset { sub: String, sup: String },
    #[error("domain mismatch: expected {expected}, found {found}")]
    DomainMismatch { expected: String, found: String },
    #[error("operands use different variable catalogs")]
    CatalogMismatch,
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("duplicate element `{0}` in universe")]
    DuplicateElement(String),
    #[error("empty universe")]
    EmptyUniverse,
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partitions are over different universes")]
    UniverseMismatch,
    #[error("partition set is not closed under join: {0}")]
    NotJoinClosed(String),

    #[error("semiring mismatch: {0} vs {1}")]
    SemiringMismatch(String, String),
    #[error("unknown semiring `{0}`")]
    UnknownSemiring(String),
    #[error("capability error: {0}")]
    Capability(String),
    #[error("value {value} is outside the carrier of {semiring}")]
    OutsideCarrier { semiring: String, value: f64 },
    #[error("table length {found} does not match the {expected} configurations of the domain")]
    TableLength { expected: usize, found: usize },
    #[error("total mass is zero")]
    ZeroMass,

    #[error("invalid set potential: {0}")]
    InvalidPotential(String),
    #[error("total conflict: the combined evidence is fully contradictory")]
    TotalConflict,
    #[error("frame of {size} configurations exceeds the subset-table cap of {cap}")]
    SubsetCap { size: usize, cap: usize },
    #[error("set-function table has {found} entries, expected {expected}")]
    IncompleteTable { expected: usize, found: usize },

    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid elimination sequence: {0}")]
    InvalidSequence(String),
    #[error("missing message cache: {0}")]
    MissingCache(String),
}

impl Error {
    /// True for errors that signal a missing algebraic capability.
    pub fn is_capability(&self) -> bool {
        matches!(self, Error::Capability(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("composite modulus: gcd undefined")]
    CompositeModulus,
    #[error("membership test requires prime period")]
    CompositePeriod,
    #[error("unsupported period (composite)")]
    UnsupportedPeriod,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arc used ≠ 2 times (arc {0})")]
    ArcUseCount(i64),
    #[error("inconsistent orientation")]
    InconsistentOrientation,
    #[error("generator index out of range: {0}")]
    GeneratorOutOfRange(i32),
    #[error("coloring not total")]
    ColoringNotTotal,
    #[error("color {color} out of range for n = {n}")]
    ColorOutOfRange { color: u32, n: u32 },
    #[error("tangle not self-composable")]
    TangleNotComposable,
    #[error("move not applicable at site: {0}")]
    MoveNotApplicable(String),
    #[error("no planar embedding")]
    NoPlanarEmbedding,
    #[error("color overflow")]
    ColorOverflow,
    #[error("oracle requires closed web")]
    OracleRequiresClosedWeb,
    #[error("invalid web: {0}")]
    InvalidWeb(String),
    #[error("relation not applicable")]
    RelationNotApplicable,
    #[error("irreducible web, rerun with --engine both")]
    Irreducible,
    #[error("engines disagree: {0}")]
    EngineDisagreement(String),
    #[error("unknown engine {0:?}")]
    UnknownEngine(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

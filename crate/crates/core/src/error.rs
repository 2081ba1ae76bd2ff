use thiserror::Error;

/// Errors raised by field arithmetic, geometry and arc construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported extension degree {0} (supported: 1..=24)")]
    UnsupportedDegree(u32),
    #[error("polynomial {modulus:#x} is not irreducible of degree {degree}")]
    NotIrreducible { modulus: u64, degree: u32 },
    #[error("bit pattern {bits:#x} does not fit in GF(2^{degree})")]
    ElementOutOfRange { bits: u32, degree: u32 },
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("discrete logarithm of zero")]
    LogOfZero,
    #[error("no discrete-log table for GF(2^{0})")]
    NoLogTable(u32),
    #[error("element {0:#x} is not primitive")]
    NotPrimitive(u32),
    #[error("no primitive element satisfies {0}")]
    NoGeneratorForRelation(String),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("plane too large: GF(2^{0}) exceeds the enumerable range")]
    PlaneTooLarge(u32),
    #[error("zero vector is not a projective point or line")]
    ZeroVector,
    #[error("degenerate conic: {0}")]
    DegenerateConic(String),
    #[error("composition undefined for equal lambda: {0}")]
    EqualLambda(String),
    #[error("conics do not share a nucleus")]
    NoCommonNucleus,
    #[error("trace condition violated: {0}")]
    TraceCondition(String),
    #[error("subset is not additively closed: {0}")]
    NotAdditivelyClosed(String),
    #[error("conic set is not closed: {0}")]
    NotClosed(String),
    #[error("conic intersects the arc: {0}")]
    ConicIntersects(String),
    #[error("extension requires degree < q/2 (degree {degree}, q {q})")]
    DegreeTooLarge { degree: u32, q: u32 },
    #[error("no external line found; input is not a Mathon arc plus disjoint conic")]
    NoExternalLine,
    #[error("not a maximal arc: {0}")]
    NotMaximalArc(String),
    #[error("structure error: {0}")]
    Structure(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("degenerate trace system: {0}")]
    DegenerateTraceSystem(String),
    #[error("scale guard: {0}")]
    ScaleGuard(String),
}

pub type Result<T> = std::result::Result<T, Error>;

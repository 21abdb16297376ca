use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("surface is excluded or malformed: {0}")]
    BadSurface(String),
    #[error("non-manifold gluing: {0}")]
    NonManifoldGluing(String),
    #[error("wrong arc count: expected {expected}, found {found}")]
    WrongArcCount { expected: i64, found: usize },
    #[error("illegal tag: {0}")]
    IllegalTag(String),
    #[error("unknown identifier `{0}`")]
    UnknownId(String),
    #[error("arc {0} is not in the triangulation")]
    ArcNotInTriangulation(usize),
    #[error("no intersection data relates the two arcs")]
    UnknownIntersectionData,
    #[error("vertex {0} is frozen")]
    FrozenVertex(usize),
    #[error("exchange binomial not divisible by the old variable")]
    InexactDivision,
    #[error("cluster variable is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial exceeded {0} monomials")]
    SizeGuardExceeded(usize),
    #[error("word is not a traversal: {0}")]
    NotATraversal(String),
    #[error("word resolves in more than one way: {0}")]
    AmbiguousWord(String),
    #[error("curve is not a laminate: {0}")]
    ForbiddenCurve(String),
    #[error("2-wrap and 3-wrap spiral unrollings disagree")]
    UnstableSpiral,
    #[error("an explicit crossing word is required for this arc")]
    WordRequired,
    #[error("twisting curve is not closed")]
    NotClosed,
    #[error("corridor traversal is ambiguous: {0}")]
    CorridorAmbiguous(String),
    #[error("no stabilization up to m = {0}")]
    NoStabilization(i64),
    #[error("triangulation has a self-folded triangle")]
    SelfFoldedPresent,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("cone generators are not linearly independent")]
    NotSimplicial,
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("bad input: {0}")]
    Input(String),
    #[error("i/o failure: {0}")]
    IoFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

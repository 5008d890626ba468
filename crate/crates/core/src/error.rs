use thiserror::Error;

use crate::group::Element;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element {element} does not belong to the {expected} backend")]
    BackendMismatch { expected: String, element: String },

    #[error("generator {index} is the identity; generating sets must exclude it")]
    IdentityGenerator { index: usize },

    #[error("generator {index} duplicates generator {first}")]
    DuplicateGenerator { index: usize, first: usize },

    #[error("generating set does not generate Z^{rank}: {reason}")]
    NotGenerating { rank: usize, reason: String },

    #[error("invalid permutation image {0:?}: not a bijection")]
    InvalidPermutation(Vec<usize>),

    #[error("infinite enumeration requested on a free abelian backend")]
    InfiniteEnumeration,

    #[error("operation `{0}` is unsupported on a free abelian backend")]
    UnsupportedBackend(&'static str),

    #[error("group order exceeds the enumeration limit {limit}")]
    GroupTooLarge { limit: usize },

    #[error("element {0} is not drawn from the generating set")]
    NotAGenerator(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{element} not reached within word radius cap {cap}")]
    RadiusCapExceeded { element: String, cap: u32 },

    #[error("size {size} exceeds the configured brute-force bound {bound}")]
    BoundExceeded { size: usize, bound: usize },

    #[error("vertex {0} is not part of the vertex set")]
    VertexAbsent(String),

    #[error("vertices must be distinct; {0} repeats")]
    RepeatedVertex(String),

    #[error("a truncated digraph only yields upper bounds for color connectivity")]
    TruncatedDigraph,

    #[error("a free abelian backend needs a truncation to build a finite digraph")]
    TruncationRequired,

    #[error("map has {found} images but the vertex set has {expected} points")]
    IndexMismatch { expected: usize, found: usize },

    #[error("map is not injective: vertices {0} and {1} share an image")]
    NotInjective(usize, usize),

    #[error("decomposition precondition fails at pair ({x}, {y}): d_C = {cardinal}, d_W of images = {word}")]
    DecompositionInvalid {
        x: String,
        y: String,
        cardinal: u32,
        word: u32,
    },

    #[error("radius must be nonnegative")]
    NegativeRadius,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("too many generators ({0}); subset enumeration supports at most 63")]
    TooManyGenerators(usize),
}

impl Error {
    pub(crate) fn mismatch(expected: impl Into<String>, element: &Element) -> Self {
        Error::BackendMismatch {
            expected: expected.into(),
            element: element.to_string(),
        }
    }
}

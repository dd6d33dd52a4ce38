use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("field exponent {0} out of range (expected 1 <= m <= 16)")]
    ExponentOutOfRange(u32),
    #[error("polynomial {0:#x} is not irreducible of the requested degree")]
    Reducible(u32),
    #[error("element with bits {bits:#x} does not belong to GF(2^{m})")]
    NotInField { bits: u32, m: u32 },
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("malformed field element `{0}`")]
    Syntax(String),
    #[error("`{text}` has degree >= {m}; write elements reduced modulo the field polynomial")]
    DegreeTooLarge { text: String, m: u32 },
}

/// Errors raised while reading or constructing a dga.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DgaError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: unknown generator `{name}`")]
    UnknownGenerator {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("line {line}: duplicate generator name `{name}`")]
    DuplicateName { line: usize, name: String },
    #[error("line {line}: word `{word}` is not composable")]
    NotComposable { line: usize, word: String },
    #[error("line {line}: term `{word}` in the differential of `{generator}` has degree {found}, expected {expected}")]
    DegreeMismatch {
        line: usize,
        generator: String,
        word: String,
        expected: i32,
        found: i32,
    },
    #[error("line {line}: term `{word}` in the differential of `{generator}` runs between components ({found_row}, {found_col}), expected ({row}, {col})")]
    GradingMismatch {
        line: usize,
        generator: String,
        word: String,
        row: usize,
        col: usize,
        found_row: usize,
        found_col: usize,
    },
    #[error("line {line}: {message}")]
    Invalid { line: usize, message: String },
    #[error("line {line}: {source}")]
    Field {
        line: usize,
        #[source]
        source: FieldError,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AugError {
    #[error("no value given for `{0}`")]
    MissingValue(String),
    #[error("`{0}` is not a generator of this dga")]
    UnknownGenerator(String),
    #[error("`{0}` has nonzero degree and cannot be assigned a value")]
    NonzeroDegree(String),
    #[error("value for `{0}` given twice")]
    Duplicate(String),
    #[error("malformed assignment `{0}`")]
    Syntax(String),
    #[error("augmentation condition fails at `{generator}`: {reason}")]
    NotAugmentation { generator: String, reason: String },
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomotopyError {
    #[error("K is defined on `{0}`, which is not a degree -1 chord")]
    NotNegativeChord(String),
    #[error("dilation tuple has {found} entries for {expected} components")]
    TupleLength { expected: usize, found: usize },
    #[error("dilation entry for component {0} is zero")]
    ZeroDilation(usize),
    #[error("not a {kind} homotopy: condition fails at `{generator}`")]
    Invalid { kind: &'static str, generator: String },
    #[error("malformed witness line `{0}`")]
    Syntax(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("bilinearized differential does not square to zero between Hom-degrees {0} and {1}")]
    ChainLaw(i32, i32),
    #[error("element has {found} min coefficients for {expected} components")]
    AlphaLength { expected: usize, found: usize },
    #[error("`{0}` is not a degree -1 chord")]
    NotNegativeChord(String),
    #[error("malformed Hom element line `{0}`")]
    Syntax(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("{count} augmentations exceed the classification limit of {limit}")]
    TooManyAugmentations { count: usize, limit: usize },
    #[error(transparent)]
    Hom(#[from] HomError),
}

use crate::algebra::Element;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("odd generator `{0}` appears twice")]
    OddSquare(String),
    #[error("derivation has no image for generator `{0}`")]
    MissingImage(String),
    #[error("homology did not stabilize below order {ceiling}")]
    UnstableTruncation { ceiling: u32 },
    #[error("homology slice (degree {degree}, weight {weight}) is not finite-dimensional under padding")]
    NonFinite { degree: i64, weight: i64 },
    #[error("element is not closed: {0}")]
    NotClosed(Element),
    #[error("generator map does not commute with differentials at `{generator}`")]
    NotAMap { generator: String, residue: Element },
    #[error("non-square block: {rows} rows against {cols} columns")]
    NonSquareBlock { rows: usize, cols: usize },
    #[error("operands live in different contexts")]
    ContextMismatch,
    #[error("not a Maurer-Cartan element")]
    NotMC { residue: Element },
    #[error("matrix is not invertible at the augmentation")]
    NotInvertible,
    #[error("closed two-form inverted to a bivector with nonzero Maurer-Cartan residue")]
    MCFailure { residue: Element },
    #[error("obstruction at level {level}")]
    ObstructionNonzero { level: u32, witness: Element },
    #[error("input is not in formal mode: {0}")]
    NonFormal(String),
    #[error("extension is not small: {0}")]
    NotSmall(String),
    #[error("differential does not square to zero")]
    AxiomFailure { witness: Element },
    #[error("formal symplectic form is not closed")]
    ClosureFailure { witness: Element },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unknown field `{0}`")]
    UnknownField(String),
    #[error("dangling reference to `{0}`")]
    DanglingReference(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

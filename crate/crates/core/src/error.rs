use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed presentation: {0}")]
    Malformed(String),
    #[error("unknown {kind} label `{label}`")]
    UnknownLabel { kind: &'static str, label: String },
    #[error("instance has not passed the multiple Rota-Baxter identity check")]
    NotVerified,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("modules are defined over different instances")]
    InstanceMismatch,
    #[error("subspace is not closed under {generator}")]
    ClosureViolation { generator: String },
    #[error("image of generator `{generator}` is not a module constant")]
    NotModuleConstant { generator: String },
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("map is not well defined on the quotient: {0}")]
    NotWellDefined(String),
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("homomorphism is not injective")]
    NotInjective,
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;

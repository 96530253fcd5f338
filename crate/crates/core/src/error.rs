use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {position}: unexpected {token:?}")]
    Syntax { position: usize, token: String },

    #[error("B({m},{n}) is not a Baumslag-Solitar group: both indices must be nonzero")]
    InvalidGroup { m: i64, n: i64 },

    #[error("images do not extend to an endomorphism: a^-1 phi(b)^m a phi(b)^-n reduces to {residue}")]
    RelationViolated { residue: String },

    #[error("{word} has a-exponent sum {exp_sum}, so it is not in the kernel of |.|_a")]
    NotInKernel { word: String, exp_sum: String },

    #[error("the endomorphism does not preserve ker |.|_a (|phi(b)|_a = {b_exp_sum})")]
    KernelNotPreserved { b_exp_sum: String },

    #[error("{group} has no {expected} model")]
    WrongFamily { group: String, expected: &'static str },

    #[error("{0}")]
    UnsupportedGroup(String),

    #[error("endomorphisms act on different groups: {0} and {1}")]
    GroupMismatch(String, String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("no class meets the inner box; enlarge the bounds or lower the margin")]
    BoxTooSmall,

    #[error("exponent {0} does not fit in a machine integer")]
    Overflow(String),

    #[error("line {line}: {message}")]
    InvalidSpec { line: usize, message: String },

    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable identifier, printed by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax_error",
            Error::InvalidGroup { .. } => "invalid_group",
            Error::RelationViolated { .. } => "relation_violated",
            Error::NotInKernel { .. } => "not_in_kernel",
            Error::KernelNotPreserved { .. } => "kernel_not_preserved",
            Error::WrongFamily { .. } => "wrong_family",
            Error::UnsupportedGroup(_) => "unsupported_group",
            Error::GroupMismatch(..) => "group_mismatch",
            Error::ShapeMismatch(_) => "shape_mismatch",
            Error::BoxTooSmall => "box_too_small",
            Error::Overflow(_) => "overflow",
            Error::InvalidSpec { .. } => "invalid_spec",
            Error::Io(_) => "io_error",
        }
    }

    /// Whether the error comes from malformed input rather than the mathematics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. } | Error::InvalidGroup { .. } | Error::InvalidSpec { .. } | Error::Io(_)
        )
    }
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidField(String),

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("both arguments are zero")]
    BothZero,

    #[error("expected a non-constant polynomial")]
    ConstantPolynomial,

    #[error("expected a nonzero polynomial")]
    ZeroPolynomial,

    #[error("polynomial {0} is not irreducible")]
    NotIrreducible(String),

    #[error("curve vanishes identically modulo {0}")]
    VanishesModulo(String),

    #[error("modulus of norm {norm} is too large for table arithmetic (limit {limit})")]
    ModulusTooLarge { norm: String, limit: u64 },

    #[error("interval with q^(n+1) = {q}^{exp} elements is too large to enumerate")]
    IntervalTooLarge { q: u32, exp: u32 },

    #[error("singular transform: AD - BC = 0")]
    SingularTransform,

    #[error("budget exceeded: {required} units required, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("no nonzero form of degree <= {degree} passes through the given points")]
    FullRank { degree: u32 },

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("pigeonhole precondition violated: sum of exponents {sum} must exceed {needed}")]
    PigeonholePrecondition { sum: u64, needed: u64 },

    #[error("box size q^{box_exp} exceeds |f|^(1/9) for deg f = {modulus_degree}")]
    BoxTooLarge { box_exp: u32, modulus_degree: usize },

    #[error("4a^3 + 27b^2 vanishes")]
    SingularCurve,

    #[error("closed form requires an interval based at 0")]
    NonzeroBase,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bad Coxeter matrix: {0}")]
    BadMatrix(String),
    #[error("bad weights: {0}")]
    BadWeights(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("braid class exceeds the cap of {0} words")]
    ClassTooLarge(usize),
    #[error("enumeration exceeds the cap of {0} elements")]
    CapExceeded(usize),
    #[error("product leaves the enumerated ball")]
    BallExceeded,
    #[error("operation needs a finite, fully enumerated group")]
    InfiniteGroup,
    #[error("parabolic subgroup is infinite")]
    InfiniteParabolic,
    #[error("outside the domain: {0}")]
    DomainError(String),
    #[error("a-values on an infinite group cannot be certified from a ball")]
    UncertifiedBall,
    #[error("scope too large: {0}")]
    ScopeTooLarge(String),
    #[error("conjectures not verified on this instance: {0}")]
    ConjecturesUnverified(String),
    #[error("not a valid multiset/symbol: {0}")]
    NotInFamily(String),
    #[error("t is too small for the bar complement")]
    TTooSmall,
    #[error("N is too small for the given partitions")]
    NTooSmall,
    #[error("r and |Z| must have the same parity with 0 <= r <= |Z|")]
    ParityError,
    #[error("constructible families need b' = 0")]
    WrongResidue,
}

impl Error {
    /// Process exit code used by the command-line tool; one per variant.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BadMatrix(_) => 10,
            Error::BadWeights(_) => 11,
            Error::Parse(_) => 12,
            Error::Io(_) => 13,
            Error::ClassTooLarge(_) => 20,
            Error::CapExceeded(_) => 21,
            Error::ScopeTooLarge(_) => 22,
            Error::BallExceeded => 30,
            Error::InfiniteGroup => 31,
            Error::InfiniteParabolic => 32,
            Error::UncertifiedBall => 33,
            Error::DomainError(_) => 34,
            Error::ConjecturesUnverified(_) => 40,
            Error::NotInFamily(_) => 50,
            Error::TTooSmall => 51,
            Error::NTooSmall => 52,
            Error::ParityError => 53,
            Error::WrongResidue => 54,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

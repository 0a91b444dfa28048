use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground set size {n} outside 1..={max}")]
    GroundSize { n: u32, max: u32 },
    #[error("mask {mask:#x} does not fit a ground set of {n} elements")]
    MaskOutOfGround { mask: u64, n: u32 },
    #[error("invalid separation parameters k={k}, l={l} (need k >= l >= 1)")]
    Params { k: u32, l: u32 },
    #[error("k={k} exceeds ground set size {n}")]
    KExceedsGround { k: u32, n: u32 },
    #[error("not a union-closed family: {0}")]
    NotAFamily(String),
    #[error("cannot parse family text: {0}")]
    Parse(String),
    #[error("{what} unsupported for n={n} (limit {limit})")]
    Unsupported { what: &'static str, n: u32, limit: u32 },
    #[error("bound parameter k={0} exceeds supported range")]
    BoundRange(u32),
    #[error("class is empty: no family on {n} elements in class {class}")]
    EmptyClass { n: u32, class: String },
    #[error("malformed resume token: {0}")]
    Token(String),
    #[error("corrupt checkpoint: {0}")]
    CheckpointCorrupt(String),
    #[error("checkpoint format version {found} does not match supported version {expected}")]
    CheckpointVersion { found: u32, expected: u32 },
    #[error("checkpoint belongs to a different run: {0}")]
    CheckpointMismatch(String),
    #[error("scan halted after {done} of {total} units; rerun with the same checkpoint to resume")]
    Halted { done: u64, total: u64 },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input is empty")]
    EmptyInput,
    #[error("input contains the reserved terminator byte at position {position}")]
    ReservedByte { position: usize },
    #[error("malformed FASTA: sequence data before the first header (line {line})")]
    Fasta { line: usize },
    #[error("byte {byte:#04x} at pattern position {position} does not occur in the text")]
    UnmappedByte { byte: u8, position: usize },
    #[error("select: occurrence {k} of symbol {symbol} out of range (total {total})")]
    SelectOutOfRange { symbol: u8, k: usize, total: usize },
    #[error("duplicate interval [{sp}..{ep}] (label length {len})")]
    DuplicateInterval { sp: usize, ep: usize, len: usize },
    #[error("duplicate grid point ({x}, {y})")]
    DuplicatePoint { x: usize, y: usize },
    #[error("invalid interval [{sp}..{ep}] for n = {n}")]
    BadInterval { sp: usize, ep: usize, n: usize },
    #[error("no child with symbol {0}")]
    NoSuchChild(u8),
    #[error("the root has no parent")]
    RootHasNoParent,
    #[error("the root has no suffix link")]
    RootHasNoSuffixLink,
    #[error("node is not a leaf")]
    NotALeaf,
    #[error("edge offset {offset} out of range (edge length {len})")]
    EdgeOffset { offset: usize, len: usize },
    #[error("index format: {0}")]
    Format(String),
    #[error("checksum mismatch in section {0}")]
    Checksum(String),
    #[error("missing section {0}")]
    MissingSection(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

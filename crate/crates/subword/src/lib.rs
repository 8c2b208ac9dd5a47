//! Subword (factor) complexity of finite words, and the global maximal
//! complexity statistics K(N), R(N), M(N) over a q-letter alphabet.
//!
//! The same quantities are computed along several independent routes and
//! cross-checked against each other:
//!
//! * closed forms for K(N) and R(N) (`global`),
//! * brute-force enumeration of all q^N words (`global`),
//! * path counting in the de Bruijn graph B(q,k+1) (`graph`),
//! * level counting in de Bruijn trees (`tree`),
//! * closed formulas for M(N) at de Bruijn lengths N = q^k + k - 1
//!   (`formulas`).

pub mod formulas;
pub mod global;
pub mod graph;
pub mod martin;
pub mod table;
pub mod tree;
pub mod word;

pub use global::{bracket_k, brute_force_stats, global_k, global_r, Bracket, GlobalStats, Method};
pub use graph::DeBruijnGraph;
pub use tree::DeBruijnTree;
pub use word::{Alphabet, ComplexityProfile, Word};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("empty word has no profile")]
    EmptyWord,
    #[error("invalid character {0:?} in word")]
    BadChar(char),
    #[error("symbol {symbol} out of range for alphabet of size {q}")]
    SymbolOutOfRange { symbol: u8, q: u8 },
    #[error("alphabet size {0} outside 1..=36")]
    BadAlphabet(u64),
    #[error("N={n} <= q={q}: use small-N rule (K=N, R={{1}}, M=P(q,N))")]
    SmallN { q: u8, n: usize },
    #[error("budget exceeded: {needed} {unit} > budget {budget}")]
    BudgetExceeded {
        needed: u128,
        budget: u128,
        unit: &'static str,
    },
    #[error("count overflow")]
    Overflow,
    #[error("word revisits vertex; not a path")]
    NotAPath,
    #[error("word shorter than window length {k}")]
    WordTooShort { k: u32 },
    #[error("exhaustive search cap exceeded: {vertices} vertices > {cap}")]
    CapExceeded { vertices: usize, cap: usize },
    #[error("level {level} beyond built depth {depth}")]
    LevelNotBuilt { level: usize, depth: usize },
    #[error("no closed formula for M with q={q}, N={n}; use brute, graph or tree")]
    FormulaNotApplicable { q: u8, n: usize },
    #[error("formula out of range for k={0}")]
    FormulaOutOfRange(u32),
    #[error("methods disagree: {0}")]
    MethodDisagreement(String),
    #[error("no applicable method produced M for q={q}, N={n}")]
    NoMethodForM { q: u8, n: usize },
    #[error("corrupt checkpoint line: {0:?}")]
    CorruptCheckpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// q^e as u128, or None on overflow.
pub(crate) fn checked_pow(q: u8, e: u32) -> Option<u128> {
    (q as u128).checked_pow(e)
}

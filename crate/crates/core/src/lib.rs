//! String-to-string algorithms over character or token sequences.
//!
//! * [`alignment`]: global, local and linear-space alignment, longest
//!   common substring/subsequence, dynamic time warping
//! * [`distance`]: Levenshtein, Hamming, Damerau (OSA), Jaccard distance
//! * [`similarity`]: Jaccard, Jaro, Jaro-Winkler, LCS ratio, cosine and
//!   greedy embedding matching
//! * [`search`]: exact pattern search (naive, Rabin-Karp, Boyer-Moore, KMP)
//! * [`embedding`] and [`index`]: word-vector files, pooling, flat and IVF
//!   nearest-neighbour indexes
//! * [`render`]: text rendering of alignments, CSV/TSV matrix export
//!
//! Algorithms take plain slices, so `&[char]`, `&[u8]` and tokenized
//! [`Sequence`]s all work.

pub mod alignment;
pub mod distance;
pub mod embedding;
mod error;
pub mod index;
mod matrix;
pub mod probe;
pub mod render;
pub mod scoring;
pub mod search;
pub mod sequence;
pub mod similarity;

pub use alignment::{AlignmentResult, SpaceMode};
pub use error::{Error, Result};
pub use matrix::ScoreMatrix;
pub use scoring::{
    uniform_scoring, CostModel, GapPenalty, Scorer, SubstitutionMatrix, UniformScoring,
};
pub use sequence::{tokenize, Fingerprint, Sequence, Symbol, TokenizeMode};

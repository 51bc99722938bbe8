//! Pairwise alignment: global (Needleman-Wunsch and Hirschberg), local
//! (Smith-Waterman), longest common substring and subsequence, and dynamic
//! time warping.
//!
//! Tracebacks prefer a diagonal step, then a step up (a gap in the second
//! row), then a step left (a gap in the first row), so that every operation
//! returns the same optimal alignment on every run.

mod common;
mod dtw;
mod global;
mod local;

use serde::Serialize;

use crate::matrix::ScoreMatrix;

pub use common::{
    lcs_length, longest_common_subsequence, longest_common_substring, CommonSubsequence,
    CommonSubstrings,
};
pub use dtw::{dtw, dtw_symbols, dtw_values, WarpResult};
pub use global::{global_align, hirschberg_align};
pub use local::local_align;

/// Storage strategy for operations that offer a linear-space variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpaceMode {
    /// Keep the whole DP table.
    #[default]
    Full,
    /// Keep O(m) cells: two rows for edit distance, three for OSA, and
    /// divide-and-conquer for the warp path.
    Linear,
}

/// Two aligned rows of equal length, `None` marking a gap.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlignmentResult<T> {
    pub aligned_a: Vec<Option<T>>,
    pub aligned_b: Vec<Option<T>>,
    pub score: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<ScoreMatrix>,
}

impl<T> AlignmentResult<T> {
    pub fn len(&self) -> usize {
        self.aligned_a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.aligned_a.is_empty()
    }

    pub fn columns(&self) -> impl Iterator<Item = (Option<&T>, Option<&T>)> {
        self.aligned_a
            .iter()
            .zip(&self.aligned_b)
            .map(|(a, b)| (a.as_ref(), b.as_ref()))
    }
}

/// Appends columns while building an alignment back to front.
struct Columns<T> {
    a: Vec<Option<T>>,
    b: Vec<Option<T>>,
}

impl<T: Clone> Columns<T> {
    fn new() -> Self {
        Columns {
            a: Vec::new(),
            b: Vec::new(),
        }
    }

    fn push(&mut self, a: Option<&T>, b: Option<&T>) {
        debug_assert!(a.is_some() || b.is_some());
        self.a.push(a.cloned());
        self.b.push(b.cloned());
    }

    fn finish_reversed(mut self, score: f64, matrix: Option<ScoreMatrix>) -> AlignmentResult<T> {
        self.a.reverse();
        self.b.reverse();
        self.finish(score, matrix)
    }

    fn finish(self, score: f64, matrix: Option<ScoreMatrix>) -> AlignmentResult<T> {
        AlignmentResult {
            aligned_a: self.a,
            aligned_b: self.b,
            score,
            matrix,
        }
    }
}

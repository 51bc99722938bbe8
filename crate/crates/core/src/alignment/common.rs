use std::collections::HashSet;
use std::hash::Hash;

use serde::Serialize;

use crate::probe::Cells;

/// Longest common contiguous run, with every distinct run of that length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommonSubstrings<T> {
    pub length: usize,
    /// Distinct witnesses in the order their first occurrence ends in `a`.
    pub witnesses: Vec<Vec<T>>,
}

/// Longest common subsequence with one witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommonSubsequence<T> {
    pub length: usize,
    pub witness: Vec<T>,
}

/// Longest common substring by the suffix-length recurrence, two rows.
pub fn longest_common_substring<T>(a: &[T], b: &[T]) -> CommonSubstrings<T>
where
    T: Eq + Hash + Clone,
{
    let m = b.len();
    let mut prev = Cells::new(m + 1, 0usize);
    let mut cur = Cells::new(m + 1, 0usize);
    let mut length = 0;
    let mut ends: Vec<usize> = Vec::new();
    for i in 1..=a.len() {
        for j in 1..=m {
            cur[j] = if a[i - 1] == b[j - 1] {
                prev[j - 1] + 1
            } else {
                0
            };
            if cur[j] > length {
                length = cur[j];
                ends.clear();
            }
            if cur[j] == length && length > 0 {
                ends.push(i);
            }
        }
        std::mem::swap(&mut prev, &mut cur);
    }

    let mut seen = HashSet::new();
    let witnesses = ends
        .into_iter()
        .map(|end| &a[end - length..end])
        .filter(|w| seen.insert(*w))
        .map(<[T]>::to_vec)
        .collect();
    CommonSubstrings { length, witnesses }
}

/// Longest common subsequence by the full table, traced back with the
/// crate-wide tie-break (diagonal, then up, then left).
pub fn longest_common_subsequence<T>(a: &[T], b: &[T]) -> CommonSubsequence<T>
where
    T: PartialEq + Clone,
{
    let (n, m) = (a.len(), b.len());
    let cols = m + 1;
    let mut l = Cells::new((n + 1) * cols, 0usize);
    for i in 1..=n {
        for j in 1..=m {
            l[i * cols + j] = if a[i - 1] == b[j - 1] {
                l[(i - 1) * cols + j - 1] + 1
            } else {
                l[(i - 1) * cols + j].max(l[i * cols + j - 1])
            };
        }
    }
    let mut witness = Vec::with_capacity(l[n * cols + m]);
    let (mut i, mut j) = (n, m);
    while i > 0 && j > 0 {
        if a[i - 1] == b[j - 1] {
            witness.push(a[i - 1].clone());
            i -= 1;
            j -= 1;
        } else if l[(i - 1) * cols + j] >= l[i * cols + j - 1] {
            i -= 1;
        } else {
            j -= 1;
        }
    }
    witness.reverse();
    CommonSubsequence {
        length: witness.len(),
        witness,
    }
}

/// LCS length only, in two rows.
pub fn lcs_length<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let m = b.len();
    let mut prev = Cells::new(m + 1, 0usize);
    let mut cur = Cells::new(m + 1, 0usize);
    for x in a {
        for j in 1..=m {
            cur[j] = if *x == b[j - 1] {
                prev[j - 1] + 1
            } else {
                prev[j].max(cur[j - 1])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m]
}

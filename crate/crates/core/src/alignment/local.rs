use super::{AlignmentResult, Columns};
use crate::matrix::ScoreMatrix;
use crate::probe::Cells;
use crate::scoring::{GapPenalty, Scorer};

/// Smith-Waterman local alignment with a linear gap penalty.
///
/// Reports a single alignment ending at the highest-scoring cell; on ties
/// the first such cell in row-major order wins. The traceback stops at the
/// first zero cell, so an input pair with no positive-scoring cell yields
/// an empty alignment with score 0.
pub fn local_align<T, S>(
    a: &[T],
    b: &[T],
    scorer: &S,
    gap: GapPenalty,
    keep_matrix: bool,
) -> AlignmentResult<T>
where
    T: Clone,
    S: Scorer<T> + ?Sized,
{
    let (n, m) = (a.len(), b.len());
    let g = gap.per_gap();
    let cols = m + 1;
    let mut h = Cells::new((n + 1) * cols, 0.0f64);
    let (mut best, mut at) = (0.0f64, (0, 0));
    for i in 1..=n {
        for j in 1..=m {
            let diag = h[(i - 1) * cols + j - 1] + scorer.score(&a[i - 1], &b[j - 1]);
            let up = h[(i - 1) * cols + j] + g;
            let left = h[i * cols + j - 1] + g;
            let v = diag.max(up).max(left).max(0.0);
            h[i * cols + j] = v;
            if v > best {
                best = v;
                at = (i, j);
            }
        }
    }

    let mut out = Columns::new();
    let (mut i, mut j) = at;
    while h[i * cols + j] > 0.0 {
        let here = h[i * cols + j];
        if here == h[(i - 1) * cols + j - 1] + scorer.score(&a[i - 1], &b[j - 1]) {
            out.push(Some(&a[i - 1]), Some(&b[j - 1]));
            i -= 1;
            j -= 1;
        } else if here == h[(i - 1) * cols + j] + g {
            out.push(Some(&a[i - 1]), None);
            i -= 1;
        } else {
            out.push(None, Some(&b[j - 1]));
            j -= 1;
        }
    }
    let matrix = keep_matrix.then(|| ScoreMatrix::new(n + 1, cols, h.into_vec()));
    out.finish_reversed(best, matrix)
}

use super::{AlignmentResult, Columns};
use crate::matrix::ScoreMatrix;
use crate::probe::Cells;
use crate::scoring::{GapPenalty, Scorer};

#[inline]
fn best(diag: f64, up: f64, left: f64) -> f64 {
    diag.max(up).max(left)
}

/// Needleman-Wunsch global alignment with a linear gap penalty.
///
/// The full `(n+1) x (m+1)` table is always built for the traceback;
/// `keep_matrix` decides whether it is returned.
pub fn global_align<T, S>(
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
    for j in 1..=m {
        h[j] = j as f64 * g;
    }
    for i in 1..=n {
        h[i * cols] = i as f64 * g;
        for j in 1..=m {
            let diag = h[(i - 1) * cols + j - 1] + scorer.score(&a[i - 1], &b[j - 1]);
            let up = h[(i - 1) * cols + j] + g;
            let left = h[i * cols + j - 1] + g;
            h[i * cols + j] = best(diag, up, left);
        }
    }

    let mut out = Columns::new();
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        let here = h[i * cols + j];
        if i > 0 && j > 0 && here == h[(i - 1) * cols + j - 1] + scorer.score(&a[i - 1], &b[j - 1])
        {
            out.push(Some(&a[i - 1]), Some(&b[j - 1]));
            i -= 1;
            j -= 1;
        } else if i > 0 && (j == 0 || here == h[(i - 1) * cols + j] + g) {
            out.push(Some(&a[i - 1]), None);
            i -= 1;
        } else {
            out.push(None, Some(&b[j - 1]));
            j -= 1;
        }
    }
    let score = h[n * cols + m];
    let matrix = keep_matrix.then(|| ScoreMatrix::new(n + 1, cols, h.into_vec()));
    out.finish_reversed(score, matrix)
}

/// Last row of the global-alignment table of `a` against every prefix of
/// `b`, held in a single rolling row. With `reversed`, both inputs are read
/// back to front, so entry `j` is the score of `a` against the last `j`
/// symbols of `b`.
fn last_row<T, S>(a: &[T], b: &[T], scorer: &S, g: f64, reversed: bool) -> Cells<f64>
where
    S: Scorer<T> + ?Sized,
{
    let (n, m) = (a.len(), b.len());
    let sa = |i: usize| if reversed { &a[n - i] } else { &a[i - 1] };
    let sb = |j: usize| if reversed { &b[m - j] } else { &b[j - 1] };
    let mut row = Cells::new(m + 1, 0.0f64);
    for j in 1..=m {
        row[j] = j as f64 * g;
    }
    for i in 1..=n {
        let mut diag_prev = row[0];
        row[0] = i as f64 * g;
        for j in 1..=m {
            let diag = diag_prev + scorer.score(sa(i), sb(j));
            let up = row[j] + g;
            let left = row[j - 1] + g;
            diag_prev = row[j];
            row[j] = best(diag, up, left);
        }
    }
    row
}

/// Hirschberg's divide-and-conquer global alignment in O(m) score cells.
///
/// The score is bit-identical to [`global_align`]'s; the alignment is an
/// optimal one but may differ from its traceback.
pub fn hirschberg_align<T, S>(a: &[T], b: &[T], scorer: &S, gap: GapPenalty) -> AlignmentResult<T>
where
    T: Clone,
    S: Scorer<T> + ?Sized,
{
    let g = gap.per_gap();
    let score = last_row(a, b, scorer, g, false)[b.len()];
    let mut out = Columns::new();
    split(a, b, scorer, gap, &mut out);
    out.finish(score, None)
}

fn split<T, S>(a: &[T], b: &[T], scorer: &S, gap: GapPenalty, out: &mut Columns<T>)
where
    T: Clone,
    S: Scorer<T> + ?Sized,
{
    let (n, m) = (a.len(), b.len());
    if n == 0 {
        b.iter().for_each(|y| out.push(None, Some(y)));
        return;
    }
    if m == 0 {
        a.iter().for_each(|x| out.push(Some(x), None));
        return;
    }
    if n == 1 {
        let base = global_align(a, b, scorer, gap, false);
        for (x, y) in base.columns() {
            out.push(x, y);
        }
        return;
    }

    let mid = n / 2;
    let k = {
        let g = gap.per_gap();
        let fwd = last_row(&a[..mid], b, scorer, g, false);
        let bwd = last_row(&a[mid..], b, scorer, g, true);
        let mut k = 0;
        let mut top = f64::NEG_INFINITY;
        for j in 0..=m {
            let v = fwd[j] + bwd[m - j];
            if v > top {
                top = v;
                k = j;
            }
        }
        k
    };
    split(&a[..mid], &b[..k], scorer, gap, out);
    split(&a[mid..], &b[k..], scorer, gap, out);
}

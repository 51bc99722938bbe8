use serde::Serialize;

use super::SpaceMode;
use crate::error::{Error, Result};
use crate::probe::Cells;

/// An optimal warp path and its accumulated local cost.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WarpResult {
    pub path: Vec<(usize, usize)>,
    pub total_cost: f64,
}

#[inline]
fn cheapest(diag: f64, up: f64, left: f64) -> f64 {
    diag.min(up).min(left)
}

fn checked(c: f64, i: usize, j: usize) -> Result<f64> {
    if c.is_finite() && c >= 0.0 {
        Ok(c)
    } else {
        Err(Error::invalid(format!(
            "local cost at ({i}, {j}) must be finite and nonnegative, got {c}"
        )))
    }
}

/// DTW over numeric series with cost `|a - b|`.
pub fn dtw_values(a: &[f64], b: &[f64], mode: SpaceMode) -> Result<WarpResult> {
    dtw(a, b, |x, y| (x - y).abs(), mode)
}

/// DTW over symbols with cost 0 for equal symbols and 1 otherwise.
pub fn dtw_symbols<T: PartialEq>(a: &[T], b: &[T], mode: SpaceMode) -> Result<WarpResult> {
    dtw(a, b, |x, y| if x == y { 0.0 } else { 1.0 }, mode)
}

/// Dynamic time warping with a caller-supplied local cost.
///
/// Both inputs must be nonempty and every local cost finite and
/// nonnegative. [`SpaceMode::Linear`] finds the path by divide and conquer
/// over the middle row and never holds more than a few rows of cells; its
/// `total_cost` is bit-identical to the full table's.
pub fn dtw<T, F>(a: &[T], b: &[T], cost: F, mode: SpaceMode) -> Result<WarpResult>
where
    F: Fn(&T, &T) -> f64,
{
    if a.is_empty() || b.is_empty() {
        return Err(Error::invalid(format!(
            "dtw needs nonempty inputs, got lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    match mode {
        SpaceMode::Full => full(a, b, &cost),
        SpaceMode::Linear => {
            let total_cost = last_row(a, b, &cost, false)?[b.len() - 1];
            let mut path = Vec::with_capacity(a.len() + b.len());
            halve(a, b, &cost, (0, 0), &mut path)?;
            Ok(WarpResult { path, total_cost })
        }
    }
}

fn full<T, F>(a: &[T], b: &[T], cost: &F) -> Result<WarpResult>
where
    F: Fn(&T, &T) -> f64,
{
    let (n, m) = (a.len(), b.len());
    let mut d = Cells::new(n * m, 0.0f64);
    for i in 0..n {
        for j in 0..m {
            let c = checked(cost(&a[i], &b[j]), i, j)?;
            d[i * m + j] = match (i, j) {
                (0, 0) => c,
                (0, _) => d[j - 1] + c,
                (_, 0) => d[(i - 1) * m] + c,
                _ => cheapest(d[(i - 1) * m + j - 1], d[(i - 1) * m + j], d[i * m + j - 1]) + c,
            };
        }
    }

    let mut path = vec![(n - 1, m - 1)];
    let (mut i, mut j) = (n - 1, m - 1);
    while (i, j) != (0, 0) {
        if i == 0 {
            j -= 1;
        } else if j == 0 {
            i -= 1;
        } else {
            let diag = d[(i - 1) * m + j - 1];
            let up = d[(i - 1) * m + j];
            let left = d[i * m + j - 1];
            if diag <= up && diag <= left {
                i -= 1;
                j -= 1;
            } else if up <= left {
                i -= 1;
            } else {
                j -= 1;
            }
        }
        path.push((i, j));
    }
    path.reverse();
    Ok(WarpResult {
        path,
        total_cost: d[n * m - 1],
    })
}

/// Final row of the accumulated-cost table in one rolling row. With
/// `reversed`, both series are read back to front, so entry `j` is the
/// cheapest path from the first row at column `m - 1 - j` to the end.
fn last_row<T, F>(a: &[T], b: &[T], cost: &F, reversed: bool) -> Result<Cells<f64>>
where
    F: Fn(&T, &T) -> f64,
{
    let (n, m) = (a.len(), b.len());
    let ia = |i: usize| if reversed { n - 1 - i } else { i };
    let ib = |j: usize| if reversed { m - 1 - j } else { j };
    let local = |i: usize, j: usize| checked(cost(&a[ia(i)], &b[ib(j)]), ia(i), ib(j));
    let mut row = Cells::new(m, 0.0f64);
    for i in 0..n {
        if i == 0 {
            row[0] = local(0, 0)?;
            for j in 1..m {
                row[j] = row[j - 1] + local(0, j)?;
            }
            continue;
        }
        let mut diag_prev = row[0];
        row[0] += local(i, 0)?;
        for j in 1..m {
            let up = row[j];
            let v = cheapest(diag_prev, up, row[j - 1]) + local(i, j)?;
            diag_prev = up;
            row[j] = v;
        }
    }
    Ok(row)
}

fn halve<T, F>(
    a: &[T],
    b: &[T],
    cost: &F,
    origin: (usize, usize),
    path: &mut Vec<(usize, usize)>,
) -> Result<()>
where
    F: Fn(&T, &T) -> f64,
{
    let (n, m) = (a.len(), b.len());
    let (oi, oj) = origin;
    if n == 1 {
        path.extend((0..m).map(|j| (oi, oj + j)));
        return Ok(());
    }
    if m == 1 {
        path.extend((0..n).map(|i| (oi + i, oj)));
        return Ok(());
    }

    // The path leaves row `mid` at some (mid, j) and enters row mid + 1 at
    // (mid + 1, j) or (mid + 1, j + 1).
    let mid = (n - 1) / 2;
    let (j, j_next) = {
        let top = last_row(&a[..=mid], b, cost, false)?;
        let bottom = last_row(&a[mid + 1..], b, cost, true)?;
        let from = |j: usize| bottom[m - 1 - j];
        let mut pick = (0, 0);
        let mut low = f64::INFINITY;
        for j in 0..m {
            if j + 1 < m && top[j] + from(j + 1) < low {
                low = top[j] + from(j + 1);
                pick = (j, j + 1);
            }
            if top[j] + from(j) < low {
                low = top[j] + from(j);
                pick = (j, j);
            }
        }
        pick
    };
    halve(&a[..=mid], &b[..=j], cost, origin, path)?;
    halve(
        &a[mid + 1..],
        &b[j_next..],
        cost,
        (oi + mid + 1, oj + j_next),
        path,
    )
}

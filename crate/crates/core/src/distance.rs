//! Edit distances and set distance.

use std::collections::HashSet;
use std::hash::Hash;

use serde::Serialize;

use crate::alignment::SpaceMode;
use crate::error::{Error, Result};
use crate::matrix::ScoreMatrix;
use crate::probe::Cells;
use crate::scoring::CostModel;
use crate::similarity::jaccard_similarity;

/// A distance value, with the DP table when it was computed in full.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceOutput {
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<ScoreMatrix>,
}

impl DistanceOutput {
    fn scalar(value: f64) -> Self {
        DistanceOutput {
            value,
            matrix: None,
        }
    }
}

/// Weighted Levenshtein (Wagner-Fischer) distance from `a` to `b`.
///
/// Deleting from `a` costs `costs.delete()`, inserting from `b` costs
/// `costs.insert()`. [`SpaceMode::Linear`] keeps two rows of `m + 1` cells
/// and returns no matrix.
pub fn levenshtein<T: PartialEq>(
    a: &[T],
    b: &[T],
    costs: &CostModel,
    mode: SpaceMode,
) -> DistanceOutput {
    match mode {
        SpaceMode::Full => levenshtein_full(a, b, costs),
        SpaceMode::Linear => DistanceOutput::scalar(levenshtein_two_row(a, b, costs)),
    }
}

#[inline]
fn step<T: PartialEq>(x: &T, y: &T, diag: f64, up: f64, left: f64, c: &CostModel) -> f64 {
    let sub = diag + if x == y { c.matched() } else { c.substitute() };
    (up + c.delete()).min(left + c.insert()).min(sub)
}

fn levenshtein_full<T: PartialEq>(a: &[T], b: &[T], c: &CostModel) -> DistanceOutput {
    let (n, m) = (a.len(), b.len());
    let cols = m + 1;
    let mut d = Cells::new((n + 1) * cols, 0.0f64);
    for j in 1..=m {
        d[j] = d[j - 1] + c.insert();
    }
    for i in 1..=n {
        d[i * cols] = d[(i - 1) * cols] + c.delete();
        for j in 1..=m {
            d[i * cols + j] = step(
                &a[i - 1],
                &b[j - 1],
                d[(i - 1) * cols + j - 1],
                d[(i - 1) * cols + j],
                d[i * cols + j - 1],
                c,
            );
        }
    }
    let value = d[n * cols + m];
    DistanceOutput {
        value,
        matrix: Some(ScoreMatrix::new(n + 1, cols, d.into_vec())),
    }
}

fn levenshtein_two_row<T: PartialEq>(a: &[T], b: &[T], c: &CostModel) -> f64 {
    let m = b.len();
    let mut prev = Cells::new(m + 1, 0.0f64);
    let mut cur = Cells::new(m + 1, 0.0f64);
    for j in 1..=m {
        prev[j] = prev[j - 1] + c.insert();
    }
    for x in a {
        cur[0] = prev[0] + c.delete();
        for j in 1..=m {
            cur[j] = step(x, &b[j - 1], prev[j - 1], prev[j], cur[j - 1], c);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m]
}

/// Number of positions at which two equal-length sequences differ.
pub fn hamming<T: PartialEq>(a: &[T], b: &[T]) -> Result<DistanceOutput> {
    if a.len() != b.len() {
        return Err(Error::invalid(format!(
            "hamming distance needs equal lengths, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let differing = a.iter().zip(b).filter(|(x, y)| x != y).count();
    Ok(DistanceOutput::scalar(differing as f64))
}

/// Damerau-Levenshtein distance in its optimal-string-alignment form:
/// Levenshtein plus swaps of adjacent symbols, where no substring is edited
/// more than once. [`SpaceMode::Linear`] keeps three rows.
pub fn damerau_levenshtein<T: PartialEq>(
    a: &[T],
    b: &[T],
    costs: &CostModel,
    mode: SpaceMode,
) -> DistanceOutput {
    let (n, m) = (a.len(), b.len());
    let cols = m + 1;
    let c = costs;
    let transposable =
        |i: usize, j: usize| i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1];

    match mode {
        SpaceMode::Full => {
            let mut d = Cells::new((n + 1) * cols, 0.0f64);
            for j in 1..=m {
                d[j] = d[j - 1] + c.insert();
            }
            for i in 1..=n {
                d[i * cols] = d[(i - 1) * cols] + c.delete();
                for j in 1..=m {
                    let mut v = step(
                        &a[i - 1],
                        &b[j - 1],
                        d[(i - 1) * cols + j - 1],
                        d[(i - 1) * cols + j],
                        d[i * cols + j - 1],
                        c,
                    );
                    if transposable(i, j) {
                        v = v.min(d[(i - 2) * cols + j - 2] + c.transpose());
                    }
                    d[i * cols + j] = v;
                }
            }
            let value = d[n * cols + m];
            DistanceOutput {
                value,
                matrix: Some(ScoreMatrix::new(n + 1, cols, d.into_vec())),
            }
        }
        SpaceMode::Linear => {
            let mut older = Cells::new(cols, 0.0f64);
            let mut prev = Cells::new(cols, 0.0f64);
            let mut cur = Cells::new(cols, 0.0f64);
            for j in 1..=m {
                prev[j] = prev[j - 1] + c.insert();
            }
            for i in 1..=n {
                cur[0] = prev[0] + c.delete();
                for j in 1..=m {
                    let mut v = step(&a[i - 1], &b[j - 1], prev[j - 1], prev[j], cur[j - 1], c);
                    if transposable(i, j) {
                        v = v.min(older[j - 2] + c.transpose());
                    }
                    cur[j] = v;
                }
                // rotate: older <- prev <- cur
                std::mem::swap(&mut older, &mut prev);
                std::mem::swap(&mut prev, &mut cur);
            }
            DistanceOutput::scalar(prev[m])
        }
    }
}

/// `1 - jaccard_similarity(a, b)`; two empty inputs are at distance 0.
pub fn jaccard_distance<T: Eq + Hash>(a: &[T], b: &[T]) -> DistanceOutput {
    DistanceOutput::scalar(1.0 - jaccard_similarity(a, b))
}

/// Distinct-symbol sets, shared with the similarity module.
pub(crate) fn symbol_sets<'a, T: Eq + Hash>(
    a: &'a [T],
    b: &'a [T],
) -> (HashSet<&'a T>, HashSet<&'a T>) {
    (a.iter().collect(), b.iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probe;

    fn chars(s: &str) -> Vec<char> {
        s.chars().collect()
    }

    fn both<F: Fn(SpaceMode) -> DistanceOutput>(f: F) -> f64 {
        let full = f(SpaceMode::Full);
        let lin = f(SpaceMode::Linear);
        assert_eq!(full.value, lin.value);
        assert!(full.matrix.is_some() && lin.matrix.is_none());
        full.value
    }

    #[test]
    fn levenshtein_examples() {
        let unit = CostModel::default();
        assert_eq!(
            both(|m| levenshtein(&chars("kitten"), &chars("sitting"), &unit, m)),
            3.0
        );
        assert_eq!(
            both(|m| levenshtein(&chars("flaw"), &chars("flaw"), &unit, m)),
            0.0
        );
        let costly_sub = CostModel::new(1.0, 1.0, 5.0, 1.0, 0.0).unwrap();
        assert_eq!(
            both(|m| levenshtein(&chars("ab"), &chars("ba"), &costly_sub, m)),
            2.0
        );
        assert_eq!(
            both(|m| levenshtein(&chars(""), &chars("abc"), &unit, m)),
            3.0
        );
    }

    #[test]
    fn asymmetric_costs() {
        let c = CostModel::new(2.0, 3.0, 10.0, 1.0, 0.0).unwrap();
        assert_eq!(
            levenshtein(&chars("abc"), &chars("ab"), &c, SpaceMode::Full).value,
            3.0
        );
        assert_eq!(
            levenshtein(&chars("ab"), &chars("abc"), &c, SpaceMode::Full).value,
            2.0
        );
    }

    #[test]
    fn full_matrix_boundary() {
        let out = levenshtein(
            &chars("ab"),
            &chars("abc"),
            &CostModel::default(),
            SpaceMode::Full,
        );
        let m = out.matrix.unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 4));
        assert_eq!(m.row(0), &[0.0, 1.0, 2.0, 3.0]);
        assert_eq!(m.get(2, 0), 2.0);
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(
            hamming(&chars("karolin"), &chars("kathrin")).unwrap().value,
            3.0
        );
        assert_eq!(hamming(&chars("abc"), &chars("abc")).unwrap().value, 0.0);
        let err = hamming(&chars("a"), &chars("ab")).unwrap_err().to_string();
        assert!(err.contains('1') && err.contains('2'), "{err}");
    }

    #[test]
    fn osa_examples() {
        let unit = CostModel::default();
        assert_eq!(
            both(|m| damerau_levenshtein(&chars("ab"), &chars("ba"), &unit, m)),
            1.0
        );
        assert_eq!(
            both(|m| damerau_levenshtein(&chars("ca"), &chars("abc"), &unit, m)),
            3.0
        );
        assert_eq!(
            both(|m| damerau_levenshtein(&chars("abcd"), &chars("abcd"), &unit, m)),
            0.0
        );
        let pricey = CostModel::new(1.0, 1.0, 1.0, 5.0, 0.0).unwrap();
        assert_eq!(
            both(|m| damerau_levenshtein(&chars("ab"), &chars("ba"), &pricey, m)),
            2.0
        );
    }

    #[test]
    fn jaccard_examples() {
        assert_eq!(jaccard_distance(&chars("abc"), &chars("bcd")).value, 0.5);
        assert_eq!(jaccard_distance(&chars("abc"), &chars("cab")).value, 0.0);
        assert_eq!(jaccard_distance(&chars("ab"), &chars("cd")).value, 1.0);
        assert_eq!(jaccard_distance::<char>(&[], &[]).value, 0.0);
    }

    #[test]
    fn compact_modes_hold_few_rows() {
        let a: Vec<u8> = (0..3000u32).map(|i| (i % 5) as u8).collect();
        let b: Vec<u8> = (0..300u32).map(|i| (i % 3) as u8).collect();
        let c = CostModel::default();
        let (_, peak) = probe::measure(|| levenshtein(&a, &b, &c, SpaceMode::Linear));
        assert_eq!(peak, 2 * (b.len() + 1));
        let (_, peak) = probe::measure(|| damerau_levenshtein(&a, &b, &c, SpaceMode::Linear));
        assert_eq!(peak, 3 * (b.len() + 1));
    }
}

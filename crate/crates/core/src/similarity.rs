//! Lexical and vector similarity measures.

use std::hash::Hash;

use serde::Serialize;

use crate::alignment::lcs_length;
use crate::distance::symbol_sets;
use crate::error::{Error, Result};

/// Size of the intersection of the two symbol sets over the size of their
/// union. Two empty inputs are identical and score 1.
pub fn jaccard_similarity<T: Eq + Hash>(a: &[T], b: &[T]) -> f64 {
    let (sa, sb) = symbol_sets(a, b);
    let union = sa.union(&sb).count();
    if union == 0 {
        return 1.0;
    }
    sa.intersection(&sb).count() as f64 / union as f64
}

/// Jaro similarity.
///
/// Symbols match when equal and at most `max(n, m) / 2 - 1` positions
/// apart; each symbol of `b` matches at most once, scanning `a` left to
/// right. Half the number of matched pairs that appear in a different order
/// counts as the transpositions.
pub fn jaro<T: PartialEq>(a: &[T], b: &[T]) -> f64 {
    let (n, m) = (a.len(), b.len());
    if n == 0 && m == 0 {
        return 1.0;
    }
    if n == 0 || m == 0 {
        return 0.0;
    }
    let window = (n.max(m) / 2).saturating_sub(1);
    let mut a_hit = vec![false; n];
    let mut b_hit = vec![false; m];
    let mut matches = 0usize;
    for (i, x) in a.iter().enumerate() {
        let lo = i.saturating_sub(window);
        let hi = (i + window + 1).min(m);
        for j in lo..hi {
            if !b_hit[j] && *x == b[j] {
                a_hit[i] = true;
                b_hit[j] = true;
                matches += 1;
                break;
            }
        }
    }
    if matches == 0 {
        return 0.0;
    }
    let in_a = a.iter().zip(&a_hit).filter(|(_, &h)| h).map(|(x, _)| x);
    let in_b = b.iter().zip(&b_hit).filter(|(_, &h)| h).map(|(y, _)| y);
    let out_of_order = in_a.zip(in_b).filter(|(x, y)| x != y).count();
    let c = matches as f64;
    let t = out_of_order as f64 / 2.0;
    (c / n as f64 + c / m as f64 + (c - t) / c) / 3.0
}

pub const WINKLER_SCALING: f64 = 0.1;
pub const WINKLER_MAX_PREFIX: usize = 4;

/// Jaro-Winkler: Jaro plus a bonus of `prefix_scale` per symbol of common
/// prefix, up to `max_prefix` symbols. `prefix_scale` must lie in
/// `[0, 0.25]` and `prefix_scale * max_prefix` may not exceed 1.
pub fn jaro_winkler<T: PartialEq>(
    a: &[T],
    b: &[T],
    prefix_scale: f64,
    max_prefix: usize,
) -> Result<f64> {
    if !(0.0..=0.25).contains(&prefix_scale) {
        return Err(Error::invalid(format!(
            "prefix scale must lie in [0, 0.25], got {prefix_scale}"
        )));
    }
    if prefix_scale * max_prefix as f64 > 1.0 {
        return Err(Error::invalid(format!(
            "prefix scale {prefix_scale} with a prefix cap of {max_prefix} can exceed 1"
        )));
    }
    let j = jaro(a, b);
    let prefix = a
        .iter()
        .zip(b)
        .take(max_prefix)
        .take_while(|(x, y)| x == y)
        .count();
    Ok(j + prefix as f64 * prefix_scale * (1.0 - j))
}

/// LCS length over the longer input's length; 1 when both are empty.
pub fn lcs_similarity<T: PartialEq>(a: &[T], b: &[T]) -> f64 {
    let longest = a.len().max(b.len());
    if longest == 0 {
        return 1.0;
    }
    lcs_length(a, b) as f64 / longest as f64
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(x, y)| x * y).sum()
}

/// Cosine of the angle between `u` and `v`, clamped to `[-1, 1]`.
pub fn cosine_similarity(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() || u.is_empty() {
        return Err(Error::invalid(format!(
            "cosine needs two vectors of the same positive dimension, got {} and {}",
            u.len(),
            v.len()
        )));
    }
    let (nu, nv) = (norm(u), norm(v));
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::invalid("cosine is undefined for a zero vector"));
    }
    Ok((dot(u, v) / (nu * nv)).clamp(-1.0, 1.0))
}

/// Precision, recall and F1 of a greedy token matching.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GreedyMatchScore {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// BERTScore-style greedy matching over two token-embedding matrices.
///
/// Recall averages, over the rows of `reference`, the best cosine against
/// any row of `candidate`; precision does the same the other way round.
/// No IDF weighting or baseline rescaling is applied, so with embeddings
/// that have negative cosines the scores can drop below 0.
pub fn greedy_match_score<R: AsRef<[f64]>>(
    reference: &[R],
    candidate: &[R],
) -> Result<GreedyMatchScore> {
    if reference.is_empty() || candidate.is_empty() {
        return Err(Error::invalid(
            "greedy matching needs at least one token on each side",
        ));
    }
    let dim = reference[0].as_ref().len();
    let normalize = |rows: &[R], side: &str| -> Result<Vec<Vec<f64>>> {
        rows.iter()
            .enumerate()
            .map(|(i, r)| {
                let r = r.as_ref();
                if r.len() != dim || dim == 0 {
                    return Err(Error::invalid(format!(
                        "{side} row {i} has dimension {}, expected {dim}",
                        r.len()
                    )));
                }
                let n = norm(r);
                if n == 0.0 {
                    return Err(Error::invalid(format!("{side} row {i} is a zero vector")));
                }
                Ok(r.iter().map(|x| x / n).collect())
            })
            .collect()
    };
    let a = normalize(reference, "reference")?;
    let b = normalize(candidate, "candidate")?;

    let mut best_for_a = vec![f64::NEG_INFINITY; a.len()];
    let mut best_for_b = vec![f64::NEG_INFINITY; b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let c = dot(x, y).clamp(-1.0, 1.0);
            best_for_a[i] = best_for_a[i].max(c);
            best_for_b[j] = best_for_b[j].max(c);
        }
    }
    let recall = best_for_a.iter().sum::<f64>() / a.len() as f64;
    let precision = best_for_b.iter().sum::<f64>() / b.len() as f64;
    let f1 = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    Ok(GreedyMatchScore {
        precision,
        recall,
        f1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn chars(s: &str) -> Vec<char> {
        s.chars().collect()
    }

    #[test]
    fn jaccard_examples() {
        assert_eq!(jaccard_similarity(&chars("abc"), &chars("bcd")), 0.5);
        assert_eq!(jaccard_similarity(&chars("abc"), &chars("abc")), 1.0);
        assert_eq!(jaccard_similarity(&chars("ab"), &chars("cd")), 0.0);
    }

    #[test]
    fn jaro_examples() {
        assert!((jaro(&chars("MARTHA"), &chars("MARHTA")) - 0.9444).abs() < 1e-4);
        assert_eq!(jaro(&chars("abc"), &chars("abc")), 1.0);
        assert_eq!(jaro(&chars("abc"), &chars("xyz")), 0.0);
        assert_eq!(jaro(&chars(""), &chars("")), 1.0);
        assert_eq!(jaro(&chars("a"), &chars("")), 0.0);
    }

    #[test]
    fn jaro_winkler_examples() {
        let (a, b) = (chars("MARTHA"), chars("MARHTA"));
        let jw = jaro_winkler(&a, &b, WINKLER_SCALING, WINKLER_MAX_PREFIX).unwrap();
        assert!((jw - 0.9611).abs() < 1e-4);
        assert_eq!(jaro_winkler(&a, &b, 0.0, 4).unwrap(), jaro(&a, &b));
        assert_eq!(jaro_winkler(&a, &a, 0.1, 4).unwrap(), 1.0);
        assert!(jaro_winkler(&a, &b, 0.3, 4).is_err());
        assert!(jaro_winkler(&a, &b, -0.1, 4).is_err());
        assert!(jaro_winkler(&a, &b, 0.25, 5).is_err());
    }

    #[test]
    fn lcs_examples() {
        assert!((lcs_similarity(&chars("ABCBDAB"), &chars("BDCABA")) - 4.0 / 7.0).abs() < 1e-12);
        assert_eq!(lcs_similarity(&chars("abc"), &chars("abc")), 1.0);
        assert_eq!(lcs_similarity(&chars("abc"), &chars("")), 0.0);
        assert_eq!(lcs_similarity(&chars(""), &chars("")), 1.0);
    }

    #[test]
    fn cosine_examples() {
        assert_eq!(cosine_similarity(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
        assert!((cosine_similarity(&[1.0, 1.0], &[2.0, 2.0]).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(cosine_similarity(&[1.0, 0.0], &[-1.0, 0.0]).unwrap(), -1.0);
        assert!(cosine_similarity(&[1.0], &[1.0, 0.0]).is_err());
        assert!(cosine_similarity(&[0.0, 0.0], &[1.0, 0.0]).is_err());
        assert!(cosine_similarity(&[], &[]).is_err());
    }

    #[test]
    fn greedy_examples() {
        let a = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let s = greedy_match_score(&a, &a).unwrap();
        assert_eq!((s.precision, s.recall, s.f1), (1.0, 1.0, 1.0));

        let s = greedy_match_score(&[vec![1.0, 0.0]], &[vec![0.0, 1.0]]).unwrap();
        assert_eq!((s.precision, s.recall, s.f1), (0.0, 0.0, 0.0));

        let s = greedy_match_score(&a, &[vec![1.0, 0.0]]).unwrap();
        assert_eq!(s.recall, 0.5);
        assert_eq!(s.precision, 1.0);
        assert!((s.f1 - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn greedy_errors() {
        let empty: Vec<Vec<f64>> = vec![];
        assert!(greedy_match_score(&empty, &[vec![1.0]]).is_err());
        assert!(greedy_match_score(&[vec![1.0, 0.0]], &[vec![1.0]]).is_err());
        assert!(greedy_match_score(&[vec![1.0, 0.0]], &[vec![0.0, 0.0]]).is_err());
    }

    fn word() -> impl Strategy<Value = Vec<char>> {
        proptest::collection::vec(proptest::sample::select(vec!['a', 'b', 'c', 'd']), 0..12)
    }

    proptest! {
        #[test]
        fn lexical_measures_symmetric(a in word(), b in word()) {
            prop_assert_eq!(jaccard_similarity(&a, &b), jaccard_similarity(&b, &a));
            prop_assert!((jaro(&a, &b) - jaro(&b, &a)).abs() < 1e-12);
            prop_assert!((jaro_winkler(&a, &b, 0.1, 4).unwrap() - jaro_winkler(&b, &a, 0.1, 4).unwrap()).abs() < 1e-12);
            prop_assert_eq!(lcs_similarity(&a, &b), lcs_similarity(&b, &a));
        }

        #[test]
        fn lexical_measures_bounded(a in word(), b in word()) {
            for v in [jaccard_similarity(&a, &b), jaro(&a, &b), jaro_winkler(&a, &b, 0.25, 4).unwrap(), lcs_similarity(&a, &b)] {
                prop_assert!((0.0..=1.0).contains(&v), "{v}");
            }
        }

        #[test]
        fn winkler_bonus_nonnegative(a in word(), b in word(), p in 0.0f64..=0.25) {
            prop_assert!(jaro_winkler(&a, &b, p, 4).unwrap() >= jaro(&a, &b));
        }

        #[test]
        fn cosine_scale_invariant(
            u in proptest::collection::vec(-10.0f64..10.0, 1..8),
            s in 0.01f64..100.0,
            t in 0.01f64..100.0,
        ) {
            prop_assume!(u.iter().any(|x| x.abs() > 1e-3));
            let v: Vec<f64> = u.iter().rev().copied().collect();
            let su: Vec<f64> = u.iter().map(|x| x * s).collect();
            let tv: Vec<f64> = v.iter().map(|x| x * t).collect();
            prop_assert!((cosine_similarity(&u, &su).unwrap() - 1.0).abs() < 1e-12);
            prop_assert!((cosine_similarity(&su, &tv).unwrap() - cosine_similarity(&u, &v).unwrap()).abs() < 1e-12);
        }

        #[test]
        fn greedy_f1_permutation_invariant(
            rows in proptest::collection::vec(proptest::collection::vec(-1.0f64..1.0, 3), 2..9),
            shift in 1usize..5,
        ) {
            let (a, b) = rows.split_at(rows.len() / 2);
            let mut pa = a.to_vec();
            let mut pb = b.to_vec();
            pa.reverse();
            let k = shift % pb.len();
            pb.rotate_left(k);
            let s = greedy_match_score(a, b).unwrap();
            let p = greedy_match_score(&pa, &pb).unwrap();
            prop_assert!((s.f1 - p.f1).abs() < 1e-12);
        }
    }
}

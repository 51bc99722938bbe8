//! Brute-force and top-down reference implementations. Nothing here calls
//! the library, so agreement with it is meaningful.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

/// Every string over `alphabet` of length `0..=max_len`, shortest first.
pub fn all_strings(alphabet: &[char], max_len: usize) -> Vec<Vec<char>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &layer {
            for &c in alphabet {
                let mut t: Vec<char> = s.clone();
                t.push(c);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Column scores for a linear-gap alignment.
#[derive(Clone, Copy)]
pub struct Linear {
    pub matched: f64,
    pub mismatched: f64,
    pub gap: f64,
}

impl Linear {
    fn pair<T: PartialEq>(&self, x: &T, y: &T) -> f64 {
        if x == y {
            self.matched
        } else {
            self.mismatched
        }
    }
}

/// Edit-operation costs.
#[derive(Clone, Copy)]
pub struct Costs {
    pub insert: f64,
    pub delete: f64,
    pub substitute: f64,
    pub transpose: f64,
    pub matched: f64,
}

impl Costs {
    pub const UNIT: Costs = Costs {
        insert: 1.0,
        delete: 1.0,
        substitute: 1.0,
        transpose: 1.0,
        matched: 0.0,
    };
}

// ---------------------------------------------------------------------
// Exhaustive enumeration. Each walks every alignment (column sequence) of
// the two inputs, carrying a running total.

/// Best total over every global alignment.
pub fn enum_global<T: PartialEq>(a: &[T], b: &[T], s: Linear) -> f64 {
    fn go<T: PartialEq>(a: &[T], b: &[T], s: Linear, acc: f64, best: &mut f64) {
        if a.is_empty() && b.is_empty() {
            *best = best.max(acc);
            return;
        }
        if let (Some(x), Some(y)) = (a.first(), b.first()) {
            go(&a[1..], &b[1..], s, acc + s.pair(x, y), best);
        }
        if !a.is_empty() {
            go(&a[1..], b, s, acc + s.gap, best);
        }
        if !b.is_empty() {
            go(a, &b[1..], s, acc + s.gap, best);
        }
    }
    let mut best = f64::NEG_INFINITY;
    go(a, b, s, 0.0, &mut best);
    best
}

/// Best contiguous run of columns inside any global alignment, or 0.
/// Every local alignment extends to a global one, so this is the local
/// alignment score.
pub fn enum_local<T: PartialEq>(a: &[T], b: &[T], s: Linear) -> f64 {
    fn go<T: PartialEq>(a: &[T], b: &[T], s: Linear, run: f64, best: &mut f64) {
        *best = best.max(run);
        let step = |c: f64| (run + c).max(0.0);
        if let (Some(x), Some(y)) = (a.first(), b.first()) {
            go(&a[1..], &b[1..], s, step(s.pair(x, y)), best);
        }
        if !a.is_empty() {
            go(&a[1..], b, s, step(s.gap), best);
        }
        if !b.is_empty() {
            go(a, &b[1..], s, step(s.gap), best);
        }
    }
    let mut best = 0.0;
    go(a, b, s, 0.0, &mut best);
    best
}

/// Cheapest edit script. With `osa`, an adjacent swap may be applied to
/// untouched symbols.
pub fn enum_edit<T: PartialEq>(a: &[T], b: &[T], c: Costs, osa: bool) -> f64 {
    fn go<T: PartialEq>(a: &[T], b: &[T], c: Costs, osa: bool, acc: f64, best: &mut f64) {
        if acc >= *best {
            return;
        }
        if a.is_empty() && b.is_empty() {
            *best = acc;
            return;
        }
        if let (Some(x), Some(y)) = (a.first(), b.first()) {
            let step = if x == y { c.matched } else { c.substitute };
            go(&a[1..], &b[1..], c, osa, acc + step, best);
        }
        if osa && a.len() >= 2 && b.len() >= 2 && a[0] == b[1] && a[1] == b[0] {
            go(&a[2..], &b[2..], c, osa, acc + c.transpose, best);
        }
        if !a.is_empty() {
            go(&a[1..], b, c, osa, acc + c.delete, best);
        }
        if !b.is_empty() {
            go(a, &b[1..], c, osa, acc + c.insert, best);
        }
    }
    let mut best = f64::INFINITY;
    go(a, b, c, osa, 0.0, &mut best);
    best
}

/// Cheapest monotone warp path from the first to the last cell, by
/// walking every path.
pub fn enum_dtw(a: &[f64], b: &[f64]) -> f64 {
    fn go(a: &[f64], b: &[f64], i: usize, j: usize, acc: f64, best: &mut f64) {
        let acc = acc + (a[i] - b[j]).abs();
        if i + 1 == a.len() && j + 1 == b.len() {
            *best = best.min(acc);
            return;
        }
        if i + 1 < a.len() && j + 1 < b.len() {
            go(a, b, i + 1, j + 1, acc, best);
        }
        if i + 1 < a.len() {
            go(a, b, i + 1, j, acc, best);
        }
        if j + 1 < b.len() {
            go(a, b, i, j + 1, acc, best);
        }
    }
    let mut best = f64::INFINITY;
    go(a, b, 0, 0, 0.0, &mut best);
    best
}

/// Longest common contiguous run by testing every substring of `a`, with
/// the distinct runs of that length.
pub fn brute_lcsubstring<T: PartialEq + Clone + std::hash::Hash + Eq>(
    a: &[T],
    b: &[T],
) -> (usize, HashSet<Vec<T>>) {
    for len in (1..=a.len().min(b.len())).rev() {
        let found: HashSet<Vec<T>> = a
            .windows(len)
            .filter(|w| b.windows(len).any(|v| v == *w))
            .map(<[T]>::to_vec)
            .collect();
        if !found.is_empty() {
            return (len, found);
        }
    }
    (0, HashSet::new())
}

pub fn is_subsequence<T: PartialEq>(sub: &[T], of: &[T]) -> bool {
    let mut it = of.iter();
    sub.iter().all(|x| it.any(|y| y == x))
}

/// Longest common subsequence by trying every subset of `a`'s positions.
pub fn brute_lcs_length<T: PartialEq + Clone>(a: &[T], b: &[T]) -> usize {
    assert!(a.len() < 20, "subset enumeration is exponential");
    let mut best = 0;
    for mask in 0u32..(1 << a.len()) {
        let ones = mask.count_ones() as usize;
        if ones <= best {
            continue;
        }
        let sub: Vec<T> = (0..a.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| a[i].clone())
            .collect();
        if is_subsequence(&sub, b) {
            best = ones;
        }
    }
    best
}

// ---------------------------------------------------------------------
// Top-down memoized recursions over suffixes, for inputs too long to
// enumerate.

pub fn memo_global<T: PartialEq>(a: &[T], b: &[T], s: Linear) -> f64 {
    fn go<T: PartialEq>(
        a: &[T],
        b: &[T],
        i: usize,
        j: usize,
        s: Linear,
        memo: &mut HashMap<(usize, usize), f64>,
    ) -> f64 {
        if i == a.len() {
            return s.gap * (b.len() - j) as f64;
        }
        if j == b.len() {
            return s.gap * (a.len() - i) as f64;
        }
        if let Some(&v) = memo.get(&(i, j)) {
            return v;
        }
        let v = (s.pair(&a[i], &b[j]) + go(a, b, i + 1, j + 1, s, memo))
            .max(s.gap + go(a, b, i + 1, j, s, memo))
            .max(s.gap + go(a, b, i, j + 1, s, memo));
        memo.insert((i, j), v);
        v
    }
    go(a, b, 0, 0, s, &mut HashMap::new())
}

/// Best local alignment starting at each `(i, j)`, maximized over starts.
pub fn memo_local<T: PartialEq>(a: &[T], b: &[T], s: Linear) -> f64 {
    fn go<T: PartialEq>(
        a: &[T],
        b: &[T],
        i: usize,
        j: usize,
        s: Linear,
        memo: &mut HashMap<(usize, usize), f64>,
    ) -> f64 {
        if let Some(&v) = memo.get(&(i, j)) {
            return v;
        }
        let mut v: f64 = 0.0;
        if i < a.len() && j < b.len() {
            v = v.max(s.pair(&a[i], &b[j]) + go(a, b, i + 1, j + 1, s, memo));
        }
        if i < a.len() {
            v = v.max(s.gap + go(a, b, i + 1, j, s, memo));
        }
        if j < b.len() {
            v = v.max(s.gap + go(a, b, i, j + 1, s, memo));
        }
        memo.insert((i, j), v);
        v
    }
    let mut memo = HashMap::new();
    let mut best: f64 = 0.0;
    for i in 0..=a.len() {
        for j in 0..=b.len() {
            best = best.max(go(a, b, i, j, s, &mut memo));
        }
    }
    best
}

pub fn memo_edit<T: PartialEq>(a: &[T], b: &[T], c: Costs, osa: bool) -> f64 {
    fn go<T: PartialEq>(
        a: &[T],
        b: &[T],
        i: usize,
        j: usize,
        c: Costs,
        osa: bool,
        memo: &mut HashMap<(usize, usize), f64>,
    ) -> f64 {
        if i == a.len() {
            return c.insert * (b.len() - j) as f64;
        }
        if j == b.len() {
            return c.delete * (a.len() - i) as f64;
        }
        if let Some(&v) = memo.get(&(i, j)) {
            return v;
        }
        let step = if a[i] == b[j] {
            c.matched
        } else {
            c.substitute
        };
        let mut v = (step + go(a, b, i + 1, j + 1, c, osa, memo))
            .min(c.delete + go(a, b, i + 1, j, c, osa, memo))
            .min(c.insert + go(a, b, i, j + 1, c, osa, memo));
        if osa && i + 1 < a.len() && j + 1 < b.len() && a[i] == b[j + 1] && a[i + 1] == b[j] {
            v = v.min(c.transpose + go(a, b, i + 2, j + 2, c, osa, memo));
        }
        memo.insert((i, j), v);
        v
    }
    go(a, b, 0, 0, c, osa, &mut HashMap::new())
}

pub fn memo_lcs<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    fn go<T: PartialEq>(
        a: &[T],
        b: &[T],
        i: usize,
        j: usize,
        memo: &mut HashMap<(usize, usize), usize>,
    ) -> usize {
        if i == a.len() || j == b.len() {
            return 0;
        }
        if let Some(&v) = memo.get(&(i, j)) {
            return v;
        }
        let v = if a[i] == b[j] {
            1 + go(a, b, i + 1, j + 1, memo)
        } else {
            go(a, b, i + 1, j, memo).max(go(a, b, i, j + 1, memo))
        };
        memo.insert((i, j), v);
        v
    }
    go(a, b, 0, 0, &mut HashMap::new())
}

pub fn memo_dtw(a: &[f64], b: &[f64]) -> f64 {
    fn go(
        a: &[f64],
        b: &[f64],
        i: usize,
        j: usize,
        memo: &mut HashMap<(usize, usize), f64>,
    ) -> f64 {
        let here = (a[i] - b[j]).abs();
        if i + 1 == a.len() && j + 1 == b.len() {
            return here;
        }
        if let Some(&v) = memo.get(&(i, j)) {
            return v;
        }
        let mut rest = f64::INFINITY;
        if i + 1 < a.len() && j + 1 < b.len() {
            rest = rest.min(go(a, b, i + 1, j + 1, memo));
        }
        if i + 1 < a.len() {
            rest = rest.min(go(a, b, i + 1, j, memo));
        }
        if j + 1 < b.len() {
            rest = rest.min(go(a, b, i, j + 1, memo));
        }
        let v = here + rest;
        memo.insert((i, j), v);
        v
    }
    go(a, b, 0, 0, &mut HashMap::new())
}

// ---------------------------------------------------------------------
// Scoring an alignment the library returned, column by column.

pub fn column_total<T: PartialEq>(a: &[Option<T>], b: &[Option<T>], s: Linear) -> f64 {
    a.iter()
        .zip(b)
        .map(|pair| match pair {
            (Some(x), Some(y)) => s.pair(x, y),
            _ => s.gap,
        })
        .sum()
}

pub fn degap<T: Clone>(row: &[Option<T>]) -> Vec<T> {
    row.iter().flatten().cloned().collect()
}

/// Every start offset where `pattern` occurs in `text`.
pub fn occurrences<T: PartialEq>(pattern: &[T], text: &[T]) -> Vec<usize> {
    if pattern.len() > text.len() {
        return Vec::new();
    }
    (0..=text.len() - pattern.len())
        .filter(|&i| text[i..i + pattern.len()] == *pattern)
        .collect()
}

/// Jaro by its textbook definition, written independently: matches
/// within the window, taken greedily left to right; half the number of
/// matched pairs out of order.
pub fn reference_jaro(s: &str, t: &str) -> f64 {
    let a: Vec<char> = s.chars().collect();
    let b: Vec<char> = t.chars().collect();
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let window = (a.len().max(b.len()) / 2).saturating_sub(1);
    let mut used = vec![false; b.len()];
    let mut a_matched = Vec::new();
    for (i, &c) in a.iter().enumerate() {
        let lo = i.saturating_sub(window);
        let hi = (i + window + 1).min(b.len());
        if let Some(j) = (lo..hi).find(|&j| !used[j] && b[j] == c) {
            used[j] = true;
            a_matched.push(c);
        }
    }
    let b_matched: Vec<char> = b
        .iter()
        .zip(&used)
        .filter(|(_, &u)| u)
        .map(|(&c, _)| c)
        .collect();
    let m = a_matched.len() as f64;
    if m == 0.0 {
        return 0.0;
    }
    let half_transpositions = a_matched
        .iter()
        .zip(&b_matched)
        .filter(|(x, y)| x != y)
        .count() as f64
        / 2.0;
    (m / a.len() as f64 + m / b.len() as f64 + (m - half_transpositions) / m) / 3.0
}

pub fn reference_jaro_winkler(s: &str, t: &str) -> f64 {
    let j = reference_jaro(s, t);
    let prefix = s
        .chars()
        .zip(t.chars())
        .take(4)
        .take_while(|(x, y)| x == y)
        .count() as f64;
    j + prefix * 0.1 * (1.0 - j)
}

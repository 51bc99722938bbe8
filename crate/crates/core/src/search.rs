//! Exact pattern search. Every algorithm reports all occurrences, including
//! overlapping ones, as 0-based start offsets in symbol units.

use std::collections::HashMap;
use std::hash::Hash;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sequence::Fingerprint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchAlgorithm {
    Naive,
    RabinKarp,
    BoyerMoore,
    Kmp,
}

impl SearchAlgorithm {
    pub const ALL: [SearchAlgorithm; 4] = [
        SearchAlgorithm::Naive,
        SearchAlgorithm::RabinKarp,
        SearchAlgorithm::BoyerMoore,
        SearchAlgorithm::Kmp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SearchAlgorithm::Naive => "naive",
            SearchAlgorithm::RabinKarp => "rabin-karp",
            SearchAlgorithm::BoyerMoore => "boyer-moore",
            SearchAlgorithm::Kmp => "kmp",
        }
    }
}

impl FromStr for SearchAlgorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "naive" => Ok(SearchAlgorithm::Naive),
            "rabin-karp" | "rk" => Ok(SearchAlgorithm::RabinKarp),
            "boyer-moore" | "bm" => Ok(SearchAlgorithm::BoyerMoore),
            "kmp" | "knuth-morris-pratt" => Ok(SearchAlgorithm::Kmp),
            other => Err(Error::invalid(format!(
                "unknown search algorithm {other:?}"
            ))),
        }
    }
}

fn require_pattern<T>(pattern: &[T]) -> Result<()> {
    if pattern.is_empty() {
        Err(Error::invalid("pattern must be nonempty"))
    } else {
        Ok(())
    }
}

/// Finds every occurrence of `pattern` in `text` with the chosen algorithm.
pub fn search<T>(pattern: &[T], text: &[T], algorithm: SearchAlgorithm) -> Result<Vec<usize>>
where
    T: Eq + Hash + Fingerprint,
{
    match algorithm {
        SearchAlgorithm::Naive => naive(pattern, text),
        SearchAlgorithm::RabinKarp => rabin_karp(pattern, text),
        SearchAlgorithm::BoyerMoore => boyer_moore(pattern, text),
        SearchAlgorithm::Kmp => kmp(pattern, text),
    }
}

pub fn naive<T: PartialEq>(pattern: &[T], text: &[T]) -> Result<Vec<usize>> {
    require_pattern(pattern)?;
    if pattern.len() > text.len() {
        return Ok(Vec::new());
    }
    Ok((0..=text.len() - pattern.len())
        .filter(|&s| text[s..s + pattern.len()] == *pattern)
        .collect())
}

/// The Mersenne prime 2^61 - 1.
pub const RK_MODULUS: u64 = (1 << 61) - 1;
pub const RK_BASE: u64 = 257;

#[inline]
fn mulmod(a: u64, b: u64) -> u64 {
    let p = u128::from(a) * u128::from(b);
    let folded = (p & u128::from(RK_MODULUS)) + (p >> 61);
    let r = folded as u64;
    let r = (r & RK_MODULUS) + (r >> 61);
    if r >= RK_MODULUS {
        r - RK_MODULUS
    } else {
        r
    }
}

#[inline]
fn addmod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= RK_MODULUS {
        s - RK_MODULUS
    } else {
        s
    }
}

#[inline]
fn submod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + RK_MODULUS - b
    }
}

#[inline]
fn reduce(x: u64) -> u64 {
    let r = (x & RK_MODULUS) + (x >> 61);
    if r >= RK_MODULUS {
        r - RK_MODULUS
    } else {
        r
    }
}

/// Polynomial hash `sum(fp(s[i]) * 257^(len-1-i)) mod (2^61 - 1)`, the
/// window hash Rabin-Karp compares.
pub fn rolling_hash<T: Fingerprint>(symbols: &[T]) -> u64 {
    symbols.iter().fold(0, |h, s| {
        addmod(mulmod(h, RK_BASE), reduce(s.fingerprint()))
    })
}

/// Rabin-Karp; every hash hit is verified symbol by symbol.
pub fn rabin_karp<T: PartialEq + Fingerprint>(pattern: &[T], text: &[T]) -> Result<Vec<usize>> {
    require_pattern(pattern)?;
    let (m, n) = (pattern.len(), text.len());
    let mut out = Vec::new();
    if m > n {
        return Ok(out);
    }
    let target = rolling_hash(pattern);
    let lead = (1..m).fold(1, |p, _| mulmod(p, RK_BASE));
    let mut h = rolling_hash(&text[..m]);
    for s in 0..=n - m {
        if h == target && text[s..s + m] == *pattern {
            out.push(s);
        }
        if s + m < n {
            let drop = mulmod(reduce(text[s].fingerprint()), lead);
            h = addmod(
                mulmod(submod(h, drop), RK_BASE),
                reduce(text[s + m].fingerprint()),
            );
        }
    }
    Ok(out)
}

/// Boyer-Moore with the bad-character and strong good-suffix rules.
pub fn boyer_moore<T: Eq + Hash>(pattern: &[T], text: &[T]) -> Result<Vec<usize>> {
    require_pattern(pattern)?;
    let (m, n) = (pattern.len(), text.len());
    let mut out = Vec::new();
    if m > n {
        return Ok(out);
    }

    let mut last: HashMap<&T, usize> = HashMap::new();
    for (i, s) in pattern.iter().enumerate() {
        last.insert(s, i);
    }
    let shift = good_suffix_shifts(pattern);

    let mut s = 0;
    while s <= n - m {
        let mut j = m;
        while j > 0 && pattern[j - 1] == text[s + j - 1] {
            j -= 1;
        }
        if j == 0 {
            out.push(s);
            s += shift[0];
        } else {
            let mismatch = j - 1;
            let bad = match last.get(&text[s + mismatch]) {
                Some(&k) if k < mismatch => mismatch - k,
                Some(_) => 1,
                None => mismatch + 1,
            };
            s += bad.max(shift[j]);
        }
    }
    Ok(out)
}

/// `shift[j]` is how far to slide when `pattern[j..]` matched and
/// `pattern[j - 1]` did not; `shift[0]` is the slide after a full match.
fn good_suffix_shifts<T: PartialEq>(pattern: &[T]) -> Vec<usize> {
    let m = pattern.len();
    let mut shift = vec![0usize; m + 1];
    let mut border = vec![0usize; m + 1];

    let (mut i, mut j) = (m, m + 1);
    border[i] = j;
    while i > 0 {
        while j <= m && pattern[i - 1] != pattern[j - 1] {
            if shift[j] == 0 {
                shift[j] = j - i;
            }
            j = border[j];
        }
        i -= 1;
        j -= 1;
        border[i] = j;
    }

    let mut j = border[0];
    for (i, s) in shift.iter_mut().enumerate() {
        if *s == 0 {
            *s = j;
        }
        if i == j {
            j = border[j];
        }
    }
    shift
}

/// KMP failure function: entry `i` is the length of the longest proper
/// prefix of `pattern[..=i]` that is also its suffix.
pub fn failure_function<T: PartialEq>(pattern: &[T]) -> Result<Vec<usize>> {
    require_pattern(pattern)?;
    let mut f = vec![0usize; pattern.len()];
    let mut k = 0;
    for i in 1..pattern.len() {
        while k > 0 && pattern[i] != pattern[k] {
            k = f[k - 1];
        }
        if pattern[i] == pattern[k] {
            k += 1;
        }
        f[i] = k;
    }
    Ok(f)
}

pub fn kmp<T: PartialEq>(pattern: &[T], text: &[T]) -> Result<Vec<usize>> {
    kmp_counted(pattern, text).map(|(hits, _)| hits)
}

/// KMP that also reports how many symbol comparisons the scan made
/// (failure-function construction excluded). The count never exceeds
/// `2 * text.len()`.
pub fn kmp_counted<T: PartialEq>(pattern: &[T], text: &[T]) -> Result<(Vec<usize>, usize)> {
    let f = failure_function(pattern)?;
    let m = pattern.len();
    let mut out = Vec::new();
    let mut comparisons = 0;
    let mut k = 0;
    for (i, x) in text.iter().enumerate() {
        loop {
            comparisons += 1;
            if pattern[k] == *x {
                k += 1;
                break;
            }
            if k == 0 {
                break;
            }
            k = f[k - 1];
        }
        if k == m {
            out.push(i + 1 - m);
            k = f[m - 1];
        }
    }
    Ok((out, comparisons))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn chars(s: &str) -> Vec<char> {
        s.chars().collect()
    }

    fn all(pattern: &str, text: &str) -> Vec<usize> {
        let (p, t) = (chars(pattern), chars(text));
        let first = search(&p, &t, SearchAlgorithm::Naive).unwrap();
        for algo in SearchAlgorithm::ALL {
            assert_eq!(
                search(&p, &t, algo).unwrap(),
                first,
                "{algo:?} on {pattern:?} in {text:?}"
            );
        }
        first
    }

    #[test]
    fn examples() {
        assert_eq!(all("aba", "ababa"), vec![0, 2]);
        assert!(all("x", "aaaa").is_empty());
        assert_eq!(all("needle", "needle"), vec![0]);
        assert!(all("abc", "").is_empty());
        assert!(all("abcd", "abc").is_empty());
        assert_eq!(all("aa", "aaaa"), vec![0, 1, 2]);
    }

    #[test]
    fn empty_pattern_rejected() {
        for algo in SearchAlgorithm::ALL {
            assert!(search::<char>(&[], &chars("abc"), algo).is_err());
        }
        assert!(failure_function::<char>(&[]).is_err());
    }

    #[test]
    fn failure_function_examples() {
        assert_eq!(
            failure_function(&chars("ababaca")).unwrap(),
            vec![0, 0, 1, 2, 3, 0, 1]
        );
        assert_eq!(failure_function(&chars("aaaa")).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(failure_function(&chars("abcd")).unwrap(), vec![0, 0, 0, 0]);
    }

    fn brute_shift(p: &[char], j: usize) -> usize {
        let m = p.len();
        (1..=m)
            .find(|&s| {
                let suffix_ok = (j..m).all(|k| k < s || p[k - s] == p[k]);
                let strong = j == 0 || j - 1 < s || p[j - 1 - s] != p[j - 1];
                suffix_ok && strong
            })
            .unwrap()
    }

    #[test]
    fn good_suffix_table() {
        for pat in ["ABBABAB", "ANPANMAN", "aaaa", "abcab", "a", "abab"] {
            let p = chars(pat);
            let want: Vec<usize> = (0..=p.len()).map(|j| brute_shift(&p, j)).collect();
            assert_eq!(good_suffix_shifts(&p), want, "{pat}");
        }
    }

    #[test]
    fn algorithm_names_parse() {
        for algo in SearchAlgorithm::ALL {
            assert_eq!(algo.name().parse::<SearchAlgorithm>().unwrap(), algo);
        }
        assert!("grep".parse::<SearchAlgorithm>().is_err());
    }

    #[test]
    fn planted_hash_collision_is_rejected() {
        // 97*257 + 333 == 98*257 + 76
        let p = chars("a\u{14d}");
        let decoy = chars("bL");
        assert_eq!(rolling_hash(&p), rolling_hash(&decoy));
        let text = chars("xxbLxa\u{14d}bL");
        assert_eq!(rabin_karp(&p, &text).unwrap(), vec![5]);
    }

    #[test]
    fn mulmod_matches_wide_arithmetic() {
        let cases = [
            (RK_MODULUS - 1, RK_MODULUS - 1),
            (1 << 60, 12345),
            (0, 7),
            (RK_BASE, RK_MODULUS - 2),
        ];
        for (a, b) in cases {
            let want = (u128::from(a) * u128::from(b) % u128::from(RK_MODULUS)) as u64;
            assert_eq!(mulmod(a, b), want);
        }
    }

    #[test]
    fn tokens_match_whole_tokens_only() {
        let text = crate::sequence::Sequence::from_tokens(["ab", "c", "abc", "ab", "c"]);
        let pat = crate::sequence::Sequence::from_tokens(["ab", "c"]);
        for algo in SearchAlgorithm::ALL {
            assert_eq!(search(&pat, &text, algo).unwrap(), vec![0, 3]);
        }
    }

    proptest! {
        #[test]
        fn algorithms_agree(p in "[ab]{1,5}", t in "[ab]{0,60}") {
            all(&p, &t);
        }

        #[test]
        fn kmp_comparisons_linear(p in "[abc]{1,8}", t in "[abc]{0,200}") {
            let (_, c) = kmp_counted(&chars(&p), &chars(&t)).unwrap();
            prop_assert!(c <= 2 * t.len());
        }

        #[test]
        fn failure_function_is_longest_border(p in "[ab]{1,12}") {
            let p = chars(&p);
            let f = failure_function(&p).unwrap();
            for i in 0..p.len() {
                let best = (0..=i).rev().find(|&l| p[..l] == p[i + 1 - l..=i]).unwrap();
                prop_assert_eq!(f[i], best);
            }
        }
    }
}

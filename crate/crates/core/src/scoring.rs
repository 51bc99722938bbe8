//! Scoring parameters: edit costs, substitution matrices and gap penalties.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::sequence::Symbol;

/// Pairwise symbol score used by the alignment algorithms (higher is better).
pub trait Scorer<T: ?Sized> {
    fn score(&self, a: &T, b: &T) -> f64;
}

impl<T: ?Sized, S: Scorer<T> + ?Sized> Scorer<T> for &S {
    fn score(&self, a: &T, b: &T) -> f64 {
        (**self).score(a, b)
    }
}

/// Linear gap penalty charged once per gap symbol in an alignment.
///
/// Alignment maximizes score, so penalties are normally negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapPenalty(f64);

impl GapPenalty {
    pub fn new(per_gap: f64) -> Result<Self> {
        if !per_gap.is_finite() {
            return Err(Error::invalid(format!(
                "gap penalty must be finite, got {per_gap}"
            )));
        }
        Ok(GapPenalty(per_gap))
    }

    pub fn per_gap(self) -> f64 {
        self.0
    }
}

/// `match_score` on equal symbols, `mismatch_score` otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformScoring {
    pub match_score: f64,
    pub mismatch_score: f64,
}

impl<T: PartialEq + ?Sized> Scorer<T> for UniformScoring {
    fn score(&self, a: &T, b: &T) -> f64 {
        if a == b {
            self.match_score
        } else {
            self.mismatch_score
        }
    }
}

/// Builds a match/mismatch scorer and its linear gap penalty.
pub fn uniform_scoring(
    match_score: f64,
    mismatch_score: f64,
    gap: f64,
) -> Result<(UniformScoring, GapPenalty)> {
    if !match_score.is_finite() || !mismatch_score.is_finite() {
        return Err(Error::invalid("match and mismatch scores must be finite"));
    }
    Ok((
        UniformScoring {
            match_score,
            mismatch_score,
        },
        GapPenalty::new(gap)?,
    ))
}

/// Weights of the edit operations used by the distance measures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostModel {
    insert: f64,
    delete: f64,
    substitute: f64,
    transpose: f64,
    matched: f64,
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel {
            insert: 1.0,
            delete: 1.0,
            substitute: 1.0,
            transpose: 1.0,
            matched: 0.0,
        }
    }
}

impl CostModel {
    /// Every cost must be finite and nonnegative.
    pub fn new(
        insert: f64,
        delete: f64,
        substitute: f64,
        transpose: f64,
        matched: f64,
    ) -> Result<Self> {
        for (name, v) in [
            ("insert", insert),
            ("delete", delete),
            ("substitute", substitute),
            ("transpose", transpose),
            ("match", matched),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::invalid(format!(
                    "{name} cost must be finite and nonnegative, got {v}"
                )));
            }
        }
        Ok(CostModel {
            insert,
            delete,
            substitute,
            transpose,
            matched,
        })
    }

    pub fn unit() -> Self {
        Self::default()
    }

    pub fn insert(&self) -> f64 {
        self.insert
    }
    pub fn delete(&self) -> f64 {
        self.delete
    }
    pub fn substitute(&self) -> f64 {
        self.substitute
    }
    pub fn transpose(&self) -> f64 {
        self.transpose
    }
    pub fn matched(&self) -> f64 {
        self.matched
    }
}

/// A total score table over an alphabet of symbols.
///
/// Pairs involving a symbol outside the alphabet score `default_score`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubstitutionMatrix {
    alphabet: Vec<String>,
    index: HashMap<String, usize>,
    scores: Vec<f64>,
    default_score: f64,
}

impl SubstitutionMatrix {
    /// `scores` is row-major, `alphabet.len()` squared entries. The default
    /// score for unknown symbols is the table minimum.
    pub fn new(alphabet: Vec<String>, scores: Vec<f64>) -> Result<Self> {
        let k = alphabet.len();
        if scores.len() != k * k {
            return Err(Error::invalid(format!(
                "{} scores for an alphabet of {k} symbols",
                scores.len()
            )));
        }
        if let Some(bad) = scores.iter().find(|s| !s.is_finite()) {
            return Err(Error::invalid(format!("score {bad} is not finite")));
        }
        let mut index = HashMap::with_capacity(k);
        for (i, sym) in alphabet.iter().enumerate() {
            if sym.is_empty() || sym.chars().any(char::is_whitespace) {
                return Err(Error::invalid(format!("invalid matrix symbol {sym:?}")));
            }
            if index.insert(sym.clone(), i).is_some() {
                return Err(Error::invalid(format!("duplicate symbol {sym:?}")));
            }
        }
        let default_score = scores.iter().copied().fold(f64::INFINITY, f64::min);
        Ok(SubstitutionMatrix {
            alphabet,
            index,
            scores,
            default_score: if k == 0 { 0.0 } else { default_score },
        })
    }

    pub fn with_default_score(mut self, default_score: f64) -> Self {
        self.default_score = default_score;
        self
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn default_score(&self) -> f64 {
        self.default_score
    }

    /// Score of the pair `(a, b)` by symbol text.
    pub fn get(&self, a: &str, b: &str) -> f64 {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&i), Some(&j)) => self.scores[i * self.alphabet.len() + j],
            _ => self.default_score,
        }
    }

    /// Reads an NCBI-style plain-text matrix (the layout BLOSUM and PAM
    /// files are distributed in).
    ///
    /// Lines starting with `#` and blank lines are ignored. The first
    /// remaining line lists the alphabet; each following line is a symbol
    /// followed by one score per alphabet entry. Row symbols must appear in
    /// header order.
    pub fn parse<R: BufRead>(source: R) -> Result<Self> {
        let mut header: Option<(usize, Vec<String>)> = None;
        let mut scores = Vec::new();
        let mut rows = 0usize;
        for (idx, line) in source.lines().enumerate() {
            let lineno = idx + 1;
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let Some((_, alphabet)) = &header else {
                let alphabet: Vec<String> = fields.iter().map(|s| s.to_string()).collect();
                for (i, sym) in alphabet.iter().enumerate() {
                    if alphabet[..i].contains(sym) {
                        return Err(Error::parse(
                            lineno,
                            format!("duplicate symbol {sym:?} in header"),
                        ));
                    }
                }
                header = Some((lineno, alphabet));
                continue;
            };
            let k = alphabet.len();
            if rows == k {
                return Err(Error::parse(lineno, format!("more than {k} rows")));
            }
            if fields[0] != alphabet[rows] {
                return Err(Error::parse(
                    lineno,
                    format!(
                        "row symbol {:?} does not match header symbol {:?}",
                        fields[0], alphabet[rows]
                    ),
                ));
            }
            if fields.len() - 1 != k {
                return Err(Error::parse(
                    lineno,
                    format!("row has {} scores, expected {k}", fields.len() - 1),
                ));
            }
            for f in &fields[1..] {
                let v: f64 = f
                    .parse()
                    .ok()
                    .filter(|v: &f64| v.is_finite())
                    .ok_or_else(|| Error::parse(lineno, format!("non-numeric score {f:?}")))?;
                scores.push(v);
            }
            rows += 1;
        }
        let Some((header_line, alphabet)) = header else {
            return Err(Error::parse(1, "missing header row"));
        };
        if rows != alphabet.len() {
            return Err(Error::parse(
                header_line,
                format!(
                    "header lists {} symbols but {rows} rows follow",
                    alphabet.len()
                ),
            ));
        }
        SubstitutionMatrix::new(alphabet, scores)
            .map_err(|e| Error::parse(header_line, e.to_string()))
    }

    /// Writes the matrix in the format [`parse`](Self::parse) reads.
    pub fn serialize(&self) -> String {
        let cells: Vec<String> = self.scores.iter().map(|s| s.to_string()).collect();
        let width = cells
            .iter()
            .map(String::len)
            .chain(self.alphabet.iter().map(|s| s.chars().count()))
            .max()
            .unwrap_or(1)
            + 1;
        let label = self
            .alphabet
            .iter()
            .map(|s| s.chars().count())
            .max()
            .unwrap_or(1);
        let mut out = format!("{:label$}", "");
        for sym in &self.alphabet {
            let _ = write!(out, "{sym:>width$}");
        }
        out.push('\n');
        let k = self.alphabet.len();
        for (i, sym) in self.alphabet.iter().enumerate() {
            let _ = write!(out, "{sym:<label$}");
            for cell in &cells[i * k..(i + 1) * k] {
                let _ = write!(out, "{cell:>width$}");
            }
            out.push('\n');
        }
        out
    }
}

impl Scorer<str> for SubstitutionMatrix {
    fn score(&self, a: &str, b: &str) -> f64 {
        self.get(a, b)
    }
}

impl Scorer<String> for SubstitutionMatrix {
    fn score(&self, a: &String, b: &String) -> f64 {
        self.get(a, b)
    }
}

impl Scorer<char> for SubstitutionMatrix {
    fn score(&self, a: &char, b: &char) -> f64 {
        let (mut ba, mut bb) = ([0u8; 4], [0u8; 4]);
        self.get(a.encode_utf8(&mut ba), b.encode_utf8(&mut bb))
    }
}

impl Scorer<u8> for SubstitutionMatrix {
    fn score(&self, a: &u8, b: &u8) -> f64 {
        self.score(&char::from(*a), &char::from(*b))
    }
}

impl Scorer<Symbol> for SubstitutionMatrix {
    fn score(&self, a: &Symbol, b: &Symbol) -> f64 {
        self.get(&a.text(), &b.text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn uniform_values() {
        let (s, g) = uniform_scoring(1.0, -1.0, -1.0).unwrap();
        assert_eq!(s.score(&'x', &'x'), 1.0);
        assert_eq!(s.score(&'x', &'y'), -1.0);
        assert_eq!(g.per_gap(), -1.0);

        let (z, g) = uniform_scoring(0.0, 0.0, 0.0).unwrap();
        assert_eq!(z.score("a", "b"), 0.0);
        assert_eq!(g.per_gap(), 0.0);
    }

    #[test]
    fn non_finite_rejected() {
        assert!(uniform_scoring(f64::NAN, 0.0, 0.0).is_err());
        assert!(GapPenalty::new(f64::INFINITY).is_err());
        assert!(CostModel::new(1.0, -1.0, 1.0, 1.0, 0.0).is_err());
        assert!(CostModel::new(1.0, 1.0, f64::NAN, 1.0, 0.0).is_err());
    }

    #[test]
    fn default_costs_are_unit() {
        let c = CostModel::default();
        assert_eq!(
            (
                c.insert(),
                c.delete(),
                c.substitute(),
                c.transpose(),
                c.matched()
            ),
            (1.0, 1.0, 1.0, 1.0, 0.0)
        );
    }

    #[test]
    fn parse_small_matrix() {
        let m = SubstitutionMatrix::parse("  A B\nA 1 -1\nB -1 1".as_bytes()).unwrap();
        assert_eq!(m.get("A", "A"), 1.0);
        assert_eq!(m.get("A", "B"), -1.0);
        assert_eq!(m.score(&'B', &'B'), 1.0);
        assert_eq!(m.get("A", "Z"), -1.0);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("# c\n  A B\nA 1 -1\nC -1 1\n", 4), // row/header mismatch
            ("  A B\nA 1 -1\nB -1\n", 3),        // ragged
            ("  A B\nA 1 x\nB -1 1\n", 2),       // non-numeric
            ("  A A\nA 1 1\nA 1 1\n", 1),        // duplicate symbol
            ("  A B\nA 1 -1\n", 1),              // missing row
            ("  A\nA 1\nA 1\n", 3),              // extra row
        ];
        for (text, line) in cases {
            match SubstitutionMatrix::parse(text.as_bytes()) {
                Err(Error::Parse { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn empty_source_is_an_error() {
        assert!(SubstitutionMatrix::parse("# only comments\n".as_bytes()).is_err());
    }

    fn arb_matrix() -> impl Strategy<Value = SubstitutionMatrix> {
        (1usize..6).prop_flat_map(|k| {
            proptest::collection::vec(-20i32..20, k * k).prop_map(move |scores| {
                let alphabet = (0..k)
                    .map(|i| ((b'A' + i as u8) as char).to_string())
                    .collect();
                SubstitutionMatrix::new(alphabet, scores.into_iter().map(f64::from).collect())
                    .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn serialize_parse_fixed_point(m in arb_matrix()) {
            let text = m.serialize();
            let back = SubstitutionMatrix::parse(text.as_bytes()).unwrap();
            prop_assert_eq!(&back, &m);
            prop_assert_eq!(back.serialize(), text);
        }
    }
}

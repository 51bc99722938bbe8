//! Word vectors in GloVe / fastText text format, and pooling of token
//! vectors into one text vector.
//!
//! A file is one entry per line: the word, then `E` space-separated
//! decimals. A fastText `.vec` header line (`<count> <dim>`) is recognised
//! and skipped. Written files use 6 significant digits (`%g` style), so a
//! store that was loaded from a written file writes back identically.

use std::io::{BufRead, Write};

use indexmap::IndexMap;

use crate::error::{Error, Result};

/// Word-to-vector table with a fixed dimension. Iteration follows first
/// appearance in the source.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingStore {
    dim: usize,
    entries: IndexMap<String, Vec<f32>>,
}

/// What [`load_word_vectors`] saw besides the entries themselves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LoadReport {
    pub header_skipped: bool,
    /// Lines whose word had already appeared; their vector replaced the
    /// earlier one.
    pub duplicates: usize,
}

impl EmbeddingStore {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("embedding dimension must be positive"));
        }
        Ok(EmbeddingStore {
            dim,
            entries: IndexMap::new(),
        })
    }

    /// Inserts or replaces `word`; returns true when it replaced an entry.
    pub fn insert(&mut self, word: impl Into<String>, vector: Vec<f32>) -> Result<bool> {
        if vector.len() != self.dim {
            return Err(Error::invalid(format!(
                "vector has dimension {}, store has {}",
                vector.len(),
                self.dim
            )));
        }
        let word = word.into();
        if word.is_empty() || word.chars().any(char::is_whitespace) {
            return Err(Error::invalid(format!("invalid word {word:?}")));
        }
        Ok(self.entries.insert(word, vector).is_some())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, word: &str) -> Option<&[f32]> {
        self.entries.get(word).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[f32])> {
        self.entries.iter().map(|(w, v)| (w.as_str(), v.as_slice()))
    }

    /// Writes one `word v1 v2 ...` line per entry.
    pub fn write<W: Write>(&self, mut out: W) -> Result<()> {
        for (word, v) in &self.entries {
            out.write_all(word.as_bytes())?;
            for x in v {
                write!(out, " {}", format_g6(f64::from(*x)))?;
            }
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// Formats like C's `%g`: 6 significant digits, trailing zeros dropped,
/// scientific notation below 1e-4 or from 1e6 up.
pub fn format_g6(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if !(-4..6).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa), exp.abs())
    } else {
        let decimals = (5 - exp) as usize;
        trim(&format!("{x:.decimals$}"))
    }
}

fn looks_like_header(fields: &[&str]) -> bool {
    fields.len() == 2 && fields.iter().all(|f| f.parse::<u64>().is_ok())
}

/// Reads a word-vector file. The dimension comes from `expected_dim`, the
/// fastText header, or the first entry, in that order of precedence, and
/// every entry must match it. Blank lines are ignored.
pub fn load_word_vectors<R: BufRead>(
    source: R,
    expected_dim: Option<usize>,
) -> Result<(EmbeddingStore, LoadReport)> {
    let mut dim = expected_dim;
    if dim == Some(0) {
        return Err(Error::invalid("expected dimension must be positive"));
    }
    let mut entries: IndexMap<String, Vec<f32>> = IndexMap::new();
    let mut report = LoadReport::default();
    let mut seen_content = false;

    for (idx, line) in source.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if !seen_content {
            seen_content = true;
            if looks_like_header(&fields) {
                let declared: usize = fields[1]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "header dimension out of range"))?;
                if declared == 0 || dim.is_some_and(|d| d != declared) {
                    return Err(Error::parse(
                        lineno,
                        format!("header declares dimension {declared}"),
                    ));
                }
                dim = Some(declared);
                report.header_skipped = true;
                continue;
            }
        }
        let (word, values) = (fields[0], &fields[1..]);
        let d = *dim.get_or_insert(values.len());
        if values.len() != d || d == 0 {
            return Err(Error::parse(
                lineno,
                format!("entry {word:?} has {} values, expected {d}", values.len()),
            ));
        }
        let vector = values
            .iter()
            .map(|v| {
                v.parse::<f32>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| Error::parse(lineno, format!("non-numeric value {v:?}")))
            })
            .collect::<Result<Vec<f32>>>()?;
        if entries.insert(word.to_string(), vector).is_some() {
            report.duplicates += 1;
        }
    }

    let dim = dim.ok_or_else(|| Error::parse(1, "no vectors found"))?;
    Ok((EmbeddingStore { dim, entries }, report))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoolMode {
    /// Element-wise average.
    Mean,
    /// The final vector.
    Last,
}

/// Collapses a nonempty list of equal-dimension vectors into one.
pub fn pool<V: AsRef<[f32]>>(vectors: &[V], mode: PoolMode) -> Result<Vec<f32>> {
    let first = vectors
        .first()
        .ok_or_else(|| Error::invalid("cannot pool an empty list of vectors"))?
        .as_ref();
    let dim = first.len();
    if let Some((i, v)) = vectors
        .iter()
        .enumerate()
        .find(|(_, v)| v.as_ref().len() != dim)
    {
        return Err(Error::invalid(format!(
            "vector {i} has dimension {}, expected {dim}",
            v.as_ref().len()
        )));
    }
    match mode {
        PoolMode::Last => Ok(vectors[vectors.len() - 1].as_ref().to_vec()),
        PoolMode::Mean => {
            let mut sum = vec![0.0f64; dim];
            for v in vectors {
                for (s, x) in sum.iter_mut().zip(v.as_ref()) {
                    *s += f64::from(*x);
                }
            }
            let k = vectors.len() as f64;
            Ok(sum.into_iter().map(|s| (s / k) as f32).collect())
        }
    }
}

//! Dense-vector nearest-neighbour search: an exact flat index and an
//! inverted-file (IVF) index over a k-means coarse quantizer.
//!
//! Scores are "larger is better": cosine similarity under
//! [`Metric::Cosine`], negative squared Euclidean distance under
//! [`Metric::L2`]. Results are ordered by descending score, ties by
//! ascending id. Vectors are stored as `f32`; scores are accumulated in
//! `f64`.

mod file;
mod ivf;
mod kmeans;

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};

pub use file::{FORMAT_VERSION, MAGIC};
pub use ivf::IvfIndex;
pub use kmeans::{kmeans, kmeans_with_history, KMeans};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Cosine,
    L2,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Cosine => "cosine",
            Metric::L2 => "l2",
        }
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cosine" | "cos" => Ok(Metric::Cosine),
            "l2" | "euclidean" => Ok(Metric::L2),
            other => Err(Error::invalid(format!("unknown metric {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Neighbor {
    pub id: String,
    pub score: f64,
}

fn rank(a: &Neighbor, b: &Neighbor) -> Ordering {
    b.score.total_cmp(&a.score).then_with(|| a.id.cmp(&b.id))
}

pub(crate) fn norm(v: &[f32]) -> f64 {
    v.iter()
        .map(|&x| f64::from(x) * f64::from(x))
        .sum::<f64>()
        .sqrt()
}

/// A query vector prepared for one metric: unit length in `f64` under
/// cosine, widened to `f64` under L2.
pub(crate) struct Prepared(Vec<f64>);

pub(crate) fn prepare(metric: Metric, dim: usize, q: &[f32]) -> Result<Prepared> {
    if q.len() != dim {
        return Err(Error::invalid(format!(
            "query has dimension {}, index has {dim}",
            q.len()
        )));
    }
    if q.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid("query contains a non-finite value"));
    }
    let wide = q.iter().map(|&x| f64::from(x));
    match metric {
        Metric::L2 => Ok(Prepared(wide.collect())),
        Metric::Cosine => {
            let n = norm(q);
            if n == 0.0 {
                return Err(Error::invalid("cosine query must be nonzero"));
            }
            Ok(Prepared(wide.map(|x| x / n).collect()))
        }
    }
}

/// Score of a stored vector against a prepared query. `norm` is only read
/// under cosine; a zero norm scores 0.
#[inline]
pub(crate) fn score(metric: Metric, q: &Prepared, v: &[f32], norm: f64) -> f64 {
    match metric {
        Metric::Cosine => {
            let dot: f64 = q.0.iter().zip(v).map(|(a, &b)| a * f64::from(b)).sum();
            if norm > 0.0 {
                dot / norm
            } else {
                0.0
            }
        }
        Metric::L2 => {
            -q.0.iter()
                .zip(v)
                .map(|(a, &b)| {
                    let d = a - f64::from(b);
                    d * d
                })
                .sum::<f64>()
        }
    }
}

/// Parallel id/vector storage shared by the flat index and IVF postings.
#[derive(Debug, Clone, PartialEq, Default)]
pub(crate) struct Records {
    pub(crate) ids: Vec<String>,
    pub(crate) vectors: Vec<f32>,
    pub(crate) norms: Vec<f64>,
}

impl Records {
    pub(crate) fn len(&self) -> usize {
        self.ids.len()
    }

    pub(crate) fn vector(&self, i: usize, dim: usize) -> &[f32] {
        &self.vectors[i * dim..(i + 1) * dim]
    }

    pub(crate) fn push(&mut self, id: String, v: &[f32]) {
        self.ids.push(id);
        self.vectors.extend_from_slice(v);
        self.norms.push(norm(v));
    }

    pub(crate) fn scan(&self, metric: Metric, dim: usize, q: &Prepared, out: &mut Vec<Neighbor>) {
        out.extend((0..self.len()).map(|i| Neighbor {
            id: self.ids[i].clone(),
            score: score(metric, q, self.vector(i, dim), self.norms[i]),
        }));
    }
}

/// Checks a build input and returns its dimension.
pub(crate) fn validate(records: &[(String, Vec<f32>)], metric: Metric) -> Result<usize> {
    let Some((_, first)) = records.first() else {
        return Err(Error::invalid("an index needs at least one record"));
    };
    let dim = first.len();
    if dim == 0 {
        return Err(Error::invalid("vectors must have positive dimension"));
    }
    let mut seen = HashSet::with_capacity(records.len());
    for (id, v) in records {
        if !seen.insert(id.as_str()) {
            return Err(Error::invalid(format!("duplicate record id {id:?}")));
        }
        if v.len() != dim {
            return Err(Error::invalid(format!(
                "record {id:?} has dimension {}, expected {dim}",
                v.len()
            )));
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid(format!(
                "record {id:?} has a non-finite value"
            )));
        }
        if metric == Metric::Cosine && norm(v) == 0.0 {
            return Err(Error::invalid(format!(
                "record {id:?} is a zero vector under cosine"
            )));
        }
    }
    Ok(dim)
}

pub(crate) fn validate_loaded(id: &str, v: &[f32], metric: Metric) -> Result<()> {
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::Format(format!(
            "record {id:?} has a non-finite value"
        )));
    }
    if metric == Metric::Cosine && norm(v) == 0.0 {
        return Err(Error::Format(format!(
            "record {id:?} is a zero vector under cosine"
        )));
    }
    Ok(())
}

pub(crate) fn top_k(mut hits: Vec<Neighbor>, k: usize) -> Vec<Neighbor> {
    if hits.len() > k {
        hits.select_nth_unstable_by(k - 1, rank);
        hits.truncate(k);
    }
    hits.sort_by(rank);
    hits
}

pub(crate) fn require_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::invalid("k must be at least 1"))
    } else {
        Ok(())
    }
}

/// Exact nearest-neighbour search by scanning every record.
#[derive(Debug, Clone, PartialEq)]
pub struct FlatIndex {
    metric: Metric,
    dim: usize,
    records: Records,
}

impl FlatIndex {
    /// Ids must be unique and vectors share one positive dimension; under
    /// cosine no vector may be zero.
    pub fn build(records: Vec<(String, Vec<f32>)>, metric: Metric) -> Result<Self> {
        let dim = validate(&records, metric)?;
        let mut store = Records::default();
        for (id, v) in records {
            store.push(id, &v);
        }
        Ok(FlatIndex {
            metric,
            dim,
            records: store,
        })
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.len() == 0
    }

    /// The `min(k, n)` best records.
    pub fn query(&self, q: &[f32], k: usize) -> Result<Vec<Neighbor>> {
        require_k(k)?;
        let q = prepare(self.metric, self.dim, q)?;
        let mut hits = Vec::with_capacity(self.len());
        self.records.scan(self.metric, self.dim, &q, &mut hits);
        Ok(top_k(hits, k))
    }
}

/// Either index kind, as stored in an index file.
#[derive(Debug, Clone, PartialEq)]
pub enum VectorIndex {
    Flat(FlatIndex),
    Ivf(IvfIndex),
}

impl VectorIndex {
    pub fn metric(&self) -> Metric {
        match self {
            VectorIndex::Flat(f) => f.metric,
            VectorIndex::Ivf(i) => i.metric(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            VectorIndex::Flat(f) => f.dim,
            VectorIndex::Ivf(i) => i.dim(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            VectorIndex::Flat(f) => f.len(),
            VectorIndex::Ivf(i) => i.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of IVF cells, 0 for a flat index.
    pub fn nlist(&self) -> usize {
        match self {
            VectorIndex::Flat(_) => 0,
            VectorIndex::Ivf(i) => i.nlist(),
        }
    }

    /// `nprobe` is ignored by a flat index and defaults to 1 for IVF.
    pub fn query(&self, q: &[f32], k: usize, nprobe: Option<usize>) -> Result<Vec<Neighbor>> {
        match self {
            VectorIndex::Flat(f) => f.query(q, k),
            VectorIndex::Ivf(i) => i.query(q, k, nprobe.unwrap_or(1)),
        }
    }
}

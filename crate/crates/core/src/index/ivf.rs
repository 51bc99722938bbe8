use super::{kmeans, norm, prepare, require_k, score, top_k, validate, Metric, Neighbor, Records};
use crate::error::{Error, Result};

/// Lloyd rounds used to train the coarse quantizer.
pub const TRAIN_ITERS: usize = 25;

/// Inverted-file index: records are partitioned by their best-scoring
/// centroid and a query scans only the `nprobe` best cells.
#[derive(Debug, Clone, PartialEq)]
pub struct IvfIndex {
    metric: Metric,
    dim: usize,
    centroids: Vec<f32>,
    centroid_norms: Vec<f64>,
    lists: Vec<Records>,
}

impl IvfIndex {
    /// Trains `nlist` centroids with k-means (on unit vectors under
    /// cosine) and assigns every record to its best cell.
    pub fn build(
        records: Vec<(String, Vec<f32>)>,
        metric: Metric,
        nlist: usize,
        seed: u64,
    ) -> Result<Self> {
        let dim = validate(&records, metric)?;
        if nlist == 0 || nlist > records.len() {
            return Err(Error::invalid(format!(
                "nlist must lie in 1..={}, got {nlist}",
                records.len()
            )));
        }
        let training: Vec<Vec<f64>> = records
            .iter()
            .map(|(_, v)| {
                let scale = match metric {
                    Metric::Cosine => 1.0 / norm(v),
                    Metric::L2 => 1.0,
                };
                v.iter().map(|&x| f64::from(x) * scale).collect()
            })
            .collect();
        let trained = kmeans(&training, nlist, TRAIN_ITERS, seed)?;
        let centroids: Vec<f32> = trained.iter().flatten().map(|&x| x as f32).collect();

        let mut index =
            IvfIndex::from_parts(metric, dim, centroids, vec![Records::default(); nlist]);
        for (id, v) in records {
            let cell = index.probe_order(&v)?[0];
            index.lists[cell].push(id, &v);
        }
        Ok(index)
    }

    pub(crate) fn from_parts(
        metric: Metric,
        dim: usize,
        centroids: Vec<f32>,
        lists: Vec<Records>,
    ) -> Self {
        let centroid_norms = centroids.chunks(dim).map(norm).collect();
        IvfIndex {
            metric,
            dim,
            centroids,
            centroid_norms,
            lists,
        }
    }

    pub(crate) fn lists(&self) -> &[Records] {
        &self.lists
    }

    pub(crate) fn centroid_values(&self) -> &[f32] {
        &self.centroids
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nlist(&self) -> usize {
        self.lists.len()
    }

    pub fn len(&self) -> usize {
        self.lists.iter().map(Records::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn posting_sizes(&self) -> Vec<usize> {
        self.lists.iter().map(Records::len).collect()
    }

    /// Centroid `c` as stored.
    pub fn centroid(&self, c: usize) -> &[f32] {
        &self.centroids[c * self.dim..(c + 1) * self.dim]
    }

    /// Ids stored in cell `c`.
    pub fn posting_ids(&self, c: usize) -> &[String] {
        &self.lists[c].ids
    }

    /// Cells ordered from best to worst centroid score for `q`, ties by
    /// cell number.
    pub fn probe_order(&self, q: &[f32]) -> Result<Vec<usize>> {
        let q = prepare(self.metric, self.dim, q)?;
        let scores: Vec<f64> = (0..self.nlist())
            .map(|c| score(self.metric, &q, self.centroid(c), self.centroid_norms[c]))
            .collect();
        let mut order: Vec<usize> = (0..self.nlist()).collect();
        order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
        Ok(order)
    }

    /// Best `k` records among the `nprobe` most promising cells. With
    /// `nprobe == nlist` this equals a flat scan.
    pub fn query(&self, q: &[f32], k: usize, nprobe: usize) -> Result<Vec<Neighbor>> {
        require_k(k)?;
        if nprobe == 0 || nprobe > self.nlist() {
            return Err(Error::invalid(format!(
                "nprobe must lie in 1..={}, got {nprobe}",
                self.nlist()
            )));
        }
        let order = self.probe_order(q)?;
        let prepared = prepare(self.metric, self.dim, q)?;
        let mut hits = Vec::new();
        for &c in &order[..nprobe] {
            self.lists[c].scan(self.metric, self.dim, &prepared, &mut hits);
        }
        Ok(top_k(hits, k))
    }
}

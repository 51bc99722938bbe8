use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Centroids and the within-cluster sum of squares after each assignment
/// step.
#[derive(Debug, Clone, PartialEq)]
pub struct KMeans {
    pub centroids: Vec<Vec<f64>>,
    pub sse_history: Vec<f64>,
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn nearest(point: &[f64], centroids: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (c, centroid) in centroids.iter().enumerate() {
        let d = sq_dist(point, centroid);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

/// [`kmeans_with_history`] without the history.
pub fn kmeans<V: AsRef<[f64]>>(
    points: &[V],
    k: usize,
    iters: usize,
    seed: u64,
) -> Result<Vec<Vec<f64>>> {
    kmeans_with_history(points, k, iters, seed).map(|r| r.centroids)
}

/// Lloyd's k-means with k-means++ seeding from a ChaCha8 stream seeded by
/// `seed`, so the same input and seed give bit-identical centroids.
///
/// Runs at most `iters` assignment/update rounds and stops early once the
/// assignment is stable. A cluster left empty by the assignment is moved
/// onto the point farthest from its current centroid.
pub fn kmeans_with_history<V: AsRef<[f64]>>(
    points: &[V],
    k: usize,
    iters: usize,
    seed: u64,
) -> Result<KMeans> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if k > points.len() {
        return Err(Error::invalid(format!(
            "cannot form {k} clusters from {} points",
            points.len()
        )));
    }
    let dim = points[0].as_ref().len();
    if points.iter().any(|p| p.as_ref().len() != dim) {
        return Err(Error::invalid("points must share one dimension"));
    }
    let pts: Vec<&[f64]> = points.iter().map(AsRef::as_ref).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut centroids = seed_plus_plus(&pts, k, &mut rng);

    let mut assignment = vec![usize::MAX; pts.len()];
    let mut sse_history = Vec::new();
    for _ in 0..iters {
        let mut changed = false;
        let mut sse = 0.0;
        let mut dists = vec![0.0; pts.len()];
        for (i, p) in pts.iter().enumerate() {
            let (c, d) = nearest(p, &centroids);
            if assignment[i] != c {
                assignment[i] = c;
                changed = true;
            }
            dists[i] = d;
            sse += d;
        }
        sse_history.push(sse);
        if !changed {
            break;
        }

        let mut sums = vec![vec![0.0; dim]; k];
        let mut counts = vec![0usize; k];
        for (p, &c) in pts.iter().zip(&assignment) {
            counts[c] += 1;
            for (s, x) in sums[c].iter_mut().zip(p.iter()) {
                *s += x;
            }
        }
        for c in 0..k {
            if counts[c] > 0 {
                let n = counts[c] as f64;
                centroids[c] = sums[c].iter().map(|s| s / n).collect();
            }
        }
        for c in (0..k).filter(|&c| counts[c] == 0) {
            let far = (0..pts.len())
                .max_by(|&a, &b| dists[a].total_cmp(&dists[b]).then(b.cmp(&a)))
                .expect("nonempty");
            centroids[c] = pts[far].to_vec();
            dists[far] = 0.0;
            assignment[far] = c;
        }
    }
    Ok(KMeans {
        centroids,
        sse_history,
    })
}

fn seed_plus_plus(pts: &[&[f64]], k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let n = pts.len();
    let mut chosen = vec![false; n];
    let first = rng.random_range(0..n);
    chosen[first] = true;
    let mut centroids = vec![pts[first].to_vec()];
    let mut d2: Vec<f64> = pts.iter().map(|p| sq_dist(p, pts[first])).collect();

    while centroids.len() < k {
        let total: f64 = (0..n).filter(|&i| !chosen[i]).map(|i| d2[i]).sum();
        let pick = if total > 0.0 {
            let target = rng.random::<f64>() * total;
            let mut acc = 0.0;
            let mut pick = None;
            for i in (0..n).filter(|&i| !chosen[i]) {
                acc += d2[i];
                if d2[i] > 0.0 && acc > target {
                    pick = Some(i);
                    break;
                }
            }
            // rounding can leave `acc` a hair under `target`
            pick.unwrap_or_else(|| {
                (0..n)
                    .rev()
                    .find(|&i| !chosen[i] && d2[i] > 0.0)
                    .expect("positive weight")
            })
        } else {
            // every remaining point duplicates a centroid
            let remaining: Vec<usize> = (0..n).filter(|&i| !chosen[i]).collect();
            remaining[rng.random_range(0..remaining.len())]
        };
        chosen[pick] = true;
        for (i, p) in pts.iter().enumerate() {
            d2[i] = d2[i].min(sq_dist(p, pts[pick]));
        }
        centroids.push(pts[pick].to_vec());
    }
    centroids
}

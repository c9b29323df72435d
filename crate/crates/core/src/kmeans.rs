//! K-means over sentence vectors with cosine similarity.
//!
//! Zero vectors carry no term evidence and are set aside before clustering.
//! Each vector joins the centroid it is most similar to (ties go to the lower
//! cluster id), centroids are member means, and iteration stops once an
//! assignment repeats or `max_iter` is reached. Clusters that lose all members
//! are dropped.

use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::segmentation::{cosine_unchecked, SentenceVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Init {
    /// First seed: largest norm. Each further seed maximizes its minimum
    /// dissimilarity `1 - cos` to the seeds already chosen. Ties go to the
    /// lowest sentence index.
    #[default]
    FarthestFirst,
    /// `k` distinct non-zero vectors drawn with a seeded ChaCha8 generator.
    Random { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KMeansOptions {
    pub k: usize,
    pub max_iter: usize,
    pub init: Init,
}

impl KMeansOptions {
    pub fn new(k: usize) -> Self {
        KMeansOptions { k, max_iter: 100, init: Init::FarthestFirst }
    }
}

/// Within-cluster dissimilarity `Σ (1 - cos(v, centroid))` around one
/// assignment step, both measured against the same centroids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssignmentStep {
    /// Previous assignment; `None` on the first step.
    pub before: Option<f64>,
    pub after: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringResult {
    /// Sorted 1-based sentence indices per cluster.
    pub clusters: Vec<Vec<usize>>,
    pub centroids: Vec<Vec<f64>>,
    pub iterations: usize,
    pub converged: bool,
    /// Sentences with a zero vector.
    pub excluded: Vec<usize>,
    pub trace: Vec<AssignmentStep>,
}

pub fn kmeans(vectors: &[SentenceVector], k: usize, max_iter: usize) -> Result<ClusteringResult> {
    kmeans_with(vectors, &KMeansOptions { k, max_iter, init: Init::FarthestFirst })
}

pub fn kmeans_with(vectors: &[SentenceVector], opts: &KMeansOptions) -> Result<ClusteringResult> {
    if opts.k == 0 {
        return Err(Error::NonPositive { name: "k" });
    }
    if opts.max_iter == 0 {
        return Err(Error::NonPositive { name: "max_iter" });
    }
    if let Some(first) = vectors.first() {
        if let Some(v) = vectors.iter().find(|v| v.values.len() != first.values.len()) {
            return Err(Error::DimensionMismatch { left: first.values.len(), right: v.values.len() });
        }
    }
    let (points, excluded): (Vec<&SentenceVector>, Vec<&SentenceVector>) = vectors.iter().partition(|v| !v.is_zero());
    let excluded = excluded.into_iter().map(|v| v.sentence).collect();
    if points.len() < opts.k {
        return Err(Error::TooFewVectors { nonzero: points.len(), k: opts.k });
    }

    let mut centroids: Vec<Vec<f64>> = match opts.init {
        Init::FarthestFirst => farthest_first(&points, opts.k),
        Init::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rand::seq::index::sample(&mut rng, points.len(), opts.k).into_iter().collect()
        }
    }
    .into_iter()
    .map(|i| points[i].values.clone())
    .collect();

    let mut labels: Option<Vec<usize>> = None;
    let mut trace = Vec::new();
    let mut converged = false;
    let mut iterations = 0;
    while iterations < opts.max_iter {
        iterations += 1;
        let before = labels.as_ref().map(|l| objective(&points, l, &centroids));
        let assigned = assign(&points, &centroids);
        trace.push(AssignmentStep { before, after: objective(&points, &assigned, &centroids) });
        if labels.as_ref() == Some(&assigned) {
            converged = true;
            break;
        }
        let (next_centroids, relabelled) = update(&points, &assigned, centroids.len());
        centroids = next_centroids;
        labels = Some(relabelled);
    }

    let labels = labels.expect("at least one iteration ran");
    let mut clusters = alloc::vec![Vec::new(); centroids.len()];
    for (p, &l) in points.iter().zip(&labels) {
        clusters[l].push(p.sentence);
    }
    Ok(ClusteringResult { clusters, centroids, iterations, converged, excluded, trace })
}

fn farthest_first(points: &[&SentenceVector], k: usize) -> Vec<usize> {
    let norm2 = |v: &SentenceVector| v.values.iter().map(|x| x * x).sum::<f64>();
    let mut first = 0;
    for (i, p) in points.iter().enumerate() {
        if norm2(p) > norm2(points[first]) {
            first = i;
        }
    }
    let mut chosen = alloc::vec![first];
    let mut min_dissim: Vec<f64> =
        points.iter().map(|p| 1.0 - cosine_unchecked(&p.values, &points[first].values)).collect();
    while chosen.len() < k {
        let mut best: Option<usize> = None;
        for i in 0..points.len() {
            if chosen.contains(&i) {
                continue;
            }
            if best.is_none_or(|b| min_dissim[i] > min_dissim[b]) {
                best = Some(i);
            }
        }
        let next = best.expect("k never exceeds the number of points");
        chosen.push(next);
        for (i, p) in points.iter().enumerate() {
            let d = 1.0 - cosine_unchecked(&p.values, &points[next].values);
            if d < min_dissim[i] {
                min_dissim[i] = d;
            }
        }
    }
    chosen
}

fn assign(points: &[&SentenceVector], centroids: &[Vec<f64>]) -> Vec<usize> {
    points
        .iter()
        .map(|p| {
            let mut best = 0;
            let mut best_sim = f64::NEG_INFINITY;
            for (j, c) in centroids.iter().enumerate() {
                let sim = cosine_unchecked(&p.values, c);
                if sim > best_sim {
                    best = j;
                    best_sim = sim;
                }
            }
            best
        })
        .collect()
}

/// Member means; empty clusters are removed and labels renumbered.
fn update(points: &[&SentenceVector], labels: &[usize], k: usize) -> (Vec<Vec<f64>>, Vec<usize>) {
    let dim = points[0].values.len();
    let mut sums = alloc::vec![alloc::vec![0.0; dim]; k];
    let mut sizes = alloc::vec![0usize; k];
    for (p, &l) in points.iter().zip(labels) {
        sizes[l] += 1;
        for (s, x) in sums[l].iter_mut().zip(&p.values) {
            *s += x;
        }
    }
    let mut new_id = alloc::vec![usize::MAX; k];
    let mut centroids = Vec::with_capacity(k);
    for j in 0..k {
        if sizes[j] > 0 {
            new_id[j] = centroids.len();
            let n = sizes[j] as f64;
            centroids.push(sums[j].iter().map(|s| s / n).collect());
        }
    }
    (centroids, labels.iter().map(|&l| new_id[l]).collect())
}

fn objective(points: &[&SentenceVector], labels: &[usize], centroids: &[Vec<f64>]) -> f64 {
    points.iter().zip(labels).map(|(p, &l)| 1.0 - cosine_unchecked(&p.values, &centroids[l])).sum()
}

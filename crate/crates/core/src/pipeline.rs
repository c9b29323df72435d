//! End-to-end composition: taxonomy learning from an annotated corpus, then
//! concept-oriented segmentation of that corpus.

use alloc::string::String;
use alloc::vec::Vec;

use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::kmeans::{kmeans_with, ClusteringResult, Init, KMeansOptions};
use crate::lattice::ConceptLattice;
use crate::segmentation::{
    build_vectors, cluster_to_segmentation, compute_frequencies, explain_cluster, select_terms, Segment, Segmentation,
    TermFrequencyTable,
};
use crate::taxonomy::{extract_taxonomy, Taxonomy};
use crate::text::{build_context, extract_pairs, filter_frequent, AnnotatedCorpus, FrequentTerms, VerbNounPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TaxonomyParams {
    pub window: usize,
    pub min_pair_freq: usize,
}

impl Default for TaxonomyParams {
    fn default() -> Self {
        TaxonomyParams { window: 5, min_pair_freq: 2 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentParams {
    pub term_fraction: Fraction,
    pub k: usize,
    pub max_iter: usize,
    pub min_share: Fraction,
    pub init: Init,
}

impl Default for SegmentParams {
    fn default() -> Self {
        SegmentParams {
            term_fraction: Fraction::HALF,
            k: 4,
            max_iter: 100,
            min_share: Fraction::HALF,
            init: Init::FarthestFirst,
        }
    }
}

/// Pipeline stage names, as reported in errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    ExtractPairs,
    BuildContext,
    Lattice,
    Taxonomy,
    Segment,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::ExtractPairs => "extract-pairs",
            Stage::BuildContext => "build-context",
            Stage::Lattice => "lattice",
            Stage::Taxonomy => "taxonomy",
            Stage::Segment => "segment",
        }
    }
}

impl core::fmt::Display for Stage {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{stage}: {source}")]
pub struct StageError {
    pub stage: Stage,
    #[source]
    pub source: Error,
}

impl StageError {
    fn at(stage: Stage) -> impl FnOnce(Error) -> StageError {
        move |source| StageError { stage, source }
    }
}

#[derive(Debug, Clone)]
pub struct LearnedTaxonomy {
    pub pairs: Vec<VerbNounPair>,
    pub frequent: FrequentTerms,
    pub context: FormalContext,
    pub lattice: ConceptLattice,
    pub taxonomy: Taxonomy,
}

/// Pairs → frequent terms → context → lattice → taxonomy. Stops with a
/// `build-context` error when no noun or no verb survives filtering.
pub fn learn_taxonomy(corpus: &AnnotatedCorpus, params: TaxonomyParams) -> Result<LearnedTaxonomy, StageError> {
    let pairs = extract_pairs(corpus, params.window).map_err(StageError::at(Stage::ExtractPairs))?;
    let (frequent, context) = context_from_pairs(&pairs, params.min_pair_freq)?;
    let lattice = ConceptLattice::build(&context);
    let taxonomy = extract_taxonomy(&lattice);
    Ok(LearnedTaxonomy { pairs, frequent, context, lattice, taxonomy })
}

/// The `build-context` stage on its own.
pub fn context_from_pairs(
    pairs: &[VerbNounPair],
    min_pair_freq: usize,
) -> Result<(FrequentTerms, FormalContext), StageError> {
    let frequent = filter_frequent(pairs, min_pair_freq).map_err(StageError::at(Stage::BuildContext))?;
    let context = build_context(&frequent.pairs, &frequent.nouns, &frequent.verbs)
        .map_err(StageError::at(Stage::BuildContext))?;
    if context.is_empty() {
        return Err(StageError {
            stage: Stage::BuildContext,
            source: Error::EmptyContext { pairs: pairs.len(), min_freq: min_pair_freq },
        });
    }
    Ok((frequent, context))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SegmentationReport {
    pub k: usize,
    pub m: usize,
    pub selected_terms: Vec<String>,
    pub excluded: Vec<usize>,
    pub segmentations: Vec<ClusterSegmentation>,
    pub iterations: usize,
    pub converged: bool,
}

/// One cluster with its segmentation. Cluster ids start at 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterSegmentation {
    pub members: Vec<usize>,
    pub segmentation: Segmentation,
}

impl ClusterSegmentation {
    pub fn id(&self) -> usize {
        self.segmentation.source_cluster
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segmentation.segments
    }

    pub fn terms(&self) -> &[String] {
        &self.segmentation.explanation
    }
}

/// Frequencies → term selection → vectors → k-means → one segmentation per
/// cluster, explained by its characteristic terms.
pub fn segment_corpus(
    corpus: &AnnotatedCorpus,
    terms: &[String],
    taxonomy: &Taxonomy,
    params: SegmentParams,
) -> Result<SegmentationReport> {
    let table = compute_frequencies(corpus, terms, taxonomy)?;
    let selected = select_terms(&table, params.term_fraction)?;
    let vectors = build_vectors(&table, &selected)?;
    let clustering =
        kmeans_with(&vectors, &KMeansOptions { k: params.k, max_iter: params.max_iter, init: params.init })?;
    report(&table, selected, clustering, corpus.len(), params)
}

fn report(
    table: &TermFrequencyTable,
    selected: Vec<String>,
    clustering: ClusteringResult,
    n: usize,
    params: SegmentParams,
) -> Result<SegmentationReport> {
    let mut segmentations = Vec::with_capacity(clustering.clusters.len());
    for (i, members) in clustering.clusters.iter().enumerate() {
        let segments = cluster_to_segmentation(members, n)?;
        let explanation = explain_cluster(members, table, &selected, params.min_share)?;
        segmentations.push(ClusterSegmentation {
            members: members.clone(),
            segmentation: Segmentation { source_cluster: i + 1, segments, explanation },
        });
    }
    Ok(SegmentationReport {
        k: params.k,
        m: selected.len(),
        selected_terms: selected,
        excluded: clustering.excluded,
        segmentations,
        iterations: clustering.iterations,
        converged: clustering.converged,
    })
}

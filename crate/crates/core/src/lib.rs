//! Concept lattices built from verb/object pairs, the quasi-tree taxonomies
//! they induce, and concept-oriented linear text segmentation by k-means
//! clustering of sentence vectors.
//!
//! The crate is `no_std` and needs only `alloc`; file formats and the CLI live
//! in the `conseg` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bitset;
pub mod context;
pub mod error;
pub mod fixtures;
pub mod fraction;
pub mod kmeans;
pub mod lattice;
pub mod pipeline;
pub mod segmentation;
pub mod taxonomy;
pub mod text;

pub use bitset::BitSet;
pub use context::{ClarifyReport, FormalContext, ReductionReport};
pub use error::{Error, Result};
pub use fraction::Fraction;
pub use kmeans::{kmeans, kmeans_with, ClusteringResult, Init, KMeansOptions};
pub use lattice::{concept_leq, enumerate_concepts, ConceptLattice, FormalConcept};
pub use pipeline::{
    context_from_pairs, learn_taxonomy, segment_corpus, ClusterSegmentation, LearnedTaxonomy, SegmentParams,
    SegmentationReport, Stage, StageError, TaxonomyParams,
};
pub use segmentation::{
    build_vectors, cluster_to_segmentation, compute_frequencies, cosine_similarity, explain_cluster, select_terms,
    Segment, Segmentation, SentenceVector, TermFrequencyTable,
};
pub use taxonomy::{extract_taxonomy, EdgeOrigin, Taxonomy, SYNTHETIC_ROOT};
pub use text::{
    build_context, extract_pairs, filter_frequent, AnnotatedCorpus, AnnotatedToken, FrequentTerms, Pos, VerbNounPair,
};

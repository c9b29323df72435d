//! Concept-term frequency vectors and the mapping from sentence clusters to
//! linear segmentations.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::taxonomy::Taxonomy;
use crate::text::AnnotatedCorpus;

/// Per-sentence term counts and their taxonomy-smoothed totals.
///
/// `smoothed(i, t)` is the count of `t` in sentence `i` plus the counts of
/// the direct descendants of `t`; `total(t)` sums it over all sentences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermFrequencyTable {
    terms: Vec<String>,
    counts: Vec<Vec<u64>>,
    smoothed: Vec<Vec<u64>>,
    totals: Vec<u64>,
}

impl TermFrequencyTable {
    /// Sorted, de-duplicated terms (columns).
    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn sentence_count(&self) -> usize {
        self.counts.len()
    }

    pub fn term_index(&self, term: &str) -> Option<usize> {
        self.terms.binary_search_by(|t| t.as_str().cmp(term)).ok()
    }

    /// Raw count of `term` in sentence `sentence` (1-based).
    pub fn count(&self, sentence: usize, term: &str) -> Option<u64> {
        let t = self.term_index(term)?;
        self.counts.get(sentence.checked_sub(1)?).map(|row| row[t])
    }

    /// Count of `term` plus its direct descendants in sentence `sentence` (1-based).
    pub fn smoothed(&self, sentence: usize, term: &str) -> Option<u64> {
        let t = self.term_index(term)?;
        self.smoothed.get(sentence.checked_sub(1)?).map(|row| row[t])
    }

    pub fn total(&self, term: &str) -> Option<u64> {
        self.term_index(term).map(|t| self.totals[t])
    }

    fn smoothed_row(&self, sentence: usize) -> &[u64] {
        &self.smoothed[sentence - 1]
    }
}

/// Counts lemma matches of every term, then adds the counts of each term's
/// direct descendants. Descendants need not be terms themselves; terms absent
/// from the taxonomy have no descendants.
pub fn compute_frequencies(
    corpus: &AnnotatedCorpus,
    terms: &[String],
    taxonomy: &Taxonomy,
) -> Result<TermFrequencyTable> {
    let terms: Vec<String> = terms.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    if terms.is_empty() {
        return Err(Error::NoTerms);
    }
    let children: Vec<Vec<&str>> = terms.iter().map(|t| taxonomy.direct_descendants(t).unwrap_or_default()).collect();

    let mut counts = Vec::with_capacity(corpus.len());
    let mut smoothed = Vec::with_capacity(corpus.len());
    for (_, tokens) in corpus.sentences() {
        let lemma_count = |term: &str| tokens.iter().filter(|tok| tok.lemma() == term).count() as u64;
        let row: Vec<u64> = terms.iter().map(|t| lemma_count(t)).collect();
        let smooth: Vec<u64> = row
            .iter()
            .zip(&children)
            .map(|(own, kids)| own + kids.iter().map(|k| lemma_count(k)).sum::<u64>())
            .collect();
        counts.push(row);
        smoothed.push(smooth);
    }
    let totals = (0..terms.len()).map(|t| smoothed.iter().map(|row: &Vec<u64>| row[t]).sum()).collect();
    Ok(TermFrequencyTable { terms, counts, smoothed, totals })
}

/// The `ceil(fraction · |terms|)` best supported terms: descending total,
/// ties in ascending lexicographic order.
pub fn select_terms(table: &TermFrequencyTable, fraction: Fraction) -> Result<Vec<String>> {
    if !fraction.is_in_unit_interval() {
        return Err(Error::InvalidFraction(alloc::format!("{fraction} is not in (0, 1]")));
    }
    let m = fraction.ceil_mul(table.terms.len());
    let mut ranked: Vec<usize> = (0..table.terms.len()).collect();
    ranked.sort_by(|&a, &b| table.totals[b].cmp(&table.totals[a]).then_with(|| table.terms[a].cmp(&table.terms[b])));
    Ok(ranked.into_iter().take(m).map(|t| table.terms[t].clone()).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SentenceVector {
    /// 1-based.
    pub sentence: usize,
    pub values: Vec<f64>,
}

impl SentenceVector {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }
}

/// One vector per sentence over the selected terms, in their given order.
pub fn build_vectors(table: &TermFrequencyTable, selected: &[String]) -> Result<Vec<SentenceVector>> {
    if selected.is_empty() {
        return Err(Error::NoTerms);
    }
    let columns = selected
        .iter()
        .map(|t| table.term_index(t).ok_or_else(|| Error::UnknownTerm(t.clone())))
        .collect::<Result<Vec<_>>>()?;
    Ok((1..=table.sentence_count())
        .map(|i| {
            let row = table.smoothed_row(i);
            SentenceVector { sentence: i, values: columns.iter().map(|&c| row[c] as f64).collect() }
        })
        .collect())
}

/// Cosine of the angle between `u` and `v`; 0 when either is the zero vector.
pub fn cosine_similarity(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch { left: u.len(), right: v.len() });
    }
    Ok(cosine_unchecked(u, v))
}

pub(crate) fn cosine_unchecked(u: &[f64], v: &[f64]) -> f64 {
    let (mut dot, mut uu, mut vv) = (0.0, 0.0, 0.0);
    for (a, b) in u.iter().zip(v) {
        dot += a * b;
        uu += a * a;
        vv += b * b;
    }
    if uu == 0.0 || vv == 0.0 {
        return 0.0;
    }
    (dot / (libm::sqrt(uu) * libm::sqrt(vv))).clamp(-1.0, 1.0)
}

/// Inclusive 1-based sentence range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
}

impl Segment {
    pub fn new(start: usize, end: usize) -> Segment {
        Segment { start, end }
    }
}

/// A cluster read as a linear segmentation, with the terms that explain it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segmentation {
    pub source_cluster: usize,
    pub segments: Vec<Segment>,
    pub explanation: Vec<String>,
}

/// Every cluster member opens a segment that runs up to the sentence before
/// the next member; sentences ahead of the first member form a leading
/// segment. The result covers `1..=n` without gaps or overlaps.
pub fn cluster_to_segmentation(members: &[usize], n: usize) -> Result<Vec<Segment>> {
    let members: BTreeSet<usize> = members.iter().copied().collect();
    let (&first, &last) = match (members.first(), members.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(Error::EmptyCluster),
    };
    if first == 0 || last > n {
        let index = if first == 0 { first } else { last };
        return Err(Error::SentenceOutOfRange { index, n });
    }
    let mut segments = Vec::with_capacity(members.len() + 1);
    if first > 1 {
        segments.push(Segment::new(1, first - 1));
    }
    let starts: Vec<usize> = members.into_iter().collect();
    for w in starts.windows(2) {
        segments.push(Segment::new(w[0], w[1] - 1));
    }
    segments.push(Segment::new(last, n));
    Ok(segments)
}

/// Selected terms whose smoothed occurrences fall inside the cluster with a
/// share of at least `min_share` of their corpus total, sorted.
pub fn explain_cluster(
    members: &[usize],
    table: &TermFrequencyTable,
    selected: &[String],
    min_share: Fraction,
) -> Result<Vec<String>> {
    if members.is_empty() {
        return Err(Error::EmptyCluster);
    }
    let n = table.sentence_count();
    if let Some(&bad) = members.iter().find(|&&i| i == 0 || i > n) {
        return Err(Error::SentenceOutOfRange { index: bad, n });
    }
    let members: BTreeSet<usize> = members.iter().copied().collect();
    let mut out = Vec::new();
    for term in selected {
        let t = table.term_index(term).ok_or_else(|| Error::UnknownTerm(term.clone()))?;
        let inside: u64 = members.iter().map(|&i| table.smoothed_row(i)[t]).sum();
        if inside > 0 && min_share.le_ratio(inside, table.totals[t]) {
            out.push(term.clone());
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

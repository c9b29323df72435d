//! Annotated corpora and the text half of taxonomy learning: verb/object pair
//! extraction, frequency filtering and formal-context construction.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::context::FormalContext;
use crate::error::{Error, Result};

/// Coarse part-of-speech tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pos {
    Verb,
    Noun,
    Pron,
    Det,
    Adj,
    Adv,
    Adp,
    Punct,
    Other,
}

impl Pos {
    pub const ALL: [Pos; 9] =
        [Pos::Verb, Pos::Noun, Pos::Pron, Pos::Det, Pos::Adj, Pos::Adv, Pos::Adp, Pos::Punct, Pos::Other];

    pub fn as_str(self) -> &'static str {
        match self {
            Pos::Verb => "VERB",
            Pos::Noun => "NOUN",
            Pos::Pron => "PRON",
            Pos::Det => "DET",
            Pos::Adj => "ADJ",
            Pos::Adv => "ADV",
            Pos::Adp => "ADP",
            Pos::Punct => "PUNCT",
            Pos::Other => "OTHER",
        }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownPos(pub String);

impl FromStr for Pos {
    type Err = UnknownPos;

    fn from_str(s: &str) -> Result<Pos, UnknownPos> {
        Pos::ALL.into_iter().find(|p| p.as_str() == s).ok_or_else(|| UnknownPos(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedToken {
    surface: String,
    lemma: String,
    pos: Pos,
}

impl AnnotatedToken {
    /// The lemma is lowercased; an empty lemma is rejected.
    pub fn new(surface: impl Into<String>, lemma: &str, pos: Pos) -> Result<Self> {
        let surface = surface.into();
        let lemma = lemma.trim().to_lowercase();
        if lemma.is_empty() {
            return Err(Error::EmptyLemma(surface));
        }
        Ok(AnnotatedToken { surface, lemma, pos })
    }

    pub fn surface(&self) -> &str {
        &self.surface
    }

    pub fn lemma(&self) -> &str {
        &self.lemma
    }

    pub fn pos(&self) -> Pos {
        self.pos
    }
}

/// Non-empty sequence of non-empty sentences. Sentence numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedCorpus {
    sentences: Vec<Vec<AnnotatedToken>>,
}

impl AnnotatedCorpus {
    pub fn new(sentences: Vec<Vec<AnnotatedToken>>) -> Result<Self> {
        if sentences.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        if let Some(i) = sentences.iter().position(Vec::is_empty) {
            return Err(Error::EmptySentence(i + 1));
        }
        Ok(AnnotatedCorpus { sentences })
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    /// Sentence `index` (1-based).
    pub fn sentence(&self, index: usize) -> Option<&[AnnotatedToken]> {
        index.checked_sub(1).and_then(|i| self.sentences.get(i)).map(Vec::as_slice)
    }

    /// `(1-based index, tokens)` in order.
    pub fn sentences(&self) -> impl Iterator<Item = (usize, &[AnnotatedToken])> {
        self.sentences.iter().enumerate().map(|(i, s)| (i + 1, s.as_slice()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VerbNounPair {
    pub verb: String,
    pub noun: String,
    pub sentence: usize,
}

/// Finds (verb, direct object) lemma pairs with a left-to-right window rule.
///
/// From each verb, up to `window` following tokens are inspected for the start
/// of a noun run. Determiners, adjectives, adverbs and `OTHER` tokens are
/// skipped; a verb, adposition, pronoun or punctuation token ends the search.
/// Once a noun run starts it extends over consecutive nouns (possibly past the
/// window) and the lemma of its last noun is taken as the head.
pub fn extract_pairs(corpus: &AnnotatedCorpus, window: usize) -> Result<Vec<VerbNounPair>> {
    if window == 0 {
        return Err(Error::NonPositive { name: "window" });
    }
    let mut pairs = Vec::new();
    for (index, tokens) in corpus.sentences() {
        for (i, token) in tokens.iter().enumerate() {
            if token.pos != Pos::Verb {
                continue;
            }
            if let Some(head) = object_head(&tokens[i + 1..], window) {
                pairs.push(VerbNounPair { verb: token.lemma.clone(), noun: head.lemma.clone(), sentence: index });
            }
        }
    }
    Ok(pairs)
}

fn object_head(after_verb: &[AnnotatedToken], window: usize) -> Option<&AnnotatedToken> {
    let start = after_verb.iter().take(window).position(|t| match t.pos {
        Pos::Noun => true,
        Pos::Det | Pos::Adj | Pos::Adv | Pos::Other => false,
        Pos::Verb | Pos::Adp | Pos::Pron | Pos::Punct => true,
    })?;
    if after_verb[start].pos != Pos::Noun {
        return None;
    }
    after_verb[start..].iter().take_while(|t| t.pos == Pos::Noun).last()
}

/// Outcome of frequency filtering.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequentTerms {
    pub verbs: BTreeSet<String>,
    pub nouns: BTreeSet<String>,
    pub pairs: Vec<VerbNounPair>,
}

/// Keeps verbs and nouns occurring in at least `min_freq` pairs, and the pairs
/// whose verb and noun both survive. Each pair occurrence counts once.
pub fn filter_frequent(pairs: &[VerbNounPair], min_freq: usize) -> Result<FrequentTerms> {
    if min_freq == 0 {
        return Err(Error::NonPositive { name: "min_freq" });
    }
    let mut verb_counts: BTreeMap<&str, usize> = BTreeMap::new();
    let mut noun_counts: BTreeMap<&str, usize> = BTreeMap::new();
    for p in pairs {
        *verb_counts.entry(&p.verb).or_default() += 1;
        *noun_counts.entry(&p.noun).or_default() += 1;
    }
    let frequent = |counts: BTreeMap<&str, usize>| -> BTreeSet<String> {
        counts.into_iter().filter(|&(_, c)| c >= min_freq).map(|(t, _)| t.to_string()).collect()
    };
    let verbs = frequent(verb_counts);
    let nouns = frequent(noun_counts);
    let kept = pairs.iter().filter(|p| verbs.contains(&p.verb) && nouns.contains(&p.noun)).cloned().collect();
    Ok(FrequentTerms { verbs, nouns, pairs: kept })
}

/// Context with the nouns as objects and the verbs as attributes, both sorted;
/// noun `n` has verb `v` iff some pair `(v, n)` exists.
pub fn build_context(
    pairs: &[VerbNounPair],
    nouns: &BTreeSet<String>,
    verbs: &BTreeSet<String>,
) -> Result<FormalContext> {
    let objects: Vec<String> = nouns.iter().cloned().collect();
    let attributes: Vec<String> = verbs.iter().cloned().collect();
    let mut incidence = Vec::with_capacity(pairs.len());
    for p in pairs {
        let g = objects.binary_search(&p.noun).map_err(|_| Error::UnknownTerm(p.noun.clone()))?;
        let m = attributes.binary_search(&p.verb).map_err(|_| Error::UnknownTerm(p.verb.clone()))?;
        incidence.push((g, m));
    }
    FormalContext::from_pairs(objects, attributes, incidence)
}

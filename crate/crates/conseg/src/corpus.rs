//! Annotated corpus and pair list files.
//!
//! Corpus: UTF-8, one token per line as `surface<TAB>lemma<TAB>POS`, a blank
//! line ends a sentence, `#` starts a comment line.
//! Pairs: `verb<TAB>noun<TAB>sentence` per line.

use std::fmt::Write as _;

use conseg_core::{AnnotatedCorpus, AnnotatedToken, Pos, VerbNounPair};

use crate::error::FormatError;

pub fn parse_corpus(input: &str) -> Result<AnnotatedCorpus, FormatError> {
    let mut sentences = Vec::new();
    let mut current = Vec::new();
    for (i, raw) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.starts_with('#') {
            continue;
        }
        if line.trim().is_empty() {
            if !current.is_empty() {
                sentences.push(std::mem::take(&mut current));
            }
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        let [surface, lemma, pos] = cols.as_slice() else {
            return Err(FormatError::at(line_no, format!("expected 3 tab-separated columns, found {}", cols.len())));
        };
        let pos: Pos = pos
            .trim()
            .parse()
            .map_err(|e: conseg_core::text::UnknownPos| FormatError::at(line_no, format!("unknown tag `{}`", e.0)))?;
        let token = AnnotatedToken::new(*surface, lemma, pos).map_err(|e| FormatError::at(line_no, e.to_string()))?;
        current.push(token);
    }
    if !current.is_empty() {
        sentences.push(current);
    }
    Ok(AnnotatedCorpus::new(sentences)?)
}

pub fn write_corpus(corpus: &AnnotatedCorpus) -> String {
    let mut out = String::new();
    for (_, tokens) in corpus.sentences() {
        for t in tokens {
            let _ = writeln!(out, "{}\t{}\t{}", t.surface(), t.lemma(), t.pos());
        }
        out.push('\n');
    }
    out
}

pub fn write_pairs(pairs: &[VerbNounPair]) -> String {
    let mut out = String::new();
    for p in pairs {
        let _ = writeln!(out, "{}\t{}\t{}", p.verb, p.noun, p.sentence);
    }
    out
}

pub fn parse_pairs(input: &str) -> Result<Vec<VerbNounPair>, FormatError> {
    let mut pairs = Vec::new();
    for (i, raw) in input.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        let [verb, noun, sentence] = cols.as_slice() else {
            return Err(FormatError::at(i + 1, format!("expected 3 tab-separated columns, found {}", cols.len())));
        };
        let sentence =
            sentence.trim().parse().map_err(|_| FormatError::at(i + 1, format!("bad sentence index `{sentence}`")))?;
        if verb.is_empty() || noun.is_empty() {
            return Err(FormatError::at(i + 1, "empty lemma"));
        }
        pairs.push(VerbNounPair { verb: verb.to_string(), noun: noun.to_string(), sentence });
    }
    Ok(pairs)
}

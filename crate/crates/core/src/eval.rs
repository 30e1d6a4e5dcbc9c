//! Corpus evaluation: cleaning, gold-standard comparison and dictionary
//! statistics.
//!
//! A token counts as correct when its gold lexical form is among the
//! analyzer's outputs. There is no lexical selection, so any of several
//! analyses may match.

use std::collections::HashSet;
use std::fmt;
use std::ops::ControlFlow;

use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

use crate::dictionary::MonodixDictionary;
use crate::expand::{check_dictionary, walk_entry_unchecked, ExpandError, Segment};
use crate::fst::LetterTransducer;
use crate::stream::{tokenize, StreamToken};
use crate::symbol::Symbol;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("corpus and gold standard disagree at token {index}: {reason}")]
    AlignmentError { index: usize, reason: String },
    #[error("nothing to evaluate")]
    EmptyEvaluation,
    #[error("gold standard line {line}: expected `surface<TAB>lexical-form`")]
    GoldFormat { line: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleaningConfig {
    pub stopwords: HashSet<String>,
    /// Drop punctuation and other non-word material.
    pub strip_delimiters: bool,
    /// Drop whitespace runs.
    pub collapse_whitespace: bool,
}

impl Default for CleaningConfig {
    fn default() -> Self {
        CleaningConfig { stopwords: HashSet::new(), strip_delimiters: true, collapse_whitespace: true }
    }
}

impl CleaningConfig {
    pub fn with_stopwords<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        CleaningConfig {
            stopwords: words.into_iter().map(|w| w.as_ref().nfc().collect()).collect(),
            ..Default::default()
        }
    }

    /// Reads a stopword list: one word per line, blank lines ignored.
    pub fn parse_stopwords(text: &str) -> HashSet<String> {
        text.lines().map(str::trim).filter(|l| !l.is_empty()).map(|l| l.nfc().collect()).collect()
    }
}

/// Tokenizes `text` and removes separators and stopwords, keeping order.
///
/// With `strip_delimiters` off, each run of non-space characters between
/// words is kept as a token; with `collapse_whitespace` off, whitespace runs
/// are kept verbatim.
pub fn clean_corpus(text: &str, is_word_char: impl Fn(char) -> bool, config: &CleaningConfig) -> Vec<String> {
    let text: String = text.nfc().collect();
    let mut out = Vec::new();
    for token in tokenize(&text, is_word_char) {
        match token {
            StreamToken::Word(w) => {
                if !config.stopwords.contains(w) {
                    out.push(w.to_string());
                }
            }
            StreamToken::Separator(sep) => {
                if config.strip_delimiters && config.collapse_whitespace {
                    continue;
                }
                let mut start = 0;
                let mut prev_space = None;
                let mut emit = |piece: &str, space: bool| {
                    let keep = if space { !config.collapse_whitespace } else { !config.strip_delimiters };
                    if keep && !piece.is_empty() {
                        out.push(piece.to_string());
                    }
                };
                for (i, c) in sep.char_indices() {
                    let space = c.is_whitespace();
                    if let Some(p) = prev_space {
                        if p != space {
                            emit(&sep[start..i], p);
                            start = i;
                        }
                    }
                    prev_space = Some(space);
                }
                if let Some(p) = prev_space {
                    emit(&sep[start..], p);
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldRecord {
    pub surface: String,
    pub expected: String,
}

/// Parses `surface<TAB>expected` lines. Empty lines are skipped.
pub fn parse_gold(text: &str) -> Result<Vec<GoldRecord>, EvalError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split('\t');
        match (fields.next(), fields.next(), fields.next()) {
            (Some(surface), Some(expected), None) if !surface.is_empty() && !expected.is_empty() => {
                out.push(GoldRecord { surface: surface.nfc().collect(), expected: expected.nfc().collect() })
            }
            _ => return Err(EvalError::GoldFormat { line: i + 1 }),
        }
    }
    Ok(out)
}

/// Counts of one evaluation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EvalReport {
    pub total: usize,
    pub correct: usize,
    pub wrong: usize,
}

impl EvalReport {
    /// Accuracy in tenths of a percent, rounded half up.
    pub fn accuracy_tenths(&self) -> Option<u64> {
        if self.total == 0 {
            return None;
        }
        let (c, t) = (self.correct as u64, self.total as u64);
        Some((2000 * c + t) / (2 * t))
    }

    /// Accuracy as a percentage, e.g. `"72.8%"`.
    pub fn accuracy(&self) -> Option<String> {
        self.accuracy_tenths().map(|a| format!("{}.{}%", a / 10, a % 10))
    }

    pub fn merge(self, other: EvalReport) -> EvalReport {
        EvalReport {
            total: self.total + other.total,
            correct: self.correct + other.correct,
            wrong: self.wrong + other.wrong,
        }
    }
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Total words\t{}", self.total)?;
        writeln!(f, "Correctly recognize\t{}", self.correct)?;
        writeln!(f, "Wrongly recognize\t{}", self.wrong)?;
        writeln!(f, "Accuracy\t{}", self.accuracy().unwrap_or_else(|| "n/a".into()))
    }
}

/// Plain-text analyses of a word (no stream escaping).
pub fn analyses(analyzer: &LetterTransducer, word: &str) -> Vec<String> {
    let ids: Option<Vec<_>> = word.chars().map(|c| analyzer.symbols().char_id(c)).collect();
    match ids {
        Some(ids) => analyzer.lookup(&ids).iter().map(|o| analyzer.symbols().render_ids(o)).collect(),
        None => Vec::new(),
    }
}

/// Compares each token's analyses against the aligned gold record.
pub fn evaluate<S: AsRef<str>>(
    tokens: &[S],
    gold: &[GoldRecord],
    analyzer: &LetterTransducer,
) -> Result<EvalReport, EvalError> {
    if tokens.len() != gold.len() {
        return Err(EvalError::AlignmentError {
            index: tokens.len().min(gold.len()),
            reason: format!("{} tokens but {} gold records", tokens.len(), gold.len()),
        });
    }
    if tokens.is_empty() {
        return Err(EvalError::EmptyEvaluation);
    }
    let mut report = EvalReport::default();
    for (index, (token, record)) in tokens.iter().zip(gold).enumerate() {
        let token = token.as_ref();
        if token != record.surface {
            return Err(EvalError::AlignmentError {
                index,
                reason: format!("token {token:?} vs gold {:?}", record.surface),
            });
        }
        report.total += 1;
        if analyses(analyzer, token).contains(&record.expected) {
            report.correct += 1;
        } else {
            report.wrong += 1;
        }
    }
    Ok(report)
}

/// Section entry counts by main category: the first tag reachable in each
/// entry's expansion.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DictStats {
    /// Categories in sdef order, then undeclared tags in first-seen order.
    pub categories: Vec<(String, usize)>,
    /// Entries whose expansion is nonempty but carries no tag at all.
    pub untagged: usize,
}

impl DictStats {
    pub fn get(&self, tag: &str) -> usize {
        self.categories.iter().find(|(t, _)| t == tag).map_or(0, |(_, n)| *n)
    }

    pub fn total(&self) -> usize {
        self.categories.iter().map(|(_, n)| n).sum::<usize>() + self.untagged
    }
}

/// One `tag count` line per category; untagged entries are listed as `-`.
impl fmt::Display for DictStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (tag, n) in &self.categories {
            writeln!(f, "{tag} {n}")?;
        }
        if self.untagged > 0 {
            writeln!(f, "- {}", self.untagged)?;
        }
        Ok(())
    }
}

pub fn dict_stats(dict: &MonodixDictionary) -> Result<DictStats, ExpandError> {
    check_dictionary(dict)?;
    let table = dict.paradigm_table();
    let mut counts: Vec<(String, usize)> = dict.tag_defs.iter().map(|t| (t.clone(), 0)).collect();
    let mut untagged = 0;
    for entry in dict.entries() {
        let mut reached = false;
        let mut category: Option<&str> = None;
        let _ = walk_entry_unchecked(entry, &table, &mut |segments, _| {
            reached = true;
            let first_tag = segments.iter().find_map(|seg| match seg {
                Segment::Pair(_, right) => right.iter().find_map(|s| match s {
                    Symbol::Tag(t) => Some(t.as_str()),
                    _ => None,
                }),
                Segment::Identity(_) => None,
            });
            match first_tag {
                Some(t) => {
                    category = Some(t);
                    ControlFlow::Break(())
                }
                None => ControlFlow::Continue(()),
            }
        });
        match category {
            Some(tag) => match counts.iter_mut().find(|(t, _)| t == tag) {
                Some((_, n)) => *n += 1,
                None => counts.push((tag.to_string(), 1)),
            },
            None if reached => untagged += 1,
            None => {}
        }
    }
    counts.retain(|(_, n)| *n > 0);
    Ok(DictStats { categories: counts, untagged })
}

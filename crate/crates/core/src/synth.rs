//! Deterministic synthetic data: random dictionaries for property checks, a
//! large dictionary with a fixed category mix, an evaluation corpus with a
//! known score, and an endless word stream for throughput runs.

use std::io::{self, Read};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dictionary::{Entry, EntryItem, MonodixDictionary, Paradigm, Restriction, Section};
use crate::symbol::{chars_of, Symbol};

/// Bounds for [`random_dictionary`].
#[derive(Debug, Clone, Copy)]
pub struct RandomDictParams {
    pub max_roots: usize,
    pub max_paradigms: usize,
    /// Longest chain of paradigm references from a section entry.
    pub max_depth: usize,
    /// Probability of an entry carrying a one-way restriction.
    pub restricted: f64,
}

impl Default for RandomDictParams {
    fn default() -> Self {
        RandomDictParams { max_roots: 50, max_paradigms: 5, max_depth: 3, restricted: 0.1 }
    }
}

pub const RANDOM_CHARS: [char; 8] = ['a', 'b', 'c', 'd', 'ক', 'খ', 'া', 'ি'];
pub const RANDOM_TAGS: [&str; 7] = ["n", "v", "sg", "pl", "def", "p1", "p2"];

fn random_chars(rng: &mut impl Rng, min: usize, max: usize) -> Vec<Symbol> {
    let n = rng.gen_range(min..=max);
    (0..n).map(|_| Symbol::Char(*RANDOM_CHARS.choose(rng).unwrap())).collect()
}

fn random_lexical(rng: &mut impl Rng) -> Vec<Symbol> {
    let mut out = random_chars(rng, 0, 2);
    for _ in 0..rng.gen_range(0..=2) {
        out.push(Symbol::tag(*RANDOM_TAGS.choose(rng).unwrap()));
    }
    out
}

fn random_restriction(rng: &mut impl Rng, p: f64) -> Restriction {
    if rng.gen_bool(p) {
        if rng.gen_bool(0.5) {
            Restriction::LeftToRightOnly
        } else {
            Restriction::RightToLeftOnly
        }
    } else {
        Restriction::Bidirectional
    }
}

/// A valid random dictionary. Paradigm `i` only refers to paradigms with a
/// higher index, so the reference graph is acyclic by construction.
pub fn random_dictionary(rng: &mut impl Rng, params: RandomDictParams) -> MonodixDictionary {
    let n_paradigms = rng.gen_range(0..=params.max_paradigms);
    // depth[i]: longest reference chain starting at paradigm i, counting i
    let mut depth = vec![0usize; n_paradigms];
    let mut paradigms: Vec<Option<Paradigm>> = vec![None; n_paradigms];
    for i in (0..n_paradigms).rev() {
        let mut entries = Vec::new();
        let mut d = 1;
        for _ in 0..rng.gen_range(1..=3) {
            let mut items = Vec::new();
            if rng.gen_bool(0.15) {
                items.push(EntryItem::Identity(random_chars(rng, 1, 2).iter().filter_map(Symbol::as_char).collect()));
            } else {
                items.push(EntryItem::pair(random_chars(rng, 0, 3), random_lexical(rng)));
            }
            let targets: Vec<usize> = (i + 1..n_paradigms).filter(|&j| depth[j] < params.max_depth).collect();
            if !targets.is_empty() && rng.gen_bool(0.4) {
                let j = *targets.choose(rng).unwrap();
                d = d.max(depth[j] + 1);
                items.push(EntryItem::ParadigmRef(format!("P{j}")));
                if rng.gen_bool(0.2) {
                    items.push(EntryItem::pair(random_chars(rng, 0, 1), random_lexical(rng)));
                }
            }
            entries.push(Entry::new(items).with_restriction(random_restriction(rng, params.restricted)));
        }
        depth[i] = d;
        paradigms[i] = Some(Paradigm { name: format!("P{i}"), entries });
    }
    let paradigms: Vec<Paradigm> = paradigms.into_iter().map(Option::unwrap).collect();

    let mut entries = Vec::new();
    for _ in 0..rng.gen_range(1..=params.max_roots) {
        let root: String = random_chars(rng, 1, 4).iter().filter_map(Symbol::as_char).collect();
        let mut items = vec![EntryItem::Identity(root.clone())];
        let usable: Vec<usize> = (0..paradigms.len()).filter(|&j| depth[j] <= params.max_depth).collect();
        if !usable.is_empty() && rng.gen_bool(0.8) {
            items.push(EntryItem::ParadigmRef(format!("P{}", usable.choose(rng).unwrap())));
        } else {
            items.push(EntryItem::pair(random_chars(rng, 0, 2), random_lexical(rng)));
        }
        entries.push(Entry::new(items).with_lemma(root).with_restriction(random_restriction(rng, params.restricted)));
    }

    MonodixDictionary {
        alphabet: RANDOM_CHARS.iter().copied().collect(),
        tag_defs: RANDOM_TAGS.iter().map(|t| t.to_string()).collect(),
        paradigms,
        sections: vec![Section::new("main", entries)],
    }
}

/// Category sizes of the large synthetic dictionary.
pub const LEXICON_COUNTS: [(&str, usize); 4] = [("n", 22368), ("prn", 121), ("v", 1844), ("adv", 232)];

const CONSONANTS: [char; 30] = [
    'ক', 'খ', 'গ', 'ঘ', 'ঙ', 'চ', 'ছ', 'জ', 'ঝ', 'ঞ', 'ট', 'ঠ', 'ড', 'ঢ', 'ণ', 'ত', 'থ', 'দ', 'ধ', 'ন', 'প', 'ফ', 'ব',
    'ভ', 'ম', 'য', 'ৰ', 'ল', 'ৱ', 'স',
];
const VOWEL_SIGNS: [&str; 11] = ["", "া", "ি", "ী", "ু", "ূ", "ৃ", "ে", "ৈ", "ো", "ৌ"];

/// The `i`-th synthetic root; distinct for `i` below 108,900.
pub fn synthetic_root(i: usize) -> String {
    const SPACE: usize = 30 * 11 * 30 * 11;
    // 7919 is prime and coprime to SPACE, so this permutes the root space
    let mut k = (i * 7919) % SPACE;
    let mut out = String::new();
    for _ in 0..2 {
        out.push(CONSONANTS[k % 30]);
        k /= 30;
        out.push_str(VOWEL_SIGNS[k % 11]);
        k /= 11;
    }
    out
}

fn pair(left: &str, right: &str) -> EntryItem {
    EntryItem::pair(chars_of(left), crate::symbol::parse_symbols(right).expect("valid lexical form"))
}

fn alt(items: Vec<EntryItem>) -> Entry {
    Entry::new(items)
}

/// A 24,565-entry dictionary whose section entries split into nouns,
/// pronouns, verbs and adverbs as in [`LEXICON_COUNTS`]. Noun plurals nest a
/// case paradigm.
pub fn synthetic_lexicon() -> MonodixDictionary {
    let tags = ["n", "np", "prn", "v", "adv", "sg", "pl", "def", "nom", "gen", "acc", "pres", "past", "imp", "p3"];
    let case = Paradigm {
        name: "case".into(),
        entries: vec![alt(vec![pair("", "<nom>")]), alt(vec![pair("ৰ", "<gen>")]), alt(vec![pair("ক", "<acc>")])],
    };
    let noun = Paradigm {
        name: "noun".into(),
        entries: vec![
            alt(vec![pair("", "<n><sg>")]),
            alt(vec![pair("জন", "<n><sg><def>")]),
            alt(vec![pair("বোৰ", "<n><pl>"), EntryItem::ParadigmRef("case".into())]),
        ],
    };
    let pronoun = Paradigm {
        name: "pronoun".into(),
        entries: vec![alt(vec![pair("", "<prn><nom>")]), alt(vec![pair("ৰ", "<prn><gen>")])],
    };
    let verb = Paradigm {
        name: "verb".into(),
        entries: vec![
            alt(vec![pair("ে", "<v><pres><p3>")]),
            alt(vec![pair("িছিল", "<v><past><p3>")]),
            alt(vec![pair("া", "<v><imp>")]),
        ],
    };
    let adverb = Paradigm { name: "adverb".into(), entries: vec![alt(vec![pair("", "<adv>")])] };

    let mut entries = Vec::new();
    let mut next = 0;
    for (category, count) in LEXICON_COUNTS {
        let paradigm = match category {
            "n" => "noun",
            "prn" => "pronoun",
            "v" => "verb",
            _ => "adverb",
        };
        for _ in 0..count {
            let root = synthetic_root(next);
            next += 1;
            entries.push(
                Entry::new(vec![EntryItem::Identity(root.clone()), EntryItem::ParadigmRef(paradigm.into())])
                    .with_lemma(root),
            );
        }
    }

    MonodixDictionary {
        alphabet: crate::fixtures::asm_mini().alphabet,
        tag_defs: tags.iter().map(|t| t.to_string()).collect(),
        paradigms: vec![case, noun, pronoun, verb, adverb],
        sections: vec![Section::new("main", entries)],
    }
}

/// Files of the synthetic evaluation set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalFixture {
    pub corpus: String,
    pub gold: String,
    pub stopwords: String,
}

pub const EVAL_TOTAL: usize = 1120;
pub const EVAL_CORRECT: usize = 815;
pub const EVAL_STOPWORD_OCCURRENCES: usize = 80;

const STOPWORDS: [&str; 4] = ["মোৰ", "আৰু", "এই", "কি"];

/// Words absent from the miniature dictionary, with the analysis a
/// linguist would expect.
const UNKNOWN: [(&str, &str); 10] = [
    ("বস্তুবোৰৰ", "বস্তু<n><pl><gen>"),
    ("দাম", "দাম<n><sg>"),
    ("নাই", "নাই<v><neg>"),
    ("ভাল", "ভাল<adj>"),
    ("বৰ", "বৰ<adv>"),
    ("আহিলেনে", "আহ<v><past><q>"),
    ("তোমালোকৰ", "তুমি<prn><pl><gen>"),
    ("খবৰ", "খবৰ<n><sg>"),
    ("মালা", "মালা<np>"),
    ("অনল", "অনল<np>"),
];

/// Every surface/analysis pair of the miniature dictionary.
const KNOWN: [(&str, &str); 7] = [
    ("চকু", "চকু<n><sg>"),
    ("চকুযুৰি", "চকু<n><pl>"),
    ("মানুহ", "মানুহ<n><sg>"),
    ("মানুহজন", "মানুহ<n><sg><def>"),
    ("জন", "জন<n><sg>"),
    ("জন", "জন<np>"),
    ("জনজন", "জন<n><sg><def>"),
];

/// A 1,200-token raw corpus over the miniature dictionary: 80 stopword
/// occurrences, and 1,120 remaining tokens of which 815 have their gold
/// analysis produced by the analyzer.
pub fn eval_fixture() -> EvalFixture {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ab1e2);
    let mut tokens: Vec<(&str, Option<&str>)> = Vec::with_capacity(1200);
    for i in 0..EVAL_CORRECT {
        let (s, g) = KNOWN[i % KNOWN.len()];
        tokens.push((s, Some(g)));
    }
    for i in 0..EVAL_TOTAL - EVAL_CORRECT {
        let (s, g) = UNKNOWN[i % UNKNOWN.len()];
        tokens.push((s, Some(g)));
    }
    tokens.shuffle(&mut rng);
    for _ in 0..EVAL_STOPWORD_OCCURRENCES {
        let at = rng.gen_range(0..=tokens.len());
        tokens.insert(at, (*STOPWORDS.choose(&mut rng).unwrap(), None));
    }

    let mut corpus = String::new();
    let mut gold = String::new();
    let mut in_line = 0;
    let mut line_len = rng.gen_range(6..=14);
    for (surface, expected) in tokens {
        if in_line > 0 {
            corpus.push_str(if rng.gen_bool(0.1) {
                ", "
            } else if rng.gen_bool(0.05) {
                "  "
            } else {
                " "
            });
        }
        corpus.push_str(surface);
        in_line += 1;
        if in_line == line_len {
            corpus.push_str(if rng.gen_bool(0.2) { "?\n" } else { "।\n" });
            in_line = 0;
            line_len = rng.gen_range(6..=14);
        }
        if let Some(expected) = expected {
            gold.push_str(surface);
            gold.push('\t');
            gold.push_str(expected);
            gold.push('\n');
        }
    }
    if in_line > 0 {
        corpus.push_str("।\n");
    }
    let stopwords = STOPWORDS.iter().map(|w| format!("{w}\n")).collect();
    EvalFixture { corpus, gold, stopwords }
}

/// An endless-looking text source of `tokens` words drawn from `vocabulary`,
/// produced one line at a time so that nothing but the current line is held
/// in memory.
pub struct WordStream {
    vocabulary: Vec<String>,
    remaining: usize,
    rng: ChaCha8Rng,
    line: Vec<u8>,
    pos: usize,
}

impl WordStream {
    pub fn new(vocabulary: Vec<String>, tokens: usize, seed: u64) -> Self {
        assert!(!vocabulary.is_empty());
        WordStream { vocabulary, remaining: tokens, rng: ChaCha8Rng::seed_from_u64(seed), line: Vec::new(), pos: 0 }
    }

    fn refill(&mut self) {
        self.line.clear();
        self.pos = 0;
        let n = self.remaining.min(12);
        for i in 0..n {
            if i > 0 {
                self.line.push(b' ');
            }
            let w = &self.vocabulary[self.rng.gen_range(0..self.vocabulary.len())];
            self.line.extend_from_slice(w.as_bytes());
        }
        if n > 0 {
            self.line.extend_from_slice("।\n".as_bytes());
        }
        self.remaining -= n;
    }
}

impl Read for WordStream {
    fn read(&mut self, buf: &mut [u8]) -> io::Result<usize> {
        if self.pos == self.line.len() {
            self.refill();
        }
        let n = buf.len().min(self.line.len() - self.pos);
        buf[..n].copy_from_slice(&self.line[self.pos..self.pos + n]);
        self.pos += n;
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn random_dictionaries_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let d = random_dictionary(&mut rng, RandomDictParams::default());
            assert!(d.validate().is_empty(), "{}", d.validate());
            assert!(d.entry_count() <= 50 && d.paradigms.len() <= 5);
        }
    }

    #[test]
    fn synthetic_roots_are_distinct() {
        let roots: HashSet<String> = (0..24565).map(synthetic_root).collect();
        assert_eq!(roots.len(), 24565);
    }

    #[test]
    fn eval_fixture_counts() {
        let f = eval_fixture();
        assert_eq!(f.gold.lines().count(), EVAL_TOTAL);
        let raw = f.corpus.split(|c: char| c.is_whitespace() || c == ',' || c == '?' || c == '।');
        assert_eq!(raw.filter(|w| !w.is_empty()).count(), EVAL_TOTAL + EVAL_STOPWORD_OCCURRENCES);
        assert_eq!(eval_fixture(), f);
    }

    #[test]
    fn word_stream_length() {
        let mut text = String::new();
        WordStream::new(vec!["ক".into(), "খ".into()], 30, 3).read_to_string(&mut text).unwrap();
        assert_eq!(text.split_whitespace().count(), 30);
        assert_eq!(text.lines().count(), 3);
    }
}

//! Reference semantics used by the integration tests.
//!
//! The oracle expands a dictionary by plain recursion over strings, with tags
//! written inline as `<tag>`, and tracks directionality as two booleans. It
//! shares nothing with the library's expander or transducer code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use ltkit::dictionary::{Entry, EntryItem, MonodixDictionary, Restriction};
use ltkit::fst::{Direction, LetterTransducer};
use ltkit::symbol::Symbol;
use rand::seq::SliceRandom;
use rand::Rng;

/// `(surface, lexical, usable left-to-right, usable right-to-left)`
pub type OraclePair = (String, String, bool, bool);

fn side(symbols: &[Symbol]) -> String {
    let mut s = String::new();
    for sym in symbols {
        match sym {
            Symbol::Char(c) => s.push(*c),
            Symbol::Tag(t) => {
                s.push('<');
                s.push_str(t);
                s.push('>');
            }
            Symbol::Epsilon => {}
        }
    }
    s
}

fn flags(r: Restriction) -> (bool, bool) {
    match r {
        Restriction::Bidirectional => (true, true),
        Restriction::LeftToRightOnly => (true, false),
        Restriction::RightToLeftOnly => (false, true),
    }
}

fn entry_strings(d: &MonodixDictionary, e: &Entry) -> Vec<OraclePair> {
    let (lr, rl) = flags(e.restriction);
    let mut acc = vec![(String::new(), String::new(), lr, rl)];
    for item in &e.items {
        let parts: Vec<OraclePair> = match item {
            EntryItem::Identity(s) => vec![(s.clone(), s.clone(), true, true)],
            EntryItem::Pair { left, right } => vec![(side(left), side(right), true, true)],
            EntryItem::ParadigmRef(name) => {
                let p = d.paradigms.iter().find(|p| &p.name == name).expect("defined paradigm");
                p.entries.iter().flat_map(|e| entry_strings(d, e)).collect()
            }
        };
        let mut next = Vec::new();
        for (s, l, a, b) in &acc {
            for (s2, l2, a2, b2) in &parts {
                let (lr, rl) = (*a && *a2, *b && *b2);
                if lr || rl {
                    next.push((format!("{s}{s2}"), format!("{l}{l2}"), lr, rl));
                }
            }
        }
        acc = next;
    }
    acc
}

/// Every path of every section entry.
pub fn oracle_pairs(d: &MonodixDictionary) -> BTreeSet<OraclePair> {
    d.sections.iter().flat_map(|s| &s.entries).flat_map(|e| entry_strings(d, e)).collect()
}

/// Expected lookup results per input string for one direction.
pub fn oracle_map(d: &MonodixDictionary, dir: Direction) -> BTreeMap<String, BTreeSet<String>> {
    let mut map: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for (s, l, lr, rl) in oracle_pairs(d) {
        match dir {
            Direction::LeftToRight if lr => map.entry(s).or_default().insert(l),
            Direction::RightToLeft if rl => map.entry(l).or_default().insert(s),
            _ => continue,
        };
    }
    map
}

/// Splits `a<n><sg>` into symbols without going through the library parser.
pub fn symbols_of(text: &str) -> Vec<Symbol> {
    let mut out = Vec::new();
    let mut rest = text;
    while let Some(c) = rest.chars().next() {
        if c == '<' {
            let end = rest.find('>').expect("closed tag");
            out.push(Symbol::Tag(rest[1..end].to_string()));
            rest = &rest[end + 1..];
        } else {
            out.push(Symbol::Char(c));
            rest = &rest[c.len_utf8()..];
        }
    }
    out
}

pub fn lookup_set(t: &LetterTransducer, input: &str) -> BTreeSet<String> {
    t.lookup_symbols(&symbols_of(input)).iter().map(|o| side(o)).collect()
}

/// Random probe strings in the shape of inputs for `dir`, most of which are
/// not in the dictionary.
pub fn random_probes(rng: &mut impl Rng, dir: Direction, n: usize) -> Vec<String> {
    const CHARS: [&str; 8] = ["a", "b", "c", "d", "ক", "খ", "া", "ি"];
    const TAGS: [&str; 7] = ["<n>", "<v>", "<sg>", "<pl>", "<def>", "<p1>", "<p2>"];
    (0..n)
        .map(|_| {
            let mut s: String = (0..rng.gen_range(0..=7)).map(|_| *CHARS.choose(rng).unwrap()).collect();
            if dir == Direction::RightToLeft {
                for _ in 0..rng.gen_range(0..=3) {
                    s.push_str(TAGS.choose(rng).unwrap());
                }
            }
            s
        })
        .collect()
}

/// Compares `t` with the oracle on every dictionary input and on `probes`.
/// Returns the first disagreement.
pub fn check_against_oracle(
    t: &LetterTransducer,
    expected: &BTreeMap<String, BTreeSet<String>>,
    probes: &[String],
) -> Result<usize, String> {
    let empty = BTreeSet::new();
    let mut checked = 0;
    for input in expected.keys().chain(probes) {
        let want = expected.get(input).unwrap_or(&empty);
        let got = lookup_set(t, input);
        if &got != want {
            return Err(format!("{input:?}: expected {want:?}, got {got:?}"));
        }
        checked += 1;
    }
    Ok(checked)
}

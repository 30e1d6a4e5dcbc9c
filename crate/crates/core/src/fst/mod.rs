//! Letter transducers: compilation from a dictionary, lookup, minimization
//! and the on-disk binary format.

mod binary;
mod compile;
mod minimize;

use std::collections::BTreeSet;

use unicode_normalization::UnicodeNormalization;

pub use crate::dictionary::Direction;
pub use binary::{load, save, LoadError, MAGIC, VERSION};
pub use compile::compile;
pub use minimize::minimize;

use crate::symbol::{parse_symbols, Symbol, SymbolId, SymbolTable, EPSILON};

pub type StateId = u32;

/// One `input:output` labelled edge. Either side may be epsilon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub input: SymbolId,
    pub output: SymbolId,
    pub target: StateId,
}

impl Transition {
    pub(crate) fn label(&self) -> (SymbolId, SymbolId) {
        (self.input, self.output)
    }
}

/// A compiled analyzer or generator.
///
/// State 0 is the initial state. Each state's transitions are kept sorted by
/// `(input, output, target)`, so epsilon-input edges come first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterTransducer {
    symbols: SymbolTable,
    states: Vec<Vec<Transition>>,
    finals: Vec<bool>,
    direction: Direction,
    minimized: bool,
}

impl LetterTransducer {
    /// A transducer with a single non-final state.
    pub fn empty(symbols: SymbolTable, direction: Direction) -> Self {
        LetterTransducer { symbols, states: vec![Vec::new()], finals: vec![false], direction, minimized: false }
    }

    /// Assembles a transducer, sorting each state's transitions.
    ///
    /// Callers guarantee that every target and symbol id is in range.
    pub(crate) fn from_parts(
        symbols: SymbolTable,
        mut states: Vec<Vec<Transition>>,
        finals: Vec<bool>,
        direction: Direction,
        minimized: bool,
    ) -> Self {
        debug_assert_eq!(states.len(), finals.len());
        debug_assert!(!states.is_empty());
        for trans in &mut states {
            trans.sort_unstable();
        }
        LetterTransducer { symbols, states, finals, direction, minimized }
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn is_minimized(&self) -> bool {
        self.minimized
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn transition_count(&self) -> usize {
        self.states.iter().map(Vec::len).sum()
    }

    pub fn transitions(&self, state: StateId) -> &[Transition] {
        &self.states[state as usize]
    }

    pub fn is_final(&self, state: StateId) -> bool {
        self.finals[state as usize]
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        self.finals.iter().enumerate().filter(|(_, f)| **f).map(|(i, _)| i as StateId)
    }

    /// True when no path leads from the initial state to a final state.
    pub fn is_empty(&self) -> bool {
        let mut seen = vec![false; self.states.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(s) = stack.pop() {
            if self.finals[s] {
                return false;
            }
            for t in &self.states[s] {
                if !seen[t.target as usize] {
                    seen[t.target as usize] = true;
                    stack.push(t.target as usize);
                }
            }
        }
        true
    }

    /// Whether `c` is a character symbol of this transducer, i.e. part of
    /// the alphabet used to split text into words.
    pub fn is_word_char(&self, c: char) -> bool {
        self.symbols.char_id(c).is_some()
    }

    /// All outputs for `input`, sorted by symbol-id sequence with duplicates
    /// removed. Epsilons never appear in the results.
    pub fn lookup(&self, input: &[SymbolId]) -> Vec<Vec<SymbolId>> {
        let mut results = BTreeSet::new();
        let mut out = Vec::new();
        self.search(0, input, &mut out, &mut results, 0);
        results.into_iter().collect()
    }

    fn search(
        &self,
        state: StateId,
        input: &[SymbolId],
        out: &mut Vec<SymbolId>,
        results: &mut BTreeSet<Vec<SymbolId>>,
        epsilon_run: usize,
    ) {
        let s = state as usize;
        if input.is_empty() && self.finals[s] {
            results.insert(out.clone());
        }
        let trans = &self.states[s];
        let eps_end = trans.partition_point(|t| t.input == EPSILON);
        // bounded so that a loaded cyclic machine cannot loop forever
        if epsilon_run < self.states.len() {
            for t in &trans[..eps_end] {
                self.follow(t, input, out, results, epsilon_run + 1);
            }
        }
        if let Some((&next, rest)) = input.split_first() {
            if next == EPSILON {
                return;
            }
            let lo = eps_end + trans[eps_end..].partition_point(|t| t.input < next);
            let hi = lo + trans[lo..].partition_point(|t| t.input == next);
            for t in &trans[lo..hi] {
                self.follow(t, rest, out, results, 0);
            }
        }
    }

    fn follow(
        &self,
        t: &Transition,
        input: &[SymbolId],
        out: &mut Vec<SymbolId>,
        results: &mut BTreeSet<Vec<SymbolId>>,
        epsilon_run: usize,
    ) {
        if t.output != EPSILON {
            out.push(t.output);
        }
        self.search(t.target, input, out, results, epsilon_run);
        if t.output != EPSILON {
            out.pop();
        }
    }

    /// Symbol ids for `symbols`; `None` if any is unknown to this transducer.
    pub fn encode(&self, symbols: &[Symbol]) -> Option<Vec<SymbolId>> {
        self.symbols.encode(symbols)
    }

    /// Looks up symbols, returning decoded symbol sequences.
    pub fn lookup_symbols(&self, input: &[Symbol]) -> Vec<Vec<Symbol>> {
        let Some(ids) = self.encode(input) else {
            return Vec::new();
        };
        self.lookup(&ids)
            .into_iter()
            .map(|out| out.iter().filter_map(|&id| self.symbols.symbol(id).cloned()).collect())
            .collect()
    }

    /// Looks up a word or lexical form written as text (`চকু<n><pl>`).
    /// Unparseable or unknown input yields no results.
    pub fn lookup_str(&self, text: &str) -> Vec<String> {
        let text: String = text.nfc().collect();
        let Some(symbols) = parse_symbols(&text) else {
            return Vec::new();
        };
        let Some(ids) = self.encode(&symbols) else {
            return Vec::new();
        };
        self.lookup(&ids).iter().map(|out| self.symbols.render_ids(out)).collect()
    }
}

#[cfg(test)]
mod tests;

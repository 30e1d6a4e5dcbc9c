use std::collections::HashMap;
use std::ops::ControlFlow;

use super::{LetterTransducer, StateId, Transition};
use crate::dictionary::{Direction, EntryItem, MonodixDictionary};
use crate::expand::{walk_dictionary, ExpandError, Segment};
use crate::symbol::{Symbol, SymbolId, SymbolTable, EPSILON};

/// Epsilon, then declared tags in sdef order, then any undeclared tag in
/// first-use order, then every character sorted by scalar value.
fn symbol_table(dict: &MonodixDictionary) -> SymbolTable {
    let mut table = SymbolTable::new();
    for tag in &dict.tag_defs {
        table.intern(Symbol::Tag(tag.clone()));
    }
    let entries = dict.paradigms.iter().flat_map(|p| &p.entries).chain(dict.entries());
    for entry in entries {
        for item in &entry.items {
            if let EntryItem::Pair { left, right } = item {
                for sym in left.iter().chain(right).filter(|s| s.is_tag()) {
                    table.intern(sym.clone());
                }
            }
        }
    }
    for c in dict.characters() {
        table.intern(Symbol::Char(c));
    }
    table
}

struct TrieBuilder {
    states: Vec<Vec<Transition>>,
    finals: Vec<bool>,
    edges: HashMap<(StateId, SymbolId, SymbolId), StateId>,
}

impl TrieBuilder {
    fn new() -> Self {
        TrieBuilder { states: vec![Vec::new()], finals: vec![false], edges: HashMap::new() }
    }

    fn step(&mut self, from: StateId, input: SymbolId, output: SymbolId) -> StateId {
        if let Some(&to) = self.edges.get(&(from, input, output)) {
            return to;
        }
        let to = self.states.len() as StateId;
        self.states.push(Vec::new());
        self.finals.push(false);
        self.states[from as usize].push(Transition { input, output, target: to });
        self.edges.insert((from, input, output), to);
        to
    }
}

/// Compiles `dict` into a letter transducer.
///
/// Left-to-right reads surface → lexical (an analyzer); right-to-left reads
/// lexical → surface (a generator). Paths whose restriction excludes `dir`
/// are skipped. Within each entry item the two sides are paired symbol by
/// symbol and the shorter side is padded with trailing epsilons; items are
/// aligned independently of each other. Identical label prefixes share trie
/// states.
pub fn compile(dict: &MonodixDictionary, dir: Direction) -> Result<LetterTransducer, ExpandError> {
    let symbols = symbol_table(dict);
    let id = |s: &Symbol| symbols.id(s).expect("symbol table covers the dictionary");
    let mut trie = TrieBuilder::new();

    let _ = walk_dictionary(dict, |_, _, segments, restriction| {
        if !restriction.admits(dir) {
            return ControlFlow::Continue(());
        }
        let mut state = 0;
        for seg in segments {
            match *seg {
                Segment::Identity(text) => {
                    for c in text.chars() {
                        let sym = symbols.char_id(c).expect("symbol table covers the dictionary");
                        state = trie.step(state, sym, sym);
                    }
                }
                Segment::Pair(left, right) => {
                    let (input, output) = match dir {
                        Direction::LeftToRight => (left, right),
                        Direction::RightToLeft => (right, left),
                    };
                    for i in 0..input.len().max(output.len()) {
                        let a = input.get(i).map_or(EPSILON, id);
                        let b = output.get(i).map_or(EPSILON, id);
                        if a == EPSILON && b == EPSILON {
                            continue;
                        }
                        state = trie.step(state, a, b);
                    }
                }
            }
        }
        trie.finals[state as usize] = true;
        ControlFlow::Continue(())
    })?;

    Ok(LetterTransducer::from_parts(symbols, trie.states, trie.finals, dir, false))
}

//! Transducer symbols and the table that numbers them.

use std::collections::HashMap;
use std::fmt;

/// Ordinal of a symbol inside a [`SymbolTable`]. Id 0 is always epsilon.
pub type SymbolId = u32;

/// The reserved id of the empty symbol.
pub const EPSILON: SymbolId = 0;

/// One atomic transducer symbol.
///
/// Tags are atomic: `<n><pl>` is two symbols, never five characters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Epsilon,
    Char(char),
    Tag(String),
}

impl Symbol {
    pub fn tag(name: impl Into<String>) -> Self {
        Symbol::Tag(name.into())
    }

    pub fn is_tag(&self) -> bool {
        matches!(self, Symbol::Tag(_))
    }

    pub fn as_char(&self) -> Option<char> {
        match self {
            Symbol::Char(c) => Some(*c),
            _ => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Epsilon => Ok(()),
            Symbol::Char(c) => write!(f, "{c}"),
            Symbol::Tag(t) => write!(f, "<{t}>"),
        }
    }
}

/// Returns true if `name` is usable as a tag: nonempty, no angle brackets, no whitespace.
pub fn is_valid_tag_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c == '<' || c == '>' || c.is_whitespace())
}

/// Characters of `text` as `Symbol::Char`s.
pub fn chars_of(text: &str) -> Vec<Symbol> {
    text.chars().map(Symbol::Char).collect()
}

/// Renders a symbol sequence as text, tags as `<name>`, epsilons dropped.
pub fn render(symbols: &[Symbol]) -> String {
    let mut out = String::new();
    for s in symbols {
        match s {
            Symbol::Epsilon => {}
            Symbol::Char(c) => out.push(*c),
            Symbol::Tag(t) => {
                out.push('<');
                out.push_str(t);
                out.push('>');
            }
        }
    }
    out
}

/// Splits a lexical form such as `চকু<n><pl>` into symbols.
///
/// Returns `None` when a `<` is never closed or encloses an invalid tag name.
pub fn parse_symbols(text: &str) -> Option<Vec<Symbol>> {
    let mut out = Vec::new();
    let mut chars = text.chars();
    while let Some(c) = chars.next() {
        if c == '<' {
            let mut name = String::new();
            loop {
                match chars.next() {
                    Some('>') => break,
                    Some(ch) => name.push(ch),
                    None => return None,
                }
            }
            if !is_valid_tag_name(&name) {
                return None;
            }
            out.push(Symbol::Tag(name));
        } else {
            out.push(Symbol::Char(c));
        }
    }
    Some(out)
}

/// A bijection between symbols and dense ids, with epsilon at id 0.
#[derive(Debug, Clone)]
pub struct SymbolTable {
    symbols: Vec<Symbol>,
    index: HashMap<Symbol, SymbolId>,
}

impl Default for SymbolTable {
    fn default() -> Self {
        Self::new()
    }
}

impl PartialEq for SymbolTable {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for SymbolTable {}

impl SymbolTable {
    pub fn new() -> Self {
        let mut index = HashMap::new();
        index.insert(Symbol::Epsilon, EPSILON);
        SymbolTable { symbols: vec![Symbol::Epsilon], index }
    }

    /// Returns the id of `symbol`, adding it if absent.
    pub fn intern(&mut self, symbol: Symbol) -> SymbolId {
        if let Some(&id) = self.index.get(&symbol) {
            return id;
        }
        let id = self.symbols.len() as SymbolId;
        self.index.insert(symbol.clone(), id);
        self.symbols.push(symbol);
        id
    }

    pub fn id(&self, symbol: &Symbol) -> Option<SymbolId> {
        self.index.get(symbol).copied()
    }

    pub fn char_id(&self, c: char) -> Option<SymbolId> {
        self.index.get(&Symbol::Char(c)).copied()
    }

    pub fn symbol(&self, id: SymbolId) -> Option<&Symbol> {
        self.symbols.get(id as usize)
    }

    /// Number of symbols including epsilon.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// True when only epsilon is present.
    pub fn is_empty(&self) -> bool {
        self.symbols.len() == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = (SymbolId, &Symbol)> {
        self.symbols.iter().enumerate().map(|(i, s)| (i as SymbolId, s))
    }

    /// Maps a symbol sequence to ids; `None` if any symbol is unknown.
    pub fn encode(&self, symbols: &[Symbol]) -> Option<Vec<SymbolId>> {
        symbols.iter().map(|s| self.id(s)).collect()
    }

    /// Renders ids as text; epsilons and unknown ids are skipped.
    pub fn render_ids(&self, ids: &[SymbolId]) -> String {
        let mut out = String::new();
        self.render_ids_into(ids, &mut out);
        out
    }

    pub fn render_ids_into(&self, ids: &[SymbolId], out: &mut String) {
        for &id in ids {
            match self.symbol(id) {
                Some(Symbol::Char(c)) => out.push(*c),
                Some(Symbol::Tag(t)) => {
                    out.push('<');
                    out.push_str(t);
                    out.push('>');
                }
                _ => {}
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_is_zero() {
        let mut t = SymbolTable::new();
        assert_eq!(t.id(&Symbol::Epsilon), Some(EPSILON));
        assert_eq!(t.intern(Symbol::Epsilon), EPSILON);
        assert_eq!(t.intern(Symbol::tag("n")), 1);
        assert_eq!(t.intern(Symbol::Char('a')), 2);
        assert_eq!(t.intern(Symbol::tag("n")), 1);
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn parse_and_render_lexical_form() {
        let syms = parse_symbols("চকু<n><pl>").unwrap();
        assert_eq!(syms.len(), 5);
        assert_eq!(syms[3], Symbol::tag("n"));
        assert_eq!(render(&syms), "চকু<n><pl>");
        assert!(parse_symbols("a<n").is_none());
        assert!(parse_symbols("a<>").is_none());
        assert!(parse_symbols("a<x y>").is_none());
    }

    #[test]
    fn tag_names() {
        assert!(is_valid_tag_name("sg"));
        assert!(!is_valid_tag_name(""));
        assert!(!is_valid_tag_name("a b"));
        assert!(!is_valid_tag_name("a>"));
    }
}

//! In-memory monolingual dictionary: alphabet, tag definitions, paradigms and
//! entry sections, plus the structural validation every other module relies on.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::symbol::{is_valid_tag_name, Symbol};

/// Which way a dictionary is read when it is compiled.
///
/// Left-to-right yields an analyzer (surface in, lexical out), right-to-left a
/// generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    LeftToRight,
    RightToLeft,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::LeftToRight => Direction::RightToLeft,
            Direction::RightToLeft => Direction::LeftToRight,
        }
    }
}

/// Per-entry directionality (the `r` attribute of an `e` element).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Restriction {
    #[default]
    Bidirectional,
    LeftToRightOnly,
    RightToLeftOnly,
}

impl Restriction {
    /// Combines two restrictions met along one expansion path. `None` means
    /// the path is usable in neither direction.
    pub fn intersect(self, other: Restriction) -> Option<Restriction> {
        use Restriction::*;
        match (self, other) {
            (Bidirectional, x) | (x, Bidirectional) => Some(x),
            (a, b) if a == b => Some(a),
            _ => None,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Restriction::Bidirectional => Restriction::Bidirectional,
            Restriction::LeftToRightOnly => Restriction::RightToLeftOnly,
            Restriction::RightToLeftOnly => Restriction::LeftToRightOnly,
        }
    }

    pub fn admits(self, dir: Direction) -> bool {
        !matches!(
            (self, dir),
            (Restriction::LeftToRightOnly, Direction::RightToLeft)
                | (Restriction::RightToLeftOnly, Direction::LeftToRight)
        )
    }
}

/// One item of an entry, concatenated in order with its neighbours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryItem {
    /// The same characters on both sides (`<i>`).
    Identity(String),
    /// Distinct left (surface) and right (lexical) material (`<p><l/><r/></p>`).
    Pair { left: Vec<Symbol>, right: Vec<Symbol> },
    /// Continue through every entry of the named paradigm (`<par n=".."/>`).
    ParadigmRef(String),
}

impl EntryItem {
    pub fn pair(left: Vec<Symbol>, right: Vec<Symbol>) -> Self {
        EntryItem::Pair { left, right }
    }

    fn flip(&self) -> Self {
        match self {
            EntryItem::Pair { left, right } => EntryItem::Pair { left: right.clone(), right: left.clone() },
            other => other.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Entry {
    pub lemma: Option<String>,
    pub restriction: Restriction,
    pub items: Vec<EntryItem>,
}

impl Entry {
    pub fn new(items: Vec<EntryItem>) -> Self {
        Entry { lemma: None, restriction: Restriction::Bidirectional, items }
    }

    pub fn with_lemma(mut self, lemma: impl Into<String>) -> Self {
        self.lemma = Some(lemma.into());
        self
    }

    pub fn with_restriction(mut self, restriction: Restriction) -> Self {
        self.restriction = restriction;
        self
    }

    fn flip(&self) -> Self {
        Entry {
            lemma: self.lemma.clone(),
            restriction: self.restriction.flip(),
            items: self.items.iter().map(EntryItem::flip).collect(),
        }
    }

    /// Names of the paradigms this entry refers to directly, in item order.
    pub fn paradigm_refs(&self) -> impl Iterator<Item = &str> {
        self.items.iter().filter_map(|item| match item {
            EntryItem::ParadigmRef(name) => Some(name.as_str()),
            _ => None,
        })
    }
}

/// A named set of alternative continuations (`<pardef>`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Paradigm {
    pub name: String,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub id: String,
    /// The `type` attribute. Every type is expanded like `standard`.
    pub kind: String,
    pub entries: Vec<Entry>,
}

impl Section {
    pub fn new(id: impl Into<String>, entries: Vec<Entry>) -> Self {
        Section { id: id.into(), kind: "standard".to_string(), entries }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MonodixDictionary {
    pub alphabet: BTreeSet<char>,
    pub tag_defs: Vec<String>,
    /// Paradigms in declaration order.
    pub paradigms: Vec<Paradigm>,
    pub sections: Vec<Section>,
}

/// Name-indexed view of a dictionary's paradigms. The first definition of a
/// duplicated name wins.
pub type ParadigmTable<'a> = HashMap<&'a str, &'a Paradigm>;

impl MonodixDictionary {
    pub fn paradigm_table(&self) -> ParadigmTable<'_> {
        let mut table = HashMap::with_capacity(self.paradigms.len());
        for p in &self.paradigms {
            table.entry(p.name.as_str()).or_insert(p);
        }
        table
    }

    pub fn paradigm(&self, name: &str) -> Option<&Paradigm> {
        self.paradigms.iter().find(|p| p.name == name)
    }

    /// All section entries in document order.
    pub fn entries(&self) -> impl Iterator<Item = &Entry> {
        self.sections.iter().flat_map(|s| s.entries.iter())
    }

    pub fn entry_count(&self) -> usize {
        self.sections.iter().map(|s| s.entries.len()).sum()
    }

    /// Every character appearing in the alphabet or in any entry.
    pub fn characters(&self) -> BTreeSet<char> {
        let mut chars = self.alphabet.clone();
        let mut add_entry = |e: &Entry| {
            for item in &e.items {
                match item {
                    EntryItem::Identity(t) => chars.extend(t.chars()),
                    EntryItem::Pair { left, right } => {
                        chars.extend(left.iter().chain(right).filter_map(Symbol::as_char))
                    }
                    EntryItem::ParadigmRef(_) => {}
                }
            }
        };
        self.paradigms.iter().flat_map(|p| &p.entries).for_each(&mut add_entry);
        self.entries().for_each(&mut add_entry);
        chars
    }

    /// Reads the dictionary right to left: pair sides swapped, directional
    /// restrictions exchanged.
    pub fn flip(&self) -> MonodixDictionary {
        MonodixDictionary {
            alphabet: self.alphabet.clone(),
            tag_defs: self.tag_defs.clone(),
            paradigms: self
                .paradigms
                .iter()
                .map(|p| Paradigm { name: p.name.clone(), entries: p.entries.iter().map(Entry::flip).collect() })
                .collect(),
            sections: self
                .sections
                .iter()
                .map(|s| Section {
                    id: s.id.clone(),
                    kind: s.kind.clone(),
                    entries: s.entries.iter().map(Entry::flip).collect(),
                })
                .collect(),
        }
    }

    /// Paradigm names ordered so that every paradigm precedes the paradigms
    /// it references. Fails with the first cycle found.
    pub fn paradigm_order(&self) -> Result<Vec<&str>, Vec<String>> {
        let graph = ParadigmGraph::new(self);
        if let Some(cycle) = graph.cycles().into_iter().next() {
            return Err(cycle);
        }
        let mut post = graph.postorder();
        post.reverse();
        Ok(post)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut push = |location: Location, kind: ViolationKind| violations.push(Violation { location, kind });

        let mut tags = HashSet::new();
        for (index, tag) in self.tag_defs.iter().enumerate() {
            if !is_valid_tag_name(tag) {
                push(Location::TagDefs { index }, ViolationKind::InvalidTagName(tag.clone()));
            }
            if !tags.insert(tag.as_str()) {
                push(Location::TagDefs { index }, ViolationKind::DuplicateTag(tag.clone()));
            }
        }

        let table = self.paradigm_table();
        let mut seen = HashSet::new();
        for p in &self.paradigms {
            let here = Location::Paradigm { name: p.name.clone(), entry: None };
            if !seen.insert(p.name.as_str()) {
                push(here.clone(), ViolationKind::DuplicateParadigm(p.name.clone()));
            }
            if p.entries.is_empty() {
                push(here, ViolationKind::EmptyParadigm(p.name.clone()));
            }
            for (i, e) in p.entries.iter().enumerate() {
                let loc = Location::Paradigm { name: p.name.clone(), entry: Some(i) };
                if e.lemma.is_some() {
                    push(loc.clone(), ViolationKind::LemmaInParadigm);
                }
                check_entry(e, &loc, &tags, &table, &mut push);
            }
        }

        for s in &self.sections {
            for (i, e) in s.entries.iter().enumerate() {
                let loc = Location::Section { id: s.id.clone(), entry: i };
                if e.items.is_empty() {
                    push(loc.clone(), ViolationKind::EmptyEntry);
                }
                check_entry(e, &loc, &tags, &table, &mut push);
            }
        }

        for cycle in ParadigmGraph::new(self).cycles() {
            let location = Location::Paradigm { name: cycle[0].clone(), entry: None };
            push(location, ViolationKind::ParadigmCycle(cycle));
        }

        ValidationReport { violations }
    }
}

fn check_entry(
    entry: &Entry,
    loc: &Location,
    tags: &HashSet<&str>,
    paradigms: &ParadigmTable<'_>,
    push: &mut impl FnMut(Location, ViolationKind),
) {
    for item in &entry.items {
        match item {
            EntryItem::Identity(_) => {}
            EntryItem::Pair { left, right } => {
                for sym in left.iter().chain(right) {
                    match sym {
                        Symbol::Tag(t) if !tags.contains(t.as_str()) => {
                            push(loc.clone(), ViolationKind::UndefinedTag(t.clone()))
                        }
                        Symbol::Epsilon => push(loc.clone(), ViolationKind::EpsilonInEntry),
                        _ => {}
                    }
                }
            }
            EntryItem::ParadigmRef(name) => {
                if !paradigms.contains_key(name.as_str()) {
                    push(loc.clone(), ViolationKind::UndefinedParadigm(name.clone()));
                }
            }
        }
    }
}

/// Paradigm → referenced paradigms, restricted to defined names.
pub(crate) struct ParadigmGraph<'a> {
    names: Vec<&'a str>,
    edges: Vec<Vec<usize>>,
}

impl<'a> ParadigmGraph<'a> {
    pub(crate) fn new(dict: &'a MonodixDictionary) -> Self {
        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut names = Vec::new();
        for p in &dict.paradigms {
            if !index.contains_key(p.name.as_str()) {
                index.insert(p.name.as_str(), names.len());
                names.push(p.name.as_str());
            }
        }
        let mut edges = vec![Vec::new(); names.len()];
        for p in &dict.paradigms {
            let from = index[p.name.as_str()];
            for target in p.entries.iter().flat_map(Entry::paradigm_refs) {
                if let Some(&to) = index.get(target) {
                    if !edges[from].contains(&to) {
                        edges[from].push(to);
                    }
                }
            }
        }
        ParadigmGraph { names, edges }
    }

    /// One cycle per back edge of a depth-first walk in declaration order.
    pub(crate) fn cycles(&self) -> Vec<Vec<String>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let n = self.names.len();
        let mut marks = vec![Mark::New; n];
        let mut cycles = Vec::new();
        for root in 0..n {
            if marks[root] != Mark::New {
                continue;
            }
            // (node, next edge index)
            let mut stack = vec![(root, 0usize)];
            marks[root] = Mark::Active;
            while let Some(&mut (node, ref mut next)) = stack.last_mut() {
                if let Some(&to) = self.edges[node].get(*next) {
                    *next += 1;
                    match marks[to] {
                        Mark::New => {
                            marks[to] = Mark::Active;
                            stack.push((to, 0));
                        }
                        Mark::Active => {
                            let start = stack.iter().position(|&(v, _)| v == to).unwrap();
                            cycles.push(stack[start..].iter().map(|&(v, _)| self.names[v].to_string()).collect());
                        }
                        Mark::Done => {}
                    }
                } else {
                    marks[node] = Mark::Done;
                    stack.pop();
                }
            }
        }
        cycles
    }

    fn postorder(&self) -> Vec<&'a str> {
        let n = self.names.len();
        let mut visited = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for root in 0..n {
            if visited[root] {
                continue;
            }
            visited[root] = true;
            let mut stack = vec![(root, 0usize)];
            while let Some(&mut (node, ref mut next)) = stack.last_mut() {
                if let Some(&to) = self.edges[node].get(*next) {
                    *next += 1;
                    if !visited[to] {
                        visited[to] = true;
                        stack.push((to, 0));
                    }
                } else {
                    order.push(self.names[node]);
                    stack.pop();
                }
            }
        }
        order
    }
}

/// Where in the dictionary a violation was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    TagDefs { index: usize },
    Paradigm { name: String, entry: Option<usize> },
    Section { id: String, entry: usize },
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::TagDefs { index } => write!(f, "sdefs[{index}]"),
            Location::Paradigm { name, entry: None } => write!(f, "pardef {name:?}"),
            Location::Paradigm { name, entry: Some(i) } => write!(f, "pardef {name:?} entry {i}"),
            Location::Section { id, entry } => write!(f, "section {id:?} entry {entry}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    UndefinedParadigm(String),
    ParadigmCycle(Vec<String>),
    UndefinedTag(String),
    DuplicateTag(String),
    InvalidTagName(String),
    DuplicateParadigm(String),
    EmptyParadigm(String),
    EmptyEntry,
    LemmaInParadigm,
    EpsilonInEntry,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationKind::UndefinedParadigm(n) => write!(f, "reference to undefined paradigm {n:?}"),
            ViolationKind::ParadigmCycle(names) => write!(f, "paradigm cycle {}", names.join(" -> ")),
            ViolationKind::UndefinedTag(t) => write!(f, "tag <{t}> is not declared in sdefs"),
            ViolationKind::DuplicateTag(t) => write!(f, "tag <{t}> declared twice"),
            ViolationKind::InvalidTagName(t) => write!(f, "invalid tag name {t:?}"),
            ViolationKind::DuplicateParadigm(n) => write!(f, "paradigm {n:?} defined twice"),
            ViolationKind::EmptyParadigm(n) => write!(f, "paradigm {n:?} has no entries"),
            ViolationKind::EmptyEntry => write!(f, "entry has no items"),
            ViolationKind::LemmaInParadigm => write!(f, "paradigm entry carries a lemma"),
            ViolationKind::EpsilonInEntry => write!(f, "entry contains an explicit epsilon"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub location: Location,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.kind)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn kinds(&self) -> Vec<&ViolationKind> {
        self.violations.iter().map(|v| &v.kind).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

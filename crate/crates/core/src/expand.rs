//! Enumeration of every (surface, lexical) pair a dictionary denotes.
//!
//! Each section entry is walked depth-first in document order; a paradigm
//! reference branches over the paradigm's entries. Duplicates reached along
//! distinct paths are all reported.

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::dictionary::{Entry, EntryItem, MonodixDictionary, Paradigm, ParadigmGraph, ParadigmTable, Restriction};
use crate::symbol::{render, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpandError {
    #[error("reference to undefined paradigm {0:?}")]
    UndefinedParadigm(String),
    #[error("paradigm cycle {}", .0.join(" -> "))]
    ParadigmCycle(Vec<String>),
}

/// One fully expanded dictionary path.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MorphPair {
    pub surface: Vec<Symbol>,
    pub lexical: Vec<Symbol>,
    pub restriction: Restriction,
    pub lemma: Option<String>,
}

impl MorphPair {
    pub fn surface_text(&self) -> String {
        render(&self.surface)
    }

    pub fn lexical_text(&self) -> String {
        render(&self.lexical)
    }

    /// The same path read right to left.
    pub fn flip(&self) -> MorphPair {
        MorphPair {
            surface: self.lexical.clone(),
            lexical: self.surface.clone(),
            restriction: self.restriction.flip(),
            lemma: self.lemma.clone(),
        }
    }
}

/// `surface:lexical`, prefixed with `>` for left-to-right-only and `<` for
/// right-to-left-only paths.
impl fmt::Display for MorphPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.restriction {
            Restriction::Bidirectional => {}
            Restriction::LeftToRightOnly => f.write_str(">")?,
            Restriction::RightToLeftOnly => f.write_str("<")?,
        }
        write!(f, "{}:{}", render(&self.surface), render(&self.lexical))
    }
}

/// A contiguous piece of one path, as contributed by a single entry item.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Segment<'a> {
    Identity(&'a str),
    Pair(&'a [Symbol], &'a [Symbol]),
}

pub(crate) fn flatten(segments: &[Segment<'_>]) -> (Vec<Symbol>, Vec<Symbol>) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for seg in segments {
        match *seg {
            Segment::Identity(t) => {
                left.extend(t.chars().map(Symbol::Char));
                right.extend(t.chars().map(Symbol::Char));
            }
            Segment::Pair(l, r) => {
                left.extend_from_slice(l);
                right.extend_from_slice(r);
            }
        }
    }
    (left, right)
}

type Visit<'v, 'a> = dyn FnMut(&[Segment<'a>], Restriction) -> ControlFlow<()> + 'v;

struct Walker<'a, 't, 'v> {
    table: &'t ParadigmTable<'a>,
    segments: Vec<Segment<'a>>,
    visit: &'v mut Visit<'v, 'a>,
}

impl<'a> Walker<'a, '_, '_> {
    /// `pending` holds the item lists still to be consumed, innermost last.
    /// It is restored to its incoming state before returning.
    fn walk(&mut self, pending: &mut Vec<&'a [EntryItem]>, restriction: Restriction) -> ControlFlow<()> {
        let Some(top) = pending.pop() else {
            return (self.visit)(&self.segments, restriction);
        };
        let flow = match top.split_first() {
            None => self.walk(pending, restriction),
            Some((item, rest)) => {
                pending.push(rest);
                let flow = match item {
                    EntryItem::Identity(text) => {
                        self.segments.push(Segment::Identity(text));
                        let flow = self.walk(pending, restriction);
                        self.segments.pop();
                        flow
                    }
                    EntryItem::Pair { left, right } => {
                        self.segments.push(Segment::Pair(left, right));
                        let flow = self.walk(pending, restriction);
                        self.segments.pop();
                        flow
                    }
                    EntryItem::ParadigmRef(name) => {
                        let paradigm = self.table[name.as_str()];
                        let mut flow = ControlFlow::Continue(());
                        for alt in &paradigm.entries {
                            let Some(r) = restriction.intersect(alt.restriction) else {
                                continue;
                            };
                            pending.push(&alt.items);
                            flow = self.walk(pending, r);
                            pending.pop();
                            if flow.is_break() {
                                break;
                            }
                        }
                        flow
                    }
                };
                pending.pop();
                flow
            }
        };
        pending.push(top);
        flow
    }
}

/// Walks the paths of one entry without checking references.
pub(crate) fn walk_entry_unchecked<'a>(
    entry: &'a Entry,
    table: &ParadigmTable<'a>,
    visit: &mut Visit<'_, 'a>,
) -> ControlFlow<()> {
    let mut walker = Walker { table, segments: Vec::new(), visit };
    walker.walk(&mut vec![entry.items.as_slice()], entry.restriction)
}

/// Checks that every paradigm reachable from `entry` exists and that no
/// reference cycle is reachable.
fn check_entry<'a>(entry: &Entry, table: &ParadigmTable<'a>) -> Result<(), ExpandError> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Active,
        Done,
    }
    fn visit<'a>(
        name: &'a str,
        table: &ParadigmTable<'a>,
        marks: &mut HashMap<&'a str, Mark>,
        path: &mut Vec<&'a str>,
    ) -> Result<(), ExpandError> {
        match marks.get(name) {
            Some(Mark::Done) => return Ok(()),
            Some(Mark::Active) => {
                let start = path.iter().position(|n| *n == name).unwrap_or(0);
                return Err(ExpandError::ParadigmCycle(path[start..].iter().map(|s| s.to_string()).collect()));
            }
            None => {}
        }
        let paradigm: &'a Paradigm = table.get(name).ok_or_else(|| ExpandError::UndefinedParadigm(name.to_string()))?;
        marks.insert(name, Mark::Active);
        path.push(name);
        for target in paradigm.entries.iter().flat_map(Entry::paradigm_refs) {
            visit(target, table, marks, path)?;
        }
        path.pop();
        marks.insert(name, Mark::Done);
        Ok(())
    }
    let mut marks = HashMap::new();
    let mut path = Vec::new();
    for name in entry.paradigm_refs() {
        let (key, _) = table.get_key_value(name).ok_or_else(|| ExpandError::UndefinedParadigm(name.to_string()))?;
        visit(key, table, &mut marks, &mut path)?;
    }
    Ok(())
}

/// Every path of `entry`, depth-first in document order.
pub fn expand_entry(entry: &Entry, paradigms: &ParadigmTable<'_>) -> Result<Vec<MorphPair>, ExpandError> {
    check_entry(entry, paradigms)?;
    let mut out = Vec::new();
    let _ = walk_entry_unchecked(entry, paradigms, &mut |segs, restriction| {
        out.push(to_pair(segs, restriction, entry));
        ControlFlow::Continue(())
    });
    Ok(out)
}

fn to_pair(segments: &[Segment<'_>], restriction: Restriction, entry: &Entry) -> MorphPair {
    let (surface, lexical) = flatten(segments);
    MorphPair { surface, lexical, restriction, lemma: entry.lemma.clone() }
}

/// Fails on the first undefined reference or cycle anywhere in `dict`.
pub(crate) fn check_dictionary(dict: &MonodixDictionary) -> Result<(), ExpandError> {
    if let Some(cycle) = ParadigmGraph::new(dict).cycles().into_iter().next() {
        return Err(ExpandError::ParadigmCycle(cycle));
    }
    let table = dict.paradigm_table();
    let all_entries = dict.paradigms.iter().flat_map(|p| &p.entries).chain(dict.entries());
    for name in all_entries.flat_map(Entry::paradigm_refs) {
        if !table.contains_key(name) {
            return Err(ExpandError::UndefinedParadigm(name.to_string()));
        }
    }
    Ok(())
}

/// Walks every section entry's paths as segment lists. `visit` receives the
/// index of the entry within [`MonodixDictionary::entries`].
pub(crate) fn walk_dictionary<'a>(
    dict: &'a MonodixDictionary,
    mut visit: impl FnMut(usize, &'a Entry, &[Segment<'a>], Restriction) -> ControlFlow<()>,
) -> Result<ControlFlow<()>, ExpandError> {
    check_dictionary(dict)?;
    let table = dict.paradigm_table();
    for (index, entry) in dict.entries().enumerate() {
        let flow = walk_entry_unchecked(entry, &table, &mut |segs, r| visit(index, entry, segs, r));
        if flow.is_break() {
            return Ok(flow);
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// Streams every pair of `dict` to `f` without buffering the expansion.
/// Returning `Break` from `f` stops the walk.
pub fn for_each_pair(
    dict: &MonodixDictionary,
    mut f: impl FnMut(&MorphPair) -> ControlFlow<()>,
) -> Result<(), ExpandError> {
    let _ = walk_dictionary(dict, |_, entry, segs, restriction| f(&to_pair(segs, restriction, entry)))?;
    Ok(())
}

/// All pairs of `dict` in document order.
pub fn expand(dict: &MonodixDictionary) -> Result<Vec<MorphPair>, ExpandError> {
    let mut out = Vec::new();
    for_each_pair(dict, |p| {
        out.push(p.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Number of paths through `dict`, without materializing them.
pub fn path_count(dict: &MonodixDictionary) -> Result<usize, ExpandError> {
    let mut n = 0;
    let _ = walk_dictionary(dict, |_, _, _, _| {
        n += 1;
        ControlFlow::Continue(())
    })?;
    Ok(n)
}

//! Reading and writing the monodix XML dialect.
//!
//! Accepted elements and attributes:
//!
//! ```text
//! dictionary, alphabet, sdefs, sdef(n, c?), pardefs, pardef(n),
//! section(id, type), e(lm?, r?), i, p, l, r, s(n), par(n), b
//! ```
//!
//! Anything else is rejected with a located [`ParseError`]. `<b/>` inside
//! `i`, `l` or `r` stands for a single space. All text is normalized to NFC.

use std::fmt::Write as _;

use roxmltree::{Document, Node};
use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

use crate::dictionary::{Entry, EntryItem, MonodixDictionary, Paradigm, Restriction, Section};
use crate::symbol::Symbol;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: u32,
    pub column: u32,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed XML: {0}")]
    Xml(String),
    #[error("root element must be <dictionary>, found <{0}>")]
    NotADictionary(String),
    #[error("unknown element <{element}> inside <{parent}>")]
    UnknownElement { element: String, parent: String },
    #[error("unknown attribute {attribute:?} on <{element}>")]
    UnknownAttribute { attribute: String, element: String },
    #[error("<{element}> is missing the {attribute:?} attribute")]
    MissingAttribute { attribute: String, element: String },
    #[error("unexpected text inside <{element}>")]
    UnexpectedText { element: String },
    #[error("invalid restriction {0:?} (expected LR or RL)")]
    InvalidRestriction(String),
    #[error("<p> must contain exactly one <l> followed by one <r>")]
    MalformedPair,
}

fn nfc(text: &str) -> String {
    text.nfc().collect()
}

struct Parser<'a, 'input> {
    doc: &'a Document<'input>,
}

impl<'a, 'input> Parser<'a, 'input> {
    fn error(&self, node: Node<'_, '_>, kind: ParseErrorKind) -> ParseError {
        let pos = self.doc.text_pos_at(node.range().start);
        ParseError { line: pos.row, column: pos.col, kind }
    }

    /// Checks the attribute whitelist and returns the values of `names` in order.
    fn attributes(
        &self,
        node: Node<'_, '_>,
        required: &[&str],
        optional: &[&str],
    ) -> Result<Vec<Option<String>>, ParseError> {
        let element = node.tag_name().name();
        for attr in node.attributes() {
            let name = attr.name();
            if !required.contains(&name) && !optional.contains(&name) {
                return Err(self.error(
                    node,
                    ParseErrorKind::UnknownAttribute { attribute: name.into(), element: element.into() },
                ));
            }
        }
        let mut values = Vec::with_capacity(required.len() + optional.len());
        for &name in required {
            match node.attribute(name) {
                Some(v) => values.push(Some(nfc(v))),
                None => {
                    return Err(self.error(
                        node,
                        ParseErrorKind::MissingAttribute { attribute: name.into(), element: element.into() },
                    ))
                }
            }
        }
        for &name in optional {
            values.push(node.attribute(name).map(nfc));
        }
        Ok(values)
    }

    /// Element children of a container; whitespace text and comments are skipped.
    fn elements<'n>(&self, node: Node<'n, 'input>) -> Result<Vec<Node<'n, 'input>>, ParseError> {
        let mut out = Vec::new();
        for child in node.children() {
            if child.is_element() {
                out.push(child);
            } else if child.is_text() && !child.text().unwrap_or("").trim().is_empty() {
                return Err(
                    self.error(child, ParseErrorKind::UnexpectedText { element: node.tag_name().name().into() })
                );
            }
        }
        Ok(out)
    }

    fn unknown(&self, child: Node<'_, '_>, parent: Node<'_, '_>) -> ParseError {
        self.error(
            child,
            ParseErrorKind::UnknownElement {
                element: child.tag_name().name().into(),
                parent: parent.tag_name().name().into(),
            },
        )
    }

    fn dictionary(&self) -> Result<MonodixDictionary, ParseError> {
        let root = self.doc.root_element();
        if root.tag_name().name() != "dictionary" {
            return Err(self.error(root, ParseErrorKind::NotADictionary(root.tag_name().name().into())));
        }
        self.attributes(root, &[], &[])?;
        let mut dict = MonodixDictionary::default();
        for child in self.elements(root)? {
            match child.tag_name().name() {
                "alphabet" => {
                    self.attributes(child, &[], &[])?;
                    let mut text = String::new();
                    for n in child.children() {
                        if n.is_element() {
                            return Err(self.unknown(n, child));
                        }
                        if n.is_text() {
                            text.push_str(n.text().unwrap_or(""));
                        }
                    }
                    dict.alphabet.extend(nfc(&text).chars().filter(|c| !c.is_whitespace()));
                }
                "sdefs" => {
                    self.attributes(child, &[], &[])?;
                    for sdef in self.elements(child)? {
                        if sdef.tag_name().name() != "sdef" {
                            return Err(self.unknown(sdef, child));
                        }
                        let attrs = self.attributes(sdef, &["n"], &["c"])?;
                        self.expect_empty(sdef)?;
                        dict.tag_defs.push(attrs[0].clone().unwrap());
                    }
                }
                "pardefs" => {
                    self.attributes(child, &[], &[])?;
                    for pardef in self.elements(child)? {
                        if pardef.tag_name().name() != "pardef" {
                            return Err(self.unknown(pardef, child));
                        }
                        let name = self.attributes(pardef, &["n"], &[])?.remove(0).unwrap();
                        let entries = self.entries(pardef)?;
                        dict.paradigms.push(Paradigm { name, entries });
                    }
                }
                "section" => {
                    let attrs = self.attributes(child, &["id", "type"], &[])?;
                    let entries = self.entries(child)?;
                    dict.sections.push(Section {
                        id: attrs[0].clone().unwrap(),
                        kind: attrs[1].clone().unwrap(),
                        entries,
                    });
                }
                _ => return Err(self.unknown(child, root)),
            }
        }
        Ok(dict)
    }

    fn expect_empty(&self, node: Node<'_, '_>) -> Result<(), ParseError> {
        if let Some(child) = self.elements(node)?.into_iter().next() {
            return Err(self.unknown(child, node));
        }
        Ok(())
    }

    fn entries(&self, parent: Node<'_, '_>) -> Result<Vec<Entry>, ParseError> {
        self.elements(parent)?
            .into_iter()
            .map(|e| {
                if e.tag_name().name() != "e" {
                    return Err(self.unknown(e, parent));
                }
                self.entry(e)
            })
            .collect()
    }

    fn entry(&self, e: Node<'_, '_>) -> Result<Entry, ParseError> {
        let attrs = self.attributes(e, &[], &["lm", "r"])?;
        let restriction = match attrs[1].as_deref() {
            None => Restriction::Bidirectional,
            Some("LR") => Restriction::LeftToRightOnly,
            Some("RL") => Restriction::RightToLeftOnly,
            Some(other) => return Err(self.error(e, ParseErrorKind::InvalidRestriction(other.into()))),
        };
        let mut items = Vec::new();
        for item in self.elements(e)? {
            match item.tag_name().name() {
                "i" => {
                    self.attributes(item, &[], &[])?;
                    let symbols = self.symbols(item, false)?;
                    items.push(EntryItem::Identity(symbols.iter().filter_map(Symbol::as_char).collect()));
                }
                "p" => {
                    self.attributes(item, &[], &[])?;
                    let sides = self.elements(item)?;
                    let [l, r] = sides.as_slice() else {
                        return Err(self.error(item, ParseErrorKind::MalformedPair));
                    };
                    if l.tag_name().name() != "l" || r.tag_name().name() != "r" {
                        return Err(self.error(item, ParseErrorKind::MalformedPair));
                    }
                    self.attributes(*l, &[], &[])?;
                    self.attributes(*r, &[], &[])?;
                    items.push(EntryItem::Pair { left: self.symbols(*l, true)?, right: self.symbols(*r, true)? });
                }
                "par" => {
                    let name = self.attributes(item, &["n"], &[])?.remove(0).unwrap();
                    self.expect_empty(item)?;
                    items.push(EntryItem::ParadigmRef(name));
                }
                _ => return Err(self.unknown(item, e)),
            }
        }
        Ok(Entry { lemma: attrs[0].clone(), restriction, items })
    }

    /// Symbol content of `i`, `l` or `r`. Text is significant here.
    fn symbols(&self, node: Node<'_, '_>, tags_allowed: bool) -> Result<Vec<Symbol>, ParseError> {
        let mut out = Vec::new();
        let mut text = String::new();
        let flush = |text: &mut String, out: &mut Vec<Symbol>| {
            out.extend(nfc(text).chars().map(Symbol::Char));
            text.clear();
        };
        for child in node.children() {
            if child.is_text() {
                text.push_str(child.text().unwrap_or(""));
            } else if child.is_element() {
                match child.tag_name().name() {
                    "b" => {
                        self.attributes(child, &[], &[])?;
                        self.expect_empty(child)?;
                        text.push(' ');
                    }
                    "s" if tags_allowed => {
                        let name = self.attributes(child, &["n"], &[])?.remove(0).unwrap();
                        self.expect_empty(child)?;
                        flush(&mut text, &mut out);
                        out.push(Symbol::Tag(name));
                    }
                    _ => return Err(self.unknown(child, node)),
                }
            }
        }
        flush(&mut text, &mut out);
        Ok(out)
    }
}

/// Parses dix XML into a dictionary. The result is not validated.
pub fn parse_dix(xml: &str) -> Result<MonodixDictionary, ParseError> {
    let doc = Document::parse(xml).map_err(|err| {
        let pos = err.pos();
        ParseError { line: pos.row, column: pos.col, kind: ParseErrorKind::Xml(err.to_string()) }
    })?;
    Parser { doc: &doc }.dictionary()
}

fn escape(text: &str, out: &mut String) {
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            ' ' => out.push_str("<b/>"),
            c => out.push(c),
        }
    }
}

fn attr(text: &str) -> String {
    let mut out = String::new();
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
    out
}

fn write_symbols(symbols: &[Symbol], out: &mut String) {
    let mut run = String::new();
    for s in symbols {
        match s {
            Symbol::Char(c) => run.push(*c),
            Symbol::Tag(t) => {
                escape(&run, out);
                run.clear();
                let _ = write!(out, "<s n=\"{}\"/>", attr(t));
            }
            Symbol::Epsilon => {}
        }
    }
    escape(&run, out);
}

fn write_entry(entry: &Entry, indent: &str, out: &mut String) {
    out.push_str(indent);
    out.push_str("<e");
    if let Some(lm) = &entry.lemma {
        let _ = write!(out, " lm=\"{}\"", attr(lm));
    }
    match entry.restriction {
        Restriction::Bidirectional => {}
        Restriction::LeftToRightOnly => out.push_str(" r=\"LR\""),
        Restriction::RightToLeftOnly => out.push_str(" r=\"RL\""),
    }
    out.push('>');
    for item in &entry.items {
        match item {
            EntryItem::Identity(t) => {
                out.push_str("<i>");
                escape(t, out);
                out.push_str("</i>");
            }
            EntryItem::Pair { left, right } => {
                out.push_str("<p><l>");
                write_symbols(left, out);
                out.push_str("</l><r>");
                write_symbols(right, out);
                out.push_str("</r></p>");
            }
            EntryItem::ParadigmRef(name) => {
                let _ = write!(out, "<par n=\"{}\"/>", attr(name));
            }
        }
    }
    out.push_str("</e>\n");
}

/// Emits a dictionary as dix XML in stored order.
pub fn write_dix(dict: &MonodixDictionary) -> String {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<dictionary>\n  <alphabet>");
    for &c in &dict.alphabet {
        let mut buf = [0u8; 4];
        match c {
            '&' | '<' | '>' => escape(c.encode_utf8(&mut buf), &mut out),
            c => out.push(c),
        }
    }
    out.push_str("</alphabet>\n");
    if dict.tag_defs.is_empty() {
        out.push_str("  <sdefs/>\n");
    } else {
        out.push_str("  <sdefs>\n");
        for t in &dict.tag_defs {
            let _ = writeln!(out, "    <sdef n=\"{}\"/>", attr(t));
        }
        out.push_str("  </sdefs>\n");
    }
    if dict.paradigms.is_empty() {
        out.push_str("  <pardefs/>\n");
    } else {
        out.push_str("  <pardefs>\n");
        for p in &dict.paradigms {
            let _ = writeln!(out, "    <pardef n=\"{}\">", attr(&p.name));
            for e in &p.entries {
                write_entry(e, "      ", &mut out);
            }
            out.push_str("    </pardef>\n");
        }
        out.push_str("  </pardefs>\n");
    }
    for s in &dict.sections {
        let _ = write!(out, "  <section id=\"{}\" type=\"{}\"", attr(&s.id), attr(&s.kind));
        if s.entries.is_empty() {
            out.push_str("/>\n");
            continue;
        }
        out.push_str(">\n");
        for e in &s.entries {
            write_entry(e, "    ", &mut out);
        }
        out.push_str("  </section>\n");
    }
    out.push_str("</dictionary>\n");
    out
}

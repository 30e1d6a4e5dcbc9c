//! Running transducers over text.
//!
//! Analysis turns every word into a lexical unit `^surface/analysis1/…$`, or
//! `^surface/*surface$` when the word is unknown. Text between words is copied
//! with the reserved characters `^ $ / * # \ < >` escaped by a backslash.
//! Generation reads such a stream back: each unit is replaced by the surface
//! form of its first analysis, or by `#lexical-form` when nothing can be
//! generated.
//!
//! Streams are processed one line at a time, so memory use is bounded by the
//! longest line rather than by the length of the input.

use std::fmt;
use std::io::{self, BufRead, Write};

use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

use crate::fst::LetterTransducer;
use crate::symbol::{Symbol, SymbolId};

pub const RESERVED: [char; 8] = ['^', '$', '/', '*', '#', '\\', '<', '>'];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamToken<'a> {
    Word(&'a str),
    Separator(&'a str),
}

impl<'a> StreamToken<'a> {
    pub fn text(&self) -> &'a str {
        match self {
            StreamToken::Word(t) | StreamToken::Separator(t) => t,
        }
    }
}

/// Splits `text` into maximal runs of word characters and everything else.
/// Concatenating the tokens gives back `text`.
pub fn tokenize(text: &str, is_word_char: impl Fn(char) -> bool) -> Vec<StreamToken<'_>> {
    let mut tokens = Vec::new();
    let mut start = 0;
    let mut in_word = None;
    for (i, c) in text.char_indices() {
        let w = is_word_char(c);
        match in_word {
            Some(prev) if prev != w => {
                tokens.push(make_token(&text[start..i], prev));
                start = i;
            }
            _ => {}
        }
        in_word = Some(w);
    }
    if let Some(w) = in_word {
        tokens.push(make_token(&text[start..], w));
    }
    tokens
}

fn make_token(text: &str, word: bool) -> StreamToken<'_> {
    if word {
        StreamToken::Word(text)
    } else {
        StreamToken::Separator(text)
    }
}

pub fn escape_into(text: &str, out: &mut String) {
    for c in text.chars() {
        if RESERVED.contains(&c) {
            out.push('\\');
        }
        out.push(c);
    }
}

pub fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    escape_into(text, &mut out);
    out
}

/// Renders transducer output ids for the stream: characters escaped, tags as
/// `<name>`.
fn render_lexical(t: &LetterTransducer, ids: &[SymbolId], out: &mut String) {
    for &id in ids {
        match t.symbols().symbol(id) {
            Some(Symbol::Char(c)) => {
                if RESERVED.contains(c) {
                    out.push('\\');
                }
                out.push(*c);
            }
            Some(Symbol::Tag(name)) => {
                out.push('<');
                out.push_str(name);
                out.push('>');
            }
            _ => {}
        }
    }
}

/// One analysed word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexicalUnit {
    pub surface: String,
    /// Lexical forms as written in the stream (reserved characters of the
    /// lemma escaped, tags as `<name>`).
    pub analyses: Vec<String>,
}

impl LexicalUnit {
    pub fn is_known(&self) -> bool {
        !self.analyses.is_empty()
    }
}

impl fmt::Display for LexicalUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let surface = escape(&self.surface);
        write!(f, "^{surface}")?;
        if self.analyses.is_empty() {
            write!(f, "/*{surface}")?;
        }
        for a in &self.analyses {
            write!(f, "/{a}")?;
        }
        f.write_str("$")
    }
}

/// Analyses of `word` in lookup order, rendered for the stream.
pub fn analyze_word(analyzer: &LetterTransducer, word: &str) -> LexicalUnit {
    let ids: Option<Vec<SymbolId>> = word.chars().map(|c| analyzer.symbols().char_id(c)).collect();
    let analyses = match ids {
        Some(ids) => analyzer
            .lookup(&ids)
            .iter()
            .map(|out| {
                let mut s = String::new();
                render_lexical(analyzer, out, &mut s);
                s
            })
            .collect(),
        None => Vec::new(),
    };
    LexicalUnit { surface: word.to_string(), analyses }
}

fn analyze_text_into(analyzer: &LetterTransducer, text: &str, out: &mut String, stats: &mut StreamStats) {
    for token in tokenize(text, |c| analyzer.is_word_char(c)) {
        match token {
            StreamToken::Word(w) => {
                let unit = analyze_word(analyzer, w);
                stats.words += 1;
                if unit.is_known() {
                    stats.known += 1;
                }
                use fmt::Write as _;
                let _ = write!(out, "{unit}");
            }
            StreamToken::Separator(s) => escape_into(s, out),
        }
    }
}

/// Analyses a whole text.
pub fn analyze_stream(text: &str, analyzer: &LetterTransducer) -> String {
    let text: String = text.nfc().collect();
    let mut out = String::with_capacity(text.len() * 4);
    analyze_text_into(analyzer, &text, &mut out, &mut StreamStats::default());
    out
}

/// Counters gathered while processing a stream.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StreamStats {
    /// Words (analysis) or units (generation) processed.
    pub words: u64,
    /// Words with at least one analysis, or units successfully generated.
    pub known: u64,
    pub lines: u64,
    /// Longest input line held in memory, in bytes.
    pub max_line_bytes: usize,
}

fn read_line(reader: &mut impl BufRead, buf: &mut Vec<u8>) -> io::Result<Option<String>> {
    buf.clear();
    if reader.read_until(b'\n', buf)? == 0 {
        return Ok(None);
    }
    let line = std::str::from_utf8(buf).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
    Ok(Some(line.nfc().collect()))
}

/// Analyses `reader` line by line into `writer`.
pub fn analyze_reader(
    analyzer: &LetterTransducer,
    mut reader: impl BufRead,
    mut writer: impl Write,
) -> io::Result<StreamStats> {
    let mut stats = StreamStats::default();
    let mut buf = Vec::new();
    let mut out = String::new();
    while let Some(line) = read_line(&mut reader, &mut buf)? {
        stats.lines += 1;
        stats.max_line_bytes = stats.max_line_bytes.max(buf.len());
        out.clear();
        analyze_text_into(analyzer, &line, &mut out, &mut stats);
        writer.write_all(out.as_bytes())?;
    }
    writer.flush()?;
    Ok(stats)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StreamError {
    #[error("line {line}, column {column}: malformed unit: {reason}")]
    MalformedUnit { line: u64, column: usize, reason: &'static str },
    #[error("{0}")]
    Io(String),
}

impl From<io::Error> for StreamError {
    fn from(e: io::Error) -> Self {
        StreamError::Io(e.to_string())
    }
}

/// One `/`-separated field of a unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitField {
    /// The field exactly as written.
    pub raw: String,
    /// Unescaped symbols; `<name>` becomes a tag.
    pub symbols: Vec<Symbol>,
    /// The field began with an unescaped `*`.
    pub unknown: bool,
}

/// A parsed piece of an annotated stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chunk {
    /// Unescaped text between units.
    Text(String),
    Unit(Vec<UnitField>),
}

fn malformed(line: u64, column: usize, reason: &'static str) -> StreamError {
    StreamError::MalformedUnit { line, column, reason }
}

/// Parses one line of an annotated stream. `line_no` is used for error
/// locations; columns count characters from 1.
pub fn parse_line(line: &str, line_no: u64) -> Result<Vec<Chunk>, StreamError> {
    let mut chunks = Vec::new();
    let mut text = String::new();
    let mut chars = line.chars().enumerate().peekable();
    while let Some((col, c)) = chars.next() {
        match c {
            '\\' => match chars.next() {
                Some((_, e)) => text.push(e),
                None => return Err(malformed(line_no, col + 1, "dangling escape")),
            },
            '$' => return Err(malformed(line_no, col + 1, "'$' outside a unit")),
            '^' => {
                if !text.is_empty() {
                    chunks.push(Chunk::Text(std::mem::take(&mut text)));
                }
                let start = col + 1;
                let mut fields = Vec::new();
                let mut field = UnitField { raw: String::new(), symbols: Vec::new(), unknown: false };
                loop {
                    let Some((col, c)) = chars.next() else {
                        return Err(malformed(line_no, start, "unterminated unit"));
                    };
                    match c {
                        '\\' => match chars.next() {
                            Some((_, e)) => {
                                field.raw.push('\\');
                                field.raw.push(e);
                                field.symbols.push(Symbol::Char(e));
                            }
                            None => return Err(malformed(line_no, col + 1, "dangling escape")),
                        },
                        '<' => {
                            let mut name = String::new();
                            loop {
                                match chars.next() {
                                    Some((_, '>')) => break,
                                    Some((_, ch)) if !matches!(ch, '<' | '$' | '/' | '^') && !ch.is_whitespace() => {
                                        name.push(ch)
                                    }
                                    _ => return Err(malformed(line_no, col + 1, "unterminated tag")),
                                }
                            }
                            if name.is_empty() {
                                return Err(malformed(line_no, col + 1, "empty tag"));
                            }
                            field.raw.push('<');
                            field.raw.push_str(&name);
                            field.raw.push('>');
                            field.symbols.push(Symbol::Tag(name));
                        }
                        '*' if field.raw.is_empty() && !field.unknown => field.unknown = true,
                        '/' | '$' => {
                            if field.unknown {
                                field.raw.insert(0, '*');
                            }
                            fields.push(std::mem::replace(
                                &mut field,
                                UnitField { raw: String::new(), symbols: Vec::new(), unknown: false },
                            ));
                            if c == '$' {
                                break;
                            }
                        }
                        '^' => return Err(malformed(line_no, col + 1, "'^' inside a unit")),
                        '\n' | '\r' => return Err(malformed(line_no, start, "unterminated unit")),
                        other => {
                            field.raw.push(other);
                            field.symbols.push(Symbol::Char(other));
                        }
                    }
                }
                chunks.push(Chunk::Unit(fields));
            }
            other => text.push(other),
        }
    }
    if !text.is_empty() {
        chunks.push(Chunk::Text(text));
    }
    Ok(chunks)
}

/// Parses analysis output back into text and lexical units.
pub fn parse_analysis(text: &str) -> Result<Vec<Result<LexicalUnit, String>>, StreamError> {
    let mut out = Vec::new();
    for (i, line) in text.split_inclusive('\n').enumerate() {
        for chunk in parse_line(line, i as u64 + 1)? {
            out.push(match chunk {
                Chunk::Text(t) => Err(t),
                Chunk::Unit(fields) => {
                    let surface: String = fields[0].symbols.iter().filter_map(Symbol::as_char).collect();
                    let analyses = fields[1..].iter().filter(|f| !f.unknown).map(|f| f.raw.clone()).collect();
                    Ok(LexicalUnit { surface, analyses })
                }
            });
        }
    }
    Ok(out)
}

/// Surface text for one unit. A unit with several fields is read as
/// analysis output: the first field is the surface form and the second is
/// the analysis to generate from.
fn generate_unit(generator: &LetterTransducer, fields: &[UnitField], out: &mut String) -> bool {
    let lexical = if fields.len() >= 2 { &fields[1] } else { &fields[0] };
    if lexical.unknown {
        let source = if fields.len() >= 2 { &fields[0] } else { lexical };
        out.extend(source.symbols.iter().filter_map(Symbol::as_char));
        return false;
    }
    let results = generator.encode(&lexical.symbols).map(|ids| generator.lookup(&ids)).unwrap_or_default();
    match results.first() {
        Some(first) => {
            generator.symbols().render_ids_into(first, out);
            true
        }
        None => {
            out.push('#');
            out.push_str(&lexical.raw);
            false
        }
    }
}

fn generate_line_into(
    generator: &LetterTransducer,
    line: &str,
    line_no: u64,
    out: &mut String,
    stats: &mut StreamStats,
) -> Result<(), StreamError> {
    for chunk in parse_line(line, line_no)? {
        match chunk {
            Chunk::Text(t) => out.push_str(&t),
            Chunk::Unit(fields) => {
                stats.words += 1;
                if generate_unit(generator, &fields, out) {
                    stats.known += 1;
                }
            }
        }
    }
    Ok(())
}

/// Generates surface text from an annotated stream.
pub fn generate_stream(annotated: &str, generator: &LetterTransducer) -> Result<String, StreamError> {
    let annotated: String = annotated.nfc().collect();
    let mut out = String::with_capacity(annotated.len());
    let mut stats = StreamStats::default();
    for (i, line) in annotated.split_inclusive('\n').enumerate() {
        generate_line_into(generator, line, i as u64 + 1, &mut out, &mut stats)?;
    }
    Ok(out)
}

/// Generates from `reader` line by line into `writer`. Output already
/// written stays written when a malformed unit aborts processing.
pub fn generate_reader(
    generator: &LetterTransducer,
    mut reader: impl BufRead,
    mut writer: impl Write,
) -> Result<StreamStats, StreamError> {
    let mut stats = StreamStats::default();
    let mut buf = Vec::new();
    let mut out = String::new();
    while let Some(line) = read_line(&mut reader, &mut buf)? {
        stats.lines += 1;
        stats.max_line_bytes = stats.max_line_bytes.max(buf.len());
        out.clear();
        generate_line_into(generator, &line, stats.lines, &mut out, &mut stats)?;
        writer.write_all(out.as_bytes())?;
    }
    writer.flush()?;
    Ok(stats)
}

//! Binary transducer files. Little-endian throughout:
//!
//! ```text
//! magic "MFST" | u16 version | u16 flags (bit 0 minimized, bit 1 right-to-left)
//! u32 symbol count, then per symbol: u8 kind (0 char, 1 tag), u32 byte length, UTF-8 bytes
//! u32 state count
//! u32 final count, then that many u32 state ids ascending
//! u64 transition count, then per transition: u32 source, u32 input, u32 output, u32 target
//! ```
//!
//! Epsilon is the implicit symbol id 0 and is not stored. Transitions are
//! written sorted by `(source, input, output, target)`.

use thiserror::Error;

use super::{Direction, LetterTransducer, Transition};
use crate::symbol::{is_valid_tag_name, Symbol, SymbolTable};

pub const MAGIC: [u8; 4] = *b"MFST";
pub const VERSION: u16 = 1;

const FLAG_MINIMIZED: u16 = 1;
const FLAG_RIGHT_TO_LEFT: u16 = 1 << 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("not a transducer file (bad magic bytes)")]
    BadMagic,
    #[error("unsupported format version {0}")]
    UnsupportedVersion(u16),
    #[error("file is truncated")]
    TruncatedFile,
    #[error("state id {0} is out of range")]
    DanglingStateId(u32),
    #[error("symbol id {0} is out of range")]
    DanglingSymbolId(u32),
    #[error("symbol {0} is malformed")]
    InvalidSymbol(u32),
    #[error("unexpected bytes after the transition block")]
    TrailingData,
}

pub fn save(t: &LetterTransducer) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    let mut flags = 0u16;
    if t.minimized {
        flags |= FLAG_MINIMIZED;
    }
    if t.direction == Direction::RightToLeft {
        flags |= FLAG_RIGHT_TO_LEFT;
    }
    out.extend_from_slice(&flags.to_le_bytes());

    out.extend_from_slice(&((t.symbols.len() - 1) as u32).to_le_bytes());
    for (_, sym) in t.symbols.iter().skip(1) {
        let (kind, text) = match sym {
            Symbol::Char(c) => (0u8, c.to_string()),
            Symbol::Tag(name) => (1u8, name.clone()),
            Symbol::Epsilon => unreachable!("epsilon only at id 0"),
        };
        out.push(kind);
        out.extend_from_slice(&(text.len() as u32).to_le_bytes());
        out.extend_from_slice(text.as_bytes());
    }

    out.extend_from_slice(&(t.states.len() as u32).to_le_bytes());
    let finals: Vec<u32> = t.finals().collect();
    out.extend_from_slice(&(finals.len() as u32).to_le_bytes());
    for f in finals {
        out.extend_from_slice(&f.to_le_bytes());
    }

    out.extend_from_slice(&(t.transition_count() as u64).to_le_bytes());
    for (source, trans) in t.states.iter().enumerate() {
        // each state's edges are already sorted by (input, output, target)
        for tr in trans {
            for v in [source as u32, tr.input, tr.output, tr.target] {
                out.extend_from_slice(&v.to_le_bytes());
            }
        }
    }
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], LoadError> {
        if self.bytes.len() < n {
            return Err(LoadError::TruncatedFile);
        }
        let (head, tail) = self.bytes.split_at(n);
        self.bytes = tail;
        Ok(head)
    }

    fn u8(&mut self) -> Result<u8, LoadError> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16, LoadError> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32, LoadError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, LoadError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

pub fn load(bytes: &[u8]) -> Result<LetterTransducer, LoadError> {
    let mut r = Reader { bytes };
    if bytes.len() < MAGIC.len() || r.take(4)? != MAGIC {
        return Err(LoadError::BadMagic);
    }
    let version = r.u16()?;
    if version != VERSION {
        return Err(LoadError::UnsupportedVersion(version));
    }
    let flags = r.u16()?;

    let symbol_count = r.u32()?;
    let mut symbols = SymbolTable::new();
    for i in 0..symbol_count {
        let id = i + 1;
        let kind = r.u8()?;
        let len = r.u32()? as usize;
        let text = std::str::from_utf8(r.take(len)?).map_err(|_| LoadError::InvalidSymbol(id))?;
        let sym = match kind {
            0 => {
                let mut chars = text.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => Symbol::Char(c),
                    _ => return Err(LoadError::InvalidSymbol(id)),
                }
            }
            1 if is_valid_tag_name(text) => Symbol::Tag(text.to_string()),
            _ => return Err(LoadError::InvalidSymbol(id)),
        };
        if symbols.intern(sym) != id {
            return Err(LoadError::InvalidSymbol(id));
        }
    }

    let state_count = r.u32()?;
    if state_count == 0 {
        return Err(LoadError::DanglingStateId(0));
    }
    let mut finals = vec![false; state_count as usize];
    let final_count = r.u32()?;
    for _ in 0..final_count {
        let s = r.u32()?;
        *finals.get_mut(s as usize).ok_or(LoadError::DanglingStateId(s))? = true;
    }

    let transition_count = r.u64()?;
    if (r.bytes.len() as u64) < transition_count.saturating_mul(16) {
        return Err(LoadError::TruncatedFile);
    }
    let mut states = vec![Vec::new(); state_count as usize];
    for _ in 0..transition_count {
        let source = r.u32()?;
        let input = r.u32()?;
        let output = r.u32()?;
        let target = r.u32()?;
        for s in [source, target] {
            if s >= state_count {
                return Err(LoadError::DanglingStateId(s));
            }
        }
        for sym in [input, output] {
            if sym as usize >= symbols.len() {
                return Err(LoadError::DanglingSymbolId(sym));
            }
        }
        states[source as usize].push(Transition { input, output, target });
    }
    if !r.bytes.is_empty() {
        return Err(LoadError::TrailingData);
    }

    let direction = if flags & FLAG_RIGHT_TO_LEFT != 0 { Direction::RightToLeft } else { Direction::LeftToRight };
    Ok(LetterTransducer::from_parts(symbols, states, finals, direction, flags & FLAG_MINIMIZED != 0))
}

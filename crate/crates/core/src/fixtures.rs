//! Small dictionaries shipped with the crate.

use crate::dictionary::MonodixDictionary;
use crate::dix::parse_dix;

/// Source of `fixtures/asm-mini.dix`: the চকু and মানুহ noun paradigms plus
/// the homographic জন (common noun and proper noun).
pub const ASM_MINI_DIX: &str = include_str!("../fixtures/asm-mini.dix");

/// The parsed miniature Assamese dictionary.
pub fn asm_mini() -> MonodixDictionary {
    parse_dix(ASM_MINI_DIX).expect("shipped fixture parses")
}

use super::*;
use crate::dictionary::{Entry, EntryItem, MonodixDictionary, Section};
use crate::expand::expand;
use crate::fixtures::asm_mini;
use crate::symbol::render;

fn analyzer() -> LetterTransducer {
    compile(&asm_mini(), Direction::LeftToRight).unwrap()
}

fn generator() -> LetterTransducer {
    compile(&asm_mini(), Direction::RightToLeft).unwrap()
}

#[test]
fn analyzes_plural() {
    assert_eq!(analyzer().lookup_str("চকুযুৰি"), vec!["চকু<n><pl>"]);
}

#[test]
fn generates_plural() {
    assert_eq!(generator().lookup_str("চকু<n><pl>"), vec!["চকুযুৰি"]);
}

#[test]
fn zero_suffix_singular() {
    assert_eq!(analyzer().lookup_str("মানুহ"), vec!["মানুহ<n><sg>"]);
    assert_eq!(generator().lookup_str("মানুহ<n><sg>"), vec!["মানুহ"]);
}

#[test]
fn homograph_has_two_analyses() {
    let expected: Vec<String> =
        expand(&asm_mini()).unwrap().iter().filter(|p| p.surface_text() == "জন").map(|p| p.lexical_text()).collect();
    assert_eq!(expected, vec!["জন<n><sg>", "জন<np>"]);
    assert_eq!(analyzer().lookup_str("জন"), expected);
}

#[test]
fn unknown_input() {
    assert!(analyzer().lookup_str("qqq").is_empty());
    assert!(analyzer().lookup_str("চকুযু").is_empty());
    assert!(generator().lookup_str("চকু<v><pl>").is_empty());
    assert!(generator().lookup_str("চকু<zz>").is_empty());
}

#[test]
fn right_to_left_matches_flipped_left_to_right() {
    let d = asm_mini();
    let rl = compile(&d, Direction::RightToLeft).unwrap();
    let flipped = compile(&d.flip(), Direction::LeftToRight).unwrap();
    for pair in expand(&d).unwrap() {
        let lex = rl.encode(&pair.lexical).unwrap();
        assert_eq!(rl.lookup(&lex), flipped.lookup(&lex));
    }
    assert_eq!(rl.state_count(), flipped.state_count());
}

#[test]
fn minimization_merges_shared_suffixes() {
    let trie = analyzer();
    let min = minimize(&trie);
    assert!(min.state_count() < trie.state_count(), "{} vs {}", min.state_count(), trie.state_count());
    assert!(min.is_minimized());
    for pair in expand(&asm_mini()).unwrap() {
        let s = render(&pair.surface);
        assert_eq!(min.lookup_str(&s), trie.lookup_str(&s));
    }
    assert_eq!(minimize(&min), min);
}

#[test]
fn minimizing_a_single_path_keeps_it() {
    let d = MonodixDictionary {
        sections: vec![Section::new("main", vec![Entry::new(vec![EntryItem::Identity("abc".into())])])],
        ..Default::default()
    };
    let t = compile(&d, Direction::LeftToRight).unwrap();
    let m = minimize(&t);
    assert_eq!(m.state_count(), t.state_count());
    assert_eq!(m.lookup_str("abc"), vec!["abc"]);
}

#[test]
fn empty_dictionary_gives_empty_transducer() {
    let t = compile(&MonodixDictionary::default(), Direction::LeftToRight).unwrap();
    assert_eq!(t.state_count(), 1);
    assert_eq!(t.transition_count(), 0);
    assert!(t.is_empty());
    let m = minimize(&t);
    assert_eq!((m.state_count(), m.transition_count()), (1, 0));
    assert!(m.is_empty());
    assert!(m.lookup(&[]).is_empty());
}

#[test]
fn binary_round_trip() {
    for t in [analyzer(), generator(), minimize(&analyzer())] {
        let bytes = save(&t);
        assert_eq!(&bytes[..4], b"MFST");
        let back = load(&bytes).unwrap();
        assert_eq!(back, t);
        assert_eq!(save(&back), bytes);
    }
}

#[test]
fn header_flags() {
    let bytes = save(&minimize(&generator()));
    assert_eq!(&bytes[4..6], &[1, 0]);
    assert_eq!(&bytes[6..8], &[0b11, 0]);
    let bytes = save(&analyzer());
    assert_eq!(&bytes[6..8], &[0, 0]);
}

#[test]
fn corrupt_binaries_are_rejected() {
    let bytes = save(&analyzer());

    let mut bad = bytes.clone();
    bad[0] = b'X';
    assert_eq!(load(&bad), Err(LoadError::BadMagic));
    assert_eq!(load(b"MF"), Err(LoadError::BadMagic));

    let mut bad = bytes.clone();
    bad[4] = 9;
    assert_eq!(load(&bad), Err(LoadError::UnsupportedVersion(9)));

    assert_eq!(load(&bytes[..bytes.len() - 7]), Err(LoadError::TruncatedFile));
    assert_eq!(load(&bytes[..12]), Err(LoadError::TruncatedFile));

    // last transition's target
    let mut bad = bytes.clone();
    let n = bad.len();
    bad[n - 4..].copy_from_slice(&u32::MAX.to_le_bytes());
    assert_eq!(load(&bad), Err(LoadError::DanglingStateId(u32::MAX)));

    let mut bad = bytes.clone();
    bad.push(0);
    assert_eq!(load(&bad), Err(LoadError::TrailingData));
}

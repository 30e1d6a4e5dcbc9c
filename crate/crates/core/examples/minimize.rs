//! Trie compilation versus the minimal transducer on a synthetic lexicon.

use std::time::Instant;

use ltkit::fst::{compile, minimize, Direction};
use ltkit::synth::synthetic_lexicon;

fn main() {
    let dict = synthetic_lexicon();
    for dir in [Direction::LeftToRight, Direction::RightToLeft] {
        let start = Instant::now();
        let trie = compile(&dict, dir).unwrap();
        let compiled = start.elapsed();
        let min = minimize(&trie);
        println!(
            "{dir:?}: trie {} states / {} transitions ({compiled:.1?}), minimal {} states / {} transitions ({:.1?})",
            trie.state_count(),
            trie.transition_count(),
            min.state_count(),
            min.transition_count(),
            start.elapsed() - compiled,
        );
    }
}

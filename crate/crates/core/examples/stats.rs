//! Entry counts per main category.

use ltkit::eval::dict_stats;
use ltkit::fixtures::asm_mini;
use ltkit::synth::synthetic_lexicon;

fn main() {
    println!("bundled dictionary:\n{}", dict_stats(&asm_mini()).unwrap());
    let big = synthetic_lexicon();
    let stats = dict_stats(&big).unwrap();
    println!("synthetic lexicon ({} entries):\n{stats}", stats.total());
}

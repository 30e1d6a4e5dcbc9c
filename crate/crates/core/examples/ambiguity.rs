//! One surface form, several analyses: `জন` is both a noun and a proper noun,
//! and also a suffix of `মানুহজন`.

use ltkit::fixtures::asm_mini;
use ltkit::fst::{compile, Direction};

fn main() {
    let analyzer = compile(&asm_mini(), Direction::LeftToRight).unwrap();
    for word in ["জন", "মানুহজন", "জনজন", "জনজনজন"] {
        let analyses = analyzer.lookup_str(word);
        if analyses.is_empty() {
            println!("{word}: no analysis");
        } else {
            println!("{word}: {}", analyses.join(" | "));
        }
    }
}

//! Morphological analysis of running text with the bundled dictionary.
//!
//! ```text
//! cargo run --example analyze -- "মানুহজন আহিলেনে?"
//! ```

use ltkit::fixtures::asm_mini;
use ltkit::fst::{compile, minimize, Direction};
use ltkit::stream::analyze_stream;

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "চকুযুৰি মানুহজন আহিলেনে?".to_string());
    let analyzer = minimize(&compile(&asm_mini(), Direction::LeftToRight).expect("fixture expands"));
    println!("{}", analyze_stream(&text, &analyzer));
}

//! Scores the bundled analyzer on the shipped evaluation files.

use ltkit::eval::{clean_corpus, evaluate, parse_gold, CleaningConfig};
use ltkit::fixtures::asm_mini;
use ltkit::fst::{compile, minimize, Direction};

const DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/eval");

fn main() {
    let read = |name: &str| std::fs::read_to_string(format!("{DIR}/{name}")).unwrap();
    let analyzer = minimize(&compile(&asm_mini(), Direction::LeftToRight).unwrap());

    let config = CleaningConfig::with_stopwords(CleaningConfig::parse_stopwords(&read("stopwords.txt")));
    let tokens = clean_corpus(&read("corpus.txt"), |c| analyzer.is_word_char(c), &config);
    let gold = parse_gold(&read("gold.tsv")).unwrap();

    let report = evaluate(&tokens, &gold, &analyzer).unwrap();
    print!("{report}");
}

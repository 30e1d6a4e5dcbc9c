//! Surface generation from lexical forms, and the analyse/generate round trip.

use ltkit::fixtures::asm_mini;
use ltkit::fst::{compile, minimize, Direction};
use ltkit::stream::{analyze_stream, generate_stream};

fn main() {
    let dict = asm_mini();
    let analyzer = minimize(&compile(&dict, Direction::LeftToRight).unwrap());
    let generator = minimize(&compile(&dict, Direction::RightToLeft).unwrap());

    for form in ["চকু<n><pl>", "মানুহ<n><sg><def>", "চকু<v>"] {
        let out = generate_stream(&format!("^{form}$"), &generator).unwrap();
        println!("{form:<22} -> {out}");
    }

    let text = "চকুযুৰি, মানুহজন আৰু জনজন।";
    let analysed = analyze_stream(text, &analyzer);
    let back = generate_stream(&analysed, &generator).unwrap();
    println!("\n{analysed}\n{back}");
    assert_eq!(back, text);
}

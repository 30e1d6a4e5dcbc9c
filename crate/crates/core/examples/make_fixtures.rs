//! Regenerates the evaluation files under `fixtures/eval/`.
//!
//! ```text
//! cargo run --example make_fixtures [OUT_DIR]
//! ```

use std::path::PathBuf;

use ltkit::synth::eval_fixture;

fn main() -> std::io::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/eval"));
    std::fs::create_dir_all(&dir)?;
    let fixture = eval_fixture();
    std::fs::write(dir.join("corpus.txt"), &fixture.corpus)?;
    std::fs::write(dir.join("gold.tsv"), &fixture.gold)?;
    std::fs::write(dir.join("stopwords.txt"), &fixture.stopwords)?;
    println!("wrote {}", dir.display());
    Ok(())
}

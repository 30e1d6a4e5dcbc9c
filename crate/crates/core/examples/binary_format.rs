//! Saving and loading compiled transducers, and what a damaged file looks like.

use ltkit::fixtures::asm_mini;
use ltkit::fst::{compile, load, minimize, save, Direction};

fn main() {
    let t = minimize(&compile(&asm_mini(), Direction::RightToLeft).unwrap());
    let bytes = save(&t);
    println!("{} bytes, header {:02x?}", bytes.len(), &bytes[..8]);

    let back = load(&bytes).unwrap();
    assert_eq!(save(&back), bytes);
    println!("reloaded: {:?}, minimized {}, {} states", back.direction(), back.is_minimized(), back.state_count());

    for (what, damaged) in [
        ("wrong magic", [b"XFST", &bytes[4..]].concat()),
        ("cut short", bytes[..bytes.len() - 3].to_vec()),
        ("extra byte", [&bytes[..], &[0]].concat()),
    ] {
        println!("{what}: {}", load(&damaged).unwrap_err());
    }
}

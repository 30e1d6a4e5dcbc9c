//! Lists every surface:lexical pair of a dix file (the bundled one by default).

use std::ops::ControlFlow;

use ltkit::dix::parse_dix;
use ltkit::expand::for_each_pair;
use ltkit::fixtures::ASM_MINI_DIX;

fn main() {
    let xml = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable dix file"),
        None => ASM_MINI_DIX.to_string(),
    };
    let dict = match parse_dix(&xml) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    let mut n = 0;
    for_each_pair(&dict, |pair| {
        n += 1;
        println!("{pair}");
        ControlFlow::Continue(())
    })
    .unwrap();
    eprintln!("{n} pairs");
}

pub mod dictionary;
pub mod dix;
pub mod eval;
pub mod expand;
pub mod fixtures;
pub mod fst;
pub mod stream;
pub mod symbol;
pub mod synth;

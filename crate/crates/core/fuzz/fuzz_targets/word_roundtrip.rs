#![no_main]

use hydra_core::expr::{format, parse_word};
use hydra_core::{Generator, Letter, Word};
use libfuzzer_sys::fuzz_target;

// Each byte picks a letter: low bits choose the generator, the top bit inverts.
fuzz_target!(|data: &[u8]| {
    let letters = data.iter().map(|&b| {
        let g = match b & 0x0f {
            0 => Generator::T,
            1 => Generator::P,
            2 => Generator::h(1 + (b as u32 >> 4 & 3)),
            3 => Generator::T.toggle_mirror(),
            n if n < 9 => Generator::a(n as u32 - 3),
            n => Generator::a(n as u32 - 8).toggle_mirror(),
        };
        Letter::new(g, b & 0x80 != 0)
    });
    let w = Word::reduce(letters).unwrap();
    assert_eq!(parse_word(&format(&w)).unwrap(), w);
    assert_eq!(w.mul(&w.inverse()), Word::empty());
});

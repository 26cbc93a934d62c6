#![no_main]

use hydra_core::expr::{format, parse, parse_word_bounded};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if parse(text).is_err() {
        return;
    }
    if let Ok(w) = parse_word_bounded(text, 4096) {
        assert_eq!(parse_word_bounded(&format(&w), 4096).unwrap(), w);
    }
});

#![no_main]

use hydra_core::spec_file::parse_inline_subgroup;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(sub) = parse_inline_subgroup(text) {
        let r: Vec<String> = sub.exponents().iter().map(i64::to_string).collect();
        let again = parse_inline_subgroup(&format!("r={}", r.join(","))).unwrap();
        assert_eq!(again, sub);
    }
});

#![no_main]

use hydra_core::spec_file::SpecFile;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = SpecFile::parse(text) {
        let canonical = spec.to_text();
        let again = SpecFile::parse(&canonical).expect("canonical text parses");
        assert_eq!(again, spec);
        assert_eq!(again.to_text(), canonical);
    }
});

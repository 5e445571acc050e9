#![no_main]

use libfuzzer_sys::fuzz_target;

use cubic_jordan::rat::{format_rat, parse_rat};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    // Must reject anything outside the "p" / "p/q" grammar with an error,
    // never a panic. Whatever is accepted must survive a format/parse
    // round trip unchanged.
    if let Ok(r) = parse_rat(s) {
        let shown = format_rat(&r);
        assert_eq!(parse_rat(&shown).expect("canonical form parses"), r);
    }
});

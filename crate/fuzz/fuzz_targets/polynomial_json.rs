#![no_main]

use libfuzzer_sys::fuzz_target;

use cubic_jordan::poly::Poly;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else {
        return;
    };
    // Malformed polynomials must come back as errors, never panics, and
    // accepted ones must round-trip through their canonical serialisation.
    if let Ok(p) = Poly::from_json(&v) {
        let back = Poly::from_json(&p.to_json()).expect("canonical form parses");
        assert_eq!(back, p);
    }
});

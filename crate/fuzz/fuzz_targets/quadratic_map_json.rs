#![no_main]

use libfuzzer_sys::fuzz_target;

use cubic_jordan::cremona::QuadraticMap;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else {
        return;
    };
    // Component counts, variable counts and homogeneity are all validated;
    // accepted maps must round-trip through their canonical serialisation.
    if let Ok(f) = QuadraticMap::from_json(&v) {
        let back = QuadraticMap::from_json(&f.to_json()).expect("canonical form parses");
        assert_eq!(back, f);
    }
});

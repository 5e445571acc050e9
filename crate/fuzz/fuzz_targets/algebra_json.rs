#![no_main]

use libfuzzer_sys::fuzz_target;

use cubic_jordan::algebra::Algebra;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else {
        return;
    };
    // The decoder enforces shape, size limits, commutativity and the unit
    // law; anything it accepts must round-trip and actually satisfy the
    // unit law it promised.
    if let Ok(alg) = Algebra::from_json(&v) {
        let back = Algebra::from_json(&alg.to_json()).expect("canonical form parses");
        assert_eq!(back, alg);
        assert_eq!(alg.square(&alg.unit()), alg.unit());
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // Decoding untrusted cache bytes must never panic; a valid decode must
    // re-encode to the same bytes.
    if let Ok(series) = alder::series::decode_series(data) {
        let reencoded = alder::series::encode_series(&series);
        assert_eq!(reencoded, data);
    }
});

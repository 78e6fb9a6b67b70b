#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // Checkpoint resume reads attacker-controllable files; decode must not
    // panic, and accepted checkpoints must round-trip.
    if let Ok(ck) = alder::checkpoint::Checkpoint::decode(data) {
        assert_eq!(ck.encode(), data);
    }
});

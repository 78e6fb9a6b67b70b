#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    // The parser must not panic, and anything it accepts must survive a
    // render/parse round trip unchanged.
    if let Ok(config) = alder::config::Config::parse(text) {
        let again = alder::config::Config::parse(&config.to_text()).unwrap();
        assert_eq!(again, config);
    }
});

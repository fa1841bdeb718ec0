#![no_main]

use libfuzzer_sys::fuzz_target;
use slicecubic::archimedean::QuadConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(cfg) = QuadConfig::parse(text) {
        // anything accepted is valid and survives a print/parse cycle
        assert!(cfg.validate().is_ok());
        let again = QuadConfig::parse(&cfg.to_string()).expect("printed config parses");
        assert_eq!(again, cfg);
    }
});

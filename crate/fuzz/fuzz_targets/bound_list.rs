#![no_main]

use libfuzzer_sys::fuzz_target;
use slicecubic::parse::{parse_bound_list, parse_real_list};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(bs) = parse_bound_list(text) {
        assert!(!bs.is_empty());
        let joined = bs.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        assert_eq!(parse_bound_list(&joined).unwrap(), bs);
    }
    if let Ok(xs) = parse_real_list(text) {
        assert!(xs.iter().all(|x| x.is_finite()));
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use slicecubic::lattice::{RepCounts, RepKind};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for kind in [RepKind::R4, RepKind::R6] {
        if let Ok(reps) = RepCounts::from_csv(kind, text) {
            let mut buf = Vec::new();
            reps.write_csv(&mut buf).unwrap();
            let back = RepCounts::from_csv(kind, std::str::from_utf8(&buf).unwrap()).unwrap();
            assert!(back.iter().eq(reps.iter()));
        }
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use session_core::{Analyzer, Mode};

fuzz_target!(|src: &str| {
    let analyzer = Analyzer::bundled();
    for mode in Mode::ALL {
        if analyzer.analyze_pretagged(src, mode).is_err() {
            return;
        }
    }
});

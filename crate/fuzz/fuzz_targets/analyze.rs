#![no_main]

use libfuzzer_sys::fuzz_target;
use session_core::{Analyzer, Mode};

fuzz_target!(|text: &str| {
    let analyzer = Analyzer::bundled();
    for mode in Mode::ALL {
        let a = analyzer.analyze(text, mode);
        assert!(a.score.is_valid());
        for s in &a.sentences {
            assert!(s.score().is_valid());
        }
    }
});

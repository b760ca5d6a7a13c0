#![no_main]

use libfuzzer_sys::fuzz_target;
use session_core::textprep::{preprocess_with, TechPatterns};

fuzz_target!(|src: &str| {
    if let Ok(patterns) = TechPatterns::parse(src) {
        let _ = preprocess_with("see foo.bar() at C:\\tmp\\x or http://a.b/c, it's *great*!", &patterns);
    }
});

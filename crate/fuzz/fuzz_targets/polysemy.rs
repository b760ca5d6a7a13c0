#![no_main]

use libfuzzer_sys::fuzz_target;
use session_core::adjust::{adjust_sentence, PolysemyRules};
use session_core::Analyzer;

fuzz_target!(|src: &str| {
    let Ok(rules) = PolysemyRules::parse(src) else { return };
    let analyzer = Analyzer::bundled();
    let mut doc = analyzer.prepare("I miss you. It's kind of lying in spite of the pretty force blocks.");
    for s in &mut doc.sentences {
        adjust_sentence(s, analyzer.lexicon(), &rules);
    }
});

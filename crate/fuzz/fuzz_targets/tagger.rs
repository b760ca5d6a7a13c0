#![no_main]

use libfuzzer_sys::fuzz_target;
use session_core::postag::{bundled, Tagger};

// Input with a NUL is split into lexicon and rules; otherwise it replaces
// the rules and the bundled lexicon is kept.
fuzz_target!(|src: &str| {
    let (lexicon, rules) = src.split_once('\0').unwrap_or((bundled::LEXICON, src));
    let Ok(tagger) = Tagger::from_sources(lexicon, rules) else { return };
    let analyzer = session_core::Analyzer::bundled();
    let mut doc = analyzer.prepare("I can't block this, but the blocks look pretty good to me.");
    tagger.tag(&mut doc);
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use session_core::lexicon::{Lexicon, LexiconSources};
use session_core::{Analyzer, Mode};

fuzz_target!(|src: &str| {
    let mut sources = LexiconSources::bundled();
    sources.filter_words = Some(src);
    if let Ok(lex) = Lexicon::from_sources(sources) {
        let _ = Analyzer::with_lexicon(lex).analyze("If I don't like it, so be it. Nothing works!", Mode::Full);
    }
});

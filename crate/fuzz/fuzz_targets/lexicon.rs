#![no_main]

use libfuzzer_sys::fuzz_target;
use session_core::lexicon::{Lexicon, LexiconSources};

// Sections are separated by NUL: sentiment, booster, negation, emoticon,
// curse. Missing sections fall back to the bundled files.
fuzz_target!(|src: &str| {
    let parts: Vec<&str> = src.split('\0').collect();
    let mut sources = LexiconSources::bundled();
    sources.sentiment = parts[0];
    if let Some(p) = parts.get(1) {
        sources.booster = p;
    }
    if let Some(p) = parts.get(2) {
        sources.negation = p;
    }
    if let Some(p) = parts.get(3) {
        sources.emoticon = Some(p);
    }
    if let Some(p) = parts.get(4) {
        sources.curse = Some(p);
    }
    if let Ok(lex) = Lexicon::from_sources(sources) {
        for e in lex.sentiments() {
            let _ = lex.lookup_sentiment(e.stem());
        }
    }
});

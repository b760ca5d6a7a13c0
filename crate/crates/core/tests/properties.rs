mod common;

use common::*;
use proptest::prelude::*;
use session_core::engine::{aggregate_document, SentimentScore};
use session_core::evaluator::{parse_dataset, DatasetFormat};
use session_core::lexicon::{Lexicon, LexiconSources};
use session_core::segmenter::parse_pretagged;
use session_core::textprep::preprocess;
use session_core::Analyzer;

fn analyzer() -> &'static Analyzer {
    static A: std::sync::OnceLock<Analyzer> = std::sync::OnceLock::new();
    A.get_or_init(Analyzer::bundled)
}

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: 500, ..ProptestConfig::default() }
}

fn ok(r: Result<(), String>) -> Result<(), TestCaseError> {
    r.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn scores_stay_in_range(text in any_text(), mode in any_mode()) {
        ok(check_bounds(&analyzer().analyze(&text, mode)))?;
    }

    #[test]
    fn filtered_sentences_are_neutral(text in any_text(), mode in any_mode()) {
        ok(check_filtered(&analyzer().analyze(&text, mode)))?;
    }

    #[test]
    fn suppressed_clauses_have_no_words(text in any_text(), mode in any_mode()) {
        ok(check_suppressed(&analyzer().analyze(&text, mode)))?;
    }

    #[test]
    fn negation_scope_is_bounded(text in any_text()) {
        ok(check_negation_scope(analyzer(), &text))?;
    }

    #[test]
    fn document_is_max_min_of_sentences(text in any_text(), mode in any_mode()) {
        ok(check_aggregation(&analyzer().analyze(&text, mode)))?;
    }

    #[test]
    fn modifiers_replay(text in any_text(), mode in any_mode()) {
        ok(check_replay(&analyzer().analyze(&text, mode)))?;
    }

    #[test]
    fn runs_are_deterministic(text in any_text(), mode in any_mode()) {
        let a = analyzer().analyze(&text, mode);
        let b = analyzer().analyze(&text, mode);
        prop_assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn aggregation_of_arbitrary_scores(scores in prop::collection::vec((1i8..=5, -5i8..=-1), 0..20)) {
        let scores: Vec<SentimentScore> = scores.into_iter().map(|(r, e)| score(r, e)).collect();
        let total = aggregate_document(&scores);
        prop_assert_eq!(total.rho, scores.iter().map(|s| s.rho).max().unwrap_or(1));
        prop_assert_eq!(total.eta, scores.iter().map(|s| s.eta).min().unwrap_or(-1));
    }

    #[test]
    fn preprocessing_keeps_original(text in any::<String>()) {
        let masked = preprocess(&text);
        prop_assert_eq!(masked.original.as_str(), text.as_str());
        for k in &masked.kept {
            prop_assert_eq!(&text[k.start..k.end], k.text.as_str());
        }
    }

    #[test]
    fn pretagged_parser_never_panics(src in "([a-z']{1,6}\t(NN|VB|JJ|RB|PRP|XX|ADJ)\n|---\n|\n){0,20}") {
        if let Ok(doc) = parse_pretagged(&src) {
            let _ = analyzer().analyze_document(doc, session_core::Mode::Full);
        }
    }

    #[test]
    fn dataset_parsers_never_panic(src in "[a-z0-9,\t\"\n -]{0,200}") {
        let _ = parse_dataset(&src, DatasetFormat::Csv, "p.csv");
        let _ = parse_dataset(&src, DatasetFormat::Tsv, "p.tsv");
    }

    #[test]
    fn lexicon_parser_never_panics(src in "([a-z*]{0,6}\t-?[0-9]{1,2}\n|#.*\n){0,15}") {
        let mut sources = LexiconSources::bundled();
        sources.sentiment = &src;
        let _ = Lexicon::from_sources(sources);
    }
}

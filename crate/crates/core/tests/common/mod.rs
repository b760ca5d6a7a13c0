#![allow(dead_code)]

use proptest::prelude::*;
use session_core::adjust::{self, AdjustKind, AdjustTarget};
use session_core::evaluator::{LabeledText, Rational};
use session_core::filters::Pattern;
use session_core::{Analysis, Analyzer, Mode, SentimentScore, Trinary};

pub fn score(rho: i8, eta: i8) -> SentimentScore {
    SentimentScore { rho, eta }
}

/// Text, expected sentence score, expected overall polarity.
pub const SCORING_SAMPLES: [(&str, (i8, i8), i8); 5] = [
    ("It's a good feature.", (2, -1), 1),
    ("It's a very good feature.", (3, -1), 1),
    ("It's not good feature.", (1, -2), -1),
    ("It's a good feature!", (3, -1), 1),
    ("It's a goooooood feature.", (3, -1), 1),
];

pub const REVIEW: &str = "This app is a really good in spite of some (minor) shortcomings. \
Its font sizes will get bigger or smaller to fit in the space allocated for them which I don't like. \
If you can solve the problem, I believe it will be more practical. \
Overall, it's a good app though.";

pub const REVIEW_BASELINE: [(i8, i8); 4] = [(3, -4), (2, -1), (1, -2), (2, -1)];
pub const REVIEW_FULL: [(i8, i8); 4] = [(3, -2), (1, -1), (1, -1), (2, -1)];

/// Text, manual label, expected full-mode output, expected baseline output.
pub const NEUTRAL_CONTRAST: [(&str, i8, i8, i8); 3] = [
    ("It's pretty easy to prevent aliasing by adding a condition *a != *b .", 0, 0, 1),
    ("If you're really worried about this, Java is not the language for you", 0, 0, -1),
    ("why do people hate anonymous block initializers", 0, 0, -1),
];

/// Text, manual label, expected full-mode output.
pub const MIXED_CONTRAST: [(&str, i8, i8); 3] = [
    ("Joel get it! i guess you are right", 1, 1),
    ("How to correctly print a CString to messagebox? There is nothing appear..", 0, 0),
    ("Are you afraid of a trademark lawsuit?", 0, 0),
];

fn label(v: i8) -> Trinary {
    Trinary::from_value(v.into()).expect("label in -1..=1")
}

/// Every worked example with its reference label. The scoring samples have
/// no manual label, so their expected polarity stands in.
pub fn fixture_corpus() -> Vec<LabeledText> {
    let mut out = Vec::new();
    let mut push = |id: String, text: &str, gold: i8| {
        out.push(LabeledText { id, text: text.to_string(), gold: label(gold) });
    };
    for (i, (text, _, overall)) in SCORING_SAMPLES.iter().enumerate() {
        push(format!("scoring-{}", i + 1), text, *overall);
    }
    push("review".into(), REVIEW, 1);
    for (i, (text, manual, _, _)) in NEUTRAL_CONTRAST.iter().enumerate() {
        push(format!("neutral-{}", i + 1), text, *manual);
    }
    for (i, (text, manual, _)) in MIXED_CONTRAST.iter().enumerate() {
        push(format!("mixed-{}", i + 1), text, *manual);
    }
    out
}

#[derive(Debug, Clone, Copy)]
pub enum Expect {
    Fits(Pattern, u8),
    /// Passes no filter pattern at all.
    FitsNothing,
    /// The pattern does not match (others may).
    Lacks(Pattern),
    Adjusts(AdjustKind, &'static str),
    NoAdjust(AdjustKind),
}

pub struct RuleSample {
    pub text: &'static str,
    pub expect: &'static [Expect],
}

use Expect::*;
use Pattern::{AboutMe, Decorated, Direct, Judgement};

/// Example sentences of the filter and adjust rule descriptions.
pub const RULE_SAMPLES: &[RuleSample] = &[
    RuleSample { text: "FEAR!!!!!!!!!!", expect: &[Fits(Direct, 1)] },
    RuleSample { text: "Thanks for your patience.", expect: &[Fits(Direct, 5)] },
    RuleSample { text: "Owen, thanks for the slides.", expect: &[Fits(Direct, 5)] },
    RuleSample { text: "Sounds good.", expect: &[Fits(Direct, 6)] },
    RuleSample { text: "The build completed.", expect: &[FitsNothing] },
    RuleSample { text: "This is very frustrating.", expect: &[Fits(Decorated, 2)] },
    RuleSample { text: "The performance degrades horrendously", expect: &[Fits(Decorated, 1)] },
    RuleSample { text: "The build is green.", expect: &[Lacks(Decorated)] },
    RuleSample { text: "I like playing with you", expect: &[Fits(AboutMe, 1), NoAdjust(AdjustKind::PolysemyNeutral)] },
    RuleSample { text: "These options confuse me.", expect: &[Fits(AboutMe, 2)] },
    RuleSample { text: "It will make me confused.", expect: &[Fits(AboutMe, 3)] },
    RuleSample { text: "This was my bad.", expect: &[Fits(AboutMe, 4)] },
    RuleSample { text: "he hates p tags, clearly", expect: &[Lacks(AboutMe)] },
    RuleSample { text: "It's ugly and inefficient", expect: &[Fits(Judgement, 1)] },
    RuleSample { text: "This sucks so much.", expect: &[Fits(Judgement, 2)] },
    RuleSample { text: "The problem just gets worse.", expect: &[Fits(Judgement, 3)] },
    RuleSample { text: "The biggest reason for failure is your carelessness", expect: &[Fits(Judgement, 4)] },
    RuleSample { text: "It has an excellent command line interface.", expect: &[Fits(Judgement, 5)] },
    RuleSample { text: "The function returns an integer.", expect: &[FitsNothing] },
    RuleSample {
        text: "If you're really worried about this, Java is not the language for you.",
        expect: &[Adjusts(AdjustKind::SubjunctiveSuppress, "if")],
    },
    RuleSample {
        text: "If the problem solved, I think it will be more practical.",
        expect: &[Adjusts(AdjustKind::SubjunctiveSuppress, "if")],
    },
    RuleSample { text: "The test passed.", expect: &[NoAdjust(AdjustKind::SubjunctiveSuppress)] },
    RuleSample { text: "it looks like this.", expect: &[Adjusts(AdjustKind::PolysemyNeutral, "like")] },
    RuleSample {
        text: "I'm pretty sure",
        expect: &[Adjusts(AdjustKind::PolysemyNeutral, "pretty"), Adjusts(AdjustKind::PolysemyBooster, "pretty")],
    },
    RuleSample { text: "She is pretty.", expect: &[NoAdjust(AdjustKind::PolysemyNeutral)] },
    RuleSample {
        text: "This app is a really good in spite of some (minor) shortcomings.",
        expect: &[Adjusts(AdjustKind::PolysemyNeutral, "spite")],
    },
    RuleSample { text: "I'm sure at first the code blocks", expect: &[Adjusts(AdjustKind::PolysemyNeutral, "block")] },
    RuleSample { text: "It's lying all over the internet.", expect: &[Adjusts(AdjustKind::PolysemyNeutral, "lying")] },
    RuleSample { text: "He was lying.", expect: &[NoAdjust(AdjustKind::PolysemyNeutral)] },
    RuleSample { text: "I miss you", expect: &[Adjusts(AdjustKind::PolysemyDualKeep, "miss")] },
    RuleSample { text: "You miss the semicolon here.", expect: &[Adjusts(AdjustKind::PolysemyNegativeOnly, "miss")] },
    RuleSample {
        text: "Its font sizes will get bigger or smaller to fit in the space allocated for them which I don't like.",
        expect: &[Fits(AboutMe, 1), Adjusts(AdjustKind::NegationNeutralize, "don't")],
    },
    RuleSample {
        text: "not to worry, it was a permissions issue with the file.",
        expect: &[Adjusts(AdjustKind::NegationNeutralize, "not")],
    },
    RuleSample { text: "no problem at all", expect: &[Adjusts(AdjustKind::NegationNeutralize, "no")] },
    RuleSample { text: "I like it", expect: &[NoAdjust(AdjustKind::NegationNeutralize)] },
];

/// Checks one sample. Filter expectations are read from a full-mode run,
/// adjust expectations from an adjust-only run so that the filter cannot
/// hide them.
pub fn check_sample(analyzer: &Analyzer, sample: &RuleSample) -> Result<(), String> {
    let full = analyzer.analyze(sample.text, Mode::Full);
    let adjusted = analyzer.analyze(sample.text, Mode::AdjustOnly);
    let patterns: Vec<(Pattern, u8)> =
        full.sentences.iter().flat_map(|s| s.patterns.iter().map(|m| (m.pattern, m.situation))).collect();
    let actions: Vec<(AdjustKind, String)> = adjusted
        .sentences
        .iter()
        .flat_map(|s| s.adjustments.iter().map(|a| (a.kind, a.rule_word.clone())))
        .collect();
    for e in sample.expect {
        let ok = match *e {
            Fits(p, n) => patterns.contains(&(p, n)),
            FitsNothing => patterns.is_empty() && full.sentences.iter().all(|s| s.filtered),
            Lacks(p) => patterns.iter().all(|(q, _)| *q != p),
            Adjusts(kind, word) => actions.iter().any(|(k, w)| *k == kind && w == word),
            NoAdjust(kind) => actions.iter().all(|(k, _)| *k != kind),
        };
        if !ok {
            return Err(format!("{:?}: expected {e:?}, patterns {patterns:?}, actions {actions:?}", sample.text));
        }
    }
    Ok(())
}

/// Pipeline invariants for one analysis run.
pub fn check_invariants(analyzer: &Analyzer, text: &str, mode: Mode) -> Result<(), String> {
    let a = analyzer.analyze(text, mode);
    check_bounds(&a)?;
    check_filtered(&a)?;
    check_suppressed(&a)?;
    check_aggregation(&a)?;
    check_replay(&a)?;
    if mode.adjusts() {
        check_negation_scope(analyzer, text)?;
    }
    let again = analyzer.analyze(text, mode);
    if a != again {
        return Err("repeated run differs".into());
    }
    Ok(())
}

pub fn check_bounds(a: &Analysis) -> Result<(), String> {
    let valid = |s: SentimentScore| (1..=5).contains(&s.rho) && (-5..=-1).contains(&s.eta);
    if !valid(a.score) {
        return Err(format!("document score {} out of range", a.score));
    }
    for s in &a.sentences {
        if !valid(s.score()) {
            return Err(format!("sentence score {} out of range", s.score()));
        }
        for w in &s.words {
            if !valid(w.base) || !valid(w.final_score) {
                return Err(format!("word {:?} out of range", w.token));
            }
        }
    }
    Ok(())
}

pub fn check_filtered(a: &Analysis) -> Result<(), String> {
    for s in &a.sentences {
        if s.filtered && !a.mode.filters() {
            return Err("sentence filtered outside a filtering mode".into());
        }
        if s.filtered && (s.rho, s.eta) != (1, -1) {
            return Err(format!("filtered sentence scored ({},{})", s.rho, s.eta));
        }
        if s.filtered && !s.words.is_empty() {
            return Err("filtered sentence has word annotations".into());
        }
    }
    Ok(())
}

pub fn check_suppressed(a: &Analysis) -> Result<(), String> {
    for s in &a.sentences {
        for (ci, c) in s.clauses.iter().enumerate() {
            if c.suppressed && !a.mode.adjusts() {
                return Err("clause suppressed outside an adjusting mode".into());
            }
            if c.suppressed && s.words.iter().any(|w| w.clause == ci || (c.start..c.end).contains(&w.index)) {
                return Err(format!("suppressed clause {ci} has word annotations"));
            }
        }
    }
    Ok(())
}

pub fn check_aggregation(a: &Analysis) -> Result<(), String> {
    let rho = a.sentences.iter().map(|s| s.rho).fold(1, i8::max);
    let eta = a.sentences.iter().map(|s| s.eta).fold(-1, i8::min);
    if (rho, eta) != (a.score.rho, a.score.eta) {
        return Err(format!("document {} is not the max/min ({rho},{eta})", a.score));
    }
    let expected = match rho.cmp(&-eta) {
        std::cmp::Ordering::Greater => Trinary::Positive,
        std::cmp::Ordering::Less => Trinary::Negative,
        std::cmp::Ordering::Equal => Trinary::Neutral,
    };
    if a.trinary != expected {
        return Err(format!("trinary {} for {}", a.trinary, a.score));
    }
    Ok(())
}

pub fn check_replay(a: &Analysis) -> Result<(), String> {
    for s in &a.sentences {
        for w in &s.words {
            if w.replay() != w.final_score {
                return Err(format!("modifiers of {:?} do not replay to the final score", w.token));
            }
        }
    }
    Ok(())
}

/// Every neutralized token lies within the scope of some trigger to its
/// left in the same clause: at most 3 (or 1) unmasked word tokens, not
/// counting "to".
pub fn check_negation_scope(analyzer: &Analyzer, text: &str) -> Result<(), String> {
    let doc = analyzer.prepare(text);
    let lex = analyzer.lexicon();
    let extra = &lex.filter_words().extra_negations;
    for sentence in &doc.sentences {
        let actions = adjust::plan_sentence(sentence, lex, analyzer.polysemy());
        for a in actions.iter().filter(|a| a.kind == AdjustKind::NegationNeutralize) {
            let AdjustTarget::Token(p) = a.target else {
                return Err("negation action without a token target".into());
            };
            let (ci, ti) = sentence.locate(p).ok_or("target outside the sentence")?;
            let tokens = &sentence.clauses[ci].tokens;
            let limit = if extra.contains(&a.rule_word) { 1 } else { 3 };
            let within = (0..ti).any(|t| {
                tokens[t].lower == a.rule_word
                    && tokens[t + 1..=ti].iter().filter(|x| x.is_word() && x.lower != "to").count() <= limit
            });
            if !within {
                return Err(format!("{:?} neutralized outside the scope of {:?}", tokens[ti].text, a.rule_word));
            }
        }
    }
    Ok(())
}

const VOCAB: &[&str] = &[
    "good", "bad", "great", "hate", "like", "love", "problem", "worried", "awful", "nice", "miss", "spite",
    "kind", "pretty", "super", "block", "blocks", "force", "lying", "thanks", "sucks", "worse", "excellent",
    "goooood", "baaad", "very", "really", "extremely", "so", "not", "never", "don't", "isn't", "nothing", "no",
    "without", "to", "if", "unless", "because", "but", "I", "me", "my", "you", "it", "this", "he", "they", "is",
    "was", "are", "get", "gets", "the", "a", "an", "of", "in", "always", "even", "still", "how", "enough",
    "wow", "please", "app", "code", "build", "feature", "works", "damn", ":)", ":(", "!", "?", ".", ",",
    "a->b", "foo_bar", "[x]", "\"quoted\"", "http://x.io/a", "*a != *b", "CString", "messagebox", "FEAR",
];

pub fn vocab_text() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(VOCAB), 0..40).prop_map(|words| words.join(" "))
}

pub fn any_text() -> impl Strategy<Value = String> {
    prop_oneof![
        4 => vocab_text(),
        1 => "[ -~\\n]{0,120}",
        1 => any::<String>(),
    ]
}

pub fn any_mode() -> impl Strategy<Value = Mode> {
    prop::sample::select(Mode::ALL.to_vec())
}

pub fn trinary() -> impl Strategy<Value = Trinary> {
    prop::sample::select(Trinary::ALL.to_vec())
}

pub fn pairs() -> impl Strategy<Value = Vec<(Trinary, Trinary)>> {
    prop::collection::vec((trinary(), trinary()), 1..=50)
}

/// Per-class counts by direct enumeration of the pairs.
pub fn brute_counts(pairs: &[(Trinary, Trinary)], c: Trinary) -> (u64, u64, u64) {
    let gold = pairs.iter().filter(|(g, _)| *g == c).count() as u64;
    let predicted = pairs.iter().filter(|(_, p)| *p == c).count() as u64;
    let correct = pairs.iter().filter(|(g, p)| *g == c && *p == c).count() as u64;
    (gold, predicted, correct)
}

/// Checks a metrics report against brute-force counts. F uses the closed
/// form 2c / (gold + predicted), which equals 2PR / (P + R) whenever both
/// are defined and non-zero.
pub fn check_metrics(pairs: &[(Trinary, Trinary)]) -> Result<(), String> {
    let report = session_core::evaluator::compute_metrics(pairs).map_err(|e| e.to_string())?;
    let n = pairs.len() as u64;
    let hits = pairs.iter().filter(|(g, p)| g == p).count() as u64;
    if report.n != n || report.overall_accuracy != Rational::new(hits, n) {
        return Err(format!("accuracy {} != {hits}/{n}", report.overall_accuracy));
    }
    for c in Trinary::ALL {
        let (gold, predicted, correct) = brute_counts(pairs, c);
        let m = report.class(c);
        if (m.support, m.predicted, m.correct) != (gold, predicted, correct) {
            return Err(format!("{c:?} counts differ"));
        }
        let p = if predicted == 0 { Rational::from_integer(0) } else { Rational::new(correct, predicted) };
        if m.precision != p {
            return Err(format!("{c:?} precision {} != {p}", m.precision));
        }
        let r = (gold > 0).then(|| Rational::new(correct, gold));
        if m.recall != r || m.absent() != (gold == 0) {
            return Err(format!("{c:?} recall {:?} != {r:?}", m.recall));
        }
        let f = if correct == 0 { Rational::from_integer(0) } else { Rational::new(2 * correct, gold + predicted) };
        if m.f_measure != f {
            return Err(format!("{c:?} F {} != {f}", m.f_measure));
        }
        if let Some(r) = m.recall {
            let p = m.precision;
            if p + r > Rational::from_integer(0) && m.f_measure * (p + r) != Rational::from_integer(2) * p * r {
                return Err(format!("{c:?} F is not 2PR/(P+R)"));
            }
        }
    }
    Ok(())
}

//! Baseline scoring: word scores, boosters, letter repetition, negation,
//! the exclamation rule, aggregation and the trinary decision. The
//! [`Analyzer`] wires the whole pipeline together.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::adjust::{self, AdjustAction, AdjustKind, AdjustTarget, PolysemyRules};
use crate::error::{Error, Result};
use crate::filters::{self, PatternMatch};
use crate::lexicon::{collapse_variants, Lexicon, Strength};
use crate::postag::{PosTag, Tagger};
use crate::segmenter::{self, BoundaryCause, Document, Sentence, Terminal, Token};
use crate::textprep::{self, TechPatterns, TokenKind};

pub const SCHEMA_VERSION: u32 = 1;

pub const MIN_SCORE: i8 = 1;
pub const MAX_SCORE: i8 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SentimentScore {
    pub rho: i8,
    pub eta: i8,
}

impl SentimentScore {
    pub const NEUTRAL: SentimentScore = SentimentScore { rho: 1, eta: -1 };

    /// Clamps into `[1,5] x [-5,-1]`.
    pub fn new(rho: i8, eta: i8) -> Self {
        SentimentScore {
            rho: rho.clamp(MIN_SCORE, MAX_SCORE),
            eta: eta.clamp(-MAX_SCORE, -MIN_SCORE),
        }
    }

    pub fn is_valid(self) -> bool {
        (MIN_SCORE..=MAX_SCORE).contains(&self.rho) && (-MAX_SCORE..=-MIN_SCORE).contains(&self.eta)
    }

    pub fn is_neutral(self) -> bool {
        self == Self::NEUTRAL
    }

    pub fn positive_dominant(self) -> bool {
        self.rho >= -self.eta
    }

    /// Component-wise max/min.
    pub fn combine(self, other: SentimentScore) -> SentimentScore {
        SentimentScore { rho: self.rho.max(other.rho), eta: self.eta.min(other.eta) }
    }

    /// Adds `delta` to the magnitude of the dominant component.
    pub fn strengthen(self, delta: i8) -> SentimentScore {
        if self.positive_dominant() {
            SentimentScore::new(self.rho + delta, self.eta)
        } else {
            SentimentScore::new(self.rho, self.eta - delta)
        }
    }
}

impl From<Strength> for SentimentScore {
    fn from(s: Strength) -> Self {
        SentimentScore::new(s.pos, s.neg)
    }
}

impl fmt::Display for SentimentScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.rho, self.eta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Trinary {
    Negative,
    Neutral,
    Positive,
}

impl Trinary {
    pub const ALL: [Trinary; 3] = [Trinary::Positive, Trinary::Neutral, Trinary::Negative];

    pub fn value(self) -> i8 {
        match self {
            Trinary::Positive => 1,
            Trinary::Neutral => 0,
            Trinary::Negative => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Trinary::Positive => "positive",
            Trinary::Neutral => "neutral",
            Trinary::Negative => "negative",
        }
    }

    pub fn from_value(v: i64) -> Option<Trinary> {
        match v {
            1 => Some(Trinary::Positive),
            0 => Some(Trinary::Neutral),
            -1 => Some(Trinary::Negative),
            _ => None,
        }
    }
}

impl fmt::Display for Trinary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Serialize for Trinary {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.value())
    }
}

impl FromStr for Trinary {
    type Err = String;

    /// Accepts `positive`/`neutral`/`negative` (any case) and `1`/`0`/`-1`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "positive" | "1" | "+1" => Ok(Trinary::Positive),
            "neutral" | "0" => Ok(Trinary::Neutral),
            "negative" | "-1" => Ok(Trinary::Negative),
            _ => Err(t.to_string()),
        }
    }
}

pub fn trinary(score: SentimentScore) -> Trinary {
    match score.rho.cmp(&-score.eta) {
        std::cmp::Ordering::Greater => Trinary::Positive,
        std::cmp::Ordering::Less => Trinary::Negative,
        std::cmp::Ordering::Equal => Trinary::Neutral,
    }
}

/// Polarity from the sign of `rho + eta`, reported for comparison only.
pub fn sign_sum(score: SentimentScore) -> Trinary {
    match (score.rho + score.eta).signum() {
        1 => Trinary::Positive,
        -1 => Trinary::Negative,
        _ => Trinary::Neutral,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Baseline,
    #[serde(rename = "filter")]
    FilterOnly,
    #[serde(rename = "adjust")]
    AdjustOnly,
    Full,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::Baseline, Mode::FilterOnly, Mode::AdjustOnly, Mode::Full];

    pub fn filters(self) -> bool {
        matches!(self, Mode::FilterOnly | Mode::Full)
    }

    pub fn adjusts(self) -> bool {
        matches!(self, Mode::AdjustOnly | Mode::Full)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Baseline => "baseline",
            Mode::FilterOnly => "filter",
            Mode::AdjustOnly => "adjust",
            Mode::Full => "full",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "baseline" => Ok(Mode::Baseline),
            "filter" | "filter-only" | "filteronly" => Ok(Mode::FilterOnly),
            "adjust" | "adjust-only" | "adjustonly" => Ok(Mode::AdjustOnly),
            "full" => Ok(Mode::Full),
            other => Err(format!("unknown mode {other:?} (expected baseline, filter, adjust or full)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DensityStat {
    pub n_s: usize,
    pub n_w: usize,
}

impl DensityStat {
    pub fn density(self) -> f64 {
        if self.n_w == 0 {
            0.0
        } else {
            self.n_s as f64 / self.n_w as f64
        }
    }

    /// Exact test of `n_s / n_w > num / den`.
    pub fn exceeds(self, num: usize, den: usize) -> bool {
        self.n_w > 0 && self.n_s * den > num * self.n_w
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PolysemyEffect {
    DualKeep,
    NegativeOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Modifier {
    Polysemy { rule: String, effect: PolysemyEffect },
    Booster { delta: i8, word: String },
    Repetition,
    NegatedFlip { word: String },
    Neutralized { rule: String },
}

impl Modifier {
    pub fn apply(&self, score: SentimentScore) -> SentimentScore {
        match self {
            Modifier::Polysemy { effect: PolysemyEffect::DualKeep, .. } => score,
            Modifier::Polysemy { effect: PolysemyEffect::NegativeOnly, .. } => SentimentScore::new(1, score.eta),
            Modifier::Booster { delta, .. } => score.strengthen(*delta),
            Modifier::Repetition => score.strengthen(1),
            Modifier::NegatedFlip { .. } => SentimentScore::new(-score.eta, -score.rho),
            Modifier::Neutralized { .. } => SentimentScore::NEUTRAL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordScoreAnnotation {
    /// Sentence-level token position.
    pub index: usize,
    pub clause: usize,
    pub token: String,
    pub base: SentimentScore,
    pub modifiers: Vec<Modifier>,
    #[serde(rename = "final")]
    pub final_score: SentimentScore,
}

impl WordScoreAnnotation {
    /// `base` with every modifier applied in order.
    pub fn replay(&self) -> SentimentScore {
        self.modifiers.iter().fold(self.base, |s, m| m.apply(s))
    }
}

/// Lexicon strength of a lowercased word, trying letter-repetition
/// collapses when the word itself has no entry. The flag reports a match
/// through a collapse.
pub fn word_strength(lex: &Lexicon, lower: &str) -> Option<(Strength, bool)> {
    if let Some(s) = lex.lookup_sentiment(lower) {
        return Some((s, false));
    }
    collapse_variants(lower)
        .iter()
        .find_map(|v| lex.lookup_sentiment(v))
        .map(|s| (s, true))
}

/// Unmasked word token with a non-neutral lexicon entry.
pub fn is_sentimental(lex: &Lexicon, token: &Token) -> bool {
    token.is_word() && word_strength(lex, &token.lower).is_some_and(|(s, _)| !s.is_neutral())
}

pub fn sentimental_density(sentence: &Sentence, lex: &Lexicon) -> DensityStat {
    let words = sentence.tokens().filter(|t| t.is_word());
    let (mut n_s, mut n_w) = (0, 0);
    for t in words {
        n_w += 1;
        if is_sentimental(lex, t) {
            n_s += 1;
        }
    }
    DensityStat { n_s, n_w }
}

/// Adjust-rule effects on one token position.
#[derive(Debug, Default)]
struct TokenAdjust<'a> {
    neutral: Option<String>,
    polysemy: Option<(&'a str, PolysemyEffect)>,
    booster: Option<&'a str>,
}

fn token_adjusts(actions: &[AdjustAction], position: usize) -> TokenAdjust<'_> {
    let mut out = TokenAdjust::default();
    for a in actions {
        if a.target != AdjustTarget::Token(position) {
            continue;
        }
        match a.kind {
            AdjustKind::NegationNeutralize if out.neutral.is_none() => {
                out.neutral = Some(format!("negation:{}", a.rule_word));
            }
            AdjustKind::PolysemyNeutral if out.neutral.is_none() => {
                out.neutral = Some(format!("polysemy:{}", a.rule_word));
            }
            AdjustKind::PolysemyDualKeep => out.polysemy = Some((&a.rule_word, PolysemyEffect::DualKeep)),
            AdjustKind::PolysemyNegativeOnly => out.polysemy = Some((&a.rule_word, PolysemyEffect::NegativeOnly)),
            AdjustKind::PolysemyBooster => out.booster = Some(&a.rule_word),
            _ => {}
        }
    }
    out
}

/// Scores one clause. `actions` are the adjust actions of the owning
/// sentence; a suppressed clause scores neutral with no annotations.
pub fn score_clause(
    sentence: &Sentence,
    clause_index: usize,
    lex: &Lexicon,
    mode: Mode,
    actions: &[AdjustAction],
) -> Result<(SentimentScore, Vec<WordScoreAnnotation>)> {
    let clause = sentence
        .clauses
        .get(clause_index)
        .ok_or_else(|| Error::Contract(format!("clause {clause_index} out of range")))?;
    if clause.tokens.iter().any(|t| !t.masked && t.pos.is_none()) {
        return Err(Error::Contract(format!("clause {clause_index} of {:?} is not POS-tagged", sentence.raw)));
    }
    let mut score = SentimentScore::NEUTRAL;
    let mut words = Vec::new();
    if clause.suppressed {
        return Ok((score, words));
    }
    let offset = sentence.position(clause_index, 0);

    for (i, tok) in clause.tokens.iter().enumerate() {
        if tok.masked {
            continue;
        }
        let position = offset + i;
        let (base, repeated) = match tok.kind {
            TokenKind::Emoticon => match lex.emoticon_polarity(&tok.text) {
                Some(v) if v > 0 => (SentimentScore::new(1 + v, -1), false),
                Some(v) if v < 0 => (SentimentScore::new(1, -1 + v), false),
                _ => continue,
            },
            TokenKind::Word => match word_strength(lex, &tok.lower) {
                Some((s, rep)) => (SentimentScore::from(s), rep),
                None => continue,
            },
            TokenKind::Punct => continue,
        };
        let adj = token_adjusts(actions, position);
        let mut modifiers = Vec::new();
        if let Some(rule) = adj.neutral.clone().filter(|_| mode.adjusts()) {
            modifiers.push(Modifier::Neutralized { rule });
        } else {
            if let Some((word, effect)) = adj.polysemy.filter(|_| mode.adjusts()) {
                modifiers.push(Modifier::Polysemy { rule: word.to_string(), effect });
            }
            let prev = i.checked_sub(1).map(|p| &clause.tokens[p]).filter(|p| p.is_word());
            if tok.kind == TokenKind::Word {
                if let Some(delta) = prev.and_then(|p| lex.booster_delta(&p.lower)) {
                    modifiers.push(Modifier::Booster { delta, word: prev.unwrap().lower.clone() });
                } else if let Some(word) = adj.booster.filter(|_| mode.adjusts()) {
                    modifiers.push(Modifier::Booster { delta: 1, word: word.to_string() });
                }
                if repeated {
                    modifiers.push(Modifier::Repetition);
                }
                if !mode.adjusts() {
                    if let Some(p) = prev.filter(|p| lex.is_negation(&p.lower)) {
                        modifiers.push(Modifier::NegatedFlip { word: p.lower.clone() });
                    }
                }
            }
        }
        let ann = WordScoreAnnotation {
            index: position,
            clause: clause_index,
            token: tok.text.clone(),
            base,
            final_score: SentimentScore::NEUTRAL,
            modifiers,
        };
        let final_score = ann.replay();
        score = score.combine(final_score);
        words.push(WordScoreAnnotation { final_score, ..ann });
    }
    Ok((score, words))
}

/// One `+1` on the dominant component when the sentence has any unmasked
/// `!` and is not neutral.
pub fn apply_exclamation(score: SentimentScore, sentence: &Sentence) -> SentimentScore {
    if sentence.exclamation_count == 0 || score.is_neutral() {
        score
    } else {
        score.strengthen(1)
    }
}

pub fn aggregate_document(sentence_scores: &[SentimentScore]) -> SentimentScore {
    sentence_scores.iter().fold(SentimentScore::NEUTRAL, |acc, &s| acc.combine(s))
}

/// Scores every clause, then applies the exclamation rule.
pub fn score_sentence(
    sentence: &Sentence,
    lex: &Lexicon,
    mode: Mode,
    actions: &[AdjustAction],
) -> Result<(SentimentScore, Vec<WordScoreAnnotation>)> {
    let mut score = SentimentScore::NEUTRAL;
    let mut words = Vec::new();
    for ci in 0..sentence.clauses.len() {
        let (s, w) = score_clause(sentence, ci, lex, mode, actions)?;
        score = score.combine(s);
        words.extend(w);
    }
    Ok((apply_exclamation(score, sentence), words))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceToken {
    pub text: String,
    pub pos: Option<PosTag>,
    pub clause: usize,
    pub neutralized: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClauseTrace {
    pub start: usize,
    pub end: usize,
    pub boundary_cause: BoundaryCause,
    pub suppressed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityTrace {
    pub n_s: usize,
    pub n_w: usize,
    pub density: f64,
}

/// Per-sentence record: matched patterns, adjust actions and word scores.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SentenceAnalysis {
    pub raw: String,
    pub rho: i8,
    pub eta: i8,
    pub terminal: Terminal,
    pub exclamation_count: usize,
    /// True when the sentence failed every filter pattern.
    pub filtered: bool,
    pub density: DensityTrace,
    pub tokens: Vec<TraceToken>,
    pub clauses: Vec<ClauseTrace>,
    pub patterns: Vec<PatternMatch>,
    pub adjustments: Vec<AdjustAction>,
    pub words: Vec<WordScoreAnnotation>,
}

impl SentenceAnalysis {
    pub fn score(&self) -> SentimentScore {
        SentimentScore { rho: self.rho, eta: self.eta }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Analysis {
    pub schema_version: u32,
    pub mode: Mode,
    pub score: SentimentScore,
    pub trinary: Trinary,
    pub sentences: Vec<SentenceAnalysis>,
}

impl Analysis {
    pub fn sentence_scores(&self) -> Vec<SentimentScore> {
        self.sentences.iter().map(SentenceAnalysis::score).collect()
    }
}

/// Lexicon plus the tagging, masking and polysemy tables.
#[derive(Debug, Clone)]
pub struct Analyzer {
    lexicon: Lexicon,
    tagger: Tagger,
    patterns: TechPatterns,
    polysemy: PolysemyRules,
}

impl Analyzer {
    pub fn new(lexicon: Lexicon, tagger: Tagger, patterns: TechPatterns, polysemy: PolysemyRules) -> Self {
        Analyzer { lexicon, tagger, patterns, polysemy }
    }

    pub fn bundled() -> Self {
        Analyzer::with_lexicon(Lexicon::bundled())
    }

    /// Bundled tagger, technical patterns and polysemy table around `lexicon`.
    pub fn with_lexicon(lexicon: Lexicon) -> Self {
        Analyzer {
            lexicon,
            tagger: Tagger::bundled().clone(),
            patterns: TechPatterns::bundled().clone(),
            polysemy: PolysemyRules::bundled().clone(),
        }
    }

    /// Loads the lexicon from `dir`. `techpatterns.conf`,
    /// `tagger_lexicon.txt` + `tagger_rules.conf` and `polysemy_rules.conf`
    /// are picked up from the same directory when present.
    pub fn from_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let mut analyzer = Analyzer::with_lexicon(Lexicon::load(dir)?);
        if dir.join(textprep::TECHPATTERNS_FILE).is_file() {
            analyzer.patterns = TechPatterns::load(dir.join(textprep::TECHPATTERNS_FILE))?;
        }
        if dir.join(crate::postag::TAGGER_LEXICON_FILE).is_file() || dir.join(crate::postag::TAGGER_RULES_FILE).is_file() {
            analyzer.tagger = Tagger::load(dir)?;
        }
        if dir.join(adjust::POLYSEMY_FILE).is_file() {
            analyzer.polysemy = PolysemyRules::load(dir.join(adjust::POLYSEMY_FILE))?;
        }
        Ok(analyzer)
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn tagger(&self) -> &Tagger {
        &self.tagger
    }

    pub fn polysemy(&self) -> &PolysemyRules {
        &self.polysemy
    }

    /// Preprocesses, segments and tags `text` without scoring it.
    pub fn prepare(&self, text: &str) -> Document {
        let masked = textprep::preprocess_with(text, &self.patterns);
        let mut doc = segmenter::segment(&masked, &self.lexicon.filter_words().clause_conjunctions);
        self.tagger.tag(&mut doc);
        doc
    }

    pub fn analyze(&self, text: &str, mode: Mode) -> Analysis {
        self.analyze_document(self.prepare(text), mode)
            .expect("tagger output is fully tagged")
    }

    /// Analyzes the pre-tagged exchange format, keeping its tags.
    pub fn analyze_pretagged(&self, src: &str, mode: Mode) -> Result<Analysis> {
        self.analyze_document(segmenter::parse_pretagged(src)?, mode)
    }

    /// Runs filter, adjust and scoring over an already tagged document.
    pub fn analyze_document(&self, mut doc: Document, mode: Mode) -> Result<Analysis> {
        let lex = &self.lexicon;
        let mut sentences = Vec::with_capacity(doc.sentences.len());
        for sentence in &mut doc.sentences {
            sentence.require_tagged()?;
            let density = sentimental_density(sentence, lex);
            let (pass, patterns) = if mode.filters() {
                filters::should_analyze(sentence, lex)?
            } else {
                (true, Vec::new())
            };
            let (score, adjustments, words) = if pass {
                let actions =
                    if mode.adjusts() { adjust::adjust_sentence(sentence, lex, &self.polysemy) } else { Vec::new() };
                let (score, words) = score_sentence(sentence, lex, mode, &actions)?;
                (score, actions, words)
            } else {
                (SentimentScore::NEUTRAL, Vec::new(), Vec::new())
            };
            sentences.push(trace_sentence(sentence, score, !pass, density, patterns, adjustments, words));
        }
        let score = aggregate_document(&sentences.iter().map(SentenceAnalysis::score).collect::<Vec<_>>());
        Ok(Analysis { schema_version: SCHEMA_VERSION, mode, score, trinary: trinary(score), sentences })
    }
}

fn trace_sentence(
    sentence: &Sentence,
    score: SentimentScore,
    filtered: bool,
    density: DensityStat,
    patterns: Vec<PatternMatch>,
    adjustments: Vec<AdjustAction>,
    words: Vec<WordScoreAnnotation>,
) -> SentenceAnalysis {
    let mut tokens = Vec::with_capacity(sentence.token_count());
    let mut clauses = Vec::with_capacity(sentence.clauses.len());
    for (ci, clause) in sentence.clauses.iter().enumerate() {
        let start = tokens.len();
        tokens.extend(clause.tokens.iter().map(|t| TraceToken {
            text: t.text.clone(),
            pos: t.pos,
            clause: ci,
            neutralized: t.neutralized,
        }));
        clauses.push(ClauseTrace {
            start,
            end: tokens.len(),
            boundary_cause: clause.boundary_cause,
            suppressed: clause.suppressed,
        });
    }
    SentenceAnalysis {
        raw: sentence.raw.clone(),
        rho: score.rho,
        eta: score.eta,
        terminal: sentence.terminal,
        exclamation_count: sentence.exclamation_count,
        filtered,
        density: DensityTrace { n_s: density.n_s, n_w: density.n_w, density: (density.density() * 1e4).round() / 1e4 },
        tokens,
        clauses,
        patterns,
        adjustments,
        words,
    }
}

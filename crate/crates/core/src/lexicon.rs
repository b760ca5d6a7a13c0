//! Word lists that drive scoring.
//!
//! The on-disk layout follows the plain-text, tab-separated convention of
//! SentiStrength-style list files, so third-party lexicons can be dropped in
//! without conversion:
//!
//! | file                      | line format                          | required |
//! |---------------------------|--------------------------------------|----------|
//! | `EmotionLookupTable.txt`  | `word<TAB>signed strength`           | yes      |
//! | `BoosterWordList.txt`     | `word<TAB>delta`                     | yes      |
//! | `NegatingWordList.txt`    | `word`                               | yes      |
//! | `EmoticonLookupTable.txt` | `emoticon<TAB>signed polarity`       | no       |
//! | `CurseWordList.txt`       | `word` (exactly four lines)          | no       |
//! | `FilterWordSets.txt`      | `key: value, value, ...`             | no       |
//!
//! Optional files fall back to the bundled defaults. A line that starts with
//! `#` and contains no tab is a comment; trailing tab-separated columns after
//! the value are ignored.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

pub const SENTIMENT_FILE: &str = "EmotionLookupTable.txt";
pub const BOOSTER_FILE: &str = "BoosterWordList.txt";
pub const NEGATION_FILE: &str = "NegatingWordList.txt";
pub const EMOTICON_FILE: &str = "EmoticonLookupTable.txt";
pub const CURSE_FILE: &str = "CurseWordList.txt";
pub const FILTER_WORDS_FILE: &str = "FilterWordSets.txt";

const MIN_STRENGTH: i8 = 1;
const MAX_STRENGTH: i8 = 5;
const MAX_BOOSTER: i8 = 2;
const CURSE_PREFIXES: [&str; 4] = ["fu", "da", "sh", "he"];

/// Raw contents of the bundled fixture lexicon.
pub mod bundled {
    pub const SENTIMENT: &str = include_str!("../data/lexicon/EmotionLookupTable.txt");
    pub const BOOSTER: &str = include_str!("../data/lexicon/BoosterWordList.txt");
    pub const NEGATION: &str = include_str!("../data/lexicon/NegatingWordList.txt");
    pub const EMOTICON: &str = include_str!("../data/lexicon/EmoticonLookupTable.txt");
    pub const CURSE: &str = include_str!("../data/lexicon/CurseWordList.txt");
    pub const FILTER_WORDS: &str = include_str!("../data/lexicon/FilterWordSets.txt");
}

/// Positive and negative strength of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Strength {
    pub pos: i8,
    pub neg: i8,
}

impl Strength {
    pub const NEUTRAL: Strength = Strength { pos: 1, neg: -1 };

    pub fn new(pos: i8, neg: i8) -> Self {
        Strength { pos, neg }
    }

    pub fn is_neutral(self) -> bool {
        self == Self::NEUTRAL
    }

    pub fn clamped(self) -> Self {
        Strength {
            pos: self.pos.clamp(MIN_STRENGTH, MAX_STRENGTH),
            neg: self.neg.clamp(-MAX_STRENGTH, -MIN_STRENGTH),
        }
    }
}

/// One line (or pair of lines) of the sentiment table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentimentEntry {
    pub pattern: String,
    pub positive: i8,
    pub negative: i8,
}

impl SentimentEntry {
    pub fn is_wildcard(&self) -> bool {
        self.pattern.ends_with('*')
    }

    pub fn stem(&self) -> &str {
        self.pattern.trim_end_matches('*')
    }

    pub fn strength(&self) -> Strength {
        Strength::new(self.positive, self.negative)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoosterEntry<'a> {
    pub word: &'a str,
    pub delta: i8,
}

/// Small fixed word sets consumed by segmentation, filter and adjust rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterWordSets {
    pub please_exceptions: Vec<String>,
    pub wide_scope_adverbs: Vec<String>,
    /// May contain multi-word entries such as `sort of`.
    pub pseudo_adverbs: Vec<String>,
    pub extra_negations: Vec<String>,
    pub subjunctive_markers: Vec<String>,
    pub clause_conjunctions: Vec<String>,
}

impl FilterWordSets {
    const KEYS: [&'static str; 6] = [
        "please_exceptions",
        "wide_scope_adverbs",
        "pseudo_adverbs",
        "extra_negations",
        "subjunctive_markers",
        "clause_conjunctions",
    ];

    pub fn empty() -> Self {
        FilterWordSets {
            please_exceptions: Vec::new(),
            wide_scope_adverbs: Vec::new(),
            pseudo_adverbs: Vec::new(),
            extra_negations: Vec::new(),
            subjunctive_markers: Vec::new(),
            clause_conjunctions: Vec::new(),
        }
    }

    fn slot(&mut self, key: &str) -> Option<&mut Vec<String>> {
        Some(match key {
            "please_exceptions" => &mut self.please_exceptions,
            "wide_scope_adverbs" => &mut self.wide_scope_adverbs,
            "pseudo_adverbs" => &mut self.pseudo_adverbs,
            "extra_negations" => &mut self.extra_negations,
            "subjunctive_markers" => &mut self.subjunctive_markers,
            "clause_conjunctions" => &mut self.clause_conjunctions,
            _ => return None,
        })
    }

    fn get(&self, key: &str) -> &[String] {
        match key {
            "please_exceptions" => &self.please_exceptions,
            "wide_scope_adverbs" => &self.wide_scope_adverbs,
            "pseudo_adverbs" => &self.pseudo_adverbs,
            "extra_negations" => &self.extra_negations,
            "subjunctive_markers" => &self.subjunctive_markers,
            "clause_conjunctions" => &self.clause_conjunctions,
            _ => &[],
        }
    }

    /// Parses `key: a, b, c` lines. Keys missing from the file keep the
    /// bundled defaults; a key with an empty value list empties that set.
    pub fn parse(src: &str) -> Result<Self> {
        let mut sets = Self::parse_into(Self::empty(), bundled::FILTER_WORDS, FILTER_WORDS_FILE)?;
        let mut seen = BTreeSet::new();
        for (no, line) in content_lines(src) {
            let (key, values) = line.split_once(':').ok_or_else(|| {
                Error::parse(FILTER_WORDS_FILE, no, format!("expected `key: values`, got {line:?}"))
            })?;
            let key = key.trim();
            if !seen.insert(key.to_string()) {
                return Err(Error::parse(FILTER_WORDS_FILE, no, format!("duplicate key {key:?}")));
            }
            let slot = sets
                .slot(key)
                .ok_or_else(|| Error::parse(FILTER_WORDS_FILE, no, format!("unknown key {key:?}")))?;
            *slot = split_values(values);
        }
        Ok(sets)
    }

    fn parse_into(mut sets: Self, src: &str, file: &str) -> Result<Self> {
        for (no, line) in content_lines(src) {
            let (key, values) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(file, no, "expected `key: values`"))?;
            let slot = sets
                .slot(key.trim())
                .ok_or_else(|| Error::parse(file, no, format!("unknown key {:?}", key.trim())))?;
            *slot = split_values(values);
        }
        Ok(sets)
    }

    fn render(&self) -> String {
        let mut out = String::new();
        for key in Self::KEYS {
            let _ = writeln!(out, "{key}: {}", self.get(key).join(", "));
        }
        out
    }
}

impl Default for FilterWordSets {
    fn default() -> Self {
        Self::parse_into(Self::empty(), bundled::FILTER_WORDS, FILTER_WORDS_FILE)
            .expect("bundled filter word sets are valid")
    }
}

fn split_values(values: &str) -> Vec<String> {
    values
        .split(',')
        .map(|v| v.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase())
        .filter(|v| !v.is_empty())
        .collect()
}

/// In-memory contents of each list file, used by [`Lexicon::from_sources`].
#[derive(Debug, Clone, Copy)]
pub struct LexiconSources<'a> {
    pub sentiment: &'a str,
    pub booster: &'a str,
    pub negation: &'a str,
    pub emoticon: Option<&'a str>,
    pub curse: Option<&'a str>,
    pub filter_words: Option<&'a str>,
}

impl LexiconSources<'static> {
    pub fn bundled() -> Self {
        LexiconSources {
            sentiment: bundled::SENTIMENT,
            booster: bundled::BOOSTER,
            negation: bundled::NEGATION,
            emoticon: Some(bundled::EMOTICON),
            curse: Some(bundled::CURSE),
            filter_words: Some(bundled::FILTER_WORDS),
        }
    }
}

/// Immutable set of word lists.
#[derive(Debug, Clone)]
pub struct Lexicon {
    sentiments: Vec<SentimentEntry>,
    exact: HashMap<String, usize>,
    wildcard: HashMap<String, usize>,
    boosters: BTreeMap<String, i8>,
    negations: BTreeSet<String>,
    emoticons: BTreeMap<String, i8>,
    curses: Vec<String>,
    filter_words: FilterWordSets,
    warnings: Vec<String>,
}

impl Lexicon {
    /// The fixture lexicon compiled into the crate.
    pub fn bundled() -> Self {
        Self::from_sources(LexiconSources::bundled()).expect("bundled lexicon is valid")
    }

    /// Loads every list file from `dir`.
    pub fn load(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let required = |name: &str| -> Result<String> {
            let path = dir.join(name);
            if !path.is_file() {
                return Err(Error::MissingFile { path });
            }
            read_text(&path)
        };
        let optional = |name: &str| -> Result<Option<String>> {
            let path = dir.join(name);
            if path.is_file() {
                read_text(&path).map(Some)
            } else {
                Ok(None)
            }
        };
        let sentiment = required(SENTIMENT_FILE)?;
        let booster = required(BOOSTER_FILE)?;
        let negation = required(NEGATION_FILE)?;
        let emoticon = optional(EMOTICON_FILE)?;
        let curse = optional(CURSE_FILE)?;
        let filter_words = optional(FILTER_WORDS_FILE)?;
        Self::from_sources(LexiconSources {
            sentiment: &sentiment,
            booster: &booster,
            negation: &negation,
            emoticon: emoticon.as_deref(),
            curse: curse.as_deref(),
            filter_words: filter_words.as_deref(),
        })
    }

    pub fn from_sources(src: LexiconSources<'_>) -> Result<Self> {
        let mut lex = Lexicon {
            sentiments: Vec::new(),
            exact: HashMap::new(),
            wildcard: HashMap::new(),
            boosters: BTreeMap::new(),
            negations: BTreeSet::new(),
            emoticons: BTreeMap::new(),
            curses: Vec::new(),
            filter_words: FilterWordSets::default(),
            warnings: Vec::new(),
        };
        lex.parse_sentiments(src.sentiment)?;
        lex.parse_boosters(src.booster)?;
        for (_, line) in content_lines(src.negation) {
            lex.negations.insert(first_field(line).to_lowercase());
        }
        lex.parse_emoticons(src.emoticon.unwrap_or(bundled::EMOTICON))?;
        lex.parse_curses(src.curse.unwrap_or(bundled::CURSE))?;
        if let Some(fw) = src.filter_words {
            lex.filter_words = FilterWordSets::parse(fw)?;
        }
        Ok(lex)
    }

    fn parse_sentiments(&mut self, src: &str) -> Result<()> {
        for (no, line) in content_lines(src) {
            let mut fields = line.split('\t');
            let word = fields.next().unwrap_or("").trim().to_lowercase();
            let raw = fields
                .next()
                .map(str::trim)
                .ok_or_else(|| Error::parse(SENTIMENT_FILE, no, "expected word<TAB>strength"))?;
            let value: i8 = raw
                .parse()
                .map_err(|_| Error::parse(SENTIMENT_FILE, no, format!("invalid strength {raw:?}")))?;
            validate_pattern(&word).map_err(|m| Error::validation(SENTIMENT_FILE, no, m))?;
            if value == 0 || value.abs() > MAX_STRENGTH {
                return Err(Error::validation(
                    SENTIMENT_FILE,
                    no,
                    format!("strength {value} outside [-5,-1] or [1,5]"),
                ));
            }
            self.insert_sentiment(word, value);
        }
        Ok(())
    }

    fn insert_sentiment(&mut self, pattern: String, value: i8) {
        let wildcard = pattern.ends_with('*');
        let key = pattern.trim_end_matches('*').to_string();
        let index = if wildcard { &mut self.wildcard } else { &mut self.exact };
        match index.get(&key) {
            Some(&i) => {
                let entry = &mut self.sentiments[i];
                let slot = if value > 0 { &mut entry.positive } else { &mut entry.negative };
                if slot.abs() != 1 {
                    self.warnings.push(format!(
                        "duplicate entry {pattern:?}: strength {} replaced by {value}",
                        *slot
                    ));
                }
                *slot = value;
            }
            None => {
                let (positive, negative) = if value > 0 { (value, -1) } else { (1, value) };
                index.insert(key, self.sentiments.len());
                self.sentiments.push(SentimentEntry { pattern, positive, negative });
            }
        }
    }

    fn parse_boosters(&mut self, src: &str) -> Result<()> {
        for (no, line) in content_lines(src) {
            let mut fields = line.split('\t');
            let word = fields.next().unwrap_or("").trim().to_lowercase();
            let raw = fields
                .next()
                .map(str::trim)
                .ok_or_else(|| Error::parse(BOOSTER_FILE, no, "expected word<TAB>delta"))?;
            let delta: i8 = raw
                .parse()
                .map_err(|_| Error::parse(BOOSTER_FILE, no, format!("invalid delta {raw:?}")))?;
            if word.is_empty() {
                return Err(Error::validation(BOOSTER_FILE, no, "empty booster word"));
            }
            if delta == 0 || delta.abs() > MAX_BOOSTER {
                return Err(Error::validation(
                    BOOSTER_FILE,
                    no,
                    format!("booster delta {delta} must be non-zero with magnitude <= 2"),
                ));
            }
            if self.boosters.insert(word.clone(), delta).is_some() {
                self.warnings.push(format!("duplicate booster {word:?}: last entry wins"));
            }
        }
        Ok(())
    }

    fn parse_emoticons(&mut self, src: &str) -> Result<()> {
        for (no, line) in content_lines(src) {
            let (face, raw) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(EMOTICON_FILE, no, "expected emoticon<TAB>polarity"))?;
            let raw = raw.split('\t').next().unwrap_or("").trim();
            let polarity: i8 = raw
                .parse()
                .map_err(|_| Error::parse(EMOTICON_FILE, no, format!("invalid polarity {raw:?}")))?;
            let face = face.trim();
            if face.is_empty() {
                return Err(Error::validation(EMOTICON_FILE, no, "empty emoticon"));
            }
            if polarity == 0 || polarity.abs() > MAX_STRENGTH - 1 {
                return Err(Error::validation(
                    EMOTICON_FILE,
                    no,
                    format!("emoticon polarity {polarity} must be non-zero with magnitude <= 4"),
                ));
            }
            self.emoticons.insert(face.to_string(), polarity);
        }
        Ok(())
    }

    fn parse_curses(&mut self, src: &str) -> Result<()> {
        let mut last = 0;
        for (no, line) in content_lines(src) {
            self.curses.push(first_field(line).to_lowercase());
            last = no;
        }
        if self.curses.len() != CURSE_PREFIXES.len() {
            return Err(Error::validation(
                CURSE_FILE,
                last,
                format!("expected exactly four curse words, found {}", self.curses.len()),
            ));
        }
        for (word, prefix) in self.curses.iter().zip(CURSE_PREFIXES) {
            if word.chars().count() != 4 || !word.starts_with(prefix) {
                return Err(Error::validation(
                    CURSE_FILE,
                    last,
                    format!("curse entry {word:?} must be four letters starting with {prefix:?}"),
                ));
            }
        }
        Ok(())
    }

    /// Strength of `word`: exact entry first, then the longest matching
    /// wildcard stem.
    pub fn lookup_sentiment(&self, word: &str) -> Option<Strength> {
        self.lookup_entry(word).map(SentimentEntry::strength)
    }

    pub fn lookup_entry(&self, word: &str) -> Option<&SentimentEntry> {
        if let Some(&i) = self.exact.get(word) {
            return Some(&self.sentiments[i]);
        }
        if self.wildcard.is_empty() {
            return None;
        }
        // Longest stem first: walk prefixes from the full word downwards.
        let mut ends: Vec<usize> = word.char_indices().map(|(i, _)| i).skip(1).collect();
        ends.push(word.len());
        for &end in ends.iter().rev() {
            let (stem, rest) = word.split_at(end);
            if !rest.chars().all(char::is_alphabetic) {
                continue;
            }
            if let Some(&i) = self.wildcard.get(stem) {
                return Some(&self.sentiments[i]);
            }
        }
        None
    }

    pub fn booster_delta(&self, word: &str) -> Option<i8> {
        self.boosters.get(word).copied()
    }

    pub fn boosters(&self) -> impl Iterator<Item = BoosterEntry<'_>> {
        self.boosters.iter().map(|(w, &d)| BoosterEntry { word: w, delta: d })
    }

    pub fn is_negation(&self, word: &str) -> bool {
        self.negations.contains(word)
    }

    /// Membership in the curse list, tolerating letter-repetition
    /// obfuscation (`fuuuuck`).
    pub fn is_curse(&self, word: &str) -> bool {
        if self.curses.iter().any(|c| c == word) {
            return true;
        }
        collapse_variants(word)
            .iter()
            .any(|v| self.curses.iter().any(|c| c == v))
    }

    /// Emoticons are matched on the raw token.
    pub fn emoticon_polarity(&self, token: &str) -> Option<i8> {
        self.emoticons.get(token).copied()
    }

    pub fn sentiments(&self) -> &[SentimentEntry] {
        &self.sentiments
    }

    pub fn negations(&self) -> impl Iterator<Item = &str> {
        self.negations.iter().map(String::as_str)
    }

    pub fn emoticons(&self) -> impl Iterator<Item = (&str, i8)> {
        self.emoticons.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn curses(&self) -> &[String] {
        &self.curses
    }

    pub fn filter_words(&self) -> &FilterWordSets {
        &self.filter_words
    }

    /// Non-fatal issues found while loading (duplicate entries).
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Returns a copy with different filter word sets.
    pub fn with_filter_words(mut self, sets: FilterWordSets) -> Self {
        self.filter_words = sets;
        self
    }

    /// Writes the lexicon back out in the directory layout `load` reads.
    pub fn write_to_dir(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let mut sentiment = String::new();
        for e in &self.sentiments {
            if e.positive > 1 || e.negative == -1 {
                let _ = writeln!(sentiment, "{}\t{}", e.pattern, e.positive);
            }
            if e.negative < -1 {
                let _ = writeln!(sentiment, "{}\t{}", e.pattern, e.negative);
            }
        }
        let boosters: String = self.boosters().map(|b| format!("{}\t{}\n", b.word, b.delta)).collect();
        let negations: String = self.negations().map(|n| format!("{n}\n")).collect();
        let emoticons: String = self.emoticons().map(|(e, p)| format!("{e}\t{p}\n")).collect();
        let curses: String = self.curses.iter().map(|c| format!("{c}\n")).collect();
        for (name, body) in [
            (SENTIMENT_FILE, sentiment),
            (BOOSTER_FILE, boosters),
            (NEGATION_FILE, negations),
            (EMOTICON_FILE, emoticons),
            (CURSE_FILE, curses),
            (FILTER_WORDS_FILE, self.filter_words.render()),
        ] {
            let path = dir.join(name);
            fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
        }
        Ok(())
    }

    pub fn summary(&self) -> LexiconSummary {
        LexiconSummary {
            sentiments: self.sentiments.len(),
            wildcards: self.wildcard.len(),
            boosters: self.boosters.len(),
            negations: self.negations.len(),
            emoticons: self.emoticons.len(),
            curses: self.curses.len(),
            warnings: self.warnings.len(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LexiconSummary {
    pub sentiments: usize,
    pub wildcards: usize,
    pub boosters: usize,
    pub negations: usize,
    pub emoticons: usize,
    pub curses: usize,
    pub warnings: usize,
}

fn validate_pattern(pattern: &str) -> std::result::Result<(), String> {
    let stem = pattern.strip_suffix('*').unwrap_or(pattern);
    if stem.is_empty() {
        return Err(format!("empty pattern {pattern:?}"));
    }
    if stem.contains('*') {
        return Err(format!("wildcard is only allowed as a single trailing marker: {pattern:?}"));
    }
    Ok(())
}

pub(crate) fn read_text(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let text = String::from_utf8(bytes).map_err(|e| Error::Parse {
        file: path.display().to_string(),
        line: 0,
        message: format!("not valid UTF-8: {e}"),
    })?;
    Ok(text.strip_prefix('\u{feff}').map(str::to_string).unwrap_or(text))
}

fn first_field(line: &str) -> &str {
    line.split('\t').next().unwrap_or("").trim()
}

/// Yields `(1-based line number, line)` for non-blank, non-comment lines.
pub(crate) fn content_lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim_end_matches('\r');
        let is_comment = line.starts_with('#') && !line.contains('\t');
        (!line.trim().is_empty() && !is_comment).then_some((i + 1, line))
    })
}

/// Spellings obtained by shortening every run of three or more identical
/// letters to two and to one letter. The input itself is not included.
pub fn collapse_variants(word: &str) -> Vec<String> {
    let chars: Vec<char> = word.chars().collect();
    let mut runs = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let mut j = i;
        while j < chars.len() && chars[j] == chars[i] {
            j += 1;
        }
        runs.push((chars[i], j - i));
        i = j;
    }
    let long: Vec<usize> = runs
        .iter()
        .enumerate()
        .filter(|(_, (c, n))| *n >= 3 && c.is_alphabetic())
        .map(|(k, _)| k)
        .collect();
    if long.is_empty() {
        return Vec::new();
    }
    // Cap the combinatorics; beyond this only the uniform choices are tried.
    let combos: Vec<Vec<usize>> = if long.len() <= 6 {
        (0..1usize << long.len())
            .map(|mask| (0..long.len()).map(|b| if mask >> b & 1 == 0 { 2 } else { 1 }).collect())
            .collect()
    } else {
        vec![vec![2; long.len()], vec![1; long.len()]]
    };
    let mut out = Vec::with_capacity(combos.len());
    for lens in combos {
        let mut s = String::with_capacity(word.len());
        let mut next = 0;
        for (k, &(c, n)) in runs.iter().enumerate() {
            let len = if next < long.len() && long[next] == k {
                next += 1;
                lens[next - 1]
            } else {
                n
            };
            s.extend(std::iter::repeat_n(c, len));
        }
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex(sentiment: &str) -> Lexicon {
        Lexicon::from_sources(LexiconSources {
            sentiment,
            booster: "very\t1\n",
            negation: "not\n",
            emoticon: None,
            curse: None,
            filter_words: None,
        })
        .unwrap()
    }

    #[test]
    fn positive_line_stores_neutral_negative() {
        let l = lex("good\t2\n");
        assert_eq!(l.lookup_sentiment("good"), Some(Strength::new(2, -1)));
    }

    #[test]
    fn empty_table_has_no_entries() {
        let l = lex("");
        assert!(l.sentiments().is_empty());
        assert_eq!(l.lookup_sentiment("good"), None);
    }

    #[test]
    fn wildcard_matches_longer_words() {
        let l = lex("mess*\t-2\n");
        assert_eq!(l.lookup_sentiment("messagebox"), Some(Strength::new(1, -2)));
        assert_eq!(l.lookup_sentiment("mess"), Some(Strength::new(1, -2)));
        assert_eq!(l.lookup_sentiment("mes"), None);
    }

    #[test]
    fn exact_beats_wildcard_and_longest_stem_wins() {
        let l = lex("mess*\t-2\nmessage*\t3\nmessages\t-4\n");
        assert_eq!(l.lookup_sentiment("messages"), Some(Strength::new(1, -4)));
        assert_eq!(l.lookup_sentiment("messagebox"), Some(Strength::new(3, -1)));
        assert_eq!(l.lookup_sentiment("messy"), Some(Strength::new(1, -2)));
    }

    #[test]
    fn wildcard_suffix_must_be_letters() {
        let l = lex("mess*\t-2\n");
        assert_eq!(l.lookup_sentiment("mess-up"), None);
    }

    #[test]
    fn repeated_word_forms_dual_polarity() {
        let l = lex("miss\t2\nmiss\t-2\n");
        assert_eq!(l.lookup_sentiment("miss"), Some(Strength::new(2, -2)));
        assert!(l.warnings().is_empty());
    }

    #[test]
    fn same_sign_duplicate_warns_and_last_wins() {
        let l = lex("good\t2\ngood\t3\n");
        assert_eq!(l.lookup_sentiment("good"), Some(Strength::new(3, -1)));
        assert_eq!(l.warnings().len(), 1);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = Lexicon::from_sources(LexiconSources {
            sentiment: "# header\ngood\t2\nbad\n",
            ..LexiconSources::bundled()
        })
        .unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn out_of_range_strength_is_validation_error() {
        for bad in ["awful\t-6\n", "meh\t0\n", "a*b\t2\n", "*\t2\n"] {
            let err = Lexicon::from_sources(LexiconSources { sentiment: bad, ..LexiconSources::bundled() })
                .unwrap_err();
            assert!(matches!(err, Error::Validation { .. }), "{bad:?} -> {err:?}");
        }
    }

    #[test]
    fn booster_delta_bounds() {
        let err = Lexicon::from_sources(LexiconSources { booster: "huge\t3\n", ..LexiconSources::bundled() })
            .unwrap_err();
        assert!(matches!(err, Error::Validation { .. }));
    }

    #[test]
    fn curse_list_shape_is_enforced() {
        let err = Lexicon::from_sources(LexiconSources {
            curse: Some("fuck\ndamn\nshit\n"),
            ..LexiconSources::bundled()
        })
        .unwrap_err();
        assert!(matches!(err, Error::Validation { .. }));
        let err = Lexicon::from_sources(LexiconSources {
            curse: Some("fuck\ndamn\nshit\nhello\n"),
            ..LexiconSources::bundled()
        })
        .unwrap_err();
        assert!(matches!(err, Error::Validation { .. }));
    }

    #[test]
    fn bundled_queries() {
        let l = Lexicon::bundled();
        assert_eq!(l.lookup_sentiment("good"), Some(Strength::new(2, -1)));
        assert_eq!(l.lookup_sentiment("spite"), Some(Strength::new(1, -4)));
        assert_eq!(l.lookup_sentiment("qwertyuiop"), None);
        assert_eq!(l.booster_delta("very"), Some(1));
        assert_eq!(l.booster_delta("really"), Some(1));
        assert_eq!(l.booster_delta("feature"), None);
        assert!(l.is_negation("not"));
        assert_eq!(l.emoticon_polarity(":)"), Some(1));
        assert!(!l.is_curse("hello"));
        assert!(l.is_curse("fuuuuck"));
        assert!(l.is_curse("damn"));
        // Bundled fixture keeps `messagebox` unscored.
        assert_eq!(l.lookup_sentiment("messagebox"), None);
    }

    #[test]
    fn crlf_and_bom_are_tolerated() {
        let dir = tempfile::tempdir().unwrap();
        Lexicon::bundled().write_to_dir(dir.path()).unwrap();
        let p = dir.path().join(SENTIMENT_FILE);
        let body = fs::read_to_string(&p).unwrap().replace('\n', "\r\n");
        fs::write(&p, format!("\u{feff}{body}")).unwrap();
        let l = Lexicon::load(dir.path()).unwrap();
        assert_eq!(l.lookup_sentiment("good"), Some(Strength::new(2, -1)));
    }

    #[test]
    fn missing_file_is_named() {
        let dir = tempfile::tempdir().unwrap();
        let err = Lexicon::load(dir.path()).unwrap_err();
        assert!(err.to_string().contains(SENTIMENT_FILE), "{err}");
    }

    #[test]
    fn optional_files_fall_back_to_bundled() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join(SENTIMENT_FILE), "good\t2\n").unwrap();
        fs::write(dir.path().join(BOOSTER_FILE), "very\t1\n").unwrap();
        fs::write(dir.path().join(NEGATION_FILE), "not\n").unwrap();
        let l = Lexicon::load(dir.path()).unwrap();
        assert_eq!(l.curses().len(), 4);
        assert_eq!(l.filter_words().clause_conjunctions, ["because", "but", "so"]);
    }

    #[test]
    fn filter_words_keys() {
        let sets = FilterWordSets::parse("clause_conjunctions: because, but, so, although\npseudo_adverbs:\n").unwrap();
        assert_eq!(sets.clause_conjunctions.len(), 4);
        assert!(sets.pseudo_adverbs.is_empty());
        assert_eq!(sets.subjunctive_markers, ["if", "unless"]);
        assert!(FilterWordSets::parse("bogus: x\n").is_err());
        assert!(FilterWordSets::parse("no colon here\n").is_err());
    }

    #[test]
    fn collapse_variants_shorten_runs() {
        let v = collapse_variants("goooooood");
        assert_eq!(v, ["good", "god"]);
        assert!(collapse_variants("good").is_empty());
        assert!(collapse_variants("1111").is_empty());
        let v = collapse_variants("fuuuuckkk");
        assert!(v.contains(&"fuck".to_string()));
    }
}

//! Coarse part-of-speech tagging.
//!
//! Words are looked up in a closed-class lexicon, then unknown words are
//! guessed from suffixes (falling back to NOUN), then ordered context rules
//! rewrite tags using a window of two tokens on either side within the
//! clause. Both tables are plain text; see `docs/formats.md`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lexicon::{content_lines, read_text};
use crate::segmenter::{Clause, Document, Sentence};
use crate::textprep::TokenKind;

pub const TAGGER_LEXICON_FILE: &str = "tagger_lexicon.txt";
pub const TAGGER_RULES_FILE: &str = "tagger_rules.conf";

pub mod bundled {
    pub const LEXICON: &str = include_str!("../data/tagger_lexicon.txt");
    pub const RULES: &str = include_str!("../data/tagger_rules.conf");
}

const BE_FORMS: &[&str] = &["am", "is", "are", "was", "were", "be", "been", "being", "'s", "'re", "'m"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PosTag {
    Noun,
    Verb,
    VerbBase,
    Adj,
    Adv,
    Pron,
    Prep,
    Interj,
    Det,
    BeVerb,
    Other,
}

impl PosTag {
    pub const ALL: [PosTag; 11] = [
        PosTag::Noun,
        PosTag::Verb,
        PosTag::VerbBase,
        PosTag::Adj,
        PosTag::Adv,
        PosTag::Pron,
        PosTag::Prep,
        PosTag::Interj,
        PosTag::Det,
        PosTag::BeVerb,
        PosTag::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::Noun => "NOUN",
            PosTag::Verb => "VERB",
            PosTag::VerbBase => "VERB_BASE",
            PosTag::Adj => "ADJ",
            PosTag::Adv => "ADV",
            PosTag::Pron => "PRON",
            PosTag::Prep => "PREP",
            PosTag::Interj => "INTERJ",
            PosTag::Det => "DET",
            PosTag::BeVerb => "BE_VERB",
            PosTag::Other => "OTHER",
        }
    }

    /// Maps a Penn Treebank tag onto the coarse set. Tags with no coarse
    /// counterpart (CC, CD, punctuation, ...) become OTHER; strings that do
    /// not look like Penn tags return `None`.
    pub fn from_penn(tag: &str) -> Option<PosTag> {
        let tag = tag.trim();
        Some(match tag {
            "UH" => PosTag::Interj,
            "IN" | "TO" => PosTag::Prep,
            "VB" => PosTag::VerbBase,
            "VBZ" | "VBD" | "VBG" | "VBN" | "VBP" | "MD" => PosTag::Verb,
            "PRP" | "PRP$" => PosTag::Pron,
            "DT" | "PDT" => PosTag::Det,
            "CC" | "CD" | "EX" | "FW" | "LS" | "POS" | "RP" | "SYM" | "WDT" | "WP" | "WP$" | "WRB" => PosTag::Other,
            _ if tag.starts_with("RB") => PosTag::Adv,
            _ if tag.starts_with("NN") => PosTag::Noun,
            _ if tag.starts_with("JJ") => PosTag::Adj,
            _ if !tag.is_empty() && !tag.chars().any(|c| c.is_ascii_alphanumeric()) => PosTag::Other,
            "-LRB-" | "-RRB-" | "-NONE-" => PosTag::Other,
            _ => return None,
        })
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownTag(pub String);

impl fmt::Display for UnknownTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown POS tag {:?}", self.0)
    }
}

impl std::error::Error for UnknownTag {}

impl FromStr for PosTag {
    type Err = UnknownTag;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        PosTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| UnknownTag(s.to_string()))
    }
}

pub fn is_be_form(lower: &str) -> bool {
    BE_FORMS.contains(&lower)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Test {
    Tag(PosTag),
    Word(String),
    Set(String),
    Suffix(String),
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Condition {
    negated: bool,
    offset: isize,
    test: Test,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Target {
    Word(String),
    Set(String),
    Tag(PosTag),
    Guessed(PosTag),
    Suffix(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct ContextRule {
    target: Target,
    conditions: Vec<Condition>,
    tag: PosTag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct SuffixRule {
    suffix: String,
    tag: PosTag,
    min_len: usize,
}

/// Immutable tagging tables.
#[derive(Debug, Clone)]
pub struct Tagger {
    lexicon: HashMap<String, PosTag>,
    sets: HashMap<String, HashSet<String>>,
    suffixes: Vec<SuffixRule>,
    rules: Vec<ContextRule>,
}

struct Slot<'a> {
    lower: &'a str,
    tag: PosTag,
    guessed: bool,
}

impl Tagger {
    pub fn bundled() -> &'static Tagger {
        static TAGGER: OnceLock<Tagger> = OnceLock::new();
        TAGGER.get_or_init(|| {
            Tagger::from_sources(bundled::LEXICON, bundled::RULES).expect("bundled tagger tables are valid")
        })
    }

    /// Loads `tagger_lexicon.txt` and `tagger_rules.conf` from `dir`.
    pub fn load(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let lexicon = read_text(&dir.join(TAGGER_LEXICON_FILE))?;
        let rules = read_text(&dir.join(TAGGER_RULES_FILE))?;
        Tagger::from_sources(&lexicon, &rules)
    }

    pub fn from_sources(lexicon_src: &str, rules_src: &str) -> Result<Self> {
        let mut lexicon = HashMap::new();
        for (no, line) in content_lines(lexicon_src) {
            let (word, tag) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(TAGGER_LEXICON_FILE, no, "expected word<TAB>TAG"))?;
            let word = word.trim();
            if word.is_empty() || word.chars().any(char::is_whitespace) {
                return Err(Error::parse(TAGGER_LEXICON_FILE, no, format!("invalid word {word:?}")));
            }
            let tag: PosTag =
                tag.trim().parse().map_err(|e: UnknownTag| Error::parse(TAGGER_LEXICON_FILE, no, e.to_string()))?;
            lexicon.insert(word.to_lowercase(), tag);
        }

        let mut tagger = Tagger { lexicon, sets: HashMap::new(), suffixes: Vec::new(), rules: Vec::new() };
        for (no, line) in content_lines(rules_src) {
            tagger.parse_rule_line(no, line)?;
        }
        Ok(tagger)
    }

    fn parse_rule_line(&mut self, no: usize, line: &str) -> Result<()> {
        const FILE: &str = TAGGER_RULES_FILE;
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        match fields[0] {
            "set" => {
                let [_, name, words] = fields[..] else {
                    return Err(Error::parse(FILE, no, "expected set<TAB>name<TAB>words"));
                };
                if name.is_empty() || words.is_empty() {
                    return Err(Error::parse(FILE, no, "empty set"));
                }
                let words = words.split_whitespace().map(str::to_lowercase).collect();
                if self.sets.insert(name.to_string(), words).is_some() {
                    return Err(Error::validation(FILE, no, format!("set @{name} defined twice")));
                }
            }
            "suffix" => {
                let [_, suffix, tag, min_len] = fields[..] else {
                    return Err(Error::parse(FILE, no, "expected suffix<TAB>ending<TAB>TAG<TAB>min-length"));
                };
                if suffix.is_empty() {
                    return Err(Error::parse(FILE, no, "empty suffix"));
                }
                let tag = parse_tag(FILE, no, tag)?;
                let min_len =
                    min_len.parse().map_err(|_| Error::parse(FILE, no, format!("invalid length {min_len:?}")))?;
                self.suffixes.push(SuffixRule { suffix: suffix.to_lowercase(), tag, min_len });
            }
            "context" => {
                let [_, target, conditions, tag] = fields[..] else {
                    return Err(Error::parse(FILE, no, "expected context<TAB>target<TAB>conditions<TAB>TAG"));
                };
                let target = self.parse_target(no, target)?;
                let conditions = conditions
                    .split_whitespace()
                    .map(|c| self.parse_condition(no, c))
                    .collect::<Result<Vec<_>>>()?;
                if conditions.is_empty() {
                    return Err(Error::parse(FILE, no, "context rule without conditions"));
                }
                let tag = parse_tag(FILE, no, tag)?;
                self.rules.push(ContextRule { target, conditions, tag });
            }
            other => return Err(Error::parse(FILE, no, format!("unknown directive {other:?}"))),
        }
        Ok(())
    }

    fn known_set(&self, no: usize, name: &str) -> Result<String> {
        if self.sets.contains_key(name) {
            Ok(name.to_string())
        } else {
            Err(Error::validation(TAGGER_RULES_FILE, no, format!("undefined set @{name}")))
        }
    }

    fn parse_target(&self, no: usize, s: &str) -> Result<Target> {
        if let Some(name) = s.strip_prefix('@') {
            return Ok(Target::Set(self.known_set(no, name)?));
        }
        if let Some(tag) = s.strip_prefix('~') {
            return Ok(Target::Guessed(parse_tag(TAGGER_RULES_FILE, no, tag)?));
        }
        if let Some(suffix) = s.strip_prefix('-').filter(|x| !x.is_empty()) {
            return Ok(Target::Suffix(suffix.to_lowercase()));
        }
        if let Ok(tag) = s.parse() {
            return Ok(Target::Tag(tag));
        }
        if s.is_empty() {
            return Err(Error::parse(TAGGER_RULES_FILE, no, "empty target"));
        }
        Ok(Target::Word(s.to_lowercase()))
    }

    fn parse_condition(&self, no: usize, s: &str) -> Result<Condition> {
        let bad = || Error::parse(TAGGER_RULES_FILE, no, format!("invalid condition {s:?}"));
        let (negated, rest) = match s.strip_prefix('!') {
            Some(r) => (true, r),
            None => (false, s),
        };
        let (offset, test) = rest.split_once(':').ok_or_else(bad)?;
        let offset: isize = offset.trim_start_matches('+').parse().map_err(|_| bad())?;
        if offset == 0 || offset.abs() > 2 {
            return Err(bad());
        }
        let test = if test == "^" {
            Test::Boundary
        } else if let Some(name) = test.strip_prefix('@') {
            Test::Set(self.known_set(no, name)?)
        } else if let Some(word) = test.strip_prefix('\'').and_then(|w| w.strip_suffix('\'')).filter(|w| !w.is_empty()) {
            Test::Word(word.to_lowercase())
        } else if let Some(suffix) = test.strip_prefix('-').filter(|x| !x.is_empty()) {
            Test::Suffix(suffix.to_lowercase())
        } else {
            Test::Tag(test.parse().map_err(|_| bad())?)
        };
        Ok(Condition { negated, offset, test })
    }

    pub fn lexicon_len(&self) -> usize {
        self.lexicon.len()
    }

    pub fn rule_count(&self) -> usize {
        self.suffixes.len() + self.rules.len()
    }

    /// Tag before context rules, and whether it was guessed.
    fn initial(&self, lower: &str, kind: TokenKind) -> (PosTag, bool) {
        if kind != TokenKind::Word {
            return (PosTag::Other, false);
        }
        if is_be_form(lower) {
            return (PosTag::BeVerb, false);
        }
        if let Some(&tag) = self.lexicon.get(lower) {
            return (tag, false);
        }
        if lower.ends_with("n't") {
            return (PosTag::Verb, false);
        }
        if lower.chars().all(|c| c.is_ascii_digit() || c == '.' || c == ',') {
            return (PosTag::Other, false);
        }
        let len = lower.chars().count();
        for rule in &self.suffixes {
            if len >= rule.min_len && lower.ends_with(&rule.suffix) {
                return (rule.tag, true);
            }
        }
        (PosTag::Noun, true)
    }

    fn in_set(&self, name: &str, word: &str) -> bool {
        self.sets.get(name).is_some_and(|s| s.contains(word))
    }

    fn target_matches(&self, target: &Target, slot: &Slot<'_>) -> bool {
        match target {
            Target::Word(w) => slot.lower == w,
            Target::Set(name) => self.in_set(name, slot.lower),
            Target::Tag(t) => slot.tag == *t,
            Target::Guessed(t) => slot.guessed && slot.tag == *t,
            Target::Suffix(s) => slot.guessed && slot.lower.ends_with(s.as_str()),
        }
    }

    fn condition_holds(&self, cond: &Condition, slots: &[Slot<'_>], at: usize) -> bool {
        let neighbour = at.checked_add_signed(cond.offset).and_then(|i| slots.get(i));
        let hit = match (&cond.test, neighbour) {
            (Test::Boundary, n) => n.is_none(),
            (_, None) => false,
            (Test::Tag(t), Some(n)) => n.tag == *t,
            (Test::Word(w), Some(n)) => n.lower == w,
            (Test::Set(name), Some(n)) => self.in_set(name, n.lower),
            (Test::Suffix(s), Some(n)) => n.lower.ends_with(s.as_str()),
        };
        hit != cond.negated
    }

    pub fn tag_clause(&self, clause: &mut Clause) {
        let mut slots: Vec<Slot<'_>> = clause
            .tokens
            .iter()
            .map(|t| {
                let (tag, guessed) = self.initial(&t.lower, t.kind);
                Slot { lower: &t.lower, tag, guessed }
            })
            .collect();
        for rule in &self.rules {
            for at in 0..slots.len() {
                if self.target_matches(&rule.target, &slots[at])
                    && rule.conditions.iter().all(|c| self.condition_holds(c, &slots, at))
                {
                    slots[at].tag = rule.tag;
                    slots[at].guessed = false;
                }
            }
        }
        let tags: Vec<PosTag> = slots.into_iter().map(|s| s.tag).collect();
        for (tok, tag) in clause.tokens.iter_mut().zip(tags) {
            tok.pos = Some(tag);
        }
    }

    pub fn tag_sentence(&self, sentence: &mut Sentence) {
        for clause in &mut sentence.clauses {
            self.tag_clause(clause);
        }
    }

    /// Tags every token of `document` in place. Retagging is a no-op.
    pub fn tag(&self, document: &mut Document) {
        for sentence in &mut document.sentences {
            self.tag_sentence(sentence);
        }
    }
}

fn parse_tag(file: &str, no: usize, s: &str) -> Result<PosTag> {
    s.parse().map_err(|e: UnknownTag| Error::parse(file, no, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segmenter::segment;
    use crate::textprep::preprocess;

    fn tags(text: &str) -> Vec<(String, PosTag)> {
        let conj = vec!["because".to_string(), "but".to_string(), "so".to_string()];
        let mut doc = segment(&preprocess(text), &conj);
        Tagger::bundled().tag(&mut doc);
        doc.sentences.iter().flat_map(|s| s.tokens()).map(|t| (t.lower.clone(), t.pos.unwrap())).collect()
    }

    fn tag_of(text: &str, word: &str) -> PosTag {
        tags(text).into_iter().find(|(w, _)| w == word).map(|(_, t)| t).unwrap()
    }

    #[test]
    fn tag_names_round_trip() {
        for t in PosTag::ALL {
            assert_eq!(t.as_str().parse::<PosTag>().unwrap(), t);
            assert_eq!(serde_json::to_string(&t).unwrap(), format!("\"{t}\""));
        }
        assert!("noun".parse::<PosTag>().is_err());
    }

    #[test]
    fn penn_mapping() {
        assert_eq!(PosTag::from_penn("UH"), Some(PosTag::Interj));
        assert_eq!(PosTag::from_penn("VB"), Some(PosTag::VerbBase));
        assert_eq!(PosTag::from_penn("VBZ"), Some(PosTag::Verb));
        assert_eq!(PosTag::from_penn("RBR"), Some(PosTag::Adv));
        assert_eq!(PosTag::from_penn("NNPS"), Some(PosTag::Noun));
        assert_eq!(PosTag::from_penn("JJS"), Some(PosTag::Adj));
        assert_eq!(PosTag::from_penn("PRP$"), Some(PosTag::Pron));
        assert_eq!(PosTag::from_penn("."), Some(PosTag::Other));
        assert_eq!(PosTag::from_penn("NOUN"), None);
        assert_eq!(PosTag::from_penn("BOGUS"), None);
    }

    #[test]
    fn closed_class_and_suffixes() {
        assert_eq!(tag_of("wow", "wow"), PosTag::Interj);
        assert_eq!(tag_of("It is done", "is"), PosTag::BeVerb);
        assert_eq!(tag_of("It's fine", "'s"), PosTag::BeVerb);
        assert_eq!(tag_of("The performance degrades horrendously", "horrendously"), PosTag::Adv);
        assert_eq!(tag_of("a dangerous move", "dangerous"), PosTag::Adj);
        assert_eq!(tag_of("the zorblat", "zorblat"), PosTag::Noun);
    }

    #[test]
    fn polysemy_triggers() {
        assert_eq!(tag_of("it looks like this.", "like"), PosTag::Prep);
        assert_eq!(tag_of("I like playing with you", "like"), PosTag::Verb);
        assert_eq!(tag_of("which I don't like.", "like"), PosTag::VerbBase);
        assert_eq!(tag_of("I'm pretty sure", "pretty"), PosTag::Adv);
        assert_eq!(tag_of("She is pretty.", "pretty"), PosTag::Adj);
        assert_eq!(tag_of("I'm sure at first the code blocks", "blocks"), PosTag::Noun);
        assert_eq!(tag_of("The firewall blocks the port", "blocks"), PosTag::Verb);
    }

    #[test]
    fn verbs_from_context() {
        assert_eq!(tag_of("These options confuse me", "confuse"), PosTag::Verb);
        assert_eq!(tag_of("This sucks", "sucks"), PosTag::Verb);
        assert_eq!(tag_of("This sucks", "this"), PosTag::Pron);
        assert_eq!(tag_of("Reboot the server", "reboot"), PosTag::VerbBase);
        assert_eq!(tag_of("you will regret it", "regret"), PosTag::VerbBase);
        assert_eq!(tag_of("This is very frustrating.", "frustrating"), PosTag::Adj);
        assert_eq!(tag_of("It's lying all over the internet.", "all"), PosTag::Adv);
    }

    #[test]
    fn tagging_is_stable() {
        let conj = vec!["but".to_string()];
        let mut doc = segment(&preprocess("I guess you are right but this sucks."), &conj);
        Tagger::bundled().tag(&mut doc);
        let once = doc.sentences.clone();
        Tagger::bundled().tag(&mut doc);
        assert_eq!(once, doc.sentences);
        assert!(doc.sentences.iter().all(Sentence::is_tagged));
    }

    #[test]
    fn rule_file_errors() {
        assert!(Tagger::from_sources("good\tADJ\n", "context\tx\t-1:@nope\tNOUN\n").is_err());
        assert!(Tagger::from_sources("good\tADJ\n", "context\tx\t-3:NOUN\tNOUN\n").is_err());
        assert!(Tagger::from_sources("good\tADJ\n", "suffix\tly\tADV\tfive\n").is_err());
        assert!(Tagger::from_sources("good\tADJECTIVE\n", "").is_err());
        let err = Tagger::from_sources("", "\n\nbogus\tline\n").unwrap_err();
        assert!(err.to_string().contains(":3:"), "{err}");
    }
}

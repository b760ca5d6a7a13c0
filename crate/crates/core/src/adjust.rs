//! Adjust rules: subjunctive suppression, polysemous words and the revised
//! negation scope.

use std::path::Path;
use std::sync::OnceLock;

use serde::Serialize;

use crate::engine::is_sentimental;
use crate::error::{Error, Result};
use crate::lexicon::{content_lines, read_text, Lexicon};
use crate::postag::{PosTag, UnknownTag};
use crate::segmenter::{Clause, Sentence, Token};

pub const POLYSEMY_FILE: &str = "polysemy_rules.conf";

pub mod bundled {
    pub const POLYSEMY: &str = include_str!("../data/polysemy_rules.conf");
}

/// Tokens after a three-word trigger that lose their sentiment.
pub const NEGATION_SCOPE: usize = 3;
/// Same for `nothing`, `no` and `without`.
pub const SHORT_NEGATION_SCOPE: usize = 1;

const BARE_CONTRACTIONS: &[&str] = &[
    "dont", "isnt", "cant", "wont", "didnt", "doesnt", "wasnt", "werent", "arent", "couldnt", "shouldnt",
    "wouldnt", "hasnt", "havent", "hadnt", "aint", "mustnt", "neednt", "mightnt", "cannot",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AdjustKind {
    SubjunctiveSuppress,
    PolysemyNeutral,
    PolysemyBooster,
    PolysemyDualKeep,
    PolysemyNegativeOnly,
    NegationNeutralize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdjustTarget {
    Clause(usize),
    /// Sentence-level token position.
    Token(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AdjustAction {
    pub kind: AdjustKind,
    pub target: AdjustTarget,
    pub rule_word: String,
}

impl AdjustAction {
    fn token(kind: AdjustKind, position: usize, rule_word: &str) -> Self {
        AdjustAction { kind, target: AdjustTarget::Token(position), rule_word: rule_word.to_string() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Effect {
    Neutral,
    Booster,
    DualKeep,
    NegativeOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Element {
    Word(String),
    Tag { tag: PosTag, except: Option<String> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Trigger {
    Pos(PosTag),
    Collocation(Vec<Element>),
    Object(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct PolysemyRule {
    word: String,
    forms: Vec<String>,
    trigger: Trigger,
    on_match: Vec<Effect>,
    otherwise: Vec<Effect>,
}

/// The polysemous-word table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolysemyRules {
    rules: Vec<PolysemyRule>,
}

impl PolysemyRules {
    pub fn bundled() -> &'static PolysemyRules {
        static RULES: OnceLock<PolysemyRules> = OnceLock::new();
        RULES.get_or_init(|| PolysemyRules::parse(bundled::POLYSEMY).expect("bundled polysemy table is valid"))
    }

    pub fn empty() -> Self {
        PolysemyRules { rules: Vec::new() }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        PolysemyRules::parse(&read_text(path.as_ref())?)
    }

    pub fn parse(src: &str) -> Result<Self> {
        const FILE: &str = POLYSEMY_FILE;
        let mut rules: Vec<PolysemyRule> = Vec::new();
        for (no, line) in content_lines(src) {
            let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
            let [words, trigger, action] = fields[..] else {
                return Err(Error::parse(FILE, no, "expected word<TAB>trigger<TAB>action"));
            };
            let forms: Vec<String> = words.split('|').map(|w| w.trim().to_lowercase()).collect();
            if forms.iter().any(|f| f.is_empty() || f.contains(char::is_whitespace)) {
                return Err(Error::parse(FILE, no, format!("invalid word list {words:?}")));
            }
            if let Some(dup) = forms.iter().find(|f| rules.iter().any(|r| r.forms.contains(f))) {
                return Err(Error::validation(FILE, no, format!("{dup:?} already has a rule")));
            }
            let trigger = parse_trigger(no, trigger, &forms)?;
            let (on_match, otherwise) = match action.split_once('/') {
                Some((a, b)) => (parse_effects(no, a)?, parse_effects(no, b)?),
                None => (parse_effects(no, action)?, Vec::new()),
            };
            rules.push(PolysemyRule { word: forms[0].clone(), forms, trigger, on_match, otherwise });
        }
        Ok(PolysemyRules { rules })
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Head word of every rule, in file order.
    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.rules.iter().map(|r| r.word.as_str())
    }

    fn rule_for(&self, lower: &str) -> Option<&PolysemyRule> {
        self.rules.iter().find(|r| r.forms.iter().any(|f| f == lower))
    }
}

fn parse_trigger(no: usize, s: &str, forms: &[String]) -> Result<Trigger> {
    const FILE: &str = POLYSEMY_FILE;
    let (kind, arg) = s.split_once('=').ok_or_else(|| Error::parse(FILE, no, format!("invalid trigger {s:?}")))?;
    let arg = arg.trim();
    match kind.trim() {
        "POS" => Ok(Trigger::Pos(arg.parse().map_err(|e: UnknownTag| Error::parse(FILE, no, e.to_string()))?)),
        "OBJECT" => {
            let words: Vec<String> = arg.split_whitespace().map(str::to_lowercase).collect();
            if words.is_empty() {
                return Err(Error::parse(FILE, no, "OBJECT needs at least one word"));
            }
            Ok(Trigger::Object(words))
        }
        "COLLOCATION" => {
            let elements = arg
                .split_whitespace()
                .map(|e| parse_element(no, e))
                .collect::<Result<Vec<_>>>()?;
            let anchors = elements
                .iter()
                .filter(|e| matches!(e, Element::Word(w) if forms.contains(w)))
                .count();
            if anchors != 1 {
                return Err(Error::validation(FILE, no, "collocation must contain the word exactly once"));
            }
            Ok(Trigger::Collocation(elements))
        }
        other => Err(Error::parse(FILE, no, format!("unknown trigger {other:?}"))),
    }
}

fn parse_element(no: usize, s: &str) -> Result<Element> {
    let Some(inner) = s.strip_prefix('<') else {
        return Ok(Element::Word(s.to_lowercase()));
    };
    let inner = inner
        .strip_suffix('>')
        .ok_or_else(|| Error::parse(POLYSEMY_FILE, no, format!("unclosed element {s:?}")))?;
    let (tag, except) = match inner.split_once('!') {
        Some((t, w)) => (t, Some(w.to_lowercase())),
        None => (inner, None),
    };
    let tag = tag.parse().map_err(|e: UnknownTag| Error::parse(POLYSEMY_FILE, no, e.to_string()))?;
    Ok(Element::Tag { tag, except })
}

fn parse_effects(no: usize, s: &str) -> Result<Vec<Effect>> {
    s.split('+')
        .map(|e| match e.trim() {
            "neutral" => Ok(Effect::Neutral),
            "booster" => Ok(Effect::Booster),
            "dual_keep" => Ok(Effect::DualKeep),
            "negative_only" => Ok(Effect::NegativeOnly),
            other => Err(Error::parse(POLYSEMY_FILE, no, format!("unknown action {other:?}"))),
        })
        .collect()
}

fn element_matches(e: &Element, t: &Token) -> bool {
    match e {
        Element::Word(w) => t.lower == *w,
        Element::Tag { tag, except } => t.has_tag(*tag) && except.as_ref().is_none_or(|x| t.lower != *x),
    }
}

fn collocation_holds(elements: &[Element], clause: &Clause, at: usize, forms: &[String]) -> bool {
    let Some(anchor) = elements.iter().position(|e| matches!(e, Element::Word(w) if forms.contains(w))) else {
        return false;
    };
    if !element_matches(&elements[anchor], &clause.tokens[at]) {
        return false;
    }
    // Words before the anchor must sit directly in front of it.
    for (k, e) in elements[..anchor].iter().rev().enumerate() {
        match at.checked_sub(k + 1).map(|i| &clause.tokens[i]) {
            Some(t) if element_matches(e, t) => {}
            _ => return false,
        }
    }
    let mut i = at + 1;
    for e in &elements[anchor + 1..] {
        if matches!(e, Element::Tag { .. }) {
            while clause.tokens.get(i).is_some_and(|t| t.has_tag(PosTag::Adv)) {
                i += 1;
            }
        }
        match clause.tokens.get(i) {
            Some(t) if element_matches(e, t) => i += 1,
            _ => return false,
        }
    }
    true
}

/// Marks every clause containing a subjunctive marker.
pub fn suppress_subjunctive(sentence: &Sentence, lex: &Lexicon) -> Vec<AdjustAction> {
    let markers = &lex.filter_words().subjunctive_markers;
    sentence
        .clauses
        .iter()
        .enumerate()
        .filter_map(|(ci, c)| {
            let marker = c.tokens.iter().find(|t| t.is_word() && markers.contains(&t.lower))?;
            Some(AdjustAction {
                kind: AdjustKind::SubjunctiveSuppress,
                target: AdjustTarget::Clause(ci),
                rule_word: marker.lower.clone(),
            })
        })
        .collect()
}

pub fn disambiguate_polysemy(
    sentence: &Sentence,
    clause_index: usize,
    lex: &Lexicon,
    rules: &PolysemyRules,
) -> Vec<AdjustAction> {
    let clause = &sentence.clauses[clause_index];
    let offset = sentence.position(clause_index, 0);
    let mut out = Vec::new();
    for (i, tok) in clause.tokens.iter().enumerate() {
        if !tok.is_word() {
            continue;
        }
        let Some(rule) = rules.rule_for(&tok.lower) else { continue };
        if !is_sentimental(lex, tok) {
            continue;
        }
        let hit = match &rule.trigger {
            Trigger::Pos(tag) => tok.has_tag(*tag),
            Trigger::Collocation(elements) => collocation_holds(elements, clause, i, &rule.forms),
            Trigger::Object(words) => clause.tokens[i + 1..]
                .iter()
                .find(|t| !t.has_tag(PosTag::Det))
                .is_some_and(|t| words.contains(&t.lower)),
        };
        let effects = if hit { &rule.on_match } else { &rule.otherwise };
        for effect in effects {
            let action = match effect {
                Effect::Neutral => AdjustAction::token(AdjustKind::PolysemyNeutral, offset + i, &rule.word),
                Effect::DualKeep => AdjustAction::token(AdjustKind::PolysemyDualKeep, offset + i, &rule.word),
                Effect::NegativeOnly => {
                    AdjustAction::token(AdjustKind::PolysemyNegativeOnly, offset + i, &rule.word)
                }
                Effect::Booster => match clause.tokens.get(i + 1) {
                    Some(next) if next.is_word() => {
                        AdjustAction::token(AdjustKind::PolysemyBooster, offset + i + 1, &rule.word)
                    }
                    _ => continue,
                },
            };
            out.push(action);
        }
    }
    out
}

/// Auxiliary negative contraction: `n't` forms and their apostrophe-free
/// spellings.
pub fn is_negative_contraction(lower: &str) -> bool {
    lower.ends_with("n't") || lower.ends_with("n\u{2019}t") || BARE_CONTRACTIONS.contains(&lower)
}

/// Scope of `tok` as a negation trigger, if it is one.
pub fn negation_scope(tok: &Token, lex: &Lexicon) -> Option<usize> {
    if !tok.is_word() {
        return None;
    }
    if lex.is_negation(&tok.lower) || is_negative_contraction(&tok.lower) {
        Some(NEGATION_SCOPE)
    } else if lex.filter_words().extra_negations.contains(&tok.lower) {
        Some(SHORT_NEGATION_SCOPE)
    } else {
        None
    }
}

/// Clause-local positions covered by a trigger at `at`: the next `scope`
/// word tokens other than "to".
pub fn scope_positions(clause: &Clause, at: usize, scope: usize) -> Vec<usize> {
    clause
        .tokens
        .iter()
        .enumerate()
        .skip(at + 1)
        .filter(|(_, t)| t.is_word() && t.lower != "to")
        .take(scope)
        .map(|(i, _)| i)
        .collect()
}

pub fn apply_negation_session(sentence: &Sentence, clause_index: usize, lex: &Lexicon) -> Vec<AdjustAction> {
    let clause = &sentence.clauses[clause_index];
    let offset = sentence.position(clause_index, 0);
    let mut out = Vec::new();
    for (i, tok) in clause.tokens.iter().enumerate() {
        let Some(scope) = negation_scope(tok, lex) else { continue };
        for j in scope_positions(clause, i, scope) {
            if is_sentimental(lex, &clause.tokens[j]) {
                out.push(AdjustAction::token(AdjustKind::NegationNeutralize, offset + j, &tok.lower));
            }
        }
    }
    out
}

/// Computes all adjust actions for `sentence`: subjunctive clauses first,
/// then polysemy and negation in the remaining clauses.
pub fn plan_sentence(sentence: &Sentence, lex: &Lexicon, rules: &PolysemyRules) -> Vec<AdjustAction> {
    let mut actions = suppress_subjunctive(sentence, lex);
    for ci in 0..sentence.clauses.len() {
        if actions.iter().any(|a| a.target == AdjustTarget::Clause(ci)) {
            continue;
        }
        actions.extend(disambiguate_polysemy(sentence, ci, lex, rules));
        actions.extend(apply_negation_session(sentence, ci, lex));
    }
    actions
}

/// Sets the `suppressed` and `neutralized` flags named by `actions`.
pub fn apply_actions(sentence: &mut Sentence, actions: &[AdjustAction]) {
    for a in actions {
        match (a.kind, a.target) {
            (AdjustKind::SubjunctiveSuppress, AdjustTarget::Clause(ci)) => {
                if let Some(c) = sentence.clauses.get_mut(ci) {
                    c.suppressed = true;
                }
            }
            (AdjustKind::PolysemyNeutral | AdjustKind::NegationNeutralize, AdjustTarget::Token(p)) => {
                if let Some((ci, i)) = sentence.locate(p) {
                    sentence.clauses[ci].tokens[i].neutralized = true;
                }
            }
            _ => {}
        }
    }
}

pub fn adjust_sentence(sentence: &mut Sentence, lex: &Lexicon, rules: &PolysemyRules) -> Vec<AdjustAction> {
    let actions = plan_sentence(sentence, lex, rules);
    apply_actions(sentence, &actions);
    actions
}

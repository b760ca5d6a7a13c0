//! Sentence and clause segmentation.
//!
//! Sentences end at `.`, `!` and `?` (with an abbreviation guard), at
//! ellipses followed by a capitalized word, and at blank lines. Clauses end
//! after `,`, `;` and `:` and start again before each clause conjunction.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::postag::PosTag;
use crate::textprep::{is_emoticon_shape, KeptToken, MaskedText, TokenKind};

const ABBREVIATIONS: &[&str] = &[
    "e.g", "i.e", "etc", "vs", "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "cf", "approx", "eg",
    "ie", "no", "fig", "al", "resp", "incl", "viz",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    pub text: String,
    pub lower: String,
    /// Position within the owning clause.
    pub index: usize,
    pub kind: TokenKind,
    pub pos: Option<PosTag>,
    pub neutralized: bool,
    pub masked: bool,
    pub start: usize,
    pub end: usize,
}

impl Token {
    fn from_kept(tok: &KeptToken) -> Self {
        Token {
            text: tok.text.clone(),
            lower: tok.text.to_lowercase(),
            index: 0,
            kind: tok.kind,
            pos: None,
            neutralized: false,
            masked: false,
            start: tok.start,
            end: tok.end,
        }
    }

    pub fn is_word(&self) -> bool {
        self.kind == TokenKind::Word && !self.masked
    }

    pub fn is_punct(&self) -> bool {
        self.kind == TokenKind::Punct
    }

    pub fn tag(&self) -> Option<PosTag> {
        self.pos
    }

    pub fn has_tag(&self, tag: PosTag) -> bool {
        self.pos == Some(tag)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryCause {
    SentenceStart,
    Punctuation,
    Conjunction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub tokens: Vec<Token>,
    pub boundary_cause: BoundaryCause,
    pub suppressed: bool,
}

impl Clause {
    fn new(cause: BoundaryCause) -> Self {
        Clause { tokens: Vec::new(), boundary_cause: cause, suppressed: false }
    }

    fn push(&mut self, mut tok: Token) {
        tok.index = self.tokens.len();
        self.tokens.push(tok);
    }

    /// First unmasked word token.
    pub fn first_word(&self) -> Option<&Token> {
        self.tokens.iter().find(|t| t.is_word())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Terminal {
    Period,
    Question,
    Exclamation,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sentence {
    pub clauses: Vec<Clause>,
    pub raw: String,
    pub terminal: Terminal,
    pub exclamation_count: usize,
}

impl Sentence {
    pub fn from_clauses(clauses: Vec<Clause>, raw: String) -> Self {
        let mut s = Sentence { clauses, raw, terminal: Terminal::None, exclamation_count: 0 };
        s.refresh();
        s
    }

    fn refresh(&mut self) {
        self.exclamation_count = self
            .tokens()
            .filter(|t| !t.masked)
            .map(|t| t.text.matches('!').count())
            .sum();
        self.terminal = self
            .tokens()
            .filter(|t| !t.masked && t.is_punct())
            .last()
            .and_then(|t| t.text.chars().rev().find(|c| matches!(c, '.' | '!' | '?' | '\u{2026}')))
            .map_or(Terminal::None, |c| match c {
                '!' => Terminal::Exclamation,
                '?' => Terminal::Question,
                _ => Terminal::Period,
            });
    }

    /// All tokens, clause by clause.
    pub fn tokens(&self) -> impl Iterator<Item = &Token> + '_ {
        self.clauses.iter().flat_map(|c| c.tokens.iter())
    }

    pub fn token_count(&self) -> usize {
        self.clauses.iter().map(|c| c.tokens.len()).sum()
    }

    /// Sentence-level position of `clauses[clause].tokens[index]`.
    pub fn position(&self, clause: usize, index: usize) -> usize {
        self.clauses[..clause].iter().map(|c| c.tokens.len()).sum::<usize>() + index
    }

    /// Inverse of [`Sentence::position`].
    pub fn locate(&self, mut position: usize) -> Option<(usize, usize)> {
        for (ci, c) in self.clauses.iter().enumerate() {
            if position < c.tokens.len() {
                return Some((ci, position));
            }
            position -= c.tokens.len();
        }
        None
    }

    pub fn token_at(&self, position: usize) -> Option<&Token> {
        self.locate(position).map(|(c, i)| &self.clauses[c].tokens[i])
    }

    pub fn is_tagged(&self) -> bool {
        self.tokens().all(|t| t.masked || t.pos.is_some())
    }

    pub(crate) fn require_tagged(&self) -> Result<()> {
        if self.is_tagged() {
            Ok(())
        } else {
            Err(Error::Contract(format!("sentence {:?} is not POS-tagged", self.raw)))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Document {
    pub sentences: Vec<Sentence>,
    #[serde(skip)]
    pub source: MaskedText,
}

impl Document {
    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(Sentence::token_count).sum()
    }
}

/// Splits a masked text into sentences and clauses.
pub fn segment(masked: &MaskedText, conjunctions: &[String]) -> Document {
    let kept = &masked.kept;
    let mut sentences = Vec::new();
    let mut begin = 0;
    for i in 0..kept.len() {
        if ends_sentence(masked, i) {
            sentences.push(build_sentence(masked, begin, i + 1, conjunctions));
            begin = i + 1;
        }
    }
    if begin < kept.len() {
        sentences.push(build_sentence(masked, begin, kept.len(), conjunctions));
    }
    Document { sentences, source: masked.clone() }
}

fn is_terminal_punct(tok: &KeptToken) -> bool {
    tok.kind == TokenKind::Punct && tok.text.chars().all(|c| matches!(c, '.' | '!' | '?' | '\u{2026}'))
}

fn is_closer(tok: &KeptToken) -> bool {
    tok.kind == TokenKind::Punct
        && tok.text.chars().all(|c| matches!(c, ')' | '"' | '\'' | '\u{201d}' | '\u{2019}'))
}

fn starts_upper(tok: &KeptToken) -> bool {
    tok.text.chars().next().is_some_and(char::is_uppercase)
}

fn ends_sentence(masked: &MaskedText, i: usize) -> bool {
    let kept = &masked.kept;
    let Some(next) = kept.get(i + 1) else { return true };
    if blank_line(masked.gap(Some(i), Some(i + 1))) {
        return true;
    }
    let in_run = |t: &KeptToken| is_terminal_punct(t) || is_closer(t);
    // Only the last token of a run of terminals and closers can end a sentence.
    if !in_run(&kept[i]) || in_run(next) {
        return false;
    }
    let run_start = kept[..=i].iter().rposition(|t| !in_run(t)).map_or(0, |p| p + 1);
    match (run_start..=i).rev().find(|&k| is_terminal_punct(&kept[k])) {
        Some(k) => terminal_breaks(kept, k, next),
        None => false,
    }
}

fn terminal_breaks(kept: &[KeptToken], at: usize, next: &KeptToken) -> bool {
    let tok = &kept[at];
    if tok.text.contains(['!', '?']) {
        return true;
    }
    let is_ellipsis = tok.text.chars().count() > 1 || tok.text.contains('\u{2026}');
    if is_ellipsis {
        return starts_upper(next);
    }
    // Single period: guard abbreviations and initials glued to it.
    if at > 0 {
        let prev = &kept[at - 1];
        if prev.end == tok.start && prev.kind == TokenKind::Word {
            let word = prev.text.to_lowercase();
            let glued_initial = at > 1 && kept[at - 2].end == prev.start && kept[at - 2].text == ".";
            let abbrev = ABBREVIATIONS.contains(&word.as_str())
                || (word.chars().count() == 1 && word != "i")
                || glued_initial;
            if abbrev && !starts_upper(next) {
                return false;
            }
        }
    }
    next.start != tok.end || next.kind != TokenKind::Word
}

fn blank_line(gap: &str) -> bool {
    let mut newlines = 0;
    for c in gap.chars() {
        if c == '\n' {
            newlines += 1;
            if newlines >= 2 {
                return true;
            }
        } else if !c.is_whitespace() {
            newlines = 0;
        }
    }
    false
}

fn build_sentence(masked: &MaskedText, begin: usize, end: usize, conjunctions: &[String]) -> Sentence {
    let kept = &masked.kept[begin..end];
    let mut clauses = Vec::new();
    let mut current = Clause::new(BoundaryCause::SentenceStart);
    let mut next_cause = BoundaryCause::Punctuation;
    for tok in kept {
        let token = Token::from_kept(tok);
        if !current.tokens.is_empty() && token.kind == TokenKind::Word && conjunctions.contains(&token.lower) {
            clauses.push(std::mem::replace(&mut current, Clause::new(BoundaryCause::Conjunction)));
        } else if current.tokens.is_empty() && !clauses.is_empty() {
            current.boundary_cause = next_cause;
        }
        let splits = token.kind == TokenKind::Punct && token.text.chars().all(|c| matches!(c, ',' | ';' | ':'));
        current.push(token);
        if splits {
            clauses.push(std::mem::replace(&mut current, Clause::new(BoundaryCause::Punctuation)));
            next_cause = BoundaryCause::Punctuation;
        }
    }
    if !current.tokens.is_empty() {
        clauses.push(current);
    }
    let raw = masked.original[kept[0].start..kept[kept.len() - 1].end].to_string();
    Sentence::from_clauses(clauses, raw)
}

/// True when the sentence opens with a verb and no subject, after skipping
/// a vocative clause ("Owen, ...") and leading adverbs or interjections.
/// Questions are never imperative.
pub fn is_imperative(sentence: &Sentence) -> Result<bool> {
    sentence.require_tagged()?;
    if sentence.terminal == Terminal::Question {
        return Ok(false);
    }
    let mut clauses = sentence.clauses.iter().peekable();
    let Some(first) = clauses.next() else { return Ok(false) };
    let words: Vec<&Token> = first.tokens.iter().filter(|t| t.is_word()).collect();
    let ends_with_comma = first.tokens.last().is_some_and(|t| t.text == ",");
    let vocative = words.len() == 1
        && ends_with_comma
        && words[0].has_tag(PosTag::Noun)
        && words[0].text.chars().next().is_some_and(char::is_uppercase)
        && clauses.peek().is_some();
    let clause = if vocative { clauses.next().unwrap() } else { first };

    let head = clause
        .tokens
        .iter()
        .filter(|t| !t.masked && t.kind != TokenKind::Punct)
        .find(|t| !matches!(t.pos, Some(PosTag::Adv) | Some(PosTag::Interj)));
    Ok(match head {
        Some(t) => match t.pos {
            Some(PosTag::Verb) | Some(PosTag::VerbBase) => true,
            Some(PosTag::BeVerb) => t.lower == "be",
            _ => false,
        },
        None => false,
    })
}

/// Parses the pre-tagged exchange format: one `surface<TAB>POS` per line, a
/// blank line between sentences and a `---` line between clauses. POS may
/// be a Penn Treebank tag or one of the coarse tag names.
pub fn parse_pretagged(src: &str) -> Result<Document> {
    const FILE: &str = "pretagged input";
    let mut original = String::new();
    let mut kept = Vec::new();
    let mut sentences = Vec::new();
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current = Clause::new(BoundaryCause::SentenceStart);
    let mut sentence_start: Option<usize> = None;

    let mut finish_sentence = |clauses: &mut Vec<Clause>, current: &mut Clause, start: &mut Option<usize>, original: &str| {
        if !current.tokens.is_empty() {
            clauses.push(std::mem::replace(current, Clause::new(BoundaryCause::Punctuation)));
        }
        *current = Clause::new(BoundaryCause::SentenceStart);
        if let Some(s) = start.take() {
            let raw = original[s..].trim_end().to_string();
            sentences.push(Sentence::from_clauses(std::mem::take(clauses), raw));
        }
    };

    for (i, line) in src.lines().enumerate() {
        let no = i + 1;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            finish_sentence(&mut clauses, &mut current, &mut sentence_start, &original);
            continue;
        }
        if line.trim() == "---" {
            if !current.tokens.is_empty() {
                clauses.push(std::mem::replace(&mut current, Clause::new(BoundaryCause::Punctuation)));
            }
            continue;
        }
        let (surface, tag) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(FILE, no, "expected surface<TAB>POS"))?;
        if surface.is_empty() || surface.chars().any(char::is_whitespace) {
            return Err(Error::parse(FILE, no, format!("invalid surface {surface:?}")));
        }
        let tag = tag.trim();
        let pos = PosTag::from_penn(tag)
            .or_else(|| tag.parse().ok())
            .ok_or_else(|| Error::parse(FILE, no, format!("unknown POS tag {tag:?}")))?;
        if !original.is_empty() {
            original.push(' ');
        }
        let start = original.len();
        original.push_str(surface);
        let kind = if is_emoticon_shape(surface) {
            TokenKind::Emoticon
        } else if surface.chars().any(char::is_alphanumeric) {
            TokenKind::Word
        } else {
            TokenKind::Punct
        };
        let kt = KeptToken { text: surface.to_string(), start, end: original.len(), kind };
        let mut token = Token::from_kept(&kt);
        token.pos = Some(if crate::postag::is_be_form(&token.lower) { PosTag::BeVerb } else { pos });
        if clauses.is_empty() && current.tokens.is_empty() && sentence_start.is_none() {
            current.boundary_cause = BoundaryCause::SentenceStart;
        }
        sentence_start.get_or_insert(start);
        current.push(token);
        kept.push(kt);
    }
    finish_sentence(&mut clauses, &mut current, &mut sentence_start, &original);
    let source = MaskedText { original, kept, masked_spans: Vec::new() };
    Ok(Document { sentences, source })
}

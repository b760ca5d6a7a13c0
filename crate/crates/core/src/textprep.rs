//! Technical-content masking and tokenization.
//!
//! Masking removes material that rarely carries the writer's own sentiment:
//! bracketed and double-quoted spans, identifiers with underscores, `@`
//! mentions, names after a greeting and code-like chunks matched by
//! [`TechPatterns`]. ALL-CAPS words and exclamation marks are kept.
//! Letter repetitions are left untouched; they are normalized at scoring
//! time.

use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use regex::Regex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lexicon::content_lines;

pub const TECHPATTERNS_FILE: &str = "techpatterns.conf";
const BUNDLED_TECHPATTERNS: &str = include_str!("../data/techpatterns.conf");

/// Maximum distance, in characters, between two double quotes that mask the
/// text between them.
pub const QUOTE_WINDOW: usize = 200;

const GREETINGS: [&str; 2] = ["dear", "hi"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MaskReason {
    Bracketed,
    DoubleQuoted,
    UnderscoreToken,
    CodePattern,
    GreetingName,
    Mention,
}

impl fmt::Display for MaskReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MaskReason::Bracketed => "bracketed",
            MaskReason::DoubleQuoted => "double_quoted",
            MaskReason::UnderscoreToken => "underscore_token",
            MaskReason::CodePattern => "code_pattern",
            MaskReason::GreetingName => "greeting_name",
            MaskReason::Mention => "mention",
        };
        f.write_str(s)
    }
}

/// Byte range of `original` removed from analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaskedSpan {
    pub start: usize,
    pub end: usize,
    pub reason: MaskReason,
    /// Label of the tech pattern that fired, for `code_pattern` spans.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TokenKind {
    Word,
    Punct,
    Emoticon,
}

/// A surviving token with its byte offsets in the original text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KeptToken {
    pub text: String,
    pub start: usize,
    pub end: usize,
    pub kind: TokenKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaskedText {
    pub original: String,
    pub kept: Vec<KeptToken>,
    pub masked_spans: Vec<MaskedSpan>,
}

impl MaskedText {
    /// Rebuilds text from the kept tokens. Tokens that touched in the
    /// original stay joined; everything else is separated by one space.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut prev_end = None;
        for tok in &self.kept {
            if let Some(end) = prev_end {
                if end != tok.start {
                    out.push(' ');
                }
            }
            out.push_str(&tok.text);
            prev_end = Some(tok.end);
        }
        out
    }

    /// Text between two kept tokens (or from the start / to the end).
    pub fn gap(&self, before: Option<usize>, after: Option<usize>) -> &str {
        let start = before.map_or(0, |i| self.kept[i].end);
        let end = after.map_or(self.original.len(), |i| self.kept[i].start);
        self.original.get(start..end).unwrap_or("")
    }
}

/// Ordered list of labelled regexes identifying code-like chunks.
#[derive(Debug, Clone)]
pub struct TechPatterns {
    rules: Vec<(String, Regex)>,
}

impl TechPatterns {
    pub fn parse(src: &str) -> Result<Self> {
        let mut rules = Vec::new();
        for (no, line) in content_lines(src) {
            let (label, pattern) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(TECHPATTERNS_FILE, no, "expected label<TAB>regex"))?;
            let label = label.trim();
            if label.is_empty() {
                return Err(Error::parse(TECHPATTERNS_FILE, no, "empty label"));
            }
            let regex = Regex::new(pattern).map_err(|e| Error::Pattern {
                file: TECHPATTERNS_FILE.to_string(),
                line: no,
                source: Box::new(e),
            })?;
            rules.push((label.to_string(), regex));
        }
        Ok(TechPatterns { rules })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let src = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&src)
    }

    pub fn bundled() -> &'static TechPatterns {
        static BUNDLED: OnceLock<TechPatterns> = OnceLock::new();
        BUNDLED.get_or_init(|| TechPatterns::parse(BUNDLED_TECHPATTERNS).expect("bundled patterns are valid"))
    }

    /// Label of the first rule matching `chunk`.
    pub fn matches(&self, chunk: &str) -> Option<&str> {
        self.rules
            .iter()
            .find(|(_, re)| re.is_match(chunk))
            .map(|(label, _)| label.as_str())
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

fn emoticon_shape() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"^(?:[:;=][-'^o]?[()\[\]DPpOo3/\\|*@$]{1,3}|<3+|</3|\^_?\^|-_-|T_T)$").unwrap()
    })
}

/// True when `s` looks like a text emoticon.
pub fn is_emoticon_shape(s: &str) -> bool {
    emoticon_shape().is_match(s)
}

/// Masks technical content using the bundled patterns.
pub fn preprocess(raw: &str) -> MaskedText {
    preprocess_with(raw, TechPatterns::bundled())
}

pub fn preprocess_with(raw: &str, patterns: &TechPatterns) -> MaskedText {
    let mut spans = delimited_spans(raw);
    let mut kept = Vec::new();

    let mut cursor = 0;
    let mut regions = Vec::new();
    for span in &spans {
        regions.push((cursor, span.start));
        cursor = span.end;
    }
    regions.push((cursor, raw.len()));

    for (start, end) in regions {
        for (cs, ce) in chunks(raw, start, end) {
            process_chunk(raw, cs, ce, patterns, &mut kept, &mut spans);
        }
    }

    mask_greeting_names(&mut kept, &mut spans);
    spans.sort_by_key(|s| s.start);
    MaskedText { original: raw.to_string(), kept, masked_spans: spans }
}

/// Bracketed and double-quoted spans, left to right, nearest closer wins.
fn delimited_spans(raw: &str) -> Vec<MaskedSpan> {
    let mut spans = Vec::new();
    let mut i = 0;
    while i < raw.len() {
        let rest = &raw[i..];
        let c = rest.chars().next().unwrap();
        let found = if let Some(inner) = rest.strip_prefix("<%") {
            inner.find("%>").map(|p| (i + 2 + p + 2, MaskReason::Bracketed))
        } else {
            match c {
                '[' => rest[1..].find(']').map(|p| (i + 1 + p + 1, MaskReason::Bracketed)),
                '{' => rest[1..].find('}').map(|p| (i + 1 + p + 1, MaskReason::Bracketed)),
                '"' => quote_close(rest, '"').map(|p| (i + p, MaskReason::DoubleQuoted)),
                '\u{201c}' => quote_close(rest, '\u{201d}').map(|p| (i + p, MaskReason::DoubleQuoted)),
                _ => None,
            }
        };
        match found {
            Some((end, reason)) => {
                spans.push(MaskedSpan { start: i, end, reason, rule: None });
                i = end;
            }
            None => i += c.len_utf8(),
        }
    }
    spans
}

/// Byte offset just past the closing quote, if it lies within the window.
fn quote_close(rest: &str, close: char) -> Option<usize> {
    let open_len = rest.chars().next()?.len_utf8();
    rest[open_len..]
        .char_indices()
        .take(QUOTE_WINDOW)
        .find(|&(_, c)| c == close)
        .map(|(p, c)| open_len + p + c.len_utf8())
}

fn chunks(raw: &str, start: usize, end: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut chunk_start = None;
    for (off, c) in raw[start..end].char_indices() {
        let at = start + off;
        if c.is_whitespace() {
            if let Some(s) = chunk_start.take() {
                out.push((s, at));
            }
        } else if chunk_start.is_none() {
            chunk_start = Some(at);
        }
    }
    if let Some(s) = chunk_start {
        out.push((s, end));
    }
    out
}

const LEADING_STRIP: &[char] = &['(', '\'', '"', '\u{2018}', '\u{201c}'];
const TRAILING_STRIP: &[char] = &['.', ',', ';', ':', '!', '?', '\'', '"', '\u{2019}', '\u{201d}'];

fn process_chunk(
    raw: &str,
    cs: usize,
    ce: usize,
    patterns: &TechPatterns,
    kept: &mut Vec<KeptToken>,
    spans: &mut Vec<MaskedSpan>,
) {
    let chunk = &raw[cs..ce];
    if is_emoticon_shape(chunk) {
        kept.push(token(raw, cs, ce, TokenKind::Emoticon));
        return;
    }
    let trimmed = chunk.trim_end_matches(['.', ',', '!', '?']);
    if trimmed.len() < chunk.len() && is_emoticon_shape(trimmed) {
        let split = cs + trimmed.len();
        kept.push(token(raw, cs, split, TokenKind::Emoticon));
        tokenize(raw, split, ce, kept);
        return;
    }

    let mut core_start = cs;
    while let Some(c) = raw[core_start..ce].chars().next() {
        if LEADING_STRIP.contains(&c) {
            core_start += c.len_utf8();
        } else {
            break;
        }
    }
    let mut core_end = ce;
    while core_end > core_start {
        let c = raw[core_start..core_end].chars().next_back().unwrap();
        let strip = TRAILING_STRIP.contains(&c)
            || (c == ')' && !raw[core_start..core_end].contains('('));
        if !strip {
            break;
        }
        core_end -= c.len_utf8();
    }

    let core = &raw[core_start..core_end];
    let reason = if core.is_empty() {
        None
    } else if core.starts_with('@') && core.len() > 1 {
        Some((MaskReason::Mention, None))
    } else if let Some(label) = patterns.matches(core) {
        Some((MaskReason::CodePattern, Some(label.to_string())))
    } else if core.contains('_') {
        Some((MaskReason::UnderscoreToken, None))
    } else {
        None
    };

    match reason {
        Some((reason, rule)) => {
            tokenize(raw, cs, core_start, kept);
            spans.push(MaskedSpan { start: core_start, end: core_end, reason, rule });
            tokenize(raw, core_end, ce, kept);
        }
        None => tokenize(raw, cs, ce, kept),
    }
}

fn token(raw: &str, start: usize, end: usize, kind: TokenKind) -> KeptToken {
    KeptToken { text: raw[start..end].to_string(), start, end, kind }
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Splits `raw[start..end]` into word tokens (letters and digits joined by
/// inner apostrophes or hyphens) and runs of identical punctuation.
/// Pronoun clitics (`'s`, `'re`, `'m`, `'ll`, `'ve`, `'d`) become separate
/// tokens; negative contractions such as `don't` stay whole.
fn tokenize(raw: &str, start: usize, end: usize, kept: &mut Vec<KeptToken>) {
    let text = &raw[start..end];
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (off, c) = chars[i];
        let mut j = i + 1;
        if c.is_alphanumeric() {
            loop {
                while j < chars.len() && chars[j].1.is_alphanumeric() {
                    j += 1;
                }
                let joiner = j + 1 < chars.len()
                    && (is_apostrophe(chars[j].1) || chars[j].1 == '-')
                    && chars[j + 1].1.is_alphanumeric();
                if joiner {
                    j += 1;
                } else {
                    break;
                }
            }
            let tok_end = chars.get(j).map_or(text.len(), |&(o, _)| o);
            push_word(raw, start + off, start + tok_end, kept);
        } else if !c.is_whitespace() {
            while j < chars.len() && chars[j].1 == c {
                j += 1;
            }
            let tok_end = chars.get(j).map_or(text.len(), |&(o, _)| o);
            kept.push(token(raw, start + off, start + tok_end, TokenKind::Punct));
        }
        i = j;
    }
}

fn push_word(raw: &str, start: usize, end: usize, kept: &mut Vec<KeptToken>) {
    let word = &raw[start..end];
    let lower = word.to_lowercase();
    for clitic in ["'s", "'re", "'m", "'ll", "'ve", "'d"] {
        let curly = clitic.replace('\'', "\u{2019}");
        for suffix in [clitic, curly.as_str()] {
            if lower.len() > suffix.len() && lower.ends_with(suffix) && lower.len() == word.len() {
                let split = end - suffix.len();
                kept.push(token(raw, start, split, TokenKind::Word));
                kept.push(token(raw, split, end, TokenKind::Word));
                return;
            }
        }
    }
    kept.push(token(raw, start, end, TokenKind::Word));
}

/// Masks the run of capitalized words directly after "Dear" or "Hi".
fn mask_greeting_names(kept: &mut Vec<KeptToken>, spans: &mut Vec<MaskedSpan>) {
    let mut i = 0;
    while i < kept.len() {
        let is_greeting = kept[i].kind == TokenKind::Word
            && GREETINGS.iter().any(|g| kept[i].text.eq_ignore_ascii_case(g));
        if !is_greeting {
            i += 1;
            continue;
        }
        let mut j = i + 1;
        while j < kept.len() && is_name(&kept[j]) {
            j += 1;
        }
        if j > i + 1 {
            for tok in kept.drain(i + 1..j) {
                spans.push(MaskedSpan {
                    start: tok.start,
                    end: tok.end,
                    reason: MaskReason::GreetingName,
                    rule: None,
                });
            }
        }
        i += 1;
    }
}

fn is_name(tok: &KeptToken) -> bool {
    tok.kind == TokenKind::Word
        && tok.text != "I"
        && tok.text.chars().next().is_some_and(char::is_uppercase)
}

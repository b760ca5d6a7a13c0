//! Sentence patterns that decide whether a sentence is scored at all.
//!
//! Evidence indices are sentence-level token positions.

use std::fmt;

use serde::Serialize;

use crate::engine::{is_sentimental, sentimental_density};
use crate::error::Result;
use crate::lexicon::Lexicon;
use crate::postag::PosTag;
use crate::segmenter::{is_imperative, Sentence, Token};
use crate::textprep::TokenKind;

/// Direct 6 fires above this density (numerator, denominator).
pub const IMPERATIVE_DENSITY: (usize, usize) = (3, 10);

const GET_FORMS: &[&str] = &["get", "gets", "got", "getting", "gotten"];
const ARTICLES: &[&str] = &["a", "an", "the"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Pattern {
    Direct,
    Decorated,
    AboutMe,
    Judgement,
}

impl Pattern {
    pub const ALL: [Pattern; 4] = [Pattern::Direct, Pattern::Decorated, Pattern::AboutMe, Pattern::Judgement];

    pub fn situations(self) -> u8 {
        match self {
            Pattern::Direct => 6,
            Pattern::Decorated => 2,
            Pattern::AboutMe => 4,
            Pattern::Judgement => 5,
        }
    }

    /// Display name used in explain output.
    pub fn label(self) -> &'static str {
        match self {
            Pattern::Direct => "Direct Sentiment Pattern",
            Pattern::Decorated => "Decorated Sentiment Pattern",
            Pattern::AboutMe => "'About Me' Pattern",
            Pattern::Judgement => "'Judgement' Pattern",
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pattern::Direct => "DIRECT",
            Pattern::Decorated => "DECORATED",
            Pattern::AboutMe => "ABOUT_ME",
            Pattern::Judgement => "JUDGEMENT",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternMatch {
    pub pattern: Pattern,
    pub situation: u8,
    pub evidence: Vec<usize>,
}

impl PatternMatch {
    fn new(pattern: Pattern, situation: u8, evidence: Vec<usize>) -> Self {
        debug_assert!((1..=pattern.situations()).contains(&situation));
        PatternMatch { pattern, situation, evidence }
    }
}

/// Flattened view of a sentence: position, owning clause, token.
struct View<'a> {
    toks: Vec<(usize, &'a Token)>,
}

impl<'a> View<'a> {
    fn new(sentence: &'a Sentence) -> Self {
        let toks = sentence
            .clauses
            .iter()
            .enumerate()
            .flat_map(|(ci, c)| c.tokens.iter().map(move |t| (ci, t)))
            .filter(|(_, t)| !t.masked)
            .collect();
        View { toks }
    }

    fn len(&self) -> usize {
        self.toks.len()
    }

    fn tok(&self, i: usize) -> &'a Token {
        self.toks[i].1
    }

    fn clause(&self, i: usize) -> usize {
        self.toks[i].0
    }

    /// Next index after `i` in the same clause, skipping tokens whose tag is
    /// in `skip`.
    fn next_in_clause(&self, i: usize, skip: &[PosTag]) -> Option<usize> {
        (i + 1..self.len())
            .take_while(|&j| self.clause(j) == self.clause(i))
            .find(|&j| !self.tok(j).pos.is_some_and(|p| skip.contains(&p)))
    }

    fn prev_in_clause(&self, i: usize) -> Option<usize> {
        i.checked_sub(1).filter(|&j| self.clause(j) == self.clause(i))
    }
}

/// Sentence-level positions of the unmasked tokens.
fn positions(sentence: &Sentence) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 0;
    for c in &sentence.clauses {
        for t in &c.tokens {
            if !t.masked {
                out.push(p);
            }
            p += 1;
        }
    }
    out
}

fn tagged(t: &Token, tags: &[PosTag]) -> bool {
    t.pos.is_some_and(|p| tags.contains(&p))
}

fn first_match(
    pattern: Pattern,
    situation: u8,
    pos: &[usize],
    found: Option<Vec<usize>>,
    out: &mut Vec<PatternMatch>,
) {
    if let Some(ev) = found {
        out.push(PatternMatch::new(pattern, situation, ev.into_iter().map(|i| pos[i]).collect()));
    }
}

pub fn match_direct(sentence: &Sentence, lex: &Lexicon) -> Result<Vec<PatternMatch>> {
    sentence.require_tagged()?;
    let v = View::new(sentence);
    let pos = positions(sentence);
    let please = &lex.filter_words().please_exceptions;
    let mut out = Vec::new();
    let n = v.len();

    let bang = (0..n).find(|&i| v.tok(i).is_punct() && v.tok(i).text.contains('!'));
    first_match(Pattern::Direct, 1, &pos, bang.map(|i| vec![i]), &mut out);

    let emoticon = (0..n).find(|&i| {
        v.tok(i).kind == TokenKind::Emoticon && lex.emoticon_polarity(&v.tok(i).text).is_some()
    });
    first_match(Pattern::Direct, 2, &pos, emoticon.map(|i| vec![i]), &mut out);

    let interj = (0..n).find(|&i| v.tok(i).is_word() && v.tok(i).has_tag(PosTag::Interj));
    first_match(Pattern::Direct, 3, &pos, interj.map(|i| vec![i]), &mut out);

    let curse = (0..n).find(|&i| v.tok(i).is_word() && lex.is_curse(&v.tok(i).lower));
    first_match(Pattern::Direct, 4, &pos, curse.map(|i| vec![i]), &mut out);

    let opener = (0..n).find(|&i| {
        let t = v.tok(i);
        let first_word = (0..i).all(|j| v.clause(j) != v.clause(i) || !v.tok(j).is_word());
        t.is_word() && first_word && is_sentimental(lex, t) && !please.contains(&t.lower)
    });
    first_match(Pattern::Direct, 5, &pos, opener.map(|i| vec![i]), &mut out);

    let (num, den) = IMPERATIVE_DENSITY;
    if is_imperative(sentence)? && sentimental_density(sentence, lex).exceeds(num, den) {
        let ev: Vec<usize> = (0..n).filter(|&i| is_sentimental(lex, v.tok(i))).collect();
        first_match(Pattern::Direct, 6, &pos, Some(ev), &mut out);
    }
    Ok(out)
}

/// Length of the pseudo-adverb starting at token `i` (`how`, `sort of`);
/// `enough` is handled separately since it follows its word.
fn pseudo_adverb_len(v: &View<'_>, i: usize, lex: &Lexicon) -> Option<usize> {
    lex.filter_words().pseudo_adverbs.iter().filter(|p| p.as_str() != "enough").find_map(|p| {
        let parts: Vec<&str> = p.split_whitespace().collect();
        let hit = parts.iter().enumerate().all(|(k, w)| {
            i + k < v.len() && v.clause(i + k) == v.clause(i) && v.tok(i + k).lower == *w
        });
        (hit && !parts.is_empty()).then_some(parts.len())
    })
}

pub fn match_decorated(sentence: &Sentence, lex: &Lexicon) -> Result<Vec<PatternMatch>> {
    sentence.require_tagged()?;
    let v = View::new(sentence);
    let pos = positions(sentence);
    let words = lex.filter_words();
    let decoratable = [PosTag::Verb, PosTag::VerbBase, PosTag::Adj];
    let mut out = Vec::new();
    let n = v.len();

    let adverb = (0..n).find(|&i| v.tok(i).has_tag(PosTag::Adv) && is_sentimental(lex, v.tok(i)));
    first_match(Pattern::Decorated, 1, &pos, adverb.map(|i| vec![i]), &mut out);

    let mut decorated = None;
    for i in 0..n {
        let t = v.tok(i);
        if !t.is_word() {
            continue;
        }
        let target = if words.wide_scope_adverbs.contains(&t.lower) {
            (i + 1..n).find(|&j| tagged(v.tok(j), &decoratable) && is_sentimental(lex, v.tok(j)))
        } else if let Some(len) = pseudo_adverb_len(&v, i, lex) {
            Some(i + len).filter(|&j| j < n && v.clause(j) == v.clause(i) && is_sentimental(lex, v.tok(j)))
        } else if t.has_tag(PosTag::Adv) {
            Some(i + 1).filter(|&j| {
                j < n && v.clause(j) == v.clause(i) && tagged(v.tok(j), &decoratable) && is_sentimental(lex, v.tok(j))
            })
        } else if t.lower == "enough" && words.pseudo_adverbs.iter().any(|p| p == "enough") {
            v.prev_in_clause(i).filter(|&j| is_sentimental(lex, v.tok(j)))
        } else {
            None
        };
        if let Some(j) = target {
            decorated = Some(vec![i, j]);
            break;
        }
    }
    first_match(Pattern::Decorated, 2, &pos, decorated, &mut out);
    Ok(out)
}

pub fn match_about_me(sentence: &Sentence, lex: &Lexicon) -> Result<Vec<PatternMatch>> {
    sentence.require_tagged()?;
    let v = View::new(sentence);
    let pos = positions(sentence);
    let mut out = Vec::new();
    let n = v.len();
    let verbs = [PosTag::Verb, PosTag::VerbBase];

    // "I" is nominative, so any occurrence is the subject of its clause.
    let subject_i = (0..n).find_map(|i| {
        (v.tok(i).lower == "i").then(|| {
            (0..n)
                .find(|&j| v.clause(j) == v.clause(i) && is_sentimental(lex, v.tok(j)))
                .map(|j| vec![i, j])
        })?
    });
    first_match(Pattern::AboutMe, 1, &pos, subject_i, &mut out);

    let verb_me = (0..n).find_map(|i| {
        let t = v.tok(i);
        if !(tagged(t, &verbs) && is_sentimental(lex, t)) {
            return None;
        }
        (i + 1..n).take_while(|&j| v.clause(j) == v.clause(i)).find(|&j| v.tok(j).lower == "me").map(|j| vec![i, j])
    });
    first_match(Pattern::AboutMe, 2, &pos, verb_me, &mut out);

    let me_adj = (0..n).find_map(|i| {
        if v.tok(i).lower != "me" {
            return None;
        }
        let j = v.next_in_clause(i, &[PosTag::Adv])?;
        let t = v.tok(j);
        (tagged(t, &[PosTag::Adj, PosTag::Noun]) && is_sentimental(lex, t)).then(|| vec![i, j])
    });
    first_match(Pattern::AboutMe, 3, &pos, me_adj, &mut out);

    let my = (0..n).find_map(|i| {
        if v.tok(i).lower != "my" {
            return None;
        }
        let j = Some(i + 1).filter(|&j| j < n && v.clause(j) == v.clause(i))?;
        is_sentimental(lex, v.tok(j)).then(|| vec![i, j])
    });
    first_match(Pattern::AboutMe, 4, &pos, my, &mut out);
    Ok(out)
}

pub fn match_judgement(sentence: &Sentence, lex: &Lexicon) -> Result<Vec<PatternMatch>> {
    sentence.require_tagged()?;
    let v = View::new(sentence);
    let pos = positions(sentence);
    let mut out = Vec::new();
    let n = v.len();
    let skip = [PosTag::Adv, PosTag::Det];
    let sent = |j: usize, tags: &[PosTag]| tagged(v.tok(j), tags) && is_sentimental(lex, v.tok(j));

    let be_adj = (0..n).find_map(|i| {
        if !v.tok(i).has_tag(PosTag::BeVerb) {
            return None;
        }
        let j = v.next_in_clause(i, &skip)?;
        sent(j, &[PosTag::Adj, PosTag::Noun]).then(|| vec![i, j])
    });
    first_match(Pattern::Judgement, 1, &pos, be_adj, &mut out);

    let pron_verb = (0..n).find_map(|i| {
        if !v.tok(i).has_tag(PosTag::Pron) {
            return None;
        }
        let j = v.next_in_clause(i, &skip)?;
        sent(j, &[PosTag::Verb, PosTag::VerbBase]).then(|| vec![i, j])
    });
    first_match(Pattern::Judgement, 2, &pos, pron_verb, &mut out);

    let get = (0..n).find_map(|i| {
        if !GET_FORMS.contains(&v.tok(i).lower.as_str()) {
            return None;
        }
        let j = v.next_in_clause(i, &skip)?;
        is_sentimental(lex, v.tok(j)).then(|| vec![i, j])
    });
    first_match(Pattern::Judgement, 3, &pos, get, &mut out);

    let noun_be = (0..n).find_map(|i| {
        if !sent(i, &[PosTag::Noun]) {
            return None;
        }
        let j = v.next_in_clause(i, &[PosTag::Adv])?;
        v.tok(j).has_tag(PosTag::BeVerb).then(|| vec![i, j])
    });
    first_match(Pattern::Judgement, 4, &pos, noun_be, &mut out);

    let det_adj_noun = (0..n.saturating_sub(2)).find_map(|i| {
        let same = v.clause(i) == v.clause(i + 2);
        (same
            && ARTICLES.contains(&v.tok(i).lower.as_str())
            && sent(i + 1, &[PosTag::Adj])
            && v.tok(i + 2).has_tag(PosTag::Noun))
        .then(|| vec![i, i + 1, i + 2])
    });
    first_match(Pattern::Judgement, 5, &pos, det_adj_noun, &mut out);
    Ok(out)
}

/// True when any pattern matches, with every match found.
pub fn should_analyze(sentence: &Sentence, lex: &Lexicon) -> Result<(bool, Vec<PatternMatch>)> {
    let mut all = match_direct(sentence, lex)?;
    all.extend(match_decorated(sentence, lex)?);
    all.extend(match_about_me(sentence, lex)?);
    all.extend(match_judgement(sentence, lex)?);
    Ok((!all.is_empty(), all))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Analyzer;

    fn matches(text: &str) -> Vec<(Pattern, u8)> {
        let a = Analyzer::bundled();
        let doc = a.prepare(text);
        let (_, m) = should_analyze(&doc.sentences[0], a.lexicon()).unwrap();
        m.into_iter().map(|m| (m.pattern, m.situation)).collect()
    }

    #[test]
    fn direct_situations() {
        assert!(matches("Thanks for your patience.").contains(&(Pattern::Direct, 5)));
        assert!(matches("Owen, thanks for the slides.").contains(&(Pattern::Direct, 5)));
        assert!(matches("Sounds good.").contains(&(Pattern::Direct, 6)));
        assert!(matches("Please fix it").is_empty());
        assert!(matches("it broke :(").contains(&(Pattern::Direct, 2)));
        assert!(matches("wow").contains(&(Pattern::Direct, 3)));
        assert!(matches("what the heeeell").contains(&(Pattern::Direct, 4)));
        assert!(matches("The build completed.").is_empty());
    }

    #[test]
    fn decorated_situations() {
        assert!(matches("This is very frustrating.").contains(&(Pattern::Decorated, 2)));
        assert!(matches("The performance degrades horrendously").contains(&(Pattern::Decorated, 1)));
        assert!(matches("It still seems like nothing is ugly here").contains(&(Pattern::Decorated, 2)));
        assert!(matches("The build is green.").is_empty());
    }

    #[test]
    fn evidence_points_at_tokens() {
        let a = Analyzer::bundled();
        let doc = a.prepare("This is very frustrating.");
        let (_, m) = should_analyze(&doc.sentences[0], a.lexicon()).unwrap();
        let d = m.iter().find(|m| m.pattern == Pattern::Decorated).unwrap();
        let words: Vec<&str> =
            d.evidence.iter().map(|&p| doc.sentences[0].token_at(p).unwrap().text.as_str()).collect();
        assert_eq!(words, ["very", "frustrating"]);
    }
}

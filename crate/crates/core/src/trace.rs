//! Human-readable rendering of an [`Analysis`], one annotated row per
//! sentence in the style `really good [2] [+1 booster word]`.

use std::fmt::Write;

use crate::engine::{Analysis, Modifier, PolysemyEffect, SentenceAnalysis, SentimentScore, WordScoreAnnotation};
use crate::filters::Pattern;

fn base_label(s: SentimentScore) -> String {
    match (s.rho > 1, s.eta < -1) {
        (true, true) => format!("[{},{}]", s.rho, s.eta),
        (true, false) => format!("[{}]", s.rho),
        (false, true) => format!("[{}]", s.eta),
        (false, false) => "[0]".to_string(),
    }
}

fn modifier_label(m: &Modifier) -> String {
    match m {
        Modifier::Booster { delta, .. } => format!("[{delta:+} booster word]"),
        Modifier::Repetition => "[+1 letter repetition]".to_string(),
        Modifier::NegatedFlip { .. } => "[flipped by negation]".to_string(),
        Modifier::Neutralized { rule } if rule.starts_with("negation:") => "[neutralized by negations]".to_string(),
        Modifier::Neutralized { .. } => "[polysemous words]".to_string(),
        Modifier::Polysemy { effect: PolysemyEffect::DualKeep, .. } => "[polysemous words: both polarities]".to_string(),
        Modifier::Polysemy { effect: PolysemyEffect::NegativeOnly, .. } => "[polysemous words: negative only]".to_string(),
    }
}

fn word_labels(w: &WordScoreAnnotation) -> String {
    let neutralized = w.modifiers.iter().any(|m| matches!(m, Modifier::Neutralized { .. }));
    let mut labels = Vec::new();
    if !neutralized {
        labels.push(base_label(w.base));
    }
    labels.extend(w.modifiers.iter().map(modifier_label));
    labels.join(" ")
}

/// Leading bracket naming the matched patterns, or `None` outside the
/// filtering modes.
fn pattern_prefix(s: &SentenceAnalysis, filtering: bool) -> Option<String> {
    if !filtering {
        return None;
    }
    if s.filtered {
        return Some("[does not fit any pattern]".to_string());
    }
    let mut seen: Vec<Pattern> = Vec::new();
    for m in &s.patterns {
        if !seen.contains(&m.pattern) {
            seen.push(m.pattern);
        }
    }
    let names: Vec<String> = seen.iter().map(|p| format!("\"{}\"", p.label())).collect();
    Some(format!("[fit {}]", names.join(", ")))
}

pub fn render_sentence(s: &SentenceAnalysis, filtering: bool) -> String {
    let mut parts: Vec<String> = Vec::new();
    if let Some(prefix) = pattern_prefix(s, filtering) {
        parts.push(prefix);
    }
    for (ci, clause) in s.clauses.iter().enumerate() {
        for p in clause.start..clause.end {
            parts.push(s.tokens[p].text.clone());
            if let Some(w) = s.words.iter().find(|w| w.index == p) {
                parts.push(word_labels(w));
            }
        }
        if clause.suppressed {
            parts.push(format!("[subjunctive clause {} ignored]", ci + 1));
        }
    }
    format!("{}\t{}\t{}", parts.join(" "), s.rho, s.eta)
}

pub fn overall_line(a: &Analysis) -> String {
    let op = match a.score.rho.cmp(&-a.score.eta) {
        std::cmp::Ordering::Greater => ">",
        std::cmp::Ordering::Less => "<",
        std::cmp::Ordering::Equal => "=",
    };
    format!("Overall result = {} as Max(\u{3c1}) {op} Max(abs(\u{3b7}))", a.trinary)
}

/// Header, one row per sentence and the overall line.
pub fn render_explain(a: &Analysis) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Sentence\t\u{3c1}\t\u{3b7}");
    for s in &a.sentences {
        let _ = writeln!(out, "{}", render_sentence(s, a.mode.filters()));
    }
    let _ = writeln!(out, "{}", overall_line(a));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{Analyzer, Mode};

    #[test]
    fn booster_annotation() {
        let a = Analyzer::bundled().analyze("This is really good.", Mode::Baseline);
        let text = render_explain(&a);
        assert!(text.contains("really good [2] [+1 booster word] .\t3\t-1"), "{text}");
        assert!(text.ends_with("Overall result = 1 as Max(\u{3c1}) > Max(abs(\u{3b7}))\n"));
    }

    #[test]
    fn filtered_rows_say_so() {
        let a = Analyzer::bundled().analyze("The build completed.", Mode::Full);
        assert!(render_explain(&a).contains("[does not fit any pattern] The build completed .\t1\t-1"));
    }

    #[test]
    fn neutral_tie_uses_equals() {
        let a = Analyzer::bundled().analyze("", Mode::Full);
        assert_eq!(overall_line(&a), "Overall result = 0 as Max(\u{3c1}) = Max(abs(\u{3b7}))");
    }
}

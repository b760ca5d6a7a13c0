//! Labeled corpora, precision/recall/F metrics and mode ablation.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::engine::{sign_sum, Analysis, Analyzer, Mode, Trinary};
use crate::error::{Error, Result};

pub type Rational = Ratio<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledText {
    pub id: String,
    pub text: String,
    pub gold: Trinary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetFormat {
    /// RFC 4180 with header `id,text,label`.
    Csv,
    /// `id<TAB>text<TAB>label`, header optional.
    Tsv,
}

impl DatasetFormat {
    /// `.tsv`/`.tab`/`.txt` are TSV, everything else CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
            Some("tsv" | "tab" | "txt") => DatasetFormat::Tsv,
            _ => DatasetFormat::Csv,
        }
    }
}

fn label(id: &str, raw: &str) -> Result<Trinary> {
    raw.parse().map_err(|_| Error::Label { id: id.to_string(), label: raw.to_string() })
}

pub fn load_dataset(path: impl AsRef<Path>, format: Option<DatasetFormat>) -> Result<Vec<LabeledText>> {
    let path = path.as_ref();
    if !path.exists() {
        return Err(Error::MissingFile { path: path.to_path_buf() });
    }
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let src = String::from_utf8(bytes).map_err(|e| Error::Parse {
        file: path.display().to_string(),
        line: 0,
        message: format!("not valid UTF-8: {e}"),
    })?;
    let src = src.strip_prefix('\u{feff}').unwrap_or(&src);
    parse_dataset(src, format.unwrap_or_else(|| DatasetFormat::from_path(path)), &path.display().to_string())
}

/// Parses dataset text; `file` only labels error messages.
pub fn parse_dataset(src: &str, format: DatasetFormat, file: &str) -> Result<Vec<LabeledText>> {
    match format {
        DatasetFormat::Csv => parse_csv(src, file),
        DatasetFormat::Tsv => parse_tsv(src, file),
    }
}

fn parse_csv(src: &str, file: &str) -> Result<Vec<LabeledText>> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).flexible(false).from_reader(src.as_bytes());
    let line_of = |e: &csv::Error| e.position().map_or(0, |p| p.line() as usize);
    let headers = reader.headers().map_err(|e| Error::parse(file, line_of(&e), e.to_string()))?.clone();
    let names: Vec<String> = headers.iter().map(|h| h.trim().to_ascii_lowercase()).collect();
    if names != ["id", "text", "label"] {
        return Err(Error::parse(file, 1, format!("expected header id,text,label, found {}", names.join(","))));
    }
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::parse(file, line_of(&e), e.to_string()))?;
        let id = record[0].trim().to_string();
        let gold = label(&id, record[2].trim())?;
        out.push(LabeledText { id, text: record[1].to_string(), gold });
    }
    Ok(out)
}

fn parse_tsv(src: &str, file: &str) -> Result<Vec<LabeledText>> {
    let mut out = Vec::new();
    for (i, line) in src.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let fields = line
            .split_once('\t')
            .and_then(|(id, rest)| rest.rsplit_once('\t').map(|(text, label)| (id, text, label)));
        let Some((id, text, raw)) = fields else {
            return Err(Error::parse(file, i + 1, "expected id<TAB>text<TAB>label"));
        };
        if i == 0 && [id, text, raw].map(|f| f.trim().to_ascii_lowercase()) == ["id", "text", "label"] {
            continue;
        }
        let id = id.trim().to_string();
        let gold = label(&id, raw)?;
        out.push(LabeledText { id, text: text.to_string(), gold });
    }
    Ok(out)
}

fn class_index(t: Trinary) -> usize {
    match t {
        Trinary::Positive => 0,
        Trinary::Neutral => 1,
        Trinary::Negative => 2,
    }
}

/// Gold (rows) by predicted (columns), both ordered positive, neutral,
/// negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Confusion(pub [[u64; 3]; 3]);

impl Confusion {
    pub fn from_pairs(pairs: &[(Trinary, Trinary)]) -> Self {
        let mut m = [[0u64; 3]; 3];
        for &(g, p) in pairs {
            m[class_index(g)][class_index(p)] += 1;
        }
        Confusion(m)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().flatten().sum()
    }

    pub fn trace(&self) -> u64 {
        (0..3).map(|i| self.0[i][i]).sum()
    }

    pub fn gold(&self, c: Trinary) -> u64 {
        self.0[class_index(c)].iter().sum()
    }

    pub fn predicted(&self, c: Trinary) -> u64 {
        self.0.iter().map(|row| row[class_index(c)]).sum()
    }

    pub fn correct(&self, c: Trinary) -> u64 {
        self.0[class_index(c)][class_index(c)]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassMetrics {
    pub class: Trinary,
    pub support: u64,
    pub predicted: u64,
    pub correct: u64,
    pub precision: Rational,
    /// `None` when the class has no gold items.
    pub recall: Option<Rational>,
    pub f_measure: Rational,
}

impl ClassMetrics {
    pub fn absent(&self) -> bool {
        self.recall.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalReport {
    pub n: u64,
    pub confusion: Confusion,
    /// Positive, neutral, negative.
    pub per_class: [ClassMetrics; 3],
    pub overall_accuracy: Rational,
    /// Accuracy when polarity is read from the sign of `rho + eta`.
    pub sign_sum_accuracy: Option<Rational>,
}

impl EvalReport {
    pub fn class(&self, c: Trinary) -> &ClassMetrics {
        &self.per_class[class_index(c)]
    }
}

fn ratio(num: u64, den: u64) -> Rational {
    if den == 0 {
        Rational::from_integer(0)
    } else {
        Rational::new(num, den)
    }
}

pub fn compute_metrics(pairs: &[(Trinary, Trinary)]) -> Result<EvalReport> {
    if pairs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let confusion = Confusion::from_pairs(pairs);
    let per_class = Trinary::ALL.map(|c| {
        let (support, predicted, correct) = (confusion.gold(c), confusion.predicted(c), confusion.correct(c));
        let precision = ratio(correct, predicted);
        let recall = (support > 0).then(|| ratio(correct, support));
        let r = recall.unwrap_or_else(|| Rational::from_integer(0));
        let f_measure = if precision + r == Rational::from_integer(0) {
            Rational::from_integer(0)
        } else {
            Rational::from_integer(2) * precision * r / (precision + r)
        };
        ClassMetrics { class: c, support, predicted, correct, precision, recall, f_measure }
    });
    let n = confusion.total();
    Ok(EvalReport { n, confusion, per_class, overall_accuracy: ratio(confusion.trace(), n), sign_sum_accuracy: None })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub id: String,
    pub gold: Trinary,
    pub predicted: Trinary,
    pub sign_sum: Trinary,
    pub rho: i8,
    pub eta: i8,
}

/// Maps `f` over `items` on `workers` threads; output order is input order.
pub fn parallel_map<T: Sync, R: Send>(items: &[T], workers: usize, f: impl Fn(&T) -> R + Sync + Send) -> Result<Vec<R>> {
    if workers <= 1 {
        return Ok(items.iter().map(f).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Contract(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| items.par_iter().map(f).collect()))
}

pub fn analyze_all(analyzer: &Analyzer, texts: &[String], mode: Mode, workers: usize) -> Result<Vec<Analysis>> {
    parallel_map(texts, workers, |t| analyzer.analyze(t, mode))
}

pub fn predict(analyzer: &Analyzer, dataset: &[LabeledText], mode: Mode, workers: usize) -> Result<Vec<Prediction>> {
    parallel_map(dataset, workers, |item| {
        let a = analyzer.analyze(&item.text, mode);
        Prediction {
            id: item.id.clone(),
            gold: item.gold,
            predicted: a.trinary,
            sign_sum: sign_sum(a.score),
            rho: a.score.rho,
            eta: a.score.eta,
        }
    })
}

pub fn evaluate(analyzer: &Analyzer, dataset: &[LabeledText], mode: Mode, workers: usize) -> Result<EvalReport> {
    let preds = predict(analyzer, dataset, mode, workers)?;
    report_from_predictions(&preds)
}

pub fn report_from_predictions(preds: &[Prediction]) -> Result<EvalReport> {
    let pairs: Vec<_> = preds.iter().map(|p| (p.gold, p.predicted)).collect();
    let mut report = compute_metrics(&pairs)?;
    let sign_pairs: Vec<_> = preds.iter().map(|p| (p.gold, p.sign_sum)).collect();
    report.sign_sum_accuracy = Some(compute_metrics(&sign_pairs)?.overall_accuracy);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AblationRow {
    pub mode: Mode,
    pub report: EvalReport,
}

/// One report per mode, in the order given.
pub fn run_ablation(
    analyzer: &Analyzer,
    dataset: &[LabeledText],
    modes: &[Mode],
    workers: usize,
) -> Result<Vec<AblationRow>> {
    modes
        .iter()
        .map(|&mode| Ok(AblationRow { mode, report: evaluate(analyzer, dataset, mode, workers)? }))
        .collect()
}

pub fn format_ratio(r: Rational) -> String {
    format!("{:.4}", *r.numer() as f64 / *r.denom() as f64)
}

fn ratio_value(r: Rational) -> Value {
    let rounded: f64 = format_ratio(r).parse().expect("formatted float");
    json!(rounded)
}

fn exact(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub const TSV_HEADER: &str =
    "mode\tn\toverall_accuracy\tpos_p\tpos_r\tpos_f\tneu_p\tneu_r\tneu_f\tneg_p\tneg_r\tneg_f";

/// Overall accuracy, then P/R/F per polarity. Classes without gold items
/// print `---`.
pub fn tsv_row(mode: Mode, r: &EvalReport) -> String {
    let mut row = format!("{mode}\t{}\t{}", r.n, format_ratio(r.overall_accuracy));
    for c in &r.per_class {
        match c.recall {
            Some(rec) => {
                let _ = write!(row, "\t{}\t{}\t{}", format_ratio(c.precision), format_ratio(rec), format_ratio(c.f_measure));
            }
            None => row.push_str("\t---\t---\t---"),
        }
    }
    row
}

pub fn render_tsv(rows: &[AblationRow]) -> String {
    let mut out = String::from(TSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&tsv_row(r.mode, &r.report));
        out.push('\n');
    }
    out
}

pub fn report_json(mode: Mode, r: &EvalReport) -> Value {
    let classes: serde_json::Map<String, Value> = r
        .per_class
        .iter()
        .map(|c| {
            let v = json!({
                "support": c.support,
                "predicted": c.predicted,
                "correct": c.correct,
                "absent": c.absent(),
                "precision": ratio_value(c.precision),
                "recall": c.recall.map(ratio_value),
                "f_measure": ratio_value(c.f_measure),
                "exact": {
                    "precision": exact(c.precision),
                    "recall": c.recall.map(exact),
                    "f_measure": exact(c.f_measure),
                },
            });
            (c.class.name().to_string(), v)
        })
        .collect();
    json!({
        "mode": mode,
        "n": r.n,
        "overall_accuracy": ratio_value(r.overall_accuracy),
        "overall_accuracy_exact": exact(r.overall_accuracy),
        "sign_sum_accuracy": r.sign_sum_accuracy.map(ratio_value),
        "classes": classes,
        "confusion": r.confusion,
    })
}

pub fn render_json(rows: &[AblationRow]) -> Value {
    json!({
        "schema_version": crate::engine::SCHEMA_VERSION,
        "reports": rows.iter().map(|r| report_json(r.mode, &r.report)).collect::<Vec<_>>(),
    })
}

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use session_core::evaluator::{self, AblationRow};
use session_core::lexicon::Lexicon;
use session_core::trace;
use session_core::{Analysis, Analyzer, Error, Mode};

#[derive(Parser, Debug)]
#[command(name = "session", version, about = "Rule-based sentiment analysis for software-engineering text")]
struct Cli {
    /// Directory with SentiStrength-style lexicon files. Defaults to the bundled fixture lexicon.
    #[arg(long, global = true, env = "SESSION_LEXICON_DIR")]
    lexicon_dir: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Full)]
    mode: ModeArg,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Threads used by batch, eval and ablate.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Baseline,
    Filter,
    Adjust,
    Full,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Baseline => Mode::Baseline,
            ModeArg::Filter => Mode::FilterOnly,
            ModeArg::Adjust => Mode::AdjustOnly,
            ModeArg::Full => Mode::Full,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Args, Debug)]
struct Input {
    /// Inline text. Read from --file or standard input when omitted.
    text: Option<String>,

    #[arg(long, conflicts_with = "text")]
    file: Option<PathBuf>,

    /// Input is in the pre-tagged format (`surface<TAB>POS` per line).
    #[arg(long)]
    pretagged: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Score one text.
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Add per-sentence rows.
        #[arg(long)]
        explain: bool,
    },
    /// Score every line of a file, one text per line.
    Batch { file: PathBuf },
    /// Score a labeled dataset (CSV `id,text,label` or TSV) with one mode.
    Eval { dataset: PathBuf },
    /// Score a labeled dataset under several modes.
    Ablate {
        dataset: PathBuf,
        /// Comma-separated modes; all four when omitted.
        #[arg(long, value_enum, value_delimiter = ',')]
        modes: Vec<ModeArg>,
    },
    /// Annotated per-sentence trace.
    Explain {
        #[command(flatten)]
        input: Input,
    },
    /// Validate a lexicon directory and print entry counts.
    LexiconCheck { dir: Option<PathBuf> },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: if e.is_io() { 2 } else { 1 }, message: e.to_string() }
    }
}

fn io_failure(what: &str, e: io::Error) -> Failure {
    Failure { code: 2, message: format!("{what}: {e}") }
}

fn config_failure(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            match stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("session: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(f) => {
            eprintln!("session: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn analyzer(cli: &Cli) -> Result<Analyzer, Failure> {
    match &cli.lexicon_dir {
        Some(dir) => Ok(Analyzer::from_dir(dir)?),
        None => Ok(Analyzer::bundled()),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(&path.display().to_string(), e))
}

fn read_input(input: &Input) -> Result<String, Failure> {
    match (&input.text, &input.file) {
        (Some(t), _) => Ok(t.clone()),
        (None, Some(p)) => read_file(p),
        (None, None) => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| io_failure("stdin", e))?;
            Ok(s)
        }
    }
}

fn analyze_input(cli: &Cli, input: &Input) -> Result<Analysis, Failure> {
    let analyzer = analyzer(cli)?;
    let text = read_input(input)?;
    let mode = cli.mode.into();
    if input.pretagged {
        Ok(analyzer.analyze_pretagged(&text, mode)?)
    } else {
        Ok(analyzer.analyze(&text, mode))
    }
}

fn to_json(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn run(cli: &Cli) -> Result<String, Failure> {
    if cli.workers == 0 {
        return Err(config_failure("--workers must be at least 1"));
    }
    match &cli.command {
        Command::Analyze { input, explain } => {
            let a = analyze_input(cli, input)?;
            Ok(match cli.format {
                Format::Json => to_json(json!(a)),
                Format::Tsv => {
                    let mut out = String::from("trinary\trho\teta\n");
                    out.push_str(&format!("{}\t{}\t{}\n", a.trinary, a.score.rho, a.score.eta));
                    if *explain {
                        out.push_str("sentence\trho\teta\tfiltered\ttext\n");
                        for (i, s) in a.sentences.iter().enumerate() {
                            out.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", i + 1, s.rho, s.eta, s.filtered, one_line(&s.raw)));
                        }
                    }
                    out
                }
                Format::Text if *explain => trace::render_explain(&a),
                Format::Text => format!("{} {} ({},{})\n", a.trinary, a.trinary.name(), a.score.rho, a.score.eta),
            })
        }
        Command::Explain { input } => {
            let a = analyze_input(cli, input)?;
            Ok(match cli.format {
                Format::Json => to_json(json!(a)),
                _ => trace::render_explain(&a),
            })
        }
        Command::Batch { file } => {
            let analyzer = analyzer(cli)?;
            let src = read_file(file)?;
            let texts: Vec<String> = src.lines().map(|l| l.trim_end_matches('\r').to_string()).collect();
            let results = evaluator::analyze_all(&analyzer, &texts, cli.mode.into(), cli.workers)?;
            Ok(match cli.format {
                Format::Json => {
                    let mut out = String::new();
                    for a in &results {
                        out.push_str(&serde_json::to_string(a).expect("serializable"));
                        out.push('\n');
                    }
                    out
                }
                _ => {
                    let mut out = String::from("line\ttrinary\trho\teta\n");
                    for (i, a) in results.iter().enumerate() {
                        out.push_str(&format!("{}\t{}\t{}\t{}\n", i + 1, a.trinary, a.score.rho, a.score.eta));
                    }
                    out
                }
            })
        }
        Command::Eval { dataset } => {
            let analyzer = analyzer(cli)?;
            let data = evaluator::load_dataset(dataset, None)?;
            let rows = evaluator::run_ablation(&analyzer, &data, &[cli.mode.into()], cli.workers)?;
            Ok(render_rows(cli.format, &rows))
        }
        Command::Ablate { dataset, modes } => {
            let analyzer = analyzer(cli)?;
            let data = evaluator::load_dataset(dataset, None)?;
            let modes: Vec<Mode> =
                if modes.is_empty() { Mode::ALL.to_vec() } else { modes.iter().map(|&m| m.into()).collect() };
            let rows = evaluator::run_ablation(&analyzer, &data, &modes, cli.workers)?;
            Ok(render_rows(cli.format, &rows))
        }
        Command::LexiconCheck { dir } => {
            let dir = dir.as_ref().or(cli.lexicon_dir.as_ref());
            let lexicon = match dir {
                Some(d) => Lexicon::load(d)?,
                None => Lexicon::bundled(),
            };
            let summary = lexicon.summary();
            Ok(match cli.format {
                Format::Json => to_json(json!({
                    "counts": summary,
                    "warnings": lexicon.warnings(),
                })),
                _ => {
                    let Value::Object(counts) = json!(summary) else { unreachable!() };
                    let mut out = String::new();
                    for (k, v) in counts {
                        out.push_str(&format!("{k}\t{v}\n"));
                    }
                    for w in lexicon.warnings() {
                        out.push_str(&format!("warning\t{w}\n"));
                    }
                    out
                }
            })
        }
    }
}

fn render_rows(format: Format, rows: &[AblationRow]) -> String {
    match format {
        Format::Json => to_json(evaluator::render_json(rows)),
        Format::Tsv => evaluator::render_tsv(rows),
        Format::Text => render_table(rows),
    }
}

/// Aligned version of the TSV table.
fn render_table(rows: &[AblationRow]) -> String {
    let tsv = evaluator::render_tsv(rows);
    let cells: Vec<Vec<&str>> = tsv.lines().map(|l| l.split('\t').collect()).collect();
    let widths: Vec<usize> =
        (0..cells[0].len()).map(|c| cells.iter().map(|r| r[c].len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

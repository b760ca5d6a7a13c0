//! Rule-based sentiment analysis for software-engineering text.
//!
//! The pipeline is [`textprep`] → [`segmenter`] → [`postag`] → [`filters`]
//! → [`adjust`] → [`engine`]; [`evaluator`] scores labeled corpora and
//! [`trace`] renders per-sentence explanations.

pub mod adjust;
pub mod engine;
pub mod error;
pub mod evaluator;
pub mod filters;
pub mod lexicon;
pub mod postag;
pub mod segmenter;
pub mod textprep;
pub mod trace;

pub use engine::{Analysis, Analyzer, Mode, SentimentScore, Trinary};
pub use error::{Error, Result};
pub use lexicon::Lexicon;

//! bAbI harness: parse task files, run stories, score and audit answers.

pub mod audit;
pub mod csv;
pub mod parse;
pub mod run;
pub mod score;

pub use audit::{audit_mismatch, GigoRule};
pub use csv::{export_csv, write_csv, HEADER};
pub use parse::{parse_babi_file, BabiRecord, ParseError, Story};
pub use run::{missing_vocabulary, run_story, run_task, Evidence, EvidenceItem, RunError, RunResult, Status, TaskConfig};
pub use score::{answers_match, normalize, score, Score};

//! Results table export: story_id, input, expected, answer, status.

use std::io::{self, Write};
use std::path::Path;

use super::run::RunResult;

pub const HEADER: &str = "story_id,input,expected,answer,status";

/// Quotes a field holding a space, comma or quote; doubles inner quotes.
fn field(s: &str) -> String {
    if s.contains([' ', ',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn write_csv<W: Write>(results: &[RunResult], mut out: W) -> io::Result<()> {
    writeln!(out, "{HEADER}")?;
    for r in results {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.story,
            field(&r.question),
            field(&r.expected),
            field(&r.produced),
            r.status.as_str()
        )?;
    }
    Ok(())
}

pub fn export_csv(results: &[RunResult], path: &Path) -> io::Result<()> {
    let file = std::fs::File::create(path)?;
    let mut w = io::BufWriter::new(file);
    write_csv(results, &mut w)?;
    w.flush()
}

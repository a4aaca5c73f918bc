//! The bAbI text format: `<id> <text>` or `<id> <question>\t<answer>\t<support ids>`.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BabiRecord {
    pub line_id: usize,
    pub text: String,
    pub expected: Option<String>,
    pub support: Vec<usize>,
}

impl BabiRecord {
    pub fn is_question(&self) -> bool {
        self.expected.is_some()
    }
}

pub type Story = Vec<BabiRecord>;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// Splits a document into stories; a line id of 1 starts a new one.
pub fn parse_babi_file(document: &str) -> Result<Vec<Story>, ParseError> {
    let mut stories: Vec<Story> = Vec::new();
    for (idx, raw) in document.lines().enumerate() {
        let line = idx + 1;
        let raw = raw.trim_end_matches('\r');
        if raw.trim().is_empty() {
            continue;
        }
        let err = |message: &str| ParseError { line, message: message.to_string() };
        let (id, rest) = raw.split_once(' ').ok_or_else(|| err("expected `<id> <text>`"))?;
        let line_id: usize = id.parse().map_err(|_| err("line id is not a number"))?;
        if line_id == 0 {
            return Err(err("line ids start at 1"));
        }
        let mut fields = rest.split('\t');
        let text = fields.next().unwrap_or_default().trim().to_string();
        if text.is_empty() {
            return Err(err("empty sentence"));
        }
        let expected = fields.next().map(|a| a.trim().to_string());
        let support = match fields.next() {
            Some(s) => s
                .split_whitespace()
                .map(|n| n.parse().map_err(|_| err("support id is not a number")))
                .collect::<Result<Vec<usize>, _>>()?,
            None => Vec::new(),
        };
        if fields.next().is_some() {
            return Err(err("too many tab-separated fields"));
        }
        let record = BabiRecord { line_id, text, expected, support };
        match stories.last_mut() {
            Some(story) if line_id != 1 => story.push(record),
            None if line_id != 1 => return Err(err("first story does not start at line 1")),
            _ => stories.push(vec![record]),
        }
    }
    Ok(stories)
}

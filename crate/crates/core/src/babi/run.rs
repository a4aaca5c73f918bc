//! Runs stories through matcher, context and realizer.

use rayon::prelude::*;
use thiserror::Error;

use crate::context::{ContextOptions, Tracker};
use crate::lexicon::{Lexicon, SenseId};
use crate::matcher::{MatchOptions, Matcher};
use crate::nlg::{realize_answer, Mode, PolarStyle, RealizationRequest};
use crate::semantics::Ls;

use super::audit::{audit_mismatch, GigoRule};
use super::parse::Story;
use super::score::answers_match;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TaskConfig {
    pub task: u8,
    pub mode: Mode,
    pub style: PolarStyle,
    pub context: ContextOptions,
    pub matching: MatchOptions,
}

impl TaskConfig {
    /// Defaults for a task; task 5 keeps only the latest transfer match,
    /// since its expected answers are single keywords.
    pub fn for_task(task: u8) -> Self {
        TaskConfig {
            task,
            mode: Mode::Keyword,
            style: PolarStyle::Short,
            context: ContextOptions { babi_last: task == 5, ..ContextOptions::default() },
            matching: MatchOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Passed,
    Failed,
    Gigo,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Passed => "passed",
            Status::Failed => "failed",
            Status::Gigo => "gigo",
        }
    }
}

/// A stored item tied back to the story line it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct EvidenceItem {
    pub line_id: usize,
    pub predicate: Option<SenseId>,
    pub ls: Ls,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Evidence {
    pub question_predicate: Option<SenseId>,
    /// Items behind the produced answer, oldest first.
    pub answer: Vec<EvidenceItem>,
    /// Items from the lines the dataset cites as support.
    pub expected_support: Vec<EvidenceItem>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub story: usize,
    pub line_id: usize,
    pub question: String,
    pub expected: String,
    pub produced: String,
    pub status: Status,
    pub rule: Option<GigoRule>,
    pub explanation: String,
    /// Context rendering at question time.
    pub trace: String,
    pub evidence: Evidence,
    /// Ambiguities, parse failures and ledger warnings seen so far in the story.
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RunError {
    #[error("vocabulary gap: {}", .0.join(", "))]
    Vocabulary(Vec<String>),
}

/// Every word in `stories` that neither a form nor a literal phrase covers.
pub fn missing_vocabulary(lex: &Lexicon, stories: &[Story]) -> Vec<String> {
    let m = Matcher::new(lex);
    let mut out: Vec<String> = Vec::new();
    for rec in stories.iter().flatten() {
        for w in m.missing_words(&rec.text) {
            if !out.contains(&w) {
                out.push(w);
            }
        }
    }
    out.sort();
    out
}

/// One fresh tracker per story; stories run in parallel, results come back
/// in (story, line) order.
pub fn run_task(lex: &Lexicon, stories: &[Story], config: &TaskConfig) -> Result<Vec<RunResult>, RunError> {
    let missing = missing_vocabulary(lex, stories);
    if !missing.is_empty() {
        return Err(RunError::Vocabulary(missing));
    }
    let per_story: Vec<Vec<RunResult>> = stories
        .par_iter()
        .enumerate()
        .map(|(i, story)| run_story(lex, i + 1, story, config))
        .collect();
    Ok(per_story.into_iter().flatten().collect())
}

pub fn run_story(lex: &Lexicon, story_id: usize, story: &Story, config: &TaskConfig) -> Vec<RunResult> {
    let m = Matcher::with_options(lex, config.matching);
    let mut tracker = Tracker::with_options(lex, config.context);
    // story line of each stored item, by item index - 1
    let mut item_lines: Vec<usize> = Vec::new();
    let mut diagnostics: Vec<String> = Vec::new();
    let mut out = Vec::new();

    for rec in story {
        let readings = match m.parse_utterance(&rec.text) {
            Ok(r) => r,
            Err(e) => {
                diagnostics.push(format!("line {}: {e}", rec.line_id));
                if let Some(expected) = &rec.expected {
                    out.push(failed(story_id, rec.line_id, &rec.text, expected, &tracker, &diagnostics));
                }
                continue;
            }
        };
        if readings.len() > 1 {
            diagnostics.push(format!("line {}: {} readings, using the first", rec.line_id, readings.len()));
        }
        let prop = &readings[0];
        let Some(expected) = &rec.expected else {
            let before = tracker.diagnostics().len();
            match tracker.ingest(prop) {
                Ok(added) => item_lines.extend(added.iter().map(|_| rec.line_id)),
                Err(e) => diagnostics.push(format!("line {}: {e}", rec.line_id)),
            }
            for d in &tracker.diagnostics()[before..] {
                diagnostics.push(format!("line {}: {}", rec.line_id, d.message));
            }
            continue;
        };

        let content = match tracker.answer_question(prop) {
            Ok(c) => c,
            Err(e) => {
                diagnostics.push(format!("line {}: {e}", rec.line_id));
                out.push(failed(story_id, rec.line_id, &rec.text, expected, &tracker, &diagnostics));
                continue;
            }
        };
        let request = RealizationRequest { content: &content, mode: config.mode, style: config.style };
        let produced = realize_answer(lex, &request).unwrap_or_else(|e| format!("<{e}>"));

        let evidence_of = |index: usize| {
            let item = &tracker.items()[index - 1];
            EvidenceItem {
                line_id: item_lines[index - 1],
                predicate: item.predicate.clone(),
                ls: item.ls.clone(),
                source: item.source.clone(),
            }
        };
        let evidence = Evidence {
            question_predicate: prop.predicate.clone(),
            answer: content.support.iter().map(|&i| evidence_of(i)).collect(),
            expected_support: (1..=item_lines.len())
                .filter(|&i| rec.support.contains(&item_lines[i - 1]))
                .map(evidence_of)
                .collect(),
        };
        let mut result = RunResult {
            story: story_id,
            line_id: rec.line_id,
            question: rec.text.clone(),
            expected: expected.clone(),
            produced,
            status: Status::Passed,
            rule: None,
            explanation: String::new(),
            trace: tracker.trace(),
            evidence,
            diagnostics: diagnostics.clone(),
        };
        if !answers_match(expected, &result.produced) {
            let (rule, explanation) = audit_mismatch(lex, &result);
            result.status = if rule.is_some() { Status::Gigo } else { Status::Failed };
            result.rule = rule;
            result.explanation = explanation;
        }
        out.push(result);
    }
    out
}

fn failed(story: usize, line_id: usize, question: &str, expected: &str, t: &Tracker<'_>, diagnostics: &[String]) -> RunResult {
    RunResult {
        story,
        line_id,
        question: question.to_string(),
        expected: expected.to_string(),
        produced: String::new(),
        status: Status::Failed,
        rule: None,
        explanation: diagnostics.last().cloned().unwrap_or_default(),
        trace: t.trace(),
        evidence: Evidence::default(),
        diagnostics: diagnostics.to_vec(),
    }
}

//! Classifies wrong answers that trace back to the dataset rather than the engine.

use std::fmt;

use crate::lexicon::{Lexicon, SenseId};

use super::run::{EvidenceItem, RunResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GigoRule {
    /// The expected answer ignores a later pass/hand, which is giving too.
    G1,
    /// A take/get/grab counts as receiving, the dataset expects an earlier recipient.
    G2,
}

impl fmt::Display for GigoRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GigoRule::G1 => "G1",
            GigoRule::G2 => "G2",
        })
    }
}

/// Applies the registered rules to a mismatch; `None` means an engine error.
pub fn audit_mismatch(lex: &Lexicon, r: &RunResult) -> (Option<GigoRule>, String) {
    let give = SenseId::from("p:give");
    let ev = &r.evidence;
    let Some(answer) = ev.answer.last() else {
        return (None, "no stored item supports the produced answer".into());
    };
    let earliest_expected = ev.expected_support.iter().map(|e| e.line_id).min();
    let earlier = earliest_expected.is_some_and(|l| l < answer.line_id);
    let entails = |item: &EvidenceItem, target: &SenseId| item.predicate.as_ref().is_some_and(|p| lex.entails(p, target));
    let asked = ev.question_predicate.as_ref();

    if asked.is_some_and(|p| lex.entails(p, &give))
        && earlier
        && entails(answer, &give)
        && answer.predicate.as_ref() != Some(&give)
        && ev.expected_support.iter().any(|e| entails(e, &give))
    {
        return (
            Some(GigoRule::G1),
            format!(
                "expected answer rests on line {}, but line {} ({}) is a later give-equivalent",
                earliest_expected.unwrap_or_default(),
                answer.line_id,
                answer.source
            ),
        );
    }

    let receive = SenseId::from("p:receive");
    let no_source = answer.ls.have_leaves().iter().all(|(_, _, gain)| *gain);
    let two_party = ev.expected_support.iter().any(|e| e.ls.have_leaves().iter().any(|(_, _, gain)| !gain));
    if asked == Some(&receive) && earlier && no_source && two_party {
        return (
            Some(GigoRule::G2),
            format!(
                "line {} ({}) acquires the object, which counts as receiving it; expected answer rests on line {}",
                answer.line_id,
                answer.source,
                earliest_expected.unwrap_or_default()
            ),
        );
    }
    (None, format!("unclassified mismatch\n{}", r.trace))
}

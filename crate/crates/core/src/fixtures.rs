//! Bundled data: the English lexicon, the phrase inventory and small bAbI
//! stories transcribed for regression runs.

use crate::lexicon::{Lexicon, LexiconError};

pub const ENGLISH: &str = include_str!("../data/lexicon/english.lex");
pub const PHRASES: &str = include_str!("../data/lexicon/phrases.lex");

/// (task number, file contents)
pub const BABI_TASKS: [(u8, &str); 9] = [
    (1, include_str!("../data/babi/qa1.txt")),
    (5, include_str!("../data/babi/qa5.txt")),
    (6, include_str!("../data/babi/qa6.txt")),
    (7, include_str!("../data/babi/qa7.txt")),
    (8, include_str!("../data/babi/qa8.txt")),
    (9, include_str!("../data/babi/qa9.txt")),
    (11, include_str!("../data/babi/qa11.txt")),
    (12, include_str!("../data/babi/qa12.txt")),
    (13, include_str!("../data/babi/qa13.txt")),
];

/// The bundled lexicon with its phrase patterns.
pub fn lexicon() -> Result<Lexicon, LexiconError> {
    Lexicon::load_all(&[ENGLISH, PHRASES])
}

pub fn babi_task(task: u8) -> Option<&'static str> {
    BABI_TASKS.iter().find(|(t, _)| *t == task).map(|(_, s)| *s)
}

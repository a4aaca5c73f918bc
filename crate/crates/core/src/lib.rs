//! Meaning-based language understanding over a small semantic network.
//!
//! Sentences are matched against phrase patterns into RRG-style logical
//! structures, stored in an append-only context, and questions are answered
//! by intersecting their logical structure with what is stored.

pub mod babi;
pub mod context;
pub mod fixtures;
pub mod lexicon;
pub mod matcher;
pub mod nlg;
pub mod semantics;

pub use context::{AnswerContent, AnswerKind, ContextError, ContextItem, ContextOptions, Tracker};
pub use lexicon::{Category, Dimensionality, Lexicon, LexiconError, SenseId};
pub use matcher::{Matcher, MatchError, MatchOptions, Proposition};
pub use nlg::{Mode, NlgError, PolarStyle, RealizationRequest, VerbGroup};
pub use semantics::{Focus, LogicalStructure, OperatorSet, Referent};

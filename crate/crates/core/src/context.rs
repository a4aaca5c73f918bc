//! Append-only context: statements become numbered items, questions are
//! answered by intersecting their logical structure with stored items.

use std::fmt;

use thiserror::Error;

use crate::lexicon::{Lexicon, SenseId};
use crate::matcher::pattern::Template;
use crate::matcher::Proposition;
use crate::semantics::{
    Arg, Binding, Focus, Ls, OperatorSet, Polarity, Referent, Tense, Unifier,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ContextError {
    #[error("questions are answered, not stored: `{0}`")]
    NotAStatement(String),
    #[error("`{0}` is not a question")]
    NotAQuestion(String),
    #[error("no antecedent for `{0}`")]
    UnresolvedPronoun(String),
    #[error("unsupported question: `{0}`")]
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContextItem {
    pub index: usize,
    pub ls: Ls,
    pub operators: OperatorSet,
    pub source: String,
    pub predicate: Option<SenseId>,
}

impl fmt::Display for ContextItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{} [{}] {} :: {}", self.index, self.operators, self.ls, self.source)
    }
}

/// Something wrong with the input itself rather than the engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub index: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContextOptions {
    /// Past-tense where-lists end with the current position.
    pub include_current_position: bool,
    /// "received" needs someone to have given the object up.
    pub strict_receive: bool,
    /// Keep only the most recent binding of a content answer.
    pub babi_last: bool,
}

impl Default for ContextOptions {
    fn default() -> Self {
        ContextOptions { include_current_position: true, strict_receive: false, babi_last: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnswerKind {
    Polar,
    Content,
    Count,
    List,
}

/// What an answer says, before any wording is chosen.
#[derive(Debug, Clone, PartialEq)]
pub struct AnswerContent {
    pub kind: AnswerKind,
    pub polarity: Polarity,
    pub focus: Option<Focus>,
    pub bindings: Vec<Binding>,
    /// Item index each binding came from.
    pub support: Vec<usize>,
    pub count: Option<usize>,
    /// The question's operators, echoed for short answers.
    pub operators: OperatorSet,
    pub subject: Option<Referent>,
    /// Someone else found where the subject was asked about.
    pub contrast: Option<Referent>,
    /// Tense of a stored state that decided a polar answer; `None` when the
    /// deciding item was an event whose result still holds.
    pub item_tense: Option<Tense>,
    /// The question's predicate sense.
    pub predicate: Option<SenseId>,
    /// Location asked about by a polar position question.
    pub place: Option<Referent>,
}

impl AnswerContent {
    fn new(kind: AnswerKind, q: &Proposition) -> Self {
        AnswerContent {
            kind,
            polarity: Polarity::Positive,
            focus: None,
            bindings: Vec::new(),
            support: Vec::new(),
            count: None,
            operators: q.operators.clone(),
            subject: None,
            contrast: None,
            item_tense: None,
            predicate: q.predicate.clone(),
            place: None,
        }
    }
}

pub struct Tracker<'a> {
    lex: &'a Lexicon,
    options: ContextOptions,
    items: Vec<ContextItem>,
    /// (holder, object) in acquisition order.
    ledger: Vec<(Referent, Referent)>,
    diagnostics: Vec<Diagnostic>,
}

impl<'a> Tracker<'a> {
    pub fn new(lex: &'a Lexicon) -> Self {
        Tracker::with_options(lex, ContextOptions::default())
    }

    pub fn with_options(lex: &'a Lexicon, options: ContextOptions) -> Self {
        Tracker { lex, options, items: Vec::new(), ledger: Vec::new(), diagnostics: Vec::new() }
    }

    pub fn items(&self) -> &[ContextItem] {
        &self.items
    }

    pub fn diagnostics(&self) -> &[Diagnostic] {
        &self.diagnostics
    }

    pub fn options(&self) -> ContextOptions {
        self.options
    }

    /// One line per item, oldest first.
    pub fn trace(&self) -> String {
        self.items.iter().map(|i| format!("{i}\n")).collect()
    }

    /// Stores a statement (embedded clauses first) and returns the new item indices.
    pub fn ingest(&mut self, prop: &Proposition) -> Result<Vec<usize>, ContextError> {
        if prop.operators.is_question() {
            return Err(ContextError::NotAStatement(prop.source.clone()));
        }
        let mut added = Vec::new();
        for e in &prop.embedded {
            added.extend(self.ingest(e)?);
        }
        let ls = self.resolve_pronouns(&prop.ls)?;
        for ops in prop.operators.readings() {
            let index = self.items.len() + 1;
            if ops.polarity == Polarity::Positive {
                self.record_holdings(index, &ls);
            }
            self.items.push(ContextItem {
                index,
                ls: ls.clone(),
                operators: ops,
                source: prop.source.clone(),
                predicate: prop.predicate.clone(),
            });
            added.push(index);
        }
        Ok(added)
    }

    fn resolve_pronouns(&self, ls: &Ls) -> Result<Ls, ContextError> {
        let mut failed = None;
        let out = ls.map_referents(&mut |r| {
            if !r.is_pronoun() {
                return r.clone();
            }
            match self.resolve_pronoun(r) {
                Some(found) => found,
                None => {
                    failed = Some(r.to_string());
                    r.clone()
                }
            }
        });
        match failed {
            Some(p) => Err(ContextError::UnresolvedPronoun(p)),
            None => Ok(out),
        }
    }

    /// Most recent agreeing referent, newest item first and actor first
    /// within an item. Locations are never antecedents.
    pub fn resolve_pronoun(&self, pronoun: &Referent) -> Option<Referent> {
        let location = SenseId::from("location");
        for item in self.items.iter().rev() {
            for r in item.ls.referents() {
                let candidate = match r {
                    Referent::Bundle(_) => pronoun.is_plural(),
                    Referent::Entity { sense, .. } => {
                        if self.lex.holds_category(sense, &location).unwrap_or(false) {
                            continue;
                        }
                        self.agrees(pronoun, sense)
                    }
                    _ => false,
                };
                if candidate {
                    return Some(r.clone());
                }
            }
        }
        None
    }

    fn agrees(&self, pronoun: &Referent, sense: &SenseId) -> bool {
        let Some(s) = self.lex.sense(sense) else { return false };
        let person = self.lex.holds_category(sense, &SenseId::from("person")).unwrap_or(false);
        if pronoun.is_plural() {
            return s.attrs.contains("plural");
        }
        for gender in ["male", "female"] {
            if pronoun.has_attr(gender) {
                return s.attrs.contains(gender);
            }
        }
        pronoun.has_attr("neuter") && !person
    }

    fn record_holdings(&mut self, index: usize, ls: &Ls) {
        for (holder, object, gain) in ls.have_leaves() {
            if matches!(holder, Referent::Unspecified) || matches!(object, Referent::Query { .. }) {
                continue;
            }
            let held = self.ledger.iter().position(|(h, o)| h.same_as(&holder) && o.same_as(&object));
            match (gain, held) {
                (true, None) => self.ledger.push((holder, object)),
                (true, Some(_)) => {}
                (false, Some(at)) => {
                    self.ledger.remove(at);
                }
                (false, None) => self.diagnostics.push(Diagnostic {
                    index,
                    message: format!("{holder} gives up {object} without holding it"),
                }),
            }
        }
    }

    /// Objects `holder` currently has, oldest acquisition first.
    pub fn holdings_of(&self, holder: &Referent) -> Vec<&Referent> {
        self.ledger.iter().filter(|(h, _)| h.same_as(holder)).map(|(_, o)| o).collect()
    }

    /// Every stored position of `entity`: (item, positional state).
    pub fn positions_of(&self, entity: &Referent) -> Vec<(&ContextItem, Ls)> {
        let mut out = Vec::new();
        for item in &self.items {
            if let Some((pred, loc, located)) = item.ls.position() {
                if entity.members().iter().all(|m| crate::semantics::referent_matches(m, located)) {
                    let state = Ls::State { pred: pred.clone(), arg1: Arg::Ref(loc.clone()), arg2: Some(located.clone()) };
                    out.push((item, state));
                }
            }
        }
        out
    }

    pub fn answer_question(&self, q: &Proposition) -> Result<AnswerContent, ContextError> {
        if !q.operators.is_question() {
            return Err(ContextError::NotAQuestion(q.source.clone()));
        }
        let ls = self.resolve_pronouns(&q.ls)?;
        match q.template {
            Template::Where => self.answer_where(q, &ls),
            Template::Position => Ok(self.answer_position(q, &ls)),
            Template::Hold if !ls.foci().is_empty() => self.answer_holding(q, &ls),
            _ => Ok(self.answer_generic(q, &ls)),
        }
    }

    fn answer_where(&self, q: &Proposition, ls: &Ls) -> Result<AnswerContent, ContextError> {
        let Ls::State { arg2: Some(subject), .. } = ls else {
            return Err(ContextError::Unsupported(q.source.clone()));
        };
        let unifier = Unifier::new(self.lex);
        let mut a = AnswerContent::new(AnswerKind::Content, q);
        a.focus = Some(Focus::Where);
        a.subject = Some(subject.clone());
        // (item, binding) for positive positions, negatives clearing a matching current one
        let mut current: Option<(usize, Binding, Option<Tense>)> = None;
        let mut history: Vec<(usize, Binding)> = Vec::new();
        for (item, state) in self.positions_of(subject) {
            if item.operators.is_negative() {
                let clears = current.as_ref().is_some_and(|(i, _, _)| {
                    self.items[*i - 1].ls.position().map(|p| p.1) == state.position().map(|p| p.1)
                });
                if clears {
                    current = None;
                }
                continue;
            }
            let Some(b) = unifier.unify(ls, &state) else { continue };
            let Some((_, binding)) = b.into_iter().find(|(f, _)| *f == Focus::Where) else { continue };
            history.push((item.index, binding.clone()));
            let tense = matches!(item.ls, Ls::State { .. }).then_some(item.operators.tense);
            current = Some((item.index, binding, tense));
        }
        if q.operators.tense == Tense::Past {
            if !self.options.include_current_position {
                if let Some((cur, _, _)) = &current {
                    if history.last().is_some_and(|(i, _)| i == cur) {
                        history.pop();
                    }
                }
            }
            a.kind = AnswerKind::List;
            for (i, b) in history {
                a.support.push(i);
                a.bindings.push(b);
            }
        } else if let Some((i, b, tense)) = current {
            a.support.push(i);
            a.bindings.push(b);
            a.item_tense = tense;
        }
        Ok(a)
    }

    fn answer_position(&self, q: &Proposition, ls: &Ls) -> AnswerContent {
        let mut a = AnswerContent::new(AnswerKind::Polar, q);
        a.polarity = Polarity::Negative;
        let Some((_, qloc, subject)) = ls.position() else { return a };
        a.subject = Some(subject.clone());
        a.place = Some(qloc.clone());
        let unifier = Unifier::new(self.lex);
        if let Some((item, state)) = self.positions_of(subject).into_iter().last() {
            if matches!(item.ls, Ls::State { .. }) {
                a.item_tense = Some(item.operators.tense);
            }
            if !item.operators.is_negative() && unifier.unify(ls, &state).is_some() {
                a.polarity = Polarity::Positive;
                a.support.push(item.index);
            }
        }
        if a.polarity == Polarity::Negative {
            a.contrast = self.someone_at(qloc, subject);
        }
        a
    }

    /// Most recently placed entity, other than `except`, whose latest position is `loc`.
    fn someone_at(&self, loc: &Referent, except: &Referent) -> Option<Referent> {
        let mut seen: Vec<&Referent> = Vec::new();
        for item in self.items.iter().rev() {
            let Some((_, l, located)) = item.ls.position() else { continue };
            for m in located.members() {
                if seen.iter().any(|s| s.same_as(m)) {
                    continue;
                }
                seen.push(m);
                let here = l.same_as(loc) && !item.operators.is_negative();
                if here && !except.members().iter().any(|e| e.same_as(m)) {
                    return Some(m.clone());
                }
            }
        }
        None
    }

    fn answer_holding(&self, q: &Proposition, ls: &Ls) -> Result<AnswerContent, ContextError> {
        let Ls::State { arg1: Arg::Ref(holder), arg2: Some(Referent::Query { focus, attrs }), .. } = ls else {
            return Err(ContextError::Unsupported(q.source.clone()));
        };
        let category = attrs.iter().find_map(|a| a.strip_prefix("of:")).map(SenseId::from);
        let held: Vec<Referent> = self
            .holdings_of(holder)
            .into_iter()
            .filter(|o| match (&category, o.sense()) {
                (Some(c), Some(s)) => self.lex.holds_category(s, c).unwrap_or(false),
                _ => true,
            })
            .cloned()
            .collect();
        let kind = if *focus == Focus::HowMany { AnswerKind::Count } else { AnswerKind::List };
        let mut a = AnswerContent::new(kind, q);
        a.focus = Some(*focus);
        a.subject = Some(holder.clone());
        a.count = Some(held.len());
        a.bindings = held.into_iter().map(Binding::Referent).collect();
        Ok(a)
    }

    /// Intersection of the question with every positive sub-term of every item.
    fn answer_generic(&self, q: &Proposition, ls: &Ls) -> AnswerContent {
        let unifier = Unifier::new(self.lex);
        let foci = ls.foci();
        let mut a = AnswerContent::new(if foci.is_empty() { AnswerKind::Polar } else { AnswerKind::Content }, q);
        a.focus = foci.first().copied();
        a.polarity = Polarity::Negative;
        for item in &self.items {
            if item.operators.is_negative() {
                continue;
            }
            for sub in item.ls.positive_subterms() {
                let Some(b) = unifier.unify(ls, sub) else { continue };
                if self.options.strict_receive && !self.has_source(q, &item.ls) {
                    continue;
                }
                a.polarity = Polarity::Positive;
                if let Some(focus) = a.focus {
                    if let Some((_, binding)) = b.into_iter().find(|(f, _)| *f == focus) {
                        a.bindings.push(binding);
                        a.support.push(item.index);
                    }
                } else {
                    a.support.push(item.index);
                }
                break;
            }
        }
        if self.options.babi_last && a.bindings.len() > 1 {
            let keep = a.bindings.len() - 1;
            a.bindings.drain(..keep);
            a.support.drain(..keep);
        }
        if a.focus.is_some() && !self.options.babi_last {
            dedup_bindings(&mut a);
        }
        a
    }

    /// Under strict-receive, an acquisition counts only when someone else
    /// gave the object up in the same event.
    fn has_source(&self, q: &Proposition, item: &Ls) -> bool {
        let receive = q.predicate.as_ref().is_some_and(|p| p.as_str() == "p:receive");
        !receive || item.have_leaves().iter().any(|(_, _, gain)| !gain)
    }
}

fn dedup_bindings(a: &mut AnswerContent) {
    let mut keep_b = Vec::new();
    let mut keep_s = Vec::new();
    for (b, s) in a.bindings.drain(..).zip(a.support.drain(..)) {
        let dup = keep_b.iter().any(|k: &Binding| match (k, &b) {
            (Binding::Referent(x), Binding::Referent(y)) => x.same_as(y),
            (x, y) => x == y,
        });
        if !dup {
            keep_b.push(b);
            keep_s.push(s);
        }
    }
    a.bindings = keep_b;
    a.support = keep_s;
}

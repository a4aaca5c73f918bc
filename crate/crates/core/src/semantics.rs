//! Logical structures: the RRG-style term algebra, its construction
//! templates, and the unifier that matches question terms against stored
//! context items.

use std::fmt;

use thiserror::Error;

use crate::lexicon::{Attrs, Dimensionality, Lexicon, SenseId};

/// Narrow-focus class of a question word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Focus {
    Who,
    What,
    Where,
    HowMany,
}

impl Focus {
    pub fn as_str(self) -> &'static str {
        match self {
            Focus::Who => "Who",
            Focus::What => "What",
            Focus::Where => "Where",
            Focus::HowMany => "HowMany",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "who" => Focus::Who,
            "what" => Focus::What,
            "where" => Focus::Where,
            "how-many" => Focus::HowMany,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Referent {
    Entity { sense: SenseId, attrs: Attrs },
    /// Conjoined referents ("mary and jeff"), kept together.
    Bundle(Vec<Referent>),
    Query { focus: Focus, attrs: Attrs },
    Unspecified,
}

impl Referent {
    pub fn entity(sense: impl Into<SenseId>) -> Self {
        Referent::Entity { sense: sense.into(), attrs: Attrs::new() }
    }

    pub fn with_attrs(sense: impl Into<SenseId>, attrs: &[&str]) -> Self {
        Referent::Entity {
            sense: sense.into(),
            attrs: attrs.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn definite(sense: impl Into<SenseId>) -> Self {
        Referent::with_attrs(sense, &["definite"])
    }

    pub fn query(focus: Focus) -> Self {
        Referent::Query { focus, attrs: Attrs::new() }
    }

    /// Builds a bundle; members must be entities and there must be at least two.
    pub fn bundle(members: Vec<Referent>) -> Option<Self> {
        if members.len() < 2 || !members.iter().all(|m| matches!(m, Referent::Entity { .. })) {
            return None;
        }
        Some(Referent::Bundle(members))
    }

    pub fn sense(&self) -> Option<&SenseId> {
        match self {
            Referent::Entity { sense, .. } => Some(sense),
            _ => None,
        }
    }

    pub fn attrs(&self) -> Option<&Attrs> {
        match self {
            Referent::Entity { attrs, .. } | Referent::Query { attrs, .. } => Some(attrs),
            _ => None,
        }
    }

    pub fn has_attr(&self, attr: &str) -> bool {
        self.attrs().is_some_and(|a| a.contains(attr))
    }

    pub fn is_plural(&self) -> bool {
        matches!(self, Referent::Bundle(_)) || self.has_attr("plural")
    }

    pub fn is_pronoun(&self) -> bool {
        self.has_attr("pronoun")
    }

    /// Entities making up this referent (itself, or the bundle members).
    pub fn members(&self) -> Vec<&Referent> {
        match self {
            Referent::Bundle(m) => m.iter().collect(),
            Referent::Entity { .. } => vec![self],
            _ => Vec::new(),
        }
    }

    /// Same entity or same bundle membership, ignoring operator attributes.
    pub fn same_as(&self, other: &Referent) -> bool {
        match (self, other) {
            (Referent::Entity { sense: a, .. }, Referent::Entity { sense: b, .. }) => a == b,
            (Referent::Bundle(a), Referent::Bundle(b)) => {
                a.len() == b.len() && a.iter().all(|m| b.iter().any(|n| m.same_as(n)))
            }
            (Referent::Query { focus: a, .. }, Referent::Query { focus: b, .. }) => a == b,
            (Referent::Unspecified, Referent::Unspecified) => true,
            _ => false,
        }
    }
}

impl fmt::Display for Referent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Referent::Entity { sense, attrs } => {
                if attrs.contains("definite") {
                    write!(f, "the {}", sense.head())
                } else if attrs.contains("indefinite") {
                    write!(f, "a {}", sense.head())
                } else {
                    f.write_str(sense.head())
                }
            }
            Referent::Bundle(members) => {
                for (i, m) in members.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" and ")?;
                    }
                    write!(f, "{m}")?;
                }
                Ok(())
            }
            Referent::Query { focus, .. } => f.write_str(focus.as_str()),
            Referent::Unspecified => f.write_str("0"),
        }
    }
}

/// A predicate name inside a logical structure (`go`, `be-in`, `have`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pred(pub String);

impl Pred {
    pub fn new(name: impl Into<String>) -> Self {
        Pred(name.into())
    }

    pub fn from_sense(sense: &SenseId) -> Self {
        Pred(sense.as_str().to_string())
    }

    pub fn name(&self) -> &str {
        match self.0.split_once(':') {
            Some((_, rest)) => rest,
            None => &self.0,
        }
    }

    pub fn is_positional(&self) -> bool {
        matches!(self.0.as_str(), "be-in" | "be-on" | "be-at" | "be-LOC")
    }

    pub fn is_have(&self) -> bool {
        self.0 == "have"
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    Ref(Referent),
    Ls(Box<LogicalStructure>),
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Ref(r) => write!(f, "{r}"),
            Arg::Ls(ls) => write!(f, "{ls}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WrapOp {
    Become,
    Ingr,
    Not,
}

impl WrapOp {
    fn as_str(self) -> &'static str {
        match self {
            WrapOp::Become => "BECOME",
            WrapOp::Ingr => "INGR",
            WrapOp::Not => "NOT",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Link {
    /// `&` juncture of an activity and its result.
    And,
    Cause,
    /// `∧` conjunction; unordered for matching.
    Conj,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActivityInner {
    pub pred: Pred,
    pub undergoer: Option<Referent>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LogicalStructure {
    State { pred: Pred, arg1: Arg, arg2: Option<Referent> },
    /// `do'(actor,[pred'(actor, undergoer)])`, or `do'(actor,0)` with no inner predicate.
    Activity { actor: Referent, inner: Option<ActivityInner> },
    Wrapped { op: WrapOp, inner: Box<LogicalStructure> },
    Linked { left: Box<LogicalStructure>, link: Link, right: Box<LogicalStructure> },
}

pub type Ls = LogicalStructure;

impl fmt::Display for LogicalStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ls::State { pred, arg1, arg2 } => {
                write!(f, "{}'({}", pred.name(), arg1)?;
                if let Some(a) = arg2 {
                    write!(f, ",{a}")?;
                }
                f.write_str(")")
            }
            Ls::Activity { actor, inner } => match inner {
                None => write!(f, "do'({actor},0)"),
                Some(ActivityInner { pred, undergoer }) => {
                    write!(f, "do'({actor},[{}'({actor}", pred.name())?;
                    if let Some(u) = undergoer {
                        write!(f, ",{u}")?;
                    }
                    f.write_str(")])")
                }
            },
            Ls::Wrapped { op, inner } => write!(f, "{} {}", op.as_str(), inner),
            Ls::Linked { left, link, right } => match link {
                Link::And => write!(f, "{left} & {right}"),
                Link::Cause => write!(f, "[{left}] CAUSE [{right}]"),
                Link::Conj => write!(f, "{left} ∧ {right}"),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Tense {
    Past,
    #[default]
    Present,
    Future,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Voice {
    #[default]
    Active,
    Passive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Polarity {
    #[default]
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Force {
    #[default]
    Statement,
    Question,
    Imperative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Number {
    #[default]
    Singular,
    Plural,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Deixis {
    Proximal,
    Distal,
    #[default]
    None,
}

/// Clause-level operators: tense, aspect, voice, polarity, force and agreement.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OperatorSet {
    pub tense: Tense,
    pub perfect: bool,
    pub progressive: bool,
    pub voice: Voice,
    pub polarity: Polarity,
    pub force: Force,
    pub person: u8,
    pub number: Number,
    pub definite: Option<bool>,
    pub deixis: Deixis,
    pub modality: Option<String>,
    /// "is no longer": a past positive state followed by a present negative one.
    pub no_longer: bool,
}

impl Default for OperatorSet {
    fn default() -> Self {
        OperatorSet {
            tense: Tense::Present,
            perfect: false,
            progressive: false,
            voice: Voice::Active,
            polarity: Polarity::Positive,
            force: Force::Statement,
            person: 3,
            number: Number::Singular,
            definite: None,
            deixis: Deixis::None,
            modality: None,
            no_longer: false,
        }
    }
}

impl OperatorSet {
    pub fn is_question(&self) -> bool {
        self.force == Force::Question
    }

    pub fn is_negative(&self) -> bool {
        self.polarity == Polarity::Negative
    }

    /// Splits a "no longer" reading into its past-positive and present-negative halves.
    pub fn readings(&self) -> Vec<OperatorSet> {
        if !self.no_longer {
            return vec![self.clone()];
        }
        let base = OperatorSet { no_longer: false, ..self.clone() };
        vec![
            OperatorSet { tense: Tense::Past, polarity: Polarity::Positive, ..base.clone() },
            OperatorSet { tense: Tense::Present, polarity: Polarity::Negative, ..base },
        ]
    }
}

impl fmt::Display for OperatorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<&str> = vec![match self.tense {
            Tense::Past => "past",
            Tense::Present => "present",
            Tense::Future => "future",
        }];
        if self.perfect {
            parts.push("perfect");
        }
        if self.progressive {
            parts.push("progressive");
        }
        if self.voice == Voice::Passive {
            parts.push("passive");
        }
        if self.polarity == Polarity::Negative {
            parts.push("negative");
        }
        parts.push(match self.force {
            Force::Statement => "statement",
            Force::Question => "question",
            Force::Imperative => "imperative",
        });
        if self.number == Number::Plural {
            parts.push("plural");
        }
        if self.no_longer {
            parts.push("no-longer");
        }
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("`{0}` is not a positional state predicate")]
    NotPositional(String),
    #[error("destination `{0}` has no dimensionality class")]
    NoDimensionality(String),
    #[error("motion predicate `{0}` does not entail go")]
    NotMotion(String),
    #[error("missing required role `{0}`")]
    MissingRole(&'static str),
}

/// `be-in'(the kitchen, mary)`: the location takes the first slot.
pub fn build_state(pred: &str, arg1: Referent, arg2: Referent) -> Ls {
    Ls::State { pred: Pred::new(pred), arg1: Arg::Ref(arg1), arg2: Some(arg2) }
}

/// Positional state for a located referent, picking in/on/at from the location's class.
pub fn build_position(lex: &Lexicon, location: Referent, located: Referent) -> Result<Ls, SemanticsError> {
    let dim = dimensionality_of(lex, &location)?;
    Ok(build_state(dim.state_predicate(), location, located))
}

fn dimensionality_of(lex: &Lexicon, location: &Referent) -> Result<Dimensionality, SemanticsError> {
    let sense = location
        .sense()
        .ok_or_else(|| SemanticsError::NoDimensionality(location.to_string()))?;
    lex.dimensionality(sense)
        .ok_or_else(|| SemanticsError::NoDimensionality(sense.to_string()))
}

/// `do'(x,[motion'(x)]) & INGR be-in'(dest, x)`.
pub fn build_active_achievement(
    lex: &Lexicon,
    actor: Referent,
    motion: &SenseId,
    destination: Referent,
) -> Result<Ls, SemanticsError> {
    if !lex.entails(motion, &SenseId::from("p:go")) {
        return Err(SemanticsError::NotMotion(motion.to_string()));
    }
    let dim = dimensionality_of(lex, &destination)?;
    let activity = Ls::Activity {
        actor: actor.clone(),
        inner: Some(ActivityInner { pred: Pred::from_sense(motion), undergoer: None }),
    };
    let result = Ls::Wrapped {
        op: WrapOp::Ingr,
        inner: Box::new(build_state(dim.state_predicate(), destination, actor)),
    };
    Ok(Ls::Linked { left: Box::new(activity), link: Link::And, right: Box::new(result) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// The actor loses the object (give, hand, drop).
    To,
    /// The actor gains the object (take, get, pick up).
    From,
}

fn have_leaf(holder: Referent, object: Referent, positive: bool) -> Ls {
    let state = Ls::State { pred: Pred::new("have"), arg1: Arg::Ref(holder), arg2: Some(object) };
    let inner = if positive {
        state
    } else {
        Ls::Wrapped { op: WrapOp::Not, inner: Box::new(state) }
    };
    Ls::Wrapped { op: WrapOp::Become, inner: Box::new(inner) }
}

/// Possession change built on `have'`.
///
/// `To` rows: the actor loses the object and the other party gains it.
/// `From` rows: the actor gains it and the other party (the source) loses it.
/// An absent other party drops its leaf, except a causative `To` row, where
/// the recipient is left unspecified (`have'(0, obj)`).
pub fn build_transfer(
    actor: Referent,
    object: Referent,
    other: Option<Referent>,
    causative: bool,
    direction: Direction,
) -> Ls {
    let other = match (other, causative, direction) {
        (Some(o), _, _) => Some(o),
        (None, true, Direction::To) => Some(Referent::Unspecified),
        (None, _, _) => None,
    };
    let actor_gains = direction == Direction::From;
    let actor_leaf = have_leaf(actor.clone(), object.clone(), actor_gains);
    let effect = match other {
        Some(o) => Ls::Linked {
            left: Box::new(actor_leaf),
            link: Link::Conj,
            right: Box::new(have_leaf(o, object, !actor_gains)),
        },
        None => actor_leaf,
    };
    if causative {
        Ls::Linked {
            left: Box::new(Ls::Activity { actor, inner: None }),
            link: Link::Cause,
            right: Box::new(effect),
        }
    } else {
        effect
    }
}

/// `have'(holder, object)` state.
pub fn build_have(holder: Referent, object: Referent) -> Ls {
    Ls::State { pred: Pred::new("have"), arg1: Arg::Ref(holder), arg2: Some(object) }
}

/// `do'(actor,[pred'(actor, undergoer)])`.
pub fn build_activity(actor: Referent, pred: &SenseId, undergoer: Option<Referent>) -> Ls {
    Ls::Activity {
        actor,
        inner: Some(ActivityInner { pred: Pred::from_sense(pred), undergoer }),
    }
}

/// What a query slot was bound to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Binding {
    Referent(Referent),
    /// A position with the located thing blanked: `be-in'(the kitchen,0)`.
    Position(Ls),
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Binding::Referent(r) => write!(f, "{r}"),
            Binding::Position(ls) => write!(f, "{ls}"),
        }
    }
}

pub type Bindings = Vec<(Focus, Binding)>;

fn bind(bindings: &mut Bindings, focus: Focus, value: Binding) -> bool {
    if let Some((_, existing)) = bindings.iter().find(|(f, _)| *f == focus) {
        return match (existing, &value) {
            (Binding::Referent(a), Binding::Referent(b)) => a.same_as(b),
            (a, b) => a == b,
        };
    }
    bindings.push((focus, value));
    true
}

/// Query-referent matching. True for the same entity, for an entity inside
/// an item bundle, and for query or unspecified slots.
pub fn referent_matches(query: &Referent, item: &Referent) -> bool {
    match (query, item) {
        (Referent::Query { .. } | Referent::Unspecified, _) => true,
        (Referent::Entity { .. }, Referent::Bundle(members)) => members.iter().any(|m| query.same_as(m)),
        (Referent::Bundle(q), Referent::Bundle(i)) => q.iter().all(|m| i.iter().any(|n| m.same_as(n))),
        _ => query.same_as(item),
    }
}

/// Structural matcher between a query term and a stored term.
pub struct Unifier<'a> {
    lexicon: &'a Lexicon,
}

impl<'a> Unifier<'a> {
    pub fn new(lexicon: &'a Lexicon) -> Self {
        Unifier { lexicon }
    }

    /// Returns the bindings for the query's question slots, or `None` on no match.
    pub fn unify(&self, query: &Ls, item: &Ls) -> Option<Bindings> {
        let mut b = Bindings::new();
        self.unify_into(query, item, &mut b).then_some(b)
    }

    fn pred_matches(&self, query: &Pred, item: &Pred) -> bool {
        if query == item {
            return true;
        }
        if query.0 == "be-LOC" && item.is_positional() {
            return true;
        }
        let (q, i) = (SenseId(query.0.clone()), SenseId(item.0.clone()));
        self.lexicon.sense(&q).is_some() && self.lexicon.entails(&i, &q)
    }

    fn referent_into(&self, query: &Referent, item: &Referent, b: &mut Bindings) -> bool {
        if !referent_matches(query, item) {
            return false;
        }
        match query {
            Referent::Query { focus, .. } => bind(b, *focus, Binding::Referent(item.clone())),
            _ => true,
        }
    }

    fn unify_into(&self, query: &Ls, item: &Ls, b: &mut Bindings) -> bool {
        match (query, item) {
            (
                Ls::State { pred: qp, arg1: qa1, arg2: qa2 },
                Ls::State { pred: ip, arg1: ia1, arg2: ia2 },
            ) => {
                if !self.pred_matches(qp, ip) {
                    return false;
                }
                let second = match (qa2, ia2) {
                    (None, None) => true,
                    (Some(q), Some(i)) => self.referent_into(q, i, b),
                    (Some(q), None) => matches!(q, Referent::Unspecified),
                    (None, Some(_)) => false,
                };
                if !second {
                    return false;
                }
                match (qa1, ia1) {
                    (Arg::Ref(Referent::Query { focus: Focus::Where, .. }), _) if qp.is_positional() => {
                        let position = Ls::State {
                            pred: ip.clone(),
                            arg1: ia1.clone(),
                            arg2: Some(Referent::Unspecified),
                        };
                        bind(b, Focus::Where, Binding::Position(position))
                    }
                    (Arg::Ref(q), Arg::Ref(i)) => self.referent_into(q, i, b),
                    (Arg::Ls(q), Arg::Ls(i)) => self.unify_into(q, i, b),
                    (Arg::Ref(Referent::Unspecified), Arg::Ls(_)) => true,
                    _ => false,
                }
            }
            (Ls::Activity { actor: qa, inner: qi }, Ls::Activity { actor: ia, inner: ii }) => {
                if !self.referent_into(qa, ia, b) {
                    return false;
                }
                match (qi, ii) {
                    (None, _) => true,
                    (Some(_), None) => false,
                    (Some(q), Some(i)) => {
                        if !self.pred_matches(&q.pred, &i.pred) {
                            return false;
                        }
                        match (&q.undergoer, &i.undergoer) {
                            (None, _) => true,
                            (Some(q), Some(i)) => self.referent_into(q, i, b),
                            (Some(q), None) => matches!(q, Referent::Unspecified),
                        }
                    }
                }
            }
            (Ls::Wrapped { op: qo, inner: qi }, Ls::Wrapped { op: io, inner: ii }) => {
                let ops_agree = qo == io
                    || matches!((qo, io), (WrapOp::Become, WrapOp::Ingr) | (WrapOp::Ingr, WrapOp::Become));
                ops_agree && self.unify_into(qi, ii, b)
            }
            (
                Ls::Linked { left: ql, link: qlink, right: qr },
                Ls::Linked { left: il, link: ilink, right: ir },
            ) => {
                if qlink != ilink {
                    return false;
                }
                let mut attempt = b.clone();
                if self.unify_into(ql, il, &mut attempt) && self.unify_into(qr, ir, &mut attempt) {
                    *b = attempt;
                    return true;
                }
                if *qlink == Link::Conj {
                    let mut attempt = b.clone();
                    if self.unify_into(ql, ir, &mut attempt) && self.unify_into(qr, il, &mut attempt) {
                        *b = attempt;
                        return true;
                    }
                }
                false
            }
            _ => false,
        }
    }
}

impl LogicalStructure {
    /// This term and every sub-term reachable without crossing a NOT.
    pub fn positive_subterms(&self) -> Vec<&Ls> {
        let mut out = vec![self];
        match self {
            Ls::Wrapped { op: WrapOp::Not, .. } => {}
            Ls::Wrapped { inner, .. } => out.extend(inner.positive_subterms()),
            Ls::Linked { left, right, .. } => {
                out.extend(left.positive_subterms());
                out.extend(right.positive_subterms());
            }
            Ls::State { arg1: Arg::Ls(inner), .. } => out.extend(inner.positive_subterms()),
            _ => {}
        }
        out
    }

    /// Every `BECOME have'` / `have'` leaf as (holder, object, positive).
    pub fn have_leaves(&self) -> Vec<(Referent, Referent, bool)> {
        let mut out = Vec::new();
        self.collect_have(true, &mut out);
        out
    }

    fn collect_have(&self, positive: bool, out: &mut Vec<(Referent, Referent, bool)>) {
        match self {
            Ls::State { pred, arg1: Arg::Ref(holder), arg2: Some(obj) } if pred.is_have() => {
                out.push((holder.clone(), obj.clone(), positive));
            }
            Ls::Wrapped { op: WrapOp::Not, inner } => inner.collect_have(!positive, out),
            Ls::Wrapped { inner, .. } => inner.collect_have(positive, out),
            Ls::Linked { left, right, .. } => {
                left.collect_have(positive, out);
                right.collect_have(positive, out);
            }
            _ => {}
        }
    }

    /// Positional result state of this term, if any: a bare positional state
    /// or the INGR half of a motion.
    pub fn position(&self) -> Option<(&Pred, &Referent, &Referent)> {
        match self {
            Ls::State { pred, arg1: Arg::Ref(loc), arg2: Some(located) } if pred.is_positional() => {
                Some((pred, loc, located))
            }
            Ls::Wrapped { op: WrapOp::Ingr | WrapOp::Become, inner } => inner.position(),
            Ls::Linked { link: Link::And, right, .. } => right.position(),
            _ => None,
        }
    }

    pub fn is_causative(&self) -> bool {
        matches!(self, Ls::Linked { link: Link::Cause, .. })
    }

    /// Applies `f` to every referent slot, rebuilding the term.
    pub fn map_referents(&self, f: &mut dyn FnMut(&Referent) -> Referent) -> Ls {
        match self {
            Ls::State { pred, arg1, arg2 } => Ls::State {
                pred: pred.clone(),
                arg1: match arg1 {
                    Arg::Ref(r) => Arg::Ref(f(r)),
                    Arg::Ls(inner) => Arg::Ls(Box::new(inner.map_referents(f))),
                },
                arg2: arg2.as_ref().map(&mut *f),
            },
            Ls::Activity { actor, inner } => Ls::Activity {
                actor: f(actor),
                inner: inner.as_ref().map(|i| ActivityInner {
                    pred: i.pred.clone(),
                    undergoer: i.undergoer.as_ref().map(&mut *f),
                }),
            },
            Ls::Wrapped { op, inner } => Ls::Wrapped { op: *op, inner: Box::new(inner.map_referents(f)) },
            Ls::Linked { left, link, right } => Ls::Linked {
                left: Box::new(left.map_referents(f)),
                link: *link,
                right: Box::new(right.map_referents(f)),
            },
        }
    }

    /// Referents in rendering order (actor first).
    pub fn referents(&self) -> Vec<&Referent> {
        let mut out = Vec::new();
        self.collect_referents(&mut out);
        out
    }

    fn collect_referents<'a>(&'a self, out: &mut Vec<&'a Referent>) {
        match self {
            Ls::State { arg1, arg2, .. } => {
                match arg1 {
                    Arg::Ref(r) => out.push(r),
                    Arg::Ls(inner) => inner.collect_referents(out),
                }
                if let Some(r) = arg2 {
                    out.push(r);
                }
            }
            Ls::Activity { actor, inner } => {
                out.push(actor);
                if let Some(u) = inner.as_ref().and_then(|i| i.undergoer.as_ref()) {
                    out.push(u);
                }
            }
            Ls::Wrapped { inner, .. } => inner.collect_referents(out),
            Ls::Linked { left, right, .. } => {
                left.collect_referents(out);
                right.collect_referents(out);
            }
        }
    }

    /// The question slots present in this term.
    pub fn foci(&self) -> Vec<Focus> {
        let mut out: Vec<Focus> = self
            .referents()
            .into_iter()
            .filter_map(|r| match r {
                Referent::Query { focus, .. } => Some(*focus),
                _ => None,
            })
            .collect();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex() -> Lexicon {
        Lexicon::load(
            r#"
sense p:go predicate {activity,motion} "move"
sense p:journey predicate {activity,motion} "long trip"
sense p:eat predicate {activity} "eat"
sense location referent {} "place"
sense r:kitchen referent {enclosure} "room"
sense r:mat referent {surface} "mat"
sense r:beach referent {locale} "beach"
sense r:idea referent {} "thought"
rel p:journey entails p:go
rel r:kitchen is-a location
"#,
        )
        .unwrap()
    }

    fn mary() -> Referent {
        Referent::entity("r:mary")
    }

    fn jeff() -> Referent {
        Referent::entity("r:jeff")
    }

    #[test]
    fn renders_motion_bit_exact() {
        let ls = build_active_achievement(&lex(), mary(), &"p:go".into(), Referent::definite("r:kitchen")).unwrap();
        assert_eq!(ls.to_string(), "do'(mary,[go'(mary)]) & INGR be-in'(the kitchen,mary)");
    }

    #[test]
    fn motion_with_bundle_actor() {
        let both = Referent::bundle(vec![mary(), jeff()]).unwrap();
        let ls = build_active_achievement(&lex(), both, &"p:go".into(), Referent::definite("r:kitchen")).unwrap();
        assert_eq!(
            ls.to_string(),
            "do'(mary and jeff,[go'(mary and jeff)]) & INGR be-in'(the kitchen,mary and jeff)"
        );
    }

    #[test]
    fn motion_picks_preposition_by_dimensionality() {
        let l = lex();
        let on = build_active_achievement(&l, mary(), &"p:go".into(), Referent::definite("r:mat")).unwrap();
        assert!(on.to_string().ends_with("INGR be-on'(the mat,mary)"));
        let at = build_active_achievement(&l, mary(), &"p:go".into(), Referent::definite("r:beach")).unwrap();
        assert!(at.to_string().ends_with("INGR be-at'(the beach,mary)"));
        assert_eq!(
            build_active_achievement(&l, mary(), &"p:go".into(), Referent::definite("r:idea")),
            Err(SemanticsError::NoDimensionality("r:idea".into()))
        );
        assert!(matches!(
            build_active_achievement(&l, mary(), &"p:eat".into(), Referent::definite("r:kitchen")),
            Err(SemanticsError::NotMotion(_))
        ));
    }

    #[test]
    fn state_templates() {
        assert_eq!(
            build_state("be-in", Referent::definite("r:kitchen"), mary()).to_string(),
            "be-in'(the kitchen,mary)"
        );
        assert_eq!(build_have(Referent::entity("r:bill"), Referent::entity("r:milk")).to_string(), "have'(bill,milk)");
        assert_eq!(
            build_state("be-LOC", Referent::query(Focus::Where), mary()).to_string(),
            "be-LOC'(Where,mary)"
        );
    }

    #[test]
    fn transfer_rows() {
        let give = build_transfer(mary(), Referent::entity("r:milk"), Some(Referent::entity("r:bill")), true, Direction::To);
        assert_eq!(
            give.to_string(),
            "[do'(mary,0)] CAUSE [BECOME NOT have'(mary,milk) ∧ BECOME have'(bill,milk)]"
        );
        let take = build_transfer(Referent::entity("r:bill"), Referent::entity("r:milk"), Some(mary()), true, Direction::From);
        assert_eq!(
            take.to_string(),
            "[do'(bill,0)] CAUSE [BECOME have'(bill,milk) ∧ BECOME NOT have'(mary,milk)]"
        );
        let pick = build_transfer(Referent::entity("r:bill"), Referent::entity("r:milk"), None, false, Direction::From);
        assert_eq!(pick.to_string(), "BECOME have'(bill,milk)");
        let drop = build_transfer(Referent::entity("r:bill"), Referent::entity("r:milk"), None, false, Direction::To);
        assert_eq!(drop.to_string(), "BECOME NOT have'(bill,milk)");
    }

    #[test]
    fn where_query_binds_position() {
        let l = lex();
        let u = Unifier::new(&l);
        let q = build_state("be-LOC", Referent::query(Focus::Where), mary());
        let item = build_state("be-in", Referent::definite("r:kitchen"), mary());
        let b = u.unify(&q, &item).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].1.to_string(), "be-in'(the kitchen,0)");
    }

    #[test]
    fn location_mismatch_is_no_match() {
        let l = lex();
        let u = Unifier::new(&l);
        let q = build_state("be-in", Referent::definite("r:playground"), Referent::entity("r:john"));
        let item = build_state("be-in", Referent::definite("r:hallway"), Referent::entity("r:john"));
        assert!(u.unify(&q, &item).is_none());
    }

    #[test]
    fn referent_matching() {
        let both = Referent::bundle(vec![mary(), jeff()]).unwrap();
        assert!(referent_matches(&mary(), &both));
        assert!(!referent_matches(&mary(), &jeff()));
        assert!(referent_matches(&Referent::query(Focus::Who), &mary()));
        assert!(Referent::bundle(vec![mary()]).is_none());
    }

    #[test]
    fn who_query_binds_giver_consistently() {
        let l = lex();
        let u = Unifier::new(&l);
        let cake = Referent::definite("r:cake");
        let fred = Referent::entity("r:fred");
        let q = build_transfer(Referent::query(Focus::Who), cake.clone(), Some(fred.clone()), true, Direction::To);
        let item = build_transfer(mary(), cake.clone(), Some(fred.clone()), true, Direction::To);
        let b = u.unify(&q, &item).unwrap();
        assert_eq!(b, vec![(Focus::Who, Binding::Referent(mary()))]);
        let other = build_transfer(fred, cake, Some(Referent::entity("r:bill")), true, Direction::To);
        assert!(u.unify(&q, &other).is_none());
    }

    #[test]
    fn entailed_motion_matches_go() {
        let l = lex();
        let u = Unifier::new(&l);
        let q = build_activity(mary(), &"p:go".into(), None);
        let item = build_activity(mary(), &"p:journey".into(), None);
        assert!(u.unify(&q, &item).is_some());
        assert!(u.unify(&item, &q).is_none());
    }

    #[test]
    fn no_longer_readings() {
        let ops = OperatorSet { polarity: Polarity::Negative, no_longer: true, ..Default::default() };
        let r = ops.readings();
        assert_eq!(r.len(), 2);
        assert_eq!((r[0].tense, r[0].polarity), (Tense::Past, Polarity::Positive));
        assert_eq!((r[1].tense, r[1].polarity), (Tense::Present, Polarity::Negative));
    }
}

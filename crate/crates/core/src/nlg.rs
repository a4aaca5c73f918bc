//! Surface realization: answers, positions, referring expressions and verb
//! groups built from operators.

use std::fmt;

use thiserror::Error;

use crate::context::{AnswerContent, AnswerKind};
use crate::lexicon::{Lexicon, SenseId};
use crate::semantics::{Arg, Binding, Force, Ls, Number, OperatorSet, Polarity, Referent, Tense, Voice};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NlgError {
    #[error("`{0}` has no dimensionality, so no preposition fits")]
    NoDimensionality(String),
    #[error("no complete verb forms for `{0}`")]
    MissingForms(String),
    #[error("the French demo only covers the simple future")]
    UnsupportedTense,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Lowercase bare heads, the form bAbI expects.
    #[default]
    Keyword,
    Natural,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PolarStyle {
    /// "Yes."
    Bare,
    /// "Yes, he is."
    #[default]
    Short,
    /// "Yes, he is in the kitchen."
    Full,
}

#[derive(Debug, Clone, Copy)]
pub struct RealizationRequest<'c> {
    pub content: &'c AnswerContent,
    pub mode: Mode,
    pub style: PolarStyle,
}

/// Preposition chosen by the location's dimensionality, then "the" and the head.
pub fn realize_position(lex: &Lexicon, location: &Referent, mode: Mode) -> Result<String, NlgError> {
    let Some(sense) = location.sense() else {
        return Err(NlgError::NoDimensionality(location.to_string()));
    };
    let head = lex.surface_of(sense);
    if mode == Mode::Keyword {
        return Ok(head);
    }
    let dim = lex.dimensionality(sense).ok_or_else(|| NlgError::NoDimensionality(sense.to_string()))?;
    Ok(format!("{} the {}", dim.preposition(), head))
}

/// A referring expression: names bare, bundles conjoined, others with a determiner.
pub fn realize_referent(lex: &Lexicon, r: &Referent, mode: Mode) -> String {
    match r {
        Referent::Bundle(members) => {
            let parts: Vec<String> = members.iter().map(|m| realize_referent(lex, m, mode)).collect();
            match mode {
                Mode::Keyword => parts.join(","),
                Mode::Natural => join_natural(&parts),
            }
        }
        Referent::Entity { sense, attrs } => {
            let plural = attrs.contains("plural");
            let head = if plural {
                lex.plural_of(sense).unwrap_or_else(|| lex.surface_of(sense))
            } else {
                lex.surface_of(sense)
            };
            if mode == Mode::Keyword {
                return head;
            }
            if lex.sense(sense).is_some_and(|s| s.attrs.contains("name")) {
                return capitalize(&head);
            }
            let det = if attrs.contains("proximal") {
                if plural { "these" } else { "this" }
            } else if attrs.contains("distal") {
                if plural { "those" } else { "that" }
            } else if attrs.contains("indefinite") && !plural {
                if head.starts_with(['a', 'e', 'i', 'o', 'u']) { "an" } else { "a" }
            } else {
                "the"
            };
            format!("{det} {head}")
        }
        Referent::Query { focus, .. } => focus.as_str().to_lowercase(),
        Referent::Unspecified => String::new(),
    }
}

/// A verb group, with the auxiliary that moves in front of the subject in
/// questions kept apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerbGroup {
    pub fronted: Option<String>,
    pub rest: String,
}

impl VerbGroup {
    /// The finite word: the fronted auxiliary, or the first word otherwise.
    pub fn finite(&self) -> &str {
        match &self.fronted {
            Some(f) => f,
            None => self.rest.split(' ').next().unwrap_or(""),
        }
    }
}

impl fmt::Display for VerbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.fronted {
            Some(fr) if self.rest.is_empty() => f.write_str(fr),
            Some(fr) => write!(f, "{fr} {}", self.rest),
            None => f.write_str(&self.rest),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Verb {
    Will,
    Do,
    /// `have` of the perfect.
    Perfect,
    Progressive,
    Passive,
    Copula,
    Main,
}

impl Verb {
    /// Form the following verb must take.
    fn governs(self) -> Form {
        match self {
            Verb::Will | Verb::Do => Form::Base,
            Verb::Perfect | Verb::Passive => Form::PastParticiple,
            Verb::Progressive => Form::PresentParticiple,
            Verb::Copula | Verb::Main => Form::Finite,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Form {
    Finite,
    Base,
    PastParticiple,
    PresentParticiple,
}

/// Orders modal, perfect, progressive and passive auxiliaries ahead of the
/// main verb, inflects each for what precedes it, contracts a negation onto
/// the first auxiliary and fronts it in questions. `p:be` as main verb never
/// takes do-support.
pub fn realize_verb_group(lex: &Lexicon, ops: &OperatorSet, pred: &SenseId) -> Result<VerbGroup, NlgError> {
    let copula = pred.as_str() == "p:be";
    let forms = if copula {
        None
    } else {
        Some(lex.verb_forms(pred).ok_or_else(|| NlgError::MissingForms(pred.to_string()))?)
    };

    let mut chain: Vec<Verb> = Vec::new();
    if ops.tense == Tense::Future {
        chain.push(Verb::Will);
    }
    if ops.perfect {
        chain.push(Verb::Perfect);
    }
    if ops.progressive {
        chain.push(Verb::Progressive);
    }
    if ops.voice == Voice::Passive {
        chain.push(Verb::Passive);
    }
    chain.push(if copula { Verb::Copula } else { Verb::Main });
    let needs_support = ops.polarity == Polarity::Negative || ops.force == Force::Question;
    if chain == [Verb::Main] && needs_support {
        chain.insert(0, Verb::Do);
    }

    let mut words: Vec<String> = Vec::new();
    let mut form = Form::Finite;
    for v in &chain {
        let word = match (v, form) {
            (Verb::Will, _) => "will".to_string(),
            (Verb::Do, _) => finite_do(ops).to_string(),
            (Verb::Perfect, Form::Finite) => finite_have(ops).to_string(),
            (Verb::Perfect, _) => "have".to_string(),
            (Verb::Progressive | Verb::Passive | Verb::Copula, f) => match f {
                Form::Finite => finite_be(ops).to_string(),
                Form::Base => "be".to_string(),
                Form::PastParticiple => "been".to_string(),
                Form::PresentParticiple => "being".to_string(),
            },
            (Verb::Main, f) => {
                let vf = forms.as_ref().expect("main verb has forms");
                match f {
                    Form::Finite if ops.tense == Tense::Past => vf.past.clone(),
                    Form::Finite if third_singular(ops) => vf.third_singular.clone(),
                    Form::Finite | Form::Base => vf.base.clone(),
                    Form::PastParticiple => vf.past_participle.clone(),
                    Form::PresentParticiple => vf.present_participle.clone(),
                }
            }
        };
        words.push(word);
        form = v.governs();
    }

    if ops.polarity == Polarity::Negative {
        words[0] = negate(&words[0]);
    }
    if ops.force == Force::Question {
        let first = words.remove(0);
        return Ok(VerbGroup { fronted: Some(first), rest: words.join(" ") });
    }
    Ok(VerbGroup { fronted: None, rest: words.join(" ") })
}

fn third_singular(ops: &OperatorSet) -> bool {
    ops.person == 3 && ops.number == Number::Singular
}

fn finite_do(ops: &OperatorSet) -> &'static str {
    match ops.tense {
        Tense::Past => "did",
        _ if third_singular(ops) => "does",
        _ => "do",
    }
}

fn finite_have(ops: &OperatorSet) -> &'static str {
    match ops.tense {
        Tense::Past => "had",
        _ if third_singular(ops) => "has",
        _ => "have",
    }
}

fn finite_be(ops: &OperatorSet) -> &'static str {
    let singular = ops.number == Number::Singular;
    match ops.tense {
        Tense::Past if singular && ops.person != 2 => "was",
        Tense::Past => "were",
        _ if singular && ops.person == 1 => "am",
        _ if third_singular(ops) => "is",
        _ => "are",
    }
}

fn negate(word: &str) -> String {
    match word {
        "will" => "won't".into(),
        "am" => "am not".into(),
        w => format!("{w}n't"),
    }
}

/// French simple future: infinitive plus the person/number ending.
pub fn realize_verb_group_fr(ops: &OperatorSet, infinitive: &str) -> Result<String, NlgError> {
    if ops.tense != Tense::Future {
        return Err(NlgError::UnsupportedTense);
    }
    let stem = infinitive.strip_suffix("re").map(|s| format!("{s}r")).unwrap_or_else(|| infinitive.to_string());
    let ending = match (ops.person, ops.number) {
        (1, Number::Singular) => "ai",
        (2, Number::Singular) => "as",
        (_, Number::Singular) => "a",
        (1, Number::Plural) => "ons",
        (2, Number::Plural) => "ez",
        (_, Number::Plural) => "ont",
    };
    Ok(format!("{stem}{ending}"))
}

const NUMERALS: [&str; 11] = ["zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten"];

pub fn numeral(n: usize) -> String {
    NUMERALS.get(n).map(|s| s.to_string()).unwrap_or_else(|| n.to_string())
}

pub fn realize_answer(lex: &Lexicon, req: &RealizationRequest<'_>) -> Result<String, NlgError> {
    let c = req.content;
    match req.mode {
        Mode::Keyword => keyword_answer(lex, c),
        Mode::Natural => natural_answer(lex, c, req.style),
    }
}

fn keyword_answer(lex: &Lexicon, c: &AnswerContent) -> Result<String, NlgError> {
    Ok(match c.kind {
        AnswerKind::Polar => if c.polarity == Polarity::Positive { "yes" } else { "no" }.to_string(),
        AnswerKind::Count => match c.count.unwrap_or(0) {
            0 => "none".to_string(),
            n => numeral(n),
        },
        AnswerKind::Content | AnswerKind::List => {
            if c.bindings.is_empty() {
                return Ok("nothing".to_string());
            }
            let parts = c.bindings.iter().map(|b| binding_text(lex, b, Mode::Keyword)).collect::<Result<Vec<_>, _>>()?;
            parts.join(",")
        }
    })
}

fn natural_answer(lex: &Lexicon, c: &AnswerContent, style: PolarStyle) -> Result<String, NlgError> {
    let body = match c.kind {
        AnswerKind::Polar => return polar_answer(lex, c, style),
        AnswerKind::Count => match c.count.unwrap_or(0) {
            0 => "none".to_string(),
            n => numeral(n),
        },
        AnswerKind::Content | AnswerKind::List => {
            if c.bindings.is_empty() {
                "nothing".to_string()
            } else {
                let parts =
                    c.bindings.iter().map(|b| binding_text(lex, b, Mode::Natural)).collect::<Result<Vec<_>, _>>()?;
                join_natural(&parts)
            }
        }
    };
    Ok(body)
}

fn polar_answer(lex: &Lexicon, c: &AnswerContent, style: PolarStyle) -> Result<String, NlgError> {
    let yes = c.polarity == Polarity::Positive;
    let word = if yes { "Yes" } else { "No" };
    if style == PolarStyle::Bare {
        return Ok(format!("{word}."));
    }
    let mut ops = OperatorSet { force: Force::Statement, polarity: c.polarity, ..c.operators.clone() };
    // a stored state in another tense is echoed in that tense
    if let Some(t) = c.item_tense {
        ops.tense = t;
    }
    let pred = c.predicate.clone().unwrap_or_else(|| SenseId::from("p:be"));
    if !yes {
        if let Some(other) = &c.contrast {
            let mut pos = ops.clone();
            pos.polarity = Polarity::Positive;
            pos.number = Number::Singular;
            pos.person = 3;
            let vg = realize_verb_group(lex, &pos, &pred)?;
            return Ok(format!("No, but {} {}.", realize_referent(lex, other, Mode::Natural), vg.finite()));
        }
    }
    let pronoun = c.subject.as_ref().map(|s| pronoun_for(lex, s)).unwrap_or("it");
    if pronoun == "they" {
        ops.number = Number::Plural;
    }
    let vg = realize_verb_group(lex, &ops, &pred)?;
    let mut out = format!("{word}, {pronoun} {}", vg.finite());
    if style == PolarStyle::Full {
        if let Some(place) = &c.place {
            out.push(' ');
            out.push_str(&realize_position(lex, place, Mode::Natural)?);
        }
    }
    out.push('.');
    Ok(out)
}

fn pronoun_for(lex: &Lexicon, r: &Referent) -> &'static str {
    if r.is_plural() {
        return "they";
    }
    let attrs = r.sense().and_then(|s| lex.sense(s)).map(|s| &s.attrs);
    match attrs {
        Some(a) if a.contains("male") => "he",
        Some(a) if a.contains("female") => "she",
        _ => "it",
    }
}

fn binding_text(lex: &Lexicon, b: &Binding, mode: Mode) -> Result<String, NlgError> {
    match b {
        Binding::Referent(r) => {
            let r = match (r, mode) {
                // answers name things definitely: "the football"
                (Referent::Entity { sense, attrs }, Mode::Natural) if attrs.contains("indefinite") => {
                    let mut a = attrs.clone();
                    a.remove("indefinite");
                    Referent::Entity { sense: sense.clone(), attrs: a }
                }
                (r, _) => r.clone(),
            };
            Ok(realize_referent(lex, &r, mode))
        }
        Binding::Position(Ls::State { arg1: Arg::Ref(loc), .. }) => realize_position(lex, loc, mode),
        Binding::Position(other) => Ok(other.to_string()),
    }
}

/// "a", "a and b", "a, b and c".
pub fn join_natural(parts: &[String]) -> String {
    match parts {
        [] => String::new(),
        [one] => one.clone(),
        [init @ .., last] => format!("{} and {last}", init.join(", ")),
    }
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

/// Upper-cases the first letter.
pub fn sentence_case(s: &str) -> String {
    capitalize(s)
}

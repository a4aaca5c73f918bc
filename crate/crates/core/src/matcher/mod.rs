//! From sentence text to propositions: tokenize, run literal and
//! consolidation phrases to a fixpoint, then cast the remaining elements
//! through a predication phrase. There is no parse tree; elements are flat
//! labelled sets carrying their constituents.

pub mod pattern;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::lexicon::{Attrs, Category, Lexicon, SenseId, SenseLink};
use crate::semantics::{
    build_active_achievement, build_activity, build_have, build_position, build_state, build_transfer,
    Direction, Focus, Force, Ls, Number, OperatorSet, Polarity, Referent, SemanticsError, Tense, Voice,
};
use pattern::{Atom, PatternKind, PhrasePattern, Selector, Template};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatchError {
    #[error("unknown word `{word}` at position {position}")]
    UnknownWord { word: String, position: usize },
    #[error("no predication covers `{text}` (left with: {leftover})")]
    Incomplete { text: String, leftover: String },
    #[error("`{0}` is meaningless: no word sense fits its roles")]
    Meaningless(String),
    #[error("inconsistent auxiliary chain: {0}")]
    AuxChain(String),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

/// Lowercased words plus the illocutionary hint from terminal punctuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tokens {
    pub words: Vec<String>,
    pub hint: Force,
}

pub fn tokenize(text: &str) -> Tokens {
    let mut hint = Force::Statement;
    let mut words = Vec::new();
    for raw in text.split_whitespace() {
        let w = raw.replace('\u{2019}', "'").to_lowercase();
        if w.ends_with('?') {
            hint = Force::Question;
        }
        let w = w.trim_matches(|c: char| matches!(c, '.' | ',' | '?' | '!' | ';' | ':' | '"'));
        if !w.is_empty() {
            words.push(w.to_string());
        }
    }
    Tokens { words, hint }
}

/// A labelled set produced by matching. Retained elements keep their own
/// surface and senses; consumed ones become constituents.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    pub surface: String,
    pub senses: Vec<SenseLink>,
    pub labels: BTreeSet<String>,
    pub attrs: Attrs,
    pub constituents: Vec<Element>,
    pub span: (usize, usize),
    pub embedded: Vec<Proposition>,
}

impl Element {
    fn word(surface: String, senses: Vec<SenseLink>, at: usize, width: usize) -> Self {
        Element {
            surface,
            senses,
            labels: BTreeSet::new(),
            attrs: Attrs::new(),
            constituents: Vec::new(),
            span: (at, at + width),
            embedded: Vec::new(),
        }
    }

    /// Element operators plus any candidate sense's attributes.
    pub fn has_attr(&self, lex: &Lexicon, attr: &str) -> bool {
        self.attrs.contains(attr) || self.senses.iter().any(|l| link_has(lex, l, attr))
    }

    /// First constituent (searched depth-first) carrying `label`.
    pub fn find_label(&self, label: &str) -> Option<&Element> {
        for c in &self.constituents {
            if c.labels.contains(label) {
                return Some(c);
            }
            if let Some(found) = c.find_label(label) {
                return Some(found);
            }
        }
        None
    }

    pub fn constituents_labelled<'a>(&'a self, label: &'a str) -> impl Iterator<Item = &'a Element> + 'a {
        self.constituents.iter().filter(move |c| c.labels.contains(label))
    }

    fn referent_links<'a>(&'a self, lex: &'a Lexicon) -> impl Iterator<Item = &'a SenseLink> + 'a {
        self.senses
            .iter()
            .filter(move |l| lex.sense(&l.sense).is_some_and(|s| s.category == Category::Referent))
    }
}

fn link_has(lex: &Lexicon, link: &SenseLink, attr: &str) -> bool {
    link.attrs.contains(attr) || lex.sense(&link.sense).is_some_and(|s| s.attrs.contains(attr))
}

/// One matched reading of a sentence.
#[derive(Debug, Clone, PartialEq)]
pub struct Proposition {
    pub ls: Ls,
    pub operators: OperatorSet,
    /// Propositions from embedded clauses, to be stored ahead of this one.
    pub embedded: Vec<Proposition>,
    pub source: String,
    pub template: Template,
    pub predicate: Option<SenseId>,
    /// WSD notes, e.g. a qualia substitution that rescued a role.
    pub notes: Vec<String>,
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.operators, self.ls)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MatchOptions {
    /// Read "took X there" as carrying rather than acquisition.
    pub strict_take: bool,
}

impl MatchOptions {
    fn flag(&self, name: &str) -> bool {
        match name {
            "strict-take" => self.strict_take,
            _ => false,
        }
    }
}

/// Elements left after the consolidation fixpoint.
#[derive(Debug, Clone)]
pub struct Consolidated {
    pub elements: Vec<Element>,
    pub hint: Force,
    /// Pattern/position pairs examined, for the efficiency report.
    pub tried: usize,
}

pub struct Matcher<'a> {
    lex: &'a Lexicon,
    options: MatchOptions,
    literals: HashMap<String, Vec<usize>>,
    by_trigger: HashMap<String, Vec<usize>>,
}

impl<'a> Matcher<'a> {
    pub fn new(lex: &'a Lexicon) -> Self {
        Matcher::with_options(lex, MatchOptions::default())
    }

    pub fn with_options(lex: &'a Lexicon, options: MatchOptions) -> Self {
        let mut literals: HashMap<String, Vec<usize>> = HashMap::new();
        let mut by_trigger: HashMap<String, Vec<usize>> = HashMap::new();
        for (i, p) in lex.phrases().iter().enumerate() {
            if p.kind == PatternKind::Literal {
                let first = p.selectors[0].word().unwrap_or_default().to_string();
                literals.entry(first).or_default().push(i);
            } else {
                by_trigger.entry(p.trigger.clone()).or_default().push(i);
            }
        }
        Matcher { lex, options, literals, by_trigger }
    }

    pub fn lexicon(&self) -> &'a Lexicon {
        self.lex
    }

    fn enabled(&self, p: &PhrasePattern) -> bool {
        match &p.when {
            None => true,
            Some((on, flag)) => self.options.flag(flag) == *on,
        }
    }

    /// Words of `text` that no form or literal phrase covers.
    pub fn missing_words(&self, text: &str) -> Vec<String> {
        let tokens = tokenize(text);
        let elements = self.apply_literals(&tokens.words);
        let mut out: Vec<String> = Vec::new();
        for e in elements {
            if e.senses.is_empty() && !out.contains(&e.surface) {
                out.push(e.surface);
            }
        }
        out
    }

    fn apply_literals(&self, words: &[String]) -> Vec<Element> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < words.len() {
            let mut best: Option<(usize, String)> = None;
            for &pi in self.literals.get(&words[i]).into_iter().flatten() {
                let p = &self.lex.phrases()[pi];
                let n = p.selectors.len();
                let fits = i + n <= words.len()
                    && p.selectors.iter().zip(&words[i..i + n]).all(|(s, w)| s.word() == Some(w.as_str()));
                if fits && best.as_ref().is_none_or(|(len, _)| n > *len) {
                    best = Some((n, words[i..i + n].join("_")));
                }
            }
            match best {
                Some((n, surface)) => {
                    let senses = self.lex.senses_of(&surface);
                    out.push(Element::word(surface, senses, i, n));
                    i += n;
                }
                None => {
                    let senses = self.lex.senses_of(&words[i]);
                    out.push(Element::word(words[i].clone(), senses, i, 1));
                    i += 1;
                }
            }
        }
        out
    }

    /// Trigger keys present anywhere in the sequence.
    fn present_keys(&self, elements: &[Element]) -> HashSet<String> {
        let mut keys = HashSet::new();
        for e in elements {
            keys.insert(format!("w:{}", e.surface));
            keys.extend(e.labels.iter().map(|l| format!("l:{l}")));
            keys.extend(e.attrs.iter().map(|a| format!("a:{a}")));
            for link in &e.senses {
                keys.insert(format!("s:{}", link.sense));
                keys.extend(link.attrs.iter().map(|a| format!("a:{a}")));
                if let Some(s) = self.lex.sense(&link.sense) {
                    keys.insert(format!("c:{}", s.category.as_str()));
                    keys.extend(s.attrs.iter().map(|a| format!("a:{a}")));
                }
            }
        }
        keys
    }

    fn candidates(&self, elements: &[Element], pick: impl Fn(&PhrasePattern) -> bool) -> Vec<usize> {
        let keys = self.present_keys(elements);
        let mut out: Vec<usize> = keys
            .iter()
            .filter_map(|k| self.by_trigger.get(k))
            .flatten()
            .copied()
            .filter(|&i| {
                let p = &self.lex.phrases()[i];
                self.enabled(p) && pick(p)
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Literal phrases once, then consolidation (and embedded predication)
    /// phrases until none fires.
    pub fn match_phrases(&self, tokens: &Tokens) -> Result<Consolidated, MatchError> {
        let mut elements = self.apply_literals(&tokens.words);
        if let Some(e) = elements.iter().find(|e| e.senses.is_empty()) {
            return Err(MatchError::UnknownWord { word: e.surface.clone(), position: e.span.0 });
        }
        let mut tried = 0;
        let bound = (tokens.words.len() + 1) * (self.lex.phrases().len() + 1);
        for _ in 0..bound {
            let cands = self.candidates(&elements, |p| {
                p.kind == PatternKind::Consolidation || (p.kind == PatternKind::Predication && p.retain.is_some())
            });
            let mut fired = None;
            // pattern-major: an earlier pattern gets every position before a later one
            'scan: for &pi in &cands {
                let p = &self.lex.phrases()[pi];
                for pos in 0..elements.len() {
                    tried += 1;
                    if let Some(next) = self.try_apply(p, &elements, pos, tokens.hint) {
                        fired = Some(next);
                        break 'scan;
                    }
                }
            }
            match fired {
                Some(next) => elements = next,
                None => break,
            }
        }
        Ok(Consolidated { elements, hint: tokens.hint, tried })
    }

    fn selector_matches(&self, sel: &Selector, e: &Element, particles: &[String]) -> bool {
        let element_level = |atom: &Atom| -> Option<bool> {
            Some(match atom {
                Atom::Word(words) => words.contains(&e.surface),
                Atom::Particle => particles.contains(&e.surface),
                Atom::Label(l) => e.labels.contains(l),
                _ => return None,
            })
        };
        let link_level = |atom: &Atom, link: &SenseLink| -> bool {
            match atom {
                Atom::Category(c) => self.lex.sense(&link.sense).is_some_and(|s| s.category == *c),
                Atom::Attr(a) => e.attrs.contains(a) || link_has(self.lex, link, a),
                Atom::Sense(s) => self.lex.entails(&link.sense, s),
                _ => false,
            }
        };
        e.senses.iter().any(|link| {
            sel.atoms.iter().all(|spec| {
                let hit = element_level(&spec.atom).unwrap_or_else(|| link_level(&spec.atom, link));
                hit != spec.negated
            })
        })
    }

    fn matches_at(&self, p: &PhrasePattern, elements: &[Element], pos: usize) -> bool {
        let n = p.selectors.len();
        if pos + n > elements.len() {
            return false;
        }
        let particles: Vec<String> = elements[pos]
            .senses
            .iter()
            .flat_map(|l| l.attrs.iter().chain(self.lex.sense(&l.sense).map(|s| &s.attrs).into_iter().flatten()))
            .filter_map(|a| a.strip_prefix("particle:").map(str::to_string))
            .collect();
        p.selectors
            .iter()
            .zip(&elements[pos..pos + n])
            .all(|(s, e)| self.selector_matches(s, e, &particles))
    }

    fn try_apply(&self, p: &PhrasePattern, elements: &[Element], pos: usize, hint: Force) -> Option<Vec<Element>> {
        if !self.matches_at(p, elements, pos) {
            return None;
        }
        let n = p.selectors.len();
        let r = p.retain?;
        let window = &elements[pos..pos + n];
        let mut merged = window[r].clone();
        if let Some(l) = p.label_of(r) {
            merged.labels.insert(l.to_string());
        }
        if p.kind == PatternKind::Predication {
            let labelled = labelled_window(p, window);
            let source = window.iter().map(|e| e.surface.replace('_', " ")).collect::<Vec<_>>().join(" ");
            let mut readings = self.cast(p, &labelled, hint, &source).ok()?;
            merged.embedded.push(readings.swap_remove(0));
        }
        for (k, (sel, e)) in p.selectors.iter().zip(window).enumerate() {
            if k == r || sel.pass_through {
                continue;
            }
            let mut child = e.clone();
            if let Some(l) = p.label_of(k) {
                child.labels.insert(l.to_string());
            }
            merged.span = (merged.span.0.min(child.span.0), merged.span.1.max(child.span.1));
            merged.embedded.append(&mut child.embedded);
            merged.constituents.push(child);
        }
        for op in &p.ops {
            match op.strip_prefix('-') {
                Some(removed) => {
                    merged.attrs.remove(removed);
                }
                None => {
                    merged.attrs.insert(op.clone());
                }
            }
        }
        let mut out = Vec::with_capacity(elements.len());
        out.extend_from_slice(&elements[..pos]);
        for (k, (sel, e)) in p.selectors.iter().zip(window).enumerate() {
            if k == r {
                out.push(merged.clone());
            } else if sel.pass_through {
                out.push(e.clone());
            }
        }
        out.extend_from_slice(&elements[pos + n..]);
        Some(out)
    }

    /// Runs every top-level predication over the whole element sequence.
    /// The completeness constraint holds by construction: a predication only
    /// applies when its selectors cover every remaining element.
    pub fn predicate_cast(&self, consolidated: &Consolidated, source: &str) -> Result<Vec<Proposition>, MatchError> {
        let elements = &consolidated.elements;
        let cands = self.candidates(elements, |p| p.kind == PatternKind::Predication && p.retain.is_none());
        let mut readings: Vec<Proposition> = Vec::new();
        let mut structural = false;
        for pi in cands {
            let p = &self.lex.phrases()[pi];
            if p.selectors.len() != elements.len() || !self.matches_at(p, elements, 0) {
                continue;
            }
            structural = true;
            let labelled = labelled_window(p, elements);
            match self.cast(p, &labelled, consolidated.hint, source) {
                Ok(found) => {
                    for mut prop in found {
                        if p.ops.iter().any(|o| o == "fronted") {
                            prop.operators.force = Force::Question;
                        }
                        for e in elements {
                            prop.embedded.extend(e.embedded.iter().cloned());
                        }
                        if !readings.iter().any(|r| r.ls == prop.ls && r.operators == prop.operators) {
                            readings.push(prop);
                        }
                    }
                }
                Err(MatchError::Meaningless(_)) => {}
                Err(other) => return Err(other),
            }
        }
        if !readings.is_empty() {
            return Ok(readings);
        }
        if structural {
            return Err(MatchError::Meaningless(source.to_string()));
        }
        let leftover = elements.iter().map(|e| e.surface.clone()).collect::<Vec<_>>().join(" | ");
        Err(MatchError::Incomplete { text: source.to_string(), leftover })
    }

    /// Full pipeline for one sentence.
    pub fn parse_utterance(&self, text: &str) -> Result<Vec<Proposition>, MatchError> {
        let tokens = tokenize(text);
        let consolidated = self.match_phrases(&tokens)?;
        self.predicate_cast(&consolidated, text.trim())
    }

    /// Operators carried by a bare verb group such as "won't have been being spoken".
    pub fn operators_of_verb_group(&self, text: &str) -> Result<OperatorSet, MatchError> {
        let tokens = tokenize(text);
        let c = self.match_phrases(&tokens)?;
        match c.elements.as_slice() {
            [main] => {
                let link = main
                    .senses
                    .iter()
                    .find(|l| !link_has(self.lex, l, "aux") || main.constituents.is_empty())
                    .unwrap_or(&main.senses[0]);
                extract_operators(self.lex, main, link, tokens.hint)
            }
            _ => Err(MatchError::Incomplete {
                text: text.to_string(),
                leftover: c.elements.iter().map(|e| e.surface.clone()).collect::<Vec<_>>().join(" | "),
            }),
        }
    }

    fn cast(
        &self,
        p: &PhrasePattern,
        roles: &[(Option<&str>, &Element)],
        hint: Force,
        source: &str,
    ) -> Result<Vec<Proposition>, MatchError> {
        let template = p.template.ok_or_else(|| MatchError::Meaningless(source.to_string()))?;
        let role = |name: &str| roles.iter().find(|(l, _)| *l == Some(name)).map(|(_, e)| *e);
        let pred_el = role("predicate").ok_or_else(|| MatchError::Meaningless(source.to_string()))?;

        let mut out = Vec::new();
        for link in &pred_el.senses {
            let Some(sense) = self.lex.sense(&link.sense) else { continue };
            let copular = matches!(template, Template::Position | Template::Where);
            if copular {
                if !self.lex.entails(&link.sense, &SenseId::from("p:be")) {
                    continue;
                }
            } else if sense.category != Category::Predicate {
                continue;
            }
            if let Some(attr) = template.required_attr() {
                if !sense.attrs.contains(attr) {
                    continue;
                }
            }
            if let Some(frame) = &p.frame {
                if !self.lex.entails(&link.sense, frame) {
                    continue;
                }
            }
            let needs_particle = link.attrs.iter().chain(&sense.attrs).any(|a| a.starts_with("particle:"));
            if needs_particle != pred_el.attrs.contains("particled") {
                continue;
            }
            if self.options.strict_take
                && template == Template::Transfer
                && pred_el.attrs.contains("there")
                && sense.attrs.contains("carry-ambiguous")
            {
                continue;
            }
            let mut notes = Vec::new();
            if !self.frame_fits(&link.sense, &role, &mut notes) {
                continue;
            }
            let ls = match self.build(template, &link.sense, &sense.attrs, &role) {
                Some(ls) => ls?,
                None => continue,
            };
            let mut operators = extract_operators(self.lex, pred_el, link, hint)?;
            if !ls.foci().is_empty() {
                operators.force = Force::Question;
            }
            let candidate = Proposition {
                ls,
                operators,
                embedded: Vec::new(),
                source: source.to_string(),
                template,
                predicate: Some(link.sense.clone()),
                notes,
            };
            if !out.iter().any(|o: &Proposition| o.ls == candidate.ls && o.operators == candidate.operators) {
                out.push(candidate);
            }
        }
        if out.is_empty() {
            return Err(MatchError::Meaningless(source.to_string()));
        }
        Ok(out)
    }

    /// Selectional fit of every role the predicate's frame names, retrying
    /// through qualia associations when a direct fit fails.
    fn frame_fits<'e>(
        &self,
        pred: &SenseId,
        role: &dyn Fn(&str) -> Option<&'e Element>,
        notes: &mut Vec<String>,
    ) -> bool {
        let Some(frame) = self.lex.frame(pred) else { return true };
        for spec in &frame.roles {
            let Some(filler) = role(spec.role.as_str()) else {
                if spec.required {
                    return false;
                }
                continue;
            };
            match self.filler_fits(filler, &spec.category) {
                Fit::Direct => {}
                Fit::Qualia(via) => notes.push(format!("{} fits {} via {}", spec.role.as_str(), spec.category, via)),
                Fit::None => return false,
            }
        }
        true
    }

    fn filler_fits(&self, filler: &Element, category: &SenseId) -> Fit {
        if filler.has_attr(self.lex, "query") || filler.has_attr(self.lex, "pronoun") {
            return Fit::Direct;
        }
        let members: Vec<&Element> = if filler.attrs.contains("bundle") {
            std::iter::once(filler).chain(filler.constituents_labelled("member")).collect()
        } else {
            vec![filler]
        };
        let mut via = None;
        for m in members {
            let direct = m
                .referent_links(self.lex)
                .any(|l| self.lex.holds_category(&l.sense, category).unwrap_or(false));
            if direct {
                continue;
            }
            let q = m.referent_links(self.lex).find_map(|l| {
                self.lex
                    .qualia_expand(&l.sense)
                    .into_iter()
                    .find(|(part, _)| self.lex.holds_category(part, category).unwrap_or(false))
                    .map(|(part, kind)| format!("{} {} {}", l.sense, kind.as_str(), part))
            });
            match q {
                Some(v) => via = Some(v),
                None => return Fit::None,
            }
        }
        match via {
            Some(v) => Fit::Qualia(v),
            None => Fit::Direct,
        }
    }

    fn build<'e>(
        &self,
        template: Template,
        sense: &SenseId,
        attrs: &Attrs,
        role: &dyn Fn(&str) -> Option<&'e Element>,
    ) -> Option<Result<Ls, MatchError>> {
        let referent = |name: &str| role(name).map(|e| self.referent(e));
        let ls = match template {
            Template::Motion => {
                build_active_achievement(self.lex, referent("actor")?, sense, referent("destination")?)
                    .map_err(MatchError::from)
            }
            Template::Position => {
                build_position(self.lex, referent("location")?, referent("located")?).map_err(MatchError::from)
            }
            Template::Where => Ok(build_state("be-LOC", Referent::query(Focus::Where), referent("located")?)),
            Template::Transfer => {
                let direction = if attrs.contains("to") {
                    Direction::To
                } else if attrs.contains("from") {
                    Direction::From
                } else {
                    return None;
                };
                let (other, wrong) = match direction {
                    Direction::To => ("recipient", "source"),
                    Direction::From => ("source", "recipient"),
                };
                if role(wrong).is_some() {
                    return None;
                }
                Ok(build_transfer(
                    referent("actor")?,
                    referent("undergoer")?,
                    referent(other),
                    attrs.contains("causative"),
                    direction,
                ))
            }
            Template::Hold => Ok(build_have(referent("holder")?, referent("undergoer")?)),
            Template::Activity | Template::Carry => Ok(build_activity(referent("actor")?, sense, referent("undergoer"))),
        };
        Some(ls)
    }

    /// The referent an element denotes: a bundle, a question slot or an entity.
    pub fn referent(&self, e: &Element) -> Referent {
        if e.attrs.contains("bundle") {
            let mut members = vec![self.single_referent(e)];
            members.extend(e.constituents_labelled("member").map(|m| self.referent(m)));
            let flat: Vec<Referent> = members
                .into_iter()
                .flat_map(|m| match m {
                    Referent::Bundle(inner) => inner,
                    other => vec![other],
                })
                .collect();
            if let Some(b) = Referent::bundle(flat) {
                return b;
            }
        }
        self.single_referent(e)
    }

    fn single_referent(&self, e: &Element) -> Referent {
        let link = e.referent_links(self.lex).next().or_else(|| e.senses.first());
        let Some(link) = link else { return Referent::Unspecified };
        if link_has(self.lex, link, "query") {
            let focus = Focus::parse(link.sense.head()).unwrap_or(Focus::What);
            let mut attrs = Attrs::new();
            if let Some(cat) = e.find_label("category").and_then(|c| c.referent_links(self.lex).next()) {
                attrs.insert(format!("of:{}", cat.sense));
            }
            return Referent::Query { focus, attrs };
        }
        let mut attrs = Attrs::new();
        for a in ["definite", "indefinite", "proximal", "distal", "plural"] {
            if e.attrs.contains(a) || link.attrs.contains(a) {
                attrs.insert(a.to_string());
            }
        }
        let sense_attrs = self.lex.sense(&link.sense).map(|s| s.attrs.clone()).unwrap_or_default();
        for a in ["pronoun", "male", "female", "neuter", "plural"] {
            if sense_attrs.contains(a) {
                attrs.insert(a.to_string());
            }
        }
        Referent::Entity { sense: link.sense.clone(), attrs }
    }
}

enum Fit {
    Direct,
    Qualia(String),
    None,
}

fn labelled_window<'p, 'e>(p: &'p PhrasePattern, window: &'e [Element]) -> Vec<(Option<&'p str>, &'e Element)> {
    window.iter().enumerate().map(|(i, e)| (p.label_of(i), e)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Stage {
    Modal,
    Perfect,
    Progressive,
    Passive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AuxKind {
    Will,
    Have,
    Be,
    Do,
    Main,
}

/// Aux constituents at any depth: an auxiliary may itself have absorbed the
/// one before it ("will" into "have").
fn collect_auxes<'e>(e: &'e Element, out: &mut Vec<&'e Element>) {
    for c in e.constituents_labelled("aux") {
        out.push(c);
        collect_auxes(c, out);
    }
}

/// Resolves tense, aspect, voice and polarity from the auxiliary chain
/// gathered on `main` and the inflection of the chosen sense link.
pub fn extract_operators(lex: &Lexicon, main: &Element, link: &SenseLink, hint: Force) -> Result<OperatorSet, MatchError> {
    let mut auxes: Vec<&Element> = Vec::new();
    collect_auxes(main, &mut auxes);
    // an aux that absorbed an earlier one spans both, so order by where each ends
    auxes.sort_by_key(|e| e.span.1);

    let kind_of = |l: &SenseLink| -> AuxKind {
        let id = l.sense.as_str();
        if link_has(lex, l, "modal") {
            AuxKind::Will
        } else if id == "p:be" {
            AuxKind::Be
        } else if id == "p:have.aux" {
            AuxKind::Have
        } else if id == "p:do" {
            AuxKind::Do
        } else {
            AuxKind::Main
        }
    };
    // (kind, inflection attrs, element attrs)
    let mut chain: Vec<(AuxKind, Attrs)> = Vec::new();
    for a in &auxes {
        let l = a.senses.iter().find(|l| link_has(lex, l, "aux")).unwrap_or(&a.senses[0]);
        let mut attrs = l.attrs.clone();
        attrs.extend(a.attrs.iter().cloned());
        chain.push((kind_of(l), attrs));
    }
    let mut main_attrs = link.attrs.clone();
    main_attrs.extend(main.attrs.iter().cloned());
    chain.push((AuxKind::Main, main_attrs));

    let mut ops = OperatorSet::default();
    let (first_kind, first_attrs) = &chain[0];
    ops.tense = if *first_kind == AuxKind::Will {
        Tense::Future
    } else if first_attrs.contains("past") && !(chain.len() == 1 && first_attrs.contains("present")) {
        Tense::Past
    } else {
        Tense::Present
    };
    if first_attrs.contains("plural") {
        ops.number = Number::Plural;
    }
    if first_attrs.contains("1sg") {
        ops.person = 1;
    }

    let mut stage: Option<Stage> = None;
    let mut advance = |next: Stage, what: &str| -> Result<(), MatchError> {
        if stage.is_some_and(|s| s >= next) {
            return Err(MatchError::AuxChain(format!("{what} out of order")));
        }
        stage = Some(next);
        Ok(())
    };
    let last = chain.len() - 1;
    for i in 0..last {
        let (kind, _) = &chain[i];
        let (_, next) = &chain[i + 1];
        match kind {
            AuxKind::Will => {
                if i != 0 || !next.contains("base") {
                    return Err(MatchError::AuxChain("modal must lead and take a base form".into()));
                }
                advance(Stage::Modal, "modal")?;
            }
            AuxKind::Do => {
                if i != 0 || i + 1 != last || !next.contains("base") {
                    return Err(MatchError::AuxChain("do-support takes a bare base form".into()));
                }
            }
            AuxKind::Have => {
                if !next.contains("past-participle") {
                    return Err(MatchError::AuxChain("perfect needs a past participle".into()));
                }
                advance(Stage::Perfect, "perfect")?;
                ops.perfect = true;
            }
            AuxKind::Be => {
                if next.contains("present-participle") {
                    advance(Stage::Progressive, "progressive")?;
                    ops.progressive = true;
                } else if next.contains("past-participle") && i + 1 == last {
                    advance(Stage::Passive, "passive")?;
                    ops.voice = Voice::Passive;
                } else {
                    return Err(MatchError::AuxChain("be needs a participle".into()));
                }
            }
            AuxKind::Main => return Err(MatchError::AuxChain("main verb inside the chain".into())),
        }
    }
    if chain.iter().any(|(_, a)| a.contains("negative")) {
        ops.polarity = Polarity::Negative;
    }
    if chain.iter().any(|(_, a)| a.contains("no-longer")) {
        ops.polarity = Polarity::Negative;
        ops.no_longer = true;
    }
    if hint == Force::Question || chain.iter().any(|(_, a)| a.contains("fronted")) {
        ops.force = Force::Question;
    }
    Ok(ops)
}

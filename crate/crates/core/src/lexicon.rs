//! Word forms, word senses and the semantic network that links them.
//!
//! Senses are categorized only as referents, predicates or modifiers. The
//! network carries is-a, has-a, entails and does-x relations plus the
//! selectional frames predicates use to pick their arguments.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::matcher::pattern::PhrasePattern;

pub type Attrs = BTreeSet<String>;

/// Identifier of a node in the semantic network (`p:eat.chew`, `r:kitchen`, `food`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SenseId(pub String);

impl SenseId {
    pub fn new(id: impl Into<String>) -> Self {
        SenseId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The id without its `p:`/`r:`/`m:` prefix.
    pub fn head(&self) -> &str {
        match self.0.split_once(':') {
            Some((_, rest)) => rest,
            None => &self.0,
        }
    }
}

impl fmt::Display for SenseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for SenseId {
    fn from(s: &str) -> Self {
        SenseId(s.to_string())
    }
}

impl From<String> for SenseId {
    fn from(s: String) -> Self {
        SenseId(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    Referent,
    Predicate,
    Modifier,
}

impl Category {
    pub fn as_str(self) -> &'static str {
        match self {
            Category::Referent => "referent",
            Category::Predicate => "predicate",
            Category::Modifier => "modifier",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "referent" => Some(Category::Referent),
            "predicate" => Some(Category::Predicate),
            "modifier" => Some(Category::Modifier),
            _ => None,
        }
    }
}

/// Spatial class of a location; decides the preposition used for positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dimensionality {
    Enclosure,
    Surface,
    Locale,
}

impl Dimensionality {
    pub const ALL: [Dimensionality; 3] = [
        Dimensionality::Enclosure,
        Dimensionality::Surface,
        Dimensionality::Locale,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Dimensionality::Enclosure => "enclosure",
            Dimensionality::Surface => "surface",
            Dimensionality::Locale => "locale",
        }
    }

    pub fn preposition(self) -> &'static str {
        match self {
            Dimensionality::Enclosure => "in",
            Dimensionality::Surface => "on",
            Dimensionality::Locale => "at",
        }
    }

    /// Positional state predicate for this class (`be-in`, `be-on`, `be-at`).
    pub fn state_predicate(self) -> &'static str {
        match self {
            Dimensionality::Enclosure => "be-in",
            Dimensionality::Surface => "be-on",
            Dimensionality::Locale => "be-at",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSense {
    pub id: SenseId,
    pub category: Category,
    pub gloss: String,
    pub attrs: Attrs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationKind {
    IsA,
    HasA,
    Entails,
    DoesXActor,
    DoesXUndergoer,
}

impl RelationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RelationKind::IsA => "is-a",
            RelationKind::HasA => "has-a",
            RelationKind::Entails => "entails",
            RelationKind::DoesXActor => "does-x-actor",
            RelationKind::DoesXUndergoer => "does-x-undergoer",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "is-a" => RelationKind::IsA,
            "has-a" => RelationKind::HasA,
            "entails" => RelationKind::Entails,
            "does-x-actor" => RelationKind::DoesXActor,
            "does-x-undergoer" => RelationKind::DoesXUndergoer,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemanticRelation {
    pub from: SenseId,
    pub kind: RelationKind,
    pub to: SenseId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Actor,
    Undergoer,
    Destination,
    Source,
    Recipient,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Actor => "actor",
            Role::Undergoer => "undergoer",
            Role::Destination => "destination",
            Role::Source => "source",
            Role::Recipient => "recipient",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "actor" => Role::Actor,
            "undergoer" => Role::Undergoer,
            "destination" => Role::Destination,
            "source" => Role::Source,
            "recipient" => Role::Recipient,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoleSpec {
    pub role: Role,
    pub category: SenseId,
    pub required: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionalFrame {
    pub predicate: SenseId,
    pub roles: Vec<RoleSpec>,
}

impl SelectionalFrame {
    pub fn role(&self, role: Role) -> Option<&RoleSpec> {
        self.roles.iter().find(|r| r.role == role)
    }
}

/// A sense reachable from a word form, with the inflectional attributes of that form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SenseLink {
    pub sense: SenseId,
    pub attrs: Attrs,
}

/// English inflections of one predicate.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerbForms {
    pub base: String,
    pub third_singular: String,
    pub past: String,
    pub past_participle: String,
    pub present_participle: String,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LexiconError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: reference to unknown sense `{sense}`")]
    DanglingSense { line: usize, sense: String },
    #[error("is-a cycle through `{0}`")]
    Cycle(String),
    #[error("line {line}: part-of-speech tag `{tag}` is not allowed")]
    PartOfSpeech { line: usize, tag: String },
    #[error("unknown sense `{0}`")]
    UnknownSense(String),
    #[error("frame for `{predicate}` has no role `{role}`")]
    UnknownRole { predicate: String, role: String },
}

const POS_TAGS: [&str; 4] = ["noun", "verb", "adjective", "adverb"];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    senses: BTreeMap<SenseId, WordSense>,
    forms: BTreeMap<String, Vec<SenseLink>>,
    relations: Vec<SemanticRelation>,
    frames: BTreeMap<SenseId, SelectionalFrame>,
    phrases: Vec<PhrasePattern>,
}

impl Lexicon {
    /// Parses a lexicon document and validates referential integrity.
    pub fn load(source: &str) -> Result<Self, LexiconError> {
        let mut lex = Lexicon::default();
        // (line, sense) pairs checked once every sense is known
        let mut refs: Vec<(usize, SenseId)> = Vec::new();

        for (idx, raw) in source.lines().enumerate() {
            let line = idx + 1;
            let text = strip_comment(raw).trim();
            if text.is_empty() {
                continue;
            }
            let fields = split_fields(text).map_err(|message| LexiconError::Parse { line, message })?;
            let perr = |message: String| LexiconError::Parse { line, message };
            match fields[0].as_str() {
                "sense" => {
                    if fields.len() < 3 {
                        return Err(perr("sense record needs an id and a category".into()));
                    }
                    let id = SenseId(fields[1].clone());
                    if POS_TAGS.contains(&fields[2].as_str()) {
                        return Err(LexiconError::PartOfSpeech { line, tag: fields[2].clone() });
                    }
                    let category = Category::parse(&fields[2])
                        .ok_or_else(|| perr(format!("unknown category `{}`", fields[2])))?;
                    let mut attrs = Attrs::new();
                    let mut gloss = String::new();
                    for f in &fields[3..] {
                        if f.starts_with('{') {
                            attrs = parse_attrs(f).map_err(perr)?;
                        } else if let Some(g) = f.strip_prefix('"') {
                            gloss = g.trim_end_matches('"').to_string();
                        } else {
                            return Err(perr(format!("unexpected field `{f}`")));
                        }
                    }
                    check_pos(&attrs, line)?;
                    let dims = Dimensionality::ALL
                        .iter()
                        .filter(|d| attrs.contains(d.as_str()))
                        .count();
                    if dims > 1 {
                        return Err(perr(format!("`{id}` has more than one dimensionality class")));
                    }
                    if lex.senses.contains_key(&id) {
                        return Err(perr(format!("duplicate sense `{id}`")));
                    }
                    lex.senses.insert(id.clone(), WordSense { id, category, gloss, attrs });
                }
                "form" => {
                    if fields.len() < 4 || fields[2] != "->" {
                        return Err(perr("expected `form <surface> -> <sense> {attrs}`".into()));
                    }
                    let surface = fields[1].to_lowercase();
                    let sense = SenseId(fields[3].clone());
                    let attrs = match fields.get(4) {
                        Some(f) => parse_attrs(f).map_err(perr)?,
                        None => Attrs::new(),
                    };
                    check_pos(&attrs, line)?;
                    refs.push((line, sense.clone()));
                    lex.forms.entry(surface).or_default().push(SenseLink { sense, attrs });
                }
                "rel" => {
                    if fields.len() != 4 {
                        return Err(perr("expected `rel <id> <kind> <id>`".into()));
                    }
                    let kind = RelationKind::parse(&fields[2])
                        .ok_or_else(|| perr(format!("unknown relation `{}`", fields[2])))?;
                    let rel = SemanticRelation {
                        from: SenseId(fields[1].clone()),
                        kind,
                        to: SenseId(fields[3].clone()),
                    };
                    refs.push((line, rel.from.clone()));
                    refs.push((line, rel.to.clone()));
                    lex.relations.push(rel);
                }
                "frame" => {
                    if fields.len() < 3 {
                        return Err(perr("frame needs at least one role".into()));
                    }
                    let predicate = SenseId(fields[1].clone());
                    refs.push((line, predicate.clone()));
                    let mut roles: Vec<RoleSpec> = Vec::new();
                    for spec in &fields[2..] {
                        let (role, cat) = spec
                            .split_once(':')
                            .ok_or_else(|| perr(format!("bad role spec `{spec}`")))?;
                        let role = Role::parse(role).ok_or_else(|| perr(format!("unknown role `{role}`")))?;
                        let (cat, required) = match cat.strip_suffix('!') {
                            Some(c) => (c, true),
                            None => (cat, false),
                        };
                        if roles.iter().any(|r| r.role == role) {
                            return Err(perr(format!("duplicate role `{}`", role.as_str())));
                        }
                        refs.push((line, SenseId::from(cat)));
                        roles.push(RoleSpec { role, category: SenseId::from(cat), required });
                    }
                    lex.frames.insert(predicate.clone(), SelectionalFrame { predicate, roles });
                }
                "phrase" => {
                    let pattern = PhrasePattern::parse(&fields[1..]).map_err(perr)?;
                    lex.phrases.push(pattern);
                }
                other => return Err(perr(format!("unknown record kind `{other}`"))),
            }
        }

        for (line, sense) in refs {
            if !lex.senses.contains_key(&sense) {
                return Err(LexiconError::DanglingSense { line, sense: sense.0 });
            }
        }
        for rel in &lex.relations {
            if rel.kind == RelationKind::Entails {
                let target = &lex.senses[&rel.to];
                if target.category != Category::Predicate {
                    return Err(LexiconError::Parse {
                        line: 0,
                        message: format!("entails target `{}` is not a predicate", rel.to),
                    });
                }
            }
        }
        lex.check_acyclic()?;
        Ok(lex)
    }

    /// Concatenates several documents and loads them as one.
    pub fn load_all(sources: &[&str]) -> Result<Self, LexiconError> {
        Lexicon::load(&sources.join("\n"))
    }

    fn check_acyclic(&self) -> Result<(), LexiconError> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Visiting,
            Done,
        }
        let mut marks: HashMap<&SenseId, Mark> = HashMap::new();
        fn visit<'a>(
            lex: &'a Lexicon,
            node: &'a SenseId,
            marks: &mut HashMap<&'a SenseId, Mark>,
        ) -> Result<(), LexiconError> {
            match marks.get(node) {
                Some(Mark::Done) => return Ok(()),
                Some(Mark::Visiting) => return Err(LexiconError::Cycle(node.0.clone())),
                None => {}
            }
            marks.insert(node, Mark::Visiting);
            for parent in lex.related(node, RelationKind::IsA) {
                visit(lex, parent, marks)?;
            }
            marks.insert(node, Mark::Done);
            Ok(())
        }
        for id in self.senses.keys() {
            visit(self, id, &mut marks)?;
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.senses.is_empty() && self.forms.is_empty() && self.phrases.is_empty()
    }

    pub fn sense(&self, id: &SenseId) -> Option<&WordSense> {
        self.senses.get(id)
    }

    pub fn senses(&self) -> impl Iterator<Item = &WordSense> {
        self.senses.values()
    }

    pub fn frame(&self, predicate: &SenseId) -> Option<&SelectionalFrame> {
        self.frames.get(predicate)
    }

    pub fn phrases(&self) -> &[PhrasePattern] {
        &self.phrases
    }

    pub fn relations(&self) -> &[SemanticRelation] {
        &self.relations
    }

    pub fn has_form(&self, surface: &str) -> bool {
        self.forms.contains_key(surface)
    }

    /// All senses a form links to. Unknown forms give an empty list.
    pub fn senses_of(&self, form: &str) -> Vec<SenseLink> {
        self.forms.get(&form.to_lowercase()).cloned().unwrap_or_default()
    }

    fn related<'a>(&'a self, from: &'a SenseId, kind: RelationKind) -> impl Iterator<Item = &'a SenseId> + 'a {
        self.relations
            .iter()
            .filter(move |r| r.kind == kind && &r.from == from)
            .map(|r| &r.to)
    }

    /// True iff `sense` reaches `category` through zero or more is-a edges.
    pub fn holds_category(&self, sense: &SenseId, category: &SenseId) -> Result<bool, LexiconError> {
        for id in [sense, category] {
            if !self.senses.contains_key(id) {
                return Err(LexiconError::UnknownSense(id.0.clone()));
            }
        }
        Ok(self.reaches(sense, category, &[RelationKind::IsA]))
    }

    /// True iff `pred` is `target` or reaches it by entails/is-a edges.
    pub fn entails(&self, pred: &SenseId, target: &SenseId) -> bool {
        self.reaches(pred, target, &[RelationKind::Entails, RelationKind::IsA])
    }

    fn reaches(&self, from: &SenseId, to: &SenseId, kinds: &[RelationKind]) -> bool {
        let mut stack = vec![from];
        let mut seen: BTreeSet<&SenseId> = BTreeSet::new();
        while let Some(node) = stack.pop() {
            if node == to {
                return true;
            }
            if !seen.insert(node) {
                continue;
            }
            for rel in &self.relations {
                if &rel.from == node && kinds.contains(&rel.kind) {
                    stack.push(&rel.to);
                }
            }
        }
        false
    }

    pub fn selectional_fit(
        &self,
        frame: &SelectionalFrame,
        role: Role,
        filler: &SenseId,
    ) -> Result<bool, LexiconError> {
        let spec = frame.role(role).ok_or_else(|| LexiconError::UnknownRole {
            predicate: frame.predicate.0.clone(),
            role: role.as_str().to_string(),
        })?;
        self.holds_category(filler, &spec.category)
    }

    /// Has-a parts and does-x associations of a referent, used to retry a
    /// failed selectional fit.
    pub fn qualia_expand(&self, referent: &SenseId) -> Vec<(SenseId, RelationKind)> {
        self.relations
            .iter()
            .filter(|r| {
                &r.from == referent
                    && matches!(
                        r.kind,
                        RelationKind::HasA | RelationKind::DoesXActor | RelationKind::DoesXUndergoer
                    )
            })
            .map(|r| (r.to.clone(), r.kind))
            .collect()
    }

    /// Dimensionality class of a location, inherited through is-a.
    pub fn dimensionality(&self, sense: &SenseId) -> Option<Dimensionality> {
        let mut current = Some(sense);
        let mut guard = 0;
        while let Some(id) = current {
            let s = self.senses.get(id)?;
            if let Some(d) = Dimensionality::ALL.iter().find(|d| s.attrs.contains(d.as_str())) {
                return Some(*d);
            }
            current = self.related(id, RelationKind::IsA).next();
            guard += 1;
            if guard > 64 {
                return None;
            }
        }
        None
    }

    /// Preferred surface for a referent sense: its singular form, else the id head.
    pub fn surface_of(&self, sense: &SenseId) -> String {
        let mut best: Option<&str> = None;
        for (surface, links) in &self.forms {
            for link in links {
                if &link.sense == sense {
                    if surface == sense.head() {
                        return surface.clone();
                    }
                    if best.is_none() && !link.attrs.contains("plural") {
                        best = Some(surface);
                    }
                }
            }
        }
        best.map(str::to_string).unwrap_or_else(|| sense.head().to_string())
    }

    /// Plural surface for a referent, if the lexicon lists one.
    pub fn plural_of(&self, sense: &SenseId) -> Option<String> {
        self.forms.iter().find_map(|(surface, links)| {
            links
                .iter()
                .any(|l| &l.sense == sense && l.attrs.contains("plural"))
                .then(|| surface.clone())
        })
    }

    /// Collects the five English verb forms linked to `pred`.
    pub fn verb_forms(&self, pred: &SenseId) -> Option<VerbForms> {
        let mut vf = VerbForms::default();
        for (surface, links) in &self.forms {
            for link in links.iter().filter(|l| &l.sense == pred) {
                let a = &link.attrs;
                if a.contains("negative") {
                    continue;
                }
                if a.contains("base") {
                    vf.base = surface.clone();
                }
                if a.contains("present") && a.contains("3sg") {
                    vf.third_singular = surface.clone();
                }
                if a.contains("past") {
                    vf.past = surface.clone();
                }
                if a.contains("past-participle") {
                    vf.past_participle = surface.clone();
                }
                if a.contains("present-participle") {
                    vf.present_participle = surface.clone();
                }
            }
        }
        let complete = [&vf.base, &vf.third_singular, &vf.past, &vf.past_participle, &vf.present_participle]
            .iter()
            .all(|s| !s.is_empty());
        complete.then_some(vf)
    }

    /// Serializes back to the record format; `load(to_text())` reproduces `self`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in self.senses.values() {
            out.push_str(&format!(
                "sense {} {} {} \"{}\"\n",
                s.id,
                s.category.as_str(),
                fmt_attrs(&s.attrs),
                s.gloss
            ));
        }
        for (surface, links) in &self.forms {
            for l in links {
                out.push_str(&format!("form {} -> {} {}\n", surface, l.sense, fmt_attrs(&l.attrs)));
            }
        }
        for r in &self.relations {
            out.push_str(&format!("rel {} {} {}\n", r.from, r.kind.as_str(), r.to));
        }
        for f in self.frames.values() {
            out.push_str(&format!("frame {}", f.predicate));
            for r in &f.roles {
                out.push_str(&format!(
                    " {}:{}{}",
                    r.role.as_str(),
                    r.category,
                    if r.required { "!" } else { "" }
                ));
            }
            out.push('\n');
        }
        for p in &self.phrases {
            out.push_str(&format!("{p}\n"));
        }
        out
    }
}

fn check_pos(attrs: &Attrs, line: usize) -> Result<(), LexiconError> {
    match attrs.iter().find(|a| POS_TAGS.contains(&a.as_str())) {
        Some(tag) => Err(LexiconError::PartOfSpeech { line, tag: tag.clone() }),
        None => Ok(()),
    }
}

pub(crate) fn fmt_attrs(attrs: &Attrs) -> String {
    let inner: Vec<&str> = attrs.iter().map(String::as_str).collect();
    format!("{{{}}}", inner.join(","))
}

fn parse_attrs(field: &str) -> Result<Attrs, String> {
    let inner = field
        .strip_prefix('{')
        .and_then(|f| f.strip_suffix('}'))
        .ok_or_else(|| format!("malformed attribute set `{field}`"))?;
    Ok(inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect())
}

fn strip_comment(line: &str) -> &str {
    let mut in_quote = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_quote = !in_quote,
            '#' if !in_quote => return &line[..i],
            _ => {}
        }
    }
    line
}

/// Splits on whitespace, keeping quoted glosses and `{...}` sets whole.
fn split_fields(line: &str) -> Result<Vec<String>, String> {
    let mut fields = Vec::new();
    let mut chars = line.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let mut field = String::new();
        if c == '"' {
            field.push(chars.next().unwrap());
            loop {
                match chars.next() {
                    Some('"') => {
                        field.push('"');
                        break;
                    }
                    Some(ch) => field.push(ch),
                    None => return Err("unterminated gloss".into()),
                }
            }
        } else if c == '{' {
            loop {
                match chars.next() {
                    Some('}') => {
                        field.push('}');
                        break;
                    }
                    Some(ch) if !ch.is_whitespace() => field.push(ch),
                    Some(_) => {}
                    None => return Err("unterminated attribute set".into()),
                }
            }
        } else {
            while let Some(&ch) = chars.peek() {
                if ch.is_whitespace() {
                    break;
                }
                field.push(ch);
                chars.next();
            }
        }
        fields.push(field);
    }
    Ok(fields)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINI: &str = r#"
# categories
sense animal referent {} "living thing"
sense food referent {} "edible"
sense r:girl referent {female,singular} "young woman"
sense r:sandwich referent {} "bread with filling"
sense p:eat.chew predicate {activity} "chew and swallow"
sense r:kitchen referent {enclosure} "room for cooking"
rel r:girl is-a animal
rel r:sandwich is-a food
form ate -> p:eat.chew {past}
form kitchen -> r:kitchen {singular}
frame p:eat.chew actor:animal! undergoer:food!
"#;

    #[test]
    fn loads_form_with_attributes() {
        let lex = Lexicon::load(MINI).unwrap();
        let ate = lex.senses_of("ate");
        assert_eq!(ate.len(), 1);
        assert_eq!(ate[0].sense, SenseId::from("p:eat.chew"));
        assert!(ate[0].attrs.contains("past"));
        assert_eq!(lex.dimensionality(&"r:kitchen".into()), Some(Dimensionality::Enclosure));
    }

    #[test]
    fn empty_document_is_empty_lexicon() {
        let lex = Lexicon::load("").unwrap();
        assert!(lex.is_empty());
        assert!(lex.senses_of("zzz").is_empty());
    }

    #[test]
    fn dangling_reference_is_reported_with_line() {
        let err = Lexicon::load("sense a referent {}\nform x -> b {}").unwrap_err();
        assert_eq!(err, LexiconError::DanglingSense { line: 2, sense: "b".into() });
    }

    #[test]
    fn cycle_is_rejected() {
        let doc = "sense a referent {}\nsense b referent {}\nrel a is-a b\nrel b is-a a";
        assert!(matches!(Lexicon::load(doc), Err(LexiconError::Cycle(_))));
    }

    #[test]
    fn part_of_speech_tags_are_rejected() {
        assert!(matches!(
            Lexicon::load("sense a noun {}"),
            Err(LexiconError::PartOfSpeech { line: 1, .. })
        ));
        assert!(matches!(
            Lexicon::load("sense a referent {verb}"),
            Err(LexiconError::PartOfSpeech { .. })
        ));
    }

    #[test]
    fn parse_error_carries_line_number() {
        let err = Lexicon::load("\n\nsense a bogus {}").unwrap_err();
        assert!(matches!(err, LexiconError::Parse { line: 3, .. }));
    }

    #[test]
    fn two_dimensionality_classes_rejected() {
        assert!(Lexicon::load("sense r:x referent {enclosure,surface}").is_err());
    }

    #[test]
    fn category_queries() {
        let lex = Lexicon::load(MINI).unwrap();
        assert!(lex.holds_category(&"r:girl".into(), &"animal".into()).unwrap());
        assert!(lex.holds_category(&"r:girl".into(), &"r:girl".into()).unwrap());
        assert!(!lex.holds_category(&"r:girl".into(), &"food".into()).unwrap());
        assert!(lex.holds_category(&"nope".into(), &"food".into()).is_err());
        let frame = lex.frame(&"p:eat.chew".into()).unwrap();
        assert!(lex.selectional_fit(frame, Role::Undergoer, &"r:sandwich".into()).unwrap());
        assert!(lex.selectional_fit(frame, Role::Recipient, &"r:sandwich".into()).is_err());
    }

    #[test]
    fn round_trip() {
        let lex = Lexicon::load(MINI).unwrap();
        let again = Lexicon::load(&lex.to_text()).unwrap();
        assert_eq!(lex, again);
    }

    #[test]
    fn qualia_of_bare_sense_is_empty() {
        let lex = Lexicon::load(MINI).unwrap();
        assert!(lex.qualia_expand(&"r:girl".into()).is_empty());
    }
}

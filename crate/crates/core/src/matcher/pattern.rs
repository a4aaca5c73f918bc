//! Phrase patterns: the data records that drive literal, consolidation and
//! predication matching.
//!
//! Record layout (fields after the `phrase` keyword):
//!
//! ```text
//! <id> <kind> trigger=<key> sel:<atom>[+<atom>...][^] ... [retain=<i>]
//!     [labels=<i>:<label>,...] [ops=<op>,...] [frame=<sense>] [template=<key>]
//!     [when=[!]<flag>]
//! ```
//!
//! Atoms are `w=<word>[|<word>...]`, `w=@particle`, `c=<category>`,
//! `a=<attr>`, `s=<sense>` and `l=<label>`, each optionally negated with a
//! leading `!`. A trailing `^` on a selector passes the element through
//! untouched. Trigger keys take the same `w:`/`a:`/`s:`/`c:`/`l:` prefixes.

use std::fmt;

use crate::lexicon::{Category, SenseId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatternKind {
    Literal,
    Consolidation,
    Predication,
}

impl PatternKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PatternKind::Literal => "literal",
            PatternKind::Consolidation => "consolidation",
            PatternKind::Predication => "predication",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "literal" => PatternKind::Literal,
            "consolidation" => PatternKind::Consolidation,
            "predication" => PatternKind::Predication,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Word(Vec<String>),
    /// The word named by the first element's `particle:<word>` attribute.
    Particle,
    Category(Category),
    Attr(String),
    Sense(SenseId),
    Label(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomSpec {
    pub negated: bool,
    pub atom: Atom,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selector {
    pub atoms: Vec<AtomSpec>,
    pub pass_through: bool,
}

impl Selector {
    /// The literal word, when this selector is a single positive word atom.
    pub fn word(&self) -> Option<&str> {
        match self.atoms.as_slice() {
            [AtomSpec { negated: false, atom: Atom::Word(words) }] if words.len() == 1 => Some(&words[0]),
            _ => None,
        }
    }
}

/// What a predication builds once its selectors and frame are satisfied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Template {
    Motion,
    Position,
    Where,
    Transfer,
    Hold,
    Activity,
    Carry,
}

impl Template {
    pub fn as_str(self) -> &'static str {
        match self {
            Template::Motion => "motion",
            Template::Position => "position",
            Template::Where => "where",
            Template::Transfer => "transfer",
            Template::Hold => "hold",
            Template::Activity => "activity",
            Template::Carry => "carry",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "motion" => Template::Motion,
            "position" => Template::Position,
            "where" => Template::Where,
            "transfer" => Template::Transfer,
            "hold" => Template::Hold,
            "activity" => Template::Activity,
            "carry" => Template::Carry,
            _ => return None,
        })
    }

    /// Sense attribute a predicate needs to be cast by this template.
    /// Copular templates take the `be` element and need none.
    pub fn required_attr(self) -> Option<&'static str> {
        match self {
            Template::Motion => Some("motion"),
            Template::Transfer => Some("transfer"),
            Template::Hold => Some("state"),
            Template::Activity => Some("activity"),
            Template::Carry => Some("carry"),
            Template::Position | Template::Where => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhrasePattern {
    pub id: String,
    pub kind: PatternKind,
    pub trigger: String,
    pub selectors: Vec<Selector>,
    pub retain: Option<usize>,
    pub labels: Vec<(usize, String)>,
    pub ops: Vec<String>,
    pub frame: Option<SenseId>,
    pub template: Option<Template>,
    /// Option flag gating the pattern; `(false, f)` means "only when `f` is off".
    pub when: Option<(bool, String)>,
}

impl PhrasePattern {
    pub fn label_of(&self, index: usize) -> Option<&str> {
        self.labels.iter().find(|(i, _)| *i == index).map(|(_, l)| l.as_str())
    }

    /// Parses the fields of a `phrase` record (without the keyword itself).
    pub fn parse(fields: &[String]) -> Result<Self, String> {
        if fields.len() < 3 {
            return Err("phrase needs an id, a kind and a trigger".into());
        }
        let id = fields[0].clone();
        let kind = PatternKind::parse(&fields[1]).ok_or_else(|| format!("unknown phrase kind `{}`", fields[1]))?;
        let mut p = PhrasePattern {
            id,
            kind,
            trigger: String::new(),
            selectors: Vec::new(),
            retain: None,
            labels: Vec::new(),
            ops: Vec::new(),
            frame: None,
            template: None,
            when: None,
        };
        for field in &fields[2..] {
            if let Some(sel) = field.strip_prefix("sel:") {
                p.selectors.push(parse_selector(sel)?);
                continue;
            }
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| format!("unexpected phrase field `{field}`"))?;
            match key {
                "trigger" => {
                    check_key(value)?;
                    p.trigger = value.to_string();
                }
                "retain" => p.retain = Some(value.parse().map_err(|_| format!("bad retain `{value}`"))?),
                "labels" => {
                    for item in value.split(',').filter(|s| !s.is_empty()) {
                        let (i, label) = item.split_once(':').ok_or_else(|| format!("bad label `{item}`"))?;
                        let i = i.parse().map_err(|_| format!("bad label index `{i}`"))?;
                        p.labels.push((i, label.to_string()));
                    }
                }
                "ops" => p.ops = value.split(',').filter(|s| !s.is_empty()).map(str::to_string).collect(),
                "frame" => p.frame = Some(SenseId::from(value)),
                "template" => {
                    p.template = Some(Template::parse(value).ok_or_else(|| format!("unknown template `{value}`"))?)
                }
                "when" => {
                    p.when = Some(match value.strip_prefix('!') {
                        Some(flag) => (false, flag.to_string()),
                        None => (true, value.to_string()),
                    })
                }
                _ => return Err(format!("unknown phrase field `{key}`")),
            }
        }
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), String> {
        if self.trigger.is_empty() {
            return Err(format!("phrase `{}` has no trigger", self.id));
        }
        if self.selectors.is_empty() {
            return Err(format!("phrase `{}` has no selectors", self.id));
        }
        let n = self.selectors.len();
        if self.retain.is_some_and(|r| r >= n) || self.labels.iter().any(|(i, _)| *i >= n) {
            return Err(format!("phrase `{}` refers past its last selector", self.id));
        }
        match self.kind {
            PatternKind::Literal => {
                if self.selectors.iter().any(|s| s.word().is_none()) {
                    return Err(format!("literal `{}` may only hold single words", self.id));
                }
                if self.trigger != format!("w:{}", self.selectors[0].word().unwrap_or_default()) {
                    return Err(format!("literal `{}` must be triggered by its first word", self.id));
                }
            }
            PatternKind::Consolidation => {
                let Some(r) = self.retain else {
                    return Err(format!("consolidation `{}` must retain an element", self.id));
                };
                // a pattern that consumes nothing must block itself with one of its own ops
                let consumed = self.selectors.iter().enumerate().filter(|(i, s)| *i != r && !s.pass_through).count();
                let blocked = self.selectors[r].atoms.iter().any(|a| {
                    a.negated && matches!(&a.atom, Atom::Attr(x) if self.ops.contains(x))
                });
                if consumed == 0 && !blocked {
                    return Err(format!("consolidation `{}` could fire forever", self.id));
                }
            }
            PatternKind::Predication => {
                if self.template.is_none() {
                    return Err(format!("predication `{}` needs a template", self.id));
                }
            }
        }
        if let Some(r) = self.retain {
            if self.selectors[r].pass_through {
                return Err(format!("phrase `{}` retains a pass-through element", self.id));
            }
        }
        Ok(())
    }
}

fn check_key(key: &str) -> Result<(), String> {
    match key.split_once(':') {
        Some(("w" | "a" | "s" | "c" | "l", rest)) if !rest.is_empty() => Ok(()),
        _ => Err(format!("bad trigger key `{key}`")),
    }
}

fn parse_selector(text: &str) -> Result<Selector, String> {
    let (body, pass_through) = match text.strip_suffix('^') {
        Some(b) => (b, true),
        None => (text, false),
    };
    let mut atoms = Vec::new();
    for raw in body.split('+') {
        let (negated, raw) = match raw.strip_prefix('!') {
            Some(r) => (true, r),
            None => (false, raw),
        };
        let (key, value) = raw.split_once('=').ok_or_else(|| format!("bad selector atom `{raw}`"))?;
        if value.is_empty() {
            return Err(format!("empty selector atom `{raw}`"));
        }
        let atom = match key {
            "w" if value == "@particle" => Atom::Particle,
            "w" => Atom::Word(value.split('|').map(str::to_string).collect()),
            "c" => Atom::Category(Category::parse(value).ok_or_else(|| format!("unknown category `{value}`"))?),
            "a" => Atom::Attr(value.to_string()),
            "s" => Atom::Sense(SenseId::from(value)),
            "l" => Atom::Label(value.to_string()),
            _ => return Err(format!("unknown selector key `{key}`")),
        };
        atoms.push(AtomSpec { negated, atom });
    }
    Ok(Selector { atoms, pass_through })
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("sel:")?;
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if a.negated {
                f.write_str("!")?;
            }
            match &a.atom {
                Atom::Word(w) => write!(f, "w={}", w.join("|"))?,
                Atom::Particle => f.write_str("w=@particle")?,
                Atom::Category(c) => write!(f, "c={}", c.as_str())?,
                Atom::Attr(x) => write!(f, "a={x}")?,
                Atom::Sense(s) => write!(f, "s={s}")?,
                Atom::Label(l) => write!(f, "l={l}")?,
            }
        }
        if self.pass_through {
            f.write_str("^")?;
        }
        Ok(())
    }
}

impl fmt::Display for PhrasePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phrase {} {} trigger={}", self.id, self.kind.as_str(), self.trigger)?;
        for s in &self.selectors {
            write!(f, " {s}")?;
        }
        if let Some(r) = self.retain {
            write!(f, " retain={r}")?;
        }
        if !self.labels.is_empty() {
            let l: Vec<String> = self.labels.iter().map(|(i, l)| format!("{i}:{l}")).collect();
            write!(f, " labels={}", l.join(","))?;
        }
        if !self.ops.is_empty() {
            write!(f, " ops={}", self.ops.join(","))?;
        }
        if let Some(fr) = &self.frame {
            write!(f, " frame={fr}")?;
        }
        if let Some(t) = self.template {
            write!(f, " template={}", t.as_str())?;
        }
        if let Some((on, flag)) = &self.when {
            write!(f, " when={}{}", if *on { "" } else { "!" }, flag)?;
        }
        Ok(())
    }
}

//! JSON exchange format for every automaton kind and for level decompositions.
//!
//! Degrees are always strings (`"p/q"` or an exact decimal) so nothing passes
//! through floating point. Serialization is canonical: states and symbols in
//! declaration order, transitions sorted by source, symbol and target.

use std::collections::HashSet;
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::classic::{Alphabet, Dfa, Nfa, States};
use crate::constructions::LevelDecomposition;
use crate::error::{Error, Result};
use crate::hesitant::{Cdthfa, Cnthfa, HesitantAutomaton, HesitantLanguage, Nthfa};
use crate::hfe::{Degree, Thfe};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Dfa,
    Nfa,
    Nthfa,
    Cnthfa,
    Cdthfa,
    Decomposition,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::Dfa => "dfa",
            Kind::Nfa => "nfa",
            Kind::Nthfa => "nthfa",
            Kind::Cnthfa => "cnthfa",
            Kind::Cdthfa => "cdthfa",
            Kind::Decomposition => "decomposition",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Target {
    One(String),
    Many(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTransition {
    pub from: String,
    pub symbol: String,
    pub to: Target,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FinalSpec {
    Values(IndexMap<String, Vec<String>>),
    States(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLevel {
    pub k: Vec<String>,
    pub nfa: AutomatonDocument,
}

/// The document as written on disk, before any semantic checking.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonDocument {
    pub kind: Kind,
    pub alphabet: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub states: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transitions: Option<Vec<RawTransition>>,
    #[serde(rename = "final", default, skip_serializing_if = "Option::is_none")]
    pub finals: Option<FinalSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<RawLevel>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Map<String, Value>>,
}

/// A validated, typed document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Dfa(Dfa),
    Nfa(Nfa),
    Nthfa(Nthfa),
    Cnthfa(Cnthfa),
    Cdthfa(Cdthfa),
    Decomposition(LevelDecomposition),
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Dfa(_) => Kind::Dfa,
            Document::Nfa(_) => Kind::Nfa,
            Document::Nthfa(_) => Kind::Nthfa,
            Document::Cnthfa(_) => Kind::Cnthfa,
            Document::Cdthfa(_) => Kind::Cdthfa,
            Document::Decomposition(_) => Kind::Decomposition,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Document::Dfa(d) => d.alphabet(),
            Document::Nfa(n) => n.alphabet(),
            Document::Nthfa(m) => m.alphabet(),
            Document::Cnthfa(n) => n.alphabet(),
            Document::Cdthfa(d) => d.alphabet(),
            Document::Decomposition(l) => l.alphabet(),
        }
    }

    /// The hesitant automaton inside, if this is one of the three hesitant kinds.
    pub fn into_hesitant(self) -> Result<HesitantAutomaton> {
        match self {
            Document::Nthfa(m) => Ok(m.into()),
            Document::Cnthfa(n) => Ok(n.into()),
            Document::Cdthfa(d) => Ok(d.into()),
            other => Err(Error::WrongKind { expected: "nthfa, cnthfa or cdthfa".into(), found: other.kind().to_string() }),
        }
    }
}

impl From<HesitantAutomaton> for Document {
    fn from(a: HesitantAutomaton) -> Self {
        match a {
            HesitantAutomaton::Nthfa(m) => Document::Nthfa(m),
            HesitantAutomaton::Cnthfa(n) => Document::Cnthfa(n),
            HesitantAutomaton::Cdthfa(d) => Document::Cdthfa(d),
        }
    }
}

/// One problem found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    InvalidAlphabet(String),
    InvalidStates(String),
    UnknownState { at: String, name: String },
    UnknownSymbol { at: String, symbol: String },
    InvalidThfe { at: String },
    BadDegree { at: String, literal: String },
    DegreeOutOfRange { at: String, literal: String },
    /// Accepted after sorting/deduplicating; reported as a warning.
    NonCanonicalThfe { at: String },
    IncompleteTransition { state: String, symbol: String },
    DuplicateTransition { at: String },
    WrongShape { at: String, message: String },
}

impl Diagnostic {
    pub fn is_warning(&self) -> bool {
        matches!(self, Diagnostic::NonCanonicalThfe { .. })
    }

    fn nested(self, prefix: &str) -> Diagnostic {
        let p = |at: String| format!("{prefix}.{at}");
        match self {
            Diagnostic::UnknownState { at, name } => Diagnostic::UnknownState { at: p(at), name },
            Diagnostic::UnknownSymbol { at, symbol } => Diagnostic::UnknownSymbol { at: p(at), symbol },
            Diagnostic::InvalidThfe { at } => Diagnostic::InvalidThfe { at: p(at) },
            Diagnostic::BadDegree { at, literal } => Diagnostic::BadDegree { at: p(at), literal },
            Diagnostic::DegreeOutOfRange { at, literal } => Diagnostic::DegreeOutOfRange { at: p(at), literal },
            Diagnostic::NonCanonicalThfe { at } => Diagnostic::NonCanonicalThfe { at: p(at) },
            Diagnostic::DuplicateTransition { at } => Diagnostic::DuplicateTransition { at: p(at) },
            Diagnostic::WrongShape { at, message } => Diagnostic::WrongShape { at: p(at), message },
            Diagnostic::InvalidAlphabet(m) => Diagnostic::InvalidAlphabet(format!("{prefix}: {m}")),
            Diagnostic::InvalidStates(m) => Diagnostic::InvalidStates(format!("{prefix}: {m}")),
            other @ Diagnostic::IncompleteTransition { .. } => other,
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::InvalidAlphabet(m) => write!(f, "invalid alphabet: {m}"),
            Diagnostic::InvalidStates(m) => write!(f, "invalid states: {m}"),
            Diagnostic::UnknownState { at, name } => write!(f, "{at}: unknown state {name:?}"),
            Diagnostic::UnknownSymbol { at, symbol } => write!(f, "{at}: unknown symbol {symbol:?}"),
            Diagnostic::InvalidThfe { at } => write!(f, "{at}: hesitant element must be non-empty"),
            Diagnostic::BadDegree { at, literal } => write!(f, "{at}: cannot parse degree {literal:?}"),
            Diagnostic::DegreeOutOfRange { at, literal } => write!(f, "{at}: degree {literal} outside [0, 1]"),
            Diagnostic::NonCanonicalThfe { at } => write!(f, "warning: {at}: degrees reordered or deduplicated"),
            Diagnostic::IncompleteTransition { state, symbol } => {
                write!(f, "missing transition for state {state:?} on symbol {symbol:?}")
            }
            Diagnostic::DuplicateTransition { at } => write!(f, "{at}: duplicate transition entry"),
            Diagnostic::WrongShape { at, message } => write!(f, "{at}: {message}"),
        }
    }
}

impl From<&Diagnostic> for Error {
    fn from(d: &Diagnostic) -> Self {
        match d {
            Diagnostic::InvalidAlphabet(m) => Error::InvalidAlphabet(m.clone()),
            Diagnostic::UnknownState { name, .. } => Error::UnknownState(name.clone()),
            Diagnostic::UnknownSymbol { symbol, .. } => Error::UnknownSymbol(symbol.clone()),
            Diagnostic::InvalidThfe { at } => Error::InvalidThfe(format!("empty at {at}")),
            Diagnostic::DegreeOutOfRange { literal, .. } => Error::DegreeOutOfRange(literal.clone()),
            Diagnostic::IncompleteTransition { state, symbol } => {
                Error::IncompleteTransition { state: state.clone(), symbol: symbol.clone() }
            }
            Diagnostic::BadDegree { .. } => Error::Syntax(d.to_string()),
            other => Error::InvalidAutomaton(other.to_string()),
        }
    }
}

/// Result of parsing: the typed document plus any warnings.
#[derive(Clone, Debug, PartialEq)]
pub struct Parsed {
    pub document: Document,
    pub metadata: Option<Map<String, Value>>,
    pub warnings: Vec<Diagnostic>,
}

fn check_thfe(at: &str, raw: &[String], out: &mut Vec<Diagnostic>) -> Option<Thfe> {
    if raw.is_empty() {
        out.push(Diagnostic::InvalidThfe { at: at.to_string() });
        return None;
    }
    let mut degrees = Vec::with_capacity(raw.len());
    for literal in raw {
        match literal.parse::<Degree>() {
            Ok(d) => degrees.push(d),
            Err(Error::DegreeOutOfRange(_)) => {
                out.push(Diagnostic::DegreeOutOfRange { at: at.to_string(), literal: literal.clone() });
                return None;
            }
            Err(_) => {
                out.push(Diagnostic::BadDegree { at: at.to_string(), literal: literal.clone() });
                return None;
            }
        }
    }
    let thfe = Thfe::new(degrees).expect("non-empty");
    if thfe.to_strings() != raw {
        out.push(Diagnostic::NonCanonicalThfe { at: at.to_string() });
    }
    Some(thfe)
}

struct Frame {
    states: Option<States>,
    alphabet: Option<Alphabet>,
}

impl Frame {
    fn state(&self, at: &str, name: &str, out: &mut Vec<Diagnostic>) -> Option<usize> {
        let states = self.states.as_ref()?;
        match states.index_of(name) {
            Ok(i) => Some(i),
            Err(_) => {
                out.push(Diagnostic::UnknownState { at: at.to_string(), name: name.to_string() });
                None
            }
        }
    }

    fn symbol(&self, at: &str, symbol: &str, out: &mut Vec<Diagnostic>) -> Option<usize> {
        let alphabet = self.alphabet.as_ref()?;
        match alphabet.index_of(symbol) {
            Ok(i) => Some(i),
            Err(_) => {
                out.push(Diagnostic::UnknownSymbol { at: at.to_string(), symbol: symbol.to_string() });
                None
            }
        }
    }
}

/// Lists every problem with a raw document; empty iff it can be built.
/// Non-canonical hesitant elements are reported as warnings.
pub fn validate(doc: &AutomatonDocument) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    validate_into(doc, &mut out);
    out
}

fn validate_into(doc: &AutomatonDocument, out: &mut Vec<Diagnostic>) {
    let alphabet = match Alphabet::new(&doc.alphabet) {
        Ok(a) => Some(a),
        Err(e) => {
            out.push(Diagnostic::InvalidAlphabet(e.to_string()));
            None
        }
    };
    if doc.kind == Kind::Decomposition {
        validate_decomposition(doc, out);
        return;
    }
    for (field, present) in [("levels", doc.levels.is_some())] {
        if present {
            out.push(Diagnostic::WrongShape { at: field.into(), message: format!("not allowed for kind {}", doc.kind) });
        }
    }
    let states = match &doc.states {
        None => {
            out.push(Diagnostic::InvalidStates("missing \"states\"".into()));
            None
        }
        Some(names) => match States::new(names) {
            Ok(s) => Some(s),
            Err(e) => {
                out.push(Diagnostic::InvalidStates(e.to_string()));
                None
            }
        },
    };
    let frame = Frame { states, alphabet };
    match &doc.initial {
        None => out.push(Diagnostic::WrongShape { at: "initial".into(), message: "missing initial state".into() }),
        Some(q) => {
            frame.state("initial", q, out);
        }
    }

    let deterministic = matches!(doc.kind, Kind::Dfa | Kind::Cdthfa);
    let weighted = doc.kind == Kind::Nthfa;
    let mut seen_pairs: HashSet<(usize, usize)> = HashSet::new();
    let mut seen_triples: HashSet<(usize, usize, usize)> = HashSet::new();
    for (i, t) in doc.transitions.iter().flatten().enumerate() {
        let at = format!("transitions[{i}]");
        let q = frame.state(&at, &t.from, out);
        let a = frame.symbol(&at, &t.symbol, out);
        let targets: Vec<&String> = match (&t.to, doc.kind) {
            (Target::One(p), Kind::Dfa | Kind::Cdthfa | Kind::Nthfa) => vec![p],
            (Target::Many(ps), Kind::Nfa | Kind::Cnthfa) => ps.iter().collect(),
            (Target::One(_), _) => {
                out.push(Diagnostic::WrongShape { at: at.clone(), message: "\"to\" must be a list of states".into() });
                continue;
            }
            (Target::Many(_), _) => {
                out.push(Diagnostic::WrongShape { at: at.clone(), message: "\"to\" must be a single state".into() });
                continue;
            }
        };
        let ps: Vec<Option<usize>> = targets.iter().map(|p| frame.state(&at, p, out)).collect();
        match (&t.value, weighted) {
            (Some(v), true) => {
                check_thfe(&format!("{at}.value"), v, out);
            }
            (None, true) => out.push(Diagnostic::WrongShape { at: at.clone(), message: "missing \"value\"".into() }),
            (Some(_), false) => out.push(Diagnostic::WrongShape {
                at: at.clone(),
                message: format!("\"value\" not allowed for kind {}", doc.kind),
            }),
            (None, false) => {}
        }
        if let (Some(q), Some(a)) = (q, a) {
            if weighted {
                if let Some(Some(p)) = ps.first() {
                    if !seen_triples.insert((q, a, *p)) {
                        out.push(Diagnostic::DuplicateTransition { at });
                    }
                }
            } else if !seen_pairs.insert((q, a)) {
                out.push(Diagnostic::DuplicateTransition { at });
            }
        }
    }
    if deterministic {
        if let (Some(states), Some(alphabet)) = (&frame.states, &frame.alphabet) {
            for q in 0..states.len() {
                for a in 0..alphabet.len() {
                    if !seen_pairs.contains(&(q, a)) {
                        out.push(Diagnostic::IncompleteTransition {
                            state: states.name(q).to_string(),
                            symbol: alphabet.symbol(a).to_string(),
                        });
                    }
                }
            }
        }
    }

    let crisp_finals = matches!(doc.kind, Kind::Dfa | Kind::Nfa);
    match (&doc.finals, crisp_finals) {
        (None, _) => {}
        (Some(FinalSpec::States(names)), true) => {
            let mut seen = HashSet::new();
            for name in names {
                frame.state("final", name, out);
                if !seen.insert(name) {
                    out.push(Diagnostic::WrongShape { at: "final".into(), message: format!("{name:?} listed twice") });
                }
            }
        }
        (Some(FinalSpec::Values(map)), false) => {
            for (name, value) in map {
                let at = format!("final.{name}");
                frame.state(&at, name, out);
                check_thfe(&at, value, out);
            }
        }
        (Some(FinalSpec::States(_)), false) => out.push(Diagnostic::WrongShape {
            at: "final".into(),
            message: "must map each state to a list of degrees".into(),
        }),
        (Some(FinalSpec::Values(_)), true) => {
            out.push(Diagnostic::WrongShape { at: "final".into(), message: "must be a list of state names".into() })
        }
    }
}

fn validate_decomposition(doc: &AutomatonDocument, out: &mut Vec<Diagnostic>) {
    for (field, present) in [
        ("states", doc.states.is_some()),
        ("initial", doc.initial.is_some()),
        ("transitions", doc.transitions.is_some()),
        ("final", doc.finals.is_some()),
    ] {
        if present {
            out.push(Diagnostic::WrongShape { at: field.into(), message: "not allowed for kind decomposition".into() });
        }
    }
    let mut keys = HashSet::new();
    for (i, level) in doc.levels.iter().flatten().enumerate() {
        let at = format!("levels[{i}]");
        if let Some(k) = check_thfe(&format!("{at}.k"), &level.k, out) {
            if !keys.insert(k) {
                out.push(Diagnostic::WrongShape { at: at.clone(), message: "duplicate level key".into() });
            }
        }
        if level.nfa.kind != Kind::Nfa {
            out.push(Diagnostic::WrongShape { at: format!("{at}.nfa"), message: "embedded automaton must be an nfa".into() });
            continue;
        }
        if level.nfa.alphabet != doc.alphabet {
            out.push(Diagnostic::WrongShape {
                at: format!("{at}.nfa"),
                message: "alphabet must match the decomposition's, in the same order".into(),
            });
        }
        out.extend(validate(&level.nfa).into_iter().map(|d| d.nested(&format!("{at}.nfa"))));
    }
}

fn parse_thfe_lenient(raw: &[String]) -> Result<Thfe> {
    Thfe::parse(raw)
}

fn build(doc: &AutomatonDocument) -> Result<Document> {
    let alphabet = Alphabet::new(&doc.alphabet)?;
    if doc.kind == Kind::Decomposition {
        let mut levels = Vec::new();
        for level in doc.levels.iter().flatten() {
            let k = parse_thfe_lenient(&level.k)?;
            match build(&level.nfa)? {
                Document::Nfa(nfa) => levels.push((k, nfa)),
                other => {
                    return Err(Error::WrongKind { expected: "nfa".into(), found: other.kind().to_string() });
                }
            }
        }
        return Ok(Document::Decomposition(LevelDecomposition::new(alphabet, levels)?));
    }

    let states = States::new(doc.states.as_deref().unwrap_or_default())?;
    let initial = states.index_of(doc.initial.as_deref().unwrap_or_default())?;
    let transitions = doc.transitions.as_deref().unwrap_or_default();
    let n = states.len();
    let k = alphabet.len();

    let crisp_finals = || -> Result<Vec<bool>> {
        let mut finals = vec![false; n];
        if let Some(FinalSpec::States(names)) = &doc.finals {
            for name in names {
                finals[states.index_of(name)?] = true;
            }
        }
        Ok(finals)
    };
    let hesitant_finals = || -> Result<Vec<Thfe>> {
        let mut finals = vec![Thfe::zero(); n];
        if let Some(FinalSpec::Values(map)) = &doc.finals {
            for (name, value) in map {
                finals[states.index_of(name)?] = parse_thfe_lenient(value)?;
            }
        }
        Ok(finals)
    };
    let one = |t: &RawTransition| -> Result<(usize, usize, usize)> {
        let Target::One(p) = &t.to else {
            return Err(Error::InvalidAutomaton("expected a single target".into()));
        };
        Ok((states.index_of(&t.from)?, alphabet.index_of(&t.symbol)?, states.index_of(p)?))
    };
    let many = || -> Result<Vec<Vec<Vec<usize>>>> {
        let mut delta = vec![vec![Vec::new(); k]; n];
        for t in transitions {
            let Target::Many(ps) = &t.to else {
                return Err(Error::InvalidAutomaton("expected a list of targets".into()));
            };
            let (q, a) = (states.index_of(&t.from)?, alphabet.index_of(&t.symbol)?);
            for p in ps {
                delta[q][a].push(states.index_of(p)?);
            }
        }
        Ok(delta)
    };
    let total = || -> Result<Vec<Vec<usize>>> {
        let mut delta = vec![vec![None; k]; n];
        for t in transitions {
            let (q, a, p) = one(t)?;
            delta[q][a] = Some(p);
        }
        delta
            .into_iter()
            .enumerate()
            .map(|(q, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(a, p)| {
                        p.ok_or_else(|| Error::IncompleteTransition {
                            state: states.name(q).to_string(),
                            symbol: alphabet.symbol(a).to_string(),
                        })
                    })
                    .collect()
            })
            .collect()
    };

    Ok(match doc.kind {
        Kind::Dfa => Document::Dfa(Dfa::new(states.clone(), alphabet.clone(), total()?, initial, crisp_finals()?)?),
        Kind::Nfa => Document::Nfa(Nfa::new(states.clone(), alphabet.clone(), many()?, initial, crisp_finals()?)?),
        Kind::Cdthfa => {
            Document::Cdthfa(Cdthfa::new(states.clone(), alphabet.clone(), total()?, initial, hesitant_finals()?)?)
        }
        Kind::Cnthfa => {
            Document::Cnthfa(Cnthfa::new(states.clone(), alphabet.clone(), many()?, initial, hesitant_finals()?)?)
        }
        Kind::Nthfa => {
            let mut edges = Vec::with_capacity(transitions.len());
            for t in transitions {
                let (q, a, p) = one(t)?;
                let value = t.value.as_deref().ok_or_else(|| Error::InvalidAutomaton("missing value".into()))?;
                edges.push((q, a, p, parse_thfe_lenient(value)?));
            }
            Document::Nthfa(Nthfa::new(states.clone(), alphabet.clone(), edges, initial, hesitant_finals()?)?)
        }
        Kind::Decomposition => unreachable!("handled above"),
    })
}

/// Reads JSON, validates it, and builds the typed document.
/// Fails on the first non-warning diagnostic.
pub fn parse_document(text: &str) -> Result<Parsed> {
    let raw: AutomatonDocument = serde_json::from_str(text)
        .map_err(|e| Error::SyntaxAt { line: e.line(), column: e.column(), message: e.to_string() })?;
    let diagnostics = validate(&raw);
    if let Some(fatal) = diagnostics.iter().find(|d| !d.is_warning()) {
        return Err(fatal.into());
    }
    Ok(Parsed { document: build(&raw)?, metadata: raw.metadata, warnings: diagnostics })
}

/// Validates without building; JSON errors still fail.
pub fn validate_text(text: &str) -> Result<Vec<Diagnostic>> {
    let raw: AutomatonDocument = serde_json::from_str(text)
        .map_err(|e| Error::SyntaxAt { line: e.line(), column: e.column(), message: e.to_string() })?;
    Ok(validate(&raw))
}

fn names(states: &States) -> Option<Vec<String>> {
    Some(states.names().to_vec())
}

fn hesitant_final_map(states: &States, finals: &[Thfe]) -> Option<FinalSpec> {
    Some(FinalSpec::Values(states.names().iter().cloned().zip(finals.iter().map(Thfe::to_strings)).collect()))
}

fn crisp_final_list(states: &States, is_final: impl Fn(usize) -> bool) -> Option<FinalSpec> {
    Some(FinalSpec::States((0..states.len()).filter(|&q| is_final(q)).map(|q| states.name(q).to_string()).collect()))
}

fn single_target(states: &States, alphabet: &Alphabet, next: impl Fn(usize, usize) -> usize) -> Vec<RawTransition> {
    let mut out = Vec::new();
    for q in 0..states.len() {
        for a in 0..alphabet.len() {
            out.push(RawTransition {
                from: states.name(q).to_string(),
                symbol: alphabet.symbol(a).to_string(),
                to: Target::One(states.name(next(q, a)).to_string()),
                value: None,
            });
        }
    }
    out
}

fn multi_target<'a>(
    states: &States,
    alphabet: &Alphabet,
    succ: impl Fn(usize, usize) -> &'a [usize],
) -> Vec<RawTransition> {
    let mut out = Vec::new();
    for q in 0..states.len() {
        for a in 0..alphabet.len() {
            let targets = succ(q, a);
            if !targets.is_empty() {
                out.push(RawTransition {
                    from: states.name(q).to_string(),
                    symbol: alphabet.symbol(a).to_string(),
                    to: Target::Many(targets.iter().map(|&p| states.name(p).to_string()).collect()),
                    value: None,
                });
            }
        }
    }
    out
}

/// Canonical raw form of a typed document.
pub fn to_raw(doc: &Document, metadata: Option<Map<String, Value>>) -> AutomatonDocument {
    let base = |kind: Kind, alphabet: &Alphabet| AutomatonDocument {
        kind,
        alphabet: alphabet.symbols().to_vec(),
        states: None,
        initial: None,
        transitions: None,
        finals: None,
        levels: None,
        metadata: metadata.clone(),
    };
    match doc {
        Document::Dfa(d) => AutomatonDocument {
            states: names(d.states()),
            initial: Some(d.states().name(d.initial()).to_string()),
            transitions: Some(single_target(d.states(), d.alphabet(), |q, a| d.next(q, a))),
            finals: crisp_final_list(d.states(), |q| d.is_final(q)),
            ..base(Kind::Dfa, d.alphabet())
        },
        Document::Nfa(n) => AutomatonDocument {
            states: names(n.states()),
            initial: Some(n.states().name(n.initial()).to_string()),
            transitions: Some(multi_target(n.states(), n.alphabet(), |q, a| n.successors(q, a))),
            finals: crisp_final_list(n.states(), |q| n.is_final(q)),
            ..base(Kind::Nfa, n.alphabet())
        },
        Document::Cdthfa(d) => AutomatonDocument {
            states: names(d.states()),
            initial: Some(d.states().name(d.initial()).to_string()),
            transitions: Some(single_target(d.states(), d.alphabet(), |q, a| d.next(q, a))),
            finals: hesitant_final_map(d.states(), d.finals()),
            ..base(Kind::Cdthfa, d.alphabet())
        },
        Document::Cnthfa(n) => AutomatonDocument {
            states: names(n.states()),
            initial: Some(n.states().name(n.initial()).to_string()),
            transitions: Some(multi_target(n.states(), n.alphabet(), |q, a| n.successors(q, a))),
            finals: hesitant_final_map(n.states(), n.finals()),
            ..base(Kind::Cnthfa, n.alphabet())
        },
        Document::Nthfa(m) => AutomatonDocument {
            states: names(m.states()),
            initial: Some(m.states().name(m.initial()).to_string()),
            transitions: Some(
                m.transitions()
                    .map(|(q, a, p, v)| RawTransition {
                        from: m.states().name(q).to_string(),
                        symbol: m.alphabet().symbol(a).to_string(),
                        to: Target::One(m.states().name(p).to_string()),
                        value: Some(v.to_strings()),
                    })
                    .collect(),
            ),
            finals: hesitant_final_map(m.states(), m.finals()),
            ..base(Kind::Nthfa, m.alphabet())
        },
        Document::Decomposition(l) => AutomatonDocument {
            levels: Some(
                l.levels()
                    .iter()
                    .map(|(k, nfa)| RawLevel { k: k.to_strings(), nfa: to_raw(&Document::Nfa(nfa.clone()), None) })
                    .collect(),
            ),
            ..base(Kind::Decomposition, l.alphabet())
        },
    }
}

/// Pretty-printed canonical JSON with a trailing newline.
pub fn render(raw: &AutomatonDocument) -> String {
    let mut text = serde_json::to_string_pretty(raw).expect("documents always serialize");
    text.push('\n');
    text
}

pub fn serialize_document(doc: &Document, metadata: Option<Map<String, Value>>) -> String {
    render(&to_raw(doc, metadata))
}

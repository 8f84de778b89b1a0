//! Complete DFAs and (possibly partial) NFAs over a named alphabet, with the
//! subset construction between them.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Separator between symbols in a textual word when tokens are longer than one character.
pub const SYMBOL_SEPARATOR: char = '.';

/// A finite, non-empty, ordered set of symbol tokens.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(symbols: &[S]) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        let mut index = HashMap::new();
        for (i, s) in symbols.iter().enumerate() {
            let s = s.as_ref();
            if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c == SYMBOL_SEPARATOR) {
                return Err(Error::InvalidAlphabet(format!(
                    "symbol {s:?} is empty or contains whitespace or {SYMBOL_SEPARATOR:?}"
                )));
            }
            if index.insert(s.to_string(), i).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {s:?}")));
            }
        }
        Ok(Alphabet { symbols: symbols.iter().map(|s| s.as_ref().to_string()).collect(), index })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, i: usize) -> &str {
        &self.symbols[i]
    }

    pub fn index_of(&self, symbol: &str) -> Result<usize> {
        self.index.get(symbol).copied().ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    /// Same symbol set, regardless of order.
    pub fn same_symbols(&self, other: &Alphabet) -> bool {
        self.len() == other.len() && other.symbols.iter().all(|s| self.index.contains_key(s))
    }

    pub fn check_compatible(&self, other: &Alphabet) -> Result<()> {
        if self.same_symbols(other) {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch { left: self.symbols.clone(), right: other.symbols.clone() })
        }
    }

    /// For each symbol of `self`, its index in `other`. Requires compatible alphabets.
    pub fn remap_into(&self, other: &Alphabet) -> Result<Vec<usize>> {
        self.check_compatible(other)?;
        self.symbols.iter().map(|s| other.index_of(s)).collect()
    }

    pub fn encode(&self, word: &Word) -> Result<Vec<usize>> {
        word.0.iter().map(|s| self.index_of(s)).collect()
    }

    pub fn decode(&self, symbols: &[usize]) -> Word {
        Word(symbols.iter().map(|&i| self.symbols[i].clone()).collect())
    }

    fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses the command-line word syntax: per character when every token is a
    /// single character, otherwise `.`-separated. The empty string is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        if text.is_empty() {
            return Ok(Word::empty());
        }
        let tokens: Vec<String> = if self.single_char() && !text.contains(SYMBOL_SEPARATOR) {
            text.chars().map(String::from).collect()
        } else {
            text.split(SYMBOL_SEPARATOR).map(str::to_string).collect()
        };
        let word = Word(tokens);
        self.encode(&word)?;
        Ok(word)
    }

    /// Inverse of [`Alphabet::parse_word`]; the empty word is written `λ`.
    pub fn format_word(&self, word: &Word) -> String {
        if word.is_empty() {
            "λ".to_string()
        } else if self.single_char() {
            word.0.concat()
        } else {
            word.0.join(".")
        }
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.symbols).finish()
    }
}

/// A finite word as a sequence of symbol tokens. The empty word is λ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<String>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_tokens<S: AsRef<str>>(tokens: &[S]) -> Self {
        Word(tokens.iter().map(|s| s.as_ref().to_string()).collect())
    }

    /// One token per character.
    pub fn from_chars(s: &str) -> Self {
        Word(s.chars().map(String::from).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Ordered, duplicate-free state names with a reverse index.
#[derive(Clone, PartialEq, Eq)]
pub struct States {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl States {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidAutomaton("no states".into()));
        }
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref();
            if n.is_empty() {
                return Err(Error::InvalidAutomaton("empty state name".into()));
            }
            if index.insert(n.to_string(), i).is_some() {
                return Err(Error::InvalidAutomaton(format!("duplicate state {n:?}")));
            }
        }
        Ok(States { names: names.iter().map(|n| n.as_ref().to_string()).collect(), index })
    }

    /// Builds from names that may collide, priming later duplicates until unique.
    pub(crate) fn dedup_names(names: Vec<String>) -> Self {
        let mut taken = HashSet::new();
        let names: Vec<String> = names
            .into_iter()
            .map(|n| {
                let n = fresh_name(&taken, &n);
                taken.insert(n.clone());
                n
            })
            .collect();
        States::new(&names).expect("names are unique and non-empty")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Canonical name of a subset: members in declaration order inside braces.
    pub fn subset_name(&self, subset: &[usize]) -> String {
        let members: Vec<&str> = subset.iter().map(|&i| self.name(i)).collect();
        format!("{{{}}}", members.join(","))
    }
}

impl fmt::Debug for States {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.names).finish()
    }
}

/// `base`, or `base` with primes appended, whichever is not yet taken.
pub(crate) fn fresh_name(taken: &HashSet<String>, base: &str) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Union of the successor sets of `set` on `symbol`, sorted.
pub(crate) fn step_set(delta: &[Vec<Vec<usize>>], set: &[usize], symbol: usize) -> Vec<usize> {
    let mut next: BTreeSet<usize> = BTreeSet::new();
    for &q in set {
        next.extend(delta[q][symbol].iter().copied());
    }
    next.into_iter().collect()
}

/// Reachable subset construction shared by NFA and crisp hesitant determinization.
/// Returns the subsets in BFS discovery order and the total transition table over them.
pub(crate) fn subset_construction(
    delta: &[Vec<Vec<usize>>],
    initial: usize,
    alphabet_len: usize,
) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut subsets: Vec<Vec<usize>> = vec![vec![initial]];
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::from([(vec![initial], 0)]);
    let mut table: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        let mut row = Vec::with_capacity(alphabet_len);
        for a in 0..alphabet_len {
            let next = step_set(delta, &subsets[id], a);
            let target = match ids.get(&next) {
                Some(&t) => t,
                None => {
                    let t = subsets.len();
                    ids.insert(next.clone(), t);
                    subsets.push(next);
                    queue.push_back(t);
                    t
                }
            };
            row.push(target);
        }
        // Rows are produced in id order because ids are assigned in queue order.
        debug_assert_eq!(table.len(), id);
        table.push(row);
    }
    (subsets, table)
}

fn sorted_targets(targets: &mut Vec<usize>) {
    targets.sort_unstable();
    targets.dedup();
}

/// Complete deterministic finite automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    states: States,
    alphabet: Alphabet,
    delta: Vec<Vec<usize>>,
    initial: usize,
    finals: Vec<bool>,
}

impl Dfa {
    /// `delta[q][a]` must be defined for every state and symbol.
    pub fn new(
        states: States,
        alphabet: Alphabet,
        delta: Vec<Vec<usize>>,
        initial: usize,
        finals: Vec<bool>,
    ) -> Result<Self> {
        let n = states.len();
        if initial >= n || finals.len() != n || delta.len() != n {
            return Err(Error::InvalidAutomaton("DFA tables do not match the state count".into()));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                let symbol = alphabet.symbol(row.len().min(alphabet.len() - 1)).to_string();
                return Err(Error::IncompleteTransition { state: states.name(q).to_string(), symbol });
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(Error::UnknownState(format!("#{t}")));
            }
        }
        Ok(Dfa { states, alphabet, delta, initial, finals })
    }

    /// Builds from named transitions; every (state, symbol) pair must appear exactly once.
    pub fn from_names<S: AsRef<str>>(
        states: &[S],
        alphabet: &[S],
        transitions: &[(S, S, S)],
        initial: &str,
        finals: &[S],
    ) -> Result<Self> {
        let states = States::new(states)?;
        let alphabet = Alphabet::new(alphabet)?;
        let mut delta: Vec<Vec<Option<usize>>> = vec![vec![None; alphabet.len()]; states.len()];
        for (from, symbol, to) in transitions {
            let (q, a, p) =
                (states.index_of(from.as_ref())?, alphabet.index_of(symbol.as_ref())?, states.index_of(to.as_ref())?);
            if delta[q][a].replace(p).is_some() {
                return Err(Error::InvalidAutomaton(format!(
                    "duplicate transition for {:?} on {:?}",
                    from.as_ref(),
                    symbol.as_ref()
                )));
            }
        }
        let mut table = Vec::with_capacity(states.len());
        for (q, row) in delta.into_iter().enumerate() {
            let mut full = Vec::with_capacity(alphabet.len());
            for (a, t) in row.into_iter().enumerate() {
                full.push(t.ok_or_else(|| Error::IncompleteTransition {
                    state: states.name(q).to_string(),
                    symbol: alphabet.symbol(a).to_string(),
                })?);
            }
            table.push(full);
        }
        let mut accepting = vec![false; states.len()];
        for f in finals {
            accepting[states.index_of(f.as_ref())?] = true;
        }
        let initial = states.index_of(initial)?;
        Dfa::new(states, alphabet, table, initial, accepting)
    }

    pub fn states(&self) -> &States {
        &self.states
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn next(&self, q: usize, symbol: usize) -> usize {
        self.delta[q][symbol]
    }

    pub fn extended_symbols(&self, q: usize, word: &[usize]) -> usize {
        word.iter().fold(q, |q, &a| self.delta[q][a])
    }

    /// State reached from `q` by reading `word`.
    pub fn extended(&self, q: usize, word: &Word) -> Result<usize> {
        Ok(self.extended_symbols(q, &self.alphabet.encode(word)?))
    }

    pub fn accepts_symbols(&self, word: &[usize]) -> bool {
        self.finals[self.extended_symbols(self.initial, word)]
    }

    pub fn accepts(&self, word: &Word) -> Result<bool> {
        Ok(self.accepts_symbols(&self.alphabet.encode(word)?))
    }

    /// View as an NFA with singleton successor sets.
    pub fn to_nfa(&self) -> Nfa {
        let delta = self.delta.iter().map(|row| row.iter().map(|&p| vec![p]).collect()).collect();
        Nfa {
            states: self.states.clone(),
            alphabet: self.alphabet.clone(),
            delta,
            initial: self.initial,
            finals: self.finals.clone(),
        }
    }
}

/// Nondeterministic finite automaton; successor sets may be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    states: States,
    alphabet: Alphabet,
    delta: Vec<Vec<Vec<usize>>>,
    initial: usize,
    finals: Vec<bool>,
}

impl Nfa {
    pub fn new(
        states: States,
        alphabet: Alphabet,
        mut delta: Vec<Vec<Vec<usize>>>,
        initial: usize,
        finals: Vec<bool>,
    ) -> Result<Self> {
        let n = states.len();
        if initial >= n || finals.len() != n || delta.len() != n {
            return Err(Error::InvalidAutomaton("NFA tables do not match the state count".into()));
        }
        for row in delta.iter_mut() {
            if row.len() != alphabet.len() {
                return Err(Error::InvalidAutomaton("NFA row does not cover the alphabet".into()));
            }
            for targets in row.iter_mut() {
                sorted_targets(targets);
                if let Some(&t) = targets.iter().find(|&&t| t >= n) {
                    return Err(Error::UnknownState(format!("#{t}")));
                }
            }
        }
        Ok(Nfa { states, alphabet, delta, initial, finals })
    }

    /// Builds from named edges `(from, symbol, to)`; missing pairs have no successors.
    pub fn from_names<S: AsRef<str>>(
        states: &[S],
        alphabet: &[S],
        edges: &[(S, S, S)],
        initial: &str,
        finals: &[S],
    ) -> Result<Self> {
        let states = States::new(states)?;
        let alphabet = Alphabet::new(alphabet)?;
        let mut delta = vec![vec![Vec::new(); alphabet.len()]; states.len()];
        for (from, symbol, to) in edges {
            let q = states.index_of(from.as_ref())?;
            let a = alphabet.index_of(symbol.as_ref())?;
            delta[q][a].push(states.index_of(to.as_ref())?);
        }
        let mut accepting = vec![false; states.len()];
        for f in finals {
            accepting[states.index_of(f.as_ref())?] = true;
        }
        let initial = states.index_of(initial)?;
        Nfa::new(states, alphabet, delta, initial, accepting)
    }

    pub fn states(&self) -> &States {
        &self.states
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn successors(&self, q: usize, symbol: usize) -> &[usize] {
        &self.delta[q][symbol]
    }

    /// States reachable from any member of `from` by reading `word`.
    pub fn extended_from_set(&self, from: &[usize], word: &[usize]) -> Vec<usize> {
        let mut current: Vec<usize> = from.to_vec();
        sorted_targets(&mut current);
        for &a in word {
            current = step_set(&self.delta, &current, a);
        }
        current
    }

    pub fn extended_symbols(&self, q: usize, word: &[usize]) -> Vec<usize> {
        self.extended_from_set(&[q], word)
    }

    /// Set of states reached from `q`; `{q}` for the empty word.
    pub fn extended(&self, q: usize, word: &Word) -> Result<Vec<usize>> {
        Ok(self.extended_symbols(q, &self.alphabet.encode(word)?))
    }

    pub fn accepts_symbols(&self, word: &[usize]) -> bool {
        self.extended_symbols(self.initial, word).iter().any(|&q| self.finals[q])
    }

    /// Accepts when the reached set meets the final states.
    pub fn accepts(&self, word: &Word) -> Result<bool> {
        Ok(self.accepts_symbols(&self.alphabet.encode(word)?))
    }

    /// Subset construction over subsets reachable from `{initial}`.
    /// The empty subset, when reachable, becomes a non-final sink named `{}`.
    pub fn to_dfa(&self) -> Dfa {
        let (subsets, table) = subset_construction(&self.delta, self.initial, self.alphabet.len());
        let finals = subsets.iter().map(|s| s.iter().any(|&q| self.finals[q])).collect();
        let names = subsets.iter().map(|s| self.states.subset_name(s)).collect();
        Dfa::new(States::dedup_names(names), self.alphabet.clone(), table, 0, finals)
            .expect("subset construction yields a complete DFA")
    }
}

pub fn dfa_extended(d: &Dfa, q: usize, word: &Word) -> Result<usize> {
    d.extended(q, word)
}

pub fn dfa_accepts(d: &Dfa, word: &Word) -> Result<bool> {
    d.accepts(word)
}

pub fn nfa_extended(n: &Nfa, q: usize, word: &Word) -> Result<Vec<usize>> {
    n.extended(q, word)
}

pub fn nfa_accepts(n: &Nfa, word: &Word) -> Result<bool> {
    n.accepts(word)
}

pub fn nfa_to_dfa(n: &Nfa) -> Dfa {
    n.to_dfa()
}

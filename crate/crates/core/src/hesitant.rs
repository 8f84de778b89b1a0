//! Hesitant fuzzy automata: THFE-weighted (NTHFA), crisp nondeterministic (CNTHFA)
//! and crisp deterministic (CDTHFA), all with THFE-valued final maps.

use std::collections::{HashMap, VecDeque};

use crate::classic::{step_set, Alphabet, States, Word};
use crate::error::{Error, Result};
use crate::hfe::{sup_combination_n, Thfe};

/// Anything that assigns a hesitant element to every word over an alphabet.
pub trait HesitantLanguage {
    fn alphabet(&self) -> &Alphabet;

    /// Value of an already-encoded word. Symbols must be valid indices.
    fn eval_symbols(&self, word: &[usize]) -> Thfe;

    fn eval(&self, word: &Word) -> Result<Thfe> {
        Ok(self.eval_symbols(&self.alphabet().encode(word)?))
    }
}

type Row<T> = Vec<Vec<T>>;

fn check_finals(states: &States, finals: &[Thfe]) -> Result<()> {
    if finals.len() != states.len() {
        return Err(Error::InvalidAutomaton("final map does not cover every state".into()));
    }
    Ok(())
}

fn named_finals<S: AsRef<str>>(states: &States, finals: &[(S, &[S])]) -> Result<Vec<Thfe>> {
    let mut out = vec![Thfe::zero(); states.len()];
    for (q, value) in finals {
        out[states.index_of(q.as_ref())?] = Thfe::parse(value)?;
    }
    Ok(out)
}

/// Nondeterministic typical hesitant fuzzy automaton.
///
/// `psi` is kept sparse: only entries different from `{0}` are stored, since `{0}`
/// annihilates under `⊗` and is neutral under `⊔`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nthfa {
    states: States,
    alphabet: Alphabet,
    psi: Row<Vec<(usize, Thfe)>>,
    initial: usize,
    finals: Vec<Thfe>,
}

impl Nthfa {
    /// `transitions` are `(from, symbol, to, value)` index tuples; each triple at most once.
    pub fn new(
        states: States,
        alphabet: Alphabet,
        transitions: impl IntoIterator<Item = (usize, usize, usize, Thfe)>,
        initial: usize,
        finals: Vec<Thfe>,
    ) -> Result<Self> {
        let n = states.len();
        if initial >= n {
            return Err(Error::UnknownState(format!("#{initial}")));
        }
        check_finals(&states, &finals)?;
        let mut psi: Row<Vec<(usize, Thfe)>> = vec![vec![Vec::new(); alphabet.len()]; n];
        let mut seen = std::collections::HashSet::new();
        for (q, a, p, value) in transitions {
            if q >= n || p >= n {
                return Err(Error::UnknownState(format!("#{}", q.max(p))));
            }
            if a >= alphabet.len() {
                return Err(Error::UnknownSymbol(format!("#{a}")));
            }
            if !seen.insert((q, a, p)) {
                return Err(Error::InvalidAutomaton(format!(
                    "duplicate transition {} --{}--> {}",
                    states.name(q),
                    alphabet.symbol(a),
                    states.name(p)
                )));
            }
            if !value.is_zero() {
                psi[q][a].push((p, value));
            }
        }
        for row in psi.iter_mut() {
            for edges in row.iter_mut() {
                edges.sort_by_key(|(p, _)| *p);
            }
        }
        Ok(Nthfa { states, alphabet, psi, initial, finals })
    }

    /// Builds from literal names and degree strings. Missing finals default to `{0}`.
    pub fn from_names<S: AsRef<str>>(
        states: &[S],
        alphabet: &[S],
        transitions: &[(S, S, S, &[S])],
        initial: &str,
        finals: &[(S, &[S])],
    ) -> Result<Self> {
        let states = States::new(states)?;
        let alphabet = Alphabet::new(alphabet)?;
        let mut edges = Vec::with_capacity(transitions.len());
        for (q, a, p, value) in transitions {
            edges.push((
                states.index_of(q.as_ref())?,
                alphabet.index_of(a.as_ref())?,
                states.index_of(p.as_ref())?,
                Thfe::parse(value)?,
            ));
        }
        let finals = named_finals(&states, finals)?;
        let initial = states.index_of(initial)?;
        Nthfa::new(states, alphabet, edges, initial, finals)
    }

    pub fn states(&self) -> &States {
        &self.states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn finals(&self) -> &[Thfe] {
        &self.finals
    }

    pub fn final_value(&self, q: usize) -> &Thfe {
        &self.finals[q]
    }

    /// Non-`{0}` transitions leaving `q` on `symbol`, sorted by target.
    pub fn edges(&self, q: usize, symbol: usize) -> &[(usize, Thfe)] {
        &self.psi[q][symbol]
    }

    /// `ψ(q, a, p)`, `{0}` when absent.
    pub fn psi(&self, q: usize, symbol: usize, p: usize) -> Thfe {
        self.psi[q][symbol]
            .iter()
            .find(|(t, _)| *t == p)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Thfe::zero)
    }

    /// Every stored transition as `(from, symbol, to, value)`.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize, &Thfe)> + '_ {
        self.psi.iter().enumerate().flat_map(|(q, row)| {
            row.iter().enumerate().flat_map(move |(a, edges)| edges.iter().map(move |(p, v)| (q, a, *p, v)))
        })
    }

    /// True when every transition value is `{0}` or `{1}`.
    pub fn is_zero_one(&self) -> bool {
        self.transitions().all(|(_, _, _, v)| v.is_one())
    }

    /// `ψ̂(q, w, q2)`, by folding a state-value vector once per symbol.
    pub fn psi_hat(&self, q: usize, word: &Word, target: usize) -> Result<Thfe> {
        if q >= self.states.len() {
            return Err(Error::UnknownState(format!("#{q}")));
        }
        if target >= self.states.len() {
            return Err(Error::UnknownState(format!("#{target}")));
        }
        let word = self.alphabet.encode(word)?;
        let v = word.iter().fold(StateValueVector::unit(self.states.len(), q), |v, &a| v.step(self, a));
        Ok(v.values()[target].clone())
    }

    pub(crate) fn with_alphabet_order(&self, alphabet: &Alphabet) -> Result<Nthfa> {
        let map = alphabet.remap_into(&self.alphabet)?;
        let psi = self.psi.iter().map(|row| map.iter().map(|&a| row[a].clone()).collect()).collect();
        Ok(Nthfa { psi, alphabet: alphabet.clone(), ..self.clone() })
    }
}

impl HesitantLanguage for Nthfa {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// `⊔_q ψ̂(q0, w, q) ⊗ F(q)`.
    fn eval_symbols(&self, word: &[usize]) -> Thfe {
        StateValueVector::run(self, word).value(self)
    }
}

/// Values `ψ̂(q0, w, ·)` for a fixed prefix `w`, one per state.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateValueVector(Vec<Thfe>);

impl StateValueVector {
    /// `{1}` at `q`, `{0}` elsewhere: the vector for the empty word.
    pub fn unit(len: usize, q: usize) -> Self {
        let mut v = vec![Thfe::zero(); len];
        v[q] = Thfe::one();
        StateValueVector(v)
    }

    pub fn initial(m: &Nthfa) -> Self {
        Self::unit(m.states.len(), m.initial)
    }

    pub fn run(m: &Nthfa, word: &[usize]) -> Self {
        word.iter().fold(Self::initial(m), |v, &a| v.step(m, a))
    }

    pub fn values(&self) -> &[Thfe] {
        &self.0
    }

    /// One symbol of the recursion: `V'(p) = ⊔_q V(q) ⊗ ψ(q, a, p)`.
    pub fn step(&self, m: &Nthfa, symbol: usize) -> Self {
        let mut next = vec![Thfe::zero(); self.0.len()];
        for (q, vq) in self.0.iter().enumerate() {
            if vq.is_zero() {
                continue;
            }
            for (p, weight) in &m.psi[q][symbol] {
                next[*p] = next[*p].sup(&vq.inf(weight));
            }
        }
        StateValueVector(next)
    }

    /// `⊔_q V(q) ⊗ F(q)`.
    pub fn value(&self, m: &Nthfa) -> Thfe {
        self.0
            .iter()
            .zip(&m.finals)
            .fold(Thfe::zero(), |acc, (v, f)| if v.is_zero() { acc } else { acc.sup(&v.inf(f)) })
    }
}

/// The deterministic automaton whose states are the state-value vectors reachable
/// from the empty word, discovered breadth-first with symbols in alphabet order.
#[derive(Clone, Debug)]
pub struct VectorAutomaton {
    pub vectors: Vec<StateValueVector>,
    /// `table[i][a]` is the index of `vectors[i].step(a)`.
    pub table: Vec<Vec<usize>>,
    /// Language value attached to each vector.
    pub values: Vec<Thfe>,
}

impl VectorAutomaton {
    /// Saturates; fails once more than `budget` distinct vectors appear.
    pub fn build(m: &Nthfa, budget: usize) -> Result<Self> {
        let start = StateValueVector::initial(m);
        let mut ids: HashMap<StateValueVector, usize> = HashMap::from([(start.clone(), 0)]);
        let mut vectors = vec![start];
        let mut table: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let mut row = Vec::with_capacity(m.alphabet.len());
            for a in 0..m.alphabet.len() {
                let next = vectors[i].step(m, a);
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        if vectors.len() >= budget {
                            return Err(Error::ClosureBudgetExceeded { limit: budget });
                        }
                        let id = vectors.len();
                        ids.insert(next.clone(), id);
                        vectors.push(next);
                        queue.push_back(id);
                        id
                    }
                };
                row.push(id);
            }
            table.push(row);
        }
        let values = vectors.iter().map(|v| v.value(m)).collect();
        Ok(VectorAutomaton { vectors, table, values })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Length of the longest shortest word reaching a vector; every value of the
    /// language is taken on some word no longer than this.
    pub fn depth(&self) -> usize {
        let mut dist = vec![usize::MAX; self.len()];
        dist[0] = 0;
        // vectors are numbered in discovery order, so one forward pass suffices
        for i in 0..self.len() {
            for &j in &self.table[i] {
                if dist[j] == usize::MAX {
                    dist[j] = dist[i] + 1;
                }
            }
        }
        dist.into_iter().max().unwrap_or(0)
    }
}

/// Crisp nondeterministic hesitant automaton; successor sets may be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnthfa {
    states: States,
    alphabet: Alphabet,
    delta: Row<Vec<usize>>,
    initial: usize,
    finals: Vec<Thfe>,
}

impl Cnthfa {
    pub fn new(
        states: States,
        alphabet: Alphabet,
        mut delta: Row<Vec<usize>>,
        initial: usize,
        finals: Vec<Thfe>,
    ) -> Result<Self> {
        let n = states.len();
        if initial >= n {
            return Err(Error::UnknownState(format!("#{initial}")));
        }
        check_finals(&states, &finals)?;
        if delta.len() != n || delta.iter().any(|row| row.len() != alphabet.len()) {
            return Err(Error::InvalidAutomaton("transition table does not match states and alphabet".into()));
        }
        for targets in delta.iter_mut().flatten() {
            targets.sort_unstable();
            targets.dedup();
            if let Some(&t) = targets.iter().find(|&&t| t >= n) {
                return Err(Error::UnknownState(format!("#{t}")));
            }
        }
        Ok(Cnthfa { states, alphabet, delta, initial, finals })
    }

    pub fn from_names<S: AsRef<str>>(
        states: &[S],
        alphabet: &[S],
        edges: &[(S, S, S)],
        initial: &str,
        finals: &[(S, &[S])],
    ) -> Result<Self> {
        let states = States::new(states)?;
        let alphabet = Alphabet::new(alphabet)?;
        let mut delta = vec![vec![Vec::new(); alphabet.len()]; states.len()];
        for (q, a, p) in edges {
            delta[states.index_of(q.as_ref())?][alphabet.index_of(a.as_ref())?].push(states.index_of(p.as_ref())?);
        }
        let finals = named_finals(&states, finals)?;
        let initial = states.index_of(initial)?;
        Cnthfa::new(states, alphabet, delta, initial, finals)
    }

    pub fn states(&self) -> &States {
        &self.states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn finals(&self) -> &[Thfe] {
        &self.finals
    }

    pub fn successors(&self, q: usize, symbol: usize) -> &[usize] {
        &self.delta[q][symbol]
    }

    pub(crate) fn delta(&self) -> &[Vec<Vec<usize>>] {
        &self.delta
    }

    /// Same automaton started from another state.
    pub fn with_initial(&self, initial: usize) -> Result<Self> {
        if initial >= self.states.len() {
            return Err(Error::UnknownState(format!("#{initial}")));
        }
        Ok(Cnthfa { initial, ..self.clone() })
    }

    /// States reached from the initial state.
    pub fn reached(&self, word: &[usize]) -> Vec<usize> {
        word.iter().fold(vec![self.initial], |set, &a| step_set(&self.delta, &set, a))
    }
}

impl HesitantLanguage for Cnthfa {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// `⊔` of the final values over the reached set; `{0}` when the set is empty.
    fn eval_symbols(&self, word: &[usize]) -> Thfe {
        sup_combination_n(self.reached(word).iter().map(|&q| &self.finals[q]))
    }
}

/// Crisp deterministic hesitant automaton with a total transition function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cdthfa {
    states: States,
    alphabet: Alphabet,
    delta: Vec<Vec<usize>>,
    initial: usize,
    finals: Vec<Thfe>,
}

impl Cdthfa {
    pub fn new(
        states: States,
        alphabet: Alphabet,
        delta: Vec<Vec<usize>>,
        initial: usize,
        finals: Vec<Thfe>,
    ) -> Result<Self> {
        let n = states.len();
        if initial >= n {
            return Err(Error::UnknownState(format!("#{initial}")));
        }
        check_finals(&states, &finals)?;
        if delta.len() != n {
            return Err(Error::InvalidAutomaton("transition table does not match the state count".into()));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::IncompleteTransition {
                    state: states.name(q).to_string(),
                    symbol: alphabet.symbol(row.len().min(alphabet.len() - 1)).to_string(),
                });
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(Error::UnknownState(format!("#{t}")));
            }
        }
        Ok(Cdthfa { states, alphabet, delta, initial, finals })
    }

    pub fn from_names<S: AsRef<str>>(
        states: &[S],
        alphabet: &[S],
        edges: &[(S, S, S)],
        initial: &str,
        finals: &[(S, &[S])],
    ) -> Result<Self> {
        let states = States::new(states)?;
        let alphabet = Alphabet::new(alphabet)?;
        let mut delta: Vec<Vec<Option<usize>>> = vec![vec![None; alphabet.len()]; states.len()];
        for (q, a, p) in edges {
            let (q, a) = (states.index_of(q.as_ref())?, alphabet.index_of(a.as_ref())?);
            if delta[q][a].replace(states.index_of(p.as_ref())?).is_some() {
                return Err(Error::InvalidAutomaton(format!(
                    "duplicate transition for {:?} on {:?}",
                    states.name(q),
                    alphabet.symbol(a)
                )));
            }
        }
        let mut table = Vec::with_capacity(states.len());
        for (q, row) in delta.into_iter().enumerate() {
            let mut full = Vec::with_capacity(row.len());
            for (a, t) in row.into_iter().enumerate() {
                full.push(t.ok_or_else(|| Error::IncompleteTransition {
                    state: states.name(q).to_string(),
                    symbol: alphabet.symbol(a).to_string(),
                })?);
            }
            table.push(full);
        }
        let finals = named_finals(&states, finals)?;
        let initial = states.index_of(initial)?;
        Cdthfa::new(states, alphabet, table, initial, finals)
    }

    pub fn states(&self) -> &States {
        &self.states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn finals(&self) -> &[Thfe] {
        &self.finals
    }

    pub fn next(&self, q: usize, symbol: usize) -> usize {
        self.delta[q][symbol]
    }

    pub fn reached(&self, word: &[usize]) -> usize {
        word.iter().fold(self.initial, |q, &a| self.delta[q][a])
    }

    /// Same automaton with a different final map.
    pub fn with_finals(&self, finals: Vec<Thfe>) -> Result<Self> {
        check_finals(&self.states, &finals)?;
        Ok(Cdthfa { finals, ..self.clone() })
    }

    /// The same machine seen as a crisp nondeterministic one with singleton successor sets.
    pub fn to_cnthfa(&self) -> Cnthfa {
        let delta = self.delta.iter().map(|row| row.iter().map(|&p| vec![p]).collect()).collect();
        Cnthfa {
            states: self.states.clone(),
            alphabet: self.alphabet.clone(),
            delta,
            initial: self.initial,
            finals: self.finals.clone(),
        }
    }

    pub(crate) fn with_alphabet_order(&self, alphabet: &Alphabet) -> Result<Cdthfa> {
        let map = alphabet.remap_into(&self.alphabet)?;
        let delta = self.delta.iter().map(|row| map.iter().map(|&a| row[a]).collect()).collect();
        Ok(Cdthfa { delta, alphabet: alphabet.clone(), ..self.clone() })
    }
}

impl HesitantLanguage for Cdthfa {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn eval_symbols(&self, word: &[usize]) -> Thfe {
        self.finals[self.reached(word)].clone()
    }
}

/// Any of the three hesitant automaton classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HesitantAutomaton {
    Nthfa(Nthfa),
    Cnthfa(Cnthfa),
    Cdthfa(Cdthfa),
}

impl HesitantAutomaton {
    pub fn state_count(&self) -> usize {
        match self {
            HesitantAutomaton::Nthfa(m) => m.states().len(),
            HesitantAutomaton::Cnthfa(n) => n.states().len(),
            HesitantAutomaton::Cdthfa(d) => d.states().len(),
        }
    }
}

impl HesitantLanguage for HesitantAutomaton {
    fn alphabet(&self) -> &Alphabet {
        match self {
            HesitantAutomaton::Nthfa(m) => m.alphabet(),
            HesitantAutomaton::Cnthfa(n) => n.alphabet(),
            HesitantAutomaton::Cdthfa(d) => d.alphabet(),
        }
    }

    fn eval_symbols(&self, word: &[usize]) -> Thfe {
        match self {
            HesitantAutomaton::Nthfa(m) => m.eval_symbols(word),
            HesitantAutomaton::Cnthfa(n) => n.eval_symbols(word),
            HesitantAutomaton::Cdthfa(d) => d.eval_symbols(word),
        }
    }
}

impl From<Nthfa> for HesitantAutomaton {
    fn from(m: Nthfa) -> Self {
        HesitantAutomaton::Nthfa(m)
    }
}

impl From<Cnthfa> for HesitantAutomaton {
    fn from(n: Cnthfa) -> Self {
        HesitantAutomaton::Cnthfa(n)
    }
}

impl From<Cdthfa> for HesitantAutomaton {
    fn from(d: Cdthfa) -> Self {
        HesitantAutomaton::Cdthfa(d)
    }
}

pub fn psi_hat(m: &Nthfa, q: usize, word: &Word, target: usize) -> Result<Thfe> {
    m.psi_hat(q, word, target)
}

pub fn nthfa_eval(m: &Nthfa, word: &Word) -> Result<Thfe> {
    m.eval(word)
}

pub fn cnthfa_eval(n: &Cnthfa, word: &Word) -> Result<Thfe> {
    n.eval(word)
}

pub fn cdthfa_eval(d: &Cdthfa, word: &Word) -> Result<Thfe> {
    d.eval(word)
}

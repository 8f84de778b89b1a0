//! Closure constructions on hesitant automata: union, intersection, level-cut
//! decomposition and recomposition, crisp embedding, crispification,
//! determinization, and a decision procedure for language equivalence.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::classic::{fresh_name, subset_construction, Alphabet, Dfa, Nfa, States, Word};
use crate::error::{Error, Result};
use crate::hesitant::{Cdthfa, Cnthfa, HesitantAutomaton, HesitantLanguage, Nthfa, VectorAutomaton};
use crate::hfe::{sup_combination_n, Degree, Thfe, DEFAULT_BUDGET};

/// Outcome of an equivalence check. `counterexample` is set iff the languages differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    pub counterexample: Option<Word>,
}

impl EquivalenceVerdict {
    pub fn equal() -> Self {
        EquivalenceVerdict { equivalent: true, counterexample: None }
    }

    pub fn differ_at(word: Word) -> Self {
        EquivalenceVerdict { equivalent: false, counterexample: Some(word) }
    }
}

/// Renames the two state sets apart: names are kept when already disjoint,
/// otherwise every name gets an `L.` or `R.` prefix.
fn disjoint_names(left: &States, right: &States) -> (Vec<String>, Vec<String>) {
    let overlap = left.names().iter().any(|n| right.contains(n));
    if overlap {
        (
            left.names().iter().map(|n| format!("L.{n}")).collect(),
            right.names().iter().map(|n| format!("R.{n}")).collect(),
        )
    } else {
        (left.names().to_vec(), right.names().to_vec())
    }
}

/// Automaton for the pointwise `⊔` of two languages.
///
/// A fresh initial state copies the outgoing transitions of both initial states
/// and carries `F1(s0) ⊔ F2(p0)`; everything else is the disjoint sum.
pub fn union_nthfa(m1: &Nthfa, m2: &Nthfa) -> Result<Nthfa> {
    let m2 = m2.with_alphabet_order(m1.alphabet())?;
    let (left, right) = disjoint_names(m1.states(), m2.states());
    let taken: HashSet<String> = left.iter().chain(&right).cloned().collect();
    let fresh = fresh_name(&taken, "q_init");

    let offset_left = 1;
    let offset_right = 1 + left.len();
    let mut names = vec![fresh];
    names.extend(left);
    names.extend(right);
    let states = States::new(&names)?;

    let mut edges = Vec::new();
    for (q, a, p, v) in m1.transitions() {
        edges.push((q + offset_left, a, p + offset_left, v.clone()));
        if q == m1.initial() {
            edges.push((0, a, p + offset_left, v.clone()));
        }
    }
    for (q, a, p, v) in m2.transitions() {
        edges.push((q + offset_right, a, p + offset_right, v.clone()));
        if q == m2.initial() {
            edges.push((0, a, p + offset_right, v.clone()));
        }
    }

    let mut finals = vec![m1.final_value(m1.initial()).sup(m2.final_value(m2.initial()))];
    finals.extend(m1.finals().iter().cloned());
    finals.extend(m2.finals().iter().cloned());
    Nthfa::new(states, m1.alphabet().clone(), edges, 0, finals)
}

/// `f1(w) ⊔ f2(w)`, the reference value for [`union_nthfa`].
pub fn h_union_pointwise(f1: &impl HesitantLanguage, f2: &impl HesitantLanguage, word: &Word) -> Result<Thfe> {
    Ok(f1.eval(word)?.sup(&f2.eval(word)?))
}

/// `f1(w) ⊗ f2(w)`, the reference value for [`intersect_cdthfa`].
pub fn h_intersection_pointwise(
    f1: &impl HesitantLanguage,
    f2: &impl HesitantLanguage,
    word: &Word,
) -> Result<Thfe> {
    Ok(f1.eval(word)?.inf(&f2.eval(word)?))
}

/// Every value the automaton's language takes, with the default budget.
pub fn compute_range(m: &Nthfa) -> Result<BTreeSet<Thfe>> {
    compute_range_with_budget(m, DEFAULT_BUDGET)
}

pub fn compute_range_with_budget(m: &Nthfa, budget: usize) -> Result<BTreeSet<Thfe>> {
    Ok(VectorAutomaton::build(m, budget)?.values.into_iter().collect())
}

/// Thresholds transitions and final values at `k` over the original states:
/// an edge `q -a-> p` iff `k ⊑ ψ(q, a, p)`, final iff `k ⊑ F(q)`.
///
/// Recognises `{w : k ⊑ f(w)}` when `k` is a singleton. For larger `k` the order
/// does not split across `⊗` and `⊔`, and this may over- or under-approximate;
/// [`level_automaton`] is exact in all cases.
pub fn threshold_automaton(m: &Nthfa, k: &Thfe) -> Nfa {
    let n = m.states().len();
    let zero_passes = k.leq(&Thfe::zero());
    let mut delta = vec![vec![Vec::new(); m.alphabet().len()]; n];
    for (q, row) in delta.iter_mut().enumerate() {
        for (a, targets) in row.iter_mut().enumerate() {
            for p in 0..n {
                let passes = match m.edges(q, a).iter().find(|(t, _)| *t == p) {
                    Some((_, v)) => k.leq(v),
                    None => zero_passes,
                };
                if passes {
                    targets.push(p);
                }
            }
        }
    }
    let finals = m.finals().iter().map(|f| k.leq(f)).collect();
    Nfa::new(m.states().clone(), m.alphabet().clone(), delta, m.initial(), finals)
        .expect("same shape as the source automaton")
}

fn level_from_vectors(va: &VectorAutomaton, alphabet: &Alphabet, k: &Thfe) -> Nfa {
    let names: Vec<String> = (0..va.len()).map(|i| format!("v{i}")).collect();
    let finals = va.values.iter().map(|v| k.leq(v)).collect();
    Dfa::new(States::new(&names).expect("distinct names"), alphabet.clone(), va.table.clone(), 0, finals)
        .expect("vector automaton is complete")
        .to_nfa()
}

/// Automaton accepting exactly `{w : k ⊑ f(w)}`.
///
/// Built on the reachable state-value vectors: each vector determines `f` on every
/// word reaching it, so marking vectors whose value dominates `k` is exact. States
/// are named `v0, v1, ...` in breadth-first discovery order.
pub fn level_automaton(m: &Nthfa, k: &Thfe) -> Result<Nfa> {
    let va = VectorAutomaton::build(m, DEFAULT_BUDGET)?;
    Ok(level_from_vectors(&va, m.alphabet(), k))
}

/// A language given as finitely many `(k, A_k)` levels:
/// `f(w) = ⊔ { k : A_k accepts w }`, `{0}` when no level applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelDecomposition {
    alphabet: Alphabet,
    levels: Vec<(Thfe, Nfa)>,
}

impl LevelDecomposition {
    /// Keys must be distinct and every level must use exactly `alphabet` (same order).
    pub fn new(alphabet: Alphabet, levels: Vec<(Thfe, Nfa)>) -> Result<Self> {
        let mut keys = HashSet::new();
        for (k, nfa) in &levels {
            if !keys.insert(k) {
                return Err(Error::InvalidAutomaton(format!("duplicate level {k}")));
            }
            if nfa.alphabet().symbols() != alphabet.symbols() {
                return Err(Error::AlphabetMismatch {
                    left: alphabet.symbols().to_vec(),
                    right: nfa.alphabet().symbols().to_vec(),
                });
            }
        }
        Ok(LevelDecomposition { alphabet, levels })
    }

    pub fn levels(&self) -> &[(Thfe, Nfa)] {
        &self.levels
    }
}

impl HesitantLanguage for LevelDecomposition {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn eval_symbols(&self, word: &[usize]) -> Thfe {
        sup_combination_n(self.levels.iter().filter(|(_, nfa)| nfa.accepts_symbols(word)).map(|(k, _)| k))
    }
}

/// One level per value in the range, in ascending key order.
pub fn decompose(m: &Nthfa) -> Result<LevelDecomposition> {
    decompose_with_budget(m, DEFAULT_BUDGET)
}

pub fn decompose_with_budget(m: &Nthfa, budget: usize) -> Result<LevelDecomposition> {
    let va = VectorAutomaton::build(m, budget)?;
    let range: BTreeSet<&Thfe> = va.values.iter().collect();
    let levels = range.into_iter().map(|k| (k.clone(), level_from_vectors(&va, m.alphabet(), k))).collect();
    LevelDecomposition::new(m.alphabet().clone(), levels)
}

pub fn eval_decomposition(l: &LevelDecomposition, word: &Word) -> Result<Thfe> {
    l.eval(word)
}

/// Zero-one automaton valued `k` on `L(dfa)` and `{0}` elsewhere.
fn zero_one_level(dfa: &Dfa, k: &Thfe, prefix: &str) -> Nthfa {
    let names: Vec<String> = dfa.states().names().iter().map(|n| format!("{prefix}{n}")).collect();
    let mut edges = Vec::new();
    for q in 0..dfa.states().len() {
        for a in 0..dfa.alphabet().len() {
            edges.push((q, a, dfa.next(q, a), Thfe::one()));
        }
    }
    let finals = (0..dfa.states().len()).map(|q| if dfa.is_final(q) { k.clone() } else { Thfe::zero() }).collect();
    Nthfa::new(States::new(&names).expect("prefixed names stay distinct"), dfa.alphabet().clone(), edges, dfa.initial(), finals)
        .expect("built from a complete DFA")
}

/// Rebuilds a single automaton from levels: each level NFA is determinized, turned
/// into a zero-one automaton valued `k` on its language, and all are joined by
/// [`union_nthfa`]. The result is zero-one.
pub fn recompose(l: &LevelDecomposition) -> Result<Nthfa> {
    let mut parts = l
        .levels
        .iter()
        .enumerate()
        .map(|(i, (k, nfa))| zero_one_level(&nfa.to_dfa(), k, &format!("k{i}.")));
    let Some(first) = parts.next() else {
        return Nthfa::new(States::new(&["q0"])?, l.alphabet.clone(), Vec::new(), 0, vec![Thfe::zero()]);
    };
    parts.try_fold(first, |acc, m| union_nthfa(&acc, &m))
}

/// Weighted form of any hesitant automaton; crisp kinds are embedded.
pub fn to_nthfa(a: &HesitantAutomaton) -> Nthfa {
    match a {
        HesitantAutomaton::Nthfa(m) => m.clone(),
        HesitantAutomaton::Cnthfa(n) => embed_cnthfa(n),
        HesitantAutomaton::Cdthfa(d) => embed_cnthfa(&d.to_cnthfa()),
    }
}

/// The crisp automaton viewed as a zero-one NTHFA on the same states.
pub fn embed_cnthfa(n: &Cnthfa) -> Nthfa {
    let mut edges = Vec::new();
    for q in 0..n.states().len() {
        for a in 0..n.alphabet().len() {
            for &p in n.successors(q, a) {
                edges.push((q, a, p, Thfe::one()));
            }
        }
    }
    Nthfa::new(n.states().clone(), n.alphabet().clone(), edges, n.initial(), n.finals().to_vec())
        .expect("same shape as the source automaton")
}

/// Result of [`crispify_nthfa`]. `normalized` is set when the input was not
/// zero-one and was first rebuilt through decompose/recompose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crispified {
    pub automaton: Cnthfa,
    pub normalized: bool,
}

/// Crisp automaton with the same language and one extra sink state.
///
/// Non-zero-one inputs are normalized with `recompose(decompose(m))` first, so the
/// extra state is counted against the normalized automaton in that case.
pub fn crispify_nthfa(m: &Nthfa) -> Result<Crispified> {
    crispify_nthfa_with_budget(m, DEFAULT_BUDGET)
}

pub fn crispify_nthfa_with_budget(m: &Nthfa, budget: usize) -> Result<Crispified> {
    if m.is_zero_one() {
        return Ok(Crispified { automaton: crispify_zero_one(m), normalized: false });
    }
    let normal = recompose(&decompose_with_budget(m, budget)?)?;
    debug_assert!(normal.is_zero_one());
    Ok(Crispified { automaton: crispify_zero_one(&normal), normalized: true })
}

/// `{1}` edges are kept; any `{0}` entry of `ψ(q, a, ·)` routes to the sink, which
/// loops on every symbol and has final value `{0}`.
fn crispify_zero_one(m: &Nthfa) -> Cnthfa {
    let n = m.states().len();
    let sink = n;
    let taken: HashSet<String> = m.states().names().iter().cloned().collect();
    let mut names = m.states().names().to_vec();
    names.push(fresh_name(&taken, "__sink"));

    let mut delta = vec![vec![Vec::new(); m.alphabet().len()]; n + 1];
    for (q, row) in delta.iter_mut().enumerate().take(n) {
        for (a, targets) in row.iter_mut().enumerate() {
            targets.extend(m.edges(q, a).iter().map(|(p, _)| *p));
            if targets.len() < n {
                targets.push(sink);
            }
        }
    }
    for targets in delta[sink].iter_mut() {
        targets.push(sink);
    }
    let mut finals = m.finals().to_vec();
    finals.push(Thfe::zero());
    Cnthfa::new(States::new(&names).expect("fresh sink name"), m.alphabet().clone(), delta, m.initial(), finals)
        .expect("well-formed by construction")
}

/// Reachable subset construction; a subset's final value is the `⊔` of its members'
/// (`{0}` for the empty subset). State names follow [`States::subset_name`].
pub fn determinize_cnthfa(n: &Cnthfa) -> Cdthfa {
    let (subsets, table) = subset_construction(n.delta(), n.initial(), n.alphabet().len());
    let finals = subsets.iter().map(|s| sup_combination_n(s.iter().map(|&q| &n.finals()[q]))).collect();
    let names = subsets.iter().map(|s| n.states().subset_name(s)).collect();
    Cdthfa::new(States::dedup_names(names), n.alphabet().clone(), table, 0, finals)
        .expect("subset construction is complete")
}

/// Product on reachable pairs with final value `F1(q) ⊗ F2(p)`.
pub fn intersect_cdthfa(d1: &Cdthfa, d2: &Cdthfa) -> Result<Cdthfa> {
    let d2 = d2.with_alphabet_order(d1.alphabet())?;
    let k = d1.alphabet().len();
    let start = (d1.initial(), d2.initial());
    let mut pairs = vec![start];
    let mut ids = HashMap::from([(start, 0usize)]);
    let mut table = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (q, p) = pairs[i];
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let next = (d1.next(q, a), d2.next(p, a));
            let id = *ids.entry(next).or_insert_with(|| {
                pairs.push(next);
                queue.push_back(pairs.len() - 1);
                pairs.len() - 1
            });
            row.push(id);
        }
        table.push(row);
    }
    let names = pairs
        .iter()
        .map(|&(q, p)| format!("({},{})", d1.states().name(q), d2.states().name(p)))
        .collect();
    let finals = pairs.iter().map(|&(q, p)| d1.finals()[q].inf(&d2.finals()[p])).collect();
    Cdthfa::new(States::dedup_names(names), d1.alphabet().clone(), table, 0, finals)
}

/// Deterministic crisp form of any hesitant automaton: NTHFAs are crispified then
/// determinized, CNTHFAs determinized, CDTHFAs returned as they are.
pub fn to_cdthfa(a: &HesitantAutomaton) -> Result<Cdthfa> {
    to_cdthfa_with_budget(a, DEFAULT_BUDGET)
}

pub fn to_cdthfa_with_budget(a: &HesitantAutomaton, budget: usize) -> Result<Cdthfa> {
    match a {
        HesitantAutomaton::Nthfa(m) => Ok(determinize_cnthfa(&crispify_nthfa_with_budget(m, budget)?.automaton)),
        HesitantAutomaton::Cnthfa(n) => Ok(determinize_cnthfa(n)),
        HesitantAutomaton::Cdthfa(d) => Ok(d.clone()),
    }
}

/// Decides pointwise equality of two languages over the same alphabet.
///
/// Both sides are made deterministic and their product is explored breadth-first
/// with symbols in the first automaton's alphabet order, so the reported
/// counterexample is the first distinguishing word in length-lexicographic order.
pub fn equivalent(a: &HesitantAutomaton, b: &HesitantAutomaton) -> Result<EquivalenceVerdict> {
    equivalent_with_budget(a, b, DEFAULT_BUDGET)
}

pub fn equivalent_with_budget(a: &HesitantAutomaton, b: &HesitantAutomaton, budget: usize) -> Result<EquivalenceVerdict> {
    a.alphabet().check_compatible(b.alphabet())?;
    let d1 = to_cdthfa_with_budget(a, budget)?;
    let d2 = to_cdthfa_with_budget(b, budget)?.with_alphabet_order(d1.alphabet())?;
    let k = d1.alphabet().len();

    let start = (d1.initial(), d2.initial());
    // parent[i] = (predecessor pair index, symbol)
    let mut pairs = vec![start];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    let mut seen = HashMap::from([(start, 0usize)]);
    let mut head = 0;
    while head < pairs.len() {
        let (q, p) = pairs[head];
        if d1.finals()[q] != d2.finals()[p] {
            let mut symbols = Vec::new();
            let mut at = head;
            while let Some((prev, a)) = parent[at] {
                symbols.push(a);
                at = prev;
            }
            symbols.reverse();
            return Ok(EquivalenceVerdict::differ_at(d1.alphabet().decode(&symbols)));
        }
        for a in 0..k {
            let next = (d1.next(q, a), d2.next(p, a));
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(next) {
                e.insert(pairs.len());
                pairs.push(next);
                parent.push(Some((head, a)));
            }
        }
        head += 1;
    }
    Ok(EquivalenceVerdict::equal())
}

/// Two-state automaton whose every transition and final value is `x`;
/// its language is constantly `x` because `x ⊗ x = x ⊔ x = x`.
pub fn constant_automaton(x: &Thfe, alphabet: &Alphabet) -> Nthfa {
    let states = States::new(&["q0", "q1"]).expect("two fixed names");
    let mut edges = Vec::new();
    for q in 0..2 {
        for a in 0..alphabet.len() {
            for p in 0..2 {
                edges.push((q, a, p, x.clone()));
            }
        }
    }
    Nthfa::new(states, alphabet.clone(), edges, 0, vec![x.clone(), x.clone()]).expect("well-formed by construction")
}

/// `{1/(2^i + 1) : 0 ≤ i ≤ n}`: a language with infinite range, hence not
/// computed by any finite automaton. Depends only on the word length.
pub fn hyperbolic_value(len: usize) -> Thfe {
    let degrees = (0..=len).map(|i| {
        let denom = num_bigint::BigInt::from(1u8) << i;
        Degree::from_rational(num_rational::BigRational::new(1.into(), denom + 1)).expect("in (0, 1]")
    });
    Thfe::new(degrees).expect("non-empty")
}

pub fn hyperbolic_language_eval(word: &Word) -> Thfe {
    hyperbolic_value(word.len())
}

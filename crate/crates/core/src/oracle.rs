//! Brute-force references: literal recursion for `ψ̂` and exhaustive word
//! enumeration. Slow on purpose, and written without the vector fold or product
//! search that the efficient paths use.

use std::collections::BTreeSet;

use crate::classic::{Alphabet, Word};
use crate::constructions::EquivalenceVerdict;
use crate::error::{Error, Result};
use crate::hesitant::{HesitantLanguage, Nthfa, StateValueVector};
use crate::hfe::Thfe;

/// Default cap on word length for the exponential reference recursion.
pub const DEFAULT_REFERENCE_BOUND: usize = 6;

/// All words of length `0..=max_length`, shortest first, then lexicographic in
/// alphabet order. Yields encoded symbol indices.
#[derive(Clone, Debug)]
pub struct WordStream {
    symbols: usize,
    max_length: usize,
    next: Option<Vec<usize>>,
}

impl WordStream {
    pub fn new(alphabet: &Alphabet, max_length: usize) -> Self {
        Self::over(alphabet.len(), max_length)
    }

    pub fn over(symbols: usize, max_length: usize) -> Self {
        WordStream { symbols, max_length, next: Some(Vec::new()) }
    }

    /// `Σ_{i ≤ max} |Σ|^i`.
    pub fn count(symbols: usize, max_length: usize) -> usize {
        (0..=max_length).map(|i| symbols.pow(i as u32)).sum()
    }
}

impl Iterator for WordStream {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // odometer increment; on overflow move to the next length
        let mut i = succ.len();
        loop {
            if i == 0 {
                if succ.len() < self.max_length {
                    self.next = Some(vec![0; succ.len() + 1]);
                }
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.symbols {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    }
}

fn psi_hat_rec(m: &Nthfa, q: usize, word: &[usize], target: usize) -> Thfe {
    match word.split_last() {
        None => {
            if q == target {
                Thfe::one()
            } else {
                Thfe::zero()
            }
        }
        Some((&a, prefix)) => {
            let mut acc = Thfe::zero();
            for mid in 0..m.states().len() {
                let term = psi_hat_rec(m, q, prefix, mid).inf(&m.psi(mid, a, target));
                acc = acc.sup(&term);
            }
            acc
        }
    }
}

/// `ψ̂` by direct structural recursion on the word, with no memoization.
pub fn reference_psi_hat(m: &Nthfa, q: usize, word: &Word, target: usize) -> Result<Thfe> {
    reference_psi_hat_bounded(m, q, word, target, DEFAULT_REFERENCE_BOUND)
}

pub fn reference_psi_hat_bounded(m: &Nthfa, q: usize, word: &Word, target: usize, bound: usize) -> Result<Thfe> {
    if word.len() > bound {
        return Err(Error::WordTooLong { len: word.len(), max: bound });
    }
    for s in [q, target] {
        if s >= m.states().len() {
            return Err(Error::UnknownState(format!("#{s}")));
        }
    }
    Ok(psi_hat_rec(m, q, &m.alphabet().encode(word)?, target))
}

/// `⊔_q ψ̂(q0, w, q) ⊗ F(q)` through [`reference_psi_hat`].
pub fn reference_eval(m: &Nthfa, word: &Word) -> Result<Thfe> {
    reference_eval_bounded(m, word, DEFAULT_REFERENCE_BOUND)
}

pub fn reference_eval_bounded(m: &Nthfa, word: &Word, bound: usize) -> Result<Thfe> {
    if word.len() > bound {
        return Err(Error::WordTooLong { len: word.len(), max: bound });
    }
    let encoded = m.alphabet().encode(word)?;
    let mut acc = Thfe::zero();
    for q in 0..m.states().len() {
        acc = acc.sup(&psi_hat_rec(m, m.initial(), &encoded, q).inf(m.final_value(q)));
    }
    Ok(acc)
}

/// Values taken on words of length at most `max_length`. Every word is visited;
/// prefixes share their folded vector but nothing is merged.
pub fn empirical_range(m: &Nthfa, max_length: usize) -> BTreeSet<Thfe> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![(StateValueVector::initial(m), 0usize)];
    while let Some((v, len)) = stack.pop() {
        seen.insert(v.value(m));
        if len < max_length {
            for a in 0..m.alphabet().len() {
                stack.push((v.step(m, a), len + 1));
            }
        }
    }
    seen
}

/// Compares two languages on every word up to `max_length`; the counterexample is
/// the first mismatch in enumeration order over `a`'s alphabet.
pub fn languages_agree_up_to(
    a: &impl HesitantLanguage,
    b: &impl HesitantLanguage,
    max_length: usize,
) -> Result<EquivalenceVerdict> {
    a.alphabet().check_compatible(b.alphabet())?;
    for word in WordStream::new(a.alphabet(), max_length) {
        let word = a.alphabet().decode(&word);
        if a.eval(&word)? != b.eval(&word)? {
            return Ok(EquivalenceVerdict::differ_at(word));
        }
    }
    Ok(EquivalenceVerdict::equal())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{compute_range, constant_automaton};
    use crate::hesitant::fixtures::m1;

    fn h(raw: &[&str]) -> Thfe {
        Thfe::parse(raw).unwrap()
    }

    #[test]
    fn word_stream_order_and_count() {
        let words: Vec<Vec<usize>> = WordStream::over(2, 2).collect();
        assert_eq!(words, vec![vec![], vec![0], vec![1], vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(WordStream::over(3, 4).count(), WordStream::count(3, 4));
        assert_eq!(WordStream::count(3, 4), 1 + 3 + 9 + 27 + 81);
        assert_eq!(WordStream::over(2, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn reference_matches_fixture() {
        let m = m1();
        assert_eq!(reference_eval(&m, &Word::from_chars("a")).unwrap(), h(&["1/2", "3/5", "9/10"]));
        assert_eq!(reference_eval(&m, &Word::empty()).unwrap(), h(&["1/10"]));
        assert_eq!(reference_psi_hat(&m, 1, &Word::empty(), 1).unwrap(), Thfe::one());
        for word in WordStream::new(m.alphabet(), 4) {
            let word = m.alphabet().decode(&word);
            for q in 0..2 {
                for p in 0..2 {
                    assert_eq!(reference_psi_hat(&m, q, &word, p).unwrap(), m.psi_hat(q, &word, p).unwrap());
                }
            }
        }
        // a single symbol reduces to ψ itself
        for q in 0..2 {
            for p in 0..2 {
                assert_eq!(reference_psi_hat(&m, q, &Word::from_chars("a"), p).unwrap(), m.psi(q, 0, p));
            }
        }
    }

    #[test]
    fn reference_bound() {
        let m = m1();
        let long = Word::from_chars("aaaaaaa");
        assert_eq!(reference_eval(&m, &long), Err(Error::WordTooLong { len: 7, max: 6 }));
        assert!(reference_eval_bounded(&m, &long, 7).is_ok());
    }

    #[test]
    fn reference_constant() {
        let a = Alphabet::new(&["a", "b"]).unwrap();
        let x = h(&["1/4", "3/4"]);
        let m = constant_automaton(&x, &a);
        for word in WordStream::new(&a, 3) {
            assert_eq!(reference_eval(&m, &a.decode(&word)).unwrap(), x);
        }
        assert_eq!(empirical_range(&m, 3), BTreeSet::from([x]));
    }

    #[test]
    fn empirical_range_grows_to_range() {
        let m = m1();
        assert_eq!(empirical_range(&m, 0), BTreeSet::from([h(&["1/10"])]));
        let full = compute_range(&m).unwrap();
        let mut prev = BTreeSet::new();
        for len in 0..8 {
            let cur = empirical_range(&m, len);
            assert!(prev.is_subset(&cur));
            assert!(cur.is_subset(&full));
            prev = cur;
        }
        assert_eq!(prev, full);
    }

    #[test]
    fn agreement_examples() {
        let a = Alphabet::new(&["a"]).unwrap();
        let m = m1();
        assert!(languages_agree_up_to(&m, &m, 5).unwrap().equivalent);
        let half = constant_automaton(&h(&["1/2"]), &a);
        let third = constant_automaton(&h(&["1/3"]), &a);
        assert_eq!(languages_agree_up_to(&half, &third, 0).unwrap(), EquivalenceVerdict::differ_at(Word::empty()));
        let ab = Alphabet::new(&["a", "b"]).unwrap();
        assert!(languages_agree_up_to(&half, &constant_automaton(&h(&["1/2"]), &ab), 2).is_err());
    }
}

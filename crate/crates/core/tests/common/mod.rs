#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use thfa::{Alphabet, Cdthfa, Cnthfa, Degree, HesitantLanguage, Nthfa, States, Thfe};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const POOL: [(i64, i64); 5] = [(0, 1), (1, 4), (1, 2), (3, 4), (1, 1)];

/// Degrees with denominators up to 10, at most four of them.
pub fn fine_thfe(rng: &mut impl Rng) -> Thfe {
    let n = rng.gen_range(1..=4);
    Thfe::new((0..n).map(|_| {
        let d = rng.gen_range(1..=10);
        Degree::new(rng.gen_range(0..=d), d).unwrap()
    }))
    .unwrap()
}

/// At most three degrees from {0, 1/4, 1/2, 3/4, 1}.
pub fn pool_thfe(rng: &mut impl Rng) -> Thfe {
    let n = rng.gen_range(1..=3);
    Thfe::new(POOL.choose_multiple(rng, n).map(|&(p, q)| Degree::new(p, q).unwrap())).unwrap()
}

fn names(prefix: &str, n: usize) -> States {
    States::new(&(0..n).map(|i| format!("{prefix}{i}")).collect::<Vec<_>>()).unwrap()
}

pub fn alphabet(rng: &mut impl Rng) -> Alphabet {
    let k = rng.gen_range(1..=2);
    Alphabet::new(&["a", "b"][..k]).unwrap()
}

pub fn nthfa_over(rng: &mut impl Rng, sigma: &Alphabet) -> Nthfa {
    let n = rng.gen_range(1..=3);
    let mut edges = Vec::new();
    for q in 0..n {
        for a in 0..sigma.len() {
            for p in 0..n {
                if rng.gen_bool(0.6) {
                    edges.push((q, a, p, pool_thfe(rng)));
                }
            }
        }
    }
    let finals = (0..n).map(|_| pool_thfe(rng)).collect();
    Nthfa::new(names("q", n), sigma.clone(), edges, 0, finals).unwrap()
}

pub fn nthfa(rng: &mut impl Rng) -> Nthfa {
    let sigma = alphabet(rng);
    nthfa_over(rng, &sigma)
}

/// Transitions all `{1}`; finals arbitrary.
pub fn zero_one_nthfa(rng: &mut impl Rng) -> Nthfa {
    let sigma = alphabet(rng);
    let n = rng.gen_range(1..=3);
    let mut edges = Vec::new();
    for q in 0..n {
        for a in 0..sigma.len() {
            for p in 0..n {
                if rng.gen_bool(0.5) {
                    edges.push((q, a, p, Thfe::one()));
                }
            }
        }
    }
    let finals = (0..n).map(|_| pool_thfe(rng)).collect();
    Nthfa::new(names("q", n), sigma, edges, 0, finals).unwrap()
}

pub fn cnthfa(rng: &mut impl Rng) -> Cnthfa {
    let sigma = alphabet(rng);
    let n = rng.gen_range(1..=3);
    let delta = (0..n)
        .map(|_| (0..sigma.len()).map(|_| (0..n).filter(|_| rng.gen_bool(0.5)).collect()).collect())
        .collect();
    let finals = (0..n).map(|_| pool_thfe(rng)).collect();
    Cnthfa::new(names("q", n), sigma, delta, 0, finals).unwrap()
}

pub fn cdthfa_over(rng: &mut impl Rng, sigma: &Alphabet) -> Cdthfa {
    let n = rng.gen_range(1..=3);
    let delta = (0..n).map(|_| (0..sigma.len()).map(|_| rng.gen_range(0..n)).collect()).collect();
    let finals = (0..n).map(|_| pool_thfe(rng)).collect();
    Cdthfa::new(names("d", n), sigma.clone(), delta, 0, finals).unwrap()
}

/// Replaces one final value or one transition value with a fresh random one.
pub fn perturb(rng: &mut impl Rng, m: &Nthfa) -> Nthfa {
    let n = m.states().len();
    let mut finals = m.finals().to_vec();
    let mut edges: Vec<(usize, usize, usize, Thfe)> =
        m.transitions().map(|(q, a, p, v)| (q, a, p, v.clone())).collect();
    if rng.gen_bool(0.5) {
        let q = rng.gen_range(0..n);
        finals[q] = pool_thfe(rng);
    } else {
        let (q, a, p) = (rng.gen_range(0..n), rng.gen_range(0..m.alphabet().len()), rng.gen_range(0..n));
        edges.retain(|&(q2, a2, p2, _)| (q2, a2, p2) != (q, a, p));
        edges.push((q, a, p, pool_thfe(rng)));
    }
    Nthfa::new(m.states().clone(), m.alphabet().clone(), edges, m.initial(), finals).unwrap()
}

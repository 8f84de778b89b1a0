//! Typical hesitant fuzzy elements: finite non-empty sets of exact degrees in `[0, 1]`,
//! combined pointwise by `min` (inf-combination) and `max` (sup-combination).

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Longest fractional part accepted in a decimal degree literal.
pub const MAX_DECIMAL_DIGITS: usize = 18;

/// Default ceiling on the number of elements a closure or saturation may produce.
pub const DEFAULT_BUDGET: usize = 100_000;

/// An exact membership degree in the unit interval, kept in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(BigRational);

impl Degree {
    pub fn zero() -> Self {
        Degree(BigRational::zero())
    }

    pub fn one() -> Self {
        Degree(BigRational::one())
    }

    /// Builds `numer / denom`, rejecting anything outside `[0, 1]`.
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::Syntax(format!("zero denominator in {numer}/{denom}")));
        }
        Self::from_rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_rational(r: BigRational) -> Result<Self> {
        if r.is_negative() || r > BigRational::one() {
            return Err(Error::DegreeOutOfRange(r.to_string()));
        }
        Ok(Degree(r))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Ratio is always reduced, so integers print without "/1".
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_digits(s: &str, what: &str) -> Result<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Syntax(format!("invalid {what} in degree literal")));
    }
    Ok(s.parse::<BigInt>().expect("ascii digits parse"))
}

impl FromStr for Degree {
    type Err = Error;

    /// Accepts `p/q` or a decimal literal such as `0.375`; both are parsed exactly.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let value = if let Some((p, q)) = s.split_once('/') {
            let p = parse_digits(p.trim(), "numerator")?;
            let q = parse_digits(q.trim(), "denominator")?;
            if q.is_zero() {
                return Err(Error::Syntax(format!("zero denominator in {s:?}")));
            }
            BigRational::new(p, q)
        } else if let Some((int, frac)) = s.split_once('.') {
            if frac.len() > MAX_DECIMAL_DIGITS {
                return Err(Error::Syntax(format!(
                    "{s:?} has more than {MAX_DECIMAL_DIGITS} fractional digits"
                )));
            }
            let int = if int.is_empty() { BigInt::zero() } else { parse_digits(int, "integer part")? };
            let frac_val = parse_digits(frac, "fractional part")?;
            let scale = num_traits::pow(BigInt::from(10u32), frac.len());
            BigRational::new(int * &scale + frac_val, scale)
        } else {
            BigRational::from_integer(parse_digits(s, "integer")?)
        };
        Degree::from_rational(value).map_err(|_| Error::DegreeOutOfRange(s.to_string()))
    }
}

/// A typical hesitant fuzzy element: a strictly ascending, non-empty list of degrees.
///
/// Every constructor canonicalizes, so structural equality is set equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Thfe(Vec<Degree>);

impl Thfe {
    /// Sorts and deduplicates `raw`. Fails on an empty input.
    pub fn new(raw: impl IntoIterator<Item = Degree>) -> Result<Self> {
        let mut degrees: Vec<Degree> = raw.into_iter().collect();
        if degrees.is_empty() {
            return Err(Error::InvalidThfe("empty degree set".into()));
        }
        degrees.sort_unstable();
        degrees.dedup();
        Ok(Thfe(degrees))
    }

    /// Canonicalizes a list of literals, e.g. `["1/2", "0.25"]`.
    pub fn parse<S: AsRef<str>>(raw: &[S]) -> Result<Self> {
        let degrees = raw.iter().map(|s| s.as_ref().parse()).collect::<Result<Vec<Degree>>>()?;
        Thfe::new(degrees)
    }

    pub fn singleton(d: Degree) -> Self {
        Thfe(vec![d])
    }

    /// `{0}`, the identity of sup-combination and annihilator of inf-combination.
    pub fn zero() -> Self {
        Thfe::singleton(Degree::zero())
    }

    /// `{1}`, the identity of inf-combination and annihilator of sup-combination.
    pub fn one() -> Self {
        Thfe::singleton(Degree::one())
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)] // never empty
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// True for singletons, the embedding of ordinary fuzzy degrees.
    pub fn is_degenerate(&self) -> bool {
        self.0.len() == 1
    }

    fn combine(&self, other: &Thfe, pick: fn(&Degree, &Degree) -> Degree) -> Thfe {
        let mut out = Vec::with_capacity(self.0.len() * other.0.len());
        for x in &self.0 {
            for y in &other.0 {
                out.push(pick(x, y));
            }
        }
        out.sort_unstable();
        out.dedup();
        Thfe(out)
    }

    /// Inf-combination `X ⊗ Y = {x ∧ y}`.
    pub fn inf(&self, other: &Thfe) -> Thfe {
        if other.is_one() || self == other {
            return self.clone();
        }
        self.combine(other, |x, y| x.min(y).clone())
    }

    /// Sup-combination `X ⊔ Y = {x ∨ y}`.
    pub fn sup(&self, other: &Thfe) -> Thfe {
        if other.is_zero() || self == other {
            return self.clone();
        }
        self.combine(other, |x, y| x.max(y).clone())
    }

    /// `X ⊑ Y` iff `X ⊔ Y = Y`.
    pub fn leq(&self, other: &Thfe) -> bool {
        self.sup(other) == *other
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(Degree::to_string).collect()
    }
}

impl fmt::Display for Thfe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Thfe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Free functions mirroring the operator names used elsewhere in the crate.
pub fn canonicalize(raw: impl IntoIterator<Item = Degree>) -> Result<Thfe> {
    Thfe::new(raw)
}

pub fn inf_combination(x: &Thfe, y: &Thfe) -> Thfe {
    x.inf(y)
}

pub fn sup_combination(x: &Thfe, y: &Thfe) -> Thfe {
    x.sup(y)
}

/// N-ary sup-combination as a left fold; the empty family yields `{0}`.
pub fn sup_combination_n<'a>(family: impl IntoIterator<Item = &'a Thfe>) -> Thfe {
    family.into_iter().fold(Thfe::zero(), |acc, x| acc.sup(x))
}

pub fn leq(x: &Thfe, y: &Thfe) -> bool {
    x.leq(y)
}

pub fn is_degenerate(x: &Thfe) -> bool {
    x.is_degenerate()
}

/// Smallest superset of `seed` closed under `⊗` and `⊔`, with the default budget.
pub fn generated_closure(seed: &BTreeSet<Thfe>) -> Result<BTreeSet<Thfe>> {
    generated_closure_with_budget(seed, DEFAULT_BUDGET)
}

/// Worklist saturation. Every element of the closure is a subset of the union of
/// the seed's degrees, so it terminates; the budget only caps pathological sizes.
pub fn generated_closure_with_budget(seed: &BTreeSet<Thfe>, budget: usize) -> Result<BTreeSet<Thfe>> {
    let mut closed: BTreeSet<Thfe> = BTreeSet::new();
    let mut members: Vec<Thfe> = Vec::new();
    let mut pending: VecDeque<Thfe> = seed.iter().cloned().collect();
    while let Some(x) = pending.pop_front() {
        if closed.contains(&x) {
            continue;
        }
        if closed.len() >= budget {
            return Err(Error::ClosureBudgetExceeded { limit: budget });
        }
        closed.insert(x.clone());
        members.push(x.clone());
        for y in &members {
            for z in [x.inf(y), x.sup(y)] {
                if !closed.contains(&z) {
                    pending.push_back(z);
                }
            }
        }
    }
    Ok(closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h(raw: &[&str]) -> Thfe {
        Thfe::parse(raw).unwrap()
    }

    #[test]
    fn canonicalize_sorts_and_dedups() {
        assert_eq!(h(&["1/2", "1/2", "1/4"]).to_strings(), ["1/4", "1/2"]);
        assert_eq!(h(&["1"]).to_strings(), ["1"]);
        assert_eq!(h(&["9/10", "3/5", "3/5", "0"]).to_strings(), ["0", "3/5", "9/10"]);
    }

    #[test]
    fn canonicalize_errors() {
        assert!(matches!(Thfe::new(Vec::new()), Err(Error::InvalidThfe(_))));
        assert!(matches!(Thfe::parse(&["3/2"]), Err(Error::DegreeOutOfRange(_))));
        assert!(matches!(Thfe::parse(&["1.01"]), Err(Error::DegreeOutOfRange(_))));
    }

    #[test]
    fn degree_literals_parse_exactly() {
        let d: Degree = "0.3".parse().unwrap();
        assert_eq!(d, Degree::new(3, 10).unwrap());
        assert_eq!("0.5".parse::<Degree>().unwrap(), "1/2".parse().unwrap());
        assert_eq!("2/4".parse::<Degree>().unwrap().to_string(), "1/2");
        assert_eq!("1.000".parse::<Degree>().unwrap().to_string(), "1");
        assert_eq!("0".parse::<Degree>().unwrap().to_string(), "0");
        assert_eq!(".25".parse::<Degree>().unwrap().to_string(), "1/4");
        assert_eq!("0.123456789012345678".parse::<Degree>().unwrap().to_string(), "61728394506172839/500000000000000000");
        assert!("0.1234567890123456789".parse::<Degree>().is_err());
        assert!("-1/2".parse::<Degree>().is_err());
        assert!("1/0".parse::<Degree>().is_err());
        assert!("abc".parse::<Degree>().is_err());
        assert!("".parse::<Degree>().is_err());
    }

    #[test]
    fn combination_examples() {
        assert_eq!(h(&["3/10", "7/10"]).inf(&h(&["1/2"])), h(&["3/10", "1/2"]));
        assert_eq!(h(&["3/10", "7/10"]).sup(&h(&["1/2"])), h(&["1/2", "7/10"]));
        let x = h(&["1/5", "3/5", "1"]);
        assert_eq!(x.inf(&Thfe::one()), x);
        assert_eq!(x.inf(&Thfe::zero()), Thfe::zero());
        assert_eq!(x.sup(&Thfe::zero()), x);
        assert_eq!(x.sup(&Thfe::one()), Thfe::one());
    }

    #[test]
    fn n_ary_sup() {
        assert_eq!(sup_combination_n([]), Thfe::zero());
        assert_eq!(sup_combination_n([&h(&["1/5"])]), h(&["1/5"]));
        let fam = [h(&["1/5"]), h(&["2/5"]), h(&["3/10", "3/5"])];
        assert_eq!(sup_combination_n(&fam), h(&["2/5", "3/5"]));
    }

    #[test]
    fn order_examples() {
        assert!(h(&["3/10"]).leq(&h(&["3/10", "7/10"])));
        assert!(!h(&["1/2"]).leq(&h(&["3/10", "7/10"])));
        assert!(h(&["3/10", "7/10"]).leq(&h(&["3/10", "7/10"])));
        assert!(h(&["3/10", "7/10"]).leq(&h(&["7/10"])));
    }

    #[test]
    fn distributivity_and_inf_monotonicity_fail() {
        let (x, y, z) = (h(&["0", "1/2"]), h(&["1/4"]), h(&["1/2"]));
        assert_eq!(x.inf(&y.sup(&z)), h(&["0", "1/2"]));
        assert_eq!(x.inf(&y).sup(&x.inf(&z)), h(&["0", "1/4", "1/2"]));
        let (x, y, z) = (h(&["0", "1/2"]), h(&["0"]), h(&["1/4"]));
        assert_ne!(x.sup(&y.inf(&z)), x.sup(&y).inf(&x.sup(&z)));
        // {1/4} ⊑ {1/2}, yet meeting both with {0, 1/2} breaks the order
        let (lo, hi, z) = (h(&["1/4"]), h(&["1/2"]), h(&["0", "1/2"]));
        assert!(lo.leq(&hi));
        assert!(!lo.inf(&z).leq(&hi.inf(&z)));
    }

    #[test]
    fn degenerate_examples() {
        assert!(h(&["1/2"]).is_degenerate());
        assert!(!h(&["0", "1"]).is_degenerate());
        assert!(h(&["1"]).is_degenerate());
    }

    /// Independent closure: repeat full pairwise products until nothing changes.
    fn naive_closure(seed: &BTreeSet<Thfe>) -> BTreeSet<Thfe> {
        let mut set = seed.clone();
        loop {
            let snapshot: Vec<Thfe> = set.iter().cloned().collect();
            let mut grew = false;
            for a in &snapshot {
                for b in &snapshot {
                    grew |= set.insert(a.inf(b));
                    grew |= set.insert(a.sup(b));
                }
            }
            if !grew {
                return set;
            }
        }
    }

    #[test]
    fn closure_examples() {
        let seed: BTreeSet<Thfe> = [Thfe::zero(), Thfe::one()].into();
        assert_eq!(generated_closure(&seed).unwrap(), seed);
        assert_eq!(naive_closure(&seed), seed);

        let x = h(&["1/4", "3/4"]);
        let single: BTreeSet<Thfe> = [x].into();
        assert_eq!(generated_closure(&single).unwrap(), single);

        let degenerate: BTreeSet<Thfe> = [h(&["1/4"]), h(&["3/4"])].into();
        assert_eq!(generated_closure(&degenerate).unwrap(), degenerate);

        // {1/4,3/4} ⊗ {1/2} = {1/4,1/2}, ⊔ gives {1/2,3/4};
        // then {1/4,3/4} ⊔ {1/4,1/2} = {1/4,1/2,3/4}.
        let mixed: BTreeSet<Thfe> = [h(&["1/4", "3/4"]), h(&["1/2"])].into();
        let expected: BTreeSet<Thfe> = [
            h(&["1/4", "3/4"]),
            h(&["1/2"]),
            h(&["1/4", "1/2"]),
            h(&["1/2", "3/4"]),
            h(&["1/4", "1/2", "3/4"]),
        ]
        .into();
        assert_eq!(naive_closure(&mixed), expected);
        assert_eq!(generated_closure(&mixed).unwrap(), expected);
    }

    #[test]
    fn closure_budget_is_enforced() {
        let mixed: BTreeSet<Thfe> = [h(&["1/4", "3/4"]), h(&["1/2"])].into();
        assert!(matches!(
            generated_closure_with_budget(&mixed, 3),
            Err(Error::ClosureBudgetExceeded { limit: 3 })
        ));
    }

    #[test]
    fn display_format() {
        assert_eq!(h(&["9/10", "1/2", "0.6"]).to_string(), "{1/2, 3/5, 9/10}");
    }

    fn arb_degree() -> impl Strategy<Value = Degree> {
        (1i64..=10).prop_flat_map(|d| (0..=d).prop_map(move |n| Degree::new(n, d).unwrap()))
    }

    fn arb_thfe() -> impl Strategy<Value = Thfe> {
        prop::collection::vec(arb_degree(), 1..=4).prop_map(|v| Thfe::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn canonicalize_is_idempotent(x in arb_thfe()) {
            prop_assert_eq!(Thfe::new(x.degrees().to_vec()).unwrap(), x.clone());
            prop_assert!(x.degrees().windows(2).all(|w| w[0] < w[1]));
        }

        #[test]
        fn inf_size_and_support(x in arb_thfe(), y in arb_thfe()) {
            let z = x.inf(&y);
            prop_assert!(z.len() <= x.len() * y.len());
            for d in z.degrees() {
                prop_assert!(x.degrees().contains(d) || y.degrees().contains(d));
            }
        }

        #[test]
        fn closure_matches_naive(a in arb_thfe(), b in arb_thfe(), c in arb_thfe()) {
            let seed: BTreeSet<Thfe> = [a, b, c].into();
            let closed = generated_closure(&seed).unwrap();
            prop_assert!(seed.is_subset(&closed));
            prop_assert_eq!(closed, naive_closure(&seed));
        }

        #[test]
        fn monoid_laws(x in arb_thfe(), y in arb_thfe(), z in arb_thfe()) {
            prop_assert_eq!(x.inf(&y), y.inf(&x));
            prop_assert_eq!(x.sup(&y), y.sup(&x));
            prop_assert_eq!(x.inf(&y).inf(&z), x.inf(&y.inf(&z)));
            prop_assert_eq!(x.sup(&y).sup(&z), x.sup(&y.sup(&z)));
            prop_assert_eq!(x.inf(&x), x.clone());
            prop_assert_eq!(x.sup(&x), x.clone());
            prop_assert_eq!(x.inf(&Thfe::one()), x.clone());
            prop_assert_eq!(x.sup(&Thfe::zero()), x.clone());
            prop_assert_eq!(x.inf(&Thfe::zero()), Thfe::zero());
            prop_assert_eq!(x.sup(&Thfe::one()), Thfe::one());
        }

        #[test]
        fn order_laws(x in arb_thfe(), y in arb_thfe(), z in arb_thfe()) {
            let above = x.sup(&y);
            prop_assert!(x.leq(&above) && y.leq(&above));
            prop_assert!(x.sup(&z).leq(&above.sup(&z)));
            prop_assert!(x.leq(&x.inf(&above)));
            prop_assert!(Thfe::zero().leq(&x) && x.leq(&Thfe::one()));
            if x.leq(&z) && y.leq(&z) {
                prop_assert!(above.leq(&z));
            }
            if x.leq(&y) && y.leq(&x) {
                prop_assert_eq!(x, y);
            }
        }

        #[test]
        fn display_parse_round_trip(x in arb_thfe()) {
            prop_assert_eq!(Thfe::parse(&x.to_strings()).unwrap(), x);
        }
    }
}

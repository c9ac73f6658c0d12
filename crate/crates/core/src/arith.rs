//! Exact rational arithmetic and parabolic weight systems.
//!
//! All weights, degrees and slopes in this crate are [`Rat`] values: reduced
//! fractions with arbitrary-precision integer parts. The module also houses
//! the two genericity certifications for weight systems (the sub-multiset
//! integer-sum criterion and the per-puncture selection criterion) and the
//! translation from SU(n) conjugacy-class data to parabolic weights.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::{Error, Result};

/// An exact rational number in canonical form: reduced, denominator positive.
///
/// Serialized as the string `"p/q"`, with `"0/1"` for zero; integers keep an
/// explicit denominator of one.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: i64, denom: i64) -> Rat {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_int(n: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Reduction mod 1 into `[0, 1)`.
    pub fn fract_mod1(&self) -> Rat {
        Rat(&self.0 - BigRational::from_integer(self.0.floor().to_integer()))
    }

    /// Multiply by an integer.
    pub fn scale(&self, n: i64) -> Rat {
        Rat(&self.0 * BigRational::from_integer(BigInt::from(n)))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rat> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let numer = BigInt::from_str(n).map_err(|_| Error::ParseRational(s.to_string()))?;
        let denom = BigInt::from_str(d).map_err(|_| Error::ParseRational(s.to_string()))?;
        if denom.is_zero() {
            return Err(Error::ParseRational(format!("{s}: zero denominator")));
        }
        Ok(Rat(BigRational::new(numer, denom)))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(deserializer)?;
        Rat::from_str(&s).map_err(de::Error::custom)
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat(&self.0 $op &rhs.0)
            }
        }
        impl<'a> $trait<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat(self.0 $op &rhs.0)
            }
        }
    };
}

rat_binop!(Add, add, +);
rat_binop!(Sub, sub, -);
rat_binop!(Mul, mul, *);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn div(self, rhs: &'a Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Rat {
    fn sub_assign(&mut self, rhs: Rat) {
        self.0 -= rhs.0;
    }
}

impl<'a> std::iter::Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        let mut acc = BigRational::zero();
        for r in iter {
            acc += &r.0;
        }
        Rat(acc)
    }
}

impl std::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        let mut acc = BigRational::zero();
        for r in iter {
            acc += r.0;
        }
        Rat(acc)
    }
}

/// Convenience constructor used pervasively in tests: `rat(1, 12)` is `1/12`.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(numer, denom)
}

/// A weight with its multiplicity at one puncture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub weight: Rat,
    pub multiplicity: usize,
}

/// Per-puncture sorted parabolic weights with multiplicities for rank `n`
/// over `d` punctures. At every puncture the weights are strictly increasing,
/// lie in `[0, 1)`, and their multiplicities sum to `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    rank: usize,
    punctures: Vec<Vec<WeightEntry>>,
}

impl WeightSystem {
    /// Build from per-puncture weight lists given with repetition (any order).
    pub fn new(rank: usize, per_puncture: Vec<Vec<Rat>>) -> Result<WeightSystem> {
        if rank == 0 {
            return Err(Error::Invariant("weight system rank must be positive".into()));
        }
        let mut punctures = Vec::with_capacity(per_puncture.len());
        for (j, mut list) in per_puncture.into_iter().enumerate() {
            if list.len() != rank {
                return Err(Error::Invariant(format!(
                    "puncture {j}: expected {rank} weights, got {}",
                    list.len()
                )));
            }
            list.sort();
            let mut entries: Vec<WeightEntry> = Vec::new();
            for w in list {
                if w.is_negative() || w >= Rat::one() {
                    return Err(Error::Invariant(format!(
                        "puncture {j}: weight {w} outside [0, 1)"
                    )));
                }
                match entries.last_mut() {
                    Some(e) if e.weight == w => e.multiplicity += 1,
                    _ => entries.push(WeightEntry { weight: w, multiplicity: 1 }),
                }
            }
            punctures.push(entries);
        }
        Ok(WeightSystem { rank, punctures })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_punctures(&self) -> usize {
        self.punctures.len()
    }

    pub fn puncture(&self, j: usize) -> &[WeightEntry] {
        &self.punctures[j]
    }

    /// All weights of one puncture, with repetition, sorted increasing.
    pub fn puncture_list(&self, j: usize) -> Vec<Rat> {
        self.punctures[j]
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.weight.clone(), e.multiplicity))
            .collect()
    }

    /// The full multiset of weights over all punctures, with repetition.
    pub fn full_multiset(&self) -> Vec<Rat> {
        (0..self.num_punctures()).flat_map(|j| self.puncture_list(j)).collect()
    }

    /// True iff every puncture has `rank` distinct weights.
    pub fn check_distinct(&self) -> bool {
        self.punctures.iter().all(|p| p.len() == self.rank)
    }

    /// The sufficient genericity criterion: no nonempty sub-multiset of the
    /// full weight multiset sums to an integer. The full multiset itself is
    /// included in the search, which only makes the criterion more
    /// conservative.
    pub fn check_generic_subset_sum(&self) -> bool {
        self.integral_submultiset().is_none()
    }

    /// Search for a nonempty sub-multiset with integral sum, returning the
    /// offending weights if one exists. Meet-in-the-middle over integer
    /// residues after clearing denominators.
    pub fn integral_submultiset(&self) -> Option<Vec<Rat>> {
        let all = self.full_multiset();
        let n = all.len();
        if n == 0 {
            return None;
        }
        // A sub-multiset sum is integral iff the scaled sum vanishes mod the
        // common denominator.
        let mut lcm = BigInt::one();
        for w in &all {
            lcm = lcm.lcm(w.denom());
        }
        let scaled: Vec<BigInt> = all
            .iter()
            .map(|w| (w.numer() * (&lcm / w.denom())).mod_floor(&lcm))
            .collect();
        let half = n / 2;
        let (left, right) = scaled.split_at(half);

        // residue -> per subset-size one representative mask
        let mut table: HashMap<BigInt, Vec<Option<u32>>> = HashMap::new();
        for mask in 0u32..(1 << left.len()) {
            let mut sum = BigInt::zero();
            for (i, v) in left.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    sum += v;
                }
            }
            let res = sum.mod_floor(&lcm);
            let size = mask.count_ones() as usize;
            let slot = table.entry(res).or_insert_with(|| vec![None; left.len() + 1]);
            if slot[size].is_none() {
                slot[size] = Some(mask);
            }
        }
        for mask in 0u32..(1 << right.len()) {
            let mut sum = BigInt::zero();
            for (i, v) in right.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    sum += v;
                }
            }
            let need = (-sum).mod_floor(&lcm);
            let size_r = mask.count_ones() as usize;
            if let Some(slot) = table.get(&need) {
                for (size_l, lm) in slot.iter().enumerate() {
                    let total = size_l + size_r;
                    if total == 0 {
                        continue;
                    }
                    if let Some(lm) = lm {
                        let mut witness = Vec::with_capacity(total);
                        for (i, w) in all[..half].iter().enumerate() {
                            if lm & (1 << i) != 0 {
                                witness.push(w.clone());
                            }
                        }
                        for (i, w) in all[half..].iter().enumerate() {
                            if mask & (1 << i) != 0 {
                                witness.push(w.clone());
                            }
                        }
                        return Some(witness);
                    }
                }
            }
        }
        None
    }

    /// The selection criterion: for every `1 <= r < rank` and every choice of
    /// `r` weights at each puncture, the total sum is not an integer. This is
    /// the condition that rules out rank-`r` subbundles of parabolic degree
    /// zero. Requires distinct weights.
    pub fn check_generic_selection(&self) -> Result<SelectionOutcome> {
        if !self.check_distinct() {
            return Err(Error::Precondition(
                "check_generic_selection requires distinct weights at every puncture".into(),
            ));
        }
        let n = self.rank;
        let d = self.num_punctures();
        let lists: Vec<Vec<Rat>> = (0..d).map(|j| self.puncture_list(j)).collect();
        for r in 1..n {
            let combos: Vec<Vec<usize>> = combinations(n, r);
            // Per-puncture selection sums, explored depth-first.
            let mut stack: Vec<usize> = Vec::new();
            let mut sums: Vec<Rat> = vec![Rat::zero()];
            loop {
                if stack.len() == d {
                    let total = sums.last().unwrap();
                    if total.is_integer() {
                        let witness = SelectionWitness {
                            sub_rank: r,
                            indices: stack.iter().map(|&c| combos[c].clone()).collect(),
                            weights: stack
                                .iter()
                                .enumerate()
                                .map(|(j, &c)| {
                                    combos[c].iter().map(|&i| lists[j][i].clone()).collect()
                                })
                                .collect(),
                            sum: total.clone(),
                        };
                        return Ok(SelectionOutcome { generic: false, witness: Some(witness) });
                    }
                    // backtrack/advance
                    while let Some(top) = stack.pop() {
                        sums.pop();
                        if top + 1 < combos.len() {
                            let j = stack.len();
                            stack.push(top + 1);
                            let s = sums.last().unwrap()
                                + &combos[top + 1]
                                    .iter()
                                    .map(|&i| &lists[j][i])
                                    .sum::<Rat>();
                            sums.push(s);
                            break;
                        }
                    }
                    if stack.is_empty() {
                        break;
                    }
                } else {
                    let j = stack.len();
                    stack.push(0);
                    let s = sums.last().unwrap()
                        + &combos[0].iter().map(|&i| &lists[j][i]).sum::<Rat>();
                    sums.push(s);
                }
            }
        }
        Ok(SelectionOutcome { generic: true, witness: None })
    }

    /// External form: per-puncture lists with repetition.
    pub fn to_lists(&self) -> Vec<Vec<Rat>> {
        (0..self.num_punctures()).map(|j| self.puncture_list(j)).collect()
    }
}

impl Serialize for WeightSystem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            rank: usize,
            punctures: Vec<Vec<Rat>>,
        }
        Repr { rank: self.rank, punctures: self.to_lists() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WeightSystem {
    fn deserialize<D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<WeightSystem, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            rank: usize,
            punctures: Vec<Vec<Rat>>,
        }
        let repr = Repr::deserialize(deserializer)?;
        WeightSystem::new(repr.rank, repr.punctures).map_err(de::Error::custom)
    }
}

/// Result of the selection-genericity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelectionOutcome {
    pub generic: bool,
    pub witness: Option<SelectionWitness>,
}

/// A violating selection: `sub_rank` weights at each puncture whose total sum
/// is an integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelectionWitness {
    pub sub_rank: usize,
    pub indices: Vec<Vec<usize>>,
    pub weights: Vec<Vec<Rat>>,
    pub sum: Rat,
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(cur.clone());
        // next combination in lexicographic order
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - r {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Conjugacy-class data for SU(n): log-eigenvalues sorted decreasing, summing
/// to zero, with spread at most one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SUnClass {
    theta: Vec<Rat>,
}

impl SUnClass {
    /// Canonicalize arbitrary log-eigenvalue representatives: reduce mod 1,
    /// sort decreasing, and drop the largest entries by one until the sum is
    /// zero. The result is the unique representative with
    /// `theta_1 >= ... >= theta_n >= theta_1 - 1`.
    pub fn from_log_eigenvalues(values: Vec<Rat>) -> Result<SUnClass> {
        if values.is_empty() {
            return Err(Error::Invariant("class data must be nonempty".into()));
        }
        let sum: Rat = values.iter().sum();
        if !sum.is_integer() {
            return Err(Error::Invariant(format!(
                "log-eigenvalues of an SU(n) class must sum to an integer, got {sum}"
            )));
        }
        let mut reduced: Vec<Rat> = values.iter().map(|v| v.fract_mod1()).collect();
        reduced.sort_by(|a, b| b.cmp(a));
        let excess = reduced.iter().sum::<Rat>();
        debug_assert!(excess.is_integer() && !excess.is_negative());
        let mut drops: i64 = excess.numer().try_into().map_err(|_| {
            Error::Invariant("class size out of range".into())
        })?;
        for t in reduced.iter_mut() {
            if drops == 0 {
                break;
            }
            *t -= Rat::one();
            drops -= 1;
        }
        reduced.sort_by(|a, b| b.cmp(a));
        SUnClass::new(reduced)
    }

    pub fn new(theta: Vec<Rat>) -> Result<SUnClass> {
        if theta.is_empty() {
            return Err(Error::Invariant("class data must be nonempty".into()));
        }
        for pair in theta.windows(2) {
            if pair[0] < pair[1] {
                return Err(Error::Invariant(
                    "class data must be sorted in decreasing order".into(),
                ));
            }
        }
        let sum: Rat = theta.iter().sum();
        if !sum.is_zero() {
            return Err(Error::Invariant(format!("class data must sum to 0, got {sum}")));
        }
        let spread_ok = theta.last().unwrap() >= &(theta[0].clone() - Rat::one());
        if !spread_ok {
            return Err(Error::Invariant(
                "class data must satisfy theta_n >= theta_1 - 1".into(),
            ));
        }
        Ok(SUnClass { theta })
    }

    pub fn rank(&self) -> usize {
        self.theta.len()
    }

    pub fn theta(&self) -> &[Rat] {
        &self.theta
    }

    /// Sum of the (unreduced) log-eigenvalues over a 1-based index set.
    pub fn lambda(&self, subset: &[u32]) -> Rat {
        subset.iter().map(|&i| &self.theta[(i - 1) as usize]).sum()
    }

    /// The parabolic weights attached to this class at one puncture: the
    /// log-eigenvalues reduced mod 1 into `[0, 1)`, sorted increasing with
    /// multiplicities.
    pub fn class_to_weights(&self) -> Vec<WeightEntry> {
        let mut reduced: Vec<Rat> = self.theta.iter().map(|t| t.fract_mod1()).collect();
        reduced.sort();
        let mut entries: Vec<WeightEntry> = Vec::new();
        for w in reduced {
            match entries.last_mut() {
                Some(e) if e.weight == w => e.multiplicity += 1,
                _ => entries.push(WeightEntry { weight: w, multiplicity: 1 }),
            }
        }
        entries
    }
}

impl<'de> Deserialize<'de> for SUnClass {
    fn deserialize<D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<SUnClass, D::Error> {
        let theta = Vec::<Rat>::deserialize(deserializer)?;
        SUnClass::new(theta).map_err(de::Error::custom)
    }
}

/// Assemble the weight system of a collection of classes, one per puncture.
pub fn classes_to_weight_system(classes: &[SUnClass]) -> Result<WeightSystem> {
    if classes.is_empty() {
        return Err(Error::Precondition("need at least one class".into()));
    }
    let n = classes[0].rank();
    if classes.iter().any(|c| c.rank() != n) {
        return Err(Error::Invariant("all classes must share the same rank".into()));
    }
    let lists = classes
        .iter()
        .map(|c| {
            c.class_to_weights()
                .into_iter()
                .flat_map(|e| std::iter::repeat_n(e.weight, e.multiplicity))
                .collect()
        })
        .collect();
    WeightSystem::new(n, lists)
}

//! Split-model parabolic bundles on the projective line.
//!
//! Every bundle here is a direct sum of line summands (its Grothendieck
//! splitting), each carrying one weight per puncture. That is enough data for
//! all degree, slope, Hom-bundle and cohomology computations performed in
//! this crate; no transition functions are ever needed.

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{Rat, WeightSystem};
use crate::error::{Error, Result};

/// How the parabolic flags sit relative to the splitting.
///
/// `Adapted` means the flag at every puncture is the coordinate flag refining
/// the splitting, so weights genuinely attach to summands. `Generic` means
/// the flags are in general position with respect to the splitting; the
/// per-summand weight lists then only record the weight pool at each
/// puncture, and operations that need flag data reject the bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlagMode {
    Adapted,
    Generic,
}

/// One line summand: an integer degree and one weight per puncture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineSummand {
    #[serde(rename = "deg")]
    pub degree: i64,
    pub weights: Vec<Rat>,
}

impl LineSummand {
    pub fn par_deg(&self) -> Rat {
        Rat::from_int(self.degree) + self.weights.iter().sum::<Rat>()
    }
}

/// A direct sum of line summands with parabolic structure over `punctures`
/// marked points of the projective line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitParabolicBundle {
    punctures: usize,
    summands: Vec<LineSummand>,
    flag_mode: FlagMode,
}

impl SplitParabolicBundle {
    pub fn new(
        punctures: usize,
        summands: Vec<LineSummand>,
        flag_mode: FlagMode,
    ) -> Result<SplitParabolicBundle> {
        if summands.is_empty() {
            return Err(Error::Invariant("bundle must have at least one summand".into()));
        }
        for (i, s) in summands.iter().enumerate() {
            if s.weights.len() != punctures {
                return Err(Error::Invariant(format!(
                    "summand {i}: expected {punctures} weights, got {}",
                    s.weights.len()
                )));
            }
            for (j, w) in s.weights.iter().enumerate() {
                if w.is_negative() || w >= &Rat::one() {
                    return Err(Error::Invariant(format!(
                        "summand {i}, puncture {j}: weight {w} outside [0, 1)"
                    )));
                }
            }
        }
        Ok(SplitParabolicBundle { punctures, summands, flag_mode })
    }

    /// A line bundle `O(k)` with the given weights (one per puncture).
    pub fn line(degree: i64, weights: Vec<Rat>) -> Result<SplitParabolicBundle> {
        let punctures = weights.len();
        SplitParabolicBundle::new(punctures, vec![LineSummand { degree, weights }], FlagMode::Adapted)
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn punctures(&self) -> usize {
        self.punctures
    }

    pub fn summands(&self) -> &[LineSummand] {
        &self.summands
    }

    pub fn flag_mode(&self) -> FlagMode {
        self.flag_mode
    }

    /// Rank-one bundles have no flag freedom; treat them as adapted.
    pub fn effectively_adapted(&self) -> bool {
        self.flag_mode == FlagMode::Adapted || self.rank() == 1
    }

    /// Degree of the underlying bundle.
    pub fn degree(&self) -> i64 {
        self.summands.iter().map(|s| s.degree).sum()
    }

    /// Splitting type of the underlying bundle.
    pub fn underlying(&self) -> SplitBundle {
        SplitBundle::new(self.summands.iter().map(|s| s.degree).collect()).unwrap()
    }

    /// Parabolic degree: underlying degree plus the sum of all weights
    /// (counted with flag-jump dimensions, which for split models is just the
    /// sum over summands and punctures).
    pub fn par_deg(&self) -> Rat {
        Rat::from_int(self.degree())
            + self.summands.iter().flat_map(|s| s.weights.iter()).sum::<Rat>()
    }

    /// Parabolic slope: parabolic degree over rank.
    pub fn par_slope(&self) -> Rat {
        self.par_deg() / Rat::from_int(self.rank() as i64)
    }

    /// The induced weight system (weights collected per puncture).
    pub fn weight_system(&self) -> WeightSystem {
        let lists = (0..self.punctures)
            .map(|j| self.summands.iter().map(|s| s.weights[j].clone()).collect())
            .collect();
        WeightSystem::new(self.rank(), lists).expect("bundle weights satisfy system invariants")
    }

    /// Direct sum. Both bundles must share the puncture count; the result is
    /// adapted only if both are.
    pub fn direct_sum(&self, other: &SplitParabolicBundle) -> Result<SplitParabolicBundle> {
        if self.punctures != other.punctures {
            return Err(Error::Precondition("direct sum needs equal puncture counts".into()));
        }
        let mode = if self.effectively_adapted() && other.effectively_adapted() {
            FlagMode::Adapted
        } else {
            FlagMode::Generic
        };
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().cloned());
        SplitParabolicBundle::new(self.punctures, summands, mode)
    }

    /// Tensor with the log differentials: adds `d - 2` to every summand
    /// degree and leaves all weights unchanged.
    pub fn twist_log(&self) -> SplitParabolicBundle {
        let shift = self.punctures as i64 - 2;
        let summands = self
            .summands
            .iter()
            .map(|s| LineSummand { degree: s.degree + shift, weights: s.weights.clone() })
            .collect();
        SplitParabolicBundle { punctures: self.punctures, summands, flag_mode: self.flag_mode }
    }

    /// Underlying bundle of the weight-shifted (coparabolic) model of
    /// `self (x) Omega(log D)`: summands with a weight equal to zero at a
    /// puncture drop by one there.
    pub fn hat_twist_log_underlying(&self) -> SplitBundle {
        let shift = self.punctures as i64 - 2;
        SplitBundle::new(
            self.summands
                .iter()
                .map(|s| {
                    s.degree + shift - s.weights.iter().filter(|w| w.is_zero()).count() as i64
                })
                .collect(),
        )
        .unwrap()
    }
}

impl Serialize for SplitParabolicBundle {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            punctures: usize,
            summands: &'a [LineSummand],
            flag_mode: FlagMode,
        }
        Repr { punctures: self.punctures, summands: &self.summands, flag_mode: self.flag_mode }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SplitParabolicBundle {
    fn deserialize<D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<SplitParabolicBundle, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            punctures: usize,
            summands: Vec<LineSummand>,
            flag_mode: FlagMode,
        }
        let r = Repr::deserialize(deserializer)?;
        SplitParabolicBundle::new(r.punctures, r.summands, r.flag_mode).map_err(de::Error::custom)
    }
}

/// A bundle on the projective line given by its splitting type alone (no
/// parabolic data). Stored sorted decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitBundle(Vec<i64>);

impl SplitBundle {
    pub fn new(mut degrees: Vec<i64>) -> Result<SplitBundle> {
        if degrees.is_empty() {
            return Err(Error::Invariant("splitting type must be nonempty".into()));
        }
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Ok(SplitBundle(degrees))
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `(h0, h1)` of the bundle: on the projective line a summand `O(a)`
    /// contributes `max(a + 1, 0)` to `h0` and `max(-a - 1, 0)` to `h1`.
    pub fn cohomology(&self) -> (u64, u64) {
        let h0 = self.0.iter().map(|&a| (a + 1).max(0) as u64).sum();
        let h1 = self.0.iter().map(|&a| (-a - 1).max(0) as u64).sum();
        (h0, h1)
    }

    pub fn h0(&self) -> u64 {
        self.cohomology().0
    }

    pub fn h1(&self) -> u64 {
        self.cohomology().1
    }

    /// Twist by the log differentials for `d` punctures.
    pub fn twist_log(&self, d: usize) -> SplitBundle {
        SplitBundle::new(self.0.iter().map(|a| a + d as i64 - 2).collect()).unwrap()
    }
}

impl<'de> Deserialize<'de> for SplitBundle {
    fn deserialize<D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<SplitBundle, D::Error> {
        let degrees = Vec::<i64>::deserialize(deserializer)?;
        SplitBundle::new(degrees).map_err(de::Error::custom)
    }
}

/// Parabolic degree of the sheaf of parabolic homomorphisms, by the degree
/// formula: `rank E * par-deg F - rank F * par-deg E`.
pub fn par_deg_hom(e: &SplitParabolicBundle, f: &SplitParabolicBundle) -> Result<Rat> {
    if e.punctures() != f.punctures() {
        return Err(Error::Precondition("par_deg_hom needs equal puncture counts".into()));
    }
    Ok(f.par_deg().scale(e.rank() as i64) - e.par_deg().scale(f.rank() as i64))
}

/// Whether, at every puncture, the weights of `e` all lie strictly on one
/// side of the weights of `f` (all below or all above; the side may vary
/// from puncture to puncture).
fn one_sided(e: &SplitParabolicBundle, f: &SplitParabolicBundle) -> bool {
    (0..e.punctures()).all(|j| {
        let ew: Vec<&Rat> = e.summands().iter().map(|s| &s.weights[j]).collect();
        let fw: Vec<&Rat> = f.summands().iter().map(|s| &s.weights[j]).collect();
        let e_max = ew.iter().max().unwrap();
        let e_min = ew.iter().min().unwrap();
        let f_max = fw.iter().max().unwrap();
        let f_min = fw.iter().min().unwrap();
        e_max < f_min || e_min > f_max
    })
}

/// The parabolic Hom bundle as a direct sum over summand pairs.
///
/// For a pair `(e_i, f_k)` the underlying degree is
/// `deg f_k - deg e_i - #{j : weight of e_i at j > weight of f_k at j}` and
/// the weight at `j` is `(weight of f_k - weight of e_i) mod 1`.
///
/// This pairwise computation is exact when the flag data cannot interfere:
/// both bundles adapted, a rank-one side with the other adapted, or weights
/// one-sided at every puncture. Anything else is rejected, because the Hom
/// bundle of genuinely generic flags is not determined by split data.
pub fn hom_split(
    e: &SplitParabolicBundle,
    f: &SplitParabolicBundle,
) -> Result<SplitParabolicBundle> {
    if e.punctures() != f.punctures() {
        return Err(Error::Precondition("hom_split needs equal puncture counts".into()));
    }
    let regime_ok = (e.effectively_adapted() && f.effectively_adapted())
        || (f.rank() == 1 && e.effectively_adapted())
        || (e.rank() == 1 && f.effectively_adapted())
        || one_sided(e, f);
    if !regime_ok {
        return Err(Error::Precondition(
            "hom_split: generic-flag Hom is not determined by split data \
             (need adapted flags, a rank-one side, or one-sided weights at every puncture)"
                .into(),
        ));
    }
    let d = e.punctures();
    let mut summands = Vec::with_capacity(e.rank() * f.rank());
    for ei in e.summands() {
        for fk in f.summands() {
            let twist = (0..d).filter(|&j| ei.weights[j] > fk.weights[j]).count() as i64;
            let degree = fk.degree - ei.degree - twist;
            let weights = (0..d)
                .map(|j| (fk.weights[j].clone() - &ei.weights[j]).fract_mod1())
                .collect();
            summands.push(LineSummand { degree, weights });
        }
    }
    SplitParabolicBundle::new(d, summands, FlagMode::Adapted)
}

/// Checks `deg E <= par-deg E < deg E + rank E * d`. Without punctures the
/// parabolic degree is the degree and the bound degenerates to equality.
pub fn pardeg_bounds_check(e: &SplitParabolicBundle) -> bool {
    let deg = Rat::from_int(e.degree());
    let pd = e.par_deg();
    if e.punctures() == 0 {
        return pd == deg;
    }
    let upper = deg.clone() + Rat::from_int((e.rank() * e.punctures()) as i64);
    deg <= pd && pd < upper
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn line(deg: i64, weights: &[Rat]) -> SplitParabolicBundle {
        SplitParabolicBundle::line(deg, weights.to_vec()).unwrap()
    }

    #[test]
    fn par_deg_line_no_punctures() {
        let e = line(5, &[]);
        assert_eq!(e.par_deg(), Rat::from_int(5));
        assert_eq!(e.par_slope(), Rat::from_int(5));
    }

    #[test]
    fn par_deg_example_69_sub() {
        // S = O(-2) with weights (1 - eps, 3/4 + eps, 1/3 - eps), eps = 1/36.
        let eps = rat(1, 36);
        let s = line(
            -2,
            &[
                Rat::one() - eps.clone(),
                rat(3, 4) + eps.clone(),
                rat(1, 3) - eps.clone(),
            ],
        );
        assert_eq!(s.par_deg(), rat(1, 18)); // 1/12 - 1/36
        assert_eq!(s.par_slope(), rat(1, 12) - eps);
    }

    #[test]
    fn par_slope_example_69_quotient() {
        let eps = rat(1, 36);
        let q = SplitParabolicBundle::new(
            3,
            vec![
                LineSummand {
                    degree: -1,
                    weights: vec![rat(1, 2), rat(1, 8) - eps.clone(), rat(1, 3)],
                },
                LineSummand {
                    degree: -1,
                    weights: vec![
                        rat(1, 2) + eps.clone(),
                        rat(1, 8),
                        rat(1, 3) + eps.clone(),
                    ],
                },
            ],
            FlagMode::Generic,
        )
        .unwrap();
        // par_deg Q = -(par_deg S) since the total is 0; slope is half that.
        assert_eq!(q.par_deg(), rat(-1, 12) + eps.clone());
        assert_eq!(q.par_slope(), (rat(-1, 12) + eps) / Rat::from_int(2));
        assert_eq!(q.par_slope(), rat(-1, 36));
    }

    #[test]
    fn par_deg_hom_examples() {
        let e = line(-2, &[rat(1, 2)]);
        let f = line(-1, &[rat(1, 4)]);
        assert_eq!(par_deg_hom(&e, &e).unwrap(), Rat::zero());
        assert_eq!(par_deg_hom(&e, &f).unwrap(), rat(3, 4));
        // Cross-check against hom_split: underlying O(0), hom weight 3/4.
        let h = hom_split(&e, &f).unwrap();
        assert_eq!(h.underlying().degrees(), &[0]);
        assert_eq!(h.summands()[0].weights, vec![rat(3, 4)]);
        assert_eq!(h.par_deg(), rat(3, 4));
    }

    #[test]
    fn hom_split_self_rank_one() {
        let e = line(-3, &[rat(1, 5), rat(2, 5)]);
        let h = hom_split(&e, &e).unwrap();
        assert_eq!(h.underlying().degrees(), &[0]);
        assert!(h.summands()[0].weights.iter().all(|w| w.is_zero()));
    }

    #[test]
    fn hom_split_rejects_generic_mixed() {
        // Generic flags with weights interleaved at the puncture: rejected.
        let e = SplitParabolicBundle::new(
            1,
            vec![
                LineSummand { degree: 0, weights: vec![rat(1, 4)] },
                LineSummand { degree: 0, weights: vec![rat(3, 4)] },
            ],
            FlagMode::Generic,
        )
        .unwrap();
        let f = SplitParabolicBundle::new(
            1,
            vec![
                LineSummand { degree: -1, weights: vec![rat(1, 2)] },
                LineSummand { degree: -1, weights: vec![rat(7, 8)] },
            ],
            FlagMode::Generic,
        )
        .unwrap();
        assert!(hom_split(&e, &f).is_err());
        // Same weights with adapted flags are fine.
        let ea = SplitParabolicBundle::new(1, e.summands().to_vec(), FlagMode::Adapted).unwrap();
        let fa = SplitParabolicBundle::new(1, f.summands().to_vec(), FlagMode::Adapted).unwrap();
        assert!(hom_split(&ea, &fa).is_ok());
    }

    #[test]
    fn twist_log_examples() {
        // d = 2 is the identity on degrees.
        let e = line(4, &[rat(1, 3), rat(1, 7)]);
        assert_eq!(e.twist_log().degree(), 4);
        // O(0) with d = 3 becomes O(1).
        let e = line(0, &[Rat::zero(), Rat::zero(), Rat::zero()]);
        assert_eq!(e.twist_log().degree(), 1);
    }

    #[test]
    fn cohomology_examples() {
        let b = SplitBundle::new(vec![-1, -1]).unwrap();
        assert_eq!(b.cohomology(), (0, 0));
        let b = SplitBundle::new(vec![-3]).unwrap();
        assert_eq!(b.cohomology(), (0, 2));
        let b = SplitBundle::new(vec![3, 3]).unwrap();
        assert_eq!(b.cohomology(), (8, 0));
    }

    #[test]
    fn riemann_roch_identity() {
        for degs in [vec![0], vec![-5, 3], vec![2, 2, -7], vec![-1, -1, -1]] {
            let b = SplitBundle::new(degs).unwrap();
            let (h0, h1) = b.cohomology();
            assert_eq!(h0 as i64 - h1 as i64, b.degree() + b.rank() as i64);
        }
    }

    #[test]
    fn pardeg_bounds() {
        // All weights zero: equality on the left.
        let e = line(-4, &[Rat::zero(), Rat::zero()]);
        assert_eq!(e.par_deg(), Rat::from_int(-4));
        assert!(pardeg_bounds_check(&e));
        // Rank 1, one puncture, weight 1 - 1/q: strict on the right.
        let e = line(0, &[Rat::one() - rat(1, 17)]);
        assert!(pardeg_bounds_check(&e));
        assert!(e.par_deg() < Rat::one());
    }

    #[test]
    fn additivity_of_par_deg() {
        let e = line(-2, &[rat(1, 3), rat(1, 5)]);
        let f = line(1, &[rat(2, 3), rat(4, 5)]);
        let sum = e.direct_sum(&f).unwrap();
        assert_eq!(sum.par_deg(), e.par_deg() + f.par_deg());
    }
}

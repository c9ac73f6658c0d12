//! Constructors and full certification for the two explicit two-step
//! minimal-energy families, plus the subbundle-degree estimates they use.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::{Rat, WeightSystem};
use crate::error::{Error, Result};
use crate::higgs::GradedHiggsModel;
use crate::parabolic::{hom_split, FlagMode, LineSummand, SplitParabolicBundle};

/// Exact evaluation of the small-epsilon inequality
/// `(1/(n-1)) (1 - (1+a)/(1+na) - eps) < (1+a)/(1+na) - eps`.
pub fn lemma_6_1_check(n: u64, a: u64, eps: &Rat) -> Result<bool> {
    if n < 2 {
        return Err(Error::Precondition("need n >= 2".into()));
    }
    if !eps.is_positive() {
        return Err(Error::Precondition("need eps > 0".into()));
    }
    let big = big_weight_base(n, a); // (1 + a) / (1 + n a)
    let lhs = (Rat::one() - &big - eps) / Rat::from_int(n as i64 - 1);
    let rhs = big - eps.clone();
    Ok(lhs < rhs)
}

fn big_weight_base(n: u64, a: u64) -> Rat {
    Rat::new(1 + a as i64, 1 + (n * a) as i64)
}

/// Parameters for the two-step family: `n >= 2` summand count, twist
/// `a >= 0`, a small positive `eps`, and `n - 1` strictly increasing
/// perturbations summing to zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Example62Params {
    pub n: u64,
    pub a: u64,
    pub eps: Rat,
    pub eps_vec: Vec<Rat>,
}

impl Example62Params {
    pub fn new(n: u64, a: u64, eps: Rat, eps_vec: Vec<Rat>) -> Result<Example62Params> {
        if n < 2 {
            return Err(Error::Invariant("need n >= 2".into()));
        }
        if !eps.is_positive() {
            return Err(Error::Invariant("need eps > 0".into()));
        }
        if eps_vec.len() != (n - 1) as usize {
            return Err(Error::Invariant(format!(
                "eps_vec must have n - 1 = {} entries, got {}",
                n - 1,
                eps_vec.len()
            )));
        }
        for pair in eps_vec.windows(2) {
            if pair[0] >= pair[1] {
                return Err(Error::Invariant("eps_vec must be strictly increasing".into()));
            }
        }
        if !eps_vec.iter().sum::<Rat>().is_zero() {
            return Err(Error::Invariant("eps_vec must sum to zero".into()));
        }
        let params = Example62Params { n, a, eps, eps_vec };
        if !lemma_6_1_check(n, a, &params.eps)? {
            return Err(Error::Invariant(
                "the small-epsilon inequality fails for (n, a, eps)".into(),
            ));
        }
        // The n weights at each puncture must be strictly increasing in (0, 1).
        let weights = params.puncture_weights();
        if !weights[0].is_positive() {
            return Err(Error::Invariant("smallest weight must be positive".into()));
        }
        for pair in weights.windows(2) {
            if pair[0] >= pair[1] {
                return Err(Error::Invariant("weights must be strictly increasing".into()));
            }
        }
        if weights.last().unwrap() >= &Rat::one() {
            return Err(Error::Invariant("largest weight must be below one".into()));
        }
        Ok(params)
    }

    /// With suggested perturbations: `eps_vec` a symmetric progression in
    /// steps of `10^-6` normalized to sum to zero.
    pub fn with_suggested_eps_vec(n: u64, a: u64, eps: Rat) -> Result<Example62Params> {
        Example62Params::new(n, a, eps, suggest_eps_vec(n))
    }

    pub fn punctures(&self) -> u64 {
        1 + self.n * self.a
    }

    /// The small weight attached to summand `i` of the sub piece.
    fn small_weight(&self, i: usize) -> Rat {
        let big = big_weight_base(self.n, self.a);
        (Rat::one() - big + &self.eps) / Rat::from_int(self.n as i64 - 1) + &self.eps_vec[i]
    }

    /// The large weight attached to the quotient piece.
    fn large_weight(&self) -> Rat {
        big_weight_base(self.n, self.a) - self.eps.clone()
    }

    /// The full sorted weight list at one puncture (identical at all).
    pub fn puncture_weights(&self) -> Vec<Rat> {
        let mut w: Vec<Rat> =
            (0..(self.n - 1) as usize).map(|i| self.small_weight(i)).collect();
        w.push(self.large_weight());
        w
    }
}

/// Suggested `eps`: the smaller of `1/100` and half the slack in the
/// small-epsilon inequality at `eps = 0`.
pub fn suggest_eps(n: u64, a: u64) -> Result<Rat> {
    if n < 2 {
        return Err(Error::Precondition("need n >= 2".into()));
    }
    let big = big_weight_base(n, a);
    let slack = big.clone() - (Rat::one() - big) / Rat::from_int(n as i64 - 1);
    let half = slack / Rat::from_int(2);
    let cap = Rat::new(1, 100);
    Ok(if half < cap { half } else { cap })
}

/// Suggested perturbations: `(2i - m - 1) * 10^-6` for `i = 1..=m`, `m = n-1`.
pub fn suggest_eps_vec(n: u64) -> Vec<Rat> {
    let m = (n - 1) as i64;
    (1..=m).map(|i| Rat::new(2 * i - m - 1, 1_000_000)).collect()
}

/// Build the two-step model: sub piece `O(-a)^(n-1)` carrying the small
/// weights (generic flags), quotient piece `O(-a-1)` carrying the large
/// weight, over `1 + na` punctures, with a rank-one grading map.
pub fn build_example_62(p: &Example62Params) -> (GradedHiggsModel, WeightSystem) {
    let d = p.punctures() as usize;
    let sub_summands: Vec<LineSummand> = (0..(p.n - 1) as usize)
        .map(|i| LineSummand {
            degree: -(p.a as i64),
            weights: vec![p.small_weight(i); d],
        })
        .collect();
    let sub = SplitParabolicBundle::new(d, sub_summands, FlagMode::Generic)
        .expect("validated parameters produce a well-formed sub piece");
    let quot = SplitParabolicBundle::line(-(p.a as i64) - 1, vec![p.large_weight(); d])
        .expect("validated parameters produce a well-formed quotient piece");
    let model = GradedHiggsModel::new(vec![sub, quot], vec![1], BTreeMap::new())
        .expect("two-step model is well-formed");
    let system = WeightSystem::new(p.n as usize, vec![p.puncture_weights(); d])
        .expect("validated parameters produce a well-formed weight system");
    (model, system)
}

/// One examined candidate family of sub-Higgs bundles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateItem {
    pub family: String,
    /// Exact parabolic degree, or a sound upper bound for the family.
    pub value: Rat,
    pub is_upper_bound: bool,
    pub negative: bool,
}

/// Candidate sub-Higgs families with their exact parabolic degrees (or upper
/// bounds); stability is asserted only when every listed value is negative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityCertificate {
    pub items: Vec<CertificateItem>,
    pub stable: bool,
}

impl StabilityCertificate {
    fn from_items(items: Vec<CertificateItem>) -> StabilityCertificate {
        let stable = items.iter().all(|i| i.negative);
        StabilityCertificate { items, stable }
    }
}

/// Full certification output for a constructed family instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyCertificate {
    pub par_deg: Rat,
    pub certificate: StabilityCertificate,
    pub minimal_energy: bool,
    /// Splitting type of the underlying bundle of `Hom(sub, quotient)`.
    pub hom_underlying: Vec<i64>,
}

/// Certify the two-step family instance: evaluates the exact parabolic
/// degrees of the quotient, of the kernel of the grading map, and the upper
/// bounds for `V (+) Q` over all partial sub ranks, then runs the
/// minimal-energy check. Needs at least three punctures (the family's own
/// stability hypothesis).
pub fn certify_example_62(p: &Example62Params) -> Result<FamilyCertificate> {
    let d = p.punctures();
    if d < 3 {
        return Err(Error::Precondition(format!(
            "stability certification needs deg D >= 3, got {d} (a = 0 has a single puncture)"
        )));
    }
    let (model, _) = build_example_62(p);
    let sub = model.piece(2).clone();
    let quot = model.piece(1).clone();
    let d_rat = Rat::from_int(d as i64);

    let mut items = Vec::new();

    // par-deg Q = -(deg D) eps exactly.
    let q_pardeg = quot.par_deg();
    debug_assert_eq!(q_pardeg, -(p.eps.clone().scale(d as i64)));
    items.push(CertificateItem {
        family: "quotient piece Q".into(),
        negative: q_pardeg.is_negative(),
        value: q_pardeg,
        is_upper_bound: false,
    });

    // par-deg ker(theta) = 2 eps deg D - deg D + 2, via
    // par-deg ker = par-deg S - par-deg(Q (x) Omega(log D)).
    if p.n >= 3 {
        let ker_pardeg = sub.par_deg() - quot.twist_log().par_deg();
        debug_assert_eq!(
            ker_pardeg,
            p.eps.clone().scale(2 * d as i64) - &d_rat + Rat::from_int(2)
        );
        items.push(CertificateItem {
            family: "ker(theta)".into(),
            negative: ker_pardeg.is_negative(),
            value: ker_pardeg,
            is_upper_bound: false,
        });
    }

    // V (+) Q for every 0 <= rank V < n - 1, via the generic-flag estimate.
    for rk in 0..(p.n - 1) as usize {
        let v_bound = if rk == 0 { Rat::zero() } else { max_subbundle_pardeg(&sub, rk)? };
        let total = v_bound + &quot.par_deg();
        // Closed form: rk d eps / (n-1) + d * (top rk eps_i sum) - eps d.
        let top_sum: Rat = p.eps_vec.iter().rev().take(rk).sum();
        let closed = p.eps.clone().scale(rk as i64).scale(d as i64)
            / Rat::from_int(p.n as i64 - 1)
            + top_sum.scale(d as i64)
            - p.eps.clone().scale(d as i64);
        debug_assert_eq!(total, closed);
        items.push(CertificateItem {
            family: format!("V (+) Q with rank V = {rk}"),
            negative: total.is_negative(),
            value: total,
            is_upper_bound: true,
        });
    }

    let me = model.minimal_energy_check()?;
    let hom = hom_split(&sub, &quot)?;
    Ok(FamilyCertificate {
        par_deg: model.par_deg(),
        certificate: StabilityCertificate::from_items(items),
        minimal_energy: me.minimal_energy,
        hom_underlying: hom.underlying().degrees().to_vec(),
    })
}

/// Build the three-puncture rank-three model: sub piece `O(-2)` carrying the
/// largest weights at the first two punctures and the smallest at the third,
/// quotient `O(-1) (+) O(-1)` with generic flags. Valid for
/// `1/48 < eps < 1/24`.
pub fn build_example_69(eps: &Rat) -> Result<GradedHiggsModel> {
    if eps <= &Rat::new(1, 48) || eps >= &Rat::new(1, 24) {
        return Err(Error::Precondition(format!(
            "need 1/48 < eps < 1/24, got {eps}"
        )));
    }
    let e = eps.clone();
    let sub = SplitParabolicBundle::line(
        -2,
        vec![
            Rat::one() - &e,
            Rat::new(3, 4) + &e,
            Rat::new(1, 3) - &e,
        ],
    )?;
    let quot = SplitParabolicBundle::new(
        3,
        vec![
            LineSummand {
                degree: -1,
                weights: vec![Rat::new(1, 2), Rat::new(1, 8) - &e, Rat::new(1, 3)],
            },
            LineSummand {
                degree: -1,
                weights: vec![Rat::new(1, 2) + &e, Rat::new(1, 8), Rat::new(1, 3) + &e],
            },
        ],
        FlagMode::Generic,
    )?;
    GradedHiggsModel::new(vec![sub, quot], vec![1], BTreeMap::new())
}

/// Certification report for the three-puncture instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Example69Certificate {
    pub mu_sub: Rat,
    pub certificate: StabilityCertificate,
    pub minimal_energy: bool,
    pub hom_underlying: Vec<i64>,
}

/// Certify the three-puncture instance. The sub-Higgs candidates are the
/// rank-one subbundles of the quotient (generic-position value), the
/// quotient itself, and the rank-two closures `S (+) L`; the sub piece `S`
/// itself is not invariant under the grading map and is reported only as the
/// destabilizing parabolic subbundle (its slope is positive on the valid
/// epsilon range).
pub fn certify_example_69(eps: &Rat) -> Result<Example69Certificate> {
    let model = build_example_69(eps)?;
    let sub = model.piece(2).clone();
    let quot = model.piece(1).clone();

    let mut items = Vec::new();
    let q_rank1 = generic_subbundle_pardeg(&quot, 1)?;
    items.push(CertificateItem {
        family: "generic rank-1 subbundle of Q".into(),
        negative: q_rank1.is_negative(),
        value: q_rank1.clone(),
        is_upper_bound: true,
    });
    let q_pardeg = quot.par_deg();
    items.push(CertificateItem {
        family: "quotient piece Q".into(),
        negative: q_pardeg.is_negative(),
        value: q_pardeg,
        is_upper_bound: false,
    });
    let rank2 = sub.par_deg() + &q_rank1;
    items.push(CertificateItem {
        family: "S (+) L with L a rank-1 subbundle of Q".into(),
        negative: rank2.is_negative(),
        value: rank2,
        is_upper_bound: true,
    });

    let me = model.minimal_energy_check()?;
    let hom = hom_split(&sub, &quot)?;
    Ok(Example69Certificate {
        mu_sub: sub.par_slope(),
        certificate: StabilityCertificate::from_items(items),
        minimal_energy: me.minimal_energy,
        hom_underlying: hom.underlying().degrees().to_vec(),
    })
}

/// Upper bound for the parabolic degree of any rank-`r` subbundle of a
/// generic-flag bundle: the `r` largest summand degrees plus, per puncture,
/// the `r` largest weights.
pub fn max_subbundle_pardeg(e: &SplitParabolicBundle, r: usize) -> Result<Rat> {
    selection_pardeg(e, r, true)
}

/// Parabolic degree of a rank-`r` subbundle in general position: the `r`
/// largest summand degrees plus, per puncture, the `r` smallest weights.
pub fn generic_subbundle_pardeg(e: &SplitParabolicBundle, r: usize) -> Result<Rat> {
    selection_pardeg(e, r, false)
}

fn selection_pardeg(e: &SplitParabolicBundle, r: usize, largest_weights: bool) -> Result<Rat> {
    if r == 0 || r > e.rank() {
        return Err(Error::Precondition(format!(
            "subbundle rank must lie in 1..={}, got {r}",
            e.rank()
        )));
    }
    let mut degrees: Vec<i64> = e.summands().iter().map(|s| s.degree).collect();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    let mut total = Rat::from_int(degrees[..r].iter().sum::<i64>());
    for j in 0..e.punctures() {
        let mut ws: Vec<Rat> = e.summands().iter().map(|s| s.weights[j].clone()).collect();
        ws.sort();
        let chosen = if largest_weights { &ws[ws.len() - r..] } else { &ws[..r] };
        total += chosen.iter().sum::<Rat>();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn lemma_6_1_examples() {
        // (1/2)(1 - 1/2 - 1/100) = 49/200 < 49/100 = 1/2 - 1/100.
        assert!(lemma_6_1_check(3, 1, &rat(1, 100)).unwrap());
        // Degenerate n = 2, a = 0 reduces to -eps < 1 - eps.
        assert!(lemma_6_1_check(2, 0, &rat(1, 1000)).unwrap());
        // Large eps breaks strictness: both sides are 0 at eps = 1/2.
        assert!(!lemma_6_1_check(3, 1, &rat(1, 2)).unwrap());
    }

    #[test]
    fn lemma_6_1_monotone_in_eps() {
        // True at eps implies true at any smaller positive eps.
        for n in 2..=5 {
            for a in 0..=3 {
                let mut seen_true = false;
                // Descending epsilon grid.
                for k in 1..=10 {
                    let eps = rat(1, 2 * k * k);
                    let ok = lemma_6_1_check(n, a, &eps).unwrap();
                    if seen_true {
                        assert!(ok, "monotonicity fails at n={n} a={a} eps={eps}");
                    }
                    seen_true |= ok;
                }
            }
        }
    }

    #[test]
    fn example_62_construction_basics() {
        let p = Example62Params::with_suggested_eps_vec(3, 1, rat(1, 100)).unwrap();
        assert_eq!(p.punctures(), 4);
        let (model, system) = build_example_62(&p);
        // E = O(-1)^2 (+) O(-2) over 4 punctures.
        assert_eq!(model.piece(2).underlying().degrees(), &[-1, -1]);
        assert_eq!(model.piece(1).underlying().degrees(), &[-2]);
        assert_eq!(model.par_deg(), Rat::zero());
        assert!(system.check_distinct());
        // Per-puncture weight sum is exactly one.
        let sum: Rat = p.puncture_weights().iter().sum();
        assert_eq!(sum, Rat::one());
    }

    #[test]
    fn example_62_certificate() {
        let p = Example62Params::with_suggested_eps_vec(3, 1, rat(1, 100)).unwrap();
        let cert = certify_example_62(&p).unwrap();
        assert_eq!(cert.par_deg, Rat::zero());
        assert!(cert.certificate.stable);
        assert!(cert.minimal_energy);
        assert_eq!(cert.hom_underlying, vec![-1, -1]);
        // par-deg Q = -(1 + na) eps.
        assert_eq!(cert.certificate.items[0].value, rat(-4, 100));
        // par-deg ker(theta) = 2 eps d - d + 2 = 8/100 - 2.
        assert_eq!(cert.certificate.items[1].value, rat(8, 100) - Rat::from_int(2));
    }

    #[test]
    fn example_62_rank_two_instance() {
        // n = 2, a = 2: d = 5, rank 2; singleton eps_vec.
        let p = Example62Params::with_suggested_eps_vec(2, 2, rat(1, 100)).unwrap();
        assert_eq!(p.eps_vec, vec![Rat::zero()]);
        let cert = certify_example_62(&p).unwrap();
        assert!(cert.certificate.stable);
        assert!(cert.minimal_energy);
        assert_eq!(cert.hom_underlying, vec![-1]);
    }

    #[test]
    fn example_62_large_degree_with_two_pieces() {
        // n = 2, a large: d = 2a + 1 exceeds 4n^2 - 28 = -12 trivially and
        // grows without bound while the model keeps two graded pieces.
        for a in [2u64, 10, 50] {
            let p = Example62Params::with_suggested_eps_vec(2, a, rat(1, 1000)).unwrap();
            let cert = certify_example_62(&p).unwrap();
            assert!(cert.certificate.stable && cert.minimal_energy);
            assert_eq!(p.punctures(), 2 * a + 1);
        }
    }

    #[test]
    fn certification_rejects_single_puncture() {
        // a = 0 gives deg D = 1: the family's stability hypothesis fails.
        let p = Example62Params::with_suggested_eps_vec(3, 0, rat(1, 100)).unwrap();
        assert!(matches!(certify_example_62(&p), Err(Error::Precondition(_))));
        // Construction itself is fine and the Hodge-length check passes.
        let (model, system) = build_example_62(&p);
        assert_eq!(model.par_deg(), Rat::zero());
        assert!(system.check_distinct());
        assert!(model.minimal_energy_check().unwrap().minimal_energy);
    }

    #[test]
    fn example_69_reproduction() {
        let eps = rat(1, 36);
        let cert = certify_example_69(&eps).unwrap();
        assert_eq!(cert.mu_sub, rat(1, 12) - eps.clone());
        assert!(cert.certificate.stable);
        assert!(cert.minimal_energy);
        assert_eq!(cert.hom_underlying, vec![-1, -1]);
        // Generic rank-1 subbundle value: -1/24 - eps.
        assert_eq!(cert.certificate.items[0].value, rat(-1, 24) - eps);
    }

    #[test]
    fn example_69_epsilon_range() {
        assert!(build_example_69(&rat(1, 24)).is_err());
        assert!(build_example_69(&rat(1, 48)).is_err());
        assert!(build_example_69(&rat(1, 30)).is_ok());
        // The rank-two closure bound changes sign exactly at eps = 1/48:
        // its value is 1/24 - 2 eps.
        let cert = certify_example_69(&rat(1, 40)).unwrap();
        let rank2 = &cert.certificate.items[2];
        assert_eq!(rank2.value, rat(1, 24) - rat(2, 40));
        assert!(rank2.negative);
    }

    #[test]
    fn subbundle_bound_examples() {
        // r = rank recovers the parabolic degree.
        let p = Example62Params::with_suggested_eps_vec(3, 1, rat(1, 100)).unwrap();
        let (model, _) = build_example_62(&p);
        let sub = model.piece(2);
        assert_eq!(max_subbundle_pardeg(sub, sub.rank()).unwrap(), sub.par_deg());
        // Example estimate at rank 1: -1 + 4 ((1/2)(1/2 + 1/100) + 1/10^6).
        let expect = Rat::from_int(-1)
            + ((rat(1, 2) * (rat(1, 2) + rat(1, 100))) + rat(1, 1_000_000)).scale(4);
        assert_eq!(max_subbundle_pardeg(sub, 1).unwrap(), expect);
        // Zero-weight bundle: top summand degree only.
        let e = SplitParabolicBundle::new(
            1,
            vec![
                LineSummand { degree: 0, weights: vec![Rat::zero()] },
                LineSummand { degree: -5, weights: vec![Rat::zero()] },
            ],
            FlagMode::Generic,
        )
        .unwrap();
        assert_eq!(max_subbundle_pardeg(&e, 1).unwrap(), Rat::zero());
        assert!(max_subbundle_pardeg(&e, 3).is_err());
    }

    #[test]
    fn example_69_grid_of_epsilons() {
        // Five admissible values spanning the open interval (1/48, 1/24).
        for eps in [rat(1, 36), rat(1, 40), rat(1, 30), rat(5, 144), rat(7, 288)] {
            let cert = certify_example_69(&eps).unwrap();
            assert!(cert.certificate.stable, "eps = {eps}");
            assert!(cert.minimal_energy, "eps = {eps}");
            assert_eq!(cert.hom_underlying, vec![-1, -1]);
            assert_eq!(cert.mu_sub, rat(1, 12) - &eps);
        }
    }

    #[test]
    fn hom_twist_log_display() {
        // Hom(S, Q) (x) Omega(log D) has underlying O(na - 2)^(n-1); its
        // sections are nonzero once a >= 1, which is what makes a nonzero
        // grading map possible.
        for n in 2..=5u64 {
            for a in 0..=3u64 {
                let p = Example62Params::with_suggested_eps_vec(n, a, rat(1, 1000)).unwrap();
                let (model, _) = build_example_62(&p);
                let hom = hom_split(model.piece(2), model.piece(1)).unwrap();
                let twisted = hom.twist_log();
                let expect = (n as i64) * (a as i64) - 2;
                assert!(twisted.underlying().degrees().iter().all(|&x| x == expect));
                if a >= 1 {
                    assert!(twisted.underlying().h0() > 0);
                } else {
                    assert_eq!(twisted.underlying().h0(), 0);
                }
            }
        }
    }

    #[test]
    fn hodge_bookkeeping_on_families() {
        // The surviving first-cohomology pieces sit at the gradings zero and
        // one; the two extreme pieces vanish and agree, which is the
        // assertable shadow of the dimension bookkeeping. Both sides are
        // computed by independent routes (H^1 of one corner, H^0 of the
        // weight-shifted twist of the other).
        for n in 2..=5u64 {
            for a in 0..=3u64 {
                let p = Example62Params::with_suggested_eps_vec(n, a, rat(1, 100)).unwrap();
                let (model, _) = build_example_62(&p);
                let rep = model.minimal_energy_check().unwrap();
                assert_eq!(rep.corner_h1, 0);
                assert_eq!(rep.corner_mirror_h0, Some(0));
            }
        }
        let model = build_example_69(&rat(1, 36)).unwrap();
        let rep = model.minimal_energy_check().unwrap();
        assert_eq!(rep.corner_h1, 0);
        assert_eq!(rep.corner_mirror_h0, Some(0));
    }

    #[test]
    fn example_69_hom_degree_formula() {
        // par-deg Hom(S, Q) = 1 * par-deg Q - 2 * par-deg S = -1/4 + 3 eps.
        let eps = rat(1, 36);
        let model = build_example_69(&eps).unwrap();
        let value =
            crate::parabolic::par_deg_hom(model.piece(2), model.piece(1)).unwrap();
        assert_eq!(value, rat(-1, 4) + eps.scale(3));
    }

    #[test]
    fn example_69_adjoint_pieces() {
        // The extreme pieces of the adjoint have rank two; the piece carrying
        // Hom(S, Q) has underlying O(-1) (+) O(-1).
        let model = build_example_69(&rat(1, 36)).unwrap();
        assert_eq!(model.adjoint_rank(1), 2);
        assert_eq!(model.adjoint_rank(-1), 2);
        let split = model.adjoint_split(-1).unwrap();
        assert_eq!(split.underlying().degrees(), &[-1, -1]);
        assert_eq!(model.adjoint_par_deg(1), -model.adjoint_par_deg(-1));
    }

    #[test]
    fn suggested_eps_is_valid() {
        for n in 2..=5 {
            for a in 0..=3 {
                let eps = suggest_eps(n, a).unwrap();
                assert!(lemma_6_1_check(n, a, &eps).unwrap());
                assert!(Example62Params::with_suggested_eps_vec(n, a, eps).is_ok());
            }
        }
    }
}

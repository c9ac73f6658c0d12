//! Randomized invariants that live best under a shrinking property tester.

use proptest::prelude::*;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use parhiggs::arith::Rat;
use parhiggs::parabolic::{FlagMode, LineSummand, SplitParabolicBundle};

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (any::<i32>(), 1..10_000i32).prop_map(|(n, d)| Rat::new(n as i64, d as i64))
}

fn canonical(r: &Rat) -> bool {
    let num: &BigInt = r.numer();
    let den: &BigInt = r.denom();
    den.is_positive() && num.abs().gcd(den) == BigInt::one()
}

proptest! {
    // Canonical form is closed under all four operations.
    #[test]
    fn rational_ops_stay_canonical(a in rat_strategy(), b in rat_strategy()) {
        prop_assert!(canonical(&(a.clone() + b.clone())));
        prop_assert!(canonical(&(a.clone() - b.clone())));
        prop_assert!(canonical(&(a.clone() * b.clone())));
        if !b.is_zero() {
            prop_assert!(canonical(&(a.clone() / b.clone())));
        }
        // Field axioms spot checks, exactly.
        prop_assert_eq!(a.clone() + b.clone() - b.clone(), a.clone());
        if !b.is_zero() {
            prop_assert_eq!(a.clone() * b.clone() / b.clone(), a);
        }
    }

    // Serialization of rationals round-trips through the "p/q" form.
    #[test]
    fn rational_string_round_trip(a in rat_strategy()) {
        let s = a.to_string();
        prop_assert!(s.contains('/'));
        let back: Rat = s.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    // Bundle JSON round-trips exactly.
    #[test]
    fn bundle_json_round_trip(
        degs in prop::collection::vec(-9i64..9, 1..4),
        seed in any::<u64>(),
    ) {
        let d = (seed % 4) as usize;
        let summands: Vec<LineSummand> = degs
            .iter()
            .enumerate()
            .map(|(i, &deg)| LineSummand {
                degree: deg,
                weights: (0..d)
                    .map(|j| Rat::new(((seed >> (i + j)) % 7) as i64, 7))
                    .collect(),
            })
            .collect();
        let bundle = SplitParabolicBundle::new(d, summands, FlagMode::Adapted).unwrap();
        let json = serde_json::to_string(&bundle).unwrap();
        let back: SplitParabolicBundle = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, bundle);
    }
}

mod common;

use common::{random_linear_family, random_tournament_family};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rigidsep::check::{is_minimal_profile, is_separating, is_two_dense, profile};
use rigidsep::construct::{all_tournaments, best_known_family, extend_family, optimal_tournament_family};
use rigidsep::json;
use rigidsep::sat::{encode, model_of, EncodeOptions};
use rigidsep::Family;

fn family(seed: u64, m: usize, n: usize, tournament: bool) -> Family {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if tournament {
        random_tournament_family(&mut rng, m, n)
    } else {
        random_linear_family(&mut rng, m, n)
    }
}

fn linear_family() -> impl Strategy<Value = Family> {
    (any::<u64>(), 2usize..=7, 1usize..=6).prop_map(|(s, m, n)| family(s, m, n, false))
}

fn any_family() -> impl Strategy<Value = Family> {
    (any::<u64>(), 2usize..=7, 1usize..=6, any::<bool>()).prop_map(|(s, m, n, t)| family(s, m, n, t))
}

proptest! {
    #[test]
    fn relabeling_preserves_separation(fam in any_family(), seed in any::<u64>()) {
        let m = fam.m();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_linear_family(&mut rng, m, 1).linear_orders().unwrap()[0].perm().to_vec();
        let moved = fam.relabel(&f).unwrap();
        prop_assert_eq!(is_separating(&moved).unwrap(), is_separating(&fam).unwrap());
    }

    #[test]
    fn reversed_pair_has_complement_profile(fam in linear_family(), x in 0usize..7, y in 0usize..7) {
        let m = fam.m();
        let (x, y) = (x % m, y % m);
        prop_assume!(x != y);
        let forward = profile(&fam, x, y).unwrap();
        let backward = profile(&fam, y, x).unwrap();
        prop_assert_eq!(backward, forward.complement());
    }

    #[test]
    fn minimal_profile_does_not_depend_on_reference(fam in any_family()) {
        let sep = is_separating(&fam).unwrap();
        for r in 0..fam.len() {
            prop_assert_eq!(is_minimal_profile(&fam, r).unwrap(), sep);
        }
    }

    #[test]
    fn inverse_family_separates_alike(fam in any_family()) {
        prop_assert_eq!(is_separating(&fam.inverse()).unwrap(), is_separating(&fam).unwrap());
    }

    #[test]
    fn extension_keeps_separation_and_adds_one(seed in any::<u64>(), m in 3usize..=8, extra in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = best_known_family(m).unwrap();
        let f = random_linear_family(&mut rng, m, 1).linear_orders().unwrap()[0].perm().to_vec();
        let mut orders = base.relabel(&f).unwrap().linear_orders().unwrap().to_vec();
        orders.extend(random_linear_family(&mut rng, m, extra).linear_orders().unwrap().iter().cloned());
        let shift = seed as usize % orders.len();
        orders.rotate_left(shift);
        let fam = Family::linear(m, orders).unwrap();
        prop_assert!(is_separating(&fam).unwrap());
        let ext = extend_family(&fam).unwrap();
        prop_assert_eq!((ext.m(), ext.len()), (m + 1, fam.len() + 1));
        prop_assert!(is_separating(&ext).unwrap());
    }

    #[test]
    fn json_round_trip(fam in any_family()) {
        prop_assert_eq!(json::from_json(&json::to_json(&fam)).unwrap(), fam);
    }

    #[test]
    fn separating_families_satisfy_their_encoding(fam in linear_family()) {
        let inst = encode(fam.m(), fam.len(), EncodeOptions { fix_first: false }).unwrap();
        let model = model_of(&inst, &fam).unwrap();
        prop_assert_eq!(model.satisfies(&inst), is_separating(&fam).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn two_density_matches_separation(seed in any::<u64>(), m in 2usize..=5, n in 1usize..=6, t in any::<bool>()) {
        let fam = family(seed, m, n, t);
        let ambient = all_tournaments(m);
        prop_assert_eq!(is_two_dense(&fam, &ambient).unwrap(), is_separating(&fam).unwrap());
    }
}

#[test]
fn two_density_on_optimal_families() {
    for m in 2..=5 {
        let fam = optimal_tournament_family(m).unwrap();
        assert!(is_two_dense(&fam, &all_tournaments(m)).unwrap());
    }
}

#[test]
fn two_points_cannot_be_extended_by_one() {
    let fam = best_known_family(2).unwrap();
    assert!(extend_family(&fam).is_err());
}

mod common;

use common::{all_linear_families, random_linear_family, random_tournament_family};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rigidsep::check::{
    is_hereditarily_rigid_antichain, is_hereditarily_rigid_definitional, is_minimal_profile, is_separating,
};
use rigidsep::construct::all_tournaments;
use rigidsep::{Family, PartialUnaryMap, Tournament};

fn verdicts(fam: &Family) -> [bool; 3] {
    [
        is_separating(fam).unwrap(),
        is_hereditarily_rigid_definitional(fam),
        is_hereditarily_rigid_antichain(fam),
    ]
}

fn assert_consistent(fam: &Family) -> bool {
    let v = verdicts(fam);
    assert!(v[0] == v[1] && v[1] == v[2], "checkers disagree on {fam:?}: {v:?}");
    for r in 0..fam.len() {
        assert_eq!(is_minimal_profile(fam, r).unwrap(), v[0], "reference {r} on {fam:?}");
    }
    v[0]
}

/// Rigidity straight from the definition: every partial map, any domain size.
fn rigid_by_all_partial_maps(fam: &Family) -> bool {
    let m = fam.m();
    // value m encodes "undefined"
    let mut code = vec![0usize; m];
    loop {
        let domain: Vec<usize> = (0..m).filter(|&x| code[x] < m).collect();
        let values: Vec<usize> = domain.iter().map(|&x| code[x]).collect();
        let f = PartialUnaryMap::new(domain, values).unwrap();
        if !(f.is_identity_on_domain() || f.is_constant()) && f.preserves_family(fam) {
            return false;
        }
        let mut d = 0;
        loop {
            if d == m {
                return true;
            }
            code[d] += 1;
            if code[d] <= m {
                break;
            }
            code[d] = 0;
            d += 1;
        }
    }
}

#[test]
fn exhaustive_linear_families() {
    let mut separating = 0;
    let mut total = 0;
    for m in 0..=4 {
        for n in 0..=3 {
            if m == 0 && n > 0 {
                continue;
            }
            let families = if n == 0 {
                vec![Family::linear(m, Vec::new()).unwrap()]
            } else {
                all_linear_families(m, n)
            };
            for fam in families {
                total += 1;
                if assert_consistent(&fam) {
                    separating += 1;
                }
            }
        }
    }
    assert_eq!(total, 1 + (1 + 1 + 1 + 1) + (1 + 2 + 4 + 8) + (1 + 6 + 36 + 216) + (1 + 24 + 576 + 13824));
    assert!(separating > 0);
}

#[test]
fn exhaustive_tournament_families() {
    for m in 2..=4 {
        let all: Vec<Tournament> = all_tournaments(m).to_tournaments().unwrap();
        for n in 1..=3usize {
            if m == 4 && n == 3 {
                continue;
            }
            let mut idx = vec![0usize; n];
            'outer: loop {
                let fam = Family::tournaments(m, idx.iter().map(|&i| all[i].clone()).collect()).unwrap();
                assert_consistent(&fam);
                for d in (0..n).rev() {
                    idx[d] += 1;
                    if idx[d] < all.len() {
                        continue 'outer;
                    }
                    idx[d] = 0;
                }
                break;
            }
        }
    }
}

#[test]
fn exhaustive_tournament_triples_on_four_points() {
    let all: Vec<Tournament> = all_tournaments(4).to_tournaments().unwrap();
    let mut count = 0u32;
    for a in &all {
        for b in &all {
            for c in &all {
                let fam = Family::tournaments(4, vec![a.clone(), b.clone(), c.clone()]).unwrap();
                let v = verdicts(&fam);
                assert!(v[0] == v[1] && v[1] == v[2]);
                // 12 ordered pairs cannot get distinct 3-bit profiles
                assert!(!v[0]);
                count += 1;
            }
        }
    }
    assert_eq!(count, 64 * 64 * 64);
}

#[test]
fn random_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut positives = 0;
    for i in 0..1000 {
        let m = rng.gen_range(2..=7);
        let n = rng.gen_range(1..=6);
        let fam = if i % 2 == 0 {
            random_linear_family(&mut rng, m, n)
        } else {
            random_tournament_family(&mut rng, m, n)
        };
        if assert_consistent(&fam) {
            positives += 1;
        }
    }
    assert!(positives > 10, "only {positives} separating samples");
}

#[test]
fn two_point_domains_decide_rigidity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for m in 2..=4 {
        for fam in all_linear_families(m, 2).into_iter().take(200) {
            assert_eq!(rigid_by_all_partial_maps(&fam), is_hereditarily_rigid_definitional(&fam));
        }
        for _ in 0..200 {
            let n = rng.gen_range(1..=4);
            let fam = random_tournament_family(&mut rng, m, n);
            assert_eq!(rigid_by_all_partial_maps(&fam), is_hereditarily_rigid_definitional(&fam));
        }
    }
}

#[test]
fn degenerate_ground_sets() {
    for m in 0..=1 {
        let empty = Family::linear(m, Vec::new()).unwrap();
        assert_eq!(verdicts(&empty), [true; 3]);
    }
    let empty = Family::linear(2, Vec::new()).unwrap();
    assert_eq!(verdicts(&empty), [false; 3]);
}

#[test]
fn no_rigid_pair_of_relations_on_three_points() {
    use rigidsep::{BinaryRelation, Reflexivity};
    let off: Vec<(usize, usize)> = (0..3).flat_map(|x| (0..3).filter(move |&y| y != x).map(move |y| (x, y))).collect();
    let mut all = Vec::new();
    for refl in [Reflexivity::Irreflexive, Reflexivity::Reflexive] {
        for mask in 0u32..1 << off.len() {
            all.push(BinaryRelation::from_fn(3, refl, |x, y| {
                mask >> off.iter().position(|&p| p == (x, y)).unwrap() & 1 == 1
            }));
        }
    }
    let mut rigid = 0;
    for a in &all {
        for b in &all {
            let fam = Family::relations(3, vec![a.clone(), b.clone()]).unwrap();
            let d = is_hereditarily_rigid_definitional(&fam);
            assert_eq!(d, is_hereditarily_rigid_antichain(&fam));
            assert_eq!(d, rigid_by_all_partial_maps(&fam));
            rigid += usize::from(d);
        }
    }
    assert_eq!(all.len(), 128);
    assert_eq!(rigid, 0);
}

use std::time::Instant;

use rigidsep::check::is_separating;
use rigidsep::search::{
    brute_force_oracle, exists_separating_lin_with, exists_separating_tour, SearchBudget, SearchStatus, SymmetryFlags,
};
use rigidsep::FamilyKind;

fn check_found(status: &SearchStatus, m: usize, n: usize) {
    if let SearchStatus::Found(fam) = status {
        assert_eq!((fam.m(), fam.len()), (m, n));
        assert!(is_separating(fam).unwrap());
    }
}

fn linear_cells(m: usize) {
    let budget = SearchBudget::default();
    for n in 1..=5 {
        let start = Instant::now();
        let oracle = brute_force_oracle(m, n, FamilyKind::Linear).unwrap();
        check_found(&oracle.status, m, n);
        for flags in SymmetryFlags::combinations() {
            let out = exists_separating_lin_with(m, n, &budget, flags).unwrap();
            check_found(&out.status, m, n);
            assert!(out.status.same_answer(&oracle.status), "m={m} n={n} {flags:?}: {} vs {}", out.status, oracle.status);
        }
        eprintln!("m={m} n={n}: {} in {:?}", oracle.status, start.elapsed());
    }
}

#[test]
fn linear_two_and_three_points() {
    linear_cells(2);
    linear_cells(3);
}

#[test]
fn linear_four_points() {
    linear_cells(4);
}

#[test]
fn linear_five_points() {
    linear_cells(5);
}

#[test]
fn tournaments_up_to_four_points() {
    let budget = SearchBudget::default();
    for m in 2..=4 {
        for n in 1..=4 {
            let oracle = brute_force_oracle(m, n, FamilyKind::Tournament).unwrap();
            for flags in SymmetryFlags::combinations() {
                let out = exists_separating_tour(m, n, &budget, flags).unwrap();
                check_found(&out.status, m, n);
                assert!(out.status.same_answer(&oracle.status), "m={m} n={n} {flags:?}");
            }
        }
    }
}

#[test]
fn parallel_search_agrees() {
    let budget = SearchBudget::new(u64::MAX, std::time::Duration::from_secs(600), 4).unwrap();
    for (m, n) in [(4, 3), (4, 4), (5, 4), (5, 5), (6, 4), (6, 5)] {
        let serial = exists_separating_lin_with(m, n, &SearchBudget::default(), SymmetryFlags::ALL).unwrap();
        let parallel = exists_separating_lin_with(m, n, &budget, SymmetryFlags::ALL).unwrap();
        check_found(&parallel.status, m, n);
        assert!(serial.status.same_answer(&parallel.status));
    }
}

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rigidsep::construct::all_linear_orders;
use rigidsep::sat::{parse_model, CnfInstance, SolverAnswer};
use rigidsep::{Family, LinearOrder, Tournament};

/// Hands DIMACS text to varisat and renders its answer in competition output format.
pub fn solve_dimacs(text: &str) -> String {
    let mut solver = varisat::Solver::new();
    solver.add_dimacs_cnf(text.as_bytes()).expect("solver accepts the file");
    if solver.solve().expect("solver finishes") {
        let mut lits: Vec<isize> = solver.model().unwrap().iter().map(|l| l.to_dimacs()).collect();
        // varisat leaves out variables that occur in no clause; list them like other solvers do
        let declared: isize = text
            .lines()
            .find_map(|l| l.strip_prefix("p cnf "))
            .and_then(|h| h.split_whitespace().next())
            .and_then(|v| v.parse().ok())
            .unwrap_or(0);
        let known: std::collections::HashSet<isize> = lits.iter().map(|l| l.abs()).collect();
        lits.extend((1..=declared).filter(|v| !known.contains(v)).map(|v| -v));
        let lits: Vec<String> = lits.iter().map(|l| l.to_string()).collect();
        format!("s SATISFIABLE\nv {} 0\n", lits.join(" "))
    } else {
        "s UNSATISFIABLE\n".to_string()
    }
}

pub fn solve(inst: &CnfInstance) -> SolverAnswer {
    parse_model(&solve_dimacs(&inst.to_dimacs())).expect("well-formed solver output")
}

pub fn random_linear_family(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Family {
    let orders = (0..n)
        .map(|_| {
            let mut perm: Vec<usize> = (0..m).collect();
            for i in (1..m).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            LinearOrder::new(perm).unwrap()
        })
        .collect();
    Family::linear(m, orders).unwrap()
}

pub fn random_tournament_family(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Family {
    let members = (0..n).map(|_| Tournament::from_fn(m, |_, _| rng.gen_bool(0.5))).collect();
    Family::tournaments(m, members).unwrap()
}

/// Every `n`-tuple (with repetition) of linear orders on `m` points.
pub fn all_linear_families(m: usize, n: usize) -> Vec<Family> {
    let orders = all_linear_orders(m);
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        out.push(Family::linear(m, idx.iter().map(|&i| orders[i].clone()).collect()).unwrap());
        let mut d = n;
        loop {
            if d == 0 {
                return out;
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] < orders.len() {
                break;
            }
            idx[d] = 0;
        }
    }
}

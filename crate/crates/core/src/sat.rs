//! CNF encoding of "is there a separating family of `n` linear orders on `m` points?".
//!
//! Variables:
//! * `o(k, i, j)` for every member `k` and increasing pair `i < j`: `i <_k j`.
//!   The opposite orientation is the negated literal, so antisymmetry and
//!   totality are free.
//! * `d(q, k)` for every unordered pair `q = {P, P'}` of increasing pairs and every
//!   member `k`: `d <-> o(k, P) xor o(k, P')` (four clauses each).
//!
//! Clauses, with `P = C(m,2)`, `T = C(m,3)`, `Q = C(P,2)`:
//! * transitivity: two 3-cycle exclusions per triple and member, `2nT`;
//! * xor definitions, `4nQ`;
//! * with the first member fixed to the natural order (default): `P` unit
//!   clauses and one covering clause `∨_k d(q,k)` per `q` (`Q`): profiles of the
//!   pairs inside the natural order must differ;
//! * without it: per `q` the covering clause and `∨_k ¬d(q,k)` (`2Q`), which
//!   forbids both equal and complementary profiles.

use std::fmt::Write as _;

use crate::bits::{binomial, increasing_pairs, pair_count, pair_index};
use crate::check::is_separating;
use crate::error::{Error, Result};
use crate::relation::{Family, LinearOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EncodeOptions {
    /// Fix member 0 to the natural order and require only distinct profiles on its pairs.
    pub fix_first: bool,
}

impl Default for EncodeOptions {
    fn default() -> Self {
        Self { fix_first: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfInstance {
    pub m: usize,
    pub n: usize,
    pub options: EncodeOptions,
    pub var_count: u32,
    pub clauses: Vec<Vec<i32>>,
}

/// What a variable stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarRole {
    /// `i <_k j`, `i < j`.
    Order { k: usize, i: usize, j: usize },
    /// xor of member `k` on increasing pairs `first` and `second`.
    Diff { k: usize, first: (usize, usize), second: (usize, usize) },
}

/// Closed-form `(variables, clauses)` of [`encode`].
pub fn expected_size(m: usize, n: usize, options: EncodeOptions) -> (u64, u64) {
    let p = pair_count(m) as u64;
    let t = binomial(m as u64, 3).unwrap_or(0) as u64;
    let q = binomial(p, 2).unwrap_or(0) as u64;
    let n = n as u64;
    let vars = n * p + n * q;
    let clauses = if options.fix_first { p + 2 * n * t + 4 * n * q + q } else { 2 * n * t + 4 * n * q + 2 * q };
    (vars, clauses)
}

impl CnfInstance {
    fn pairs(&self) -> usize {
        pair_count(self.m)
    }

    pub fn order_var(&self, k: usize, i: usize, j: usize) -> i32 {
        debug_assert!(k < self.n && i < j && j < self.m);
        (1 + k * self.pairs() + pair_index(self.m, i, j)) as i32
    }

    /// Literal for `x <_k y` with `x != y`.
    pub fn order_lit(&self, k: usize, x: usize, y: usize) -> i32 {
        if x < y {
            self.order_var(k, x, y)
        } else {
            -self.order_var(k, y, x)
        }
    }

    /// Variable for `{pair p, pair p'}` with `p < p'` (pair indices).
    pub fn diff_var(&self, p: usize, p2: usize, k: usize) -> i32 {
        let pairs = self.pairs();
        debug_assert!(p < p2 && p2 < pairs);
        let q = p * (2 * pairs - p - 1) / 2 + (p2 - p - 1);
        (1 + self.n * pairs + q * self.n + k) as i32
    }

    pub fn var_map(&self) -> Vec<(i32, VarRole)> {
        let mut out = Vec::with_capacity(self.var_count as usize);
        for k in 0..self.n {
            for (i, j) in increasing_pairs(self.m) {
                out.push((self.order_var(k, i, j), VarRole::Order { k, i, j }));
            }
        }
        let pairs: Vec<(usize, usize)> = increasing_pairs(self.m).collect();
        for (p, &first) in pairs.iter().enumerate() {
            for (p2, &second) in pairs.iter().enumerate().skip(p + 1) {
                for k in 0..self.n {
                    out.push((self.diff_var(p, p2, k), VarRole::Diff { k, first, second }));
                }
            }
        }
        out
    }

    /// DIMACS text; comment lines carry the parameters and the variable map (1-based labels).
    pub fn to_dimacs(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "c rigidsep separating-linear-orders m={} n={} fix_first={}",
            self.m,
            self.n,
            u8::from(self.options.fix_first)
        );
        for (var, role) in self.var_map() {
            let _ = match role {
                VarRole::Order { k, i, j } => writeln!(s, "c order {} {} {} {var}", k + 1, i + 1, j + 1),
                VarRole::Diff { k, first, second } => writeln!(
                    s,
                    "c diff {} {} {} {} {} {var}",
                    k + 1,
                    first.0 + 1,
                    first.1 + 1,
                    second.0 + 1,
                    second.1 + 1
                ),
            };
        }
        let _ = writeln!(s, "p cnf {} {}", self.var_count, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                let _ = write!(s, "{lit} ");
            }
            s.push_str("0\n");
        }
        s
    }

    /// Reads back a file written by [`CnfInstance::to_dimacs`].
    pub fn from_dimacs(text: &str) -> Result<CnfInstance> {
        let mut params: Option<(usize, usize, bool)> = None;
        let mut header: Option<(u32, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("c rigidsep ") {
                params = Some(parse_params(rest)?);
                continue;
            }
            if line.starts_with('c') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("p cnf") {
                let nums: Vec<&str> = rest.split_whitespace().collect();
                if nums.len() != 2 {
                    return Err(Error::Dimacs(format!("bad header '{line}'")));
                }
                let v = nums[0].parse().map_err(|_| Error::Dimacs(format!("bad header '{line}'")))?;
                let c = nums[1].parse().map_err(|_| Error::Dimacs(format!("bad header '{line}'")))?;
                header = Some((v, c));
                continue;
            }
            for tok in line.split_whitespace() {
                let lit: i32 = tok.parse().map_err(|_| Error::Dimacs(format!("bad literal '{tok}'")))?;
                if lit == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else {
                    current.push(lit);
                }
            }
        }
        if !current.is_empty() {
            return Err(Error::Dimacs("last clause is not terminated by 0".into()));
        }
        let (m, n, fix_first) = params.ok_or_else(|| Error::Dimacs("missing 'c rigidsep' parameter line".into()))?;
        let (var_count, clause_count) = header.ok_or_else(|| Error::Dimacs("missing 'p cnf' header".into()))?;
        if clause_count != clauses.len() {
            return Err(Error::Dimacs(format!("header announces {clause_count} clauses, found {}", clauses.len())));
        }
        Ok(CnfInstance { m, n, options: EncodeOptions { fix_first }, var_count, clauses })
    }
}

fn parse_params(rest: &str) -> Result<(usize, usize, bool)> {
    let mut m = None;
    let mut n = None;
    let mut fix = None;
    for tok in rest.split_whitespace() {
        let Some((key, value)) = tok.split_once('=') else { continue };
        let v: usize = value.parse().map_err(|_| Error::Dimacs(format!("bad parameter '{tok}'")))?;
        match key {
            "m" => m = Some(v),
            "n" => n = Some(v),
            "fix_first" => fix = Some(v != 0),
            _ => {}
        }
    }
    match (m, n, fix) {
        (Some(m), Some(n), Some(f)) => Ok((m, n, f)),
        _ => Err(Error::Dimacs(format!("incomplete parameter line '{rest}'"))),
    }
}

pub fn encode(m: usize, n: usize, options: EncodeOptions) -> Result<CnfInstance> {
    if m < 2 {
        return Err(Error::GroundTooSmall { m, min: 2 });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("family size must be at least 1".into()));
    }
    let (vars, _) = expected_size(m, n, options);
    if vars > i32::MAX as u64 {
        return Err(Error::TooLarge(format!("{vars} variables")));
    }
    let mut inst = CnfInstance { m, n, options, var_count: vars as u32, clauses: Vec::new() };
    let mut clauses = Vec::new();
    if options.fix_first {
        for (i, j) in increasing_pairs(m) {
            clauses.push(vec![inst.order_var(0, i, j)]);
        }
    }
    for k in 0..n {
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    let (ab, bc, ac) = (inst.order_var(k, a, b), inst.order_var(k, b, c), inst.order_var(k, a, c));
                    // no a<b<c<a and no a>b>c>a
                    clauses.push(vec![-ab, -bc, ac]);
                    clauses.push(vec![ab, bc, -ac]);
                }
            }
        }
    }
    let pairs: Vec<(usize, usize)> = increasing_pairs(m).collect();
    for (p, &(i, j)) in pairs.iter().enumerate() {
        for (p2, &(i2, j2)) in pairs.iter().enumerate().skip(p + 1) {
            let mut cover = Vec::with_capacity(n);
            let mut anti = Vec::with_capacity(n);
            for k in 0..n {
                let d = inst.diff_var(p, p2, k);
                let a = inst.order_var(k, i, j);
                let b = inst.order_var(k, i2, j2);
                clauses.push(vec![-d, a, b]);
                clauses.push(vec![-d, -a, -b]);
                clauses.push(vec![d, -a, b]);
                clauses.push(vec![d, a, -b]);
                cover.push(d);
                anti.push(-d);
            }
            clauses.push(cover);
            if !options.fix_first {
                clauses.push(anti);
            }
        }
    }
    inst.clauses = clauses;
    Ok(inst)
}

/// A truth assignment read from solver output.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Model {
    values: Vec<Option<bool>>,
}

impl Model {
    pub fn from_literals<I: IntoIterator<Item = i32>>(lits: I) -> Model {
        let mut model = Model::default();
        for lit in lits {
            if lit == 0 {
                continue;
            }
            let v = lit.unsigned_abs() as usize;
            if model.values.len() <= v {
                model.values.resize(v + 1, None);
            }
            model.values[v] = Some(lit > 0);
        }
        model
    }

    pub fn value(&self, var: u32) -> Option<bool> {
        self.values.get(var as usize).copied().flatten()
    }

    /// `true` when every clause has a satisfied literal.
    pub fn satisfies(&self, inst: &CnfInstance) -> bool {
        inst.clauses
            .iter()
            .all(|c| c.iter().any(|&l| self.value(l.unsigned_abs()) == Some(l > 0)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolverAnswer {
    Sat(Model),
    Unsat,
    Unknown,
}

/// Parses solver output: `s SATISFIABLE` / `s UNSATISFIABLE` status lines and
/// `v`-lines of literals. Bare literal lines (MiniSat result files, after a
/// `SAT` line) are accepted too.
pub fn parse_model(text: &str) -> Result<SolverAnswer> {
    let mut status: Option<bool> = None;
    let mut lits = Vec::new();
    let mut any_lits = false;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let body = if let Some(rest) = line.strip_prefix("s ") {
            match rest.trim() {
                "SATISFIABLE" => status = Some(true),
                "UNSATISFIABLE" => status = Some(false),
                _ => {}
            }
            continue;
        } else if let Some(rest) = line.strip_prefix('v') {
            rest
        } else {
            match line {
                "SAT" => {
                    status = Some(true);
                    continue;
                }
                "UNSAT" => {
                    status = Some(false);
                    continue;
                }
                _ => line,
            }
        };
        for tok in body.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| Error::Dimacs(format!("bad model token '{tok}'")))?;
            lits.push(lit);
            any_lits = true;
        }
    }
    Ok(match status {
        Some(false) => SolverAnswer::Unsat,
        Some(true) => SolverAnswer::Sat(Model::from_literals(lits)),
        None if any_lits => SolverAnswer::Sat(Model::from_literals(lits)),
        None => SolverAnswer::Unknown,
    })
}

/// Rebuilds the `n` orders of a model and certifies that they separate.
pub fn decode(inst: &CnfInstance, model: &Model) -> Result<Family> {
    let m = inst.m;
    let mut orders = Vec::with_capacity(inst.n);
    for k in 0..inst.n {
        let mut less = vec![vec![false; m]; m];
        for (i, j) in increasing_pairs(m) {
            let var = inst.order_var(k, i, j) as u32;
            let v = model.value(var).ok_or(Error::MissingVariable(var))?;
            less[i][j] = v;
            less[j][i] = !v;
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if a != b && b != c && a != c && less[a][b] && less[b][c] && less[c][a] {
                        return Err(Error::NonTransitive { order: k, a, b, c });
                    }
                }
            }
        }
        // in a transitive tournament the number of elements above x is m-1-rank(x)
        let mut perm: Vec<usize> = (0..m).collect();
        perm.sort_by_key(|&x| std::cmp::Reverse(less[x].iter().filter(|&&v| v).count()));
        orders.push(LinearOrder::new(perm)?);
    }
    let fam = Family::linear(m, orders)?;
    if !is_separating(&fam)? {
        return Err(Error::DecodedNotSeparating);
    }
    Ok(fam)
}

/// The assignment that a family of `n` orders induces on all variables.
pub fn model_of(inst: &CnfInstance, fam: &Family) -> Result<Model> {
    let orders = fam.linear_orders().ok_or(Error::WrongKind { expected: "linear", found: fam.kind() })?;
    if orders.len() != inst.n || fam.m() != inst.m {
        return Err(Error::InvalidArgument("family does not match the instance".into()));
    }
    let mut lits = Vec::with_capacity(inst.var_count as usize);
    for (var, role) in inst.var_map() {
        let value = match role {
            VarRole::Order { k, i, j } => orders[k].less(i, j),
            VarRole::Diff { k, first, second } => {
                orders[k].less(first.0, first.1) != orders[k].less(second.0, second.1)
            }
        };
        lits.push(if value { var } else { -var });
    }
    Ok(Model::from_literals(lits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::paper_family_6;

    #[test]
    fn sizes_match_closed_form() {
        for m in 2..=7 {
            for n in 1..=6 {
                for fix_first in [true, false] {
                    let opts = EncodeOptions { fix_first };
                    let inst = encode(m, n, opts).unwrap();
                    let (v, c) = expected_size(m, n, opts);
                    assert_eq!((u64::from(inst.var_count), inst.clauses.len() as u64), (v, c));
                    assert!(inst.clauses.iter().all(|c| !c.is_empty()));
                    assert_eq!(inst.var_map().len() as u32, inst.var_count);
                }
            }
        }
    }

    #[test]
    fn every_variable_is_used_with_fixed_first_member() {
        for (m, n) in [(2, 1), (3, 2), (5, 4)] {
            let inst = encode(m, n, EncodeOptions::default()).unwrap();
            let mut used = vec![false; inst.var_count as usize + 1];
            for c in &inst.clauses {
                for l in c {
                    used[l.unsigned_abs() as usize] = true;
                }
            }
            assert!(used[1..].iter().all(|&u| u));
        }
    }

    #[test]
    fn smallest_instance() {
        let inst = encode(2, 1, EncodeOptions::default()).unwrap();
        assert_eq!(inst.var_count, 1);
        assert_eq!(inst.clauses, vec![vec![1]]);
        let fam = decode(&inst, &Model::from_literals([1])).unwrap();
        assert_eq!(fam.linear_orders().unwrap()[0].to_string(), "12");
    }

    #[test]
    fn six_point_family_is_a_model() {
        let inst = encode(6, 5, EncodeOptions::default()).unwrap();
        let model = model_of(&inst, &paper_family_6()).unwrap();
        assert!(model.satisfies(&inst));
        let back = decode(&inst, &model).unwrap();
        assert_eq!(back, paper_family_6());
    }

    #[test]
    fn cyclic_model_is_rejected() {
        let inst = encode(3, 1, EncodeOptions::default()).unwrap();
        // 1<2, 2<3, 3<1
        let model = Model::from_literals([1, 3, -2]);
        assert!(matches!(decode(&inst, &model), Err(Error::NonTransitive { order: 0, .. })));
        let partial = Model::from_literals([1]);
        assert!(matches!(decode(&inst, &partial), Err(Error::MissingVariable(_))));
    }

    #[test]
    fn non_separating_model_is_reported() {
        let inst = encode(3, 1, EncodeOptions::default()).unwrap();
        let model = Model::from_literals([1, 2, 3]);
        assert_eq!(decode(&inst, &model), Err(Error::DecodedNotSeparating));
    }

    #[test]
    fn dimacs_round_trip() {
        for fix_first in [true, false] {
            let inst = encode(4, 3, EncodeOptions { fix_first }).unwrap();
            let text = inst.to_dimacs();
            assert!(text.contains(&format!("p cnf {} {}\n", inst.var_count, inst.clauses.len())));
            assert_eq!(CnfInstance::from_dimacs(&text).unwrap(), inst);
        }
        assert!(CnfInstance::from_dimacs("p cnf 1 1\n1 0\n").is_err());
    }

    #[test]
    fn model_formats() {
        let text = "c comment\ns SATISFIABLE\nv 1 -2\nv 3 0\n";
        match parse_model(text).unwrap() {
            SolverAnswer::Sat(m) => {
                assert_eq!(m.value(1), Some(true));
                assert_eq!(m.value(2), Some(false));
                assert_eq!(m.value(3), Some(true));
                assert_eq!(m.value(4), None);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(parse_model("s UNSATISFIABLE\n").unwrap(), SolverAnswer::Unsat);
        assert!(matches!(parse_model("SAT\n-1 2 0\n").unwrap(), SolverAnswer::Sat(_)));
        assert_eq!(parse_model("UNSAT\n").unwrap(), SolverAnswer::Unsat);
        assert_eq!(parse_model("").unwrap(), SolverAnswer::Unknown);
        assert!(parse_model("v x").is_err());
    }
}

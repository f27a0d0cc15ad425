//! Binary relations on a finite ground set `{0..m-1}` and families of them.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bits::{pair_count, pair_index, BitString};
use crate::error::{Error, Result};

/// The ground set `{0, .., m-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    m: usize,
}

impl GroundSet {
    pub fn new(m: usize) -> Self {
        Self { m }
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn check(&self, x: usize) -> Result<()> {
        if x < self.m {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { element: x, m: self.m })
        }
    }
}

/// Anything that can answer `(x, y) ∈ ρ` on a ground set of known size.
pub trait BinaryRel {
    fn ground_size(&self) -> usize;
    fn holds(&self, x: usize, y: usize) -> bool;
}

/// A linear order in one-line notation: `perm[i]` is the i-th smallest element.
///
/// As a relation it is reflexive (`x <= x`); off the diagonal it is a tournament.
#[derive(Clone)]
pub struct LinearOrder {
    perm: Vec<usize>,
    rank: OnceLock<Vec<usize>>,
}

impl LinearOrder {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let m = perm.len();
        let mut seen = vec![false; m];
        for &x in &perm {
            if x >= m {
                return Err(Error::InvalidPermutation { m, detail: format!("{x} out of range") });
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation { m, detail: format!("{x} repeated") });
            }
        }
        Ok(Self { perm, rank: OnceLock::new() })
    }

    pub fn natural(m: usize) -> Self {
        Self { perm: (0..m).collect(), rank: OnceLock::new() }
    }

    /// Parses 1-based labels, e.g. `[1, 3, 6, 5, 4, 2]`.
    pub fn from_one_line(labels: &[usize]) -> Result<Self> {
        let perm = labels
            .iter()
            .map(|&l| {
                l.checked_sub(1).ok_or_else(|| Error::InvalidPermutation {
                    m: labels.len(),
                    detail: "labels are 1-based".into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(perm)
    }

    /// Parses a digit string such as `"136542"` (1-based, m <= 9).
    pub fn parse_digits(s: &str) -> Result<Self> {
        let labels = s
            .chars()
            .map(|c| {
                c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::InvalidPermutation {
                    m: s.len(),
                    detail: format!("'{c}' is not a digit"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_one_line(&labels)
    }

    pub fn to_one_line(&self) -> Vec<usize> {
        self.perm.iter().map(|x| x + 1).collect()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    fn ranks(&self) -> &[usize] {
        self.rank.get_or_init(|| {
            let mut rank = vec![0; self.perm.len()];
            for (pos, &x) in self.perm.iter().enumerate() {
                rank[x] = pos;
            }
            rank
        })
    }

    /// Position of `x` in the order.
    pub fn rank(&self, x: usize) -> usize {
        self.ranks()[x]
    }

    /// Strict comparison `x <_ℓ y`.
    #[inline]
    pub fn less(&self, x: usize, y: usize) -> bool {
        let r = self.ranks();
        r[x] < r[y]
    }

    pub fn is_natural(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// The dual order.
    pub fn reversed(&self) -> Self {
        Self { perm: self.perm.iter().rev().copied().collect(), rank: OnceLock::new() }
    }

    /// Image under the bijection `x -> f[x]`.
    pub fn relabel(&self, f: &[usize]) -> Self {
        Self { perm: self.perm.iter().map(|&x| f[x]).collect(), rank: OnceLock::new() }
    }

    pub fn to_tournament(&self) -> Tournament {
        Tournament::from_fn(self.len(), |x, y| self.less(x, y))
    }
}

impl PartialEq for LinearOrder {
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm
    }
}

impl Eq for LinearOrder {}

impl std::hash::Hash for LinearOrder {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.perm.hash(state)
    }
}

impl fmt::Display for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.to_one_line();
        if self.len() <= 9 {
            for l in labels {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
            f.write_str(&parts.join(" "))
        }
    }
}

impl fmt::Debug for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearOrder({self})")
    }
}

impl BinaryRel for LinearOrder {
    fn ground_size(&self) -> usize {
        self.len()
    }

    fn holds(&self, x: usize, y: usize) -> bool {
        x == y || self.less(x, y)
    }
}

/// A tournament stored as one bit per increasing pair: bit `(i, j)`, `i < j`, is set when `i` beats `j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    m: usize,
    bits: BitString,
}

impl Tournament {
    pub fn from_fn(m: usize, mut beats: impl FnMut(usize, usize) -> bool) -> Self {
        let mut bits = BitString::zeros(pair_count(m));
        for i in 0..m {
            for j in i + 1..m {
                bits.set(pair_index(m, i, j), beats(i, j));
            }
        }
        Self { m, bits }
    }

    /// Builds a tournament from the low `pair_count(m)` bits of `mask` (pair order as in [`crate::bits::increasing_pairs`]).
    pub fn from_mask(m: usize, mask: u64) -> Self {
        let p = pair_count(m);
        assert!(p <= 64, "mask form needs at most 64 pairs");
        let mut bits = BitString::zeros(p);
        for k in 0..p {
            bits.set(k, mask >> k & 1 == 1);
        }
        Self { m, bits }
    }

    pub fn from_pair_bits(m: usize, bits: BitString) -> Result<Self> {
        if bits.len() != pair_count(m) {
            return Err(Error::InvalidArgument(format!(
                "tournament on {m} points needs {} pair bits, got {}",
                pair_count(m),
                bits.len()
            )));
        }
        Ok(Self { m, bits })
    }

    /// The transitive tournament of the natural order: `i` beats `j` whenever `i < j`.
    pub fn natural(m: usize) -> Self {
        Self { m, bits: BitString::zeros(pair_count(m)).complement() }
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn pair_bits(&self) -> &BitString {
        &self.bits
    }

    #[inline]
    pub fn beats(&self, x: usize, y: usize) -> bool {
        if x < y {
            self.bits.get(pair_index(self.m, x, y))
        } else if y < x {
            !self.bits.get(pair_index(self.m, y, x))
        } else {
            false
        }
    }

    pub fn inverse(&self) -> Self {
        Self { m: self.m, bits: self.bits.complement() }
    }

    pub fn relabel(&self, f: &[usize]) -> Self {
        let mut inv = vec![0; self.m];
        for (x, &fx) in f.iter().enumerate() {
            inv[fx] = x;
        }
        Self::from_fn(self.m, |a, b| self.beats(inv[a], inv[b]))
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament(m={}, {})", self.m, self.bits)
    }
}

impl BinaryRel for Tournament {
    fn ground_size(&self) -> usize {
        self.m
    }

    fn holds(&self, x: usize, y: usize) -> bool {
        self.beats(x, y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reflexivity {
    Reflexive,
    Irreflexive,
}

/// A binary relation that is either reflexive or irreflexive, as an `m x m` bit matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryRelation {
    m: usize,
    matrix: BitString,
    reflexivity: Reflexivity,
}

impl BinaryRelation {
    /// Off-diagonal entries from `f`; the diagonal follows `reflexivity`.
    pub fn from_fn(m: usize, reflexivity: Reflexivity, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut matrix = BitString::zeros(m * m);
        for x in 0..m {
            for y in 0..m {
                let v = if x == y { reflexivity == Reflexivity::Reflexive } else { f(x, y) };
                matrix.set(x * m + y, v);
            }
        }
        Self { m, matrix, reflexivity }
    }

    /// Reads a square 0/1 matrix; the diagonal decides reflexivity.
    pub fn from_matrix(rows: &[Vec<bool>]) -> Result<Self> {
        let m = rows.len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::BadMatrixShape { m });
        }
        let reflexivity = if (0..m).all(|x| !rows[x][x]) {
            Reflexivity::Irreflexive
        } else if (0..m).all(|x| rows[x][x]) {
            Reflexivity::Reflexive
        } else {
            return Err(Error::MixedDiagonal);
        };
        Ok(Self::from_fn(m, reflexivity, |x, y| rows[x][y]))
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn reflexivity(&self) -> Reflexivity {
        self.reflexivity
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.matrix.get(x * self.m + y)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.m, self.reflexivity, |x, y| self.get(y, x))
    }

    pub fn relabel(&self, f: &[usize]) -> Self {
        let mut inv = vec![0; self.m];
        for (x, &fx) in f.iter().enumerate() {
            inv[fx] = x;
        }
        Self::from_fn(self.m, self.reflexivity, |a, b| self.get(inv[a], inv[b]))
    }

    /// Exactly one of `(x, y)`, `(y, x)` holds for every `x != y`.
    pub fn is_tournament_shaped(&self) -> bool {
        (0..self.m).all(|x| (x + 1..self.m).all(|y| self.get(x, y) != self.get(y, x)))
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        (0..self.m).map(|x| (0..self.m).map(|y| self.get(x, y)).collect()).collect()
    }
}

impl fmt::Debug for BinaryRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryRelation(m={}, {:?}, {})", self.m, self.reflexivity, self.matrix)
    }
}

impl BinaryRel for BinaryRelation {
    fn ground_size(&self) -> usize {
        self.m
    }

    fn holds(&self, x: usize, y: usize) -> bool {
        self.get(x, y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Linear,
    Tournament,
    Relation,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Linear => "linear",
            FamilyKind::Tournament => "tournament",
            FamilyKind::Relation => "relation",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Members {
    Linear(Vec<LinearOrder>),
    Tournament(Vec<Tournament>),
    Relation(Vec<BinaryRelation>),
}

/// An ordered list of relations of one kind over a shared ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    ground: GroundSet,
    members: Members,
}

impl Family {
    pub fn linear(m: usize, orders: Vec<LinearOrder>) -> Result<Self> {
        check_sizes(m, orders.iter().map(LinearOrder::len))?;
        Ok(Self { ground: GroundSet::new(m), members: Members::Linear(orders) })
    }

    pub fn tournaments(m: usize, members: Vec<Tournament>) -> Result<Self> {
        check_sizes(m, members.iter().map(Tournament::size))?;
        Ok(Self { ground: GroundSet::new(m), members: Members::Tournament(members) })
    }

    pub fn relations(m: usize, members: Vec<BinaryRelation>) -> Result<Self> {
        check_sizes(m, members.iter().map(BinaryRelation::size))?;
        Ok(Self { ground: GroundSet::new(m), members: Members::Relation(members) })
    }

    /// Convenience for 1-based digit strings, e.g. `["123", "231"]`.
    pub fn from_digit_strings(orders: &[&str]) -> Result<Self> {
        let orders = orders.iter().map(|s| LinearOrder::parse_digits(s)).collect::<Result<Vec<_>>>()?;
        let m = orders.first().map_or(0, LinearOrder::len);
        Self::linear(m, orders)
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn m(&self) -> usize {
        self.ground.size()
    }

    pub fn len(&self) -> usize {
        match &self.members {
            Members::Linear(v) => v.len(),
            Members::Tournament(v) => v.len(),
            Members::Relation(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn kind(&self) -> FamilyKind {
        match &self.members {
            Members::Linear(_) => FamilyKind::Linear,
            Members::Tournament(_) => FamilyKind::Tournament,
            Members::Relation(_) => FamilyKind::Relation,
        }
    }

    pub fn members(&self) -> &Members {
        &self.members
    }

    pub fn linear_orders(&self) -> Option<&[LinearOrder]> {
        match &self.members {
            Members::Linear(v) => Some(v),
            _ => None,
        }
    }

    pub fn member(&self, k: usize) -> &dyn BinaryRel {
        match &self.members {
            Members::Linear(v) => &v[k],
            Members::Tournament(v) => &v[k],
            Members::Relation(v) => &v[k],
        }
    }

    /// `(x, y) ∈ member k`.
    #[inline]
    pub fn holds(&self, k: usize, x: usize, y: usize) -> bool {
        match &self.members {
            Members::Linear(v) => x == y || v[k].less(x, y),
            Members::Tournament(v) => v[k].beats(x, y),
            Members::Relation(v) => v[k].get(x, y),
        }
    }

    /// Whether member `k` is reflexive. Linear orders are; tournaments are not.
    pub fn reflexivity(&self, k: usize) -> Reflexivity {
        match &self.members {
            Members::Linear(_) => Reflexivity::Reflexive,
            Members::Tournament(_) => Reflexivity::Irreflexive,
            Members::Relation(v) => v[k].reflexivity(),
        }
    }

    /// Views every member as a tournament. Linear orders convert directly;
    /// general relations must be tournament-shaped off the diagonal.
    pub fn to_tournaments(&self) -> Result<Vec<Tournament>> {
        let m = self.m();
        match &self.members {
            Members::Linear(v) => Ok(v.iter().map(LinearOrder::to_tournament).collect()),
            Members::Tournament(v) => Ok(v.clone()),
            Members::Relation(v) => v
                .iter()
                .enumerate()
                .map(|(index, r)| {
                    if r.is_tournament_shaped() {
                        Ok(Tournament::from_fn(m, |x, y| r.get(x, y)))
                    } else {
                        Err(Error::NotTournament { index })
                    }
                })
                .collect(),
        }
    }

    pub fn as_tournament_family(&self) -> Result<Family> {
        Family::tournaments(self.m(), self.to_tournaments()?)
    }

    /// Transposes every member.
    pub fn inverse(&self) -> Family {
        let members = match &self.members {
            Members::Linear(v) => Members::Linear(v.iter().map(LinearOrder::reversed).collect()),
            Members::Tournament(v) => Members::Tournament(v.iter().map(Tournament::inverse).collect()),
            Members::Relation(v) => Members::Relation(v.iter().map(BinaryRelation::transpose).collect()),
        };
        Family { ground: self.ground, members }
    }

    /// Image of the family under the ground-set bijection `x -> f[x]`.
    pub fn relabel(&self, f: &[usize]) -> Result<Family> {
        LinearOrder::new(f.to_vec())?;
        if f.len() != self.m() {
            return Err(Error::InvalidPermutation { m: self.m(), detail: format!("length {}", f.len()) });
        }
        let members = match &self.members {
            Members::Linear(v) => Members::Linear(v.iter().map(|o| o.relabel(f)).collect()),
            Members::Tournament(v) => Members::Tournament(v.iter().map(|t| t.relabel(f)).collect()),
            Members::Relation(v) => Members::Relation(v.iter().map(|r| r.relabel(f)).collect()),
        };
        Ok(Family { ground: self.ground, members })
    }
}

fn check_sizes(m: usize, sizes: impl Iterator<Item = usize>) -> Result<()> {
    for (index, found) in sizes.enumerate() {
        if found != m {
            return Err(Error::GroundMismatch { index, expected: m, found });
        }
    }
    Ok(())
}

/// A unary partial function on the ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialUnaryMap {
    domain: Vec<usize>,
    values: Vec<usize>,
}

impl PartialUnaryMap {
    pub fn new(domain: Vec<usize>, values: Vec<usize>) -> Result<Self> {
        if domain.len() != values.len() {
            return Err(Error::InvalidArgument("domain and values differ in length".into()));
        }
        for (i, x) in domain.iter().enumerate() {
            if domain[..i].contains(x) {
                return Err(Error::InvalidArgument(format!("{x} repeated in domain")));
            }
        }
        Ok(Self { domain, values })
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.domain.iter().position(|&d| d == x).map(|i| self.values[i])
    }

    pub fn is_injective(&self) -> bool {
        self.values.iter().enumerate().all(|(i, v)| !self.values[..i].contains(v))
    }

    pub fn is_identity_on_domain(&self) -> bool {
        self.domain.iter().zip(&self.values).all(|(d, v)| d == v)
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }

    /// Every tuple of `dom(f)^2 ∩ ρ` is sent into `ρ`.
    pub fn preserves(&self, rel: &dyn BinaryRel) -> bool {
        self.domain.iter().zip(&self.values).all(|(&u, &fu)| {
            self.domain
                .iter()
                .zip(&self.values)
                .all(|(&v, &fv)| !rel.holds(u, v) || rel.holds(fu, fv))
        })
    }

    pub fn preserves_family(&self, fam: &Family) -> bool {
        (0..fam.len()).all(|k| self.preserves(fam.member(k)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_order_basics() {
        let o = LinearOrder::parse_digits("136542").unwrap();
        assert_eq!(o.perm(), &[0, 2, 5, 4, 3, 1]);
        assert!(o.less(2, 5));
        assert!(o.less(5, 1));
        assert!(!o.less(1, 0));
        assert_eq!(o.to_string(), "136542");
        assert_eq!(o.reversed().to_string(), "245631");
        assert!(LinearOrder::new(vec![0, 0]).is_err());
        assert!(LinearOrder::new(vec![2, 0]).is_err());
        assert!(LinearOrder::parse_digits("102").is_err());
    }

    #[test]
    fn tournament_orientation() {
        let t = LinearOrder::parse_digits("231").unwrap().to_tournament();
        // 2 < 3 < 1 in 1-based labels
        assert!(t.beats(1, 2));
        assert!(t.beats(2, 0));
        assert!(t.beats(1, 0));
        assert!(!t.beats(0, 0));
        let inv = t.inverse();
        assert!(inv.beats(2, 1) && inv.beats(0, 2));
    }

    #[test]
    fn relation_diagonal_validation() {
        let ok = BinaryRelation::from_matrix(&[vec![true, true], vec![false, true]]).unwrap();
        assert_eq!(ok.reflexivity(), Reflexivity::Reflexive);
        assert!(ok.is_tournament_shaped());
        let mixed = BinaryRelation::from_matrix(&[vec![true, false], vec![false, false]]);
        assert_eq!(mixed, Err(Error::MixedDiagonal));
        let shape = BinaryRelation::from_matrix(&[vec![true, false], vec![false]]);
        assert!(matches!(shape, Err(Error::BadMatrixShape { .. })));
    }

    #[test]
    fn family_rejects_ground_mismatch() {
        let err = Family::linear(3, vec![LinearOrder::natural(3), LinearOrder::natural(2)]);
        assert!(matches!(err, Err(Error::GroundMismatch { index: 1, .. })));
    }

    #[test]
    fn relabel_moves_arcs() {
        let fam = Family::from_digit_strings(&["123"]).unwrap();
        // 0 -> 2, 1 -> 0, 2 -> 1
        let moved = fam.relabel(&[2, 0, 1]).unwrap();
        assert_eq!(moved.linear_orders().unwrap()[0].to_string(), "312");
        let tour = fam.as_tournament_family().unwrap().relabel(&[2, 0, 1]).unwrap();
        assert!(tour.holds(0, 2, 0));
    }

    #[test]
    fn partial_map_preservation() {
        let order = LinearOrder::natural(3);
        let shift = PartialUnaryMap::new(vec![0, 1], vec![1, 2]).unwrap();
        assert!(shift.preserves(&order));
        let swap = PartialUnaryMap::new(vec![0, 1], vec![1, 0]).unwrap();
        assert!(!swap.preserves(&order));
        assert!(shift.is_injective() && !shift.is_identity_on_domain());
    }
}

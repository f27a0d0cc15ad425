//! Profiles and the three equivalent rigidity / separation checks.

use std::collections::HashMap;
use std::fmt;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::relation::{Family, FamilyKind, PartialUnaryMap, Tournament};

pub type Pair = (usize, usize);

/// Bit `k` is `ρ_k(x, y)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Profile(pub BitString);

impl Profile {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, k: usize) -> bool {
        self.0.get(k)
    }

    pub fn complement(&self) -> Profile {
        Profile(self.0.complement())
    }

    pub fn bits(&self) -> &BitString {
        &self.0
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

/// Entry `k` is `(ρ_k(x, y), ρ_k(y, x))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DoubleProfile {
    forward: BitString,
    backward: BitString,
}

impl DoubleProfile {
    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn entry(&self, k: usize) -> (bool, bool) {
        (self.forward.get(k), self.backward.get(k))
    }

    pub fn entries(&self) -> impl Iterator<Item = (bool, bool)> + '_ {
        (0..self.len()).map(move |k| self.entry(k))
    }

    /// The entrywise involution `(a, b) -> (b, a)`.
    pub fn swap(&self) -> DoubleProfile {
        DoubleProfile { forward: self.backward.clone(), backward: self.forward.clone() }
    }

    /// Product order on `({0,1}^2)^n`.
    pub fn le(&self, other: &DoubleProfile) -> bool {
        self.forward.is_subset_of(&other.forward) && self.backward.is_subset_of(&other.backward)
    }
}

fn check_pair(fam: &Family, x: usize, y: usize) -> Result<()> {
    fam.ground().check(x)?;
    fam.ground().check(y)?;
    if x == y {
        return Err(Error::DiagonalPair(x));
    }
    Ok(())
}

pub fn profile(fam: &Family, x: usize, y: usize) -> Result<Profile> {
    check_pair(fam, x, y)?;
    Ok(Profile(BitString::from_bools((0..fam.len()).map(|k| fam.holds(k, x, y)))))
}

pub fn double_profile(fam: &Family, x: usize, y: usize) -> Result<DoubleProfile> {
    check_pair(fam, x, y)?;
    Ok(DoubleProfile {
        forward: BitString::from_bools((0..fam.len()).map(|k| fam.holds(k, x, y))),
        backward: BitString::from_bools((0..fam.len()).map(|k| fam.holds(k, y, x))),
    })
}

/// Two distinct off-diagonal ordered pairs sharing a profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collision {
    pub first: Pair,
    pub second: Pair,
    pub profile: Profile,
}

impl fmt::Display for Collision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{}) and ({},{}) share profile {}",
            self.first.0 + 1,
            self.first.1 + 1,
            self.second.0 + 1,
            self.second.1 + 1,
            self.profile
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    Separating,
    Collision(Collision),
}

impl Separation {
    pub fn holds(&self) -> bool {
        matches!(self, Separation::Separating)
    }

    pub fn collision(&self) -> Option<&Collision> {
        match self {
            Separation::Separating => None,
            Separation::Collision(c) => Some(c),
        }
    }
}

fn tournament_view(fam: &Family) -> Result<Vec<Tournament>> {
    match fam.kind() {
        FamilyKind::Linear | FamilyKind::Tournament => Ok(Vec::new()),
        FamilyKind::Relation => fam.to_tournaments(),
    }
}

/// Separation of all distinct off-diagonal ordered pairs.
///
/// Members must be linear orders or tournaments (general relations are
/// accepted when each one is tournament-shaped). Only pairs `x < y` are
/// visited; the reversed pair's profile is the complement and is inserted
/// alongside.
pub fn separation(fam: &Family) -> Result<Separation> {
    let converted = tournament_view(fam)?;
    let n = fam.len();
    let m = fam.m();
    let holds = |k: usize, x: usize, y: usize| -> bool {
        if converted.is_empty() {
            fam.holds(k, x, y)
        } else {
            converted[k].beats(x, y)
        }
    };
    if n <= 64 {
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut seen: HashMap<u64, Pair> = HashMap::with_capacity(m * m);
        for x in 0..m {
            for y in x + 1..m {
                let fwd = (0..n).fold(0u64, |acc, k| acc | u64::from(holds(k, x, y)) << k);
                for (code, pair) in [(fwd, (x, y)), (!fwd & full, (y, x))] {
                    if let Some(&other) = seen.get(&code) {
                        let bits = BitString::from_bools((0..n).map(|k| code >> k & 1 == 1));
                        return Ok(Separation::Collision(Collision { first: other, second: pair, profile: Profile(bits) }));
                    }
                    seen.insert(code, pair);
                }
            }
        }
        return Ok(Separation::Separating);
    }
    let mut seen: HashMap<BitString, Pair> = HashMap::with_capacity(m * m);
    for x in 0..m {
        for y in x + 1..m {
            let fwd = BitString::from_bools((0..n).map(|k| holds(k, x, y)));
            let bwd = fwd.complement();
            for (bits, pair) in [(fwd, (x, y)), (bwd, (y, x))] {
                if let Some(&other) = seen.get(&bits) {
                    return Ok(Separation::Collision(Collision {
                        first: other,
                        second: pair,
                        profile: Profile(bits),
                    }));
                }
                seen.insert(bits, pair);
            }
        }
    }
    Ok(Separation::Separating)
}

pub fn is_separating(fam: &Family) -> Result<bool> {
    Ok(separation(fam)?.holds())
}

/// Every injective non-identity map on a 2-element domain fails to preserve some member.
/// Returns the first preserving map found, if any.
pub fn rigidity_violation(fam: &Family) -> Option<PartialUnaryMap> {
    let m = fam.m();
    for x in 0..m {
        for y in x + 1..m {
            for a in 0..m {
                for b in 0..m {
                    if a == b || (a, b) == (x, y) {
                        continue;
                    }
                    let f = PartialUnaryMap::new(vec![x, y], vec![a, b]).expect("two distinct points");
                    if f.preserves_family(fam) {
                        return Some(f);
                    }
                }
            }
        }
    }
    None
}

pub fn is_hereditarily_rigid_definitional(fam: &Family) -> bool {
    rigidity_violation(fam).is_none()
}

/// Witness against the double-profile criterion: `p̃(lower) <= p̃(upper)` with `lower != upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparable {
    pub lower: Pair,
    pub upper: Pair,
}

pub fn antichain_violation(fam: &Family) -> Option<Comparable> {
    let m = fam.m();
    let pairs: Vec<Pair> = crate::bits::off_diagonal_pairs(m).collect();
    let profiles: Vec<DoubleProfile> = pairs
        .iter()
        .map(|&(x, y)| double_profile(fam, x, y).expect("off-diagonal pair in range"))
        .collect();
    for (i, p) in profiles.iter().enumerate() {
        for (j, q) in profiles.iter().enumerate() {
            if i != j && p.le(q) {
                return Some(Comparable { lower: pairs[i], upper: pairs[j] });
            }
        }
    }
    None
}

/// The double-profile map is injective and its range is an antichain.
pub fn is_hereditarily_rigid_antichain(fam: &Family) -> bool {
    antichain_violation(fam).is_none()
}

/// Profiles of the pairs inside member `reference` are pairwise distinct.
pub fn is_minimal_profile(fam: &Family, reference: usize) -> Result<bool> {
    if reference >= fam.len() {
        return Err(Error::BadIndex { index: reference, len: fam.len() });
    }
    let tours = fam.to_tournaments()?;
    let ell = &tours[reference];
    let m = fam.m();
    let mut seen = std::collections::HashSet::new();
    for x in 0..m {
        for y in 0..m {
            if x != y && ell.beats(x, y) {
                let bits = BitString::from_bools(tours.iter().map(|t| t.beats(x, y)));
                if !seen.insert(bits) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Every `ρ ∈ ambient` agrees with some member of `X ∪ X⁻¹` on every 2-element set of off-diagonal pairs.
pub fn is_two_dense(x: &Family, ambient: &Family) -> Result<bool> {
    if x.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if x.m() != ambient.m() {
        return Err(Error::GroundMismatch { index: 0, expected: x.m(), found: ambient.m() });
    }
    let xs = x.to_tournaments()?;
    let rs = ambient.to_tournaments()?;
    let pairs: Vec<Pair> = crate::bits::off_diagonal_pairs(x.m()).collect();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for &(c, d) in &pairs[i + 1..] {
            // bit (2*alpha + beta) set when some member of X ∪ X⁻¹ takes values (alpha, beta) on U
            let mut achieved = 0u8;
            for t in &xs {
                let v = (t.beats(a, b) as u8) << 1 | t.beats(c, d) as u8;
                let w = (t.beats(b, a) as u8) << 1 | t.beats(d, c) as u8;
                achieved |= 1 << v | 1 << w;
            }
            if achieved == 0b1111 {
                continue;
            }
            let covered = rs.iter().all(|r| {
                let v = (r.beats(a, b) as u8) << 1 | r.beats(c, d) as u8;
                achieved >> v & 1 == 1
            });
            if !covered {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn inverse_family(x: &Family) -> Family {
    x.inverse()
}

/// All three verdicts on one family, as reported by `verify`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdicts {
    /// `None` when the family is not made of tournaments / linear orders.
    pub separating: Option<Separation>,
    pub definitional: Option<PartialUnaryMap>,
    pub antichain: Option<Comparable>,
}

impl Verdicts {
    pub fn compute(fam: &Family) -> Verdicts {
        Verdicts {
            separating: separation(fam).ok(),
            definitional: rigidity_violation(fam),
            antichain: antichain_violation(fam),
        }
    }

    pub fn checker_count(&self) -> usize {
        2 + usize::from(self.separating.is_some())
    }

    /// Verdicts that came out `true`.
    pub fn positive_count(&self) -> usize {
        usize::from(self.separating.as_ref().is_some_and(Separation::holds))
            + usize::from(self.definitional.is_none())
            + usize::from(self.antichain.is_none())
    }

    pub fn agree(&self) -> bool {
        let p = self.positive_count();
        p == 0 || p == self.checker_count()
    }

    pub fn all_true(&self) -> bool {
        self.positive_count() == self.checker_count()
    }
}

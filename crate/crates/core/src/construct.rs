//! Explicit separating and hereditarily rigid families.
//!
//! Every constructor re-checks its output with the checkers in [`crate::check`]
//! before returning it.

use crate::bits::{binomial, increasing_pairs, pair_count, BitString};
use crate::check::{is_hereditarily_rigid_antichain, is_separating};
use crate::error::{Error, Result};
use crate::relation::{BinaryRelation, Family, LinearOrder, Reflexivity, Tournament};

/// The five orders on six points that realise the minimum for `m = 6`.
pub const SIX_POINT_ORDERS: [&str; 5] = ["123456", "136542", "216543", "432165", "532146"];

fn require_two(m: usize) -> Result<()> {
    if m < 2 {
        Err(Error::GroundTooSmall { m, min: 2 })
    } else {
        Ok(())
    }
}

/// `⌈log₂(m(m-1))⌉`: no fewer tournaments can separate `m` points.
pub fn lower_bound(m: usize) -> Result<usize> {
    require_two(m)?;
    let target = (m as u128) * (m as u128 - 1);
    Ok(target.next_power_of_two().trailing_zeros() as usize)
}

/// The `m` rotations of the natural order.
pub fn cyclic_family(m: usize) -> Result<Family> {
    require_two(m)?;
    let orders = (0..m)
        .map(|k| LinearOrder::new((0..m).map(|i| (k + i) % m).collect()))
        .collect::<Result<Vec<_>>>()?;
    certify(Family::linear(m, orders)?)
}

pub fn paper_family_6() -> Family {
    Family::from_digit_strings(&SIX_POINT_ORDERS).expect("valid one-line strings")
}

fn certify(fam: Family) -> Result<Family> {
    if is_separating(&fam)? {
        Ok(fam)
    } else {
        Err(Error::Internal(format!("constructed {} family on {} points does not separate", fam.kind(), fam.m())))
    }
}

/// `lower_bound(m)` tournaments: the natural order plus one tournament per
/// bit of the index of each increasing pair.
pub fn optimal_tournament_family(m: usize) -> Result<Family> {
    let n = lower_bound(m)?;
    let pairs = pair_count(m);
    // m(m-1) <= 2^n, so the pair indices fit in n-1 bits
    if n < 1 || (pairs as u128) > 1u128 << (n - 1) {
        return Err(Error::Internal(format!("{pairs} pairs do not fit in {} bits", n - 1)));
    }
    let mut members = Vec::with_capacity(n);
    members.push(Tournament::natural(m));
    for k in 1..n {
        let bit = k - 1;
        let bits = BitString::from_bools((0..pairs).map(|idx| idx >> bit & 1 == 1));
        members.push(Tournament::from_pair_bits(m, bits)?);
    }
    certify(Family::tournaments(m, members)?)
}

/// The insertion directives chosen by [`extend_family`]: bit `k - 1` is 1 when the
/// new point goes just after the old maximum in member `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionChoice(pub BitString);

#[derive(Clone, Debug)]
pub struct Extension {
    pub family: Family,
    pub choice: ExtensionChoice,
    /// `s(i, j)` for the old increasing pairs, in the relabelled frame where member 0 is natural.
    pub taken: Vec<BitString>,
}

/// Adds one point and one order to a separating family of linear orders.
pub fn extend_family(fam: &Family) -> Result<Family> {
    Ok(extend_family_detailed(fam)?.family)
}

pub fn extend_family_detailed(fam: &Family) -> Result<Extension> {
    let orders = fam
        .linear_orders()
        .ok_or(Error::WrongKind { expected: "linear", found: fam.kind() })?;
    if orders.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if !is_separating(fam)? {
        return Err(Error::NotSeparating);
    }
    let m = fam.m();
    // relabel so that member 0 is the natural order: x -> rank of x in member 0
    let to_natural: Vec<usize> = (0..m).map(|x| orders[0].rank(x)).collect();
    let normal = fam.relabel(&to_natural)?;
    let normal_orders = normal.linear_orders().expect("still linear");
    debug_assert!(normal_orders[0].is_natural());

    let n = orders.len();
    let s = |i: usize, j: usize| BitString::from_bools(normal_orders[1..].iter().map(|o| o.less(i, j)));
    let taken: Vec<BitString> = increasing_pairs(m).map(|(i, j)| s(i, j)).collect();
    let choice = smallest_free_sequence(n - 1, &taken)?;

    let new = m;
    let mut extended = Vec::with_capacity(n + 1);
    let mut first = normal_orders[0].perm().to_vec();
    first.push(new);
    extended.push(LinearOrder::new(first)?);
    for (k, order) in normal_orders.iter().enumerate().skip(1) {
        let mut perm = order.perm().to_vec();
        let pos = order.rank(m - 1);
        let at = if choice.get(k - 1) { pos + 1 } else { pos };
        perm.insert(at, new);
        extended.push(LinearOrder::new(perm)?);
    }
    // new point least, old maximum last, the rest in natural order
    let mut last = vec![new];
    last.extend(0..m - 1);
    last.push(m - 1);
    extended.push(LinearOrder::new(last)?);

    let mut back: Vec<usize> = orders[0].perm().to_vec();
    back.push(new);
    let family = Family::linear(m + 1, extended)?.relabel(&back)?;
    if !is_separating(&family)? {
        return Err(Error::Internal("extension lost separation".into()));
    }
    Ok(Extension { family, choice: ExtensionChoice(choice), taken })
}

/// Lexicographically smallest `len`-bit sequence (bit 0 most significant) not in `taken`.
fn smallest_free_sequence(len: usize, taken: &[BitString]) -> Result<BitString> {
    let as_number = |b: &BitString| b.iter().fold(0u128, |acc, bit| acc << 1 | u128::from(bit));
    let mut used: Vec<u128> = taken.iter().map(as_number).collect();
    used.sort_unstable();
    used.dedup();
    let mut candidate = 0u128;
    for u in used {
        if u == candidate {
            candidate += 1;
        } else if u > candidate {
            break;
        }
    }
    if len < 128 && candidate >= 1u128 << len {
        return Err(Error::NoExtensionChoice { len, taken: taken.len() });
    }
    Ok(BitString::from_bools((0..len).rev().map(|b| candidate >> b & 1 == 1)))
}

/// A word of `({0,1}²)^κ` in its `2κ`-bit expansion `α₀β₀α₁β₁…`; the
/// expansion read left to right is the binary number stored in `word`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MiddleLevelCodeword {
    word: u64,
    kappa: u32,
}

impl MiddleLevelCodeword {
    pub fn new(word: u64, kappa: u32) -> Result<Self> {
        if kappa > 31 || word >> (2 * kappa) != 0 || word.count_ones() != kappa {
            return Err(Error::InvalidArgument(format!("{word:#b} is not a middle-level word for kappa = {kappa}")));
        }
        Ok(Self { word, kappa })
    }

    pub fn kappa(&self) -> usize {
        self.kappa as usize
    }

    /// `(α_u, β_u)`.
    pub fn coordinate(&self, u: usize) -> (bool, bool) {
        let top = 2 * self.kappa as usize - 2 * u;
        (self.word >> (top - 1) & 1 == 1, self.word >> (top - 2) & 1 == 1)
    }

    /// `(α, β) -> (β, α)` in every coordinate.
    pub fn swap(&self) -> Self {
        const HI: u64 = 0xAAAA_AAAA_AAAA_AAAA;
        const LO: u64 = 0x5555_5555_5555_5555;
        Self { word: (self.word & HI) >> 1 | (self.word & LO) << 1, kappa: self.kappa }
    }

    /// Exchange of 0 and 1 in every position.
    pub fn complement(&self) -> Self {
        Self { word: !self.word & ((1u64 << (2 * self.kappa)) - 1), kappa: self.kappa }
    }

    /// All middle-level words in lexicographic order of their expansion.
    pub fn all(kappa: u32) -> impl Iterator<Item = MiddleLevelCodeword> {
        assert!(kappa <= 31);
        let limit = 1u64 << (2 * kappa);
        let first = (1u64 << kappa) - 1;
        std::iter::successors(Some(first), move |&v| {
            if v == 0 {
                return None;
            }
            // next integer with the same popcount
            let c = v & v.wrapping_neg();
            let r = v + c;
            let next = (((r ^ v) >> 2) / c) | r;
            (r != 0 && next < limit).then_some(next)
        })
        .take_while(move |&v| v < limit)
        .map(move |word| MiddleLevelCodeword { word, kappa })
    }
}

/// Number of middle-level words of `({0,1}²)^κ` fixed by the coordinate swap.
pub fn swap_fixed_count(kappa: u64) -> u128 {
    if kappa.is_multiple_of(2) {
        binomial(kappa, kappa / 2).unwrap_or(u128::MAX)
    } else {
        0
    }
}

/// The self-dual map used by [`sperner_rigid_family`], exposed for tests.
#[derive(Clone, Debug)]
pub struct SelfDualCode {
    pub mu: usize,
    /// Codeword of each increasing pair `(i, j)` in lexicographic pair order.
    pub forward: Vec<MiddleLevelCodeword>,
}

impl SelfDualCode {
    /// `φ(x, y)`; for `x > y` it is the swap of `φ(y, x)`.
    pub fn code(&self, x: usize, y: usize) -> MiddleLevelCodeword {
        use crate::bits::pair_index;
        if x < y {
            self.forward[pair_index(self.mu, x, y)]
        } else {
            self.forward[pair_index(self.mu, y, x)].swap()
        }
    }
}

pub fn self_dual_code(mu: usize, kappa: usize) -> Result<SelfDualCode> {
    let needed = (mu as u128) * (mu.saturating_sub(1) as u128);
    let binom = binomial(2 * kappa as u64, kappa as u64).unwrap_or(u128::MAX);
    if needed > binom {
        return Err(Error::BinomialBound { mu, kappa, needed, binomial: binom });
    }
    let available = binom - swap_fixed_count(kappa as u64);
    if needed > available {
        return Err(Error::SelfDualCapacity { mu, kappa, needed, available });
    }
    if kappa > 31 {
        return Err(Error::TooLarge(format!("kappa = {kappa} exceeds the 62-bit codeword width")));
    }
    let pairs = pair_count(mu);
    let mut used = std::collections::HashSet::new();
    let mut forward = Vec::with_capacity(pairs);
    for w in MiddleLevelCodeword::all(kappa as u32) {
        if forward.len() == pairs {
            break;
        }
        let s = w.swap();
        if s == w || used.contains(&s) {
            continue;
        }
        used.insert(w);
        forward.push(w);
    }
    if forward.len() < pairs {
        return Err(Error::SelfDualCapacity { mu, kappa, needed, available });
    }
    Ok(SelfDualCode { mu, forward })
}

/// `κ` irreflexive relations on `μ` points whose double-profile map is an
/// injective self-dual map into the middle level of `({0,1}²)^κ`.
pub fn sperner_rigid_family(mu: usize, kappa: usize) -> Result<Family> {
    let code = self_dual_code(mu, kappa)?;
    let members: Vec<BinaryRelation> = (0..kappa)
        .map(|u| BinaryRelation::from_fn(mu, Reflexivity::Irreflexive, |x, y| code.code(x, y).coordinate(u).0))
        .collect();
    let fam = Family::relations(mu, members)?;
    if !is_hereditarily_rigid_antichain(&fam) {
        return Err(Error::Internal(format!("relations for ({mu}, {kappa}) are not rigid")));
    }
    Ok(fam)
}

/// Every tournament on `m` points, in mask order.
pub fn all_tournaments(m: usize) -> Family {
    let p = pair_count(m);
    assert!(p <= 24, "too many tournaments to list");
    let members = (0..1u64 << p).map(|mask| Tournament::from_mask(m, mask)).collect();
    Family::tournaments(m, members).expect("uniform ground set")
}

/// Every linear order on `m` points, lexicographic in one-line notation.
pub fn all_linear_orders(m: usize) -> Vec<LinearOrder> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..m).collect();
    loop {
        out.push(LinearOrder::new(perm.clone()).expect("permutation"));
        if !next_permutation(&mut perm) {
            return out;
        }
    }
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The smallest separating family of linear orders this crate can certify
/// without search: one order for `m = 2`, rotations up to 5, the six-point
/// family, then repeated extension.
pub fn best_known_family(m: usize) -> Result<Family> {
    require_two(m)?;
    match m {
        2 => certify(Family::linear(2, vec![LinearOrder::natural(2)])?),
        3..=5 => cyclic_family(m),
        _ => {
            let mut fam = paper_family_6();
            for _ in 6..m {
                fam = extend_family(&fam)?;
            }
            Ok(fam)
        }
    }
}

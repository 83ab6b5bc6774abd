//! Multisets and sets over Z_2^n: translations, linear images, deck values,
//! deck fingerprints, and brute-force deck comparison.
//!
//! The deck of a multiset is never materialized as a function on all tuples.
//! Equality testing fixes the first tuple entry to 0 and iterates
//! nondecreasing tuples, which is sound because deck values are invariant
//! under translating and permuting the tuple (a tested property, not an
//! assumption).

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::gf2::{canonical_translate_raw, check_dim, check_same_dim, GroupElement, LinearMap};

/// Hard ceiling on `dim * (k - 1)` for brute-force multiset deck comparison.
pub const DECK_COMPARE_LIMIT: u32 = 20;

/// Hard ceiling on the number of k-subsets enumerated by [`Subset::deck`].
pub const SUBSET_ENUMERATION_CAP: u128 = 10_000_000;

/// A multiset over Z_2^dim: `counts[m]` is the multiplicity of element `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multiset {
    dim: u32,
    counts: Vec<u64>,
}

impl Multiset {
    pub fn new(dim: u32, counts: Vec<u64>) -> Result<Self> {
        check_dim(dim)?;
        if counts.len() != 1usize << dim {
            return Err(Error::InvalidArgument(format!(
                "expected {} counts for dimension {dim}, got {}",
                1usize << dim,
                counts.len()
            )));
        }
        Ok(Self { dim, counts })
    }

    pub fn zero(dim: u32) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            counts: vec![0; 1 << dim],
        })
    }

    /// The 0/1 multiset of a set.
    pub fn from_subset(subset: &Subset) -> Self {
        let mut counts = vec![0u64; 1 << subset.dim()];
        for &m in subset.members() {
            counts[m as usize] = 1;
        }
        Self {
            dim: subset.dim(),
            counts,
        }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, m: u32) -> u64 {
        self.counts[m as usize]
    }

    pub fn total_mass(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }

    /// The translate `z ⊕ f`, i.e. `result[m] = f[m ⊕ z]` (the group is
    /// self-inverse).
    pub fn translate(&self, z: GroupElement) -> Result<Multiset> {
        check_same_dim(z.dim(), self.dim)?;
        let zv = z.value() as usize;
        let counts = (0..self.counts.len())
            .map(|m| self.counts[m ^ zv])
            .collect();
        Ok(Multiset {
            dim: self.dim,
            counts,
        })
    }

    /// The image multiset under a linear map: fiber sums
    /// `result[x] = Σ_{z : θz = x} f[z]`. Total mass is preserved.
    pub fn linear_image(&self, map: &LinearMap) -> Result<Multiset> {
        check_same_dim(self.dim, map.dim_in())?;
        let mut counts = vec![0u64; 1 << map.dim_out()];
        for (m, &c) in self.counts.iter().enumerate() {
            let image = map.apply_value(m as u32) as usize;
            counts[image] = counts[image]
                .checked_add(c)
                .ok_or_else(|| Error::InstanceTooLarge("count overflow in linear image".into()))?;
        }
        Ok(Multiset {
            dim: map.dim_out(),
            counts,
        })
    }

    /// The deck value at a tuple: `Σ_g Π_i f(g ⊕ s_i)`, exact.
    pub fn deck_value(&self, tuple: &[GroupElement]) -> Result<BigUint> {
        if tuple.is_empty() {
            return Err(Error::InvalidArgument("deck tuple must be nonempty".into()));
        }
        for s in tuple {
            check_same_dim(s.dim(), self.dim)?;
        }
        let values: Vec<u32> = tuple.iter().map(|s| s.value()).collect();
        Ok(self.deck_value_raw(&values))
    }

    fn deck_value_raw(&self, tuple: &[u32]) -> BigUint {
        if let Some(v) = self.deck_value_u128(tuple) {
            return BigUint::from(v);
        }
        let mut acc = BigUint::from(0u32);
        for g in 0..self.counts.len() {
            let mut term = BigUint::from(1u32);
            for &s in tuple {
                let c = self.counts[g ^ s as usize];
                if c == 0 {
                    term = BigUint::from(0u32);
                    break;
                }
                term *= c;
            }
            acc += term;
        }
        acc
    }

    /// Fast path: the value is bounded by `2^dim * max_count^k`, so when that
    /// provably fits in a u128 the whole sum is done in machine words.
    fn deck_value_u128(&self, tuple: &[u32]) -> Option<u128> {
        let max = *self.counts.iter().max().unwrap_or(&0);
        let bits_per_factor = 64 - (max | 1).leading_zeros();
        if self.dim + tuple.len() as u32 * bits_per_factor > 120 {
            return None;
        }
        let mut acc: u128 = 0;
        for g in 0..self.counts.len() {
            let mut term: u128 = 1;
            for &s in tuple {
                term *= self.counts[g ^ s as usize] as u128;
                if term == 0 {
                    break;
                }
            }
            acc += term;
        }
        Some(acc)
    }

    /// Compares deck_i of the two multisets for a single level `i >= 1`.
    pub(crate) fn deck_level_equal(&self, other: &Multiset, level: u32) -> bool {
        debug_assert_eq!(self.dim, other.dim);
        debug_assert!(level >= 1);
        let n = 1u32 << self.dim;
        let mut tuple = vec![0u32; level as usize];
        for rest in (0..n).combinations_with_replacement(level as usize - 1) {
            tuple[0] = 0;
            tuple[1..].copy_from_slice(&rest);
            if self.deck_value_raw(&tuple) != other.deck_value_raw(&tuple) {
                return false;
            }
        }
        true
    }

    /// Brute-force k-indistinguishability: deck_i agree for every `i <= k`.
    ///
    /// Guarded by `dim * (k - 1) <= 20`; larger instances are refused with a
    /// distinct error rather than degrading.
    pub fn decks_equal(&self, other: &Multiset, k: u32) -> Result<bool> {
        check_same_dim(self.dim, other.dim)?;
        if self.dim * k.saturating_sub(1) > DECK_COMPARE_LIMIT {
            return Err(Error::InstanceTooLarge(format!(
                "multiset deck comparison needs dim*(k-1) <= {DECK_COMPARE_LIMIT}, got {}",
                self.dim * k.saturating_sub(1)
            )));
        }
        for level in 1..=k {
            if !self.deck_level_equal(other, level) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Least `z` with `translate(self, z) = other`, if the two are translates.
    pub fn find_translation(&self, other: &Multiset) -> Result<Option<GroupElement>> {
        check_same_dim(self.dim, other.dim)?;
        let m0 = match self.counts.iter().position(|&c| c != 0) {
            Some(m0) => m0,
            None => {
                // Empty multiset: only the empty multiset is a translate.
                return Ok(if other.counts.iter().all(|&c| c == 0) {
                    Some(GroupElement::zero(self.dim)?)
                } else {
                    None
                });
            }
        };
        let needle = self.counts[m0];
        let mut best: Option<u32> = None;
        for (m, &c) in other.counts.iter().enumerate() {
            if c != needle {
                continue;
            }
            let z = (m0 ^ m) as u32;
            let ok =
                (0..other.counts.len()).all(|i| other.counts[i] == self.counts[i ^ z as usize]);
            if ok && best.is_none_or(|b| z < b) {
                best = Some(z);
            }
        }
        Ok(best.map(|z| GroupElement::new(z, self.dim).unwrap()))
    }
}

/// A subset of Z_2^dim with strictly increasing member list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    dim: u32,
    members: Vec<u32>,
}

impl Subset {
    /// Accepts members in any order; rejects duplicates and out-of-range
    /// values.
    pub fn new(dim: u32, mut members: Vec<u32>) -> Result<Self> {
        check_dim(dim)?;
        for &m in &members {
            if dim < 32 && m >= 1 << dim {
                return Err(Error::InvalidArgument(format!(
                    "element {m} out of range for dimension {dim}"
                )));
            }
        }
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("duplicate set element".into()));
        }
        Ok(Self { dim, members })
    }

    pub fn empty(dim: u32) -> Result<Self> {
        Self::new(dim, Vec::new())
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: u32) -> bool {
        self.members.binary_search(&m).is_ok()
    }

    pub fn translate(&self, z: GroupElement) -> Result<Subset> {
        check_same_dim(z.dim(), self.dim)?;
        let mut members: Vec<u32> = self.members.iter().map(|&m| m ^ z.value()).collect();
        members.sort_unstable();
        Ok(Subset {
            dim: self.dim,
            members,
        })
    }

    /// The canonical (lexicographically least) translate.
    pub fn canonicalize(&self) -> Subset {
        Subset {
            dim: self.dim,
            members: canonical_translate_raw(self.dim, &self.members),
        }
    }

    pub fn indicator(&self) -> Multiset {
        Multiset::from_subset(self)
    }

    /// The set k-deck: every k-subset canonicalized by translation, with
    /// multiplicities aggregated.
    pub fn deck(&self, k: u32) -> Result<DeckFingerprint> {
        if k as usize > self.members.len() {
            return Err(Error::Precondition(format!(
                "deck level {k} exceeds set size {}",
                self.members.len()
            )));
        }
        let total = binomial(self.members.len() as u128, k as u128);
        if total > SUBSET_ENUMERATION_CAP {
            return Err(Error::InstanceTooLarge(format!(
                "set deck would enumerate {total} subsets (cap {SUBSET_ENUMERATION_CAP})"
            )));
        }
        let mut classes: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        for combo in self.members.iter().copied().combinations(k as usize) {
            let canon = canonical_translate_raw(self.dim, &combo);
            *classes.entry(canon).or_insert(0) += 1;
        }
        Ok(DeckFingerprint {
            k,
            entries: classes.into_iter().collect(),
        })
    }

    /// Set k-indistinguishability: equal set decks at every level `i <= k`.
    pub fn decks_equal(&self, other: &Subset, k: u32) -> Result<bool> {
        check_same_dim(self.dim, other.dim)?;
        if self.members.len() != other.members.len() {
            return Ok(k == 0);
        }
        for level in 1..=k.min(self.members.len() as u32) {
            if self.deck(level)? != other.deck(level)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
        if acc > SUBSET_ENUMERATION_CAP {
            return acc; // already over every cap we compare against
        }
    }
    acc
}

/// A canonical, order-independent encoding of a set k-deck: sorted
/// (canonical translate, multiplicity) pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeckFingerprint {
    k: u32,
    entries: Vec<(Vec<u32>, u64)>,
}

impl DeckFingerprint {
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Entries as (canonical element list, multiplicity), sorted by the
    /// element list.
    pub fn entries(&self) -> &[(Vec<u32>, u64)] {
        &self.entries
    }

    /// Sum of multiplicities; equals C(|T|, k) for the deck of T.
    pub fn total_multiplicity(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }
}

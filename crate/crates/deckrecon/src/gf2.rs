//! Elements of the hypercube group, the ±1 pairing, GF(2) linear maps with
//! duals, affine cosets, and canonical forms under translation.
//!
//! Coordinate convention: coordinate `x_i` (1-based) of the group element is
//! bit `i-1` of the word, so `e_i = 1 << (i-1)` and the all-ones element `h`
//! is `(1 << dim) - 1`. Group addition is bitwise XOR and every element is
//! its own inverse.

use crate::error::{Error, Result};

/// Largest supported dimension. Count vectors have length `2^dim`, so this
/// keeps every in-memory structure below a few hundred megabytes.
pub const MAX_DIM: u32 = 24;

pub(crate) fn check_dim(dim: u32) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidArgument(
            "dimension must be at least 1".into(),
        ));
    }
    if dim > MAX_DIM {
        return Err(Error::InstanceTooLarge(format!(
            "dimension {dim} exceeds maximum {MAX_DIM}"
        )));
    }
    Ok(())
}

pub(crate) fn check_same_dim(left: u32, right: u32) -> Result<()> {
    if left != right {
        return Err(Error::DimensionMismatch { left, right });
    }
    Ok(())
}

/// An element of the group Z_2^n, stored as an n-bit word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    value: u32,
    dim: u32,
}

impl GroupElement {
    pub fn new(value: u32, dim: u32) -> Result<Self> {
        check_dim(dim)?;
        if dim < 32 && value >= 1 << dim {
            return Err(Error::InvalidArgument(format!(
                "value {value} out of range for dimension {dim}"
            )));
        }
        Ok(Self { value, dim })
    }

    pub fn zero(dim: u32) -> Result<Self> {
        Self::new(0, dim)
    }

    /// The standard basis vector `e_i` (1-based index).
    pub fn basis(i: u32, dim: u32) -> Result<Self> {
        if i == 0 || i > dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {i} out of range for dimension {dim}"
            )));
        }
        Self::new(1 << (i - 1), dim)
    }

    /// The all-ones element, traditionally written `h`.
    pub fn all_ones(dim: u32) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            value: (1u32 << dim) - 1,
            dim,
        })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn dim(self) -> u32 {
        self.dim
    }

    /// Group addition (XOR). Panics on dimension mismatch; use the checked
    /// operations when dimensions are not statically known to agree.
    pub fn xor(self, other: Self) -> Self {
        assert_eq!(self.dim, other.dim, "xor of elements from different groups");
        Self {
            value: self.value ^ other.value,
            dim: self.dim,
        }
    }
}

impl std::ops::BitXor for GroupElement {
    type Output = GroupElement;
    fn bitxor(self, rhs: GroupElement) -> GroupElement {
        self.xor(rhs)
    }
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// The ±1 pairing `<x,y> = (-1)^(x_1 y_1 + ... + x_n y_n)`.
pub fn pairing(x: GroupElement, y: GroupElement) -> Result<i32> {
    check_same_dim(x.dim(), y.dim())?;
    Ok(pairing_raw(x.value(), y.value()))
}

#[inline]
pub(crate) fn pairing_raw(x: u32, y: u32) -> i32 {
    if (x & y).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// A GF(2)-linear map given by the images of the domain's standard basis.
///
/// `cols[i]` is the image of `e_{i+1}` as a word in the codomain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    dim_in: u32,
    dim_out: u32,
    cols: Vec<u32>,
}

impl LinearMap {
    pub fn new(dim_in: u32, dim_out: u32, cols: Vec<u32>) -> Result<Self> {
        check_dim(dim_in)?;
        check_dim(dim_out)?;
        if cols.len() != dim_in as usize {
            return Err(Error::InvalidArgument(format!(
                "expected {dim_in} columns, got {}",
                cols.len()
            )));
        }
        for &c in &cols {
            if dim_out < 32 && c >= 1 << dim_out {
                return Err(Error::InvalidArgument(format!(
                    "column {c} out of range for codomain dimension {dim_out}"
                )));
            }
        }
        Ok(Self {
            dim_in,
            dim_out,
            cols,
        })
    }

    pub fn identity(dim: u32) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim_in: dim,
            dim_out: dim,
            cols: (0..dim).map(|i| 1u32 << i).collect(),
        })
    }

    pub fn zero(dim_in: u32, dim_out: u32) -> Result<Self> {
        Self::new(dim_in, dim_out, vec![0; dim_in as usize])
    }

    pub fn dim_in(&self) -> u32 {
        self.dim_in
    }

    pub fn dim_out(&self) -> u32 {
        self.dim_out
    }

    pub fn cols(&self) -> &[u32] {
        &self.cols
    }

    /// Applies the map: the XOR of the columns selected by the set bits of `x`.
    pub fn apply(&self, x: GroupElement) -> Result<GroupElement> {
        check_same_dim(x.dim(), self.dim_in)?;
        GroupElement::new(self.apply_value(x.value()), self.dim_out)
    }

    #[inline]
    pub(crate) fn apply_value(&self, x: u32) -> u32 {
        let mut acc = 0;
        let mut rest = x;
        while rest != 0 {
            let i = rest.trailing_zeros();
            acc ^= self.cols[i as usize];
            rest &= rest - 1;
        }
        acc
    }

    /// The dual map `M*` with `<Mx, y> = <x, M*y>` for all x, y; concretely
    /// the GF(2) matrix transpose.
    pub fn dual(&self) -> LinearMap {
        let cols = (0..self.dim_out)
            .map(|j| {
                let mut col = 0u32;
                for (i, &c) in self.cols.iter().enumerate() {
                    col |= ((c >> j) & 1) << i;
                }
                col
            })
            .collect();
        LinearMap {
            dim_in: self.dim_out,
            dim_out: self.dim_in,
            cols,
        }
    }

    /// `self ∘ other`, i.e. `x -> self(other(x))`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        check_same_dim(other.dim_out, self.dim_in)?;
        let cols = other.cols.iter().map(|&c| self.apply_value(c)).collect();
        LinearMap::new(other.dim_in, self.dim_out, cols)
    }

    /// Rank over GF(2), by Gaussian elimination on the columns.
    pub fn rank(&self) -> u32 {
        gf2_rank(&self.cols)
    }

    pub fn is_invertible(&self) -> bool {
        self.dim_in == self.dim_out && self.rank() == self.dim_in
    }
}

/// Rank of a set of words viewed as GF(2) vectors.
pub(crate) fn gf2_rank(vectors: &[u32]) -> u32 {
    let mut pivots: Vec<u32> = Vec::new();
    for &v in vectors {
        let mut v = v;
        for &p in &pivots {
            let high = 31 - p.leading_zeros();
            if (v >> high) & 1 == 1 {
                v ^= p;
            }
        }
        if v != 0 {
            pivots.push(v);
        }
    }
    pivots.len() as u32
}

/// The lexicographically least translate of a set of group elements.
///
/// Among all `2^dim` translates `z ⊕ S`, returns the one whose sorted element
/// list is lexicographically least. Deterministic, idempotent, and invariant
/// under translating the input.
pub fn canonical_translate(dim: u32, elements: &[GroupElement]) -> Result<Vec<GroupElement>> {
    check_dim(dim)?;
    for e in elements {
        check_same_dim(e.dim(), dim)?;
    }
    let mut values: Vec<u32> = elements.iter().map(|e| e.value()).collect();
    values.sort_unstable();
    values.dedup();
    let best = canonical_translate_raw(dim, &values);
    best.into_iter()
        .map(|v| GroupElement::new(v, dim))
        .collect()
}

/// Core of [`canonical_translate`] on raw sorted words.
pub(crate) fn canonical_translate_raw(dim: u32, sorted: &[u32]) -> Vec<u32> {
    if sorted.is_empty() {
        return Vec::new();
    }
    let mut best: Option<Vec<u32>> = None;
    let mut scratch = vec![0u32; sorted.len()];
    for z in 0..1u32 << dim {
        for (dst, &s) in scratch.iter_mut().zip(sorted) {
            *dst = s ^ z;
        }
        scratch.sort_unstable();
        match &best {
            Some(b) if scratch >= *b => {}
            _ => best = Some(scratch.clone()),
        }
    }
    best.unwrap()
}

/// A coset `shift ⊕ span(basis)` of a subgroup of Z_2^dim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineCoset {
    dim: u32,
    basis: Vec<u32>,
    shift: u32,
}

impl AffineCoset {
    /// Rejects dependent bases eagerly, so `enumerate` always yields exactly
    /// `2^basis.len()` distinct members.
    pub fn new(dim: u32, basis: &[u32], shift: u32) -> Result<Self> {
        check_dim(dim)?;
        for &b in basis {
            if dim < 32 && b >= 1 << dim {
                return Err(Error::InvalidArgument(format!(
                    "basis vector {b} out of range for dimension {dim}"
                )));
            }
        }
        if dim < 32 && shift >= 1 << dim {
            return Err(Error::InvalidArgument(format!(
                "shift {shift} out of range for dimension {dim}"
            )));
        }
        if gf2_rank(basis) != basis.len() as u32 {
            return Err(Error::InvalidArgument(
                "coset basis is linearly dependent".into(),
            ));
        }
        Ok(Self {
            dim,
            basis: basis.to_vec(),
            shift,
        })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn contains(&self, x: GroupElement) -> Result<bool> {
        check_same_dim(x.dim(), self.dim)?;
        let mut v = x.value() ^ self.shift;
        // Reduce against the span; v is a member iff it reduces to zero.
        let mut pivots: Vec<u32> = Vec::new();
        for &b in &self.basis {
            let mut b = b;
            for &p in &pivots {
                let high = 31 - p.leading_zeros();
                if (b >> high) & 1 == 1 {
                    b ^= p;
                }
            }
            if b != 0 {
                pivots.push(b);
            }
        }
        pivots.sort_unstable_by_key(|p| std::cmp::Reverse(*p));
        for &p in &pivots {
            let high = 31 - p.leading_zeros();
            if (v >> high) & 1 == 1 {
                v ^= p;
            }
        }
        Ok(v == 0)
    }

    /// Sorted list of the `2^|basis|` members.
    pub fn enumerate(&self) -> Vec<GroupElement> {
        let mut members: Vec<u32> = vec![self.shift];
        for &b in &self.basis {
            let mut next = Vec::with_capacity(members.len() * 2);
            for &m in &members {
                next.push(m);
                next.push(m ^ b);
            }
            members = next;
        }
        members.sort_unstable();
        members
            .into_iter()
            .map(|v| GroupElement {
                value: v,
                dim: self.dim,
            })
            .collect()
    }

    pub(crate) fn member_values(&self) -> Vec<u32> {
        self.enumerate().iter().map(|e| e.value()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ge(value: u32, dim: u32) -> GroupElement {
        GroupElement::new(value, dim).unwrap()
    }

    #[test]
    fn pairing_with_zero_is_one() {
        for dim in 1..=3 {
            for v in 0..1u32 << dim {
                assert_eq!(pairing(ge(v, dim), ge(0, dim)).unwrap(), 1);
            }
        }
    }

    #[test]
    fn pairing_small_cases() {
        assert_eq!(pairing(ge(1, 2), ge(3, 2)).unwrap(), -1);
        assert_eq!(pairing(ge(3, 2), ge(3, 2)).unwrap(), 1);
    }

    #[test]
    fn pairing_dimension_mismatch() {
        assert!(matches!(
            pairing(ge(1, 2), ge(1, 3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn pairing_is_bimultiplicative() {
        // <x ⊕ x', y> = <x,y><x',y>, exhaustively in low dimension.
        for dim in 1..=4 {
            for x in 0..1u32 << dim {
                for xp in 0..1u32 << dim {
                    for y in 0..1u32 << dim {
                        let lhs = pairing_raw(x ^ xp, y);
                        let rhs = pairing_raw(x, y) * pairing_raw(xp, y);
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn apply_identity_and_zero() {
        let id = LinearMap::identity(3).unwrap();
        let zero = LinearMap::zero(3, 3).unwrap();
        for v in 0..8 {
            assert_eq!(id.apply(ge(v, 3)).unwrap(), ge(v, 3));
            assert_eq!(zero.apply(ge(v, 3)).unwrap(), ge(0, 3));
        }
    }

    #[test]
    fn apply_xors_selected_columns() {
        let m = LinearMap::new(2, 2, vec![3, 1]).unwrap();
        assert_eq!(m.apply(ge(3, 2)).unwrap(), ge(2, 2));
    }

    #[test]
    fn apply_is_linear() {
        let m = LinearMap::new(3, 2, vec![1, 3, 2]).unwrap();
        for x in 0..8 {
            for y in 0..8 {
                let lhs = m.apply_value(x ^ y);
                let rhs = m.apply_value(x) ^ m.apply_value(y);
                assert_eq!(lhs, rhs);
            }
        }
    }

    /// Independent oracle for `dual`: the defining pairing identity, checked
    /// over every (x, y) pair.
    fn dual_identity_holds(m: &LinearMap, md: &LinearMap) -> bool {
        for x in 0..1u32 << m.dim_in() {
            for y in 0..1u32 << m.dim_out() {
                let lhs = pairing_raw(m.apply_value(x), y);
                let rhs = pairing_raw(x, md.apply_value(y));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn dual_of_identity_is_identity() {
        let id = LinearMap::identity(4).unwrap();
        assert_eq!(id.dual(), id);
    }

    #[test]
    fn dual_small_case_frozen() {
        // cols [3,1] is a symmetric matrix, so it is self-dual; cols [1,3]
        // is not, and transposes to [3,2]. Both verified against the pairing
        // identity over all 16 (x, y) pairs.
        let m = LinearMap::new(2, 2, vec![3, 1]).unwrap();
        assert_eq!(m.dual().cols(), &[3, 1]);
        assert!(dual_identity_holds(&m, &m.dual()));

        let m = LinearMap::new(2, 2, vec![1, 3]).unwrap();
        assert_eq!(m.dual().cols(), &[3, 2]);
        assert!(dual_identity_holds(&m, &m.dual()));
    }

    proptest! {
        #[test]
        fn dual_satisfies_pairing_identity(
            dim_in in 1u32..=4,
            dim_out in 1u32..=4,
            seed in any::<u64>(),
        ) {
            let mut state = seed;
            let cols: Vec<u32> = (0..dim_in)
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                    (state >> 33) as u32 & ((1 << dim_out) - 1)
                })
                .collect();
            let m = LinearMap::new(dim_in, dim_out, cols).unwrap();
            let md = m.dual();
            prop_assert_eq!(md.dim_in(), dim_out);
            prop_assert_eq!(md.dim_out(), dim_in);
            prop_assert!(dual_identity_holds(&m, &md));
            prop_assert_eq!(md.dual(), m);
        }
    }

    #[test]
    fn canonical_translate_examples() {
        assert_eq!(canonical_translate(2, &[]).unwrap(), vec![]);
        let s = [ge(2, 2), ge(3, 2)];
        let c: Vec<u32> = canonical_translate(2, &s)
            .unwrap()
            .iter()
            .map(|e| e.value())
            .collect();
        assert_eq!(c, vec![0, 1]);
        let s = [ge(1, 2), ge(2, 2)];
        let c: Vec<u32> = canonical_translate(2, &s)
            .unwrap()
            .iter()
            .map(|e| e.value())
            .collect();
        assert_eq!(c, vec![0, 3]);
    }

    #[test]
    fn canonical_translate_is_translation_invariant() {
        for dim in 1..=3u32 {
            let n = 1u32 << dim;
            for mask in 0..1u32 << n {
                let set: Vec<u32> = (0..n).filter(|&m| (mask >> m) & 1 == 1).collect();
                let canon = canonical_translate_raw(dim, &set);
                for z in 0..n {
                    let mut shifted: Vec<u32> = set.iter().map(|&s| s ^ z).collect();
                    shifted.sort_unstable();
                    assert_eq!(canonical_translate_raw(dim, &shifted), canon);
                }
                // Idempotent.
                assert_eq!(canonical_translate_raw(dim, &canon), canon);
            }
        }
    }

    #[test]
    fn equal_canonical_iff_translates() {
        let dim = 3u32;
        let n = 1u32 << dim;
        let sets: Vec<Vec<u32>> = (0..1u32 << n)
            .map(|mask| (0..n).filter(|&m| (mask >> m) & 1 == 1).collect())
            .collect();
        for a in sets.iter() {
            for b in sets.iter() {
                let translate = (0..n).any(|z| {
                    let mut shifted: Vec<u32> = a.iter().map(|&s| s ^ z).collect();
                    shifted.sort_unstable();
                    shifted == *b
                });
                let same_canon = canonical_translate_raw(dim, a) == canonical_translate_raw(dim, b);
                assert_eq!(translate, same_canon);
            }
        }
    }

    #[test]
    fn coset_enumeration() {
        let c = AffineCoset::new(3, &[], 5).unwrap();
        assert_eq!(c.member_values(), vec![5]);
        let c = AffineCoset::new(2, &[3], 0).unwrap();
        assert_eq!(c.member_values(), vec![0, 3]);
        let c = AffineCoset::new(2, &[1], 2).unwrap();
        assert_eq!(c.member_values(), vec![2, 3]);
    }

    #[test]
    fn coset_membership_matches_enumeration() {
        let c = AffineCoset::new(3, &[3, 4], 1).unwrap();
        let members = c.member_values();
        for v in 0..8 {
            assert_eq!(c.contains(ge(v, 3)).unwrap(), members.contains(&v));
        }
    }

    #[test]
    fn dependent_basis_rejected() {
        assert!(matches!(
            AffineCoset::new(3, &[3, 5, 6], 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn dimension_cap_enforced() {
        assert!(matches!(
            GroupElement::new(0, MAX_DIM + 1),
            Err(Error::InstanceTooLarge(_))
        ));
        assert!(GroupElement::new(0, MAX_DIM).is_ok());
    }
}

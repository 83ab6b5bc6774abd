//! Lower-bound witness constructions: hyperplane cosets with empty total but
//! nonempty partial intersections, deterministic witness-pair generation, and
//! verification of the construction's guarantees.
//!
//! The pair (A, B) produced for parameters (n, k) lives in Z_2^n, is not a
//! translate pair, and is (k-1)-indistinguishable — certifying that the
//! reconstruction number of Z_2^n is at least k. Block metadata is kept so
//! the generating hypothesis (deleting the i-th block from either side
//! leaves translate sets) can be checked independently.

use crate::bounds::predicate;
use crate::deck::Subset;
use crate::error::{Error, Result};
use crate::gf2::{check_dim, check_same_dim, AffineCoset};
use crate::spectral::{distinguishing_number, Distinguishability};

/// The k standard hyperplane cosets of Z_2^(k-1) defined by `x_1 = 0`,
/// `x_i = x_(i+1)` for i = 1..k-2, and `x_(k-1) = 1`.
///
/// Their total intersection is empty while every (k-1)-wise intersection is
/// nonempty: dropping one condition always leaves a solution.
pub fn hyperplane_cosets(k: u32) -> Result<Vec<AffineCoset>> {
    if k < 3 {
        return Err(Error::Precondition(format!(
            "hyperplane coset family needs k >= 3, got {k}"
        )));
    }
    let dim = k - 1;
    check_dim(dim)?;
    let mut cosets = Vec::with_capacity(k as usize);

    // x_1 = 0: spanned by e_2 .. e_(k-1).
    let basis: Vec<u32> = (1..dim).map(|i| 1 << i).collect();
    cosets.push(AffineCoset::new(dim, &basis, 0)?);

    // x_i = x_(i+1): spanned by e_i ⊕ e_(i+1) and the remaining e_j.
    for i in 0..dim - 1 {
        let mut basis: Vec<u32> = (0..dim)
            .filter(|&j| j != i && j != i + 1)
            .map(|j| 1 << j)
            .collect();
        basis.push((1 << i) | (1 << (i + 1)));
        cosets.push(AffineCoset::new(dim, &basis, 0)?);
    }

    // x_(k-1) = 1: the subgroup x_(k-1) = 0 shifted by e_(k-1).
    let basis: Vec<u32> = (0..dim - 1).map(|i| 1 << i).collect();
    cosets.push(AffineCoset::new(dim, &basis, 1 << (dim - 1))?);

    Ok(cosets)
}

/// Per-block decomposition of a generated witness pair: `a` is the disjoint
/// union of `a_blocks`, likewise `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessBlocks {
    pub a_blocks: Vec<Subset>,
    pub b_blocks: Vec<Subset>,
}

/// A generated witness pair with its block metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessConstruction {
    pub a: Subset,
    pub b: Subset,
    pub blocks: WitnessBlocks,
}

/// Builds the deterministic witness pair for (n, k). Feasibility requires
/// `2^(n+1-k) >= k`.
///
/// For k >= 3 the construction places the k hyperplane cosets of
/// Z_2^(k-1) into the first k cosets of H = span(e_1..e_(k-1)) inside Z_2^n,
/// taking coset representatives 0, 2^(k-1), 2^k, ... in increasing word
/// order. A collects the plain subgroup blocks, B the shifted ones. For
/// k = 2 the pair is {0, e_1} versus {0, h}.
pub fn build_witness(n: u32, k: u32) -> Result<(Subset, Subset)> {
    let c = build_witness_detailed(n, k)?;
    Ok((c.a, c.b))
}

/// As [`build_witness`], additionally returning the block decomposition.
pub fn build_witness_detailed(n: u32, k: u32) -> Result<WitnessConstruction> {
    check_dim(n)?;
    if k < 2 {
        return Err(Error::Precondition(format!(
            "witness construction needs k >= 2, got {k}"
        )));
    }
    if !predicate(n, k) {
        let value = if k <= n + 1 && n + 1 - k < 64 {
            format!("{}", 1u64 << (n + 1 - k))
        } else {
            "< 1".to_string()
        };
        return Err(Error::Precondition(format!(
            "infeasible parameters: 2^(n+1-k) = {value} < k = {k} for n = {n}"
        )));
    }

    if k == 2 {
        let h = (1u32 << n) - 1;
        let a_blocks = vec![Subset::new(n, vec![0])?, Subset::new(n, vec![1])?];
        let b_blocks = vec![Subset::new(n, vec![0])?, Subset::new(n, vec![h])?];
        return Ok(WitnessConstruction {
            a: Subset::new(n, vec![0, 1])?,
            b: Subset::new(n, vec![0, h])?,
            blocks: WitnessBlocks { a_blocks, b_blocks },
        });
    }

    let cosets = hyperplane_cosets(k)?;
    let mut a_blocks = Vec::with_capacity(k as usize);
    let mut b_blocks = Vec::with_capacity(k as usize);
    let mut a_members = Vec::new();
    let mut b_members = Vec::new();
    for (i, coset) in cosets.iter().enumerate() {
        let g = (i as u32) << (k - 1);
        let subgroup: Vec<u32> = coset
            .member_values()
            .iter()
            .map(|&m| m ^ coset.shift())
            .collect();
        let a_block: Vec<u32> = subgroup.iter().map(|&m| m ^ g).collect();
        let b_block: Vec<u32> = subgroup.iter().map(|&m| m ^ g ^ coset.shift()).collect();
        a_members.extend_from_slice(&a_block);
        b_members.extend_from_slice(&b_block);
        a_blocks.push(Subset::new(n, a_block)?);
        b_blocks.push(Subset::new(n, b_block)?);
    }
    Ok(WitnessConstruction {
        a: Subset::new(n, a_members)?,
        b: Subset::new(n, b_members)?,
        blocks: WitnessBlocks { a_blocks, b_blocks },
    })
}

/// Verification record for a witness pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub n: u32,
    pub k: u32,
    pub a: Subset,
    pub b: Subset,
    /// False when the two sets are translates (a degenerate witness).
    pub non_translate: bool,
    /// Largest level at which the pair is indistinguishable (distinguishing
    /// number minus one); `None` when the sets are translates and every
    /// level agrees.
    pub indist_level: Option<u32>,
    /// Whether deleting each block leaves translate sets on both sides;
    /// `None` when no block metadata was supplied.
    pub block_structure_ok: Option<bool>,
}

impl WitnessReport {
    /// The generator's guarantee: a non-translate pair that is at least
    /// (k-1)-indistinguishable, with intact block structure when checked.
    pub fn is_sound(&self) -> bool {
        self.non_translate
            && self.indist_level.is_some_and(|level| level + 1 >= self.k)
            && self.block_structure_ok.unwrap_or(true)
    }
}

/// Checks a claimed witness pair: non-translation, the indistinguishability
/// level via the spectral oracle, and (when block metadata is supplied) the
/// generating hypothesis that deleting the i-th block from both sides leaves
/// translate sets. Failures are reported, not raised.
pub fn verify_witness(
    a: &Subset,
    b: &Subset,
    k: u32,
    blocks: Option<&WitnessBlocks>,
) -> Result<WitnessReport> {
    check_same_dim(a.dim(), b.dim())?;
    let fa = a.indicator();
    let fb = b.indicator();
    let (non_translate, indist_level) = match distinguishing_number(&fa, &fb)? {
        Distinguishability::Distinguishable { level, .. } => (true, Some(level - 1)),
        Distinguishability::Translates { .. } => (false, None),
    };
    let block_structure_ok = blocks.map(|bl| blocks_consistent(a, b, bl));
    Ok(WitnessReport {
        n: a.dim(),
        k,
        a: a.clone(),
        b: b.clone(),
        non_translate,
        indist_level,
        block_structure_ok,
    })
}

fn blocks_consistent(a: &Subset, b: &Subset, blocks: &WitnessBlocks) -> bool {
    if blocks.a_blocks.len() != blocks.b_blocks.len() {
        return false;
    }
    if !partitions(a, &blocks.a_blocks) || !partitions(b, &blocks.b_blocks) {
        return false;
    }
    for i in 0..blocks.a_blocks.len() {
        let a_rest = difference(a, &blocks.a_blocks[i]);
        let b_rest = difference(b, &blocks.b_blocks[i]);
        let fa = match Subset::new(a.dim(), a_rest).map(|s| s.indicator()) {
            Ok(f) => f,
            Err(_) => return false,
        };
        let fb = match Subset::new(b.dim(), b_rest).map(|s| s.indicator()) {
            Ok(f) => f,
            Err(_) => return false,
        };
        match fa.find_translation(&fb) {
            Ok(Some(_)) => {}
            _ => return false,
        }
    }
    true
}

fn partitions(whole: &Subset, parts: &[Subset]) -> bool {
    let mut union: Vec<u32> = parts
        .iter()
        .flat_map(|p| p.members().iter().copied())
        .collect();
    union.sort_unstable();
    if union.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    union == whole.members()
}

fn difference(whole: &Subset, part: &Subset) -> Vec<u32> {
    whole
        .members()
        .iter()
        .copied()
        .filter(|m| !part.contains(*m))
        .collect()
}

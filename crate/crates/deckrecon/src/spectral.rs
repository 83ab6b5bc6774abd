//! The Walsh-Hadamard engine: exact transforms, the zero-sum product
//! characterization of deck equality, distinguishing numbers, and separating
//! projections.
//!
//! Two multisets have equal decks through level k exactly when the products
//! of their spectra agree over every zero-XOR sequence of length at most k.
//! After the length-1 and length-2 checks pass, the spectra agree up to sign
//! at every point, so a longer product mismatch is precisely a zero-XOR
//! multiset carrying an odd number of sign flips. The search below runs over
//! packed (xor, flip-parity) state sets, which keeps the level scan exact and
//! fast even when the support has thousands of elements.
//!
//! All products are exact: the level decision needs only signs, and reported
//! witness products are evaluated in arbitrary precision.

use num_bigint::BigInt;

use crate::deck::Multiset;
use crate::error::{Error, Result};
use crate::gf2::{check_dim, check_same_dim, GroupElement, LinearMap};

/// An exact, signed Walsh-Hadamard spectrum of length `2^dim`.
///
/// Values fit in `i128` with ample headroom: a spectrum value is bounded by
/// the total mass (at most `2^24 * (2^64 - 1) < 2^88`), and one further
/// unnormalized transform stays below `2^112`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Spectrum {
    dim: u32,
    values: Vec<i128>,
}

impl Spectrum {
    pub fn new(dim: u32, values: Vec<i128>) -> Result<Self> {
        check_dim(dim)?;
        if values.len() != 1usize << dim {
            return Err(Error::InvalidArgument(format!(
                "expected {} spectrum values for dimension {dim}, got {}",
                1usize << dim,
                values.len()
            )));
        }
        Ok(Self { dim, values })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn values(&self) -> &[i128] {
        &self.values
    }

    pub fn value(&self, x: u32) -> i128 {
        self.values[x as usize]
    }
}

/// The unnormalized Walsh-Hadamard transform
/// `f̂(x) = Σ_y f(y) (-1)^(x·y)`, computed by the O(n 2^n) butterfly.
pub fn wht(f: &Multiset) -> Spectrum {
    let mut values: Vec<i128> = f.counts().iter().map(|&c| c as i128).collect();
    wht_in_place(&mut values);
    Spectrum {
        dim: f.dim(),
        values,
    }
}

/// The same butterfly on signed data; applying it to a spectrum's values
/// yields `2^dim` times the original counts.
pub fn wht_signed(dim: u32, values: &[i128]) -> Result<Vec<i128>> {
    check_dim(dim)?;
    if values.len() != 1usize << dim {
        return Err(Error::InvalidArgument(format!(
            "expected {} values for dimension {dim}, got {}",
            1usize << dim,
            values.len()
        )));
    }
    let mut v = values.to_vec();
    wht_in_place(&mut v);
    Ok(v)
}

pub(crate) fn wht_in_place(values: &mut [i128]) {
    let n = values.len();
    let mut h = 1;
    while h < n {
        let mut block = 0;
        while block < n {
            for i in block..block + h {
                let a = values[i];
                let b = values[i + h];
                values[i] = a + b;
                values[i + h] = a - b;
            }
            block += h * 2;
        }
        h *= 2;
    }
}

/// Inverts the transform. Fails when the input is not the spectrum of a
/// multiset, i.e. when some reconstructed count is negative or `2^dim` does
/// not divide the double transform exactly.
pub fn inverse_wht(s: &Spectrum) -> Result<Multiset> {
    let mut v = s.values.clone();
    wht_in_place(&mut v);
    let scale = 1i128 << s.dim;
    let mut counts = Vec::with_capacity(v.len());
    for (x, &val) in v.iter().enumerate() {
        if val % scale != 0 {
            return Err(Error::InvalidArgument(format!(
                "not a multiset spectrum: count at {x} is non-integral"
            )));
        }
        let c = val / scale;
        if c < 0 || c > u64::MAX as i128 {
            return Err(Error::InvalidArgument(format!(
                "not a multiset spectrum: count {c} at {x} out of range"
            )));
        }
        counts.push(c as u64);
    }
    Multiset::new(s.dim, counts)
}

/// A zero-XOR sequence over which the two spectra's products differ;
/// the certificate that two multisets separate at `elements.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroSumWitness {
    elements: Vec<GroupElement>,
    product_left: BigInt,
    product_right: BigInt,
}

impl ZeroSumWitness {
    fn new(dim: u32, values: &[u32], fa: &[i128], fb: &[i128]) -> Self {
        debug_assert_eq!(values.iter().fold(0, |acc, &v| acc ^ v), 0);
        let product = |spec: &[i128]| {
            values.iter().fold(BigInt::from(1), |acc, &v| {
                acc * BigInt::from(spec[v as usize])
            })
        };
        let product_left = product(fa);
        let product_right = product(fb);
        debug_assert_ne!(product_left, product_right);
        let elements = values
            .iter()
            .map(|&v| GroupElement::new(v, dim).unwrap())
            .collect();
        Self {
            elements,
            product_left,
            product_right,
        }
    }

    /// Nondecreasing elements with XOR-sum zero.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn product_left(&self) -> &BigInt {
        &self.product_left
    }

    pub fn product_right(&self) -> &BigInt {
        &self.product_right
    }
}

/// Outcome of [`distinguishing_number`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Distinguishability {
    /// Decks differ first at `level`; `witness` is the lexicographically
    /// least zero-sum sequence of that length with a product mismatch.
    Distinguishable { level: u32, witness: ZeroSumWitness },
    /// All decks agree: the multisets are translates (distinguishing number
    /// infinity). `shift` is the least translation mapping one to the other.
    Translates { shift: GroupElement },
}

impl Distinguishability {
    /// The finite level, or `None` for translates.
    pub fn level(&self) -> Option<u32> {
        match self {
            Distinguishability::Distinguishable { level, .. } => Some(*level),
            Distinguishability::Translates { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&ZeroSumWitness> {
        match self {
            Distinguishability::Distinguishable { witness, .. } => Some(witness),
            Distinguishability::Translates { .. } => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Packed state sets for the zero-sum search.
//
// A state packs (xor value, flip parity) as `(xor << 1) | parity`, so adding
// a support element is a single XOR on the state index. On a packed bitset
// that XOR becomes a word permutation plus an in-word bit shuffle.

#[derive(Clone)]
struct StateSet {
    words: Vec<u64>,
}

impl StateSet {
    fn empty(dim: u32) -> Self {
        let bits = 1usize << (dim + 1);
        Self {
            words: vec![0; bits.div_ceil(64)],
        }
    }

    fn singleton_origin(dim: u32) -> Self {
        let mut s = Self::empty(dim);
        s.words[0] = 1;
        s
    }

    #[inline]
    fn contains(&self, state: usize) -> bool {
        (self.words[state >> 6] >> (state & 63)) & 1 == 1
    }

    /// `self |= { s ^ mask : s in src }`.
    fn or_xor_shift(&mut self, src: &StateSet, mask: usize) {
        let word_x = mask >> 6;
        let bit_x = (mask & 63) as u32;
        for (w, &bits) in src.words.iter().enumerate() {
            if bits != 0 {
                self.words[w ^ word_x] |= xor_shuffle_word(bits, bit_x);
            }
        }
    }
}

/// Permutes the bits of a word by `i -> i ^ b` for `b < 64`.
fn xor_shuffle_word(mut v: u64, b: u32) -> u64 {
    if b & 1 != 0 {
        v = ((v & 0xAAAA_AAAA_AAAA_AAAA) >> 1) | ((v & 0x5555_5555_5555_5555) << 1);
    }
    if b & 2 != 0 {
        v = ((v & 0xCCCC_CCCC_CCCC_CCCC) >> 2) | ((v & 0x3333_3333_3333_3333) << 2);
    }
    if b & 4 != 0 {
        v = ((v & 0xF0F0_F0F0_F0F0_F0F0) >> 4) | ((v & 0x0F0F_0F0F_0F0F_0F0F) << 4);
    }
    if b & 8 != 0 {
        v = ((v & 0xFF00_FF00_FF00_FF00) >> 8) | ((v & 0x00FF_00FF_00FF_00FF) << 8);
    }
    if b & 16 != 0 {
        v = ((v & 0xFFFF_0000_FFFF_0000) >> 16) | ((v & 0x0000_FFFF_0000_FFFF) << 16);
    }
    if b & 32 != 0 {
        v = v.rotate_left(32);
    }
    v
}

/// The state index of "XOR zero, odd flip parity" — a product mismatch.
const MISMATCH_STATE: usize = 1;

/// Zero-sum product search over the common support of two spectra that
/// already agree at levels 1 and 2 (equal masses, equal squares).
struct ZeroSumSearch {
    dim: u32,
    /// Common support, ascending.
    support: Vec<u32>,
    /// Per support element: whether the two spectra have opposite signs.
    flip: Vec<bool>,
}

impl ZeroSumSearch {
    /// Returns `None` when the spectra are identical (no sign flips), in
    /// which case no product mismatch exists at any level.
    fn new(dim: u32, fa: &[i128], fb: &[i128]) -> Option<Self> {
        debug_assert_eq!(fa[0], fb[0]);
        debug_assert!((0..fa.len()).all(|x| fa[x].unsigned_abs() == fb[x].unsigned_abs()));
        let mut support = Vec::new();
        let mut flip = Vec::new();
        let mut any_flip = false;
        for x in 0..fa.len() {
            if fa[x] != 0 {
                let f = (fa[x] < 0) != (fb[x] < 0);
                support.push(x as u32);
                flip.push(f);
                any_flip |= f;
            }
        }
        any_flip.then_some(Self { dim, support, flip })
    }

    #[inline]
    fn mask(&self, idx: usize) -> usize {
        ((self.support[idx] as usize) << 1) | usize::from(self.flip[idx])
    }

    /// Least level in `3..=cap` admitting a zero-XOR odd-flip multiset, i.e.
    /// a product mismatch. A minimal mismatch repeats no element (a repeated
    /// pair cancels in both XOR and parity), so the scan may stop at the
    /// support size.
    fn min_mismatch_level(&self, cap: u32) -> Option<u32> {
        let cap = cap.min(self.support.len() as u32);
        let mut reach = StateSet::singleton_origin(self.dim);
        for level in 1..=cap {
            let mut next = StateSet::empty(self.dim);
            for idx in 0..self.support.len() {
                next.or_xor_shift(&reach, self.mask(idx));
            }
            reach = next;
            if reach.contains(MISMATCH_STATE) {
                debug_assert!(level >= 3, "levels 1 and 2 are settled before the search");
                return Some(level);
            }
        }
        None
    }

    /// The lexicographically least nondecreasing zero-XOR odd-flip sequence
    /// of exactly `level` elements, or `None` if that length is unreachable.
    ///
    /// Uses suffix reachability tables: `table[j][r]` holds every state
    /// reachable with `r` elements drawn (with repetition) from
    /// `support[j..]`. The descent then never backtracks.
    fn lex_least_witness(&self, level: u32) -> Option<Vec<u32>> {
        let m = self.support.len();
        let level = level as usize;
        let empty = StateSet::empty(self.dim);
        let origin = StateSet::singleton_origin(self.dim);

        let mut table: Vec<Vec<StateSet>> = Vec::with_capacity(m + 1);
        table.resize(m + 1, Vec::new());
        table[m] = vec![origin.clone(); 1];
        table[m].resize(level + 1, empty.clone());
        for j in (0..m).rev() {
            let mut row = Vec::with_capacity(level + 1);
            row.push(origin.clone());
            for r in 1..=level {
                let mut s = table[j + 1][r].clone();
                s.or_xor_shift(&row[r - 1], self.mask(j));
                row.push(s);
            }
            table[j] = row;
        }

        if !table[0][level].contains(MISMATCH_STATE) {
            return None;
        }

        let mut path = Vec::with_capacity(level);
        let mut xor = 0u32;
        let mut parity = 0usize;
        let mut lo = 0usize;
        for slot in 0..level {
            let remaining = level - slot - 1;
            let step = (lo..m).find(|&idx| {
                let nx = xor ^ self.support[idx];
                let np = parity ^ usize::from(self.flip[idx]);
                table[idx][remaining].contains(((nx as usize) << 1) | (1 ^ np))
            });
            match step {
                Some(idx) => {
                    xor ^= self.support[idx];
                    parity ^= usize::from(self.flip[idx]);
                    path.push(self.support[idx]);
                    lo = idx;
                }
                None => {
                    debug_assert!(false, "table certified this length as reachable");
                    return None;
                }
            }
        }
        Some(path)
    }
}

/// First level in `1..=cap` at which the decks of the two spectra differ.
pub(crate) fn mismatch_level(dim: u32, fa: &[i128], fb: &[i128], cap: u32) -> Option<u32> {
    if cap == 0 {
        return None;
    }
    if fa[0] != fb[0] {
        return Some(1);
    }
    if cap >= 2 && (0..fa.len()).any(|x| fa[x].unsigned_abs() != fb[x].unsigned_abs()) {
        return Some(2);
    }
    if cap >= 3 {
        if let Some(search) = ZeroSumSearch::new(dim, fa, fb) {
            return search.min_mismatch_level(cap);
        }
    }
    None
}

/// Exact k-indistinguishability via the spectral product criterion: true iff
/// for every length `i <= k`, every nondecreasing zero-XOR sequence from the
/// joint support has equal spectrum products on both sides.
pub fn fourier_indistinguishable(f: &Multiset, g: &Multiset, k: u32) -> Result<bool> {
    check_same_dim(f.dim(), g.dim())?;
    let fa = wht(f);
    let fb = wht(g);
    Ok(mismatch_level(f.dim(), fa.values(), fb.values(), k).is_none())
}

/// The least deck level separating `f` from `g`, with the lexicographically
/// least zero-sum witness at that level, or proof that they are translates.
///
/// The level scan is capped at `dim + 1`: a pair surviving that deep must be
/// a translate pair, and this is verified directly rather than assumed — a
/// failure of that verification is reported as an invariant violation.
pub fn distinguishing_number(f: &Multiset, g: &Multiset) -> Result<Distinguishability> {
    check_same_dim(f.dim(), g.dim())?;
    let dim = f.dim();
    let fa = wht(f);
    let fb = wht(g);
    match mismatch_level(dim, fa.values(), fb.values(), dim + 1) {
        Some(1) => {
            let witness = ZeroSumWitness::new(dim, &[0], fa.values(), fb.values());
            Ok(Distinguishability::Distinguishable { level: 1, witness })
        }
        Some(2) => {
            let x = (0..fa.values.len() as u32)
                .find(|&x| fa.value(x).unsigned_abs() != fb.value(x).unsigned_abs())
                .expect("level 2 mismatch has a witnessing point");
            let witness = ZeroSumWitness::new(dim, &[x, x], fa.values(), fb.values());
            Ok(Distinguishability::Distinguishable { level: 2, witness })
        }
        Some(level) => {
            let search = ZeroSumSearch::new(dim, fa.values(), fb.values())
                .expect("a mismatch beyond level 2 requires sign flips");
            let elems = search
                .lex_least_witness(level)
                .expect("the level scan certified this length");
            let witness = ZeroSumWitness::new(dim, &elems, fa.values(), fb.values());
            Ok(Distinguishability::Distinguishable { level, witness })
        }
        None => match f.find_translation(g)? {
            Some(shift) => Ok(Distinguishability::Translates { shift }),
            None => Err(Error::InvariantViolation(
                "pair survived the zero-sum search to depth dim+1 but is not a translate pair"
                    .into(),
            )),
        },
    }
}

/// Builds the separating linear map for a distinguishable pair.
///
/// For a pair separating at level k, the returned map θ sends Z_2^n onto
/// Z_2^(max(k-1,1)) with dual θ* mapping `e_j` to the j-th witness entry; the
/// images then separate at exactly k (checked before returning).
pub fn separating_projection(f: &Multiset, g: &Multiset) -> Result<(LinearMap, u32)> {
    let (level, witness) = match distinguishing_number(f, g)? {
        Distinguishability::Translates { .. } => return Err(Error::TranslatesInput),
        Distinguishability::Distinguishable { level, witness } => (level, witness),
    };
    let target_dim = level.saturating_sub(1).max(1);
    let mut cols: Vec<u32> = witness.elements()[..level as usize - 1]
        .iter()
        .map(|e| e.value())
        .collect();
    cols.resize(target_dim as usize, 0);
    let theta_star = LinearMap::new(target_dim, f.dim(), cols)?;
    let theta = theta_star.dual();

    let fi = f.linear_image(&theta)?;
    let gi = g.linear_image(&theta)?;
    let image_level = mismatch_level(
        target_dim,
        wht(&fi).values(),
        wht(&gi).values(),
        target_dim + 1,
    );
    if image_level != Some(level) {
        return Err(Error::InvariantViolation(format!(
            "projected pair separates at {image_level:?}, expected level {level}"
        )));
    }
    Ok((theta, level))
}

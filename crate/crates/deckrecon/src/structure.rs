//! The standard multiset family with its closed-form spectrum, standard
//! position, and the classification of maximally indistinguishable pairs on
//! Z_2^(k-1).
//!
//! A pair of multisets on Z_2^(k-1) with distinguishing number k is, up to an
//! invertible linear map and translations, a swapped pair from the standard
//! family. [`classify_pair`] recovers that data and verifies it by direct
//! multiset equality before returning; it never returns unverified
//! parameters.
//!
//! The closed form for the family's spectrum carries `-2^(k-2) a_i` at each
//! basis vector. The sign is fixed by the transform itself and is asserted
//! against `wht(standard_multiset(p))` in the tests.

use crate::deck::Multiset;
use crate::error::{Error, Result};
use crate::gf2::{GroupElement, LinearMap, MAX_DIM};
use crate::spectral::{distinguishing_number, wht, Distinguishability, Spectrum};

/// Parameters of the standard family: distinct offsets `a`, `b` applied by
/// coordinate-sum parity, plus positive per-coordinate weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardParams {
    k: u32,
    a: u64,
    b: u64,
    coeffs: Vec<u64>,
}

impl StandardParams {
    pub fn new(k: u32, a: u64, b: u64, coeffs: Vec<u64>) -> Result<Self> {
        if k < 3 {
            return Err(Error::Precondition(format!(
                "standard family needs k >= 3, got {k}"
            )));
        }
        if k - 1 > MAX_DIM {
            return Err(Error::InstanceTooLarge(format!(
                "standard family on dimension {} exceeds maximum {MAX_DIM}",
                k - 1
            )));
        }
        if a == b {
            return Err(Error::InvalidArgument(
                "offsets a and b must be distinct".into(),
            ));
        }
        if coeffs.len() != (k - 1) as usize {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                k - 1,
                coeffs.len()
            )));
        }
        if coeffs.contains(&0) {
            return Err(Error::InvalidArgument(
                "coefficients must be positive".into(),
            ));
        }
        let peak = a.max(b) as u128 + coeffs.iter().map(|&c| c as u128).sum::<u128>();
        if peak > u64::MAX as u128 {
            return Err(Error::InstanceTooLarge(
                "parameters overflow the count range".into(),
            ));
        }
        Ok(Self { k, a, b, coeffs })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Same weights with the parity offsets exchanged.
    pub fn swapped(&self) -> StandardParams {
        StandardParams {
            k: self.k,
            a: self.b,
            b: self.a,
            coeffs: self.coeffs.clone(),
        }
    }
}

/// The standard multiset on Z_2^(k-1): count `a + Σ a_i x_i` at even-parity
/// points and `b + Σ a_i x_i` at odd-parity points.
pub fn standard_multiset(p: &StandardParams) -> Multiset {
    let dim = p.k - 1;
    let counts = (0..1u32 << dim)
        .map(|x| {
            let weighted: u64 = (0..dim)
                .filter(|&i| (x >> i) & 1 == 1)
                .map(|i| p.coeffs[i as usize])
                .sum();
            let base = if x.count_ones() % 2 == 0 { p.a } else { p.b };
            base + weighted
        })
        .collect();
    Multiset::new(dim, counts).unwrap()
}

/// The closed-form spectrum of the standard multiset:
/// `2^(k-2)(a + b + Σ a_i)` at 0, `-2^(k-2) a_i` at `e_i`,
/// `2^(k-2)(a - b)` at the all-ones element, and 0 elsewhere.
pub fn standard_spectrum(p: &StandardParams) -> Spectrum {
    let dim = p.k - 1;
    let scale = 1i128 << (p.k - 2);
    let mut values = vec![0i128; 1 << dim];
    let coeff_sum: i128 = p.coeffs.iter().map(|&c| c as i128).sum();
    values[0] = scale * (p.a as i128 + p.b as i128 + coeff_sum);
    for i in 0..dim {
        values[1 << i] = -scale * p.coeffs[i as usize] as i128;
    }
    let h = (1usize << dim) - 1;
    values[h] = scale * (p.a as i128 - p.b as i128);
    Spectrum::new(dim, values).unwrap()
}

/// The standard pair `(f_(a,b), f_(b,a))`; its distinguishing number is
/// exactly k.
pub fn standard_pair(p: &StandardParams) -> (Multiset, Multiset) {
    (standard_multiset(p), standard_multiset(&p.swapped()))
}

/// Largest multiplicity in the multiset.
pub fn max_multiplicity(f: &Multiset) -> u64 {
    f.counts().iter().copied().max().unwrap_or(0)
}

/// For a pair on Z_2^(k-1) with distinguishing number exactly k, returns an
/// invertible map θ placing the pair in standard position: the separating
/// witness of the images becomes `(e_1, ..., e_(k-1), h)`.
///
/// The first k-1 witness entries of such a pair are necessarily linearly
/// independent; a dependent prefix contradicts minimality of the witness and
/// is reported as an invariant violation.
pub fn standardize_pair(f1: &Multiset, f2: &Multiset) -> Result<LinearMap> {
    let dim = f1.dim();
    if dim < 2 {
        return Err(Error::Precondition(
            "standard position needs dimension >= 2 (k >= 3)".into(),
        ));
    }
    let k = dim + 1;
    let witness = match distinguishing_number(f1, f2)? {
        Distinguishability::Distinguishable { level, witness } if level == k => witness,
        Distinguishability::Distinguishable { level, .. } => {
            return Err(Error::Precondition(format!(
                "pair separates at level {level}, need exactly {k} on dimension {dim}"
            )));
        }
        Distinguishability::Translates { .. } => {
            return Err(Error::Precondition(
                "pair is a translate pair, not maximally indistinguishable".into(),
            ));
        }
    };
    let prefix: Vec<u32> = witness.elements()[..dim as usize]
        .iter()
        .map(|e| e.value())
        .collect();
    let theta_star = LinearMap::new(dim, dim, prefix)?;
    if !theta_star.is_invertible() {
        return Err(Error::InvariantViolation(
            "minimal witness prefix is linearly dependent".into(),
        ));
    }
    Ok(theta_star.dual())
}

/// A verified reduction of a maximally indistinguishable pair to the
/// standard family: `translate(θf_1, z_1) = standard_multiset(params)` and
/// `translate(θf_2, z_2) = standard_multiset(params.swapped())`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    theta: LinearMap,
    z1: GroupElement,
    z2: GroupElement,
    params: StandardParams,
}

impl Classification {
    pub fn theta(&self) -> &LinearMap {
        &self.theta
    }

    pub fn z1(&self) -> GroupElement {
        self.z1
    }

    pub fn z2(&self) -> GroupElement {
        self.z2
    }

    pub fn params(&self) -> &StandardParams {
        &self.params
    }
}

fn verification_failure(msg: impl Into<String>) -> Error {
    Error::VerificationFailure(msg.into())
}

/// Classifies a maximally indistinguishable pair on Z_2^(k-1): standardizes,
/// normalizes translation so the spectrum is negative at every basis vector,
/// reads off the parameters, and verifies the result by direct multiset
/// equality. Inputs outside the theorem's reach fail verification; nothing
/// unverified is ever returned.
pub fn classify_pair(f1: &Multiset, f2: &Multiset) -> Result<Classification> {
    let theta = standardize_pair(f1, f2).map_err(|e| match e {
        Error::Precondition(msg) => verification_failure(msg),
        other => other,
    })?;
    let dim = f1.dim();
    let k = dim + 1;
    let g1 = f1.linear_image(&theta)?;
    let g2 = f2.linear_image(&theta)?;

    let normalize = |g: &Multiset| -> Result<(GroupElement, Multiset)> {
        let spec = wht(g);
        let mut z = 0u32;
        for i in 0..dim {
            let at_basis = spec.value(1 << i);
            if at_basis == 0 {
                return Err(verification_failure(format!(
                    "spectrum vanishes at basis vector e_{}",
                    i + 1
                )));
            }
            if at_basis > 0 {
                z |= 1 << i;
            }
        }
        let z = GroupElement::new(z, dim)?;
        Ok((z, g.translate(z)?))
    };
    let (z1, n1) = normalize(&g1)?;
    let (z2, n2) = normalize(&g2)?;

    let scale = 1i128 << (k - 2);
    let spec1 = wht(&n1);
    let mut coeffs = Vec::with_capacity(dim as usize);
    for i in 0..dim {
        let v = -spec1.value(1 << i);
        if v <= 0 || v % scale != 0 || v / scale > u64::MAX as i128 {
            return Err(verification_failure(format!(
                "spectrum at e_{} is not a positive multiple of 2^(k-2)",
                i + 1
            )));
        }
        coeffs.push((v / scale) as u64);
    }
    let a = n1.count(0);
    let b = n2.count(0);
    let params = StandardParams::new(k, a, b, coeffs).map_err(|e| match e {
        Error::InvalidArgument(msg) | Error::Precondition(msg) => verification_failure(msg),
        other => other,
    })?;

    if n1 != standard_multiset(&params) || n2 != standard_multiset(&params.swapped()) {
        return Err(verification_failure(
            "normalized pair does not match the standard family",
        ));
    }
    Ok(Classification {
        theta,
        z1,
        z2,
        params,
    })
}

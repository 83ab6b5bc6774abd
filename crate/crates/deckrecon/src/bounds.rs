//! The closed-form reconstruction number, its integer characterization, and
//! exhaustive ground-truth computation in small dimension.
//!
//! The formula `floor(n + 1 - log2(n + 1 - log2 n))` is never evaluated in
//! floating point here: it equals `n - t` for the unique t with
//! `2^t + t <= n < 2^(t+1) + t + 1`, and the predicate `2^(n+1-k) >= k`
//! resolves through bit lengths. The float route exists only as a test-side
//! cross-check of the integer route.

use rayon::prelude::*;

use crate::deck::Subset;
use crate::error::{Error, Result};
use crate::spectral::{mismatch_level, wht};

/// The unique non-negative `t` with `2^t + t <= n < 2^(t+1) + t + 1`.
pub fn tee(n: u32) -> u32 {
    assert!(n >= 1, "tee is defined for n >= 1");
    let n = n as u64;
    let mut t = 0u32;
    loop {
        if (1u64 << t) + t as u64 <= n && n < (1u64 << (t + 1)) + t as u64 + 1 {
            return t;
        }
        t += 1;
    }
}

/// The reconstruction number of Z_2^n: `floor(n + 1 - log2(n + 1 - log2 n))`,
/// computed in integers as `n - tee(n)`.
pub fn reconstruction_number_formula(n: u32) -> u32 {
    n - tee(n)
}

/// Whether `2^(n+1-k) >= k`, in pure integer arithmetic. A negative exponent
/// makes the left side less than 1, hence the predicate false.
pub fn predicate(n: u32, k: u32) -> bool {
    assert!(n >= 1 && k >= 1, "predicate is defined for n, k >= 1");
    if k > n + 1 {
        return false;
    }
    let exponent = n + 1 - k;
    if exponent >= 32 {
        return true; // 2^32 already exceeds any u32 k
    }
    (1u64 << exponent) >= k as u64
}

const EXHAUSTIVE_DIM_LIMIT: u32 = 4;

/// Membership mask form of a subset of Z_2^n (bit m = element m), usable up
/// to n = 4 where masks have at most 16 bits.
fn mask_members(n: u32, mask: u32) -> Vec<u32> {
    (0..1u32 << n).filter(|&m| (mask >> m) & 1 == 1).collect()
}

fn mask_translate(n: u32, mask: u32, z: u32) -> u32 {
    let mut out = 0u32;
    for m in 0..1u32 << n {
        if (mask >> m) & 1 == 1 {
            out |= 1 << (m ^ z);
        }
    }
    out
}

/// Orders masks by their sorted element lists, matching the order used by
/// `canonical_translate`: the set containing the least element of the
/// symmetric difference is smaller, except when the other set is a strict
/// prefix of it.
fn mask_list_less(a: u32, b: u32) -> bool {
    if a == b {
        return false;
    }
    let m = (a ^ b).trailing_zeros();
    if (a >> m) & 1 == 1 {
        b >> m != 0
    } else {
        a >> m == 0
    }
}

/// Least translate of `mask` in element-list order; the mask counterpart of
/// `canonical_translate`.
fn mask_canonical(n: u32, mask: u32) -> u32 {
    let mut best = mask;
    for z in 1..1u32 << n {
        let cand = mask_translate(n, mask, z);
        if mask_list_less(cand, best) {
            best = cand;
        }
    }
    best
}

fn mask_spectrum(n: u32, mask: u32) -> Vec<i128> {
    let mut values: Vec<i128> = (0..1u32 << n).map(|m| ((mask >> m) & 1) as i128).collect();
    crate::spectral::wht_in_place(&mut values);
    values
}

/// The reconstruction number of a single set: the largest level at which
/// some non-translate set is still indistinguishable from it, plus one —
/// equivalently the maximum distinguishing number over all non-translates.
pub fn set_reconstruction_number(t: &Subset) -> Result<u32> {
    let n = t.dim();
    if n > EXHAUSTIVE_DIM_LIMIT {
        return Err(Error::InstanceTooLarge(format!(
            "set reconstruction number scans all 2^(2^n) subsets; n = {n} exceeds {EXHAUSTIVE_DIM_LIMIT}"
        )));
    }
    let t_mask = t.members().iter().fold(0u32, |acc, &m| acc | (1 << m));
    let t_canon = mask_canonical(n, t_mask);
    let t_spec = wht(&t.indicator());

    let mut r = 1u32;
    for mask in 0..1u64 << (1u64 << n) {
        let mask = mask as u32;
        if mask_canonical(n, mask) == t_canon {
            continue; // translate of t
        }
        match mismatch_level(n, t_spec.values(), &mask_spectrum(n, mask), n + 1) {
            Some(level) => r = r.max(level),
            None => {
                return Err(Error::InvariantViolation(format!(
                    "non-translate subsets indistinguishable through level {}",
                    n + 1
                )))
            }
        }
    }
    Ok(r)
}

/// Outcome of the exhaustive scan: the maximum distinguishing number over
/// all non-translate pairs of translation classes, with every attaining pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExhaustiveResult {
    pub n: u32,
    /// The reconstruction number found by the scan.
    pub r: u32,
    /// Every unordered class pair attaining `r`, as canonical subsets.
    pub extremal_pairs: Vec<(Subset, Subset, u32)>,
    /// Number of translation classes enumerated.
    pub class_count: u64,
}

/// Computes the reconstruction number of Z_2^n from first principles: one
/// canonical representative per translation class, pairwise distinguishing
/// numbers via the spectral oracle, maximum over all pairs.
///
/// The class-pair scan partitions across threads; the result is
/// deterministic regardless of schedule.
pub fn exhaustive_reconstruction_number(n: u32) -> Result<ExhaustiveResult> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if n > EXHAUSTIVE_DIM_LIMIT {
        return Err(Error::InstanceTooLarge(format!(
            "exhaustive scan is limited to n <= {EXHAUSTIVE_DIM_LIMIT}, got {n}"
        )));
    }

    // Canonical fixed points, in element-list order.
    let mut reps: Vec<u32> = (0..1u64 << (1u64 << n))
        .map(|mask| mask as u32)
        .filter(|&mask| mask_canonical(n, mask) == mask)
        .collect();
    reps.sort_unstable_by(|&a, &b| {
        if mask_list_less(a, b) {
            std::cmp::Ordering::Less
        } else if a == b {
            std::cmp::Ordering::Equal
        } else {
            std::cmp::Ordering::Greater
        }
    });
    let class_count = reps.len() as u64;

    let spectra: Vec<Vec<i128>> = reps.iter().map(|&mask| mask_spectrum(n, mask)).collect();
    let sizes: Vec<u32> = reps.iter().map(|&mask| mask.count_ones()).collect();

    // Per first index: the local maximum level and the partners attaining it.
    let per_row: Vec<(u32, Vec<usize>)> = (0..reps.len())
        .into_par_iter()
        .map(|i| {
            let mut local_max = 0u32;
            let mut attaining: Vec<usize> = Vec::new();
            for j in i + 1..reps.len() {
                let level = if sizes[i] != sizes[j] {
                    1 // deck_1 is the size
                } else {
                    mismatch_level(n, &spectra[i], &spectra[j], n + 1).unwrap_or(u32::MAX)
                };
                match level.cmp(&local_max) {
                    std::cmp::Ordering::Greater => {
                        local_max = level;
                        attaining = vec![j];
                    }
                    std::cmp::Ordering::Equal => attaining.push(j),
                    std::cmp::Ordering::Less => {}
                }
            }
            (local_max, attaining)
        })
        .collect();

    let r = per_row.iter().map(|&(m, _)| m).max().unwrap_or(0);
    if r == u32::MAX {
        return Err(Error::InvariantViolation(format!(
            "distinct classes indistinguishable through level {}",
            n + 1
        )));
    }

    let mut extremal_pairs = Vec::new();
    for (i, (local_max, attaining)) in per_row.iter().enumerate() {
        if *local_max == r {
            for &j in attaining {
                extremal_pairs.push((
                    Subset::new(n, mask_members(n, reps[i]))?,
                    Subset::new(n, mask_members(n, reps[j]))?,
                    r,
                ));
            }
        }
    }
    Ok(ExhaustiveResult {
        n,
        r,
        extremal_pairs,
        class_count,
    })
}

/// Number of translation classes by the orbit-counting (Burnside) formula:
/// `(2^(2^n) + (2^n - 1) 2^(2^(n-1))) / 2^n`. Exposed for cross-checking the
/// enumerated class count.
pub fn translation_class_count_by_burnside(n: u32) -> u64 {
    assert!((1..=5).contains(&n));
    let full = 1u64 << (1u64 << n);
    let paired = 1u64 << (1u64 << (n - 1));
    (full + (((1u64 << n) - 1) * paired)) >> n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::canonical_translate_raw;

    #[test]
    fn tee_examples() {
        assert_eq!(tee(1), 0);
        assert_eq!(tee(2), 0);
        assert_eq!(tee(3), 1);
        assert_eq!(tee(6), 2);
        assert_eq!(tee(10), 2);
        assert_eq!(tee(11), 3);
    }

    #[test]
    fn tee_satisfies_its_inequality() {
        for n in 1..=4096u32 {
            let t = tee(n);
            let lo = (1u64 << t) + t as u64;
            let hi = (1u64 << (t + 1)) + t as u64 + 1;
            assert!(lo <= n as u64 && (n as u64) < hi, "n={n} t={t}");
        }
    }

    #[test]
    fn formula_examples() {
        let expected = [(1, 1), (2, 2), (3, 2), (4, 3), (6, 4), (10, 8)];
        for (n, r) in expected {
            assert_eq!(reconstruction_number_formula(n), r, "n={n}");
        }
    }

    #[test]
    fn predicate_examples() {
        assert!(predicate(4, 3));
        assert!(!predicate(3, 3));
        for n in 1..=64u32 {
            assert!(!predicate(n, n + 2));
        }
    }

    #[test]
    fn predicate_matches_formula_threshold() {
        for n in 1..=512u32 {
            let r = reconstruction_number_formula(n);
            for k in 1..=n + 2 {
                assert_eq!(predicate(n, k), k <= r, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn mask_order_matches_element_list_order() {
        for n in 1..=3u32 {
            let width = 1u32 << n;
            for a in 0..1u32 << width {
                for b in 0..1u32 << width {
                    let la = mask_members(n, a);
                    let lb = mask_members(n, b);
                    assert_eq!(mask_list_less(a, b), la < lb, "a={a:#b} b={b:#b}");
                }
            }
        }
    }

    #[test]
    fn mask_canonical_matches_list_canonical() {
        for n in 1..=3u32 {
            let width = 1u32 << n;
            for mask in 0..1u32 << width {
                let via_mask = mask_members(n, mask_canonical(n, mask));
                let via_list = canonical_translate_raw(n, &mask_members(n, mask));
                assert_eq!(via_mask, via_list);
            }
        }
    }

    #[test]
    fn set_reconstruction_number_examples() {
        let t = Subset::new(1, vec![0]).unwrap();
        assert_eq!(set_reconstruction_number(&t).unwrap(), 1);

        let t = Subset::new(2, vec![0, 1]).unwrap();
        assert_eq!(set_reconstruction_number(&t).unwrap(), 2);

        let t = Subset::empty(2).unwrap();
        assert_eq!(set_reconstruction_number(&t).unwrap(), 1);
    }

    #[test]
    fn class_counts_match_burnside() {
        assert_eq!(translation_class_count_by_burnside(1), 3);
        assert_eq!(translation_class_count_by_burnside(2), 7);
        assert_eq!(translation_class_count_by_burnside(3), 46);
        assert_eq!(translation_class_count_by_burnside(4), 4336);
        for n in 1..=3 {
            let result = exhaustive_reconstruction_number(n).unwrap();
            assert_eq!(result.class_count, translation_class_count_by_burnside(n));
        }
    }

    #[test]
    fn exhaustive_small_dimensions() {
        let r1 = exhaustive_reconstruction_number(1).unwrap();
        assert_eq!(r1.r, 1);
        assert_eq!(r1.class_count, 3);
        assert_eq!(r1.extremal_pairs.len(), 3);

        let r2 = exhaustive_reconstruction_number(2).unwrap();
        assert_eq!(r2.r, 2);
        assert_eq!(r2.class_count, 7);
        // The three pairs of distinct two-element classes.
        let pairs: Vec<(Vec<u32>, Vec<u32>)> = r2
            .extremal_pairs
            .iter()
            .map(|(a, b, _)| (a.members().to_vec(), b.members().to_vec()))
            .collect();
        assert_eq!(
            pairs,
            vec![
                (vec![0, 1], vec![0, 2]),
                (vec![0, 1], vec![0, 3]),
                (vec![0, 2], vec![0, 3]),
            ]
        );

        let r3 = exhaustive_reconstruction_number(3).unwrap();
        assert_eq!(r3.r, 2);
        assert_eq!(r3.class_count, 46);

        for n in 1..=3 {
            assert_eq!(
                exhaustive_reconstruction_number(n).unwrap().r,
                reconstruction_number_formula(n)
            );
        }
    }

    #[test]
    fn exhaustive_rejects_large_instances() {
        assert!(matches!(
            exhaustive_reconstruction_number(5),
            Err(Error::InstanceTooLarge(_))
        ));
    }

    #[test]
    fn float_route_agrees_with_integer_route() {
        // Test-only cross-check of the floating-point form; a disagreement
        // here indicts the float evaluation, never the integer one.
        for n in 1..=2048u32 {
            let float_form =
                ((n as f64) + 1.0 - ((n as f64) + 1.0 - (n as f64).log2()).log2()).floor() as u32;
            assert_eq!(float_form, reconstruction_number_formula(n), "n={n}");
        }
    }
}

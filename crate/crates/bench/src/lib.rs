//! Instance builders shared by the benchmark targets.

use kscf_core::IntervalFamily;

/// The family of every interval over n points: the densest instance shape.
pub fn complete(n: usize) -> IntervalFamily {
    kscf_core::complete_family(n).expect("benchmarks use positive n")
}

/// A left-to-right chain of width-2k intervals advancing k points at a time.
/// Consecutive intervals overlap in exactly k points and non-consecutive
/// ones are disjoint, so the k-per-step palette detector accepts the family
/// at strength k.
pub fn staircase(n: usize, k: usize) -> IntervalFamily {
    let width = 2 * k;
    let mut pairs = Vec::new();
    let mut left = 1;
    while left + width - 1 <= n {
        pairs.push((left, left + width - 1));
        left += k;
    }
    IntervalFamily::normalize(n, &pairs)
        .expect("endpoints stay within the ground set")
        .0
}

#[cfg(test)]
mod tests {
    use super::*;
    use kscf_core::is_laminar_free;

    #[test]
    fn staircases_pass_the_detector() {
        for k in 1..=4 {
            for n in [16, 64, 257] {
                let family = staircase(n, k);
                assert!(family.len() > 2, "n={n}, k={k}");
                assert!(is_laminar_free(&family, k), "n={n}, k={k}");
            }
        }
    }

    #[test]
    fn complete_is_complete() {
        assert_eq!(complete(64).len(), 64 * 65 / 2);
    }
}

//! Seeded random instance generation for testing and experimentation.

use kscf_core::{is_laminar_free, IntervalFamily};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// Requested instance shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// m intervals drawn uniformly (duplicates collapse on normalization).
    Random,
    /// A containment-heavy family: each interval nests inside an earlier one.
    Nested,
    /// A left-to-right chain of overlapping intervals that the k-color
    /// palette detector is guaranteed to accept: endpoints strictly increase
    /// and each interval extends at least k points past its predecessor.
    LaminarFree { k: usize },
    /// Every interval over the ground set.
    Complete,
}

/// A fully determined generation request: the same spec always produces the
/// same instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub n: usize,
    /// Interval count before duplicate removal. Ignored for `Complete`.
    pub m: usize,
    pub seed: u64,
    pub shape: Shape,
}

/// Parameters that no instance can satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Infeasible(pub String);

impl fmt::Display for Infeasible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "infeasible generation parameters: {}", self.0)
    }
}

impl std::error::Error for Infeasible {}

fn random_pairs(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<(usize, usize)> {
    (0..m)
        .map(|_| {
            let left = rng.random_range(1..=n);
            let right = rng.random_range(left..=n);
            (left, right)
        })
        .collect()
}

fn nested_pairs(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(m);
    for i in 0..m {
        if i == 0 {
            pairs.push((1, n));
            continue;
        }
        let (pl, pr) = pairs[rng.random_range(0..pairs.len())];
        if pl == pr {
            pairs.push((pl, pr));
            continue;
        }
        // Shrink strictly: drop points from at least one side.
        let drop_left = rng.random_range(0..=(pr - pl));
        let drop_right = rng.random_range(0..=(pr - pl - drop_left)).min(pr - pl - 1);
        let drop_left = if drop_left + drop_right == 0 { 1 } else { drop_left };
        pairs.push((pl + drop_left, pr - drop_right));
    }
    pairs
}

/// Builds the overlap chain: left and right endpoints strictly increase, the
/// first interval spans at least max(k, 2) points when a second one must
/// overlap it, and each later right endpoint advances by at least k, which
/// bounds every overlap below the interval's size minus k plus one.
fn laminar_free_pairs(
    rng: &mut ChaCha8Rng,
    n: usize,
    m: usize,
    k: usize,
) -> Result<Vec<(usize, usize)>, Infeasible> {
    if k == 0 {
        return Err(Infeasible("chain strength k must be at least 1".into()));
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    let first_size = if m == 1 { k } else { k.max(2) };
    let footprint = first_size + (m - 1) * k;
    if footprint > n {
        return Err(Infeasible(format!(
            "a chain of {m} intervals of strength {k} needs at least {footprint} points, \
             but the ground set has {n}"
        )));
    }
    let mut slack = n - footprint;

    let spend = |rng: &mut ChaCha8Rng, slack: &mut usize| {
        let used = rng.random_range(0..=*slack);
        *slack -= used;
        used
    };

    let left = 1 + spend(rng, &mut slack);
    let size = first_size + spend(rng, &mut slack);
    let mut pairs = vec![(left, left + size - 1)];
    for _ in 1..m {
        let (prev_left, prev_right) = *pairs.last().unwrap();
        let right = prev_right + k + spend(rng, &mut slack);
        let left = rng.random_range(prev_left + 1..=prev_right);
        pairs.push((left, right));
    }
    Ok(pairs)
}

/// Generates the instance described by `spec`. Deterministic in the spec.
pub fn gen_instance(spec: &GenSpec) -> Result<IntervalFamily, Infeasible> {
    if spec.n == 0 {
        return Err(Infeasible("ground-set size must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let pairs = match spec.shape {
        Shape::Random => random_pairs(&mut rng, spec.n, spec.m),
        Shape::Nested => nested_pairs(&mut rng, spec.n, spec.m),
        Shape::LaminarFree { k } => {
            let pairs = laminar_free_pairs(&mut rng, spec.n, spec.m, k)?;
            debug_assert!(is_laminar_free(
                &IntervalFamily::normalize(spec.n, &pairs).unwrap().0,
                k
            ));
            pairs
        }
        Shape::Complete => {
            return Ok(kscf_core::complete_family(spec.n)
                .expect("n was checked to be positive"));
        }
    };
    Ok(IntervalFamily::normalize(spec.n, &pairs)
        .expect("generated endpoints are always in range")
        .0)
}

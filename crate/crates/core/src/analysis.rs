//! Validity checking, exact optimization for small instances, lower bounds,
//! and per-instance ratio reports.
//!
//! The verifier restates the coloring requirement directly. The oracle finds
//! the true optimum by exhaustive search with canonical symmetry breaking and
//! is the ground truth the cheaper lower bounds are tested against.

use crate::engine::{choose_palette, general_palette_size, run, Palette, PaletteChoice};
use crate::error::Error;
use crate::model::{Coloring, Interval, IntervalFamily, KColoredStatus};
use std::fmt;

/// Whether the default color 0 is free (partial) or forbidden (total).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Semantics {
    /// Points may stay at color 0; only positive colors are counted.
    Partial,
    /// Every point must receive a positive color.
    Total,
}

impl Semantics {
    pub fn as_str(&self) -> &'static str {
        match self {
            Semantics::Partial => "partial",
            Semantics::Total => "total",
        }
    }
}

/// Per-interval outcome of checking a coloring against a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    k: usize,
    statuses: Vec<KColoredStatus>,
}

impl VerifyReport {
    pub fn k(&self) -> usize {
        self.k
    }

    /// One status per interval, in processing order.
    pub fn statuses(&self) -> &[KColoredStatus] {
        &self.statuses
    }

    pub fn is_valid(&self) -> bool {
        self.statuses.iter().all(|s| s.satisfied)
    }

    /// The statuses of intervals that do not hold enough unique colors.
    pub fn failures(&self) -> Vec<&KColoredStatus> {
        self.statuses.iter().filter(|s| !s.satisfied).collect()
    }
}

/// Checks that every interval of the family holds at least `min(|I|, k)`
/// uniquely occurring positive colors under the given coloring.
pub fn verify(
    family: &IntervalFamily,
    coloring: &Coloring,
    k: usize,
) -> Result<VerifyReport, Error> {
    if k == 0 {
        return Err(Error::InvalidStrength { k });
    }
    if coloring.n() != family.n() {
        return Err(Error::LengthMismatch {
            coloring: coloring.n(),
            family: family.n(),
        });
    }
    let statuses = family
        .iter()
        .map(|iv| coloring.k_colored_status(iv, k))
        .collect();
    Ok(VerifyReport { k, statuses })
}

/// Ground-set size beyond which the exhaustive oracle logs a warning.
pub const ORACLE_SOFT_LIMIT: usize = 10;

/// An optimum found by exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptResult {
    /// Minimal number of distinct positive colors in any valid coloring.
    pub chi_star: usize,
    /// Lexicographically smallest valid coloring at that minimum.
    pub witness: Coloring,
    pub semantics: Semantics,
}

/// Outcome of an oracle invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Optimal(OptResult),
    /// No valid coloring exists within the given color budget.
    CapExceeded { max_colors: usize },
}

struct Search {
    k: usize,
    allow_zero: bool,
    budget: usize,
    /// 1-based point colors; index 0 unused.
    colors: Vec<usize>,
    /// Intervals grouped by right endpoint: all points decided once the
    /// endpoint is reached, so each interval is checked exactly once per
    /// branch.
    ending_at: Vec<Vec<Interval>>,
    counts: Vec<u32>,
}

impl Search {
    fn dfs(&mut self, point: usize, max_used: usize) -> bool {
        if point == self.colors.len() {
            return true;
        }
        // Canonical symmetry breaking: a new color must be the smallest
        // unused index, so candidates stop at max_used + 1. Trying smaller
        // candidates first makes the first full solution the
        // lexicographically smallest one.
        let start = usize::from(!self.allow_zero);
        let top = self.budget.min(max_used + 1);
        for c in start..=top {
            self.colors[point] = c;
            if self.intervals_ending_here_ok(point) && self.dfs(point + 1, max_used.max(c)) {
                return true;
            }
        }
        self.colors[point] = 0;
        false
    }

    fn intervals_ending_here_ok(&mut self, point: usize) -> bool {
        let mut ok = true;
        for idx in 0..self.ending_at[point].len() {
            let iv = self.ending_at[point][idx];
            for p in iv.points() {
                let c = self.colors[p];
                if c > 0 {
                    self.counts[c] += 1;
                }
            }
            let mut unique = 0;
            for p in iv.points() {
                let c = self.colors[p];
                if c > 0 && self.counts[c] == 1 {
                    unique += 1;
                }
            }
            for p in iv.points() {
                let c = self.colors[p];
                if c > 0 {
                    self.counts[c] = 0;
                }
            }
            if unique < iv.len().min(self.k) {
                ok = false;
                break;
            }
        }
        ok
    }
}

/// Finds the exact minimum number of positive colors for the family by
/// exhaustive search, trying budgets 0, 1, 2, ... in turn. `max_colors`
/// caps the budget (default: n, which always suffices — the all-distinct
/// coloring is valid). Deterministic; the witness is the lexicographically
/// smallest valid coloring at the optimum.
///
/// Runtime grows exponentially with n; instances beyond
/// [`ORACLE_SOFT_LIMIT`] points log a warning but still run.
pub fn oracle_chi(
    family: &IntervalFamily,
    k: usize,
    semantics: Semantics,
    max_colors: Option<usize>,
) -> Result<OracleOutcome, Error> {
    if k == 0 {
        return Err(Error::InvalidStrength { k });
    }
    let n = family.n();
    if n > ORACLE_SOFT_LIMIT {
        log::warn!("exhaustive optimum over {n} points; expect exponential runtime");
    }
    let cap = max_colors.unwrap_or(n).min(n);
    let mut ending_at: Vec<Vec<Interval>> = vec![Vec::new(); n + 1];
    for iv in family.iter() {
        ending_at[iv.right()].push(*iv);
    }
    let mut search = Search {
        k,
        allow_zero: matches!(semantics, Semantics::Partial),
        budget: 0,
        colors: vec![0; n + 1],
        ending_at,
        counts: vec![0; cap + 1],
    };
    for budget in 0..=cap {
        search.budget = budget;
        search.colors.iter_mut().for_each(|c| *c = 0);
        if search.dfs(1, 0) {
            return Ok(OracleOutcome::Optimal(OptResult {
                chi_star: budget,
                witness: Coloring::new(search.colors[1..].to_vec()),
                semantics,
            }));
        }
    }
    Ok(OracleOutcome::CapExceeded { max_colors: cap })
}

/// Lower bound for an interval holding two disjoint strict sub-intervals
/// whose subfamilies need `chi1` and `chi2` colors: colors unique in the
/// enclosing interval must avoid repeats across both parts, which forces
/// extra colors once k exceeds the gap `|chi2 - chi1|`.
pub fn combine_lower_bounds(chi1: usize, chi2: usize, k: usize) -> usize {
    assert!(k >= 1, "strength k must be at least 1");
    let gap = chi1.abs_diff(chi2);
    let base = chi1.max(chi2);
    if k <= gap {
        base
    } else {
        base + (k - gap).div_ceil(2)
    }
}

/// Family-wide lower bound: propagates [`combine_lower_bounds`] through all
/// pairs of disjoint strict-subset members, in processing order (which puts
/// every strict subset before its superset). Sound: never exceeds the true
/// optimum under partial semantics.
pub fn lb_dp(family: &IntervalFamily, k: usize) -> usize {
    assert!(k >= 1, "strength k must be at least 1");
    let intervals = family.intervals();
    let mut f = vec![0usize; intervals.len()];
    let mut best = 0;
    for (i, iv) in intervals.iter().enumerate() {
        // An interval shorter than k only guarantees |I| unique colors, so
        // the pair combination may assume no more than that.
        let strength = iv.len().min(k);
        let mut val = strength;
        for (a, first) in intervals[..i].iter().enumerate() {
            if !iv.strictly_contains(first) {
                continue;
            }
            for (b, second) in intervals[..a].iter().enumerate() {
                if iv.strictly_contains(second) && !first.overlaps(second) {
                    val = val.max(combine_lower_bounds(f[a], f[b], strength));
                }
            }
        }
        f[i] = val;
        best = best.max(val);
    }
    best
}

/// Lower bound for the complete family over n points: halving the ground set
/// j times — until a block of at most k points remains — forces `ceil(k/2)`
/// fresh colors per halving.
pub fn lb_complete(n: usize, k: usize) -> usize {
    assert!(n >= 1, "ground set must be non-empty");
    assert!(k >= 1, "strength k must be at least 1");
    let mut halvings = 0;
    let mut reach = k;
    while reach < n {
        reach *= 2;
        halvings += 1;
    }
    k.div_ceil(2) * halvings
}

/// Conservative floor implied by the engine taking `steps` steps: the family
/// still active at the last step needs `k + (steps-1)*ceil(k/2)` colors, and
/// any coloring valid for the whole family is valid for that subfamily.
/// Zero when the floor's premise fails (no steps, or every interval shorter
/// than k).
pub fn lb_from_steps(family: &IntervalFamily, k: usize, steps: usize) -> usize {
    assert!(k >= 1, "strength k must be at least 1");
    if steps == 0 || family.max_len().is_none_or(|m| m < k) {
        return 0;
    }
    k + (steps - 1) * k.div_ceil(2)
}

/// Aggressive variant of [`lb_from_steps`] counting one more halving:
/// `k + steps*ceil(k/2)`. Its base case overshoots (one step only forces k
/// colors, not k + ceil(k/2)), so it is reported for comparison but never
/// relied on for soundness.
pub fn lb_from_steps_strong(family: &IntervalFamily, k: usize, steps: usize) -> usize {
    assert!(k >= 1, "strength k must be at least 1");
    if steps == 0 || family.max_len().is_none_or(|m| m < k) {
        return 0;
    }
    k + steps * k.div_ceil(2)
}

/// An exact non-negative rational, kept in lowest terms. Used for ratio
/// arithmetic so the crate never touches floating point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fraction {
    num: u128,
    den: u128,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Fraction {
    pub fn new(num: usize, den: usize) -> Self {
        assert!(den != 0, "fraction denominator must be nonzero");
        let (num, den) = (num as u128, den as u128);
        let g = gcd(num, den).max(1);
        Fraction { num: num / g, den: den / g }
    }

    pub fn numerator(&self) -> u128 {
        self.num
    }

    pub fn denominator(&self) -> u128 {
        self.den
    }

    /// Decimal string with `places` digits after the point, rounded
    /// half-up, computed in integer arithmetic.
    pub fn decimal(&self, places: u32) -> String {
        let pow = 10u128.pow(places);
        let scaled = (2 * self.num * pow + self.den) / (2 * self.den);
        if places == 0 {
            return scaled.to_string();
        }
        format!("{}.{:0width$}", scaled / pow, scaled % pow, width = places as usize)
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// The a-priori ratio guarantee of the general palette: palette size per
/// step over colors forced per step, `c(k) / ceil(k/2)`. Evaluates to 2 for
/// k=1, `5 - 2/k` for even k, and `(5k-1)/(k+1)` for odd k >= 3.
pub fn ratio_guarantee(k: usize) -> Result<Fraction, Error> {
    Ok(Fraction::new(general_palette_size(k)?, k.div_ceil(2)))
}

/// Everything the engine and the bound calculators can say about one
/// instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub k: usize,
    pub palette: Palette,
    /// Final coloring produced by the engine.
    pub coloring: Coloring,
    /// Number of engine steps.
    pub steps: usize,
    /// Distinct positive colors in the engine's coloring.
    pub algorithm_colors: usize,
    pub lb_dp: usize,
    /// Present only when the family is the complete one over its points.
    pub lb_complete: Option<usize>,
    pub step_floor: usize,
    pub step_floor_strong: usize,
    pub ratio_guarantee: Fraction,
    /// Exact optimum under each semantics, when the instance is small enough
    /// for the oracle.
    pub chi_partial: Option<OracleOutcome>,
    pub chi_total: Option<OracleOutcome>,
    /// algorithm_colors / chi_star, when the oracle ran and found a positive
    /// optimum.
    pub ratio_partial: Option<Fraction>,
    pub ratio_total: Option<Fraction>,
}

fn exact_ratio(colors: usize, outcome: Option<&OracleOutcome>) -> Option<Fraction> {
    match outcome {
        Some(OracleOutcome::Optimal(res)) if res.chi_star > 0 => {
            Some(Fraction::new(colors, res.chi_star))
        }
        _ => None,
    }
}

/// Runs the engine and gathers every applicable bound. The oracle runs only
/// when the ground set has at most `oracle_limit` points.
pub fn report(
    family: &IntervalFamily,
    k: usize,
    choice: PaletteChoice,
    oracle_limit: usize,
) -> Result<BoundReport, Error> {
    let palette = choose_palette(family, k, choice)?;
    let (coloring, trace) = run(family, &palette)?;
    let steps = trace.steps.len();
    let algorithm_colors = coloring.distinct_positive().len();
    let n = family.n();
    // A deduplicated in-range family with all n*(n+1)/2 members must be the
    // complete one.
    let is_complete = family.len() == n * (n + 1) / 2;
    let (chi_partial, chi_total) = if n <= oracle_limit {
        (
            Some(oracle_chi(family, k, Semantics::Partial, None)?),
            Some(oracle_chi(family, k, Semantics::Total, None)?),
        )
    } else {
        (None, None)
    };
    Ok(BoundReport {
        k,
        palette,
        steps,
        algorithm_colors,
        lb_dp: lb_dp(family, k),
        lb_complete: is_complete.then(|| lb_complete(n, k)),
        step_floor: lb_from_steps(family, k, steps),
        step_floor_strong: lb_from_steps_strong(family, k, steps),
        ratio_guarantee: ratio_guarantee(k)?,
        ratio_partial: exact_ratio(algorithm_colors, chi_partial.as_ref()),
        ratio_total: exact_ratio(algorithm_colors, chi_total.as_ref()),
        chi_partial,
        chi_total,
        coloring,
    })
}

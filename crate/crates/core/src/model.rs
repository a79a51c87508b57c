//! Ground-set points, intervals, interval families, and colorings.
//!
//! Points are the integers `1..=n`. A hyperedge is the set of points covered
//! by an interval, and a family of intervals therefore induces a hypergraph
//! over the points. Colors are unsigned integers where `0` means "uncolored":
//! color 0 is never counted as unique.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::Error;

/// A closed interval `[left, right]` of 1-based integer points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    left: usize,
    right: usize,
}

impl Interval {
    /// Creates an interval, requiring `1 <= left <= right`.
    pub fn new(left: usize, right: usize) -> Result<Self, Error> {
        if left == 0 || left > right {
            return Err(Error::InvalidInterval { left, right });
        }
        Ok(Interval { left, right })
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    /// Number of points covered.
    pub fn len(&self) -> usize {
        self.right - self.left + 1
    }

    pub fn contains_point(&self, p: usize) -> bool {
        self.left <= p && p <= self.right
    }

    /// True when `other` is a subset of `self` (not necessarily strict).
    pub fn contains(&self, other: &Interval) -> bool {
        self.left <= other.left && other.right <= self.right
    }

    /// True when `other` is a strict subset of `self`.
    pub fn strictly_contains(&self, other: &Interval) -> bool {
        self.contains(other) && self != other
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.left <= other.right && other.left <= self.right
    }

    /// Number of points shared with `other`.
    pub fn overlap_len(&self, other: &Interval) -> usize {
        if self.overlaps(other) {
            self.right.min(other.right) - self.left.max(other.left) + 1
        } else {
            0
        }
    }

    /// Iterates the covered points in ascending order.
    pub fn points(&self) -> impl DoubleEndedIterator<Item = usize> {
        self.left..=self.right
    }

    /// The strict processing order used throughout the crate: earlier right
    /// endpoint first, and on equal right endpoints the shorter interval
    /// (larger left endpoint) first. Equal intervals do not precede each
    /// other.
    pub fn precedes(&self, other: &Interval) -> bool {
        self.cmp(other) == Ordering::Less
    }
}

/// Orders by right endpoint ascending, ties by left endpoint descending.
/// This matches [`Interval::precedes`] and is the order in which families
/// store and the engine processes intervals.
impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.right
            .cmp(&other.right)
            .then_with(|| other.left.cmp(&self.left))
    }
}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.left, self.right)
    }
}

/// A duplicate-free family of intervals over the ground set `1..=n`, stored
/// in processing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalFamily {
    n: usize,
    intervals: Vec<Interval>,
}

impl IntervalFamily {
    /// Builds a family from intervals, sorting into processing order and
    /// silently dropping duplicates. Fails if `n == 0` or an interval pokes
    /// past the ground set.
    pub fn new(n: usize, intervals: Vec<Interval>) -> Result<Self, Error> {
        Self::build(n, intervals).map(|(family, _)| family)
    }

    /// Builds a family from raw `(left, right)` pairs, reporting how many
    /// duplicates were collapsed.
    pub fn normalize(n: usize, pairs: &[(usize, usize)]) -> Result<(Self, usize), Error> {
        let intervals = pairs
            .iter()
            .map(|&(l, r)| Interval::new(l, r))
            .collect::<Result<Vec<_>, _>>()?;
        Self::build(n, intervals)
    }

    fn build(n: usize, mut intervals: Vec<Interval>) -> Result<(Self, usize), Error> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        for iv in &intervals {
            if iv.right > n {
                return Err(Error::OutOfRange { left: iv.left, right: iv.right, n });
            }
        }
        let before = intervals.len();
        intervals.sort();
        intervals.dedup();
        let dropped = before - intervals.len();
        Ok((IntervalFamily { n, intervals }, dropped))
    }

    /// Internal constructor for slices already in processing order (the
    /// engine's survivor sets are order-preserving subsequences).
    pub(crate) fn from_sorted(n: usize, intervals: Vec<Interval>) -> Self {
        debug_assert!(intervals.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(intervals.iter().all(|iv| iv.right <= n));
        debug_assert!(n >= 1);
        IntervalFamily { n, intervals }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn iter(&self) -> impl Iterator<Item = &Interval> {
        self.intervals.iter()
    }

    pub fn contains(&self, iv: &Interval) -> bool {
        self.intervals.binary_search(iv).is_ok()
    }

    /// Size of the largest member, if any.
    pub fn max_len(&self) -> Option<usize> {
        self.intervals.iter().map(Interval::len).max()
    }

    /// Splits the family relative to a pivot interval into the members that
    /// cross its left boundary, cross its right boundary, or sit strictly
    /// inside it. Members equal to the pivot (or containing it with both
    /// endpoints outside) fall in no part.
    pub fn subfamilies(&self, pivot: &Interval) -> Subfamilies {
        assert!(pivot.right <= self.n, "pivot {pivot} outside ground set 1..={}", self.n);
        let mut left_crossing = Vec::new();
        let mut right_crossing = Vec::new();
        let mut contained = Vec::new();
        for iv in &self.intervals {
            if !pivot.contains(iv) {
                // Such a member reaches past the pivot on at least one side;
                // classify by which of its endpoints land inside.
                if pivot.contains_point(iv.right) {
                    left_crossing.push(*iv);
                }
                if pivot.contains_point(iv.left) {
                    right_crossing.push(*iv);
                }
            } else if iv != pivot {
                contained.push(*iv);
            }
        }
        Subfamilies {
            left_crossing: IntervalFamily::from_sorted(self.n, left_crossing),
            right_crossing: IntervalFamily::from_sorted(self.n, right_crossing),
            contained: IntervalFamily::from_sorted(self.n, contained),
        }
    }
}

impl fmt::Display for IntervalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{iv}")?;
        }
        write!(f, "}} over 1..={}", self.n)
    }
}

/// The three views of a family relative to a pivot interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subfamilies {
    /// Members not inside the pivot whose right endpoint lands in it.
    pub left_crossing: IntervalFamily,
    /// Members not inside the pivot whose left endpoint lands in it.
    pub right_crossing: IntervalFamily,
    /// Members strictly inside the pivot.
    pub contained: IntervalFamily,
}

/// A total assignment of colors to the points `1..=n`; color 0 means
/// "uncolored" and is never counted as unique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        Coloring { colors }
    }

    /// All points uncolored.
    pub fn uncolored(n: usize) -> Self {
        Coloring { colors: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    /// Color of a 1-based point.
    pub fn color(&self, point: usize) -> usize {
        assert!(
            point >= 1 && point <= self.colors.len(),
            "point {point} outside 1..={}",
            self.colors.len()
        );
        self.colors[point - 1]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// The set of distinct positive colors in use.
    pub fn distinct_positive(&self) -> BTreeSet<usize> {
        self.colors.iter().copied().filter(|&c| c > 0).collect()
    }

    /// Positive colors that appear exactly once among the points of `iv`.
    pub fn unique_positive_colors(&self, iv: &Interval) -> BTreeSet<usize> {
        assert!(iv.right <= self.colors.len(), "interval {iv} outside coloring of {} points", self.colors.len());
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for p in iv.points() {
            let c = self.colors[p - 1];
            if c > 0 {
                *counts.entry(c).or_insert(0) += 1;
            }
        }
        counts.into_iter().filter(|&(_, n)| n == 1).map(|(c, _)| c).collect()
    }

    /// Whether `iv` holds at least `min(|iv|, k)` uniquely occurring positive
    /// colors, together with the evidence.
    pub fn k_colored_status(&self, iv: &Interval, k: usize) -> KColoredStatus {
        let unique_colors = self.unique_positive_colors(iv);
        let required = iv.len().min(k);
        let satisfied = unique_colors.len() >= required;
        KColoredStatus { interval: *iv, unique_colors, required, satisfied }
    }

    pub fn is_k_colored(&self, iv: &Interval, k: usize) -> bool {
        self.k_colored_status(iv, k).satisfied
    }
}

/// Evidence for whether one interval meets its unique-color requirement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KColoredStatus {
    pub interval: Interval,
    pub unique_colors: BTreeSet<usize>,
    pub required: usize,
    pub satisfied: bool,
}

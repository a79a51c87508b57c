//! Direct coloring of the complete family — all intervals over n points.
//!
//! Instead of running the step engine, the complete family admits a
//! divide-and-conquer coloring: split the points into blocks of k, give the
//! median block k fresh colors, and recurse on each side with the next block
//! of colors. The result uses at most `k * (floor(log2 ceil(n/k)) + 1)`
//! colors, which is optimal up to a constant factor.

use crate::error::Error;
use crate::model::{Coloring, Interval, IntervalFamily};

/// The family of all `n*(n+1)/2` intervals over points `1..=n`.
pub fn complete_family(n: usize) -> Result<IntervalFamily, Error> {
    if n == 0 {
        return Err(Error::EmptyGroundSet);
    }
    let mut intervals = Vec::with_capacity(n * (n + 1) / 2);
    for right in 1..=n {
        for left in (1..=right).rev() {
            intervals.push(Interval::new(left, right).unwrap());
        }
    }
    Ok(IntervalFamily::from_sorted(n, intervals))
}

/// Points `1..=n` cut into `ceil(n/k)` consecutive blocks of k, the last one
/// padded past n if k does not divide n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockPartition {
    n: usize,
    k: usize,
    h: usize,
}

impl BlockPartition {
    pub fn new(n: usize, k: usize) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        if k == 0 {
            return Err(Error::InvalidStrength { k });
        }
        Ok(BlockPartition { n, k, h: n.div_ceil(k) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of blocks.
    pub fn block_count(&self) -> usize {
        self.h
    }

    /// Ground-set size after padding the last block to a full k points.
    pub fn padded_n(&self) -> usize {
        self.h * self.k
    }

    /// The j-th block (1-based) as an interval over the padded ground set.
    pub fn block(&self, j: usize) -> Interval {
        assert!(j >= 1 && j <= self.h, "block index out of range");
        Interval::new((j - 1) * self.k + 1, j * self.k).unwrap()
    }
}

/// The k colors handed out at recursion depth `depth`:
/// `k*(depth-1)+1 ..= k*depth`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorSet {
    k: usize,
    depth: usize,
}

impl ColorSet {
    pub fn new(k: usize, depth: usize) -> Self {
        assert!(k >= 1 && depth >= 1);
        ColorSet { k, depth }
    }

    pub fn colors(&self) -> std::ops::RangeInclusive<usize> {
        self.k * (self.depth - 1) + 1..=self.k * self.depth
    }
}

fn color_blocks(
    partition: &BlockPartition,
    colors: &mut [usize],
    first: usize,
    last: usize,
    depth: usize,
) {
    if first > last {
        return;
    }
    let median = first + (last - first + 1).div_ceil(2) - 1;
    let block = partition.block(median);
    for (point, color) in block.points().zip(ColorSet::new(partition.k(), depth).colors()) {
        colors[point - 1] = color;
    }
    if median > first {
        color_blocks(partition, colors, first, median - 1, depth + 1);
    }
    color_blocks(partition, colors, median + 1, last, depth + 1);
}

/// Colors points `1..=n` so that every interval holds at least
/// `min(|I|, k)` uniquely occurring colors — i.e. a valid coloring for the
/// complete family. Every point receives a positive color.
pub fn color_complete(n: usize, k: usize) -> Result<Coloring, Error> {
    let partition = BlockPartition::new(n, k)?;
    let mut colors = vec![0usize; partition.padded_n()];
    color_blocks(&partition, &mut colors, 1, partition.block_count(), 1);
    colors.truncate(n);
    Ok(Coloring::new(colors))
}

/// The color budget `color_complete(n, k)` never exceeds:
/// `k * (floor(log2 ceil(n/k)) + 1)`.
pub fn complete_color_budget(n: usize, k: usize) -> Result<usize, Error> {
    let partition = BlockPartition::new(n, k)?;
    Ok(k * (partition.block_count().ilog2() as usize + 1))
}

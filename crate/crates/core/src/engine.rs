//! The step-driven coloring engine.
//!
//! Each step selects a small set of points from the still-active intervals,
//! recolors exactly those points with a fresh block of colors, discards every
//! interval that now holds enough uniquely occurring colors, and repeats on
//! the survivors. Colors assigned at later steps overwrite earlier ones;
//! because every step draws from its own color block, a discarded interval
//! stays satisfied for the rest of the run.

use crate::error::Error;
use crate::model::{Coloring, Interval, IntervalFamily};

/// How a palette was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaletteMode {
    /// The unconditional palette of `2k + ceil(k/2) - 1` colors per step.
    General,
    /// Exactly `k` colors per step; valid only for laminar-free families.
    Special,
    /// Every interval is shorter than k, so `max |I|` colors finish in one step.
    SmallInstance,
}

impl PaletteMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            PaletteMode::General => "general",
            PaletteMode::Special => "special",
            PaletteMode::SmallInstance => "small",
        }
    }
}

/// A per-step color budget. Step t uses colors `(t-1)*size + 1 ..= t*size`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Palette {
    k: usize,
    size: usize,
    mode: PaletteMode,
}

impl Palette {
    /// The palette that works for every family.
    pub fn general(k: usize) -> Result<Self, Error> {
        Ok(Palette { k, size: general_palette_size(k)?, mode: PaletteMode::General })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Colors available per step.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mode(&self) -> PaletteMode {
        self.mode
    }
}

/// Size of the general per-step palette: `2k + ceil(k/2) - 1`.
pub fn general_palette_size(k: usize) -> Result<usize, Error> {
    if k == 0 {
        return Err(Error::InvalidStrength { k });
    }
    Ok(2 * k + k.div_ceil(2) - 1)
}

/// Palette selection policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaletteChoice {
    /// Pick the cheapest palette the family provably supports.
    Auto,
    /// Always use the general palette.
    General,
    /// Demand the k-color palette; fails unless the family is laminar-free.
    Special,
}

/// True when no member of the family contains another member it overlaps,
/// and every overlapping pair differs by at least k points on the later
/// member's side. On such families the engine finishes in one step with
/// exactly min(max |I|, k) colors.
pub fn is_laminar_free(family: &IntervalFamily, k: usize) -> bool {
    let intervals = family.intervals();
    for (i, later) in intervals.iter().enumerate() {
        for earlier in &intervals[..i] {
            if !earlier.overlaps(later) {
                continue;
            }
            // Processing order makes `later ⊆ earlier` impossible, so any
            // containment here is `earlier ⊂ later`.
            if later.contains(earlier) {
                return false;
            }
            if later.len() - later.overlap_len(earlier) < k {
                return false;
            }
        }
    }
    true
}

/// Chooses a palette for the family under the given policy.
///
/// Auto prefers, in order: the small-instance palette when every interval is
/// shorter than k (the detector could only pass vacuously there), the k-color
/// palette when the family is laminar-free, and otherwise the general one.
pub fn choose_palette(
    family: &IntervalFamily,
    k: usize,
    choice: PaletteChoice,
) -> Result<Palette, Error> {
    if k == 0 {
        return Err(Error::InvalidStrength { k });
    }
    match choice {
        PaletteChoice::General => Palette::general(k),
        PaletteChoice::Special => {
            if is_laminar_free(family, k) {
                Ok(Palette { k, size: k, mode: PaletteMode::Special })
            } else {
                Err(Error::NotLaminarFree { k })
            }
        }
        PaletteChoice::Auto => {
            if let Some(max_len) = family.max_len() {
                if max_len < k {
                    return Ok(Palette { k, size: max_len, mode: PaletteMode::SmallInstance });
                }
            }
            if is_laminar_free(family, k) {
                Ok(Palette { k, size: k, mode: PaletteMode::Special })
            } else {
                Palette::general(k)
            }
        }
    }
}

/// The outcome of one selection pass: the chosen points and, for each
/// interval considered, the cumulative selection after its turn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    /// Selected points, ascending.
    pub points: Vec<usize>,
    /// One entry per interval of the active family, in processing order.
    pub prefixes: Vec<Vec<usize>>,
}

struct SelectionState {
    chosen: Vec<bool>,
    count: usize,
}

impl SelectionState {
    fn new(n: usize) -> Self {
        SelectionState { chosen: vec![false; n + 1], count: 0 }
    }

    /// Counts selected points inside `iv`, stopping once `cap` are seen.
    fn coverage_up_to(&self, iv: &Interval, cap: usize) -> usize {
        let mut have = 0;
        for p in iv.points() {
            if self.chosen[p] {
                have += 1;
                if have >= cap {
                    break;
                }
            }
        }
        have
    }

    /// Marks the largest `missing` unselected points of `iv` as selected.
    fn take_largest(&mut self, iv: &Interval, missing: usize) {
        let mut left = missing;
        for p in iv.points().rev() {
            if left == 0 {
                break;
            }
            if !self.chosen[p] {
                self.chosen[p] = true;
                self.count += 1;
                left -= 1;
            }
        }
        debug_assert_eq!(left, 0, "interval shorter than its requirement");
    }

    fn snapshot(&self) -> Vec<usize> {
        (1..self.chosen.len()).filter(|&p| self.chosen[p]).collect()
    }
}

fn select_impl(active: &IntervalFamily, k: usize, skip_deep_groups: bool) -> Selection {
    let mut state = SelectionState::new(active.n());
    let mut prefixes = Vec::with_capacity(active.len());
    let mut group_right = 0;
    let mut group_index = 0;
    for iv in active.iter() {
        if iv.right() != group_right {
            group_right = iv.right();
            group_index = 0;
        } else {
            group_index += 1;
        }
        // Among intervals sharing a right endpoint only the k shortest can be
        // deficient: after them, coverage of every longer one is already k.
        if !(skip_deep_groups && group_index >= k) {
            let need = iv.len().min(k);
            let have = state.coverage_up_to(iv, need);
            if have < need {
                state.take_largest(iv, need - have);
            }
        }
        prefixes.push(state.snapshot());
    }
    Selection { points: state.snapshot(), prefixes }
}

/// One selection pass over the active family, by the definitional rule:
/// visit intervals in processing order and, whenever an interval holds fewer
/// than `min(|I|, k)` selected points, add its largest unselected points
/// until it does.
pub fn select_points(active: &IntervalFamily, k: usize) -> Selection {
    assert!(k >= 1, "strength k must be at least 1");
    select_impl(active, k, false)
}

/// Same result as [`select_points`], skipping the per-interval coverage probe
/// for all but the k shortest intervals of each right-endpoint group. The two
/// paths are bit-identical; this one avoids most of the probing work.
pub fn select_points_fast(active: &IntervalFamily, k: usize) -> Selection {
    assert!(k >= 1, "strength k must be at least 1");
    select_impl(active, k, true)
}

/// Colors selected points cyclically from step t's block: the i-th point
/// (ascending, from 0) gets `(t-1)*palette_size + (i mod palette_size) + 1`.
pub fn assign_cyclic(
    points: &[usize],
    step: usize,
    palette_size: usize,
) -> Vec<(usize, usize)> {
    assert!(step >= 1 && palette_size >= 1);
    debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
    points
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, (step - 1) * palette_size + (i % palette_size) + 1))
        .collect()
}

/// What the engine did at one step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    /// 1-based step counter.
    pub step: usize,
    /// Points selected this step, ascending.
    pub selected: Vec<usize>,
    /// Cumulative selection after each interval's turn during selection.
    pub prefixes: Vec<Vec<usize>>,
    /// `(point, color)` pairs applied this step, ascending by point.
    pub assignments: Vec<(usize, usize)>,
    /// Active intervals that became satisfied this step.
    pub discarded: IntervalFamily,
    /// Active intervals that remain for the next step.
    pub survivors: IntervalFamily,
}

/// Full record of a run, sufficient to replay it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KColorTrace {
    pub n: usize,
    pub palette: Palette,
    pub steps: Vec<StepRecord>,
}

/// Occurrence counter reused across discard checks.
struct ColorCounter {
    counts: Vec<u32>,
    touched: Vec<usize>,
}

impl ColorCounter {
    fn new(max_color: usize) -> Self {
        ColorCounter { counts: vec![0; max_color + 1], touched: Vec::new() }
    }

    /// Number of positive colors occurring exactly once in `iv`.
    fn unique_in(&mut self, colors: &[usize], iv: &Interval) -> usize {
        for p in iv.points() {
            let c = colors[p - 1];
            if c > 0 {
                if self.counts[c] == 0 {
                    self.touched.push(c);
                }
                self.counts[c] += 1;
            }
        }
        let mut unique = 0;
        for &c in &self.touched {
            if self.counts[c] == 1 {
                unique += 1;
            }
            self.counts[c] = 0;
        }
        self.touched.clear();
        unique
    }
}

/// Runs the engine to completion, producing the final coloring and the full
/// step trace. The step count of a correct run never exceeds
/// `floor(log2 n) + 1`; the loop aborts with an error one beyond that, so a
/// run that stops making progress surfaces as a bug instead of spinning.
pub fn run(
    family: &IntervalFamily,
    palette: &Palette,
) -> Result<(Coloring, KColorTrace), Error> {
    let n = family.n();
    let k = palette.k();
    let limit = n.ilog2() as usize + 2;
    let mut colors = vec![0usize; n];
    let mut steps = Vec::new();
    let mut active = family.clone();
    let mut counter = ColorCounter::new(limit * palette.size());
    let mut step = 1;
    while !active.is_empty() {
        if step > limit {
            return Err(Error::StepLimitExceeded { steps: step, limit });
        }
        let selection = select_points_fast(&active, k);
        let assignments = assign_cyclic(&selection.points, step, palette.size());
        for &(p, c) in &assignments {
            colors[p - 1] = c;
        }
        let mut discarded = Vec::new();
        let mut survivors = Vec::new();
        for iv in active.iter() {
            let need = iv.len().min(k);
            if counter.unique_in(&colors, iv) >= need {
                discarded.push(*iv);
            } else {
                survivors.push(*iv);
            }
        }
        let survivors = IntervalFamily::from_sorted(n, survivors);
        steps.push(StepRecord {
            step,
            selected: selection.points,
            prefixes: selection.prefixes,
            assignments,
            discarded: IntervalFamily::from_sorted(n, discarded),
            survivors: survivors.clone(),
        });
        active = survivors;
        step += 1;
    }
    let trace = KColorTrace { n, palette: *palette, steps };
    Ok((Coloring::new(colors), trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complete::complete_family;

    fn iv(l: usize, r: usize) -> Interval {
        Interval::new(l, r).unwrap()
    }

    fn family(n: usize, pairs: &[(usize, usize)]) -> IntervalFamily {
        IntervalFamily::normalize(n, pairs).unwrap().0
    }

    #[test]
    fn general_palette_sizes() {
        assert_eq!(general_palette_size(1).unwrap(), 2);
        assert_eq!(general_palette_size(2).unwrap(), 4);
        assert_eq!(general_palette_size(3).unwrap(), 7);
        assert!(matches!(general_palette_size(0), Err(Error::InvalidStrength { k: 0 })));
    }

    #[test]
    fn select_fills_single_interval_from_the_right() {
        let fam = family(3, &[(1, 3)]);
        let sel = select_points(&fam, 2);
        assert_eq!(sel.points, vec![2, 3]);
        assert_eq!(sel.prefixes, vec![vec![2, 3]]);
    }

    #[test]
    fn select_reuses_already_selected_points() {
        let fam = family(5, &[(1, 3), (3, 5)]);
        let sel = select_points(&fam, 2);
        // The second interval already holds point 3, so it adds only point 5.
        assert_eq!(sel.points, vec![2, 3, 5]);
        assert_eq!(sel.prefixes, vec![vec![2, 3], vec![2, 3, 5]]);
    }

    #[test]
    fn select_on_complete_family_takes_every_point() {
        // Processing order: (1,1), (2,2), (1,2), (3,3), (2,3), (1,3); the
        // singletons force their points and the rest are already covered.
        let fam = complete_family(3).unwrap();
        let sel = select_points(&fam, 1);
        assert_eq!(sel.points, vec![1, 2, 3]);
        assert_eq!(
            sel.prefixes,
            vec![
                vec![1],
                vec![1, 2],
                vec![1, 2],
                vec![1, 2, 3],
                vec![1, 2, 3],
                vec![1, 2, 3]
            ]
        );
    }

    #[test]
    fn fast_select_matches_definitional_select() {
        for n in 1..=7usize {
            let fam = complete_family(n).unwrap();
            for k in 1..=4 {
                assert_eq!(select_points(&fam, k), select_points_fast(&fam, k));
            }
        }
        let fam = family(9, &[(1, 4), (2, 9), (3, 7), (5, 9), (1, 9), (6, 6)]);
        for k in 1..=4 {
            assert_eq!(select_points(&fam, k), select_points_fast(&fam, k));
        }
    }

    #[test]
    fn cyclic_assignment_wraps_within_a_step_block() {
        let points: Vec<usize> = (1..=15).collect();
        let assigns = assign_cyclic(&points, 1, 4);
        let colors: Vec<usize> = assigns.iter().map(|&(_, c)| c).collect();
        assert_eq!(colors, vec![1, 2, 3, 4, 1, 2, 3, 4, 1, 2, 3, 4, 1, 2, 3]);

        let assigns = assign_cyclic(&[14, 15, 23], 2, 4);
        assert_eq!(assigns, vec![(14, 5), (15, 6), (23, 7)]);

        let assigns = assign_cyclic(&[7], 3, 2);
        assert_eq!(assigns, vec![(7, 5)]);
    }

    #[test]
    fn laminar_free_detector_examples() {
        assert!(is_laminar_free(&family(5, &[(1, 3), (3, 5)]), 2));
        // Nested overlapping intervals are rejected.
        assert!(!is_laminar_free(&complete_family(3).unwrap(), 1));
        // Too small a difference between overlapping members is rejected.
        assert!(!is_laminar_free(&family(5, &[(1, 4), (3, 5)]), 3));
        // Disjoint members impose no constraint.
        assert!(is_laminar_free(&family(4, &[(1, 2), (3, 4)]), 3));
        assert!(is_laminar_free(&IntervalFamily::new(4, vec![]).unwrap(), 2));
    }

    #[test]
    fn palette_choice_rules() {
        let chain = family(5, &[(1, 3), (3, 5)]);
        let p = choose_palette(&chain, 2, PaletteChoice::Auto).unwrap();
        assert_eq!((p.size(), p.mode()), (2, PaletteMode::Special));

        let h6 = complete_family(6).unwrap();
        let p = choose_palette(&h6, 1, PaletteChoice::Auto).unwrap();
        assert_eq!((p.size(), p.mode()), (2, PaletteMode::General));

        // Every interval shorter than k: the small-instance palette wins even
        // though the detector passes vacuously.
        let dots = family(2, &[(1, 1), (2, 2)]);
        let p = choose_palette(&dots, 3, PaletteChoice::Auto).unwrap();
        assert_eq!((p.size(), p.mode()), (1, PaletteMode::SmallInstance));

        assert!(matches!(
            choose_palette(&h6, 1, PaletteChoice::Special),
            Err(Error::NotLaminarFree { k: 1 })
        ));
        let p = choose_palette(&h6, 1, PaletteChoice::General).unwrap();
        assert_eq!((p.size(), p.mode()), (2, PaletteMode::General));

        assert!(matches!(
            choose_palette(&h6, 0, PaletteChoice::Auto),
            Err(Error::InvalidStrength { k: 0 })
        ));
    }

    #[test]
    fn run_on_complete_h6() {
        // Step 1 selects every point and colors them alternately; the six
        // intervals of size >= 4 survive. All of them contain point 4, so
        // step 2 selects just that point and recolors it with a fresh color.
        let fam = complete_family(6).unwrap();
        let palette = Palette::general(1).unwrap();
        let (coloring, trace) = run(&fam, &palette).unwrap();

        assert_eq!(trace.steps.len(), 2);
        let s1 = &trace.steps[0];
        assert_eq!(s1.selected, vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(
            s1.assignments,
            vec![(1, 1), (2, 2), (3, 1), (4, 2), (5, 1), (6, 2)]
        );
        assert_eq!(
            s1.survivors.intervals(),
            &[iv(1, 4), iv(2, 5), iv(1, 5), iv(3, 6), iv(2, 6), iv(1, 6)]
        );
        let s2 = &trace.steps[1];
        assert_eq!(s2.selected, vec![4]);
        assert_eq!(s2.assignments, vec![(4, 3)]);
        assert!(s2.survivors.is_empty());

        assert_eq!(coloring.colors(), &[1, 2, 1, 3, 1, 2]);
        assert_eq!(coloring.distinct_positive().len(), 3);
    }

    #[test]
    fn run_laminar_free_chain_with_special_palette() {
        let fam = family(5, &[(1, 3), (3, 5)]);
        let palette = choose_palette(&fam, 2, PaletteChoice::Special).unwrap();
        let (coloring, trace) = run(&fam, &palette).unwrap();
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(coloring.colors(), &[0, 1, 2, 0, 1]);
        assert_eq!(coloring.distinct_positive().len(), 2);
    }

    #[test]
    fn run_small_intervals_with_general_palette() {
        let fam = family(2, &[(1, 1), (2, 2)]);
        let palette = Palette::general(3).unwrap();
        let (coloring, trace) = run(&fam, &palette).unwrap();
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(coloring.colors(), &[1, 2]);
    }

    #[test]
    fn run_small_intervals_with_auto_palette_uses_one_color() {
        let fam = family(2, &[(1, 1), (2, 2)]);
        let palette = choose_palette(&fam, 3, PaletteChoice::Auto).unwrap();
        let (coloring, trace) = run(&fam, &palette).unwrap();
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(coloring.colors(), &[1, 1]);
    }

    #[test]
    fn run_empty_family_does_nothing() {
        let fam = IntervalFamily::new(4, vec![]).unwrap();
        let palette = Palette::general(2).unwrap();
        let (coloring, trace) = run(&fam, &palette).unwrap();
        assert_eq!(coloring.colors(), &[0, 0, 0, 0]);
        assert!(trace.steps.is_empty());
    }

    #[test]
    fn every_run_step_fits_its_color_block() {
        let fam = complete_family(9).unwrap();
        for k in 1..=3 {
            let palette = Palette::general(k).unwrap();
            let (_, trace) = run(&fam, &palette).unwrap();
            for rec in &trace.steps {
                let lo = (rec.step - 1) * palette.size() + 1;
                let hi = rec.step * palette.size();
                assert!(rec
                    .assignments
                    .iter()
                    .all(|&(_, c)| c >= lo && c <= hi));
            }
        }
    }
}

//! Independent auditing of engine traces.
//!
//! [`audit`] replays a trace from scratch — recomputing selections with the
//! definitional (unoptimized) rule, reassigning colors, and re-deciding
//! discards straight from the coloring requirement — and checks the
//! structural invariants the engine's correctness argument rests on. The
//! engine and the auditor share no shortcut code paths, so agreement between
//! them is meaningful evidence.

use crate::engine::{assign_cyclic, select_points, KColorTrace};
use crate::model::{Coloring, Interval, IntervalFamily};
use std::error;
use std::fmt;

/// A broken trace invariant. `step` is 1-based; 0 marks whole-trace rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub step: usize,
    /// Stable rule identifier, e.g. `"selection-coverage"`.
    pub rule: &'static str,
    pub detail: String,
}

impl Violation {
    fn new(step: usize, rule: &'static str, detail: String) -> Self {
        Violation { step, rule, detail }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.step == 0 {
            write!(f, "trace violates {}: {}", self.rule, self.detail)
        } else {
            write!(f, "step {} violates {}: {}", self.step, self.rule, self.detail)
        }
    }
}

impl error::Error for Violation {}

/// Number of selected points falling inside `iv`; `selected` is ascending.
fn coverage(iv: &Interval, selected: &[usize]) -> usize {
    let lo = selected.partition_point(|&p| p < iv.left());
    let hi = selected.partition_point(|&p| p <= iv.right());
    hi - lo
}

/// True when at least two pairwise-disjoint members of `active` are strictly
/// contained in `iv`.
fn has_disjoint_nested_pair(iv: &Interval, active: &IntervalFamily) -> bool {
    let mut nested = active.iter().filter(|j| iv.strictly_contains(j));
    // Members arrive in processing order, so the first nested one has the
    // smallest right endpoint; a disjoint pair exists iff some other nested
    // member starts past it.
    match nested.next() {
        Some(first) => nested.any(|j| j.left() > first.right()),
        None => false,
    }
}

/// Replays the trace against the original family and checks every invariant.
/// Returns the first violation found, if any.
pub fn audit(
    family: &IntervalFamily,
    trace: &KColorTrace,
    final_coloring: &Coloring,
) -> Result<(), Violation> {
    let n = family.n();
    let k = trace.palette.k();
    let c = trace.palette.size();
    let delta = trace.steps.len();

    if trace.n != n || final_coloring.n() != n {
        return Err(Violation::new(
            0,
            "ground-set-mismatch",
            format!(
                "family has {n} points, trace claims {}, coloring has {}",
                trace.n,
                final_coloring.n()
            ),
        ));
    }
    let step_bound = n.ilog2() as usize + 1;
    if delta > step_bound {
        return Err(Violation::new(
            0,
            "step-bound",
            format!("{delta} steps exceed the bound {step_bound} for {n} points"),
        ));
    }

    let mut colors = vec![0usize; n];
    let mut active = family.clone();
    let mut all_discarded: Vec<Interval> = Vec::new();

    for (idx, rec) in trace.steps.iter().enumerate() {
        let t = idx + 1;
        let fail = |rule, detail| Err(Violation::new(t, rule, detail));
        if rec.step != t {
            return fail("step-numbering", format!("record numbered {}", rec.step));
        }
        if active.is_empty() {
            return fail("empty-step", "no interval left to process".into());
        }

        // Selection must equal the definitional rule's output exactly,
        // prefix history included.
        let selection = select_points(&active, k);
        if selection.points != rec.selected || selection.prefixes != rec.prefixes {
            return fail(
                "selection-mismatch",
                format!("recorded {:?}, recomputed {:?}", rec.selected, selection.points),
            );
        }

        // Colors must be the cyclic assignment over this step's block.
        let assignments = assign_cyclic(&rec.selected, t, c);
        if assignments != rec.assignments {
            return fail("assignment-mismatch", format!("recorded {:?}", rec.assignments));
        }
        let lo = (t - 1) * c + 1;
        if rec
            .assignments
            .iter()
            .any(|&(p, col)| p < 1 || p > n || col < lo || col >= lo + c)
        {
            return fail(
                "color-block-range",
                format!("expected points 1..={n} and colors {lo}..={}", lo + c - 1),
            );
        }

        // Any step that leaves survivors selects enough points to exhaust
        // its block, so only the last step may leave colors unused.
        if t < delta {
            let mut seen = vec![false; c];
            for &(_, col) in &rec.assignments {
                seen[col - lo] = true;
            }
            if let Some(missing) = seen.iter().position(|&b| !b) {
                return fail(
                    "unused-palette-midrun",
                    format!("color {} unused before the final step", lo + missing),
                );
            }
        }

        for &(p, col) in &rec.assignments {
            colors[p - 1] = col;
        }
        let current = Coloring::new(colors.clone());

        // Every active interval ends selection with enough points.
        for iv in active.iter() {
            let need = iv.len().min(k);
            if coverage(iv, &rec.selected) < need {
                return fail(
                    "selection-coverage",
                    format!("{iv} holds fewer than {need} selected points"),
                );
            }
        }

        // Discards must be exactly the satisfied intervals, and discarded +
        // survivors must repartition the active family.
        if rec.discarded.len() + rec.survivors.len() != active.len() {
            return fail(
                "discard-partition",
                format!(
                    "{} discarded + {} survivors != {} active",
                    rec.discarded.len(),
                    rec.survivors.len(),
                    active.len()
                ),
            );
        }
        for iv in active.iter() {
            let done = current.is_k_colored(iv, k);
            if done != rec.discarded.contains(iv) || done == rec.survivors.contains(iv) {
                return fail("discard-mismatch", format!("{iv} misclassified"));
            }
        }

        // An interval covering at most 4k-2 selected points always ends up
        // satisfied: its selected points are few enough to stay unique.
        for iv in active.iter() {
            if coverage(iv, &rec.selected) <= 4 * k - 2 && !rec.discarded.contains(iv) {
                return fail("low-coverage-discard", format!("{iv} survived"));
            }
        }

        // Surviving intervals are never shorter than k.
        for iv in rec.survivors.iter() {
            if iv.len() < k {
                return fail("short-survivor", format!("{iv} has fewer than {k} points"));
            }
        }

        // Discarding an interval discards everything nested inside it.
        for iv in rec.discarded.iter() {
            for j in active.iter() {
                if iv.strictly_contains(j) && !rec.discarded.contains(j) {
                    return fail(
                        "discard-closure",
                        format!("{iv} discarded but nested {j} survived"),
                    );
                }
            }
        }

        // An interval with no active interval strictly inside it covers at
        // most 2k-1 selected points — true for every interval of the
        // original family, active or not.
        for iv in family.iter() {
            if !active.iter().any(|j| iv.strictly_contains(j))
                && coverage(iv, &rec.selected) > 2 * k - 1
            {
                return fail(
                    "no-nest-selection-cap",
                    format!("{iv} covers more than {} selected points", 2 * k - 1),
                );
            }
        }

        // Every survivor strictly contains two disjoint members of the
        // family it just survived — the nesting that bounds the step count.
        for iv in rec.survivors.iter() {
            if !has_disjoint_nested_pair(iv, &active) {
                return fail(
                    "survivor-nesting",
                    format!("{iv} lacks two disjoint nested active members"),
                );
            }
        }

        // Later steps never break an interval discarded earlier: each step
        // recolors with colors no earlier step used.
        all_discarded.extend(rec.discarded.iter().copied());
        for iv in &all_discarded {
            if !current.is_k_colored(iv, k) {
                return fail(
                    "discard-stability",
                    format!("{iv} no longer satisfied after recoloring"),
                );
            }
        }

        active = rec.survivors.clone();
    }

    if !active.is_empty() {
        return Err(Violation::new(
            0,
            "nonempty-final-survivors",
            format!("{} intervals never satisfied", active.len()),
        ));
    }

    let replayed = Coloring::new(colors);
    if replayed != *final_coloring {
        return Err(Violation::new(
            0,
            "final-coloring-mismatch",
            "replayed assignments disagree with the recorded coloring".into(),
        ));
    }

    if final_coloring.distinct_positive().len() > delta * c {
        return Err(Violation::new(
            0,
            "color-budget",
            format!(
                "{} distinct colors exceed {delta} steps x {c} per step",
                final_coloring.distinct_positive().len()
            ),
        ));
    }

    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complete::complete_family;
    use crate::engine::{choose_palette, run, Palette, PaletteChoice};

    fn family(n: usize, pairs: &[(usize, usize)]) -> IntervalFamily {
        IntervalFamily::normalize(n, pairs).unwrap().0
    }

    #[test]
    fn audit_accepts_engine_traces() {
        let cases: Vec<(IntervalFamily, usize, PaletteChoice)> = vec![
            (complete_family(6).unwrap(), 1, PaletteChoice::General),
            (complete_family(9).unwrap(), 2, PaletteChoice::General),
            (complete_family(16).unwrap(), 3, PaletteChoice::General),
            (family(5, &[(1, 3), (3, 5)]), 2, PaletteChoice::Special),
            (family(2, &[(1, 1), (2, 2)]), 3, PaletteChoice::Auto),
            (family(9, &[(1, 4), (2, 9), (3, 7), (5, 9), (6, 6)]), 2, PaletteChoice::General),
            (IntervalFamily::new(4, vec![]).unwrap(), 2, PaletteChoice::General),
        ];
        for (fam, k, choice) in cases {
            let palette = choose_palette(&fam, k, choice).unwrap();
            let (coloring, trace) = run(&fam, &palette).unwrap();
            audit(&fam, &trace, &coloring).unwrap_or_else(|v| {
                panic!("audit rejected a genuine trace (k={k}): {v}")
            });
        }
    }

    #[test]
    fn audit_rejects_tampered_selection() {
        let fam = complete_family(6).unwrap();
        let palette = Palette::general(1).unwrap();
        let (coloring, mut trace) = run(&fam, &palette).unwrap();
        trace.steps[1].selected = vec![4, 6];
        let violation = audit(&fam, &trace, &coloring).unwrap_err();
        assert_eq!(violation.rule, "selection-mismatch");
        assert_eq!(violation.step, 2);
    }

    #[test]
    fn audit_rejects_tampered_assignments() {
        let fam = complete_family(6).unwrap();
        let palette = Palette::general(1).unwrap();
        let (coloring, mut trace) = run(&fam, &palette).unwrap();
        trace.steps[0].assignments[3] = (4, 1);
        let violation = audit(&fam, &trace, &coloring).unwrap_err();
        assert_eq!(violation.rule, "assignment-mismatch");
    }

    #[test]
    fn audit_rejects_misclassified_discards() {
        let fam = complete_family(6).unwrap();
        let palette = Palette::general(1).unwrap();
        let (coloring, mut trace) = run(&fam, &palette).unwrap();
        // Pretend the last surviving interval was discarded a step early.
        let survivors = trace.steps[0].survivors.intervals().to_vec();
        let mut discarded = trace.steps[0].discarded.intervals().to_vec();
        discarded.extend_from_slice(&survivors[survivors.len() - 1..]);
        discarded.sort();
        trace.steps[0].discarded = IntervalFamily::new(6, discarded).unwrap();
        trace.steps[0].survivors =
            IntervalFamily::new(6, survivors[..survivors.len() - 1].to_vec()).unwrap();
        let violation = audit(&fam, &trace, &coloring).unwrap_err();
        assert_eq!(violation.rule, "discard-mismatch");
    }

    #[test]
    fn audit_rejects_tampered_final_coloring() {
        let fam = complete_family(6).unwrap();
        let palette = Palette::general(1).unwrap();
        let (coloring, trace) = run(&fam, &palette).unwrap();
        let mut flipped = coloring.colors().to_vec();
        flipped[3] = 1;
        let violation = audit(&fam, &trace, &Coloring::new(flipped)).unwrap_err();
        assert_eq!(violation.rule, "final-coloring-mismatch");
    }

    #[test]
    fn audit_rejects_renumbered_steps() {
        let fam = complete_family(6).unwrap();
        let palette = Palette::general(1).unwrap();
        let (coloring, mut trace) = run(&fam, &palette).unwrap();
        trace.steps[1].step = 7;
        let violation = audit(&fam, &trace, &coloring).unwrap_err();
        assert_eq!(violation.rule, "step-numbering");
    }

    #[test]
    fn audit_enforces_the_step_bound() {
        let fam = complete_family(8).unwrap();
        let palette = Palette::general(2).unwrap();
        let (coloring, trace) = run(&fam, &palette).unwrap();
        audit(&fam, &trace, &coloring).unwrap();
        assert!(trace.steps.len() <= 8usize.ilog2() as usize + 1);
    }
}

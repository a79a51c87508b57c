//! Structured text export of an engine trace, one record per step, so the
//! per-step guarantees can be checked by external scripts. The schema is
//! documented in the repository README.

use kscf_core::KColorTrace;
use std::fmt::Write as _;

/// Renders the trace document.
pub fn render_trace(trace: &KColorTrace) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n {}", trace.n);
    let _ = writeln!(out, "k {}", trace.palette.k());
    let _ = writeln!(out, "mode {}", trace.palette.mode().as_str());
    let _ = writeln!(out, "palette-size {}", trace.palette.size());
    let _ = writeln!(out, "steps {}", trace.steps.len());
    for record in &trace.steps {
        let _ = writeln!(out);
        let _ = writeln!(out, "step {}", record.step);
        let mut points = String::from("points");
        for p in &record.selected {
            let _ = write!(points, " {p}");
        }
        let _ = writeln!(out, "{points}");
        for (point, color) in &record.assignments {
            let _ = writeln!(out, "assign {point} {color}");
        }
        for iv in record.discarded.iter() {
            let _ = writeln!(out, "discard {} {}", iv.left(), iv.right());
        }
        for iv in record.survivors.iter() {
            let _ = writeln!(out, "survive {} {}", iv.left(), iv.right());
        }
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "end");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use kscf_core::{complete_family, run, Palette};

    #[test]
    fn renders_the_six_point_run() {
        let family = complete_family(6).unwrap();
        let (_, trace) = run(&family, &Palette::general(1).unwrap()).unwrap();
        let text = render_trace(&trace);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            &lines[..5],
            &["n 6", "k 1", "mode general", "palette-size 2", "steps 2"]
        );
        assert!(lines.contains(&"step 1"));
        assert!(lines.contains(&"points 1 2 3 4 5 6"));
        assert!(lines.contains(&"assign 1 1"));
        assert!(lines.contains(&"step 2"));
        assert!(lines.contains(&"points 4"));
        assert!(lines.contains(&"assign 4 3"));
        assert!(lines.contains(&"survive 1 6"));
        assert_eq!(lines.last(), Some(&"end"));
        // Step 2 discards everything, so it lists no survivors.
        let step2 = text.split("step 2").nth(1).unwrap();
        assert!(!step2.contains("survive"));
        assert_eq!(step2.matches("discard").count(), 6);
    }

    #[test]
    fn empty_run_renders_headers_only() {
        let family = kscf_core::IntervalFamily::new(3, vec![]).unwrap();
        let (_, trace) = run(&family, &Palette::general(2).unwrap()).unwrap();
        let text = render_trace(&trace);
        assert_eq!(text, "n 3\nk 2\nmode general\npalette-size 4\nsteps 0\n\nend\n");
    }
}

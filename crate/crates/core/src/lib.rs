//! k-strong conflict-free coloring of points on a line with respect to a
//! family of intervals.
//!
//! A coloring assigns every point 1..=n a color, where 0 means "uncolored".
//! It is valid for strength k when every interval of the family contains at
//! least `min(|I|, k)` colors that occur exactly once inside it. This crate
//! provides:
//!
//! - [`model`] — intervals, families in processing order, colorings, and
//!   unique-color accounting;
//! - [`engine`] — the iterative coloring algorithm: select points, assign a
//!   fresh cyclic color block, discard satisfied intervals, repeat; plus
//!   palette selection including the k-color special case for laminar-free
//!   families;
//! - [`complete`] — a direct divide-and-conquer coloring for the family of
//!   all intervals over n points;
//! - [`analysis`] — a verifier, an exhaustive optimality oracle for small
//!   instances, lower-bound calculators, and per-instance ratio reports;
//! - [`audit`] — an independent replayer that checks every recorded step of
//!   an engine trace against the invariants the correctness argument uses.
//!
//! ```
//! use kscf_core::{choose_palette, run, verify, IntervalFamily, PaletteChoice};
//!
//! let (family, _dups) = IntervalFamily::normalize(6, &[(1, 4), (3, 6)]).unwrap();
//! let palette = choose_palette(&family, 2, PaletteChoice::Auto).unwrap();
//! let (coloring, trace) = run(&family, &palette).unwrap();
//! assert!(verify(&family, &coloring, 2).unwrap().is_valid());
//! assert!(!trace.steps.is_empty());
//! ```

pub mod analysis;
pub mod audit;
pub mod complete;
pub mod engine;
pub mod error;
pub mod model;

pub use analysis::{
    combine_lower_bounds, lb_complete, lb_dp, lb_from_steps, lb_from_steps_strong, oracle_chi,
    ratio_guarantee, report, verify, BoundReport, Fraction, OptResult, OracleOutcome, Semantics,
    VerifyReport, ORACLE_SOFT_LIMIT,
};
pub use audit::{audit, Violation};
pub use complete::{
    color_complete, complete_color_budget, complete_family, BlockPartition, ColorSet,
};
pub use engine::{
    assign_cyclic, choose_palette, general_palette_size, is_laminar_free, run, select_points,
    select_points_fast, KColorTrace, Palette, PaletteChoice, PaletteMode, Selection, StepRecord,
};
pub use error::Error;
pub use model::{Coloring, Interval, IntervalFamily, KColoredStatus, Subfamilies};

use clap::{Parser, Subcommand, ValueEnum};
use kscf_cli::format::{emit_coloring, emit_instance, parse_coloring, parse_instance};
use kscf_cli::gen::{gen_instance, GenSpec, Shape};
use kscf_cli::trace_out::render_trace;
use kscf_core::{
    choose_palette, color_complete, complete_color_budget, lb_complete, lb_dp, oracle_chi,
    ratio_guarantee, report, run, verify, Fraction, IntervalFamily, OracleOutcome, PaletteChoice,
    Semantics,
};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::{fs, io};

/// k-strong conflict-free coloring of points under interval families.
#[derive(Parser)]
#[command(name = "kscf", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Cheapest palette the instance provably supports.
    Auto,
    /// Unconditional palette of 2k + ceil(k/2) - 1 colors per step.
    General,
    /// k colors per step; rejected unless the overlap-chain detector accepts.
    Special,
}

impl From<Mode> for PaletteChoice {
    fn from(mode: Mode) -> Self {
        match mode {
            Mode::Auto => PaletteChoice::Auto,
            Mode::General => PaletteChoice::General,
            Mode::Special => PaletteChoice::Special,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Random,
    Nested,
    LaminarFree,
    Complete,
}

#[derive(Subcommand)]
enum Command {
    /// Color an instance and print the coloring.
    Color {
        /// Instance file; "-" or absent reads standard input.
        instance: Option<PathBuf>,
        /// Strength: colors that must occur uniquely in each interval.
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        /// Write the step-by-step trace to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Check a coloring against an instance.
    Verify {
        /// Instance file; "-" or absent reads standard input.
        instance: Option<PathBuf>,
        #[arg(long)]
        k: usize,
        /// Coloring file; "-" reads standard input.
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Color the family of all intervals over n points.
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Exhaustively compute the optimal color count and a witness.
    Oracle {
        /// Instance file; "-" or absent reads standard input.
        instance: Option<PathBuf>,
        #[arg(long)]
        k: usize,
        /// Give up once this many colors is not enough (exit code 1).
        #[arg(long)]
        max_colors: Option<usize>,
        /// Require every point to receive a positive color.
        #[arg(long)]
        total: bool,
    },
    /// Print lower bounds and the a-priori ratio guarantee.
    Bound {
        /// Instance file; "-" or absent reads standard input.
        instance: Option<PathBuf>,
        #[arg(long)]
        k: usize,
    },
    /// Run the engine and report every applicable bound and ratio.
    Report {
        /// Instance file; "-" or absent reads standard input.
        instance: Option<PathBuf>,
        #[arg(long)]
        k: usize,
        /// Run the exact oracle only when the ground set has at most this
        /// many points.
        #[arg(long, default_value_t = 9)]
        oracle_limit: usize,
    },
    /// Generate a seeded random instance and print it.
    Gen {
        #[arg(long)]
        n: usize,
        /// Number of intervals to draw (before duplicate removal).
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        shape: ShapeArg,
        /// Chain strength; required for --shape laminar-free.
        #[arg(long, required_if_eq("shape", "laminar-free"))]
        k: Option<usize>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match dispatch(Cli::parse().command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("{message}");
            ExitCode::from(2)
        }
    }
}

fn is_stdin(path: &Option<PathBuf>) -> bool {
    match path {
        Some(p) => p.as_os_str() == "-",
        None => true,
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, String> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)
            .map_err(|e| format!("input error: cannot read {}: {e}", p.display())),
        _ => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| format!("input error: cannot read standard input: {e}"))?;
            Ok(text)
        }
    }
}

fn load_instance(path: &Option<PathBuf>) -> Result<IntervalFamily, String> {
    let text = read_input(path)?;
    let (family, duplicates) =
        parse_instance(&text).map_err(|e| format!("input error: {e}"))?;
    if duplicates > 0 {
        let plural = if duplicates == 1 { "" } else { "s" };
        eprintln!("{duplicates} duplicate{plural} removed");
    }
    Ok(family)
}

fn ratio_line(label: &str, ratio: &Fraction) -> String {
    format!("{label} {ratio} ({})", ratio.decimal(2))
}

fn dispatch(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Color { instance, k, mode, trace } => {
            let family = load_instance(&instance)?;
            let palette =
                choose_palette(&family, k, mode.into()).map_err(|e| format!("input error: {e}"))?;
            let (coloring, record) = run(&family, &palette).map_err(|e| e.to_string())?;
            if let Some(path) = trace {
                fs::write(&path, render_trace(&record))
                    .map_err(|e| format!("input error: cannot write {}: {e}", path.display()))?;
            }
            eprintln!(
                "palette {} (size {}); steps {}; colors {}",
                palette.mode().as_str(),
                palette.size(),
                record.steps.len(),
                coloring.distinct_positive().len()
            );
            print!("{}", emit_coloring(&coloring));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { instance, k, coloring } => {
            let coloring_arg = Some(coloring);
            if is_stdin(&instance) && is_stdin(&coloring_arg) {
                return Err(
                    "input error: the instance and the coloring cannot both come from standard input"
                        .into(),
                );
            }
            let family = load_instance(&instance)?;
            let text = read_input(&coloring_arg)?;
            let colors =
                parse_coloring(&text, family.n()).map_err(|e| format!("input error: {e}"))?;
            let outcome = verify(&family, &colors, k).map_err(|e| format!("input error: {e}"))?;
            if outcome.is_valid() {
                println!("VALID");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("INVALID");
                for status in outcome.failures() {
                    println!(
                        "fail {} {} unique {} required {}",
                        status.interval.left(),
                        status.interval.right(),
                        status.unique_colors.len(),
                        status.required
                    );
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::Complete { n, k } => {
            let coloring = color_complete(n, k).map_err(|e| format!("input error: {e}"))?;
            let budget = complete_color_budget(n, k).expect("same preconditions as coloring");
            eprintln!(
                "colors {} (budget {budget})",
                coloring.distinct_positive().len()
            );
            print!("{}", emit_coloring(&coloring));
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { instance, k, max_colors, total } => {
            let family = load_instance(&instance)?;
            let semantics = if total { Semantics::Total } else { Semantics::Partial };
            let outcome = oracle_chi(&family, k, semantics, max_colors)
                .map_err(|e| format!("input error: {e}"))?;
            match outcome {
                OracleOutcome::Optimal(res) => {
                    println!("chi-star {}", res.chi_star);
                    print!("{}", emit_coloring(&res.witness));
                    Ok(ExitCode::SUCCESS)
                }
                OracleOutcome::CapExceeded { max_colors } => {
                    println!("cap-exceeded {max_colors}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Bound { instance, k } => {
            let family = load_instance(&instance)?;
            if k == 0 {
                return Err("input error: strength k must be at least 1".into());
            }
            println!("lb-dp {}", lb_dp(&family, k));
            let n = family.n();
            if family.len() == n * (n + 1) / 2 {
                println!("lb-complete {}", lb_complete(n, k));
            }
            let guarantee = ratio_guarantee(k).expect("k was checked to be positive");
            println!("{}", ratio_line("ratio-guarantee", &guarantee));
            Ok(ExitCode::SUCCESS)
        }
        Command::Report { instance, k, oracle_limit } => {
            let family = load_instance(&instance)?;
            let bounds = report(&family, k, PaletteChoice::Auto, oracle_limit)
                .map_err(|e| format!("input error: {e}"))?;
            println!("palette {}", bounds.palette.mode().as_str());
            println!("palette-size {}", bounds.palette.size());
            println!("steps {}", bounds.steps);
            println!("colors {}", bounds.algorithm_colors);
            println!("lb-dp {}", bounds.lb_dp);
            if let Some(lb) = bounds.lb_complete {
                println!("lb-complete {lb}");
            }
            println!("step-floor {}", bounds.step_floor);
            println!("step-floor-strong {}", bounds.step_floor_strong);
            println!("{}", ratio_line("ratio-guarantee", &bounds.ratio_guarantee));
            match &bounds.chi_partial {
                Some(OracleOutcome::Optimal(res)) => println!("chi-partial {}", res.chi_star),
                Some(OracleOutcome::CapExceeded { .. }) => unreachable!("report never caps"),
                None => eprintln!(
                    "oracle skipped: {} points exceed the limit of {oracle_limit}",
                    family.n()
                ),
            }
            if let Some(OracleOutcome::Optimal(res)) = &bounds.chi_total {
                println!("chi-total {}", res.chi_star);
            }
            if let Some(ratio) = &bounds.ratio_partial {
                println!("{}", ratio_line("ratio-partial", ratio));
            }
            if let Some(ratio) = &bounds.ratio_total {
                println!("{}", ratio_line("ratio-total", ratio));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen { n, m, seed, shape, k } => {
            let shape = match shape {
                ShapeArg::Random => Shape::Random,
                ShapeArg::Nested => Shape::Nested,
                ShapeArg::LaminarFree => {
                    Shape::LaminarFree { k: k.expect("clap enforces --k for laminar-free") }
                }
                ShapeArg::Complete => Shape::Complete,
            };
            let family = gen_instance(&GenSpec { n, m, seed, shape })
                .map_err(|e| format!("input error: {e}"))?;
            print!("{}", emit_instance(&family));
            Ok(ExitCode::SUCCESS)
        }
    }
}

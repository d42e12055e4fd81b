//! Command-line surface over the library: load algebras, functionals,
//! configurations, and block matrices from JSON files; classify maps, build
//! powers, lift and recover; run the property suites. Every command emits a
//! check report — human-readable by default, newline-delimited records under
//! `--format records` — and exits 0 only when every case passes. Exit 2
//! marks malformed inputs, exit 1 a failed check.

mod report;
mod suites;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pqhom::io::{self, FunctionalRecord, SuperMatrixValue};
use pqhom::scalar::Scalar;
use pqhom::superlinalg::{berezinian_block, char_function_series, hankel_recurrence_check};
use pqhom::{
    ber_via_hankel, br_lift, char_series, classify, liouville_check, pq_symmetric_power,
    recover_configuration, symmetric_power, CommutativeAlgebra, Element, HomType, LinearMap,
    Rational, SuperError, SuperMatrix,
};

use report::{digest, CheckReport};

#[derive(Parser)]
#[command(
    name = "pqhom",
    version,
    about = "Exact classification of counting and signed-counting functionals \
             on finite-dimensional commutative algebras, with block-matrix \
             Berezinian checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for randomized suite cases; printed in every report
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Report rendering on stdout
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Also write a file: the produced object for object-building commands
    /// (series, powers, lifts, recovered configurations), otherwise the
    /// records rendering of the report
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the minimal homomorphism type of a functional
    Classify {
        /// Functional record (JSON)
        #[arg(long)]
        functional: PathBuf,
        /// Algebra record resolving the functional's source reference
        #[arg(long)]
        algebra: Option<PathBuf>,
        /// Largest positive part searched
        #[arg(long, default_value_t = 4)]
        max_p: usize,
        /// Largest negative part searched
        #[arg(long, default_value_t = 4)]
        max_q: usize,
    },
    /// Characteristic series of a functional at an element
    CharSeries {
        #[arg(long)]
        functional: PathBuf,
        #[arg(long)]
        algebra: Option<PathBuf>,
        /// Element coordinates (JSON array of rationals)
        #[arg(long)]
        element: PathBuf,
        /// Truncation order of the series
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Lift a counting functional to a homomorphism of a symmetric power
    BrLift {
        #[arg(long)]
        functional: PathBuf,
        #[arg(long)]
        algebra: Option<PathBuf>,
        /// The power, which is also the count the functional must have
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Build a symmetric power of an algebra
    SymPower {
        #[arg(long)]
        algebra: PathBuf,
        /// The power
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Build a signed symmetric power of an algebra
    SymPqPower {
        #[arg(long)]
        algebra: PathBuf,
        /// Even tensor factors
        #[arg(long, default_value_t = 1)]
        p: usize,
        /// Odd (dual) tensor factors
        #[arg(long, default_value_t = 1)]
        q: usize,
    },
    /// Recover the point configuration inducing a functional
    Recover {
        #[arg(long)]
        functional: PathBuf,
        #[arg(long)]
        algebra: Option<PathBuf>,
    },
    /// Block-matrix checks over rational or Grassmann coefficients
    Super {
        #[command(subcommand)]
        check: SuperCheck,
    },
    /// Run a named property suite, or "all"
    Suite {
        /// One of: newton, homs, lift, classify, closure, series, super,
        /// bridge, geometry, all
        name: String,
    },
}

#[derive(Subcommand)]
enum SuperCheck {
    /// Berezinian by the block formula and by the Hankel minor ratio
    Ber {
        /// Block matrix record (JSON)
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Coefficient sequence of the characteristic function, by two routes
    Traces {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Vanishing window of the shifted Hankel determinants
    Hankel {
        #[arg(long)]
        matrix: PathBuf,
        /// Top window index (default: four past the first required zero)
        #[arg(long)]
        order: Option<usize>,
    },
    /// Coefficientwise Liouville identity (rational matrices)
    Liouville {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
}

struct Outcome {
    report: CheckReport,
    emitted: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match dispatch(&cli.command, cli.seed) {
        Ok(outcome) => outcome,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    let rendered = match cli.format {
        Format::Human => outcome.report.render_human(),
        Format::Records => outcome.report.render_records(),
    };
    print!("{rendered}");
    if let Some(path) = &cli.out {
        let contents = outcome
            .emitted
            .unwrap_or_else(|| outcome.report.render_records());
        if let Err(e) = fs::write(path, contents) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if outcome.report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

// Errors returned here mean the input was malformed: exit 2. Failed checks
// are recorded in the report instead and exit 1 through main.
fn dispatch(command: &Command, seed: u64) -> Result<Outcome, String> {
    match command {
        Command::Classify { functional, algebra, max_p, max_q } => {
            let (map, source, dg) = load_functional(functional, algebra)?;
            let mut report = CheckReport::new("classify", seed);
            let (description, result) = match classify(&map, &source, *max_p, *max_q) {
                Ok(HomType::NHomomorphism { n }) => (format!("n-homomorphism ({n})"), Ok(())),
                Ok(HomType::PqHomomorphism { p, q }) => {
                    (format!("pq-homomorphism ({p},{q})"), Ok(()))
                }
                Ok(HomType::NotClassified { witness }) => (
                    format!("not classified within the {max_p}|{max_q} search box"),
                    Err(witness
                        .map(|w| format!("{w:?}"))
                        .unwrap_or_else(|| "search box exhausted".into())),
                ),
                Err(e) => ("classification did not finish".into(), Err(e.to_string())),
            };
            report.push("classify/000", description, dg, result);
            Ok(Outcome { report: report.finish(), emitted: None })
        }

        Command::CharSeries { functional, algebra, element, order } => {
            let (map, source, _) = load_functional(functional, algebra)?;
            let e_text = read_file(element)?;
            let coords: Vec<Rational> = serde_json::from_str(&e_text)
                .map_err(|e| format!("element file: {e}"))?;
            if coords.len() != source.dim() {
                return Err(format!(
                    "element has {} coordinates but the algebra has dimension {}",
                    coords.len(),
                    source.dim()
                ));
            }
            let dg = digest(&[&read_file(functional)?, &e_text]);
            let series = char_series(&map, &source, &Element::new(coords), *order);
            let shown: Vec<String> =
                series.coefficients().iter().map(|c| c.to_string()).collect();
            let mut report = CheckReport::new("char-series", seed);
            report.push(
                "char-series/000",
                format!("coefficients to order {order}: {}", shown.join(", ")),
                dg,
                Ok(()),
            );
            let emitted = pretty_json(&series.coefficients().to_vec());
            Ok(Outcome { report: report.finish(), emitted: Some(emitted) })
        }

        Command::BrLift { functional, algebra, order } => {
            let (map, source, dg) = load_functional(functional, algebra)?;
            let power = symmetric_power(&source, *order).map_err(|e| e.to_string())?;
            let mut report = CheckReport::new("br-lift", seed);
            let mut emitted = None;
            match br_lift(&map, &source, &CommutativeAlgebra::ground(), &power) {
                Ok(lifted) => {
                    report.push(
                        "br-lift/000",
                        format!(
                            "lifted to the symmetric power of order {order} (dimension {})",
                            power.dim()
                        ),
                        dg.clone(),
                        Ok(()),
                    );
                    let multiplicative = lifted.is_homomorphism(power.algebra(), &CommutativeAlgebra::ground());
                    report.push(
                        "br-lift/001",
                        "the lifted functional is an algebra homomorphism",
                        dg,
                        if multiplicative { Ok(()) } else { Err("products are not preserved".into()) },
                    );
                    let record = FunctionalRecord::functional(
                        power.algebra(),
                        lifted.matrix().row(0).to_vec(),
                    );
                    emitted = Some(io::render_functional(&record) + "\n");
                }
                Err(e) => report.push(
                    "br-lift/000",
                    format!("lift to the symmetric power of order {order}"),
                    dg,
                    Err(e.to_string()),
                ),
            }
            Ok(Outcome { report: report.finish(), emitted })
        }

        Command::SymPower { algebra, order } => {
            let (a_text, base) = load_algebra(algebra)?;
            let power = symmetric_power(&base, *order).map_err(|e| e.to_string())?;
            let mut report = CheckReport::new("sym-power", seed);
            report.push(
                "sym-power/000",
                format!(
                    "symmetric power of order {order}: dimension {} over a base of dimension {}",
                    power.dim(),
                    base.dim()
                ),
                digest(&[&a_text, &order.to_string()]),
                Ok(()),
            );
            let emitted = io::render_algebra(power.algebra()) + "\n";
            Ok(Outcome { report: report.finish(), emitted: Some(emitted) })
        }

        Command::SymPqPower { algebra, p, q } => {
            let (a_text, base) = load_algebra(algebra)?;
            let power = pq_symmetric_power(&base, *p, *q).map_err(|e| e.to_string())?;
            let mut report = CheckReport::new("sym-pq-power", seed);
            report.push(
                "sym-pq-power/000",
                format!(
                    "signed power {p}|{q}: dimension {} over a base of dimension {}",
                    power.dim(),
                    base.dim()
                ),
                digest(&[&a_text, &format!("{p}|{q}")]),
                Ok(()),
            );
            let emitted = io::render_algebra(power.algebra()) + "\n";
            Ok(Outcome { report: report.finish(), emitted: Some(emitted) })
        }

        Command::Recover { functional, algebra } => {
            let (map, source, dg) = load_functional(functional, algebra)?;
            if !source.is_function_form() {
                return Err("configuration recovery needs a function algebra".into());
            }
            let mut report = CheckReport::new("recover", seed);
            let mut emitted = None;
            match recover_configuration(&map, &source) {
                Some(config) => {
                    let (p, q) = config.rational_type();
                    report.push(
                        "recover/000",
                        format!("recovered a configuration of type ({p},{q})"),
                        dg,
                        Ok(()),
                    );
                    emitted = Some(io::render_configuration(&config) + "\n");
                }
                None => report.push(
                    "recover/000",
                    "no point configuration induces this functional",
                    dg,
                    Err("some point weight is not an integer".into()),
                ),
            }
            Ok(Outcome { report: report.finish(), emitted })
        }

        Command::Super { check } => super_dispatch(check, seed),

        Command::Suite { name } => {
            let report = suites::run(name, seed).ok_or_else(|| {
                format!("unknown suite \"{name}\" (available: {}, all)", suites::SUITE_NAMES.join(", "))
            })?;
            Ok(Outcome { report, emitted: None })
        }
    }
}

fn super_dispatch(check: &SuperCheck, seed: u64) -> Result<Outcome, String> {
    match check {
        SuperCheck::Ber { matrix } => {
            let (text, value) = load_supermatrix(matrix)?;
            let mut report = CheckReport::new("super-ber", seed);
            let dg = digest(&[&text]);
            match &value {
                SuperMatrixValue::Rational(m) => ber_case(&mut report, m, dg),
                SuperMatrixValue::Grassmann(m) => ber_case(&mut report, m, dg),
            }
            Ok(Outcome { report: report.finish(), emitted: None })
        }
        SuperCheck::Traces { matrix, order } => {
            let (text, value) = load_supermatrix(matrix)?;
            let mut report = CheckReport::new("super-traces", seed);
            let dg = digest(&[&text, &order.to_string()]);
            let emitted = match &value {
                SuperMatrixValue::Rational(m) => traces_case(&mut report, m, *order, dg),
                SuperMatrixValue::Grassmann(m) => traces_case(&mut report, m, *order, dg),
            };
            Ok(Outcome { report: report.finish(), emitted })
        }
        SuperCheck::Hankel { matrix, order } => {
            let (text, value) = load_supermatrix(matrix)?;
            let mut report = CheckReport::new("super-hankel", seed);
            let dg = digest(&[&text]);
            match &value {
                SuperMatrixValue::Rational(m) => hankel_cases(&mut report, m, *order, dg),
                SuperMatrixValue::Grassmann(m) => hankel_cases(&mut report, m, *order, dg),
            }
            Ok(Outcome { report: report.finish(), emitted: None })
        }
        SuperCheck::Liouville { matrix, order } => {
            let (text, value) = load_supermatrix(matrix)?;
            let m = match value {
                SuperMatrixValue::Rational(m) => m,
                SuperMatrixValue::Grassmann(_) => {
                    return Err("the Liouville check runs over rational matrices".into())
                }
            };
            let mut report = CheckReport::new("super-liouville", seed);
            let dg = digest(&[&text, &order.to_string()]);
            let (description, result) = match liouville_check(&m, *order) {
                Ok(rel) if rel.agree => (
                    format!("logarithmic derivative matches the supertraces through order {order}"),
                    Ok(()),
                ),
                Ok(_) => (
                    format!("logarithmic derivative compared through order {order}"),
                    Err("the two sides differ".into()),
                ),
                Err(e) => ("Liouville comparison".into(), Err(e.to_string())),
            };
            report.push("liouville/000", description, dg, result);
            Ok(Outcome { report: report.finish(), emitted: None })
        }
    }
}

fn ber_case<R: Scalar>(report: &mut CheckReport, m: &SuperMatrix<R>, dg: String) {
    let (description, result) = match berezinian_block(m) {
        Err(e) => ("the Berezinian is undefined for this matrix".to_string(), Err(e.to_string())),
        Ok(value) => match ber_via_hankel(m) {
            Ok(_) => (
                format!("Ber = {value} by the block formula; the Hankel minor ratio agrees"),
                Ok(()),
            ),
            Err(SuperError::IndeterminateRatio) => (
                format!("Ber = {value} by the block formula; the minor ratio is indeterminate"),
                Ok(()),
            ),
            Err(e) => (format!("Ber = {value} by the block formula"), Err(e.to_string())),
        },
    };
    report.push("ber/000", description, dg, result);
}

fn traces_case<R: Scalar + Serialize>(
    report: &mut CheckReport,
    m: &SuperMatrix<R>,
    order: usize,
    dg: String,
) -> Option<String> {
    match char_function_series(m, order) {
        Ok(c) => {
            let shown: Vec<String> = c.values().iter().map(|v| v.to_string()).collect();
            report.push(
                "traces/000",
                format!("coefficients c_0..c_{order} by two routes: {}", shown.join(", ")),
                dg,
                Ok(()),
            );
            Some(pretty_json(&c.values().to_vec()))
        }
        Err(e) => {
            report.push(
                "traces/000",
                format!("coefficients to order {order}"),
                dg,
                Err(e.to_string()),
            );
            None
        }
    }
}

fn hankel_cases<R: Scalar>(
    report: &mut CheckReport,
    m: &SuperMatrix<R>,
    top: Option<usize>,
    dg: String,
) {
    let (p, q) = (m.dims().p as isize, m.dims().q as isize);
    let k_max = top.map(|n| n as isize).unwrap_or(p - q + 4);
    match hankel_recurrence_check(m, k_max) {
        Ok(window) => {
            for (i, (k, det)) in window.verdicts.iter().enumerate() {
                let result = if det.is_zero() {
                    Ok(())
                } else {
                    Err(format!("must vanish from k = {} on", window.start))
                };
                report.push(
                    format!("hankel/{i:03}"),
                    format!("window index k = {k}: determinant {det}"),
                    dg.clone(),
                    result,
                );
            }
            report.push(
                format!("hankel/{:03}", window.verdicts.len()),
                format!(
                    "sharpness probe at k = {}: determinant {} (vanishing not required)",
                    window.start - 1,
                    window.sharpness_value
                ),
                dg,
                Ok(()),
            );
        }
        Err(e) => report.push("hankel/000", "recurrence window", dg, Err(e.to_string())),
    }
}

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn pretty_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("values serialize") + "\n"
}

fn load_algebra(path: &Path) -> Result<(String, CommutativeAlgebra), String> {
    let text = read_file(path)?;
    let algebra = io::parse_algebra(&text).map_err(|e| e.to_string())?;
    Ok((text, algebra))
}

fn load_supermatrix(path: &Path) -> Result<(String, SuperMatrixValue), String> {
    let text = read_file(path)?;
    let value = io::parse_supermatrix(&text).map_err(|e| e.to_string())?;
    Ok((text, value))
}

/// Read a functional and resolve its source algebra, preferring an algebra
/// file when one is given. Returns the map, the source, and an inputs digest.
fn load_functional(
    functional: &Path,
    algebra: &Option<PathBuf>,
) -> Result<(LinearMap, CommutativeAlgebra, String), String> {
    let f_text = read_file(functional)?;
    let record = io::parse_functional(&f_text).map_err(|e| e.to_string())?;
    let (a_text, provided) = match algebra {
        Some(path) => {
            let (text, algebra) = load_algebra(path)?;
            (text, Some(algebra))
        }
        None => (String::new(), None),
    };
    let source = record.source_algebra(provided.as_ref()).map_err(|e| e.to_string())?;
    if record.matrix.len() != 1 {
        return Err("expected a functional: exactly one matrix row".into());
    }
    let map = record.to_map().map_err(|e| e.to_string())?;
    Ok((map, source, digest(&[&f_text, &a_text])))
}

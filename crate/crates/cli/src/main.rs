//! Batch front door: parse germ/torus files, run analyses, emit
//! human-readable and machine-readable reports.
//!
//! Exit status contract: 0 on success, 1 when an analysis determined a
//! negative verdict (still a successful run), 2 on input errors.

mod input;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cofront_core::germ::{
    classify_from_report, principality_report, pluecker_section, reduce_adapted, GermError,
    VerdictKind,
};
use cofront_core::local_algebra::quotient_dimension_profile;
use cofront_core::symmetry::{catalog_families, check_right_symmetry, diffeo_order, symmetry_catalog};
use cofront_core::torus::{
    assemble, default_fiber_samples, fiber_census_with_cap, mapping_torus_atlas,
    mapping_torus_transversal, numeric_return_map, TorusError,
};
use cofront_core::MapGerm;

use input::{load_germ_file, load_symmetry_job, load_torus_file, parse_rational_tuple, render_poly};
use report::*;

#[derive(Debug, Parser)]
#[command(
    name = "cofront",
    about = "Exact frontality/cofrontality analysis of polynomial map-germs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze germ files: minors, principality, verdict, kernel field,
    /// local-algebra profile.
    Analyze {
        /// Germ file(s); repeat the flag for batch runs.
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
        /// Degree cap for the local-algebra profile.
        #[arg(long, default_value_t = 16)]
        degree_cap: u32,
    },
    /// Check a candidate right symmetry against a germ.
    Symmetry {
        /// Job file with `germ` and `sigma`.
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
        /// Cap for the exact order search.
        #[arg(long, default_value_t = 64)]
        order_cap: u32,
    },
    /// Assemble a mapping torus and run a fiber census or a numeric
    /// return-map verification.
    Torus {
        /// Torus spec file.
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
        /// Census target value, comma-separated rationals (e.g. `1/4`).
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        /// Verify the Poincare return map of a piece instead of a census.
        #[arg(long)]
        return_map: bool,
        /// Piece index for `--return-map`.
        #[arg(long, default_value_t = 0)]
        piece: usize,
        /// Integrator step size for `--return-map`.
        #[arg(long, default_value_t = 1e-3)]
        step_size: f64,
        /// Step budget for `--return-map` (default scales with step size).
        #[arg(long)]
        steps: Option<usize>,
        /// Degree cap for the census' local-algebra precondition.
        #[arg(long, default_value_t = 16)]
        degree_cap: u32,
        /// Cap for symmetry orders during assembly.
        #[arg(long, default_value_t = 64)]
        order_cap: u32,
    },
    /// List the symmetry catalog, or show one entry by name.
    Catalog {
        /// Catalog name (e.g. `fold`, `power_ell(4)`).
        name: Option<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Analyze {
            input,
            common,
            degree_cap,
        } => run_analyze(&input, common.format, degree_cap),
        Command::Symmetry {
            input,
            common,
            order_cap,
        } => run_symmetry(&input, common.format, order_cap),
        Command::Torus {
            input,
            common,
            b,
            return_map,
            piece,
            step_size,
            steps,
            degree_cap,
            order_cap,
        } => run_torus(
            &input, common.format, b.as_deref(), return_map, piece, step_size, steps, degree_cap,
            order_cap,
        ),
        Command::Catalog { name, common } => run_catalog(name.as_deref(), common.format),
    }
}

fn build_analyze_report(path: &Path, germ: &MapGerm, degree_cap: u32) -> AnalyzeReport {
    let jacobi = principality_report(germ);
    let verdict = classify_from_report(germ, &jacobi);
    let (n, m) = (germ.source_dimension(), germ.target_dimension());

    let (kernel_field, kernel_field_note) = if n == m + 1 {
        match pluecker_section(germ) {
            Ok(field) => (Some(kernel_field_report(&field)), None),
            Err(e) => (None, Some(format!("not certified ({e})"))),
        }
    } else {
        (None, None)
    };

    // Local-algebra profile: directly for n = m, through the adapted
    // reduction when the trailing variables are unused, otherwise noted.
    let (finiteness, finiteness_note) = if n == m {
        match quotient_dimension_profile(germ, degree_cap) {
            Ok(profile) => (Some(finiteness_out(&profile)), None),
            Err(e) => (None, Some(format!("unavailable ({e})"))),
        }
    } else if n > m {
        match reduce_adapted(germ, n - m) {
            Ok(reduced) => match quotient_dimension_profile(&reduced, degree_cap) {
                Ok(profile) => (Some(finiteness_out(&profile)), None),
                Err(e) => (None, Some(format!("unavailable ({e})"))),
            },
            Err(GermError::DependsOnFiberVariable { .. }) => (
                None,
                Some(
                    "not computed: germ is not adapted (components depend on trailing variables)"
                        .to_owned(),
                ),
            ),
            Err(e) => (None, Some(format!("unavailable ({e})"))),
        }
    } else {
        (None, Some("not applicable for n < m".to_owned()))
    };

    AnalyzeReport {
        input: path.display().to_string(),
        n,
        m,
        components: germ.components().iter().map(render_poly).collect(),
        minors: jacobi_entries(&jacobi.minors),
        gcd: render_poly(&jacobi.gcd),
        quotients: jacobi_entries(&jacobi.quotients),
        principal: jacobi.principal,
        base_index: jacobi.base_index.as_ref().map(|s| s.columns().to_vec()),
        generator: jacobi.generator.as_ref().map(render_poly),
        verdict: verdict_report(&verdict),
        kernel_field,
        kernel_field_note,
        finiteness,
        finiteness_note,
    }
}

fn run_analyze(inputs: &[PathBuf], format: Format, degree_cap: u32) -> Result<ExitCode> {
    let mut negative = false;
    let mut reports = Vec::with_capacity(inputs.len());
    for path in inputs {
        let germ = load_germ_file(path)?;
        let report = build_analyze_report(path, &germ, degree_cap);
        if report.verdict.kind == VerdictKind::Indeterminate.to_string() {
            negative = true;
        }
        reports.push(report);
    }
    match format {
        Format::Text => {
            for report in &reports {
                print!("{}", analyze_text(report));
            }
        }
        Format::Structured => {
            if reports.len() == 1 {
                println!("{}", serde_json::to_string_pretty(&reports[0])?);
            } else {
                println!("{}", serde_json::to_string_pretty(&reports)?);
            }
        }
    }
    Ok(if negative { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn run_symmetry(input: &Path, format: Format, order_cap: u32) -> Result<ExitCode> {
    let (germ, sigma) = load_symmetry_job(input)?;
    let certificate = check_right_symmetry(&germ, &sigma).map_err(|e| anyhow!("{e}"))?;
    let order = diffeo_order(&sigma, order_cap);
    let report = symmetry_report(&germ, &certificate, &order);
    match format {
        Format::Text => print!("{}", symmetry_text(&report)),
        Format::Structured => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    Ok(if certificate.verified {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[allow(clippy::too_many_arguments)]
fn run_torus(
    input: &Path,
    format: Format,
    b: Option<&str>,
    return_map: bool,
    piece: usize,
    step_size: f64,
    steps: Option<usize>,
    degree_cap: u32,
    order_cap: u32,
) -> Result<ExitCode> {
    let specs = load_torus_file(input)?;
    // Assembly failures are input errors: the file does not describe a
    // valid mapping torus.
    let torus = assemble(specs, order_cap).map_err(|e| anyhow!("{e}"))?;

    if return_map {
        let torus_piece = torus
            .pieces()
            .get(piece)
            .ok_or_else(|| anyhow!("piece index {piece} out of range"))?;
        let atlas = mapping_torus_atlas(torus_piece).map_err(|e| anyhow!("{e}"))?;
        let transversal = mapping_torus_transversal(torus_piece);
        let samples = default_fiber_samples(&torus_piece.domain);
        let budget = steps.unwrap_or_else(|| ((4.0 / step_size).ceil() as usize).max(1000));
        match numeric_return_map(
            &atlas,
            &transversal,
            &torus_piece.symmetry,
            &samples,
            budget,
            step_size,
        ) {
            Ok(run) => {
                let report = return_map_report(piece, step_size, &run);
                match format {
                    Format::Text => print!("{}", return_map_text(&report)),
                    Format::Structured => println!("{}", serde_json::to_string_pretty(&report)?),
                }
                Ok(ExitCode::SUCCESS)
            }
            Err(e @ (TorusError::LeafExitsAtlas
            | TorusError::NoReturnWithinBudget { .. }
            | TorusError::TransversalTangency)) => {
                eprintln!("return map failed: {e}");
                Ok(ExitCode::from(1))
            }
            Err(e) => Err(anyhow!("{e}")),
        }
    } else {
        let b_text = b.ok_or_else(|| anyhow!("census needs --b (or pass --return-map)"))?;
        let target = parse_rational_tuple(b_text)?;
        match fiber_census_with_cap(&torus, &target, degree_cap) {
            Ok(census) => {
                let report = census_report(&census);
                match format {
                    Format::Text => print!("{}", census_text(&report)),
                    Format::Structured => println!("{}", serde_json::to_string_pretty(&report)?),
                }
                Ok(ExitCode::SUCCESS)
            }
            Err(e @ (TorusError::FiberNotFinite { .. }
            | TorusError::KFinitenessUndecided { .. }
            | TorusError::CensusExceedsBound { .. }
            | TorusError::OrbitMatchFailed { .. })) => {
                eprintln!("census failed: {e}");
                Ok(ExitCode::from(1))
            }
            Err(e) => Err(anyhow!("{e}")),
        }
    }
}

fn run_catalog(name: Option<&str>, format: Format) -> Result<ExitCode> {
    let entries = match name {
        Some(name) => vec![symmetry_catalog(name).map_err(|e| anyhow!("{e}"))?],
        None => catalog_families(),
    };
    let report = CatalogReport {
        entries: entries.iter().map(catalog_entry_out).collect(),
    };
    match format {
        Format::Text => print!("{}", catalog_text(&report)),
        Format::Structured => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    Ok(ExitCode::SUCCESS)
}

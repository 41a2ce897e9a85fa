//! Command-line front end: exact and decimal tables for the curve families,
//! Harbourne-constant evaluation, and design verification.
//!
//! Exit codes: 0 success, 1 usage or invalid input, 2 verification failure.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use harbourne::families::{
    build, cross_check, overall_status, CheckStatus, CrossCheckOptions, FamilyName, FamilySpec,
};
use harbourne::harbourne::{h_bruteforce, h_constant_general, SingularityProfile};
use harbourne::incidence::{verify_configuration, verify_design, DesignKind, KummerModel};
use harbourne::rational::{parse_rat, rat};
use harbourne::render::{
    render_design, render_family, render_hc, render_table, DesignOutput, Format, HcOutput,
    RenderOptions, TableRow,
};

#[derive(Parser)]
#[command(name = "harbourne", version, about = "Exact Harbourne-constant tables for curve configurations on abelian and Kummer surfaces")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Output format
    #[arg(long, global = true, default_value = "text")]
    format: String,

    /// Decimal digits for display rendering
    #[arg(long, global = true, default_value_t = 6)]
    precision: u32,

    /// Torsion-level cap for enumerative verification (env: HARBOURNE_CAP)
    #[arg(long, global = true)]
    cap: Option<u32>,

    /// Skip enumerative verification; closed forms only
    #[arg(long, global = true)]
    no_verify: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build one configuration and report its Harbourne constants
    Family {
        name: String,
        /// Family parameter n
        #[arg(long)]
        n: Option<i64>,
        /// Family parameter k (gamma-k)
        #[arg(long)]
        k: Option<i64>,
    },
    /// One row per admissible parameter up to a maximum
    Table {
        name: String,
        #[arg(long)]
        n_max: i64,
    },
    /// Harbourne constant of an abstract singularity profile
    Hc {
        /// Self-intersection C², as an integer or p/q
        #[arg(long)]
        csq: String,
        /// Comma-separated multiplicities (empty for a smooth curve)
        #[arg(long, default_value = "")]
        mults: String,
        /// Run the brute-force oracle with caps "bCap,cCap"
        #[arg(long)]
        oracle: Option<String>,
    },
    /// Verify the incidence design axioms (kinds: 16-6, 16-10)
    Design { kind: String },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not usage errors
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn level_cap(global: &GlobalArgs) -> u32 {
    global
        .cap
        .or_else(|| {
            std::env::var("HARBOURNE_CAP")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(harbourne::incidence::DEFAULT_LEVEL_CAP)
}

fn render_options(global: &GlobalArgs) -> Result<RenderOptions, String> {
    let format: Format = global.format.parse()?;
    Ok(RenderOptions {
        format,
        precision: global.precision,
    })
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let opts = render_options(&cli.global)?;
    let check_opts = CrossCheckOptions {
        level_cap: level_cap(&cli.global),
        perturb_incidence: std::env::var("HARBOURNE_TEST_PERTURB").is_ok(),
    };
    match &cli.command {
        Command::Family { name, n, k } => {
            let name: FamilyName = name.parse().map_err(|e| format!("{e}"))?;
            let parameter = match name.parameter_name() {
                "k" => k.or(*n),
                _ => n.or(*k),
            }
            .unwrap_or(1);
            let spec = FamilySpec::new(name, parameter).map_err(|e| format!("{e}"))?;
            let report = build(&spec).map_err(|e| format!("{e}"))?;
            let checks = if cli.global.no_verify {
                report.checks.clone()
            } else {
                cross_check(&report, &check_opts).map_err(|e| format!("{e}"))?
            };
            print!(
                "{}",
                render_family(&report, &checks, &opts).map_err(|e| format!("{e}"))?
            );
            if overall_status(&checks) == CheckStatus::Fail {
                eprintln!("error: cross-consistency check failed");
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { name, n_max } => {
            let name: FamilyName = name.parse().map_err(|e| format!("{e}"))?;
            let (min, step) = name
                .parameter_range()
                .ok_or_else(|| format!("family {name} takes no parameter"))?;
            if *n_max < min {
                return Err(format!(
                    "--n-max must be at least {min} for family {name}"
                ));
            }
            let mut rows = Vec::new();
            let mut failed = false;
            let mut p = min;
            while p <= *n_max {
                let spec = FamilySpec::new(name, p).map_err(|e| format!("{e}"))?;
                let report = build(&spec).map_err(|e| format!("{e}"))?;
                if !cli.global.no_verify {
                    let checks = cross_check(&report, &check_opts).map_err(|e| format!("{e}"))?;
                    if overall_status(&checks) == CheckStatus::Fail {
                        failed = true;
                    }
                }
                rows.push(TableRow {
                    parameter: p,
                    component_self_ints: report.components.iter().map(|c| c.self_int).collect(),
                    singular_point_count: report.singular_points.iter().map(|(_, c)| c).sum(),
                    h: report.h_report.h_global,
                });
                p += step;
            }
            print!(
                "{}",
                render_table(&name.to_string(), &rows, &opts).map_err(|e| format!("{e}"))?
            );
            if failed {
                eprintln!("error: cross-consistency check failed");
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Hc { csq, mults, oracle } => {
            let csq = parse_rat(csq).map_err(|e| format!("{e}"))?;
            let mults: Vec<u32> = if mults.trim().is_empty() {
                Vec::new()
            } else {
                mults
                    .split(',')
                    .map(|m| m.trim().parse::<u32>().map_err(|_| format!("bad multiplicity {m:?}")))
                    .collect::<Result<_, _>>()?
            };
            let profile =
                SingularityProfile::new(csq, &mults, false, None).map_err(|e| format!("{e}"))?;
            let report = h_constant_general(&profile);
            let oracle_result = match oracle {
                Some(caps) => {
                    let (b_cap, c_cap) = caps
                        .split_once(',')
                        .and_then(|(b, c)| Some((b.trim().parse::<u64>().ok()?, c.trim().parse::<u64>().ok()?)))
                        .ok_or_else(|| format!("bad --oracle caps {caps:?} (expected bCap,cCap)"))?;
                    let value = h_bruteforce(&profile, b_cap, c_cap).map_err(|e| format!("{e}"))?;
                    // agreement under the asymptote convention: the oracle
                    // never dips below the closed form, and matches it
                    // exactly whenever the closed form is below -1
                    let agrees = value >= report.h_global
                        && (report.h_global >= rat(-1) || value == report.h_global);
                    Some((value, agrees))
                }
                None => None,
            };
            let disagrees = matches!(oracle_result, Some((_, false)));
            print!(
                "{}",
                render_hc(
                    &HcOutput {
                        report,
                        oracle: oracle_result,
                    },
                    &opts
                )
                .map_err(|e| format!("{e}"))?
            );
            if disagrees {
                eprintln!("error: oracle disagrees with the closed form");
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Design { kind } => {
            let design_kind = match kind.as_str() {
                "16-6" => DesignKind::SixteenSix,
                "16-10" => DesignKind::SixteenTen,
                other => return Err(format!("unknown design kind {other:?} (expected 16-6 or 16-10)")),
            };
            let model = KummerModel::new(design_kind);
            let curves = model.curves();
            let points = model.points();
            let params = verify_configuration(&curves, &points, |c, p| model.incident(*c, *p))
                .map_err(|e| format!("{e}"))?;
            let lambda = verify_design(&curves, &points, |c, p| model.incident(*c, *p))
                .map_err(|e| format!("{e}"))?;
            let identity_holds = params.curves_per_point * (params.points_per_curve - 1)
                == lambda * (params.curves - 1);
            print!(
                "{}",
                render_design(
                    &DesignOutput {
                        kind: kind.clone(),
                        params,
                        lambda,
                        identity_holds,
                    },
                    &opts
                )
                .map_err(|e| format!("{e}"))?
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

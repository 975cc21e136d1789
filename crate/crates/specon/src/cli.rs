//! The `specon` command-line front end: evaluation, verification suites,
//! and searches, with JSON/CSV artifacts written under an output directory
//! (`--out`, or the `SPECON_OUT` environment variable, default `./out`).
//!
//! Identical command lines (including seeds) produce byte-identical report
//! payloads; wall-clock timestamps live only in the `manifest.json` sidecar.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bounds::{self, BoundOutcome};
use crate::error::Result;
use crate::intervals::{GapVector, IntervalUnion};
use crate::search::{self, ScanConfig, SearchConfig};
use crate::spectral;

const SCHEMA_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+schema.1");

#[derive(Debug, Parser)]
#[command(
    name = "specon",
    version,
    about = "Spectral concentration of interval unions: evaluate the rearrangement gap, verify its identities and bounds, search for counterexamples"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate concentration, the gap functional, and the stationarity
    /// certificate for one configuration.
    Eval(EvalArgs),
    /// Run a verification suite and write reports; exit 1 if any fails.
    Verify(VerifyArgs),
    /// Minimize the gap functional, scan for counterexamples, or search
    /// two-valued step functions.
    Search(SearchArgs),
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// Gap vector a1,a2,...,a(2n-1): lengths at odd, holes at even positions.
    #[arg(long, value_delimiter = ',', conflicts_with = "endpoints", required_unless_present = "endpoints")]
    gaps: Option<Vec<f64>>,
    /// Endpoint list x1,...,x(2n) of the interval union.
    #[arg(long, value_delimiter = ',')]
    endpoints: Option<Vec<f64>>,
    /// Bandwidth W; evaluation dilates to unit bandwidth.
    #[arg(long, default_value_t = 1.0)]
    bandwidth: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Identities,
    Thresholds,
    L2,
    Avg,
    Special,
    All,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Sample count per randomized verifier (must be positive).
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Lattice step for the two-interval grid.
    #[arg(long, default_value_t = 0.05)]
    grid_step: f64,
    /// Lattice bound per coordinate for the two-interval grid.
    #[arg(long, default_value_t = 6.0)]
    grid_max: f64,
    /// Output directory (overrides SPECON_OUT).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchMode {
    Minimize,
    Scan,
    Remark1,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long, value_enum, default_value_t = SearchMode::Minimize)]
    mode: SearchMode,
    /// Number of intervals (minimize and scan modes).
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 32)]
    restarts: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cap on the total interval length.
    #[arg(long)]
    t_max: Option<f64>,
    /// Support length for the step-function search (remark1 mode).
    #[arg(long, default_value_t = 1.2)]
    t: f64,
    /// Lattice resolution per coordinate (scan mode).
    #[arg(long, default_value_t = 6)]
    grid: usize,
    /// Output directory (overrides SPECON_OUT).
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses argv and runs; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Eval(args) => match cmd_eval(&args) {
            Ok(payload) => {
                println!("{payload}");
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        Command::Verify(args) => cmd_verify(&args),
        Command::Search(args) => cmd_search(&args),
    }
}

fn out_dir(flag: &Option<PathBuf>) -> PathBuf {
    flag.clone()
        .or_else(|| std::env::var_os("SPECON_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("./out"))
}

fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Deterministic manifest data embedded in every report payload.
fn manifest_ref(command: &str, config: serde_json::Value, seed: u64) -> serde_json::Value {
    json!({
        "command": command,
        "config": config,
        "artifact_version": SCHEMA_VERSION,
        "seed": seed,
        "manifest_file": "manifest.json",
    })
}

/// Wall-clock manifest written once per run as a sidecar.
#[derive(Debug, Serialize)]
struct RunManifest {
    command: String,
    config: serde_json::Value,
    artifact_version: String,
    seed: u64,
    started_unix: u64,
    finished_unix: u64,
    outputs: Vec<String>,
}

fn write_csv(path: &Path, rows: &[(String, f64)]) -> Result<()> {
    let mut body = String::from("input,value\n");
    for (input, value) in rows {
        let escaped = input.replace('"', "\"\"");
        body.push_str(&format!("\"{escaped}\",{value}\n"));
    }
    fs::write(path, body)?;
    Ok(())
}

fn cmd_eval(args: &EvalArgs) -> Result<String> {
    if !(args.bandwidth.is_finite() && args.bandwidth > 0.0) {
        return Err(crate::Error::invalid("bandwidth must be positive"));
    }
    let gaps = match (&args.gaps, &args.endpoints) {
        (Some(g), None) => GapVector::new(g.clone())?,
        (None, Some(e)) => IntervalUnion::new(e.clone())?.canonicalize().to_gaps()?,
        _ => return Err(crate::Error::invalid("provide exactly one of --gaps/--endpoints")),
    };

    // dilation reduction: all quantities are computed for the W-dilated
    // configuration at unit bandwidth
    let effective = gaps.scale(args.bandwidth)?;
    let set = IntervalUnion::from_gaps(&effective);
    let rearranged = set.rearrange();
    let concentration = spectral::concentration(&set, 1.0)?;
    let rearranged_concentration = spectral::concentration(&rearranged, 1.0)?;
    let breakdown = spectral::h_gap(&effective)?;
    let (certificate, certificate_note) = match search::certificate_check(&effective, 1e-6) {
        Ok(c) => (Some(c), None),
        Err(e) => (None, Some(e.to_string())),
    };

    let payload = json!({
        "requested": { "gaps": gaps.gaps(), "bandwidth": args.bandwidth },
        "result": {
            "effective_gaps": effective.gaps(),
            "set": set,
            "concentration": concentration,
            "rearranged_concentration": rearranged_concentration,
            "h": breakdown,
            "certificate": certificate,
            "certificate_note": certificate_note,
        },
        "manifest": manifest_ref(
            "eval",
            json!({ "gaps": gaps.gaps(), "bandwidth": args.bandwidth }),
            0,
        ),
    });
    Ok(serde_json::to_string_pretty(&payload)?)
}

fn suite_outcomes(args: &VerifyArgs) -> Result<Vec<BoundOutcome>> {
    let n = args.samples;
    let seed = args.seed;
    let mut outcomes = Vec::new();
    let suite = args.suite;

    if matches!(suite, Suite::Identities | Suite::All) {
        outcomes.push(bounds::verify_t_identities(n, seed));
        outcomes.push(bounds::verify_form_agreement(n.min(2000), seed));
        outcomes.push(bounds::verify_infinite_norm_equality(n.min(2000), seed)?);
    }
    if matches!(suite, Suite::Thresholds | Suite::All) {
        outcomes.push(bounds::verify_wt_threshold(n, seed));
        outcomes.push(bounds::verify_two_interval(
            args.grid_step,
            args.grid_max,
            n,
            seed,
        )?);
    }
    if matches!(suite, Suite::L2 | Suite::All) {
        outcomes.push(bounds::verify_l2_bounds(n, seed));
        outcomes.push(bounds::verify_iac_and_cor_new(n, seed));
    }
    if matches!(suite, Suite::Avg | Suite::All) {
        outcomes.push(bounds::verify_avg_lemma(n.min(2000), seed)?);
    }
    if matches!(suite, Suite::Special | Suite::All) {
        outcomes.push(bounds::verify_special_cases());
        outcomes.push(bounds::verify_critical_constant());
    }
    Ok(outcomes)
}

fn cmd_verify(args: &VerifyArgs) -> i32 {
    if args.samples == 0 {
        eprintln!("error: --samples must be positive");
        return 2;
    }
    if !(args.grid_step > 0.0 && args.grid_max > args.grid_step) {
        eprintln!("error: need 0 < --grid-step < --grid-max");
        return 2;
    }
    let dir = out_dir(&args.out);
    if let Err(e) = fs::create_dir_all(&dir) {
        eprintln!("error: cannot create {}: {e}", dir.display());
        return 2;
    }

    let started = unix_now();
    let command = format!(
        "verify --suite {:?} --samples {} --seed {}",
        args.suite, args.samples, args.seed
    )
    .to_lowercase();
    let config = json!({
        "suite": format!("{:?}", args.suite).to_lowercase(),
        "samples": args.samples,
        "seed": args.seed,
        "grid_step": args.grid_step,
        "grid_max": args.grid_max,
    });

    let outcomes = match suite_outcomes(args) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };

    let mut outputs = Vec::new();
    let mut all_passed = true;
    for outcome in &outcomes {
        let r = &outcome.report;
        let status = if r.passed() { "pass" } else { "FAIL" };
        println!(
            "{status}  {:<24} samples {:>8}  worst slack {:+.3e}",
            r.name(),
            r.samples(),
            r.worst_slack()
        );
        all_passed &= r.passed();

        let payload = json!({
            "report": r,
            "manifest": manifest_ref(&command, config.clone(), args.seed),
        });
        let json_name = format!("report_{}.json", r.name());
        let csv_name = format!("report_{}.csv", r.name());
        let write = || -> Result<()> {
            fs::write(
                dir.join(&json_name),
                serde_json::to_string_pretty(&payload)?,
            )?;
            write_csv(&dir.join(&csv_name), &outcome.rows)?;
            Ok(())
        };
        if let Err(e) = write() {
            eprintln!("error writing reports: {e}");
            return 1;
        }
        outputs.push(json_name);
        outputs.push(csv_name);
    }

    let manifest = RunManifest {
        command,
        config,
        artifact_version: SCHEMA_VERSION.to_string(),
        seed: args.seed,
        started_unix: started,
        finished_unix: unix_now(),
        outputs,
    };
    if let Err(e) = fs::write(
        dir.join("manifest.json"),
        serde_json::to_string_pretty(&manifest).expect("manifest serializes"),
    ) {
        eprintln!("error writing manifest: {e}");
        return 1;
    }

    if all_passed {
        0
    } else {
        1
    }
}

fn cmd_search(args: &SearchArgs) -> i32 {
    let dir = out_dir(&args.out);
    if let Err(e) = fs::create_dir_all(&dir) {
        eprintln!("error: cannot create {}: {e}", dir.display());
        return 2;
    }
    let started = unix_now();

    let (mode_name, payload, rows): (&str, serde_json::Value, Vec<(String, f64)>) =
        match args.mode {
            SearchMode::Minimize => {
                if args.n < 2 || args.restarts == 0 {
                    eprintln!("error: minimize needs --n ≥ 2 and --restarts ≥ 1");
                    return 2;
                }
                let mut cfg = SearchConfig::new(args.n);
                cfg.restarts = args.restarts;
                cfg.rng_seed = args.seed;
                cfg.max_total_length = args.t_max;
                match search::minimize_h(&cfg) {
                    Ok(report) => {
                        println!(
                            "best H = {:+.6e} at gaps {:?} (interior: {})",
                            report.best.h_value, report.best.gaps, report.best.interior
                        );
                        let rows = report
                            .restarts
                            .iter()
                            .map(|o| {
                                (
                                    format!(
                                        "restart={};interior={};converged={};gaps={:?}",
                                        o.index, o.interior, o.converged, o.gaps
                                    ),
                                    o.h_value,
                                )
                            })
                            .collect();
                        ("minimize", json!(report), rows)
                    }
                    Err(e) => {
                        eprintln!("error: {e}");
                        return 2;
                    }
                }
            }
            SearchMode::Scan => {
                if args.n < 2 {
                    eprintln!("error: scan needs --n ≥ 2");
                    return 2;
                }
                let mut cfg = ScanConfig::new(args.n, args.t_max.unwrap_or(6.0), args.grid, args.seed);
                cfg.quasi_samples = 4000;
                match search::counterexample_scan(&cfg) {
                    Ok(report) => {
                        println!(
                            "scanned {} configurations: min H = {:+.6e}, negative hits {}, confirmed violations {}",
                            report.evaluated,
                            report.min_h,
                            report.negative_hits,
                            report.violations.iter().filter(|v| v.confirmed).count()
                        );
                        let rows = report.rows.clone();
                        ("scan", json!(report), rows)
                    }
                    Err(e) => {
                        eprintln!("error: {e}");
                        return 2;
                    }
                }
            }
            SearchMode::Remark1 => {
                let eps_grid = [1e-3, 1e-2, 5e-2];
                let height_grid = [10.0, 100.0, 1000.0];
                let sweep = search::default_block_sweep();
                match search::remark1_search(args.t, &eps_grid, &height_grid, &sweep) {
                    Ok(report) => {
                        match &report.best {
                            Some(b) => println!(
                                "best margin {:+.6e} at eps={}, height={}, block at {} (oracle confirmed: {})",
                                b.margin, b.eps, b.height, b.block_lo, report.oracle_confirmed
                            ),
                            None => println!("no candidates tested"),
                        }
                        let rows = report.rows.clone();
                        ("remark1", json!(report), rows)
                    }
                    Err(e) => {
                        eprintln!("error: {e}");
                        return 2;
                    }
                }
            }
        };

    let command = format!("search --mode {mode_name} --n {} --seed {}", args.n, args.seed);
    let config = json!({
        "mode": mode_name,
        "n": args.n,
        "restarts": args.restarts,
        "seed": args.seed,
        "t_max": args.t_max,
        "t": args.t,
        "grid": args.grid,
    });
    let wrapped = json!({
        "report": payload,
        "manifest": manifest_ref(&command, config.clone(), args.seed),
    });

    let json_name = format!("search_{mode_name}.json");
    let csv_name = format!("search_{mode_name}.csv");
    let write = || -> Result<()> {
        fs::write(dir.join(&json_name), serde_json::to_string_pretty(&wrapped)?)?;
        write_csv(&dir.join(&csv_name), &rows)?;
        let manifest = RunManifest {
            command,
            config,
            artifact_version: SCHEMA_VERSION.to_string(),
            seed: args.seed,
            started_unix: started,
            finished_unix: unix_now(),
            outputs: vec![json_name.clone(), csv_name.clone()],
        };
        fs::write(
            dir.join("manifest.json"),
            serde_json::to_string_pretty(&manifest)?,
        )?;
        Ok(())
    };
    if let Err(e) = write() {
        eprintln!("error writing reports: {e}");
        return 1;
    }
    0
}

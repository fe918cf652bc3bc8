//! Command-line interface.
//!
//! Exit codes are a stable contract: 0 success, 1 verify failure, 2
//! configuration error, 3 numeric nonconvergence (the report is still
//! written when a value could be computed).

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::config::{OutputFormat, RunConfig};
use crate::criteria::{
    boundary_vanishing_check, boundedness_certificate, compactness_probe, criterion_m1,
    criterion_m2, CriterionForm,
};
use crate::domain::{HoloFun, Point};
use crate::error::{ConfigError, LabError};
use crate::exprlang;
use crate::gallery;
use crate::ops::{apply, extremal_fw, OperatorKind};
use crate::quad::hardy_norm;
use crate::report::{fmt_f64, CsvTable, Report};
use crate::verify::run_verify;

#[derive(Parser, Debug)]
#[command(
    name = "halfplane",
    about = "Hardy/Bloch norms and Volterra-type integral operators on the upper half-plane",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// JSON config file with flat dotted keys (quad.rel_tol, region.y_min, ...)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override a single config key, e.g. --set quad.rel_tol=1e-8 (repeatable)
    #[arg(long, global = true)]
    set: Vec<String>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Report format
    #[arg(long, global = true, default_value = "json")]
    format: String,
    /// Seed for randomized spot-checks
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for grid sweeps
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Hardy norm of a test function over the configured height set
    HardyNorm(FunctionArgs),
    /// Criterion suprema M1/M2 and optional boundary-vanishing reports
    Criteria {
        #[command(flatten)]
        symbol: SymbolArgs,
        /// Which criterion to sweep
        #[arg(long, default_value = "both", value_parser = ["m1", "m2", "both"])]
        which: String,
        /// Also run the boundary-vanishing check(s)
        #[arg(long)]
        vanishing: bool,
    },
    /// Apply an operator at a point
    Apply {
        #[arg(long, value_parser = ["jg", "ig", "mg"])]
        op: String,
        #[command(flatten)]
        symbol: SymbolArgs,
        #[command(flatten)]
        function: FunctionArgs,
        /// Base point of the path, re,im
        #[arg(long, default_value = "0,1")]
        z0: String,
        /// Evaluation point, re,im
        #[arg(long)]
        z: String,
    },
    /// Boundedness certificate for J_g or I_g
    Certify {
        #[arg(long, value_parser = ["jg", "ig"])]
        op: String,
        #[command(flatten)]
        symbol: SymbolArgs,
    },
    /// Compactness probe along w_n = x_anchor + i 2^-n
    Probe {
        #[arg(long, value_parser = ["jg", "ig"])]
        op: String,
        #[command(flatten)]
        symbol: SymbolArgs,
        #[arg(long)]
        levels: Option<usize>,
        #[arg(long = "x-anchor", default_value_t = 0.0)]
        x_anchor: f64,
    },
    /// Run the full invariant suite; exit 0 iff every check passes
    Verify {
        /// Only run checks whose module or name contains this substring
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Args, Debug, Clone)]
struct SymbolArgs {
    /// Gallery id: zero, const:<c>, cayley, inv, exp_iz, exp_isqrtz
    #[arg(long)]
    symbol: Option<String>,
    /// Expression source for the symbol, e.g. "exp(i*z)"
    #[arg(long = "symbol-expr")]
    symbol_expr: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct FunctionArgs {
    /// Test function: fw:<u>,<v> (kernel at u+iv) or a gallery id
    #[arg(long)]
    function: Option<String>,
    /// Expression source for the test function
    #[arg(long = "function-expr")]
    function_expr: Option<String>,
}

fn parse_point(field: &str, s: &str) -> Result<Point, ConfigError> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| ConfigError::new(field, format!("expected re,im, got `{s}`")))?;
    let x: f64 = re
        .trim()
        .parse()
        .map_err(|_| ConfigError::new(field, format!("bad real part `{re}`")))?;
    let y: f64 = im
        .trim()
        .parse()
        .map_err(|_| ConfigError::new(field, format!("bad imaginary part `{im}`")))?;
    Point::new(x, y).map_err(|e| ConfigError::new(field, e.to_string()))
}

fn expr_fun(field: &str, src: &str) -> Result<HoloFun, ConfigError> {
    let e = exprlang::parse(src).map_err(|err| ConfigError::new(field, err.to_string()))?;
    Ok(exprlang::to_holofun(&e, src))
}

fn resolve_symbol(args: &SymbolArgs) -> Result<HoloFun, ConfigError> {
    match (&args.symbol, &args.symbol_expr) {
        (Some(id), None) => gallery::symbol(id),
        (None, Some(src)) => expr_fun("symbol-expr", src),
        _ => Err(ConfigError::new(
            "symbol",
            "provide exactly one of --symbol or --symbol-expr",
        )),
    }
}

fn resolve_function(args: &FunctionArgs) -> Result<HoloFun, ConfigError> {
    match (&args.function, &args.function_expr) {
        (Some(spec), None) => {
            if let Some(wtext) = spec.strip_prefix("fw:") {
                let w = parse_point("function", wtext)?;
                Ok(extremal_fw(w))
            } else {
                gallery::symbol(spec).map_err(|e| ConfigError::new("function", e.message))
            }
        }
        (None, Some(src)) => expr_fun("function-expr", src),
        _ => Err(ConfigError::new(
            "function",
            "provide exactly one of --function or --function-expr",
        )),
    }
}

fn inputs_of(pairs: &[(&str, String)]) -> BTreeMap<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
        .collect()
}

struct CmdOutput {
    report: Report,
    table: CsvTable,
    nonconverged: bool,
}

fn cmd_hardy_norm(cfg: &RunConfig, args: &FunctionArgs) -> Result<CmdOutput, LabError> {
    let f = resolve_function(args)?;
    let heights = cfg.hardy_height_set();
    let (sup, lines) = hardy_norm(&f, &heights, &cfg.quad, cfg.tau)?;
    let mut warnings = Vec::new();
    let truncated = lines.iter().filter(|l| l.truncated).count();
    if truncated > 0 {
        warnings.push(format!(
            "{truncated} line integrals hit the half-width cap; tail mass unresolved"
        ));
    }
    if sup.boundary {
        warnings.push("sup attained at the smallest height: boundary-limit regime".into());
    }
    let mut table = CsvTable::new(["index", "height", "line_l2", "sup", "truncated"]);
    for (i, (level, line)) in sup.levels.iter().zip(lines.iter()).enumerate() {
        table.push_row([
            i.to_string(),
            fmt_f64(level.scale),
            fmt_f64(line.value),
            fmt_f64(level.sup),
            line.truncated.to_string(),
        ]);
    }
    let report = Report {
        command: "hardy-norm".into(),
        config: cfg.to_flat_map(),
        inputs: inputs_of(&[("function", f.label().to_string())]),
        results: json!({ "estimate": sup, "lines": lines }),
        warnings,
        wall_ms: None,
    };
    Ok(CmdOutput {
        report,
        table,
        nonconverged: truncated > 0,
    })
}

fn cmd_criteria(
    cfg: &RunConfig,
    symbol: &SymbolArgs,
    which: &str,
    vanishing: bool,
) -> Result<CmdOutput, LabError> {
    let g = resolve_symbol(symbol)?;
    let opts = cfg.search_options();
    let mut results = serde_json::Map::new();
    let mut warnings = Vec::new();
    let mut table = CsvTable::new(["statistic", "index", "scale", "value"]);
    let forms: Vec<CriterionForm> = match which {
        "m1" => vec![CriterionForm::M1],
        "m2" => vec![CriterionForm::M2],
        _ => vec![CriterionForm::M1, CriterionForm::M2],
    };
    for form in forms {
        let (key, out) = match form {
            CriterionForm::M1 => ("m1", criterion_m1(&g, &cfg.region, &cfg.quad, &opts)),
            CriterionForm::M2 => ("m2", criterion_m2(&g, &cfg.region, &cfg.quad, &opts)),
        };
        if out.skipped > 0 {
            warnings.push(format!(
                "{key}: skipped {} non-finite grid points",
                out.skipped
            ));
        }
        if out.estimate.divergent {
            warnings.push(format!(
                "{key}: divergent (sup still growing under region doubling)"
            ));
        }
        for (i, l) in out.estimate.levels.iter().enumerate() {
            table.push_row([
                key.to_string(),
                i.to_string(),
                fmt_f64(l.scale),
                fmt_f64(l.sup),
            ]);
        }
        results.insert(key.into(), serde_json::to_value(&out.estimate).unwrap());
        if vanishing {
            let rep =
                boundary_vanishing_check(&g, form, &cfg.region, &cfg.quad, cfg.radii_count, &opts);
            for (k, (r, s)) in rep.radii.iter().zip(rep.sups.iter()).enumerate() {
                table.push_row([
                    format!("{key}-vanishing"),
                    k.to_string(),
                    fmt_f64(*r),
                    fmt_f64(*s),
                ]);
            }
            results.insert(
                format!("vanishing_{key}"),
                serde_json::to_value(&rep).unwrap(),
            );
        }
    }
    let report = Report {
        command: "criteria".into(),
        config: cfg.to_flat_map(),
        inputs: inputs_of(&[
            ("symbol", g.label().to_string()),
            ("which", which.to_string()),
            ("vanishing", vanishing.to_string()),
        ]),
        results: Value::Object(results),
        warnings,
        wall_ms: None,
    };
    Ok(CmdOutput {
        report,
        table,
        nonconverged: false,
    })
}

fn cmd_apply(
    cfg: &RunConfig,
    op: &str,
    symbol: &SymbolArgs,
    function: &FunctionArgs,
    z0: &str,
    z: &str,
) -> Result<CmdOutput, LabError> {
    let kind = OperatorKind::parse(op).ok_or_else(|| ConfigError::new("op", "unknown operator"))?;
    let g = resolve_symbol(symbol)?;
    let f = resolve_function(function)?;
    let z0 = parse_point("z0", z0)?;
    let z = parse_point("z", z)?;
    let result = apply(kind, &g, &f, z0, z, &cfg.quad)?;
    let mut table = CsvTable::new(["value_re", "value_im", "quad_error"]);
    table.push_row([
        fmt_f64(result.value.re),
        fmt_f64(result.value.im),
        fmt_f64(result.quad_error),
    ]);
    let report = Report {
        command: "apply".into(),
        config: cfg.to_flat_map(),
        inputs: inputs_of(&[
            ("op", op.to_string()),
            ("symbol", g.label().to_string()),
            ("function", f.label().to_string()),
            ("z0", z0.to_string()),
            ("z", z.to_string()),
        ]),
        results: serde_json::to_value(result).unwrap(),
        warnings: vec![],
        wall_ms: None,
    };
    Ok(CmdOutput {
        report,
        table,
        nonconverged: false,
    })
}

fn cmd_certify(cfg: &RunConfig, op: &str, symbol: &SymbolArgs) -> Result<CmdOutput, LabError> {
    let kind = OperatorKind::parse(op).ok_or_else(|| ConfigError::new("op", "unknown operator"))?;
    let g = resolve_symbol(symbol)?;
    let opts = cfg.search_options();
    let cert = boundedness_certificate(kind, &g, &cfg.region, &cfg.quad, &opts)?;
    let mut table = CsvTable::new(["index", "scale", "criterion_sup"]);
    for (i, l) in cert.criterion.levels.iter().enumerate() {
        table.push_row([i.to_string(), fmt_f64(l.scale), fmt_f64(l.sup)]);
    }
    let warnings = cert.warnings.clone();
    let report = Report {
        command: "certify".into(),
        config: cfg.to_flat_map(),
        inputs: inputs_of(&[("op", op.to_string()), ("symbol", g.label().to_string())]),
        results: serde_json::to_value(&cert).unwrap(),
        warnings,
        wall_ms: None,
    };
    Ok(CmdOutput {
        report,
        table,
        nonconverged: false,
    })
}

fn cmd_probe(
    cfg: &RunConfig,
    op: &str,
    symbol: &SymbolArgs,
    levels: Option<usize>,
    x_anchor: f64,
) -> Result<CmdOutput, LabError> {
    let kind = OperatorKind::parse(op).ok_or_else(|| ConfigError::new("op", "unknown operator"))?;
    let g = resolve_symbol(symbol)?;
    let opts = cfg.search_options();
    let levels = levels.unwrap_or(cfg.probe_levels);
    let probe = compactness_probe(kind, &g, x_anchor, levels, &cfg.region, &cfg.quad, &opts)?;
    let mut table = CsvTable::new(["n", "re_w", "im_w", "lower_stat", "full_norm", "converged"]);
    for l in &probe.levels {
        table.push_row([
            l.n.to_string(),
            fmt_f64(l.w.x()),
            fmt_f64(l.w.y()),
            fmt_f64(l.lower_stat),
            l.full_norm.map(fmt_f64).unwrap_or_default(),
            l.converged.to_string(),
        ]);
    }
    let nonconverged = probe.levels.iter().any(|l| !l.converged);
    let warnings = probe.warnings.clone();
    let report = Report {
        command: "probe".into(),
        config: cfg.to_flat_map(),
        inputs: inputs_of(&[
            ("op", op.to_string()),
            ("symbol", g.label().to_string()),
            ("levels", levels.to_string()),
            ("x_anchor", x_anchor.to_string()),
        ]),
        results: serde_json::to_value(&probe).unwrap(),
        warnings,
        wall_ms: None,
    };
    Ok(CmdOutput {
        report,
        table,
        nonconverged,
    })
}

fn emit(out: &CmdOutput, format: OutputFormat, output: &Option<PathBuf>) -> Result<(), String> {
    let text = match format {
        OutputFormat::Json => out.report.to_json_string(),
        OutputFormat::Csv => out.table.to_csv_string(),
    };
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Entry point; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };

    let configure = || -> Result<RunConfig, ConfigError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &cli.config {
            cfg.apply_file(path)?;
        }
        for pair in &cli.set {
            cfg.apply_kv(pair)?;
        }
        if let Some(seed) = cli.seed {
            cfg.seed = seed;
        }
        if let Some(jobs) = cli.jobs {
            cfg.jobs = jobs;
        }
        cfg.validate()?;
        Ok(cfg)
    };
    let cfg = match configure() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    let format = match OutputFormat::parse(&cli.format) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };

    let started = Instant::now();

    if let Cmd::Verify { filter } = &cli.cmd {
        let outcome = run_verify(&cfg, filter.as_deref());
        for c in &outcome.checks {
            println!(
                "{} {}/{} - {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.module,
                c.name,
                c.detail
            );
        }
        println!(
            "verify: {} passed, {} failed",
            outcome.passed, outcome.failed
        );
        eprintln!("wall time: {} ms", started.elapsed().as_millis());
        let report = Report {
            command: "verify".into(),
            config: cfg.to_flat_map(),
            inputs: inputs_of(&[(
                "filter",
                filter.clone().unwrap_or_else(|| "<none>".to_string()),
            )]),
            results: serde_json::to_value(&outcome).unwrap(),
            warnings: vec![],
            // omitted so consecutive runs are byte-identical
            wall_ms: None,
        };
        if let Some(path) = &cli.output {
            let text = match format {
                OutputFormat::Json => report.to_json_string(),
                OutputFormat::Csv => {
                    let mut t = CsvTable::new(["module", "name", "pass", "detail"]);
                    for c in &outcome.checks {
                        t.push_row([
                            c.module.to_string(),
                            c.name.to_string(),
                            c.pass.to_string(),
                            c.detail.clone(),
                        ]);
                    }
                    t.to_csv_string()
                }
            };
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("cannot write {}: {e}", path.display());
                return 2;
            }
        }
        return if outcome.all_passed() { 0 } else { 1 };
    }

    let result = match &cli.cmd {
        Cmd::HardyNorm(f) => cmd_hardy_norm(&cfg, f),
        Cmd::Criteria {
            symbol,
            which,
            vanishing,
        } => cmd_criteria(&cfg, symbol, which, *vanishing),
        Cmd::Apply {
            op,
            symbol,
            function,
            z0,
            z,
        } => cmd_apply(&cfg, op, symbol, function, z0, z),
        Cmd::Certify { op, symbol } => cmd_certify(&cfg, op, symbol),
        Cmd::Probe {
            op,
            symbol,
            levels,
            x_anchor,
        } => cmd_probe(&cfg, op, symbol, *levels, *x_anchor),
        Cmd::Verify { .. } => unreachable!("handled above"),
    };

    match result {
        Ok(mut out) => {
            out.report.wall_ms = Some(started.elapsed().as_millis() as u64);
            if let Err(e) = emit(&out, format, &cli.output) {
                eprintln!("{e}");
                return 2;
            }
            if out.nonconverged {
                3
            } else {
                0
            }
        }
        Err(LabError::Config(e)) => {
            eprintln!("{e}");
            2
        }
        Err(LabError::Quad(e)) => {
            eprintln!("quadrature nonconvergence: {e}");
            3
        }
    }
}

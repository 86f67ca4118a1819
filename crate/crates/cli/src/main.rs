//! `mahler`: reproducible commands over the mahler-core library.
//!
//! Exit status: 0 when everything passes, 2 on a numerical tolerance
//! failure, 3 on an exact identity failure, 4 on a usage error, 1 when a
//! computation itself fails.

mod cache;
mod commands;
mod config;

use anyhow::Result;
use cache::Cache;
use clap::{Parser, Subcommand};
use config::{Config, OutputFormat};
use mahler_core::numeric::QuadratureSpec;
use mahler_core::report::REPORT_SCHEMA_VERSION;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

/// Bad flags, unknown ids or an invalid configuration.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

#[derive(Parser, Debug)]
#[command(
    name = "mahler",
    version,
    about = "Mahler measures of linear forms: expansions, operators, L-values and verification"
)]
struct Cli {
    /// Working precision in bits (at least 64).
    #[arg(long, global = true, default_value_t = mahler_core::DEFAULT_PRECISION)]
    precision: u32,
    /// Truncation order for exact identity checks (at least 16).
    #[arg(long = "series-order", global = true, default_value_t = mahler_core::DEFAULT_ORDER)]
    series_order: usize,
    /// Quadrature tolerance as 2^-bits; defaults to precision - 24.
    #[arg(long = "tol-bits", global = true)]
    tol_bits: Option<u32>,
    /// Maximal number of quadrature step halvings.
    #[arg(long = "max-level", global = true)]
    max_level: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
    #[arg(long, global = true, default_value_t = 20240611)]
    seed: u64,
    /// JSON file whose keys override the flags above.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Ignore the on-disk cache even if MAHLER_CACHE_DIR is set.
    #[arg(long = "no-cache", global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact q-expansion of a registry form through q^order.
    Expand {
        form: String,
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
    /// Constant terms of P_n^k for k = 0..M.
    Cterms {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'M')]
        m: usize,
    },
    /// Check that L_n annihilates the series of constant terms.
    CheckOde {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'M', default_value_t = 12)]
        m: usize,
    },
    /// Check the modular parametrization of L_n through q^order.
    CheckParametrization {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long, default_value_t = 150)]
        order: usize,
        #[arg(long, default_value_t = 3)]
        trials: usize,
    },
    /// Boundary terms and right-hand side of the moment transform.
    MomentRhs {
        #[arg(long, value_parser = ["thm1", "thm2", "toy"])]
        case: String,
    },
    /// Single L-value L(form, s).
    Lvalue {
        form: String,
        #[arg(long)]
        s: i64,
        /// Use the Mellin split with the fitted Fricke multiplier (f15 only).
        #[arg(long)]
        mellin: bool,
    },
    /// Double L-value L(g_in, g_out, p, s2).
    DoubleLvalue {
        /// L(g_j, g1, 3, 1) for the meromorphic weight 4 forms.
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=3), conflicts_with_all = ["inner", "outer", "p", "s2"])]
        j: Option<u32>,
        #[arg(long, requires_all = ["outer", "p", "s2"])]
        inner: Option<String>,
        #[arg(long)]
        outer: Option<String>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        s2: Option<i64>,
    },
    /// CM point constants and the integrals c0, c1 - k c0.
    CmConstants,
    /// Quasi-Monte Carlo estimate of m(1 + x1 + ... + xn).
    MahlerDirect {
        #[arg(short = 'n')]
        n: usize,
        /// Sample count, as an integer or a power such as 2^24.
        #[arg(long, value_parser = parse_count, default_value = "2^24")]
        samples: u64,
    },
    /// Run acceptance criteria; nonzero exit on any failure.
    Verify {
        #[arg(long, conflicts_with = "criterion")]
        all: bool,
        /// Criterion number (repeatable).
        #[arg(long)]
        criterion: Vec<usize>,
        #[arg(long = "mahler-samples", value_parser = parse_count, default_value = "2^24")]
        mahler_samples: u64,
    },
}

fn parse_count(s: &str) -> std::result::Result<u64, String> {
    let s = s.trim();
    if let Some((b, e)) = s.split_once('^') {
        let b: u64 = b.trim().parse().map_err(|e| format!("{e}"))?;
        let e: u32 = e.trim().parse().map_err(|e| format!("{e}"))?;
        b.checked_pow(e)
            .ok_or_else(|| "count overflows u64".to_string())
    } else {
        s.parse().map_err(|e| format!("{e}"))
    }
}

impl Cli {
    fn config(&self) -> Result<Config> {
        let mut quadrature = QuadratureSpec::for_precision(self.precision);
        if let Some(b) = self.tol_bits {
            quadrature.tol_bits = b;
        }
        if let Some(l) = self.max_level {
            quadrature.max_level = l;
        }
        let mut cfg = Config {
            precision_bits: self.precision,
            series_order: self.series_order,
            quadrature,
            output: self.output,
            seed: self.seed,
        };
        if let Some(path) = &self.config {
            cfg = cfg.with_file(path)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Expand { .. } => "expand",
        Command::Cterms { .. } => "cterms",
        Command::CheckOde { .. } => "check-ode",
        Command::CheckParametrization { .. } => "check-parametrization",
        Command::MomentRhs { .. } => "moment-rhs",
        Command::Lvalue { .. } => "lvalue",
        Command::DoubleLvalue { .. } => "double-lvalue",
        Command::CmConstants => "cm-constants",
        Command::MahlerDirect { .. } => "mahler-direct",
        Command::Verify { .. } => "verify",
    }
}

fn dispatch(cli: &Cli, cfg: &Config, cache: &Cache) -> Result<commands::Output> {
    use commands::*;
    match &cli.command {
        Command::Expand { form, order } => expand(form, *order, cache),
        Command::Cterms { n, m } => cterms(*n, *m),
        Command::CheckOde { n, m } => check_ode(*n, *m),
        Command::CheckParametrization { n, order, trials } => {
            check_parametrization_cmd(*n, *order, *trials, cfg.seed)
        }
        Command::MomentRhs { case } => moment_rhs(case),
        Command::Lvalue { form, s, mellin } => lvalue(form, *s, *mellin, cfg),
        Command::DoubleLvalue {
            j,
            inner,
            outer,
            p,
            s2,
        } => {
            let pair = match (inner, outer, p, s2) {
                (Some(i), Some(o), Some(p), Some(s)) => Some((i.clone(), o.clone(), *p, *s)),
                _ => None,
            };
            double_lvalue_cmd(*j, pair, cfg)
        }
        Command::CmConstants => cm_constants_cmd(cfg),
        Command::MahlerDirect { n, samples } => mahler_direct_cmd(*n, *samples, cfg.seed),
        Command::Verify {
            all,
            criterion,
            mahler_samples,
        } => {
            let list: Vec<usize> = if *all {
                (1..=mahler_core::verify::CRITERIA.len()).collect()
            } else if !criterion.is_empty() {
                criterion.clone()
            } else {
                return Err(UsageError("verify needs --all or --criterion N".into()).into());
            };
            verify(&list, *mahler_samples, cfg, cache)
        }
    }
}

fn csv_field(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

/// key,value rows for the top-level fields of a result object.
fn flat_csv(v: &Value) -> String {
    let mut out = String::from("key,value\n");
    if let Value::Object(map) = v {
        for (k, x) in map {
            let s = match x {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{},{}\n", csv_field(k), csv_field(&s)));
        }
    }
    out
}

fn render(cmd: &str, cfg: &Config, out: &commands::Output) -> Result<String> {
    Ok(match cfg.output {
        OutputFormat::Text => out.text.clone(),
        OutputFormat::Csv => match &out.report {
            Some(r) => r.to_csv(),
            None => flat_csv(&out.result),
        },
        OutputFormat::Json => {
            let mut doc = json!({
                "schema_version": REPORT_SCHEMA_VERSION,
                "command": cmd,
                "config": cfg,
                "result": out.result,
            });
            if let Some(r) = &out.report {
                doc["rows"] = serde_json::to_value(&r.rows)?;
            }
            format!("{}\n", serde_json::to_string_pretty(&doc)?)
        }
    })
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 4;
    }
    match err.downcast_ref::<mahler_core::Error>() {
        Some(
            mahler_core::Error::UnknownForm(_)
            | mahler_core::Error::PrecisionTooLow(..)
            | mahler_core::Error::InvalidArgument(_)
            | mahler_core::Error::Parse(_),
        ) => 4,
        _ => 1,
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let cfg = cli.config()?;
    let cache = if cli.no_cache {
        Cache::disabled()
    } else {
        Cache::from_env()
    };
    let out = dispatch(cli, &cfg, &cache)?;
    print!("{}", render(command_name(&cli.command), &cfg, &out)?);
    Ok(out.report.as_ref().map_or(0, |r| r.exit_code() as u8))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 4 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

//! Command-line front end: zero-table validation, secondary-zeta samples,
//! Li coefficients by every route, asymptotic comparisons, the off-axis
//! sandbox, and cumulant tables, emitted as CSV or JSON with optional
//! gnuplot scripts.

mod output;

use clap::{Args, Parser, Subcommand};
use li_lab::asymptotics::{predict_rh_false, predict_riemann};
use li_lab::cumulants::{cumulant_prime_sum, cumulant_series, s_n, StieltjesTable};
use li_lab::li::{
    lambda_binomial, lambda_cauchy_batch, lambda_zero_sum_batch, precision_for, LambdaValue,
    Method,
};
use li_lab::numerics::{CFloat, PrecisionContext};
use li_lab::sandbox::analyze as sandbox_analyze;
use li_lab::secondary_zeta::{z_continued, z_eval, z_integer_batch, TailModel};
use li_lab::zeros::ZeroTable;
use output::{fmt_float, RunReport};
use rug::Float;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_DEVIATION: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "li-lab",
    about = "Li coefficients of the Riemann xi function, the secondary zeta function over the zeros, and the asymptotic dichotomy",
    version
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Serialize, Deserialize)]
struct GlobalArgs {
    /// Working mantissa precision in bits
    #[arg(long, global = true, default_value_t = 256)]
    bits: u32,
    /// Zero-ordinate file (one ascending ordinate per line, # comments)
    #[arg(long, global = true, env = "LI_LAB_ZEROS")]
    zeros: Option<PathBuf>,
    /// Decimal places declared by the zeros file
    #[arg(long, global = true)]
    zeros_digits: Option<u32>,
    /// Tail cutoff height (default: the table height)
    #[arg(long = "tail-T", global = true)]
    tail_t: Option<f64>,
    /// Tail expansion order
    #[arg(long = "tail-K", global = true)]
    tail_k: Option<usize>,
    /// Output format
    #[arg(long, global = true, default_value = "csv", value_parser = ["csv", "json"])]
    format: String,
    /// Also write <prefix>.dat and a gnuplot script <prefix>.gp
    #[arg(long, global = true)]
    plot: Option<Option<String>>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Zero-table operations
    Zeros {
        #[command(subcommand)]
        action: ZerosAction,
    },
    /// Secondary zeta function over the zero pairs
    Z {
        #[command(subcommand)]
        action: ZAction,
    },
    /// Li coefficients over a range of indices
    Lambda {
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        #[arg(long, default_value = "zero-sum", value_parser = ["zero-sum", "binomial", "cauchy", "all"])]
        method: String,
    },
    /// Compare computed coefficients against the on-axis predictor
    Compare {
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        #[arg(long, default_value_t = 1)]
        step: u32,
        /// Include the +7/4 continuation correction in the predictor
        #[arg(long)]
        delta: bool,
    },
    /// Off-axis sandbox: inject a hypothetical zero pair and watch the
    /// dichotomy develop
    Sandbox {
        /// Off-axis ordinate as RE,IM (Im != 0)
        #[arg(long = "tau-star")]
        tau_star: String,
        /// Base table: "bundled", "empty", or a path
        #[arg(long, default_value = "bundled")]
        base: String,
        #[arg(long)]
        to: u32,
    },
    /// Stieltjes cumulants by the series route (optionally the prime-sum
    /// route) and the combinations S_n
    Cumulants {
        #[arg(long)]
        to: u32,
        /// Also run the prime-sum route with this sieve bound
        #[arg(long = "prime-sum")]
        prime_sum: Option<u64>,
    },
    /// The combinations S_n and the S_n/n trend
    Sn {
        #[arg(long)]
        to: u32,
    },
}

#[derive(Subcommand, Debug)]
enum ZerosAction {
    /// Load and validate an ordinate table, reporting count, height, and
    /// checksum
    Validate,
}

#[derive(Subcommand, Debug)]
enum ZAction {
    /// Evaluate Z(sigma); real sigma inside (-1/4, 1/2) uses the analytic
    /// continuation
    Eval {
        /// Re(sigma)
        #[arg(long)]
        sigma: f64,
        /// Im(sigma)
        #[arg(long, default_value_t = 0.0)]
        sigma_im: f64,
    },
}

/// Effective configuration echoed with every run.
#[derive(Debug, Serialize)]
struct RunConfig {
    command: String,
    bits: u32,
    derived_bits: u32,
    zeros: String,
    zeros_digits: u32,
    tail_cutoff: Option<f64>,
    tail_expansion_order: usize,
    format: String,
    plot: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not usage errors
            use clap::error::ErrorKind::{DisplayHelp, DisplayVersion};
            let code = if matches!(e.kind(), DisplayHelp | DisplayVersion) {
                EXIT_OK
            } else {
                EXIT_USAGE
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

#[derive(Debug)]
struct CliError {
    message: String,
    code: u8,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        Self {
            message: msg.into(),
            code: EXIT_USAGE,
        }
    }
    fn validation(msg: impl Into<String>) -> Self {
        Self {
            message: msg.into(),
            code: EXIT_VALIDATION,
        }
    }
    fn exit_code(&self) -> u8 {
        self.code
    }
}

macro_rules! validation {
    ($e:expr) => {
        $e.map_err(|err| CliError::validation(err.to_string()))
    };
}

struct Workspace {
    table: ZeroTable,
    tail: TailModel,
    ctx: PrecisionContext,
    config: RunConfig,
}

fn load_table(global: &GlobalArgs) -> Result<(ZeroTable, String, u32), CliError> {
    match &global.zeros {
        Some(path) => {
            let digits = global.zeros_digits.unwrap_or(9);
            let table = validation!(ZeroTable::load(path, digits))?;
            Ok((table, path.display().to_string(), digits))
        }
        None => {
            let path = li_lab::bundled_data_path("zeros-first100.txt");
            let digits = global.zeros_digits.unwrap_or(30);
            let table = validation!(ZeroTable::load(&path, digits))?;
            Ok((table, format!("{} (bundled)", path.display()), digits))
        }
    }
}

fn workspace(global: &GlobalArgs, command: &str, derived_bits: u32) -> Result<Workspace, CliError> {
    if global.bits < 64 {
        return Err(CliError::usage("--bits must be at least 64"));
    }
    let (table, zeros_name, digits) = load_table(global)?;
    let ctx = PrecisionContext::new(derived_bits);
    let mut tail = validation!(TailModel::for_table(&table, &ctx))?;
    if let Some(t) = global.tail_t {
        tail = validation!(tail.with_cutoff(ctx.real(t), &table))?;
    }
    if let Some(k) = global.tail_k {
        tail = validation!(tail.with_expansion_order(k))?;
    }
    let config = RunConfig {
        command: command.to_string(),
        bits: global.bits,
        derived_bits,
        zeros: zeros_name,
        zeros_digits: digits,
        tail_cutoff: Some(tail.cutoff().to_f64()),
        tail_expansion_order: tail.expansion_order(),
        format: global.format.clone(),
        plot: plot_prefix(global, command),
    };
    Ok(Workspace {
        table,
        tail,
        ctx,
        config,
    })
}

fn plot_prefix(global: &GlobalArgs, command: &str) -> Option<String> {
    global
        .plot
        .as_ref()
        .map(|p| p.clone().unwrap_or_else(|| format!("li-lab-{command}")))
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let global = &cli.global;
    match &cli.command {
        Command::Zeros {
            action: ZerosAction::Validate,
        } => cmd_zeros_validate(global),
        Command::Z {
            action: ZAction::Eval { sigma, sigma_im },
        } => cmd_z_eval(global, *sigma, *sigma_im),
        Command::Lambda { from, to, method } => cmd_lambda(global, *from, *to, method),
        Command::Compare {
            from,
            to,
            step,
            delta,
        } => cmd_compare(global, *from, *to, *step, *delta),
        Command::Sandbox { tau_star, base, to } => cmd_sandbox(global, tau_star, base, *to),
        Command::Cumulants { to, prime_sum } => cmd_cumulants(global, *to, *prime_sum),
        Command::Sn { to } => cmd_sn(global, *to),
    }
}

// ---------------------------------------------------------------------------
// zeros validate
// ---------------------------------------------------------------------------

fn cmd_zeros_validate(global: &GlobalArgs) -> Result<u8, CliError> {
    let (table, name, digits) = load_table(global)?;
    let meta = table.metadata();
    if global.format == "json" {
        println!(
            "{}",
            serde_json::to_string_pretty(&meta).expect("metadata serializes")
        );
    } else {
        println!(
            "OK, {} zeros, T≈{:.1}, {} declared decimals, sha256 {}",
            meta.count, meta.height_cutoff, digits, meta.checksum_sha256
        );
        println!("source: {name}");
        println!("density band: satisfied at every index");
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// z eval
// ---------------------------------------------------------------------------

fn cmd_z_eval(global: &GlobalArgs, sigma: f64, sigma_im: f64) -> Result<u8, CliError> {
    let ws = workspace(global, "z-eval", global.bits)?;
    let wp = ws.ctx.working_bits();
    let value = if sigma_im == 0.0 && (-0.25..0.5).contains(&sigma) {
        validation!(z_continued(
            &Float::with_val(wp, sigma),
            &ws.table,
            &ws.tail,
            &ws.ctx
        ))?
    } else {
        validation!(z_eval(
            &CFloat::with_val(wp, sigma, sigma_im),
            &ws.table,
            &ws.tail,
            &ws.ctx
        ))?
        .into_real()
    };
    let sig = sig_digits(ws.config.derived_bits);
    let mut report = RunReport::new(&ws.config, vec!["sigma", "value", "abs_error", "error_kind"]);
    report.push(vec![
        if sigma_im == 0.0 {
            format!("{sigma}")
        } else {
            format!("{sigma}+{sigma_im}i")
        },
        fmt_float(&value.value, sig),
        fmt_float(&value.abs_error, 6),
        format!("{:?}", value.kind).to_lowercase(),
    ]);
    report.emit(&ws.config)?;
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// lambda
// ---------------------------------------------------------------------------

fn sig_digits(bits: u32) -> usize {
    20.max((bits as f64 * 0.3).ceil() as usize)
}

fn cmd_lambda(global: &GlobalArgs, from: u32, to: u32, method: &str) -> Result<u8, CliError> {
    if from < 1 || from > to {
        return Err(CliError::usage("need 1 <= --from <= --to"));
    }
    let needs_binomial = method == "binomial" || method == "all";
    let needs_cauchy = method == "cauchy" || method == "all";
    let derived = if needs_binomial {
        global.bits.max(precision_for(to))
    } else {
        global.bits
    };
    let ws = workspace(global, "lambda", derived)?;
    let ns: Vec<u32> = (from..=to).collect();
    let sig = sig_digits(derived);

    let zero_sum = if method == "zero-sum" || method == "all" {
        Some(validation!(lambda_zero_sum_batch(
            &ns, &ws.table, Some(&ws.tail), &ws.ctx
        ))?)
    } else {
        None
    };
    let binomial: Option<Vec<LambdaValue>> = if needs_binomial {
        let zs = validation!(z_integer_batch(to as usize, &ws.table, &ws.tail, &ws.ctx))?;
        let vals = ns
            .iter()
            .map(|&n| lambda_binomial(n, &zs, &ws.ctx))
            .collect::<Result<Vec<_>, _>>();
        Some(validation!(vals)?)
    } else {
        None
    };
    let cauchy = if needs_cauchy {
        let radius = ws.ctx.real(0.9f64);
        let q = (4 * to + 1).next_power_of_two().max(512) as usize;
        Some(validation!(lambda_cauchy_batch(&ns, &radius, q, &ws.ctx))?)
    } else {
        None
    };

    let mut exit = EXIT_OK;
    let mut report;
    if method == "all" {
        report = RunReport::new(
            &ws.config,
            vec![
                "n",
                "zero_sum",
                "zero_sum_abs_error",
                "binomial",
                "binomial_abs_error",
                "cauchy",
                "cauchy_abs_error",
                "max_pairwise_deviation",
                "within_combined_errors",
            ],
        );
        let a = zero_sum.as_ref().unwrap();
        let b = binomial.as_ref().unwrap();
        let c = cauchy.as_ref().unwrap();
        for (i, &n) in ns.iter().enumerate() {
            let pairs = [(&a[i], &b[i]), (&b[i], &c[i]), (&a[i], &c[i])];
            let mut max_dev = Float::new(ws.ctx.working_bits());
            let mut ok = true;
            for (x, y) in pairs {
                let dev = Float::with_val(
                    ws.ctx.working_bits(),
                    &x.value.value - &y.value.value,
                )
                .abs();
                if !x.value.agrees_with(&y.value) {
                    ok = false;
                }
                if dev > max_dev {
                    max_dev = dev;
                }
            }
            if !ok {
                exit = EXIT_DEVIATION;
            }
            report.push(vec![
                n.to_string(),
                fmt_float(&a[i].value.value, sig),
                fmt_float(&a[i].value.abs_error, 6),
                fmt_float(&b[i].value.value, sig),
                fmt_float(&b[i].value.abs_error, 6),
                fmt_float(&c[i].value.value, sig),
                fmt_float(&c[i].value.abs_error, 6),
                fmt_float(&max_dev, 6),
                ok.to_string(),
            ]);
        }
    } else {
        report = RunReport::new(&ws.config, vec!["n", "value", "abs_error", "method"]);
        let (rows, tag): (&Vec<LambdaValue>, &str) = match method {
            "zero-sum" => (zero_sum.as_ref().unwrap(), Method::ZeroSum.as_str()),
            "binomial" => (binomial.as_ref().unwrap(), Method::Binomial.as_str()),
            _ => (cauchy.as_ref().unwrap(), Method::Cauchy.as_str()),
        };
        for v in rows {
            report.push(vec![
                v.n.to_string(),
                fmt_float(&v.value.value, sig),
                fmt_float(&v.value.abs_error, 6),
                tag.to_string(),
            ]);
        }
    }
    report.emit(&ws.config)?;
    Ok(exit)
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

fn cmd_compare(global: &GlobalArgs, from: u32, to: u32, step: u32, delta: bool) -> Result<u8, CliError> {
    if from < 1 || from > to || step == 0 {
        return Err(CliError::usage("need 1 <= --from <= --to and --step >= 1"));
    }
    let ws = workspace(global, "compare", global.bits)?;
    let ns: Vec<u32> = (from..=to).step_by(step as usize).collect();
    let lambdas = validation!(lambda_zero_sum_batch(&ns, &ws.table, Some(&ws.tail), &ws.ctx))?;
    let sig = sig_digits(global.bits);

    let mut report = RunReport::new(
        &ws.config,
        vec!["n", "lambda", "predictor", "difference", "relative_difference"],
    );
    let wp = ws.ctx.working_bits();
    let mut top_half_devs: Vec<(f64, f64)> = Vec::new(); // (without delta, with delta)
    let half_point = from + (to - from) / 2;
    for (i, &n) in ns.iter().enumerate() {
        let pred = predict_riemann(n, delta, &ws.ctx);
        let diff = Float::with_val(wp, &lambdas[i].value.value - &pred);
        let rel = Float::with_val(wp, &diff / &lambdas[i].value.value);
        if n >= half_point {
            let plain = predict_riemann(n, false, &ws.ctx);
            let d0 = Float::with_val(wp, &lambdas[i].value.value - &plain).to_f64();
            top_half_devs.push((d0, d0 - 1.75));
        }
        report.push(vec![
            n.to_string(),
            fmt_float(&lambdas[i].value.value, sig),
            fmt_float(&pred, sig),
            fmt_float(&diff, 8),
            fmt_float(&rel, 6),
        ]);
    }
    if ns.len() >= 8 {
        let count = top_half_devs.len() as f64;
        let mean_without: f64 = top_half_devs.iter().map(|d| d.0).sum::<f64>() / count;
        let mean_with: f64 = top_half_devs.iter().map(|d| d.1).sum::<f64>() / count;
        report.summary(format!(
            "mean signed deviation over n >= {half_point}: {mean_without:+.6} without the 7/4 term, {mean_with:+.6} with it; improved in the mean: {}",
            mean_with.abs() < mean_without.abs()
        ));
    }
    report.emit(&ws.config)?;
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// sandbox
// ---------------------------------------------------------------------------

fn parse_tau(text: &str) -> Result<(f64, f64), CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::usage(
            "--tau-star expects RE,IM (for example 50,2)",
        ));
    }
    let re: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| CliError::usage("cannot parse Re(tau*)"))?;
    let im: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| CliError::usage("cannot parse Im(tau*)"))?;
    Ok((re, im))
}

fn cmd_sandbox(global: &GlobalArgs, tau_star: &str, base: &str, to: u32) -> Result<u8, CliError> {
    if to < 8 {
        return Err(CliError::usage("--to must be at least 8"));
    }
    let (re, im) = parse_tau(tau_star)?;
    let ws_bits = global.bits;
    let ctx = PrecisionContext::new(ws_bits);
    let wp = ctx.working_bits();

    let base_table = match base {
        "empty" => ZeroTable::synthetic(vec![]),
        "bundled" => {
            let path = li_lab::bundled_data_path("zeros-first100.txt");
            validation!(ZeroTable::load(&path, 30))?
        }
        path => validation!(ZeroTable::load(std::path::Path::new(path), global.zeros_digits.unwrap_or(9)))?,
    };
    let tau = CFloat::with_val(wp, re, im);
    let synthetic = validation!(base_table.inject_off_axis(&tau))?;

    let ns: Vec<u32> = (1..=to).collect();
    let tail = if synthetic.height_cutoff().is_some() {
        Some(validation!(TailModel::for_table(&synthetic, &ctx))?)
    } else {
        None
    };
    let lambdas = validation!(lambda_zero_sum_batch(&ns, &synthetic, tail.as_ref(), &ctx))?;
    let base_lambdas = validation!(lambda_zero_sum_batch(&ns, &base_table, tail.as_ref(), &ctx))?;

    let lam_f: Vec<f64> = lambdas.iter().map(|l| l.value.value.to_f64()).collect();
    let base_f: Vec<f64> = base_lambdas.iter().map(|l| l.value.value.to_f64()).collect();
    let analysis = sandbox_analyze(&lam_f, &base_f, (re, im));

    let off_axis = vec![tau.clone()];
    let sig = sig_digits(ws_bits);
    let config = RunConfig {
        command: "sandbox".into(),
        bits: ws_bits,
        derived_bits: ws_bits,
        zeros: format!("{base} + tau* = {re}+{im}i"),
        zeros_digits: global.zeros_digits.unwrap_or(30),
        tail_cutoff: tail.as_ref().map(|t| t.cutoff().to_f64()),
        tail_expansion_order: tail.as_ref().map(|t| t.expansion_order()).unwrap_or(0),
        format: global.format.clone(),
        plot: plot_prefix(global, "sandbox"),
    };
    let mut report = RunReport::new(
        &config,
        vec![
            "n",
            "lambda",
            "rh_true_predictor",
            "off_axis_predictor",
            "abs_deviation",
            "footprint",
        ],
    );
    for (i, &n) in ns.iter().enumerate() {
        let pred = predict_riemann(n, false, &ctx);
        let off = validation!(predict_rh_false(n, &off_axis, &ctx))?;
        let dev = Float::with_val(wp, &lambdas[i].value.value - &pred).abs();
        report.push(vec![
            n.to_string(),
            fmt_float(&lambdas[i].value.value, sig),
            fmt_float(&pred, sig),
            fmt_float(&off.value, sig),
            fmt_float(&dev, 8),
            format!("{:.8e}", lam_f[i] - base_f[i]),
        ]);
    }
    report.summary(format!(
        "fitted footprint growth rate {:.6e} vs theoretical log-modulus rate {:.6e} (rel dev {:+.2}%)",
        analysis.fitted_rate,
        analysis.theoretical_rate,
        (analysis.fitted_rate / analysis.theoretical_rate - 1.0) * 100.0
    ));
    report.summary(match analysis.first_negative {
        Some(n) => format!("first lambda_n < 0 at n = {n} (Li-criterion violation witness)"),
        None => "no lambda_n < 0 in range (violation lies beyond this horizon)".into(),
    });
    report.summary(match analysis.excess_onset {
        Some(n) => format!(
            "off-axis excess exceeds 1 from n = {n} (theoretical onset scale {:.0})",
            analysis.theoretical_onset
        ),
        None => "off-axis excess stays below 1 in range".into(),
    });
    report.emit(&config)?;
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// cumulants / sn
// ---------------------------------------------------------------------------

fn bundled_stieltjes() -> Result<StieltjesTable, CliError> {
    validation!(StieltjesTable::ingest(
        &li_lab::bundled_data_path("stieltjes-512.txt"),
        550
    ))
}

fn cmd_cumulants(global: &GlobalArgs, to: u32, prime_sum: Option<u64>) -> Result<u8, CliError> {
    if to < 1 {
        return Err(CliError::usage("--to must be at least 1"));
    }
    let derived = global.bits.max(4 * to + 96);
    let ctx = PrecisionContext::new(derived);
    let table = bundled_stieltjes()?;
    let sig = sig_digits(derived);

    let mut columns = vec!["n", "g_series", "g_series_abs_error"];
    if prime_sum.is_some() {
        columns.push("g_prime_sum");
        columns.push("g_prime_sum_abs_error");
    }
    columns.push("s_n");
    columns.push("s_n_over_n");
    let config = RunConfig {
        command: "cumulants".into(),
        bits: global.bits,
        derived_bits: derived,
        zeros: "(not used)".into(),
        zeros_digits: 0,
        tail_cutoff: None,
        tail_expansion_order: 0,
        format: global.format.clone(),
        plot: plot_prefix(global, "cumulants"),
    };
    let mut report = RunReport::new(&config, columns);
    for n in 1..=to {
        let series = validation!(cumulant_series(n, &table, &ctx))?;
        let s = validation!(s_n(n, &table, &ctx))?;
        let s_over = Float::with_val(ctx.working_bits(), &s.value / n);
        let mut row = vec![
            n.to_string(),
            fmt_float(&series.g.value, sig),
            fmt_float(&series.g.abs_error, 6),
        ];
        if let Some(bound) = prime_sum {
            let p = validation!(cumulant_prime_sum(n, bound))?;
            row.push(fmt_float(&p.g.value, 20));
            row.push(fmt_float(&p.g.abs_error, 6));
        }
        row.push(fmt_float(&s.value, sig));
        row.push(fmt_float(&s_over, sig));
        report.push(row);
    }
    report.emit(&config)?;
    Ok(EXIT_OK)
}

fn cmd_sn(global: &GlobalArgs, to: u32) -> Result<u8, CliError> {
    if to < 1 {
        return Err(CliError::usage("--to must be at least 1"));
    }
    let derived = global.bits.max(4 * to + 96);
    let ctx = PrecisionContext::new(derived);
    let table = bundled_stieltjes()?;
    let sig = sig_digits(derived);
    let config = RunConfig {
        command: "sn".into(),
        bits: global.bits,
        derived_bits: derived,
        zeros: "(not used)".into(),
        zeros_digits: 0,
        tail_cutoff: None,
        tail_expansion_order: 0,
        format: global.format.clone(),
        plot: plot_prefix(global, "sn"),
    };
    let mut report = RunReport::new(&config, vec!["n", "s_n", "abs_error", "s_n_over_n"]);
    for n in 1..=to {
        let s = validation!(s_n(n, &table, &ctx))?;
        let s_over = Float::with_val(ctx.working_bits(), &s.value / n);
        report.push(vec![
            n.to_string(),
            fmt_float(&s.value, sig),
            fmt_float(&s.abs_error, 6),
            fmt_float(&s_over, sig),
        ]);
    }
    report.emit(&config)?;
    Ok(EXIT_OK)
}

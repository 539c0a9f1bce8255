//! Batch driver: evaluate the special function solutions by all three
//! routes, classify their small-x regimes, expand them on the exponent
//! lattice, continue them along complex paths, sample complex rectangles,
//! and run the verification suite.

mod output;
mod parse;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex;
use output::{JetOut, RegimeOut};
use p3fox::asymptotics::{delta_leading, u_leading, u_regime};
use p3fox::expansion::expand_u;
use p3fox::ode::{seed_from_expansion, trace, ChartState, GridSpec};
use p3fox::painleve::{u_n_backlund, u_n_determinant, u_n_recurrence, SolutionParams};
use serde::Serialize;
use std::io::Write;

type C64 = Complex<f64>;

#[derive(Parser)]
#[command(
    name = "p3fox",
    about = "Bessel-kernel Painleve-III solutions: evaluation, asymptotics, expansion, continuation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SolutionArgs {
    /// Solution index n (number of Backlund steps above the Riccati seed)
    #[arg(long, default_value_t = 0)]
    n: u32,
    /// Parameter alpha; accepts a+bi and p/q literals
    #[arg(long, default_value = "0.98", value_parser = parse::parse_complex, allow_hyphen_values = true)]
    alpha: C64,
    /// Cylinder coefficient on J_nu
    #[arg(long, default_value = "1", value_parser = parse::parse_complex, allow_hyphen_values = true)]
    d1: C64,
    /// Cylinder coefficient on Y_nu
    #[arg(long, default_value = "0", value_parser = parse::parse_complex, allow_hyphen_values = true)]
    d2: C64,
}

#[derive(Args, Clone)]
struct IoArgs {
    /// Output format for structured results
    #[arg(long, default_value = "csv", value_parser = ["csv", "json"])]
    format: String,
    /// Output file (stdout when omitted)
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate u_n(x) by the determinant, Backlund and recurrence routes
    Eval {
        #[command(flatten)]
        sol: SolutionArgs,
        /// Evaluation point x (complex)
        #[arg(long, value_parser = parse::parse_complex, allow_hyphen_values = true)]
        x: C64,
        /// Also print the leading-term value and the ratio against it
        #[arg(long)]
        compare_asym: bool,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Small-x regime records for Delta_n and u_n (single alpha or a scan)
    Asym {
        #[command(flatten)]
        sol: SolutionArgs,
        /// Scan Re(alpha) over a:b:step instead of using --alpha
        #[arg(long, value_parser = parse::parse_scan, allow_hyphen_values = true)]
        alpha_scan: Option<parse::Scan>,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Detailed small-x expansion coefficients on the exponent lattice
    Expand {
        #[command(flatten)]
        sol: SolutionArgs,
        /// Exponent budget above the leading power
        #[arg(long, default_value_t = 12.0)]
        budget: f64,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Continue u_n along a complex path, crossing poles by chart inversion
    Trace {
        #[command(flatten)]
        sol: SolutionArgs,
        /// Start point (seeded from the expansion when |x0| < 0.15,
        /// from the determinant evaluation otherwise)
        #[arg(long, default_value = "0.05", value_parser = parse::parse_complex, allow_hyphen_values = true)]
        x0: C64,
        /// End point of the trace
        #[arg(long, value_parser = parse::parse_complex, allow_hyphen_values = true)]
        x1: Option<C64>,
        /// Intermediate waypoints, comma separated complex literals
        #[arg(long, value_parser = parse::parse_path, allow_hyphen_values = true)]
        path: Option<parse::Waypoints>,
        /// Error tolerance per unit path length
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Expansion budget for near-origin seeding
        #[arg(long, default_value_t = 12.0)]
        budget: f64,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Sample u_n on a complex rectangle with pole markers
    Grid {
        #[command(flatten)]
        sol: SolutionArgs,
        /// Rectangle xmin,xmax,ymin,ymax
        #[arg(long, value_parser = parse::parse_rect, allow_hyphen_values = true)]
        rect: (f64, f64, f64, f64),
        /// Columns
        #[arg(long, default_value_t = 61)]
        nx: usize,
        /// Rows
        #[arg(long, default_value_t = 61)]
        ny: usize,
        /// Error tolerance per unit path length
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Expansion budget for the seed
        #[arg(long, default_value_t = 12.0)]
        budget: f64,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Run the module property suites and report pass/fail counts
    Verify {
        /// Seed for the randomized identity checks
        #[arg(long, default_value_t = 20240817)]
        seed: u64,
        #[command(flatten)]
        io: IoArgs,
    },
}

fn solution_params(sol: &SolutionArgs) -> Result<SolutionParams<f64>, p3fox::Error> {
    SolutionParams::new(sol.n, sol.alpha, sol.d1, sol.d2)
}

#[derive(Serialize)]
struct EvalOut {
    n: u32,
    alpha: [f64; 2],
    x: [f64; 2],
    determinant: JetOut,
    backlund: JetOut,
    recurrence: JetOut,
    diff_det_backlund: f64,
    diff_det_recurrence: f64,
    diff_backlund_recurrence: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    leading: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio_to_leading: Option<[f64; 2]>,
}

fn run_eval(
    sol: &SolutionArgs,
    x: C64,
    compare_asym: bool,
    io: &IoArgs,
) -> Result<String, p3fox::Error> {
    let params = solution_params(sol)?;
    let det = u_n_determinant(&params, x)?;
    let bac = u_n_backlund(&params, x)?;
    let rec = u_n_recurrence(&params, x)?;
    let (leading, ratio) = if compare_asym {
        let lead = u_leading(&params, x)?;
        let ratio = det.u / lead;
        (Some([lead.re, lead.im]), Some([ratio.re, ratio.im]))
    } else {
        (None, None)
    };
    let out = EvalOut {
        n: params.n,
        alpha: [params.alpha.re, params.alpha.im],
        x: [x.re, x.im],
        determinant: JetOut::new(det.u, det.du),
        backlund: JetOut::new(bac.u, bac.du),
        recurrence: JetOut::new(rec.u, rec.du),
        diff_det_backlund: (det.u - bac.u).norm(),
        diff_det_recurrence: (det.u - rec.u).norm(),
        diff_backlund_recurrence: (bac.u - rec.u).norm(),
        leading,
        ratio_to_leading: ratio,
    };
    if io.format == "json" {
        return Ok(serde_json::to_string_pretty(&out).expect("serialize") + "\n");
    }
    let mut s = String::from("quantity,re,im\n");
    for (name, v) in [
        ("u_determinant", out.determinant.u),
        ("du_determinant", out.determinant.du),
        ("u_backlund", out.backlund.u),
        ("du_backlund", out.backlund.du),
        ("u_recurrence", out.recurrence.u),
        ("du_recurrence", out.recurrence.du),
    ] {
        s.push_str(&format!("{name},{},{}\n", v[0], v[1]));
    }
    s.push_str(&format!("diff_det_backlund,{},0\n", out.diff_det_backlund));
    s.push_str(&format!("diff_det_recurrence,{},0\n", out.diff_det_recurrence));
    s.push_str(&format!("diff_backlund_recurrence,{},0\n", out.diff_backlund_recurrence));
    if let (Some(l), Some(r)) = (out.leading, out.ratio_to_leading) {
        s.push_str(&format!("leading,{},{}\n", l[0], l[1]));
        s.push_str(&format!("ratio_to_leading,{},{}\n", r[0], r[1]));
    }
    Ok(s)
}

#[derive(Serialize)]
struct AsymOut {
    alpha: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<RegimeOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    u: Option<RegimeOut>,
}

fn asym_record(params: &SolutionParams<f64>) -> AsymOut {
    AsymOut {
        alpha: [params.alpha.re, params.alpha.im],
        delta: delta_leading(params).ok().map(|r| RegimeOut::new(&r)),
        u: u_regime(params).ok().map(|r| RegimeOut::new(&r)),
    }
}

fn run_asym(
    sol: &SolutionArgs,
    scan: &Option<parse::Scan>,
    io: &IoArgs,
) -> Result<String, p3fox::Error> {
    let base = solution_params(sol)?;
    match scan {
        None => {
            let rec = asym_record(&base);
            if rec.delta.is_none() && rec.u.is_none() {
                // surface the classification error for a single-point query
                delta_leading(&base)?;
            }
            if io.format == "json" {
                Ok(serde_json::to_string_pretty(&rec).expect("serialize") + "\n")
            } else {
                let mut s = String::from("quantity,value1,value2\n");
                if let Some(d) = &rec.delta {
                    d.csv_rows(&mut s);
                }
                if let Some(u) = &rec.u {
                    u.csv_rows(&mut s);
                }
                Ok(s)
            }
        }
        Some(parse::Scan(alphas)) => {
            let records: Vec<AsymOut> = alphas
                .iter()
                .map(|&a| {
                    let p = SolutionParams::new(base.n, Complex::new(a, 0.0), base.d1, base.d2)
                        .expect("d coefficients validated");
                    asym_record(&p)
                })
                .collect();
            if io.format == "json" {
                return Ok(serde_json::to_string_pretty(&records).expect("serialize") + "\n");
            }
            let mut s = String::from(
                "alpha,delta_case,delta_j,delta_rc,delta_exp_re,delta_exp_im,\
                 u_case,u_j,u_exp_re,u_exp_im\n",
            );
            let opt = |v: Option<u32>| v.map_or(String::new(), |x| x.to_string());
            for r in &records {
                let (dc, dj, drc, dex, dey) = match &r.delta {
                    Some(d) => (
                        d.case.to_string(),
                        opt(d.j),
                        opt(d.r_c),
                        d.exponent[0].to_string(),
                        d.exponent[1].to_string(),
                    ),
                    None => Default::default(),
                };
                let (uc, uj, uex, uey) = match &r.u {
                    Some(u) => (
                        u.case.to_string(),
                        opt(u.j),
                        u.exponent[0].to_string(),
                        u.exponent[1].to_string(),
                    ),
                    None => Default::default(),
                };
                s.push_str(&format!(
                    "{},{dc},{dj},{drc},{dex},{dey},{uc},{uj},{uex},{uey}\n",
                    r.alpha[0]
                ));
            }
            Ok(s)
        }
    }
}

fn run_expand(sol: &SolutionArgs, budget: f64, io: &IoArgs) -> Result<String, p3fox::Error> {
    let params = solution_params(sol)?;
    let series = expand_u(&params, budget)?;
    if io.format == "json" {
        Ok(serde_json::to_string_pretty(&output::expand_json(&series)).expect("serialize") + "\n")
    } else {
        Ok(output::expand_csv(&series))
    }
}

fn start_state(
    params: &SolutionParams<f64>,
    x0: C64,
    budget: f64,
) -> Result<ChartState<f64>, p3fox::Error> {
    if x0.norm() < 0.15 {
        Ok(seed_from_expansion(params, x0, budget)?.0)
    } else {
        let jet = u_n_determinant(params, x0)?;
        Ok(ChartState::from_jet(&jet, params.equation_params()))
    }
}

#[allow(clippy::too_many_arguments)]
fn run_trace(
    sol: &SolutionArgs,
    x0: C64,
    x1: Option<C64>,
    path: &Option<parse::Waypoints>,
    tol: f64,
    budget: f64,
    io: &IoArgs,
) -> Result<String, p3fox::Error> {
    let params = solution_params(sol)?;
    let mut waypoints = path.clone().map_or_else(Vec::new, |w| w.0);
    if let Some(end) = x1 {
        waypoints.push(end);
    }
    if waypoints.is_empty() {
        return Err(p3fox::Error::Domain("trace needs --x1 or --path".into()));
    }
    let start = start_state(&params, x0, budget)?;
    let traj = trace(&start, &waypoints, tol)?;
    eprintln!(
        "# trace: {} samples, {} accepted / {} rejected steps, {} chart switches",
        traj.samples.len(),
        traj.diagnostics.accepted,
        traj.diagnostics.rejected,
        traj.diagnostics.chart_switches
    );
    if io.format == "json" {
        #[derive(Serialize)]
        struct Sample {
            x: [f64; 2],
            u: [f64; 2],
            chart: &'static str,
        }
        let rows: Vec<Sample> = traj
            .samples
            .iter()
            .map(|s| {
                let (u, _) = s.u_view();
                Sample { x: [s.x.re, s.x.im], u: [u.re, u.im], chart: output::chart_label(s.chart) }
            })
            .collect();
        Ok(serde_json::to_string_pretty(&rows).expect("serialize") + "\n")
    } else {
        Ok(output::trace_csv(&traj))
    }
}

#[allow(clippy::too_many_arguments)]
fn run_grid(
    sol: &SolutionArgs,
    rect: (f64, f64, f64, f64),
    nx: usize,
    ny: usize,
    tol: f64,
    budget: f64,
    io: &IoArgs,
) -> Result<String, p3fox::Error> {
    let params = solution_params(sol)?;
    let spec = GridSpec { x_min: rect.0, x_max: rect.1, y_min: rect.2, y_max: rect.3, nx, ny };
    let result = p3fox::ode::grid(&params, &spec, tol, budget)?;
    if io.format == "json" {
        return Err(p3fox::Error::Domain(
            "grid output is CSV only; use --format csv".into(),
        ));
    }
    Ok(output::grid_csv(&result))
}

fn run_verify(seed: u64) -> (String, bool) {
    let fast = std::env::var("P3FOX_VERIFY_FAST").is_ok_and(|v| v == "1");
    let results = p3fox::verify::run_all(fast, seed);
    let mut s = format!("# seed: {seed}\n# fast: {fast}\n");
    let mut failed = 0usize;
    for r in &results {
        let tag = if r.pass { "PASS" } else { "FAIL" };
        if r.detail.is_empty() {
            s.push_str(&format!("{tag} {}\n", r.name));
        } else {
            s.push_str(&format!("{tag} {} - {}\n", r.name, r.detail));
        }
        if !r.pass {
            failed += 1;
        }
    }
    s.push_str(&format!("{} checks, {} passed, {} failed\n", results.len(), results.len() - failed, failed));
    (s, failed == 0)
}

fn write_out(io: &IoArgs, text: &str) -> std::io::Result<()> {
    match &io.output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() {
    let cli = Cli::parse();
    let outcome: Result<(String, IoArgs), p3fox::Error> = match &cli.command {
        Command::Eval { sol, x, compare_asym, io } => {
            run_eval(sol, *x, *compare_asym, io).map(|s| (s, io.clone()))
        }
        Command::Asym { sol, alpha_scan, io } => {
            run_asym(sol, alpha_scan, io).map(|s| (s, io.clone()))
        }
        Command::Expand { sol, budget, io } => {
            run_expand(sol, *budget, io).map(|s| (s, io.clone()))
        }
        Command::Trace { sol, x0, x1, path, tol, budget, io } => {
            run_trace(sol, *x0, *x1, path, *tol, *budget, io).map(|s| (s, io.clone()))
        }
        Command::Grid { sol, rect, nx, ny, tol, budget, io } => {
            run_grid(sol, *rect, *nx, *ny, *tol, *budget, io).map(|s| (s, io.clone()))
        }
        Command::Verify { seed, io } => {
            let (text, ok) = run_verify(*seed);
            if let Err(e) = write_out(io, &text) {
                eprintln!("error: {e}");
                std::process::exit(4);
            }
            std::process::exit(if ok { 0 } else { 4 });
        }
    };
    match outcome {
        Ok((text, io)) => {
            if let Err(e) = write_out(&io, &text) {
                eprintln!("error: {e}");
                std::process::exit(4);
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_class());
        }
    }
}

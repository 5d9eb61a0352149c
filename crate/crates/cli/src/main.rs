//! Command-line front end for Gaussian-criterion planning.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error (bad model data,
//! infeasibility, unsupported conversion), 3 internal numerical failure.

mod model;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use gaussplan::convert::{gaussian_to_gplp, gplp_to_gaussian, lp_to_gaussian};
use gaussplan::gp::{balance_with_gradient, kkt_check_with_gradient, KktTolerances};
use gaussplan::lp::{solve_lp, LpProblem, LpStatus, RowSense, Sense};
use gaussplan::value::GaussianComponent;
use gaussplan::{BoxRule, GplpProblem, GpProblem, SolverOptions, UniformComponent};
use serde::Serialize;

use model::{LoadedProblem, ModelFile, ModelKind};
use report::{DualBlock, OptionsEcho, ResultFile};

#[derive(Parser)]
#[command(name = "gaussplan", version, about = "Planning with Gaussian value criteria")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoxRuleArg {
    /// Tightest row bound per variable.
    Min,
    /// Loosest positive-row bound per variable.
    Max,
}

impl From<BoxRuleArg> for BoxRule {
    fn from(v: BoxRuleArg) -> Self {
        match v {
            BoxRuleArg::Min => BoxRule::MinRatio,
            BoxRuleArg::Max => BoxRule::MaxRatio,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConvertTarget {
    Gaussian,
    Gplp,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CurveExpr {
    /// Gaussian value distribution F(x).
    Value,
    /// Price density f(x).
    Price,
    /// Saturating ramp U(x).
    Ramp,
    /// Matched pair: columns x, F, U.
    Compare,
}

#[derive(Args)]
struct SolverArgs {
    /// Multi-start count.
    #[arg(long, default_value_t = 32)]
    starts: usize,
    /// Seed for the random starts.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relative stationarity-gap tolerance.
    #[arg(long, default_value_t = 1e-6)]
    gap_tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a gaussian or gplp model and report plan, prices and balances.
    Solve {
        model: PathBuf,
        /// Result file path (defaults to `<model>.result.json`).
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Resource prices from the dual linear program at a given plan point.
    Dual {
        model: PathBuf,
        /// Plan point, comma-separated.
        #[arg(long)]
        at: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Verify the optimality conditions and balance identities at a pair.
    Check {
        model: PathBuf,
        /// Plan point, comma-separated.
        #[arg(long)]
        at: String,
        /// Resource prices, comma-separated.
        #[arg(long)]
        prices: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Convert between model families (lp→gaussian, gaussian→gplp, gplp→gaussian).
    Convert {
        model: PathBuf,
        #[arg(long, value_enum)]
        to: ConvertTarget,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Which row ratio bounds the enclosing box in lp→gaussian.
        #[arg(long, value_enum, default_value = "min")]
        box_rule: BoxRuleArg,
    },
    /// Tabulate a value, price or ramp curve as plain numeric columns.
    Curve {
        #[arg(value_enum)]
        expr: CurveExpr,
        /// Domain as `min:max`.
        #[arg(long)]
        domain: String,
        #[arg(long, default_value_t = 201)]
        samples: usize,
        #[arg(long)]
        m: Option<f64>,
        #[arg(long)]
        sigma: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        b: Option<f64>,
        #[arg(long)]
        mass: Option<f64>,
        /// Output path (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Load a model, re-validate every invariant and summarize it.
    Validate {
        model: PathBuf,
        /// Write the canonical re-serialization here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

enum CliError {
    Usage(String),
    Domain(String),
    Numerical(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) | CliError::Numerical(m) => m,
        }
    }
}

fn solver_error(e: gaussplan::Error) -> CliError {
    match e {
        gaussplan::Error::SingularBasis { .. }
        | gaussplan::Error::OracleFailure { .. }
        | gaussplan::Error::AllStartsFailed { .. } => CliError::Numerical(e.to_string()),
        _ => CliError::Domain(e.to_string()),
    }
}

fn domain_error(e: anyhow::Error) -> CliError {
    CliError::Domain(format!("{e:#}"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve {
            model,
            output,
            solver,
            format,
        } => cmd_solve(&model, output, solver, format),
        Command::Dual {
            model,
            at,
            output,
            format,
        } => cmd_dual(&model, &at, output, format),
        Command::Check {
            model,
            at,
            prices,
            output,
            format,
        } => cmd_check(&model, &at, &prices, output, format),
        Command::Convert {
            model,
            to,
            output,
            box_rule,
        } => cmd_convert(&model, to, output, box_rule.into()),
        Command::Curve {
            expr,
            domain,
            samples,
            m,
            sigma,
            lambda,
            a,
            b,
            mass,
            output,
        } => cmd_curve(expr, &domain, samples, m, sigma, lambda, a, b, mass, output),
        Command::Validate { model, emit } => cmd_validate(&model, emit),
    }
}

fn parse_vector(text: &str, expected: usize, what: &str) -> Result<Vec<f64>, CliError> {
    let values: Result<Vec<f64>, _> = text.split(',').map(|t| t.trim().parse::<f64>()).collect();
    let values =
        values.map_err(|e| CliError::Usage(format!("cannot parse {what} {text:?}: {e}")))?;
    if values.len() != expected {
        return Err(CliError::Usage(format!(
            "{what} has {} entries, model has {expected} dimensions",
            values.len()
        )));
    }
    Ok(values)
}

fn default_output(model: &Path, suffix: &str) -> PathBuf {
    let stem = model
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "model".into());
    model.with_file_name(format!("{stem}.{suffix}"))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Numerical(format!("serialization failed: {e}")))?;
    std::fs::write(path, text + "\n")
        .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", path.display())))?;
    Ok(())
}

/// Gradient prices, dual solve, KKT and balance against explicit data;
/// shared between the gaussian and gplp solve paths.
fn analyze_pair(
    a: &gaussplan::Matrix,
    r: &[f64],
    gradient: &[f64],
    full_value: f64,
    plan: &[f64],
) -> Result<(DualBlock, gaussplan::KktReport, gaussplan::BalanceLedger), CliError> {
    let dual_lp = LpProblem::new(
        r.to_vec(),
        Sense::Minimize,
        a.transpose(),
        gradient.to_vec(),
        vec![RowSense::Ge; gradient.len()],
    )
    .map_err(solver_error)?;
    let dual = solve_lp(&dual_lp).map_err(solver_error)?;
    if dual.status != LpStatus::Optimal {
        return Err(CliError::Numerical(format!(
            "dual linear program returned {:?}",
            dual.status
        )));
    }
    let kkt = kkt_check_with_gradient(a, r, gradient, plan, &dual.point, &KktTolerances::default())
        .map_err(solver_error)?;
    let balance = balance_with_gradient(a, r, gradient, full_value, plan, &dual.point)
        .map_err(solver_error)?;
    Ok((
        DualBlock {
            prices: dual.point,
            objective: dual.objective_value,
        },
        kkt,
        balance,
    ))
}

fn cmd_solve(
    model_path: &Path,
    output: Option<PathBuf>,
    solver: SolverArgs,
    format: OutputFormat,
) -> Result<(), CliError> {
    let file = ModelFile::load(model_path).map_err(domain_error)?;
    let problem = file.to_problem().map_err(domain_error)?;
    let opts = SolverOptions {
        starts: solver.starts,
        seed: solver.seed,
        gap_tol: solver.gap_tol,
        ..SolverOptions::default()
    };
    let echo = OptionsEcho {
        starts: opts.starts,
        seed: opts.seed,
        gap_tol: opts.gap_tol,
        max_iterations: opts.max_iterations,
    };
    let result = match &problem {
        LoadedProblem::Gaussian(gp) => {
            let solution = gp.solve_primal(&opts).map_err(solver_error)?;
            let (dual, kkt, balance) = analyze_pair(
                gp.constraint_matrix(),
                gp.resources(),
                &solution.gradient_prices,
                solution.value,
                &solution.plan,
            )?;
            ResultFile::assemble(
                "gaussian",
                &model_path.display().to_string(),
                echo,
                file.variable_names(),
                file.resource_names(),
                file.currency.clone(),
                &solution,
                dual,
                &kkt,
                &balance,
            )
        }
        LoadedProblem::Gplp(gplp) => {
            let solution = if gplp.dimension() <= 10 {
                gplp.solve_exact().map_err(solver_error)?
            } else {
                gplp.solve_multistart(&opts).map_err(solver_error)?
            };
            let (dual, kkt, balance) = analyze_pair(
                gplp.constraint_matrix(),
                gplp.resources(),
                &solution.gradient_prices,
                solution.value,
                &solution.plan,
            )?;
            ResultFile::assemble(
                "gplp",
                &model_path.display().to_string(),
                echo,
                file.variable_names(),
                file.resource_names(),
                file.currency.clone(),
                &solution,
                dual,
                &kkt,
                &balance,
            )
        }
        LoadedProblem::Lp(_) => {
            return Err(CliError::Domain(
                "lp models are not solved directly; convert --to gaussian first".into(),
            ))
        }
    };
    let out_path = output.unwrap_or_else(|| default_output(model_path, "result.json"));
    write_json(&out_path, &result)?;
    match format {
        OutputFormat::Text => print!("{}", report::render(&result)),
        OutputFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(&result)
                .map_err(|e| CliError::Numerical(e.to_string()))?
        ),
    }
    Ok(())
}

#[derive(Serialize)]
struct DualResultFile {
    format_version: String,
    kind: String,
    model_path: String,
    at: Vec<f64>,
    gradient: Vec<f64>,
    dual_prices: Vec<f64>,
    dual_objective: f64,
}

fn gradient_at(
    problem: &LoadedProblem,
    at: &[f64],
) -> Result<(Vec<f64>, f64, &'static str), CliError> {
    match problem {
        LoadedProblem::Gaussian(gp) => {
            let g = gp.model().gradient(at).map_err(solver_error)?;
            let v = gp.model().total_value(at).map_err(solver_error)?;
            Ok((g, v, "gaussian"))
        }
        LoadedProblem::Gplp(gplp) => {
            let g = gplp.subgradient(at).map_err(solver_error)?;
            let v = gplp.value(at).map_err(solver_error)?;
            Ok((g, v, "gplp"))
        }
        LoadedProblem::Lp(_) => Err(CliError::Domain(
            "dual/check need a gaussian or gplp model".into(),
        )),
    }
}

fn constraint_data(problem: &LoadedProblem) -> (&gaussplan::Matrix, &[f64]) {
    match problem {
        LoadedProblem::Gaussian(gp) => (gp.constraint_matrix(), gp.resources()),
        LoadedProblem::Gplp(gplp) => (gplp.constraint_matrix(), gplp.resources()),
        LoadedProblem::Lp(lp) => (&lp.constraint_matrix, &lp.rhs),
    }
}

fn cmd_dual(
    model_path: &Path,
    at: &str,
    output: Option<PathBuf>,
    format: OutputFormat,
) -> Result<(), CliError> {
    let file = ModelFile::load(model_path).map_err(domain_error)?;
    let problem = file.to_problem().map_err(domain_error)?;
    let at = parse_vector(at, file.variables.len(), "--at")?;
    let (gradient, _value, kind) = gradient_at(&problem, &at)?;
    let (a, r) = constraint_data(&problem);
    let dual_lp = LpProblem::new(
        r.to_vec(),
        Sense::Minimize,
        a.transpose(),
        gradient.clone(),
        vec![RowSense::Ge; gradient.len()],
    )
    .map_err(solver_error)?;
    let dual = solve_lp(&dual_lp).map_err(solver_error)?;
    if dual.status != LpStatus::Optimal {
        return Err(CliError::Numerical(format!(
            "dual linear program returned {:?}",
            dual.status
        )));
    }
    let result = DualResultFile {
        format_version: model::FORMAT_VERSION.into(),
        kind: kind.into(),
        model_path: model_path.display().to_string(),
        at: at.clone(),
        gradient: gradient.clone(),
        dual_prices: dual.point.clone(),
        dual_objective: dual.objective_value,
    };
    if let Some(path) = output {
        write_json(&path, &result)?;
    }
    match format {
        OutputFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(&result)
                .map_err(|e| CliError::Numerical(e.to_string()))?
        ),
        OutputFormat::Text => {
            println!("dual at {:?}", at);
            println!("gradient prices:");
            for (name, g) in file.variable_names().iter().zip(&gradient) {
                println!("  {name:<10} {g:>18.6}");
            }
            println!("dual prices:");
            for (name, y) in file.resource_names().iter().zip(&dual.point) {
                println!("  {name:<10} {y:>18.6}");
            }
            println!("dual objective: {:.6}", dual.objective_value);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CheckResultFile {
    format_version: String,
    kind: String,
    model_path: String,
    at: Vec<f64>,
    prices: Vec<f64>,
    kkt: report::KktBlock,
    balance: report::BalanceBlock,
}

fn cmd_check(
    model_path: &Path,
    at: &str,
    prices: &str,
    output: Option<PathBuf>,
    format: OutputFormat,
) -> Result<(), CliError> {
    let file = ModelFile::load(model_path).map_err(domain_error)?;
    let problem = file.to_problem().map_err(domain_error)?;
    let at = parse_vector(at, file.variables.len(), "--at")?;
    let prices = parse_vector(prices, file.constraints.len(), "--prices")?;
    let (gradient, value, kind) = gradient_at(&problem, &at)?;
    let (a, r) = constraint_data(&problem);
    let kkt = kkt_check_with_gradient(a, r, &gradient, &at, &prices, &KktTolerances::default())
        .map_err(solver_error)?;
    let balance =
        balance_with_gradient(a, r, &gradient, value, &at, &prices).map_err(solver_error)?;
    let result = CheckResultFile {
        format_version: model::FORMAT_VERSION.into(),
        kind: kind.into(),
        model_path: model_path.display().to_string(),
        at,
        prices,
        kkt: report::KktBlock::from_report(&kkt),
        balance: report::BalanceBlock::from_ledger(&balance),
    };
    if let Some(path) = output {
        write_json(&path, &result)?;
    }
    match format {
        OutputFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(&result)
                .map_err(|e| CliError::Numerical(e.to_string()))?
        ),
        OutputFormat::Text => {
            println!("kuhn-tucker conditions:");
            println!(
                "  stationarity residual  {:?}  {}",
                result.kkt.stationarity_residual,
                if result.kkt.stationarity_ok { "pass" } else { "FAIL" }
            );
            println!(
                "  primal feasibility     {:?}  {}",
                result.kkt.primal_feasibility,
                if result.kkt.feasibility_ok { "pass" } else { "FAIL" }
            );
            println!(
                "  complementarity (plan)   {:.6}  {}",
                result.kkt.complementarity_plan,
                if result.kkt.complementarity_plan_ok { "pass" } else { "FAIL" }
            );
            println!(
                "  complementarity (prices) {:.6}  {}",
                result.kkt.complementarity_prices,
                if result.kkt.complementarity_prices_ok { "pass" } else { "FAIL" }
            );
            println!(
                "  nonnegativity  {}",
                if result.kkt.nonnegativity_ok { "pass" } else { "FAIL" }
            );
            println!(
                "  all conditions: {}",
                if result.kkt.all_passed() { "pass" } else { "FAIL" }
            );
            println!("balance ledger:");
            println!(
                "  gradient cost of plan      {:.6}",
                result.balance.gradient_cost_of_plan
            );
            println!(
                "  internal cost of consumed  {:.6}",
                result.balance.internal_cost_of_consumed
            );
            println!(
                "  internal cost of stock     {:.6}",
                result.balance.internal_cost_of_stock
            );
            println!("  full value of plan         {:.6}", result.balance.full_value);
            println!(
                "  identity gaps: output~consumed {:.3e}, consumed~stock {:.3e}, output~stock {:.3e}",
                result.balance.gap_output_vs_consumed,
                result.balance.gap_consumed_vs_stock,
                result.balance.gap_output_vs_stock
            );
            println!(
                "  full value vs stock divergence: {:.2}%",
                100.0 * result.balance.full_value_vs_stock_gap
            );
        }
    }
    Ok(())
}

fn cmd_convert(
    model_path: &Path,
    to: ConvertTarget,
    output: Option<PathBuf>,
    rule: BoxRule,
) -> Result<(), CliError> {
    let file = ModelFile::load(model_path).map_err(domain_error)?;
    let problem = file.to_problem().map_err(domain_error)?;
    let (converted, suffix): (ModelFile, &str) = match (&problem, to) {
        (LoadedProblem::Lp(lp), ConvertTarget::Gaussian) => {
            let gp = lp_to_gaussian(lp, rule).map_err(solver_error)?;
            (
                model::gaussian_model_file(
                    &gp,
                    file.variables.clone(),
                    file.constraints.clone(),
                    file.currency.clone(),
                ),
                "gaussian.json",
            )
        }
        (LoadedProblem::Gaussian(gp), ConvertTarget::Gplp) => {
            let gplp = gaussian_to_gplp(gp).map_err(solver_error)?;
            (
                model::gplp_model_file(
                    &gplp,
                    file.variables.clone(),
                    file.constraints.clone(),
                    file.currency.clone(),
                ),
                "gplp.json",
            )
        }
        (LoadedProblem::Gplp(gplp), ConvertTarget::Gaussian) => {
            let gp = gplp_to_gaussian(gplp).map_err(solver_error)?;
            (
                model::gaussian_model_file(
                    &gp,
                    file.variables.clone(),
                    file.constraints.clone(),
                    file.currency.clone(),
                ),
                "gaussian.json",
            )
        }
        (_, target) => {
            let target = match target {
                ConvertTarget::Gaussian => "gaussian",
                ConvertTarget::Gplp => "gplp",
            };
            return Err(CliError::Usage(format!(
                "cannot convert a {} model to {target}; supported: lp→gaussian, gaussian→gplp, gplp→gaussian",
                file.kind
            )));
        }
    };
    let out_path = output.unwrap_or_else(|| default_output(model_path, suffix));
    converted
        .save(&out_path)
        .map_err(domain_error)?;
    println!("wrote {}", out_path.display());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_curve(
    expr: CurveExpr,
    domain: &str,
    samples: usize,
    m: Option<f64>,
    sigma: Option<f64>,
    lambda: Option<f64>,
    a: Option<f64>,
    b: Option<f64>,
    mass: Option<f64>,
    output: Option<PathBuf>,
) -> Result<(), CliError> {
    let (lo, hi) = domain
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("--domain {domain:?} is not of the form min:max")))?;
    let lo: f64 = lo
        .trim()
        .parse()
        .map_err(|e| CliError::Usage(format!("bad domain start: {e}")))?;
    let hi: f64 = hi
        .trim()
        .parse()
        .map_err(|e| CliError::Usage(format!("bad domain end: {e}")))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(CliError::Usage(format!(
            "invalid domain [{lo}, {hi}]: need finite min < max"
        )));
    }
    if samples < 2 {
        return Err(CliError::Usage("--samples must be at least 2".into()));
    }

    let need_gaussian = |what: &str| -> Result<GaussianComponent, CliError> {
        let (m, s, l) = match (m, sigma, lambda) {
            (Some(m), Some(s), Some(l)) => (m, s, l),
            _ => {
                return Err(CliError::Usage(format!(
                    "{what} needs --m, --sigma and --lambda"
                )))
            }
        };
        GaussianComponent::new(0, m, s, l).map_err(solver_error)
    };
    let need_ramp = || -> Result<UniformComponent, CliError> {
        let (a, b, mass) = match (a, b, mass) {
            (Some(a), Some(b), Some(mass)) => (a, b, mass),
            _ => return Err(CliError::Usage("ramp needs --a, --b and --mass".into())),
        };
        UniformComponent::new(0, a, b, mass).map_err(solver_error)
    };

    let mut lines = Vec::with_capacity(samples + 1);
    match expr {
        CurveExpr::Value => {
            let c = need_gaussian("value")?;
            lines.push("# x\tvalue".to_string());
            for i in 0..samples {
                let x = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
                let v = c.value(x.max(0.0)).map_err(solver_error)?;
                lines.push(format!("{x}\t{v}"));
            }
        }
        CurveExpr::Price => {
            let c = need_gaussian("price")?;
            lines.push("# x\tprice".to_string());
            for i in 0..samples {
                let x = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
                let v = c.price(x.max(0.0)).map_err(solver_error)?;
                lines.push(format!("{x}\t{v}"));
            }
        }
        CurveExpr::Ramp => {
            let u = need_ramp()?;
            lines.push("# x\tramp".to_string());
            for i in 0..samples {
                let x = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
                lines.push(format!("{x}\t{}", u.ramp(x)));
            }
        }
        CurveExpr::Compare => {
            let c = need_gaussian("compare")?;
            let u = gaussplan::uniform_from_gaussian(&c);
            lines.push("# x\tgaussian\tuniform".to_string());
            for i in 0..samples {
                let x = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
                let f = c.value(x.max(0.0)).map_err(solver_error)?;
                lines.push(format!("{x}\t{f}\t{}", u.ramp(x)));
            }
        }
    }
    let text = lines.join("\n") + "\n";
    match output {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_validate(model_path: &Path, emit: Option<PathBuf>) -> Result<(), CliError> {
    let file = ModelFile::load(model_path).map_err(domain_error)?;
    let problem = file.to_problem().map_err(domain_error)?;
    let summary = match &problem {
        LoadedProblem::Gaussian(gp) => format!(
            "gaussian model: {} variables, {} resources, {} independent, {} sets, exact value {:.6}",
            gp.model().dimension(),
            gp.resources().len(),
            gp.model().independents().len(),
            gp.model().sets().len(),
            gp.model().lambda_total(),
        ),
        LoadedProblem::Lp(lp) => format!(
            "lp model: {} variables, {} rows",
            lp.num_vars(),
            lp.num_rows()
        ),
        LoadedProblem::Gplp(gplp) => format!(
            "gplp model: {} variables, {} resources, total mass {:.6}",
            gplp.dimension(),
            gplp.resources().len(),
            gplp.mass_total(),
        ),
    };
    println!("{}: ok", model_path.display());
    println!("{summary}");
    if let Some(path) = emit {
        file.save(&path).map_err(domain_error)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

//! Machine-readable result files and their human rendering.
//!
//! Every number the text report shows comes from the result structure, so a
//! report can always be re-rendered from the stored file.

use gaussplan::{BalanceLedger, KktReport, PrimalSolution};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct OptionsEcho {
    pub starts: usize,
    pub seed: u64,
    pub gap_tol: f64,
    pub max_iterations: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DualBlock {
    pub prices: Vec<f64>,
    pub objective: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct KktBlock {
    pub stationarity_residual: Vec<f64>,
    pub primal_feasibility: Vec<f64>,
    pub complementarity_plan: f64,
    pub complementarity_prices: f64,
    pub stationarity_ok: bool,
    pub feasibility_ok: bool,
    pub complementarity_plan_ok: bool,
    pub complementarity_prices_ok: bool,
    pub nonnegativity_ok: bool,
}

impl KktBlock {
    pub fn from_report(r: &KktReport) -> Self {
        Self {
            stationarity_residual: r.stationarity_residual.clone(),
            primal_feasibility: r.primal_feasibility.clone(),
            complementarity_plan: r.complementarity_x,
            complementarity_prices: r.complementarity_y,
            stationarity_ok: r.stationarity_ok,
            feasibility_ok: r.feasibility_ok,
            complementarity_plan_ok: r.complementarity_x_ok,
            complementarity_prices_ok: r.complementarity_y_ok,
            nonnegativity_ok: r.nonnegativity_ok,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.stationarity_ok
            && self.feasibility_ok
            && self.complementarity_plan_ok
            && self.complementarity_prices_ok
            && self.nonnegativity_ok
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BalanceBlock {
    pub gradient_cost_of_plan: f64,
    pub internal_cost_of_consumed: f64,
    pub internal_cost_of_stock: f64,
    pub full_value: f64,
    pub gap_output_vs_consumed: f64,
    pub gap_consumed_vs_stock: f64,
    pub gap_output_vs_stock: f64,
    pub full_value_vs_stock_gap: f64,
}

impl BalanceBlock {
    pub fn from_ledger(l: &BalanceLedger) -> Self {
        Self {
            gradient_cost_of_plan: l.gradient_cost_of_plan,
            internal_cost_of_consumed: l.internal_cost_of_consumed,
            internal_cost_of_stock: l.internal_cost_of_stock,
            full_value: l.full_value,
            gap_output_vs_consumed: l.gap_output_vs_consumed,
            gap_consumed_vs_stock: l.gap_consumed_vs_stock,
            gap_output_vs_stock: l.gap_output_vs_stock,
            full_value_vs_stock_gap: l.full_value_vs_stock_gap,
        }
    }
}

/// Full solve result as written to disk.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ResultFile {
    pub format_version: String,
    pub kind: String,
    pub model_path: String,
    pub options: OptionsEcho,
    pub variables: Vec<String>,
    pub resources: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub currency: Option<String>,
    pub plan: Vec<f64>,
    pub value: f64,
    pub gradient_prices: Vec<f64>,
    pub slack: Vec<f64>,
    pub starts_used: usize,
    pub stationarity_gap: f64,
    pub dual: DualBlock,
    pub kkt: KktBlock,
    pub balance: BalanceBlock,
}

impl ResultFile {
    #[allow(clippy::too_many_arguments)]
    pub fn assemble(
        kind: &str,
        model_path: &str,
        options: OptionsEcho,
        variables: Vec<String>,
        resources: Vec<String>,
        currency: Option<String>,
        solution: &PrimalSolution,
        dual: DualBlock,
        kkt: &KktReport,
        balance: &BalanceLedger,
    ) -> Self {
        Self {
            format_version: crate::model::FORMAT_VERSION.into(),
            kind: kind.into(),
            model_path: model_path.into(),
            options,
            variables,
            resources,
            currency,
            plan: solution.plan.clone(),
            value: solution.value,
            gradient_prices: solution.gradient_prices.clone(),
            slack: solution.slack.clone(),
            starts_used: solution.starts_used,
            stationarity_gap: solution.stationarity_gap,
            dual,
            kkt: KktBlock::from_report(kkt),
            balance: BalanceBlock::from_ledger(balance),
        }
    }
}

fn pass(flag: bool) -> &'static str {
    if flag {
        "pass"
    } else {
        "FAIL"
    }
}

fn vec_line(names: &[String], values: &[f64]) -> String {
    names
        .iter()
        .zip(values)
        .map(|(n, v)| format!("  {n:<10} {v:>18.6}"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Render the stored result; a pure function of the structure.
pub fn render(r: &ResultFile) -> String {
    let money = r.currency.clone().unwrap_or_default();
    let money_suffix = if money.is_empty() {
        String::new()
    } else {
        format!(" {money}")
    };
    let mut out = String::new();
    out.push_str(&format!(
        "model {} ({}, {} variables, {} resources)\n",
        r.model_path,
        r.kind,
        r.variables.len(),
        r.resources.len()
    ));
    out.push_str(&format!(
        "options: starts={} seed={} gap-tol={:e} max-iterations={}\n",
        r.options.starts, r.options.seed, r.options.gap_tol, r.options.max_iterations
    ));
    out.push_str("\n== plan ==\n");
    out.push_str(&vec_line(&r.variables, &r.plan));
    out.push_str(&format!(
        "\n\n== value ==\n  full value          {:>18.6}{money_suffix}\n  gradient cost       {:>18.6}{money_suffix}\n  stationarity gap    {:>18.6}\n  starts used         {:>18}\n",
        r.value, r.balance.gradient_cost_of_plan, r.stationarity_gap, r.starts_used
    ));
    out.push_str("\n== gradient prices ==\n");
    out.push_str(&vec_line(&r.variables, &r.gradient_prices));
    out.push_str("\n\n== dual prices ==\n");
    out.push_str(&vec_line(&r.resources, &r.dual.prices));
    out.push_str(&format!(
        "\n  objective           {:>18.6}{money_suffix}\n",
        r.dual.objective
    ));
    out.push_str("\n== resource slack ==\n");
    out.push_str(&vec_line(&r.resources, &r.slack));
    out.push_str("\n\n== kuhn-tucker conditions ==\n");
    out.push_str(&format!(
        "  stationarity residual  [{}]  {}\n",
        r.kkt
            .stationarity_residual
            .iter()
            .map(|v| format!("{v:.6}"))
            .collect::<Vec<_>>()
            .join(", "),
        pass(r.kkt.stationarity_ok)
    ));
    out.push_str(&format!(
        "  primal feasibility     [{}]  {}\n",
        r.kkt
            .primal_feasibility
            .iter()
            .map(|v| format!("{v:.6}"))
            .collect::<Vec<_>>()
            .join(", "),
        pass(r.kkt.feasibility_ok)
    ));
    out.push_str(&format!(
        "  complementarity (plan)   {:>16.6}  {}\n",
        r.kkt.complementarity_plan,
        pass(r.kkt.complementarity_plan_ok)
    ));
    out.push_str(&format!(
        "  complementarity (prices) {:>16.6}  {}\n",
        r.kkt.complementarity_prices,
        pass(r.kkt.complementarity_prices_ok)
    ));
    out.push_str(&format!(
        "  nonnegativity            {:>16}  {}\n",
        "",
        pass(r.kkt.nonnegativity_ok)
    ));
    out.push_str(&format!(
        "  all conditions: {}\n",
        pass(r.kkt.all_passed())
    ));
    out.push_str("\n== balance ledger ==\n");
    out.push_str(&format!(
        "  gradient cost of plan      {:>18.6}{money_suffix}\n",
        r.balance.gradient_cost_of_plan
    ));
    out.push_str(&format!(
        "  internal cost of consumed  {:>18.6}{money_suffix}\n",
        r.balance.internal_cost_of_consumed
    ));
    out.push_str(&format!(
        "  internal cost of stock     {:>18.6}{money_suffix}\n",
        r.balance.internal_cost_of_stock
    ));
    out.push_str(&format!(
        "  full value of plan         {:>18.6}{money_suffix}\n",
        r.balance.full_value
    ));
    out.push_str(&format!(
        "  identity gaps: output~consumed {:.3e}, consumed~stock {:.3e}, output~stock {:.3e}\n",
        r.balance.gap_output_vs_consumed,
        r.balance.gap_consumed_vs_stock,
        r.balance.gap_output_vs_stock
    ));
    out.push_str(&format!(
        "  full value vs stock divergence: {:.2}%\n",
        100.0 * r.balance.full_value_vs_stock_gap
    ));
    out
}

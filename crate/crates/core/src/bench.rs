//! Runs shipped instances and collects the reported statistics.

use serde::Serialize;

use crate::domains::{BenchSet, Instance};
use crate::error::ParseError;
use crate::parser::{parse_domain, parse_problem};
use crate::planner::{brfs, Domain, Problem, SearchLimits, SearchOutcome};

/// Default generation budgets, by set.
pub fn default_limits(set: BenchSet) -> SearchLimits {
    let max_generated = match set {
        BenchSet::Number => None,
        BenchSet::Grapevine => Some(200_000),
        BenchSet::Bbl => Some(500_000),
    };
    SearchLimits {
        max_depth: 12,
        max_generated,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Solved,
    Unsolvable,
    Budget,
}

/// One row of the results table.
#[derive(Clone, Debug, Serialize)]
pub struct RunRow {
    pub id: String,
    pub expanded: u64,
    pub generated: u64,
    pub common_max: usize,
    pub common_avg: f64,
    pub calls: u64,
    pub avg_ms: f64,
    pub total_s: f64,
    pub plan_len: Option<usize>,
    pub plan: Option<Vec<String>>,
    pub goals: String,
    pub status: RunStatus,
}

pub const HEADER: [&str; 10] = [
    "ID", "Exp", "Gen", "Max", "Avg", "|calls|", "AvgTime(ms)", "TotalTime(s)", "|p|", "Goals",
];

impl RunRow {
    pub fn tsv(&self) -> String {
        let len = self.plan_len.map_or_else(|| "-".to_string(), |l| l.to_string());
        format!(
            "{}\t{}\t{}\t{}\t{:.2}\t{}\t{:.4}\t{:.3}\t{}\t{}",
            self.id,
            self.expanded,
            self.generated,
            self.common_max,
            self.common_avg,
            self.calls,
            self.avg_ms,
            self.total_s,
            len,
            self.goals
        )
    }
}

pub fn domain(set: BenchSet) -> Result<Domain, ParseError> {
    parse_domain(set.domain_text())
}

/// Solves one shipped instance against an already parsed domain.
pub fn run_instance(domain: &Domain, inst: &Instance, limits: SearchLimits) -> Result<RunRow, ParseError> {
    let problem = parse_problem(inst.problem, domain)?;
    Ok(run_problem(domain, inst.id, &problem, limits))
}

/// Solves `problem`; its own depth limit, if any, overrides `limits`.
pub fn run_problem(domain: &Domain, id: &str, problem: &Problem, limits: SearchLimits) -> RunRow {
    let limits = SearchLimits {
        max_depth: problem.max_depth.unwrap_or(limits.max_depth),
        ..limits
    };
    let result = brfs(domain, problem, limits);
    let goals = problem
        .goals
        .iter()
        .map(|g| format!("{} -> {}", g.formula.display(&domain.sig), g.target))
        .collect::<Vec<_>>()
        .join("; ");
    let (status, plan) = match &result.outcome {
        SearchOutcome::Solved { plan, .. } => (RunStatus::Solved, Some(plan.clone())),
        SearchOutcome::Unsolvable => (RunStatus::Unsolvable, None),
        SearchOutcome::BudgetExhausted => (RunStatus::Budget, None),
    };
    let s = result.stats;
    RunRow {
        id: id.to_string(),
        expanded: s.expanded,
        generated: s.generated,
        common_max: s.eval.common_max,
        common_avg: s.eval.common_avg(),
        calls: s.eval.external_calls,
        avg_ms: s.eval.avg_call_ms(),
        total_s: s.total_time.as_secs_f64(),
        plan_len: plan.as_ref().map(Vec::len),
        plan,
        goals,
        status,
    }
}

/// Solves every instance of a set with the default limits.
pub fn run_set(set: BenchSet) -> Result<Vec<RunRow>, ParseError> {
    let d = domain(set)?;
    crate::domains::instances(set)
        .iter()
        .map(|i| run_instance(&d, i, default_limits(set)))
        .collect()
}

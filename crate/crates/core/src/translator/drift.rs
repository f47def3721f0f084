use serde::{Deserialize, Serialize};

use crate::bench::baseline_plan;
use crate::grounding::{ground, validate_plan, GroundedTask};
use crate::pddl::{parse_problem, Domain};

/// Drift ratios above this are flagged.
pub const DRIFT_THRESHOLD: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DriftReport {
    pub ratio: f64,
    /// Indices of problems solved under the reference domain but not under the candidate.
    pub failing: Vec<usize>,
    pub flagged: bool,
}

type Step = (String, Vec<String>);

fn solve(domain: &Domain, problem: &str, budget: usize) -> Option<(GroundedTask, Vec<Step>)> {
    let problem = parse_problem(problem, domain).ok()?;
    let task = ground(domain, &problem);
    let plan = baseline_plan(&task, budget).plan?;
    validate_plan(&task, &plan)
        .ok()?
        .is_success()
        .then_some(())?;
    let steps = plan
        .iter()
        .map(|&a| {
            (
                task.action(a).schema.clone(),
                task.action(a).binding.clone(),
            )
        })
        .collect();
    Some((task, steps))
}

/// Fraction of `problems` that the budgeted planner solves under
/// `reference` but not under `candidate`. Candidate plans must also hold
/// up when replayed under the reference domain.
pub fn measure_drift(
    reference: &Domain,
    candidate: &Domain,
    problems: &[String],
    budget: usize,
) -> DriftReport {
    let mut failing = Vec::new();
    for (idx, text) in problems.iter().enumerate() {
        let Some((ref_task, _)) = solve(reference, text, budget) else {
            continue;
        };
        let ok = solve(candidate, text, budget).is_some_and(|(_, steps)| {
            steps
                .iter()
                .map(|(schema, binding)| ref_task.find_action(schema, binding))
                .collect::<Option<Vec<_>>>()
                .and_then(|ids| validate_plan(&ref_task, &ids).ok())
                .is_some_and(|o| o.is_success())
        });
        if !ok {
            failing.push(idx);
        }
    }
    let ratio = if problems.is_empty() {
        0.0
    } else {
        failing.len() as f64 / problems.len() as f64
    };
    DriftReport {
        ratio,
        flagged: ratio > DRIFT_THRESHOLD,
        failing,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::DomainKind;
    use crate::test_support::TWO_BLOCK_PROBLEM;

    #[test]
    fn identical_domains_do_not_drift() {
        let d = DomainKind::Blocks.domain();
        let r = measure_drift(&d, &d, &[TWO_BLOCK_PROBLEM.to_string()], 10_000);
        assert_eq!(r.ratio, 0.0);
        assert!(!r.flagged);
    }

    #[test]
    fn missing_stack_drifts_fully() {
        let d = DomainKind::Blocks.domain();
        let cand = d.without_schema("stack");
        let problems = vec![TWO_BLOCK_PROBLEM.to_string(); 3];
        let r = measure_drift(&d, &cand, &problems, 10_000);
        assert_eq!(r.ratio, 1.0);
        assert!(r.flagged);
        assert_eq!(r.failing, vec![0, 1, 2]);
    }
}

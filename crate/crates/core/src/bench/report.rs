use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::pipeline::{ResultClass, RunRecord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot aggregate an empty record list")]
pub struct EmptyInput;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub label: String,
    pub instances: usize,
    /// Percentage of plan-success runs.
    pub success_rate: f64,
    pub avg_prompt_tokens: f64,
    pub avg_full_prompt_tokens: f64,
    /// Percentage saved by abstraction demonstrations.
    pub token_reduction: f64,
    pub mean_action_space: Option<f64>,
    pub mean_subspace: Option<f64>,
    pub mean_cpu_seconds: Option<f64>,
    pub mean_pscr: Option<f64>,
    pub histogram: BTreeMap<ResultClass, usize>,
}

/// Per-domain rows plus a total weighted by instance count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub domains: Vec<Summary>,
    pub total: Summary,
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

fn summarize(label: &str, records: &[&RunRecord]) -> Summary {
    let n = records.len() as f64;
    let mut histogram: BTreeMap<ResultClass, usize> =
        ResultClass::ALL.iter().map(|c| (*c, 0)).collect();
    for r in records {
        *histogram.entry(r.result_class).or_default() += 1;
    }
    let successes = histogram[&ResultClass::PlanSuccess] as f64;
    let planned: Vec<&&RunRecord> = records
        .iter()
        .filter(|r| r.action_space.is_some())
        .collect();
    let avg_prompt = records.iter().map(|r| r.prompt_tokens as f64).sum::<f64>() / n;
    let avg_full = records
        .iter()
        .map(|r| r.full_prompt_tokens as f64)
        .sum::<f64>()
        / n;
    Summary {
        label: label.to_string(),
        instances: records.len(),
        success_rate: 100.0 * successes / n,
        avg_prompt_tokens: avg_prompt,
        avg_full_prompt_tokens: avg_full,
        token_reduction: if avg_full > 0.0 {
            100.0 * (1.0 - avg_prompt / avg_full)
        } else {
            0.0
        },
        mean_action_space: mean(
            planned
                .iter()
                .filter_map(|r| r.action_space)
                .map(|v| v as f64),
        ),
        mean_subspace: mean(planned.iter().filter_map(|r| r.mean_subspace)),
        mean_cpu_seconds: mean(planned.iter().map(|r| r.cpu_seconds)),
        mean_pscr: mean(planned.iter().filter_map(|r| r.pscr)),
        histogram,
    }
}

pub fn aggregate(records: &[RunRecord]) -> Result<Report, EmptyInput> {
    if records.is_empty() {
        return Err(EmptyInput);
    }
    let mut by_domain: BTreeMap<_, Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        by_domain.entry(r.domain).or_default().push(r);
    }
    let all: Vec<&RunRecord> = records.iter().collect();
    Ok(Report {
        domains: by_domain
            .iter()
            .map(|(kind, rs)| summarize(kind.name(), rs))
            .collect(),
        total: summarize("total", &all),
    })
}

fn opt(v: Option<f64>, digits: usize) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.digits$}"))
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let rows: Vec<&Summary> = self
            .domains
            .iter()
            .chain(std::iter::once(&self.total))
            .collect();
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<14} {:>5} {:>8} {:>9} {:>9} {:>7} {:>8} {:>8} {:>9} {:>7}",
            "domain",
            "n",
            "success%",
            "tokens",
            "full-tok",
            "saved%",
            "|A|",
            "|A_i|",
            "cpu-s",
            "pscr"
        );
        for s in &rows {
            let _ = writeln!(
                out,
                "{:<14} {:>5} {:>8.1} {:>9.1} {:>9.1} {:>7.1} {:>8} {:>8} {:>9} {:>7}",
                s.label,
                s.instances,
                s.success_rate,
                s.avg_prompt_tokens,
                s.avg_full_prompt_tokens,
                s.token_reduction,
                opt(s.mean_action_space, 1),
                opt(s.mean_subspace, 2),
                opt(s.mean_cpu_seconds, 3),
                opt(s.mean_pscr, 3),
            );
        }
        out.push('\n');
        let _ = write!(out, "{:<14}", "classes");
        for c in ResultClass::ALL {
            let _ = write!(out, " {:>16}", c.name());
        }
        out.push('\n');
        for s in &rows {
            let _ = write!(out, "{:<14}", s.label);
            for c in ResultClass::ALL {
                let _ = write!(out, " {:>16}", s.histogram.get(&c).copied().unwrap_or(0));
            }
            out.push('\n');
        }
        out.push_str("(total weighted by instance count)\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::DomainKind;

    fn record(domain: DomainKind, class: ResultClass, tokens: usize) -> RunRecord {
        RunRecord {
            instance_id: "x".into(),
            domain,
            result_class: class,
            prompt_tokens: tokens,
            full_prompt_tokens: tokens * 2,
            cpu_seconds: 0.5,
            plan: None,
            plan_length: Some(2),
            optimal_length: 2,
            action_space: Some(12),
            mean_subspace: Some(4.0),
            max_subspace: Some(6),
            pscr: Some(0.1),
            nodes_expanded: 3,
            generations: 1,
        }
    }

    #[test]
    fn success_rate_and_means() {
        let recs = vec![
            record(DomainKind::Blocks, ResultClass::PlanSuccess, 1000),
            record(DomainKind::Blocks, ResultClass::PlanSuccess, 2000),
            record(DomainKind::Blocks, ResultClass::PlanSuccess, 1000),
            record(DomainKind::Blocks, ResultClass::SyntaxError, 2000),
        ];
        let r = aggregate(&recs).unwrap();
        assert_eq!(r.total.success_rate, 75.0);
        assert_eq!(r.total.avg_prompt_tokens, 1500.0);
        assert_eq!(r.total.histogram.values().sum::<usize>(), 4);
        assert_eq!(r.total.token_reduction, 50.0);
    }

    #[test]
    fn single_record_passes_through() {
        let recs = vec![record(DomainKind::Hanoi, ResultClass::PlanSuccess, 777)];
        let r = aggregate(&recs).unwrap();
        assert_eq!(r.domains.len(), 1);
        let s = &r.total;
        assert_eq!(s.avg_prompt_tokens, 777.0);
        assert_eq!(s.mean_action_space, Some(12.0));
        assert_eq!(s.mean_subspace, Some(4.0));
        assert_eq!(s.mean_cpu_seconds, Some(0.5));
        assert_eq!(s.success_rate, 100.0);
    }

    #[test]
    fn empty_input() {
        assert_eq!(aggregate(&[]), Err(EmptyInput));
    }

    #[test]
    fn total_weights_by_instances() {
        let recs = vec![
            record(DomainKind::Blocks, ResultClass::PlanSuccess, 100),
            record(DomainKind::Hanoi, ResultClass::PlanInvalidity, 100),
            record(DomainKind::Hanoi, ResultClass::PlanInvalidity, 100),
        ];
        let r = aggregate(&recs).unwrap();
        assert!((r.total.success_rate - 100.0 / 3.0).abs() < 1e-12);
        let text = r.to_text();
        assert!(text.contains("blocks") && text.contains("hanoi") && text.contains("total"));
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}

use std::collections::HashMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::grounding::{ground, validate_plan, ActionId, GroundedTask};
use crate::meta::{self, SearchConfig};
use crate::pddl::serialize;
use crate::translator::{
    build_prompt, embed_into_problem, ChatClient, ClientError, MockClient, TranslationOutcome,
    Translator, TranslatorConfig,
};

use super::baseline::baseline_plan;
use super::domains::DomainKind;
use super::generate::TaskInstance;
use super::shots::ShotSet;

/// The six outcome classes of one end-to-end run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResultClass {
    PlanSuccess,
    PlanInvalidity,
    SyntaxError,
    SemanticError,
    ContextOverflow,
    DomainDrift,
}

impl ResultClass {
    pub const ALL: [ResultClass; 6] = [
        ResultClass::PlanSuccess,
        ResultClass::PlanInvalidity,
        ResultClass::SyntaxError,
        ResultClass::SemanticError,
        ResultClass::ContextOverflow,
        ResultClass::DomainDrift,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ResultClass::PlanSuccess => "plan-success",
            ResultClass::PlanInvalidity => "plan-invalidity",
            ResultClass::SyntaxError => "syntax-error",
            ResultClass::SemanticError => "semantic-error",
            ResultClass::ContextOverflow => "context-overflow",
            ResultClass::DomainDrift => "domain-drift",
        }
    }

    pub fn is_translation_error(self) -> bool {
        matches!(
            self,
            ResultClass::SyntaxError
                | ResultClass::SemanticError
                | ResultClass::ContextOverflow
                | ResultClass::DomainDrift
        )
    }
}

/// Everything the classifier looks at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineTrace {
    pub translation: TranslationOutcome,
    pub drift: bool,
    /// Whether the returned plan solves the gold task; `false` when no plan came back.
    pub plan_valid: bool,
}

/// Overflow, then drift, then translation errors, then the planner outcome.
pub fn classify_result(trace: &PipelineTrace) -> ResultClass {
    match &trace.translation {
        TranslationOutcome::ContextOverflow => ResultClass::ContextOverflow,
        _ if trace.drift => ResultClass::DomainDrift,
        TranslationOutcome::SyntaxError(_) => ResultClass::SyntaxError,
        TranslationOutcome::SemanticError(_) => ResultClass::SemanticError,
        TranslationOutcome::Success(_) if trace.plan_valid => ResultClass::PlanSuccess,
        TranslationOutcome::Success(_) => ResultClass::PlanInvalidity,
    }
}

/// `|A| / (N_pop * max subspace size)`.
pub fn compute_pscr(action_space: f64, pop_size: f64, max_subspace: f64) -> f64 {
    action_space / (pop_size * max_subspace)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance_id: String,
    pub domain: DomainKind,
    pub result_class: ResultClass,
    /// Prompt tokens with abstraction demonstrations.
    pub prompt_tokens: usize,
    /// Prompt tokens when the demonstrations are full problem files.
    pub full_prompt_tokens: usize,
    /// Wall-clock of the planning stage; 0 when timing is off.
    pub cpu_seconds: f64,
    pub plan: Option<Vec<String>>,
    pub plan_length: Option<usize>,
    pub optimal_length: usize,
    pub action_space: Option<usize>,
    pub mean_subspace: Option<f64>,
    pub max_subspace: Option<usize>,
    pub pscr: Option<f64>,
    pub nodes_expanded: usize,
    pub generations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub search: SearchConfig,
    pub translator: TranslatorConfig,
    /// Plan with full-space A* instead of the population search.
    pub baseline: bool,
    pub baseline_budget: usize,
    /// Record planning wall-clock; off gives byte-identical reports.
    pub timing: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            search: SearchConfig::default(),
            translator: TranslatorConfig::default(),
            baseline: false,
            baseline_budget: 1_000_000,
            timing: true,
        }
    }
}

/// Offline client answering every instance with its gold abstraction.
pub fn gold_client(instances: &[TaskInstance]) -> MockClient {
    MockClient::Memory(
        instances
            .iter()
            .map(|i| (i.id.clone(), i.abstraction_text.clone()))
            .collect::<HashMap<_, _>>(),
    )
}

/// Same plan expressed with the gold task's action ids.
fn map_plan(from: &GroundedTask, to: &GroundedTask, plan: &[ActionId]) -> Option<Vec<ActionId>> {
    plan.iter()
        .map(|&a| {
            let action = from.action(a);
            to.find_action(&action.schema, &action.binding)
        })
        .collect()
}

struct PlanStats {
    plan: Option<Vec<ActionId>>,
    nodes_expanded: usize,
    generations: usize,
    mean_subspace: f64,
    max_subspace: usize,
    pop_size: usize,
}

fn plan_task(task: &GroundedTask, config: &BenchConfig) -> PlanStats {
    if config.baseline {
        let out = baseline_plan(task, config.baseline_budget);
        PlanStats {
            plan: out.plan,
            nodes_expanded: out.nodes_expanded,
            generations: 0,
            mean_subspace: task.action_count() as f64,
            max_subspace: task.action_count(),
            pop_size: 1,
        }
    } else {
        let res = meta::run(task, &config.search);
        PlanStats {
            plan: res.best.map(|b| b.plan),
            nodes_expanded: res.metrics.nodes_expanded,
            generations: res.metrics.generations,
            mean_subspace: res.metrics.mean_subspace,
            max_subspace: res.metrics.max_subspace,
            pop_size: config.search.pop_size,
        }
    }
}

/// Translate, embed, plan, and check the plan against the gold problem.
pub fn run_instance(
    instance: &TaskInstance,
    shots: &ShotSet,
    config: &BenchConfig,
    client: &dyn ChatClient,
) -> Result<RunRecord, ClientError> {
    let domain = instance.domain.domain();
    let translator = Translator::new(
        &domain,
        &shots.abstraction,
        config.translator.clone(),
        client,
    );
    let translation = match translator.translate(Some(&instance.id), &instance.instruction) {
        Ok(t) => t,
        Err(crate::translator::TranslateError::Client(e)) => return Err(e),
        Err(crate::translator::TranslateError::Prompt(e)) => {
            panic!("generated prompt is well-formed: {e}")
        }
    };
    let k = config.translator.shot_count.min(shots.full_problem.len());
    let full_prompt = build_prompt(
        &serialize(&domain),
        &shots.full_problem[..k],
        &instance.instruction,
    )
    .expect("generated prompt is well-formed")
    .render();

    let mut record = RunRecord {
        instance_id: instance.id.clone(),
        domain: instance.domain,
        result_class: ResultClass::PlanInvalidity,
        prompt_tokens: translation.prompt_tokens,
        full_prompt_tokens: translator.tokenizer.count(&full_prompt),
        cpu_seconds: 0.0,
        plan: None,
        plan_length: None,
        optimal_length: instance.optimal_length,
        action_space: None,
        mean_subspace: None,
        max_subspace: None,
        pscr: None,
        nodes_expanded: 0,
        generations: 0,
    };
    let mut plan_valid = false;
    if let TranslationOutcome::Success(z) = &translation.outcome {
        let problem = embed_into_problem(z, &domain, &instance.id)
            .expect("successful translations are validated");
        let task = ground(&domain, &problem);
        let started = Instant::now();
        let stats = plan_task(&task, config);
        if config.timing {
            record.cpu_seconds = started.elapsed().as_secs_f64();
        }
        let n = task.action_count();
        record.action_space = Some(n);
        record.mean_subspace = Some(stats.mean_subspace);
        record.max_subspace = Some(stats.max_subspace);
        record.pscr = (stats.max_subspace > 0)
            .then(|| compute_pscr(n as f64, stats.pop_size as f64, stats.max_subspace as f64));
        record.nodes_expanded = stats.nodes_expanded;
        record.generations = stats.generations;
        if let Some(plan) = stats.plan {
            let gold = instance.task();
            plan_valid = map_plan(&task, &gold, &plan)
                .and_then(|p| validate_plan(&gold, &p).ok())
                .is_some_and(|o| o.is_success());
            record.plan_length = Some(plan.len());
            record.plan = Some(plan.iter().map(|&a| task.action(a).label()).collect());
        }
    }
    record.result_class = classify_result(&PipelineTrace {
        translation: translation.outcome,
        drift: false,
        plan_valid,
    });
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{generate_instances, SizeRange};
    use crate::translator::Abstraction;

    fn z() -> Abstraction {
        Abstraction::parse("(:objects b1 - block) (:init) (:goal (clear b1))").unwrap()
    }

    #[test]
    fn classification_examples() {
        let ok = TranslationOutcome::Success(z());
        let trace = |translation: TranslationOutcome, drift, plan_valid| PipelineTrace {
            translation,
            drift,
            plan_valid,
        };
        assert_eq!(
            classify_result(&trace(ok.clone(), false, true)),
            ResultClass::PlanSuccess
        );
        assert_eq!(
            classify_result(&trace(
                TranslationOutcome::SyntaxError("x".into()),
                false,
                false
            )),
            ResultClass::SyntaxError
        );
        assert_eq!(
            classify_result(&trace(ok.clone(), false, false)),
            ResultClass::PlanInvalidity
        );
        assert_eq!(
            classify_result(&trace(ok, true, true)),
            ResultClass::DomainDrift
        );
        assert_eq!(
            classify_result(&trace(TranslationOutcome::ContextOverflow, true, false)),
            ResultClass::ContextOverflow
        );
        assert_eq!(
            classify_result(&trace(
                TranslationOutcome::SemanticError("x".into()),
                false,
                true
            )),
            ResultClass::SemanticError
        );
    }

    #[test]
    fn pscr_examples() {
        assert!((compute_pscr(20.0, 4.0, 4.0) - 1.25).abs() < 1e-12);
        assert!((compute_pscr(22.6, 20.0, 8.27) - 22.6 / 165.4).abs() < 1e-12);
        assert!((compute_pscr(22.6, 20.0, 8.27) - 0.136638).abs() < 1e-6);
        assert_eq!(compute_pscr(37.0, 1.0, 37.0), 1.0);
    }

    #[test]
    fn gold_pipeline_succeeds() {
        let kind = DomainKind::Blocks;
        let instances = generate_instances(kind, 2, SizeRange::new(3, 3), 4).unwrap();
        let shots = ShotSet::for_domain(kind, 6);
        let client = gold_client(&instances);
        let config = BenchConfig {
            search: SearchConfig {
                single_thread: true,
                ..SearchConfig::default()
            },
            ..BenchConfig::default()
        };
        for inst in &instances {
            let rec = run_instance(inst, &shots, &config, &client).unwrap();
            assert_eq!(rec.result_class, ResultClass::PlanSuccess);
            assert!(rec.plan_length.unwrap() >= inst.optimal_length);
            assert!(rec.prompt_tokens < rec.full_prompt_tokens);
        }
    }

    #[test]
    fn wrong_goal_is_plan_invalidity() {
        let kind = DomainKind::Rearrangement;
        let instances = generate_instances(kind, 1, SizeRange::new(2, 2), 4).unwrap();
        let inst = &instances[0];
        let mut z = Abstraction::parse(&inst.abstraction_text).unwrap();
        // ask for the hand to hold a block instead
        z.goal = vec![crate::pddl::Atom::new("holding", ["block1"])];
        let client = MockClient::Memory([(inst.id.clone(), z.to_text())].into_iter().collect());
        let shots = ShotSet::for_domain(kind, 6);
        let config = BenchConfig {
            baseline: true,
            ..BenchConfig::default()
        };
        let rec = run_instance(inst, &shots, &config, &client).unwrap();
        assert_eq!(rec.result_class, ResultClass::PlanInvalidity);
        assert_eq!(rec.pscr, Some(1.0));
    }
}

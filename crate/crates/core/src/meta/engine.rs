use std::collections::HashSet;
use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::grounding::{
    critical_actions, validate_plan, ActionId, GroundedTask, ValidationOutcome,
};
use crate::search::{astar_subspace, Cost, LocalResult, SharedBound};

use super::config::SearchConfig;
use super::individual::{init_population, Individual, LengthBounds};
use super::operators::{crossover, mutate, union_genes};
use super::recorder::ConflictRecorder;
use super::schedule::mutation_rate;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArchiveEntry {
    pub plan: Vec<ActionId>,
    pub f: Cost,
    pub generation: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndividualLog {
    pub length: usize,
    pub nodes_expanded: usize,
}

/// One line of the run log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationLog {
    pub m: usize,
    pub f_global: Cost,
    pub archive_size: usize,
    pub individuals: Vec<IndividualLog>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub generations: usize,
    pub nodes_expanded: usize,
    pub action_space: usize,
    /// Mean individual length over every local search run.
    pub mean_subspace: f64,
    pub max_subspace: usize,
    pub conflicts: usize,
    pub final_bound: Cost,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanResult {
    /// Lowest-f archived plan, earliest archival on ties; `None` if no plan was found.
    pub best: Option<ArchiveEntry>,
    pub archive: Vec<ArchiveEntry>,
    pub metrics: RunMetrics,
    pub log: Vec<GenerationLog>,
}

impl PlanResult {
    pub fn write_log<W: Write>(&self, mut out: W) -> io::Result<()> {
        for line in &self.log {
            serde_json::to_writer(&mut out, line)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// Snapshot handed to run observers after each local phase.
pub struct GenerationState<'a> {
    pub m: usize,
    pub f_global: Cost,
    pub population: &'a [Individual],
    pub recorder: &'a ConflictRecorder,
    pub archive: &'a [ArchiveEntry],
    pub bounds: LengthBounds,
    pub critical: &'a [ActionId],
}

struct LocalOutcome {
    result: LocalResult,
    conflicts: Vec<(ActionId, ActionId)>,
}

pub fn run(task: &GroundedTask, config: &SearchConfig) -> PlanResult {
    run_observed(task, config, &mut |_| {})
}

pub fn run_observed(
    task: &GroundedTask,
    config: &SearchConfig,
    observer: &mut dyn FnMut(&GenerationState),
) -> PlanResult {
    let n = task.action_count();
    let critical = critical_actions(task);
    let bounds = LengthBounds::new(n, config.l_max, critical.len());
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut population = init_population(n, &critical, bounds, config.pop_size, &mut rng);
    let mut recorder = ConflictRecorder::new(config.w_init, config.tau, config.lower_bound);
    let bound = SharedBound::new(Cost::INFINITY);

    let mut archive: Vec<ArchiveEntry> = Vec::new();
    let mut seen: HashSet<Vec<ActionId>> = HashSet::new();
    let mut log = Vec::new();
    let mut nodes_expanded = 0usize;
    let mut conflicts = 0usize;
    let mut length_sum = 0usize;
    let mut searches = 0usize;
    let mut max_subspace = 0usize;
    let mut generations = 0usize;

    for m in 0..config.max_iters {
        generations = m + 1;
        let local = |ind: &Individual| local_phase(task, ind, &bound, config.budget);
        let outcomes: Vec<LocalOutcome> = if config.single_thread {
            population.iter().map(local).collect()
        } else {
            population.par_iter().map(local).collect()
        };

        let mut individuals = Vec::with_capacity(population.len());
        for (ind, out) in population.iter().zip(&outcomes) {
            individuals.push(IndividualLog {
                length: ind.len(),
                nodes_expanded: out.result.nodes_expanded,
            });
            nodes_expanded += out.result.nodes_expanded;
            length_sum += ind.len();
            searches += 1;
            max_subspace = max_subspace.max(ind.len());
            for p in &out.result.plans {
                if seen.insert(p.actions.clone()) {
                    archive.push(ArchiveEntry {
                        plan: p.actions.clone(),
                        f: p.f,
                        generation: m,
                    });
                }
            }
            for &(a, b) in &out.conflicts {
                recorder.penalize(a, b, m);
                conflicts += 1;
            }
        }
        let f_global = bound.snapshot();
        log.push(GenerationLog {
            m,
            f_global,
            archive_size: archive.len(),
            individuals,
        });
        observer(&GenerationState {
            m,
            f_global,
            population: &population,
            recorder: &recorder,
            archive: &archive,
            bounds,
            critical: &critical,
        });

        if archive.len() >= config.archive_threshold
            || f_global == Cost::ZERO
            || m + 1 >= config.max_iters
        {
            break;
        }

        let p_mut = mutation_rate(m, config.max_iters);
        let parents = population;
        population = (0..parents.len())
            .map(|i| {
                let j = pick_partner(i, parents.len(), &mut rng);
                let child = crossover(
                    &parents[i],
                    &parents[j],
                    &recorder,
                    &critical,
                    bounds,
                    &mut rng,
                );
                let union = union_genes(&parents[i], &parents[j]);
                mutate(&child, n, &union, &recorder, p_mut, bounds, &mut rng)
            })
            .collect();
    }

    let best = archive
        .iter()
        .fold(None::<&ArchiveEntry>, |best, e| match best {
            Some(b) if b.f <= e.f => Some(b),
            _ => Some(e),
        })
        .cloned();
    PlanResult {
        best,
        metrics: RunMetrics {
            generations,
            nodes_expanded,
            action_space: n,
            mean_subspace: if searches == 0 {
                0.0
            } else {
                length_sum as f64 / searches as f64
            },
            max_subspace,
            conflicts,
            final_bound: bound.snapshot(),
        },
        archive,
        log,
    }
}

fn pick_partner<R: Rng>(i: usize, len: usize, rng: &mut R) -> usize {
    if len < 2 {
        return i;
    }
    let j = rng.gen_range(0..len - 1);
    if j >= i {
        j + 1
    } else {
        j
    }
}

fn local_phase(
    task: &GroundedTask,
    ind: &Individual,
    bound: &SharedBound,
    budget: usize,
) -> LocalOutcome {
    let snapshot = bound.snapshot();
    let mut result = astar_subspace(task, &ind.genes, snapshot, budget);
    result.plans.retain(|p| {
        matches!(
            validate_plan(task, &p.actions),
            Ok(ValidationOutcome::Success { .. })
        )
    });
    for p in &result.plans {
        bound.offer(p.f);
    }
    let conflicts = if result.plans.is_empty() {
        probe_dead_end(task, ind, &result.best_partial)
    } else {
        Vec::new()
    };
    LocalOutcome { result, conflicts }
}

/// Conflict pairs blocking the most promising partial plan: each subspace
/// action adding a missing goal atom is appended to the partial plan and
/// validated; a precondition conflict yields the (deleter, blocked) pair.
fn probe_dead_end(
    task: &GroundedTask,
    ind: &Individual,
    partial: &[ActionId],
) -> Vec<(ActionId, ActionId)> {
    let mut state = task.init.clone();
    for &a in partial {
        state = crate::grounding::successor(&state, task.action(a));
    }
    let mut genes = ind.genes.clone();
    genes.sort_unstable();
    let mut pairs = Vec::new();
    let mut probe = partial.to_vec();
    for a in genes {
        let action = task.action(a);
        let helps = action
            .add
            .iter()
            .any(|x| task.goal.contains(x) && !state.contains(*x));
        if !helps {
            continue;
        }
        probe.push(a);
        if let Ok(ValidationOutcome::PreconditionConflict { culprit_step, .. }) =
            validate_plan(task, &probe)
        {
            pairs.push((probe[culprit_step], a));
        }
        probe.pop();
    }
    pairs
}

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::task::{applicable, successor, ActionId, AtomId, GroundedTask, State};

/// Result of simulating a plan from the initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationOutcome {
    Success {
        final_state: State,
    },
    GoalUnsatisfied {
        final_state: State,
        missing: Vec<AtomId>,
    },
    /// Step `step` (0-based) is inapplicable because `culprit_step` deleted `atom`.
    PreconditionConflict {
        step: usize,
        culprit_step: usize,
        atom: AtomId,
    },
    /// Step `step` needs `atom`, which no earlier step deleted.
    PreconditionUnsupported {
        step: usize,
        atom: AtomId,
    },
}

impl ValidationOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, ValidationOutcome::Success { .. })
    }

    pub fn kind(&self) -> OutcomeKind {
        match self {
            ValidationOutcome::Success { .. } => OutcomeKind::Success,
            ValidationOutcome::GoalUnsatisfied { .. } => OutcomeKind::GoalUnsatisfied,
            ValidationOutcome::PreconditionConflict { .. } => OutcomeKind::PreconditionConflict,
            ValidationOutcome::PreconditionUnsupported { .. } => {
                OutcomeKind::PreconditionUnsupported
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutcomeKind {
    Success,
    GoalUnsatisfied,
    PreconditionConflict,
    PreconditionUnsupported,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("unknown action id {id} at step {step} (task has {count} actions)")]
    UnknownActionId {
        step: usize,
        id: ActionId,
        count: usize,
    },
}

/// Simulates `plan` from the initial state.
///
/// At the first inapplicable step the conflict is attributed to the most
/// recent earlier step that deleted one of the missing precondition atoms.
pub fn validate_plan(
    task: &GroundedTask,
    plan: &[ActionId],
) -> Result<ValidationOutcome, ValidationError> {
    if let Some((step, &id)) = plan
        .iter()
        .enumerate()
        .find(|(_, &id)| id >= task.action_count())
    {
        return Err(ValidationError::UnknownActionId {
            step,
            id,
            count: task.action_count(),
        });
    }
    let mut state = task.init.clone();
    for (step, &id) in plan.iter().enumerate() {
        let action = task.action(id);
        if !applicable(&state, action) {
            return Ok(attribute_failure(task, plan, step, &state));
        }
        state = successor(&state, action);
    }
    let missing: Vec<AtomId> = task
        .goal
        .iter()
        .copied()
        .filter(|g| !state.contains(*g))
        .collect();
    if missing.is_empty() {
        Ok(ValidationOutcome::Success { final_state: state })
    } else {
        Ok(ValidationOutcome::GoalUnsatisfied {
            final_state: state,
            missing,
        })
    }
}

fn attribute_failure(
    task: &GroundedTask,
    plan: &[ActionId],
    step: usize,
    state: &State,
) -> ValidationOutcome {
    let action = task.action(plan[step]);
    let missing: Vec<AtomId> = action
        .pre
        .iter()
        .copied()
        .filter(|p| !state.contains(*p))
        .collect();
    let mut best: Option<(usize, AtomId)> = None;
    for &atom in &missing {
        let deleter = (0..step)
            .rev()
            .find(|&k| task.action(plan[k]).deletes(atom));
        if let Some(k) = deleter {
            if best.map_or(true, |(bk, _)| k > bk) {
                best = Some((k, atom));
            }
        }
    }
    match best {
        Some((culprit_step, atom)) => ValidationOutcome::PreconditionConflict {
            step,
            culprit_step,
            atom,
        },
        None => ValidationOutcome::PreconditionUnsupported {
            step,
            atom: missing[0],
        },
    }
}

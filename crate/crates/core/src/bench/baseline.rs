use serde::{Deserialize, Serialize};

use crate::grounding::{ActionId, GroundedTask};
use crate::search::{astar_subspace, Cost};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaselineOutcome {
    /// `None` when no plan was found within the budget.
    pub plan: Option<Vec<ActionId>>,
    pub h_init: Cost,
    pub nodes_expanded: usize,
}

/// A* with the FF heuristic over the whole grounded action set, no bound.
pub fn baseline_plan(task: &GroundedTask, budget: usize) -> BaselineOutcome {
    let all: Vec<ActionId> = (0..task.action_count()).collect();
    let res = astar_subspace(task, &all, Cost::INFINITY, budget);
    BaselineOutcome {
        plan: res.best_plan().map(|p| p.actions.clone()),
        h_init: res.h_init,
        nodes_expanded: res.nodes_expanded,
    }
}

//! Best-first search restricted to an action subspace and pruned by a
//! global cost threshold.

use std::cmp::Reverse;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};

use serde::{Deserialize, Serialize};

use crate::grounding::{applicable, successor, ActionId, GroundedTask, State};

use super::ff::FfHeuristic;
use super::Cost;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundPlan {
    pub actions: Vec<ActionId>,
    pub f: Cost,
}

#[derive(Debug, Clone, Default)]
pub struct LocalResult {
    /// Goal hits in discovery order.
    pub plans: Vec<FoundPlan>,
    pub nodes_expanded: usize,
    pub best_f: Cost,
    pub h_init: Cost,
    /// Partial plan of the generated node with the lowest `h` (then `g`).
    pub best_partial: Vec<ActionId>,
}

impl LocalResult {
    pub fn best_plan(&self) -> Option<&FoundPlan> {
        let mut best: Option<&FoundPlan> = None;
        for p in &self.plans {
            if best.map_or(true, |b| p.f < b.f) {
                best = Some(p);
            }
        }
        best
    }
}

struct Node {
    state: State,
    parent: Option<usize>,
    action: Option<ActionId>,
    g: u32,
}

fn plan_to(nodes: &[Node], mut idx: usize) -> Vec<ActionId> {
    let mut plan = Vec::new();
    while let Some(action) = nodes[idx].action {
        plan.push(action);
        idx = nodes[idx].parent.expect("non-root node has a parent");
    }
    plan.reverse();
    plan
}

/// A* over `subspace` with unit costs and the FF heuristic.
///
/// A node is expanded only while `f < bound`. The search does not stop at
/// the first goal: it keeps collecting goal hits until the open list is
/// exhausted, the bound prunes the rest, or `budget` expansions were spent.
pub fn astar_subspace(
    task: &GroundedTask,
    subspace: &[ActionId],
    bound: Cost,
    budget: usize,
) -> LocalResult {
    astar_subspace_observed(task, subspace, bound, budget, &mut |_, _| {})
}

/// Same as [`astar_subspace`], reporting every expansion as `(state, g)`.
pub fn astar_subspace_observed(
    task: &GroundedTask,
    subspace: &[ActionId],
    bound: Cost,
    budget: usize,
    on_expand: &mut dyn FnMut(&State, u32),
) -> LocalResult {
    let heuristic = FfHeuristic::new(task, subspace, &task.goal);
    let actions = heuristic.subspace().to_vec();

    let h_init = heuristic.evaluate(&task.init);
    let mut result = LocalResult {
        h_init,
        ..LocalResult::default()
    };
    if h_init.is_infinite() {
        return result;
    }

    let mut nodes = vec![Node {
        state: task.init.clone(),
        parent: None,
        action: None,
        g: 0,
    }];
    let mut best_g: HashMap<State, u32> = HashMap::new();
    best_g.insert(task.init.clone(), 0);
    let mut open = BinaryHeap::new();
    let mut seq = 0u64;
    open.push(Reverse((h_init, h_init, seq, 0usize)));
    let mut best_partial = (h_init, 0u32, 0usize);

    while let Some(Reverse((f, _h, _, idx))) = open.pop() {
        let node = &nodes[idx];
        if best_g.get(&node.state).is_some_and(|&g| g < node.g) {
            continue;
        }
        if f >= bound {
            break;
        }
        if task.is_goal(&node.state) {
            result.plans.push(FoundPlan {
                actions: plan_to(&nodes, idx),
                f,
            });
            result.best_f = result.best_f.min(f);
            continue;
        }
        if result.nodes_expanded >= budget {
            break;
        }
        result.nodes_expanded += 1;
        on_expand(&node.state, node.g);

        let parent_state = node.state.clone();
        let g = node.g + 1;
        for &id in &actions {
            let action = task.action(id);
            if !applicable(&parent_state, action) {
                continue;
            }
            let child = successor(&parent_state, action);
            match best_g.entry(child.clone()) {
                Entry::Occupied(mut e) => {
                    if *e.get() <= g {
                        continue;
                    }
                    e.insert(g);
                }
                Entry::Vacant(e) => {
                    e.insert(g);
                }
            }
            let h = heuristic.evaluate(&child);
            if h.is_infinite() {
                continue;
            }
            let child_idx = nodes.len();
            nodes.push(Node {
                state: child,
                parent: Some(idx),
                action: Some(id),
                g,
            });
            if (h, g) < (best_partial.0, best_partial.1) {
                best_partial = (h, g, child_idx);
            }
            seq += 1;
            open.push(Reverse((Cost::new(g).saturating_add(h), h, seq, child_idx)));
        }
    }
    result.best_partial = plan_to(&nodes, best_partial.2);
    result
}

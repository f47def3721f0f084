use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::grounding::{applicable, successor, ActionId, GroundedTask, State};

/// Default state cap for the breadth-first oracle.
pub const ORACLE_STATE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    /// Length of a shortest plan, if the goal is reachable.
    pub optimal: Option<usize>,
    pub optimal_plan: Option<Vec<ActionId>>,
    /// Reachable states visited (all of them when `complete`).
    pub reachable: usize,
    /// False if the cap stopped the search.
    pub complete: bool,
}

/// Breadth-first search over the full transition graph. Explores every
/// reachable state (up to `cap`) so the reachable count is exact.
pub fn bfs_oracle(task: &GroundedTask, cap: usize) -> OracleResult {
    let mut parent: HashMap<State, Option<(State, ActionId)>> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert(task.init.clone(), None);
    queue.push_back(task.init.clone());
    let mut goal_state: Option<State> = None;
    let mut complete = true;

    while let Some(state) = queue.pop_front() {
        if goal_state.is_none() && task.is_goal(&state) {
            goal_state = Some(state.clone());
        }
        for action in &task.actions {
            if !applicable(&state, action) {
                continue;
            }
            let next = successor(&state, action);
            if parent.contains_key(&next) {
                continue;
            }
            if parent.len() >= cap {
                complete = false;
                break;
            }
            parent.insert(next.clone(), Some((state.clone(), action.id)));
            queue.push_back(next);
        }
        if !complete {
            break;
        }
    }
    if goal_state.is_none() {
        // states still queued when the cap hit may be goals
        goal_state = queue.iter().find(|s| task.is_goal(s)).cloned();
    }

    let optimal_plan = goal_state.map(|mut s| {
        let mut plan = Vec::new();
        while let Some(Some((prev, a))) = parent.get(&s) {
            plan.push(*a);
            s = prev.clone();
        }
        plan.reverse();
        plan
    });
    OracleResult {
        optimal: optimal_plan.as_ref().map(Vec::len),
        optimal_plan,
        reachable: parent.len(),
        complete,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grounding::validate_plan;
    use crate::test_support::{blocks_task, two_block_task};

    #[test]
    fn two_blocks() {
        let task = two_block_task();
        let r = bfs_oracle(&task, ORACLE_STATE_CAP);
        assert_eq!(r.optimal, Some(2));
        assert!(r.complete);
        // both on table, b1 held, b2 held, b1 on b2, b2 on b1
        assert_eq!(r.reachable, 5);
        assert!(validate_plan(&task, &r.optimal_plan.unwrap())
            .unwrap()
            .is_success());
    }

    #[test]
    fn three_block_tower() {
        let task = blocks_task(
            &["a", "b", "c"],
            &[("on", &["a", "b"]), ("on", &["b", "c"])],
        );
        let r = bfs_oracle(&task, ORACLE_STATE_CAP);
        assert_eq!(r.optimal, Some(4));
        assert_eq!(r.reachable, 22);
    }

    #[test]
    fn cap_is_reported() {
        let task = blocks_task(
            &["a", "b", "c"],
            &[("on", &["a", "b"]), ("on", &["b", "c"])],
        );
        let r = bfs_oracle(&task, 4);
        assert!(!r.complete);
        assert!(r.reachable <= 4);
    }
}

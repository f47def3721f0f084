//! Fast-forward heuristic: relaxed planning graph built to fixpoint, then a
//! relaxed plan extracted backwards. Each subgoal takes its earliest-layer
//! achiever; ties go to the lowest action id.

use crate::grounding::{ActionId, AtomId, GroundedTask, State};

use super::Cost;

const UNREACHED: u32 = u32::MAX;

/// Precomputed relaxed-planning-graph indices for one action subspace.
pub struct FfHeuristic<'a> {
    task: &'a GroundedTask,
    /// Subspace action ids, ascending.
    actions: Vec<ActionId>,
    /// atom -> local indices of actions requiring it
    consumers: Vec<Vec<u32>>,
    /// atom -> local indices of actions adding it, ascending by id
    achievers: Vec<Vec<u32>>,
    goal: Vec<AtomId>,
}

impl<'a> FfHeuristic<'a> {
    pub fn new(task: &'a GroundedTask, subspace: &[ActionId], goal: &[AtomId]) -> Self {
        let mut actions = subspace.to_vec();
        actions.sort_unstable();
        actions.dedup();
        let n = task.atom_count();
        let mut consumers = vec![Vec::new(); n];
        let mut achievers = vec![Vec::new(); n];
        for (local, &id) in actions.iter().enumerate() {
            let action = task.action(id);
            for &p in &action.pre {
                consumers[p].push(local as u32);
            }
            for &a in &action.add {
                achievers[a].push(local as u32);
            }
        }
        // duplicates would be counted twice as open goals
        let mut goal = goal.to_vec();
        goal.sort_unstable();
        goal.dedup();
        FfHeuristic {
            task,
            actions,
            consumers,
            achievers,
            goal,
        }
    }

    pub fn subspace(&self) -> &[ActionId] {
        &self.actions
    }

    pub fn evaluate(&self, state: &State) -> Cost {
        let n = self.task.atom_count();
        let mut fact_level = vec![UNREACHED; n];
        let mut action_level = vec![UNREACHED; self.actions.len()];
        let mut remaining: Vec<usize> = self
            .actions
            .iter()
            .map(|&id| self.task.action(id).pre.len())
            .collect();

        let mut layer: Vec<AtomId> = state.atoms().collect();
        for &a in &layer {
            fact_level[a] = 0;
        }
        let mut open_goals = self
            .goal
            .iter()
            .filter(|g| fact_level[**g] == UNREACHED)
            .count();
        if open_goals == 0 {
            return Cost::ZERO;
        }

        let mut level = 0u32;
        loop {
            let mut enabled: Vec<u32> = Vec::new();
            if level == 0 {
                enabled.extend(
                    remaining
                        .iter()
                        .enumerate()
                        .filter(|(_, r)| **r == 0)
                        .map(|(i, _)| i as u32),
                );
            }
            for &atom in &layer {
                for &local in &self.consumers[atom] {
                    let r = &mut remaining[local as usize];
                    *r -= 1;
                    if *r == 0 {
                        enabled.push(local);
                    }
                }
            }
            let mut next = Vec::new();
            for &local in &enabled {
                action_level[local as usize] = level;
                for &add in &self.task.action(self.actions[local as usize]).add {
                    if fact_level[add] == UNREACHED {
                        fact_level[add] = level + 1;
                        next.push(add);
                    }
                }
            }
            open_goals -= next.iter().filter(|a| self.goal.contains(a)).count();
            if open_goals == 0 || next.is_empty() {
                break;
            }
            layer = next;
            level += 1;
        }
        if open_goals > 0 {
            return Cost::INFINITY;
        }
        self.extract(&fact_level, &action_level)
    }

    fn extract(&self, fact_level: &[u32], action_level: &[u32]) -> Cost {
        let top = self.goal.iter().map(|g| fact_level[*g]).max().unwrap_or(0) as usize;
        let mut buckets: Vec<Vec<AtomId>> = vec![Vec::new(); top + 1];
        for &g in &self.goal {
            if fact_level[g] > 0 {
                buckets[fact_level[g] as usize].push(g);
            }
        }
        let mut marked = vec![false; fact_level.len()];
        let mut selected = vec![false; self.actions.len()];
        let mut count = 0u32;
        for layer in (1..=top).rev() {
            let subgoals = std::mem::take(&mut buckets[layer]);
            for g in subgoals {
                if marked[g] {
                    continue;
                }
                let local = self.achievers[g]
                    .iter()
                    .copied()
                    .find(|&l| action_level[l as usize] as usize == layer - 1)
                    .expect("reached fact has an achiever one layer below");
                let action = self.task.action(self.actions[local as usize]);
                if !selected[local as usize] {
                    selected[local as usize] = true;
                    count += 1;
                    for &p in &action.pre {
                        let lvl = fact_level[p];
                        if lvl > 0 && !marked[p] {
                            buckets[lvl as usize].push(p);
                        }
                    }
                }
                for &a in &action.add {
                    marked[a] = true;
                }
            }
        }
        Cost::new(count)
    }
}

/// One-shot evaluation of the FF heuristic over `subspace`.
pub fn ff_heuristic(
    task: &GroundedTask,
    state: &State,
    goal: &[AtomId],
    subspace: &[ActionId],
) -> Cost {
    FfHeuristic::new(task, subspace, goal).evaluate(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pddl::Atom;
    use crate::test_support::two_block_task;

    #[test]
    fn zero_when_goal_holds() {
        let task = two_block_task();
        let all: Vec<ActionId> = (0..task.action_count()).collect();
        let goal = vec![task
            .atom_id(&Atom::new("handempty", Vec::<String>::new()))
            .unwrap()];
        assert_eq!(ff_heuristic(&task, &task.init, &goal, &all), Cost::ZERO);
        assert_eq!(ff_heuristic(&task, &task.init, &[], &[]), Cost::ZERO);
    }

    #[test]
    fn holding_is_one_step_away() {
        let task = two_block_task();
        let all: Vec<ActionId> = (0..task.action_count()).collect();
        let goal = vec![task.atom_id(&Atom::new("holding", ["b1"])).unwrap()];
        assert_eq!(ff_heuristic(&task, &task.init, &goal, &all), Cost::new(1));
    }

    #[test]
    fn stack_goal_needs_two_relaxed_steps() {
        let task = two_block_task();
        let all: Vec<ActionId> = (0..task.action_count()).collect();
        assert_eq!(
            ff_heuristic(&task, &task.init, &task.goal, &all),
            Cost::new(2)
        );
    }

    #[test]
    fn repeated_goal_atoms_count_once() {
        let task = two_block_task();
        let all: Vec<ActionId> = (0..task.action_count()).collect();
        let held = task.atom_id(&Atom::new("holding", ["b1"])).unwrap();
        assert_eq!(
            ff_heuristic(&task, &task.init, &[held, held], &all),
            Cost::new(1)
        );
    }

    #[test]
    fn infinite_without_achiever() {
        let task = two_block_task();
        let no_stack: Vec<ActionId> = task
            .actions
            .iter()
            .filter(|a| a.schema != "stack")
            .map(|a| a.id)
            .collect();
        assert!(ff_heuristic(&task, &task.init, &task.goal, &no_stack).is_infinite());
    }
}

//! Reference oracles for the integration tests. They work on plain atom
//! sets and instantiate action schemas themselves, so they share nothing
//! with the bitset machinery under test beyond the parsed domain.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use plahx::grounding::GroundedTask;
use plahx::pddl::{ActionSchema, Atom, Domain};

pub type AtomSet = BTreeSet<Atom>;

/// Preconditions, adds and deletes of one schema instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub label: String,
    pub pre: Vec<Atom>,
    pub add: Vec<Atom>,
    pub del: Vec<Atom>,
}

fn substitute(atom: &Atom, schema: &ActionSchema, binding: &[String]) -> Atom {
    let args = atom
        .args
        .iter()
        .map(|arg| {
            let bare = arg.trim_start_matches('?');
            match schema
                .params
                .iter()
                .position(|p| p.name.trim_start_matches('?') == bare)
            {
                Some(i) if arg.starts_with('?') => binding[i].clone(),
                _ => arg.clone(),
            }
        })
        .collect::<Vec<String>>();
    Atom::new(atom.predicate.clone(), args)
}

pub fn instantiate(domain: &Domain, schema: &str, binding: &[String]) -> Instance {
    let s = domain.schema(schema).expect("schema exists");
    let map = |atoms: &[Atom]| {
        atoms
            .iter()
            .map(|a| substitute(a, s, binding))
            .collect::<Vec<_>>()
    };
    let mut label = format!("({schema}");
    for b in binding {
        label.push(' ');
        label.push_str(b);
    }
    label.push(')');
    Instance {
        label,
        pre: map(&s.preconditions),
        add: map(&s.add_effects),
        del: map(&s.del_effects),
    }
}

/// Instances for every grounded action of `task`, indexed by action id.
/// Only the schema name and binding are taken from the task.
pub fn instances(domain: &Domain, task: &GroundedTask) -> Vec<Instance> {
    task.actions
        .iter()
        .map(|a| instantiate(domain, &a.schema, &a.binding))
        .collect()
}

pub fn holds(state: &AtomSet, atoms: &[Atom]) -> bool {
    atoms.iter().all(|a| state.contains(a))
}

/// Deletes first, then adds.
pub fn step(state: &AtomSet, inst: &Instance) -> AtomSet {
    let mut next = state.clone();
    for d in &inst.del {
        next.remove(d);
    }
    for a in &inst.add {
        next.insert(a.clone());
    }
    next
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimOutcome {
    Success(AtomSet),
    GoalUnsatisfied {
        state: AtomSet,
        missing: AtomSet,
    },
    /// First inapplicable step and the atoms it was missing.
    Inapplicable {
        step: usize,
        missing: BTreeSet<Atom>,
    },
}

pub fn simulate(init: &AtomSet, goal: &AtomSet, plan: &[&Instance]) -> SimOutcome {
    let mut state = init.clone();
    for (i, inst) in plan.iter().enumerate() {
        let missing: BTreeSet<Atom> = inst
            .pre
            .iter()
            .filter(|p| !state.contains(*p))
            .cloned()
            .collect();
        if !missing.is_empty() {
            return SimOutcome::Inapplicable { step: i, missing };
        }
        state = step(&state, inst);
    }
    let missing: BTreeSet<Atom> = goal
        .iter()
        .filter(|g| !state.contains(*g))
        .cloned()
        .collect();
    if missing.is_empty() {
        SimOutcome::Success(state)
    } else {
        SimOutcome::GoalUnsatisfied { state, missing }
    }
}

/// Delete-relaxed reachability of `goal` from `state` with `actions`.
pub fn relaxed_reachable(state: &AtomSet, goal: &[Atom], actions: &[&Instance]) -> bool {
    let mut facts: HashSet<&Atom> = state.iter().collect();
    loop {
        let mut grew = false;
        for inst in actions {
            if inst.pre.iter().all(|p| facts.contains(p)) {
                for a in &inst.add {
                    grew |= facts.insert(a);
                }
            }
        }
        if !grew {
            break;
        }
    }
    goal.iter().all(|g| facts.contains(g))
}

pub struct BfsResult {
    pub optimal: Option<usize>,
    pub reachable: usize,
    pub complete: bool,
}

/// Breadth-first search over the full state graph, up to `cap` states.
pub fn bfs(init: &AtomSet, goal: &AtomSet, actions: &[Instance], cap: usize) -> BfsResult {
    let goal: Vec<Atom> = goal.iter().cloned().collect();
    let mut depth: HashMap<AtomSet, usize> = HashMap::new();
    depth.insert(init.clone(), 0);
    let mut queue = VecDeque::from([init.clone()]);
    let mut optimal = None;
    while let Some(state) = queue.pop_front() {
        let d = depth[&state];
        if optimal.is_none() && holds(&state, &goal) {
            optimal = Some(d);
        }
        for inst in actions {
            if !holds(&state, &inst.pre) {
                continue;
            }
            let next = step(&state, inst);
            if !depth.contains_key(&next) {
                if depth.len() >= cap {
                    return BfsResult {
                        optimal,
                        reachable: depth.len(),
                        complete: false,
                    };
                }
                depth.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    BfsResult {
        optimal,
        reachable: depth.len(),
        complete: true,
    }
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

pub fn rel_close(actual: f64, expected: f64, tol: f64) -> bool {
    if expected == 0.0 {
        actual.abs() <= tol
    } else {
        ((actual - expected) / expected).abs() <= tol
    }
}

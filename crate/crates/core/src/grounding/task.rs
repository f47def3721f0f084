use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::pddl::{Atom, Domain, Problem, TypedName};

pub type ActionId = usize;
pub type AtomId = usize;

/// Ground state as a bitset over the task's atom table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(FixedBitSet);

impl State {
    pub fn empty(atom_count: usize) -> Self {
        State(FixedBitSet::with_capacity(atom_count))
    }

    pub fn from_atoms(atom_count: usize, atoms: impl IntoIterator<Item = AtomId>) -> Self {
        let mut bits = FixedBitSet::with_capacity(atom_count);
        for a in atoms {
            bits.insert(a);
        }
        State(bits)
    }

    pub fn contains(&self, atom: AtomId) -> bool {
        self.0.contains(atom)
    }

    pub fn insert(&mut self, atom: AtomId) {
        self.0.insert(atom);
    }

    pub fn remove(&mut self, atom: AtomId) {
        self.0.set(atom, false);
    }

    pub fn is_superset(&self, other: &State) -> bool {
        other.0.is_subset(&self.0)
    }

    pub fn atoms(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.0.ones()
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.ones()).finish()
    }
}

#[derive(Debug, Clone)]
pub struct GroundedAction {
    pub id: ActionId,
    pub schema: String,
    pub binding: Vec<String>,
    /// Sorted, duplicate-free atom ids.
    pub pre: Vec<AtomId>,
    pub add: Vec<AtomId>,
    pub del: Vec<AtomId>,
    pre_mask: State,
    add_mask: State,
    del_mask: State,
}

impl GroundedAction {
    pub fn pre_mask(&self) -> &State {
        &self.pre_mask
    }

    pub fn adds(&self, atom: AtomId) -> bool {
        self.add_mask.contains(atom)
    }

    pub fn deletes(&self, atom: AtomId) -> bool {
        self.del_mask.contains(atom)
    }

    /// `(schema obj1 obj2 ...)`
    pub fn label(&self) -> String {
        let mut out = format!("({}", self.schema);
        for arg in &self.binding {
            out.push(' ');
            out.push_str(arg);
        }
        out.push(')');
        out
    }
}

/// Indexed grounded action set with initial state and goal.
#[derive(Debug, Clone)]
pub struct GroundedTask {
    pub domain_name: String,
    pub problem_name: String,
    pub objects: Vec<TypedName>,
    pub atoms: Vec<Atom>,
    pub actions: Vec<GroundedAction>,
    pub init: State,
    pub goal: Vec<AtomId>,
    atom_index: HashMap<Atom, AtomId>,
    goal_mask: State,
}

impl GroundedTask {
    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn action_count(&self) -> usize {
        self.actions.len()
    }

    pub fn atom_id(&self, atom: &Atom) -> Option<AtomId> {
        self.atom_index.get(atom).copied()
    }

    pub fn goal_mask(&self) -> &State {
        &self.goal_mask
    }

    pub fn is_goal(&self, state: &State) -> bool {
        state.is_superset(&self.goal_mask)
    }

    pub fn action(&self, id: ActionId) -> &GroundedAction {
        &self.actions[id]
    }

    pub fn find_action(&self, schema: &str, binding: &[String]) -> Option<ActionId> {
        self.actions
            .iter()
            .find(|a| a.schema == schema && a.binding == binding)
            .map(|a| a.id)
    }

    /// Atom names of a state, sorted.
    pub fn describe(&self, state: &State) -> Vec<Atom> {
        let mut atoms: Vec<Atom> = state.atoms().map(|id| self.atoms[id].clone()).collect();
        atoms.sort();
        atoms
    }
}

struct AtomTable {
    atoms: Vec<Atom>,
    index: HashMap<Atom, AtomId>,
}

impl AtomTable {
    fn intern(&mut self, atom: Atom) -> AtomId {
        if let Some(&id) = self.index.get(&atom) {
            return id;
        }
        let id = self.atoms.len();
        self.index.insert(atom.clone(), id);
        self.atoms.push(atom);
        id
    }
}

fn substitute(atom: &Atom, params: &[TypedName], binding: &[&str]) -> Atom {
    Atom {
        predicate: atom.predicate.clone(),
        args: atom
            .args
            .iter()
            .map(|arg| match params.iter().position(|p| &p.name == arg) {
                Some(idx) => binding[idx].to_string(),
                None => arg.clone(),
            })
            .collect(),
    }
}

fn sorted_ids(ids: impl IntoIterator<Item = AtomId>) -> Vec<AtomId> {
    let mut v: Vec<AtomId> = ids.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}

struct RawAction {
    schema: String,
    binding: Vec<String>,
    pre: Vec<AtomId>,
    add: Vec<AtomId>,
    del: Vec<AtomId>,
}

/// Instantiates every schema with every type-consistent object tuple.
///
/// Actions are indexed by schema order, then lexicographically by the
/// binding over name-sorted objects. Repeated objects in a binding are
/// allowed. When a ground action would both add and delete an atom, the
/// add wins and the atom is dropped from the delete list.
pub fn ground(domain: &Domain, problem: &Problem) -> GroundedTask {
    let mut table = AtomTable {
        atoms: Vec::new(),
        index: HashMap::new(),
    };
    let init_ids: Vec<AtomId> = problem
        .init
        .iter()
        .map(|a| table.intern(a.clone()))
        .collect();
    let goal_ids = sorted_ids(problem.goal.iter().map(|a| table.intern(a.clone())));

    let mut sorted_objects: Vec<&TypedName> = problem.objects.iter().collect();
    sorted_objects.sort_by(|a, b| a.name.cmp(&b.name));

    let mut raw = Vec::new();
    for schema in &domain.schemas {
        let candidates: Vec<Vec<&str>> = schema
            .params
            .iter()
            .map(|p| {
                sorted_objects
                    .iter()
                    .filter(|o| domain.is_subtype(&o.ty, &p.ty))
                    .map(|o| o.name.as_str())
                    .collect()
            })
            .collect();
        if candidates.iter().any(Vec::is_empty) {
            continue;
        }
        let mut cursor = vec![0usize; candidates.len()];
        'bindings: loop {
            let binding: Vec<&str> = cursor.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
            let mut intern_all = |atoms: &[Atom]| -> Vec<AtomId> {
                sorted_ids(
                    atoms
                        .iter()
                        .map(|a| table.intern(substitute(a, &schema.params, &binding))),
                )
            };
            let pre = intern_all(&schema.preconditions);
            let add = intern_all(&schema.add_effects);
            let del: Vec<AtomId> = intern_all(&schema.del_effects)
                .into_iter()
                .filter(|d| add.binary_search(d).is_err())
                .collect();
            raw.push(RawAction {
                schema: schema.name.clone(),
                binding: binding.iter().map(|s| s.to_string()).collect(),
                pre,
                add,
                del,
            });
            // odometer increment, last position fastest
            let mut pos = cursor.len();
            loop {
                if pos == 0 {
                    break 'bindings;
                }
                pos -= 1;
                cursor[pos] += 1;
                if cursor[pos] < candidates[pos].len() {
                    break;
                }
                cursor[pos] = 0;
            }
        }
    }

    let n = table.atoms.len();
    let actions = raw
        .into_iter()
        .enumerate()
        .map(|(id, r)| GroundedAction {
            id,
            pre_mask: State::from_atoms(n, r.pre.iter().copied()),
            add_mask: State::from_atoms(n, r.add.iter().copied()),
            del_mask: State::from_atoms(n, r.del.iter().copied()),
            schema: r.schema,
            binding: r.binding,
            pre: r.pre,
            add: r.add,
            del: r.del,
        })
        .collect();

    GroundedTask {
        domain_name: domain.name.clone(),
        problem_name: problem.name.clone(),
        objects: problem.objects.clone(),
        init: State::from_atoms(n, init_ids),
        goal_mask: State::from_atoms(n, goal_ids.iter().copied()),
        goal: goal_ids,
        atoms: table.atoms,
        atom_index: table.index,
        actions,
    }
}

pub fn applicable(state: &State, action: &GroundedAction) -> bool {
    state.is_superset(&action.pre_mask)
}

/// Successor without precondition check; callers guarantee applicability.
pub(crate) fn successor(state: &State, action: &GroundedAction) -> State {
    let mut bits = state.0.clone();
    bits.difference_with(&action.del_mask.0);
    bits.union_with(&action.add_mask.0);
    State(bits)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("action {action} is not applicable: precondition atom #{missing} does not hold")]
pub struct PreconditionViolated {
    pub action: String,
    pub missing: AtomId,
}

/// `(state \ del) ∪ add`; the input state is left untouched.
pub fn apply(state: &State, action: &GroundedAction) -> Result<State, PreconditionViolated> {
    if let Some(&missing) = action.pre.iter().find(|&&p| !state.contains(p)) {
        return Err(PreconditionViolated {
            action: action.label(),
            missing,
        });
    }
    Ok(successor(state, action))
}

/// Critical actions either achieve a goal atom or are executable in the
/// initial state; they are kept in every subspace.
pub fn is_critical(action: &GroundedAction, task: &GroundedTask) -> bool {
    action.add.iter().any(|a| task.goal_mask.contains(*a)) || applicable(&task.init, action)
}

pub fn critical_actions(task: &GroundedTask) -> Vec<ActionId> {
    task.actions
        .iter()
        .filter(|a| is_critical(a, task))
        .map(|a| a.id)
        .collect()
}

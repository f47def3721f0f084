//! Minimal symbolic abstraction: objects, initial atoms, goal atoms.
//!
//! Wire format (see `docs/abstraction-grammar.md`):
//!
//! ```text
//! (:objects b1 b2 - block)
//! (:init (ontable b1) (ontable b2) (clear b1) (clear b2) (handempty))
//! (:goal (on b1 b2))
//! ```

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pddl::sexpr::{self, SExpr};
use crate::pddl::{
    check_ground_atom, merge_objects, read_ground_atom, read_typed_list, typed_list, Atom, Domain,
    ParseError, Problem, TypedName,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abstraction {
    pub objects: Vec<TypedName>,
    pub init: Vec<Atom>,
    pub goal: Vec<Atom>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbstractionError {
    #[error("abstraction syntax error: {0}")]
    Syntax(String),
    #[error("abstraction semantic error: {0}")]
    Semantic(String),
}

const SECTIONS: [&str; 3] = [":objects", ":init", ":goal"];

fn grammar(err: ParseError) -> AbstractionError {
    AbstractionError::Syntax(err.to_string())
}

fn section<'a>(expr: &'a SExpr, keyword: &str) -> Result<&'a [SExpr], AbstractionError> {
    match expr.as_list() {
        Some([head, rest @ ..]) if head.as_symbol() == Some(keyword) => Ok(rest),
        _ => Err(AbstractionError::Syntax(format!(
            "line {}: expected `({keyword} ...)`, found `{}`",
            expr.line(),
            expr.describe()
        ))),
    }
}

fn atoms(items: &[SExpr]) -> Result<Vec<Atom>, AbstractionError> {
    items
        .iter()
        .map(|a| read_ground_atom(a).map_err(grammar))
        .collect()
}

impl Abstraction {
    /// Strict reader: exactly the three sections, in order, atoms listed flat.
    pub fn parse(text: &str) -> Result<Abstraction, AbstractionError> {
        let exprs = sexpr::parse_all(text).map_err(grammar)?;
        if exprs.len() != SECTIONS.len() {
            return Err(AbstractionError::Syntax(format!(
                "expected 3 sections (:objects :init :goal), found {}",
                exprs.len()
            )));
        }
        let objects = read_typed_list(section(&exprs[0], SECTIONS[0])?, false).map_err(grammar)?;
        let init = atoms(section(&exprs[1], SECTIONS[1])?)?;
        let goal = atoms(section(&exprs[2], SECTIONS[2])?)?;
        Ok(Abstraction {
            objects,
            init,
            goal,
        })
    }

    pub fn to_text(&self) -> String {
        let join = |atoms: &[Atom]| atoms.iter().map(|a| format!(" {a}")).collect::<String>();
        let objects = typed_list(&self.objects);
        format!(
            "(:objects{}{})\n(:init{})\n(:goal{})\n",
            if objects.is_empty() { "" } else { " " },
            objects,
            join(&self.init),
            join(&self.goal)
        )
    }

    /// Problem-file sections as an abstraction; domain constants are left out.
    pub fn from_problem(problem: &Problem, domain: &Domain) -> Abstraction {
        Abstraction {
            objects: problem
                .objects
                .iter()
                .filter(|o| !domain.constants.contains(o))
                .cloned()
                .collect(),
            init: problem.init.iter().cloned().collect(),
            goal: problem.goal.iter().cloned().collect(),
        }
    }

    /// Checks predicates, arity, object declarations and types, and a
    /// non-empty goal.
    pub fn validate(&self, domain: &Domain) -> Result<Vec<TypedName>, AbstractionError> {
        let semantic = |e: ParseError| AbstractionError::Semantic(e.to_string());
        let objects = merge_objects(domain, self.objects.clone(), 1).map_err(semantic)?;
        for atom in self.init.iter().chain(&self.goal) {
            check_ground_atom(domain, &objects, atom, 1).map_err(semantic)?;
        }
        if self.goal.is_empty() {
            return Err(AbstractionError::Semantic(
                "goal must contain at least one atom".into(),
            ));
        }
        Ok(objects)
    }
}

/// Validates `z` and wraps it into a problem for `domain`.
pub fn embed_into_problem(
    z: &Abstraction,
    domain: &Domain,
    problem_name: &str,
) -> Result<Problem, AbstractionError> {
    let objects = z.validate(domain)?;
    Ok(Problem {
        name: problem_name.to_lowercase(),
        domain_name: domain.name.clone(),
        objects,
        init: z.init.iter().cloned().collect(),
        goal: z.goal.iter().cloned().collect::<BTreeSet<_>>(),
    })
}

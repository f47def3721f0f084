//! VAL-compatible plan files: one `(schema obj ...)` per line.

use thiserror::Error;

use super::task::{ActionId, GroundedTask};
use crate::pddl::sexpr::{self, SExpr};
use crate::pddl::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanTextError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error("line {line}: expected `(action obj ...)`, found `{found}`")]
    Malformed { line: usize, found: String },
    #[error("line {line}: no grounded action matches `{action}`")]
    UnknownAction { line: usize, action: String },
}

pub fn format_plan(task: &GroundedTask, plan: &[ActionId]) -> String {
    let mut out = String::new();
    for &id in plan {
        out.push_str(&task.action(id).label());
        out.push('\n');
    }
    out
}

/// Parses plan text; comment lines (`;`) are ignored and step prefixes such
/// as `0:` are tolerated.
pub fn parse_plan(task: &GroundedTask, text: &str) -> Result<Vec<ActionId>, PlanTextError> {
    let mut plan = Vec::new();
    for expr in sexpr::parse_all(text)? {
        let items = match &expr {
            SExpr::List { items, .. } => items,
            SExpr::Symbol { text, .. } if text.ends_with(':') => continue,
            other => {
                return Err(PlanTextError::Malformed {
                    line: other.line(),
                    found: other.describe(),
                })
            }
        };
        let symbols: Option<Vec<String>> = items
            .iter()
            .map(|i| i.as_symbol().map(str::to_string))
            .collect();
        let Some(symbols) = symbols.filter(|s| !s.is_empty()) else {
            return Err(PlanTextError::Malformed {
                line: expr.line(),
                found: expr.describe(),
            });
        };
        let id = task
            .find_action(&symbols[0], &symbols[1..])
            .ok_or_else(|| PlanTextError::UnknownAction {
                line: expr.line(),
                action: format!("({})", symbols.join(" ")),
            })?;
        plan.push(id);
    }
    Ok(plan)
}

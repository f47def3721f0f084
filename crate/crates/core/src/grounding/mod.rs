//! Grounding of action schemas, the STRIPS transition function, and an
//! internal plan validator with conflict attribution.

mod plan_text;
mod task;
mod validate;

pub use plan_text::{format_plan, parse_plan, PlanTextError};
pub(crate) use task::successor;
pub use task::{
    applicable, apply, critical_actions, ground, is_critical, ActionId, AtomId, GroundedAction,
    GroundedTask, PreconditionViolated, State,
};
pub use validate::{validate_plan, OutcomeKind, ValidationError, ValidationOutcome};

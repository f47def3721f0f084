//! Few-shot prompt template.
//!
//! ```text
//! ;; translate the task into (:objects ...) (:init ...) (:goal ...)
//! [DOMAIN]
//! <domain file>
//! [EXAMPLE 1]
//! [TASK]
//! <instruction>
//! [ABSTRACTION]
//! <abstraction>
//! ...
//! [QUERY]
//! [TASK]
//! <instruction>
//! [ABSTRACTION]
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const PROMPT_HEADER: &str = ";; translate the task into (:objects ...) (:init ...) (:goal ...)";

/// One demonstration: instruction and its target text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shot {
    pub instruction: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PromptError {
    #[error("shot {0} has an empty instruction")]
    EmptyInstruction(usize),
    #[error("shot {0} has an empty target")]
    EmptyTarget(usize),
    #[error("query instruction is empty")]
    EmptyQuery,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptBundle {
    pub domain: String,
    pub shots: Vec<Shot>,
    pub query: String,
}

pub fn build_prompt(
    domain: &str,
    shots: &[Shot],
    query: &str,
) -> Result<PromptBundle, PromptError> {
    for (i, shot) in shots.iter().enumerate() {
        if shot.instruction.trim().is_empty() {
            return Err(PromptError::EmptyInstruction(i));
        }
        if shot.target.trim().is_empty() {
            return Err(PromptError::EmptyTarget(i));
        }
    }
    if query.trim().is_empty() {
        return Err(PromptError::EmptyQuery);
    }
    Ok(PromptBundle {
        domain: domain.trim().to_string(),
        shots: shots.to_vec(),
        query: query.trim().to_string(),
    })
}

impl PromptBundle {
    pub fn shot_count(&self) -> usize {
        self.shots.len()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(PROMPT_HEADER);
        out.push_str("\n[DOMAIN]\n");
        out.push_str(&self.domain);
        out.push('\n');
        for (i, shot) in self.shots.iter().enumerate() {
            out.push_str(&format!("[EXAMPLE {}]\n[TASK]\n", i + 1));
            out.push_str(shot.instruction.trim());
            out.push_str("\n[ABSTRACTION]\n");
            out.push_str(shot.target.trim());
            out.push('\n');
        }
        out.push_str("[QUERY]\n[TASK]\n");
        out.push_str(&self.query);
        out.push_str("\n[ABSTRACTION]\n");
        out
    }
}

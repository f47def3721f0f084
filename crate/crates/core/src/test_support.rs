//! Shared fixtures for unit tests.

use crate::bench::DomainKind;
use crate::grounding::{ground, GroundedTask};
use crate::pddl::{parse_problem, Problem};

pub const TWO_BLOCK_PROBLEM: &str = "(define (problem stack-two) (:domain blocks)
  (:objects b1 b2 - block)
  (:init (ontable b1) (ontable b2) (clear b1) (clear b2) (handempty))
  (:goal (on b1 b2)))";

pub fn two_block_problem() -> Problem {
    parse_problem(TWO_BLOCK_PROBLEM, &DomainKind::Blocks.domain()).unwrap()
}

pub fn two_block_task() -> GroundedTask {
    ground(&DomainKind::Blocks.domain(), &two_block_problem())
}

/// All blocks on the table and clear, hand empty, with the given goal.
pub fn blocks_task(blocks: &[&str], goal: &[(&str, &[&str])]) -> GroundedTask {
    let mut init = String::from("(handempty)");
    for b in blocks {
        init.push_str(&format!(" (ontable {b}) (clear {b})"));
    }
    let goal: Vec<String> = goal
        .iter()
        .map(|(p, args)| format!("({} {})", p, args.join(" ")))
        .collect();
    let text = format!(
        "(define (problem t) (:domain blocks) (:objects {} - block) (:init {init}) (:goal (and {})))",
        blocks.join(" "),
        goal.join(" ")
    );
    let domain = DomainKind::Blocks.domain();
    ground(&domain, &parse_problem(&text, &domain).unwrap())
}

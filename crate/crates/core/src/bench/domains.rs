use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::pddl::{parse_domain, Domain};

pub const BLOCKS_DOMAIN: &str = include_str!("../../domains/blocks.pddl");
pub const HANOI_DOMAIN: &str = include_str!("../../domains/hanoi.pddl");
pub const GRIPPERS_DOMAIN: &str = include_str!("../../domains/grippers.pddl");
pub const REARRANGEMENT_DOMAIN: &str = include_str!("../../domains/rearrangement.pddl");

/// The four benchmark domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainKind {
    Blocks,
    Hanoi,
    Grippers,
    Rearrangement,
}

impl DomainKind {
    pub const ALL: [DomainKind; 4] = [
        DomainKind::Blocks,
        DomainKind::Hanoi,
        DomainKind::Grippers,
        DomainKind::Rearrangement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DomainKind::Blocks => "blocks",
            DomainKind::Hanoi => "hanoi",
            DomainKind::Grippers => "grippers",
            DomainKind::Rearrangement => "rearrangement",
        }
    }

    pub fn domain_text(self) -> &'static str {
        match self {
            DomainKind::Blocks => BLOCKS_DOMAIN,
            DomainKind::Hanoi => HANOI_DOMAIN,
            DomainKind::Grippers => GRIPPERS_DOMAIN,
            DomainKind::Rearrangement => REARRANGEMENT_DOMAIN,
        }
    }

    pub fn domain(self) -> Domain {
        parse_domain(self.domain_text()).expect("bundled domain parses")
    }

    /// Optimal plan-length window of generated instances.
    pub fn plan_length_range(self) -> (usize, usize) {
        match self {
            DomainKind::Blocks => (2, 12),
            DomainKind::Hanoi => (1, 3),
            DomainKind::Grippers => (4, 8),
            DomainKind::Rearrangement => (2, 4),
        }
    }

    pub fn from_domain_name(name: &str) -> Option<DomainKind> {
        DomainKind::ALL.into_iter().find(|k| k.name() == name)
    }
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DomainKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DomainKind::from_domain_name(&s.to_lowercase())
            .ok_or_else(|| format!("unknown domain `{s}`"))
    }
}

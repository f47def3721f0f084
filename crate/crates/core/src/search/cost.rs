use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};

use serde::{Deserialize, Serialize};

/// Non-negative unit cost with an explicit infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Option<u32>", into = "Option<u32>")]
pub struct Cost(u32);

impl Cost {
    pub const ZERO: Cost = Cost(0);
    pub const INFINITY: Cost = Cost(u32::MAX);

    pub fn new(value: u32) -> Cost {
        assert!(value < u32::MAX, "finite cost out of range");
        Cost(value)
    }

    pub fn from_len(len: usize) -> Cost {
        Cost::new(u32::try_from(len).expect("plan length fits in u32"))
    }

    pub fn is_infinite(self) -> bool {
        self.0 == u32::MAX
    }

    pub fn value(self) -> Option<u32> {
        (!self.is_infinite()).then_some(self.0)
    }

    pub fn saturating_add(self, other: Cost) -> Cost {
        if self.is_infinite() || other.is_infinite() {
            Cost::INFINITY
        } else {
            Cost(self.0.saturating_add(other.0).min(u32::MAX - 1))
        }
    }
}

impl Default for Cost {
    fn default() -> Self {
        Cost::INFINITY
    }
}

impl From<Option<u32>> for Cost {
    fn from(v: Option<u32>) -> Self {
        v.map_or(Cost::INFINITY, Cost)
    }
}

impl From<Cost> for Option<u32> {
    fn from(c: Cost) -> Self {
        c.value()
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("inf"),
        }
    }
}

/// `min(current, candidate)`; the global bound only ever decreases.
pub fn update_global_bound(current: Cost, candidate: Cost) -> Cost {
    current.min(candidate)
}

/// Global cost threshold shared by concurrent local searches.
#[derive(Debug)]
pub struct SharedBound(AtomicU32);

impl SharedBound {
    pub fn new(initial: Cost) -> Self {
        SharedBound(AtomicU32::new(initial.0))
    }

    pub fn snapshot(&self) -> Cost {
        Cost(self.0.load(Ordering::Acquire))
    }

    /// Atomic min; returns the bound after the update.
    pub fn offer(&self, candidate: Cost) -> Cost {
        let previous = self.0.fetch_min(candidate.0, Ordering::AcqRel);
        update_global_bound(Cost(previous), candidate)
    }
}

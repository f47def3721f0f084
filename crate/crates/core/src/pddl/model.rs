use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Root of every type hierarchy.
pub const OBJECT_TYPE: &str = "object";

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypedName {
    pub name: String,
    pub ty: String,
}

impl TypedName {
    pub fn new(name: impl Into<String>, ty: impl Into<String>) -> Self {
        TypedName {
            name: name.into(),
            ty: ty.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicate {
    pub name: String,
    /// Declared parameters; only the types matter for checking, the
    /// variable names are kept for serialization.
    pub params: Vec<TypedName>,
}

impl Predicate {
    pub fn arity(&self) -> usize {
        self.params.len()
    }

    pub fn param_types(&self) -> impl Iterator<Item = &str> {
        self.params.iter().map(|p| p.ty.as_str())
    }
}

/// A predicate applied to arguments. Arguments are object names in ground
/// context and `?variables` (or constants) inside action schemas.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<String>,
}

impl Atom {
    pub fn new<S: Into<String>>(
        predicate: impl Into<String>,
        args: impl IntoIterator<Item = S>,
    ) -> Self {
        Atom {
            predicate: predicate.into(),
            args: args.into_iter().map(Into::into).collect(),
        }
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(|a| !a.starts_with('?'))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.predicate)?;
        for arg in &self.args {
            write!(f, " {arg}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSchema {
    pub name: String,
    pub params: Vec<TypedName>,
    pub preconditions: Vec<Atom>,
    pub add_effects: Vec<Atom>,
    pub del_effects: Vec<Atom>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Domain {
    pub name: String,
    pub requirements: Vec<String>,
    /// child type -> parent type; `object` is implicit and never a key.
    pub types: BTreeMap<String, String>,
    pub constants: Vec<TypedName>,
    pub predicates: Vec<Predicate>,
    pub schemas: Vec<ActionSchema>,
}

impl Domain {
    pub fn predicate(&self, name: &str) -> Option<&Predicate> {
        self.predicates.iter().find(|p| p.name == name)
    }

    pub fn schema(&self, name: &str) -> Option<&ActionSchema> {
        self.schemas.iter().find(|s| s.name == name)
    }

    pub fn has_type(&self, ty: &str) -> bool {
        ty == OBJECT_TYPE || self.types.contains_key(ty)
    }

    /// True when `ty` equals `ancestor` or inherits from it.
    pub fn is_subtype(&self, ty: &str, ancestor: &str) -> bool {
        if ancestor == OBJECT_TYPE {
            return true;
        }
        let mut current = ty;
        // bounded walk; the hierarchy is acyclic once parsed
        for _ in 0..=self.types.len() {
            if current == ancestor {
                return true;
            }
            match self.types.get(current) {
                Some(parent) => current = parent,
                None => return false,
            }
        }
        false
    }

    /// Copy of this domain without the named schema.
    pub fn without_schema(&self, name: &str) -> Domain {
        let mut out = self.clone();
        out.schemas.retain(|s| s.name != name);
        out
    }
}

/// Set of ground atoms.
pub type State = BTreeSet<Atom>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Problem {
    pub name: String,
    pub domain_name: String,
    pub objects: Vec<TypedName>,
    pub init: State,
    pub goal: BTreeSet<Atom>,
}

impl Problem {
    pub fn object_type(&self, name: &str) -> Option<&str> {
        self.objects
            .iter()
            .find(|o| o.name == name)
            .map(|o| o.ty.as_str())
    }
}

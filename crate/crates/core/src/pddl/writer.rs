//! Canonical PDDL text output. `parse(serialize(x)) == x` for every model
//! produced by the parser.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::model::{ActionSchema, Atom, Domain, Problem, TypedName, OBJECT_TYPE};

/// Types that can be written back as PDDL text.
pub trait ToPddl {
    fn to_pddl(&self) -> String;
}

pub fn serialize<T: ToPddl + ?Sized>(item: &T) -> String {
    item.to_pddl()
}

/// `a b - t c - u d`: consecutive entries sharing a type are grouped; the
/// trailing `- object` is omitted.
pub(crate) fn typed_list(entries: &[TypedName]) -> String {
    let mut groups: Vec<(&str, Vec<&str>)> = Vec::new();
    for e in entries {
        match groups.last_mut() {
            Some((ty, names)) if *ty == e.ty => names.push(&e.name),
            _ => groups.push((&e.ty, vec![&e.name])),
        }
    }
    let count = groups.len();
    let mut out = Vec::new();
    for (idx, (ty, names)) in groups.into_iter().enumerate() {
        let mut chunk = names.join(" ");
        if ty != OBJECT_TYPE || idx + 1 < count {
            chunk.push_str(" - ");
            chunk.push_str(ty);
        }
        out.push(chunk);
    }
    out.join(" ")
}

fn conjunction<'a>(atoms: impl IntoIterator<Item = &'a Atom>, negated: &[Atom]) -> String {
    let mut parts: Vec<String> = atoms.into_iter().map(ToString::to_string).collect();
    parts.extend(negated.iter().map(|a| format!("(not {a})")));
    format!(
        "(and{}{})",
        if parts.is_empty() { "" } else { " " },
        parts.join(" ")
    )
}

fn write_schema(out: &mut String, schema: &ActionSchema) {
    let _ = writeln!(out, "  (:action {}", schema.name);
    let _ = writeln!(out, "    :parameters ({})", typed_list(&schema.params));
    let _ = writeln!(
        out,
        "    :precondition {}",
        conjunction(&schema.preconditions, &[])
    );
    let _ = write!(
        out,
        "    :effect {})",
        conjunction(&schema.add_effects, &schema.del_effects)
    );
}

impl ToPddl for Domain {
    fn to_pddl(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "(define (domain {})", self.name);
        if !self.requirements.is_empty() {
            let _ = write!(out, "\n  (:requirements {})", self.requirements.join(" "));
        }
        if !self.types.is_empty() {
            let mut by_parent: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
            for (child, parent) in &self.types {
                by_parent.entry(parent).or_default().push(child);
            }
            let groups: Vec<String> = by_parent
                .iter()
                .map(|(parent, children)| format!("{} - {parent}", children.join(" ")))
                .collect();
            let _ = write!(out, "\n  (:types {})", groups.join(" "));
        }
        if !self.constants.is_empty() {
            let _ = write!(out, "\n  (:constants {})", typed_list(&self.constants));
        }
        if !self.predicates.is_empty() {
            out.push_str("\n  (:predicates");
            for p in &self.predicates {
                let params = typed_list(&p.params);
                if params.is_empty() {
                    let _ = write!(out, "\n    ({})", p.name);
                } else {
                    let _ = write!(out, "\n    ({} {})", p.name, params);
                }
            }
            out.push(')');
        }
        for schema in &self.schemas {
            out.push('\n');
            write_schema(&mut out, schema);
        }
        out.push_str(")\n");
        out
    }
}

impl ToPddl for Problem {
    fn to_pddl(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "(define (problem {})", self.name);
        let _ = writeln!(out, "  (:domain {})", self.domain_name);
        let objects = typed_list(&self.objects);
        if objects.is_empty() {
            out.push_str("  (:objects)\n");
        } else {
            let _ = writeln!(out, "  (:objects {objects})");
        }
        out.push_str("  (:init");
        for atom in &self.init {
            let _ = write!(out, "\n    {atom}");
        }
        out.push_str(")\n");
        let _ = writeln!(out, "  (:goal {}))", conjunction(&self.goal, &[]));
        out
    }
}

//! Reader for the STRIPS + typing subset of PDDL.
//!
//! Anything outside that subset is rejected with the offending token and
//! line instead of being silently ignored.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::model::{ActionSchema, Atom, Domain, Predicate, Problem, TypedName, OBJECT_TYPE};
use super::sexpr::{self, SExpr};
use super::ParseError;

const SUPPORTED_REQUIREMENTS: &[&str] = &[":strips", ":typing"];

/// Condition/effect connectives that belong to richer PDDL fragments.
const UNSUPPORTED_CONNECTIVES: &[&str] = &[
    "not",
    "or",
    "imply",
    "forall",
    "exists",
    "when",
    "=",
    "<",
    ">",
    "<=",
    ">=",
    "increase",
    "decrease",
    "assign",
    "scale-up",
    "scale-down",
    "either",
];

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn semantic(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Semantic {
        line,
        message: message.into(),
    }
}

fn unsupported(line: usize, token: impl Into<String>) -> ParseError {
    ParseError::Unsupported {
        line,
        token: token.into(),
    }
}

fn expect_symbol<'a>(expr: &'a SExpr, what: &str) -> Result<&'a str, ParseError> {
    expr.as_symbol().ok_or_else(|| {
        syntax(
            expr.line(),
            format!("expected {what}, found `{}`", expr.describe()),
        )
    })
}

fn expect_list<'a>(expr: &'a SExpr, what: &str) -> Result<&'a [SExpr], ParseError> {
    expr.as_list().ok_or_else(|| {
        syntax(
            expr.line(),
            format!("expected {what}, found `{}`", expr.describe()),
        )
    })
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
}

fn expect_identifier<'a>(expr: &'a SExpr, what: &str) -> Result<&'a str, ParseError> {
    let name = expect_symbol(expr, what)?;
    if !is_identifier(name) {
        return Err(syntax(expr.line(), format!("invalid {what} `{name}`")));
    }
    Ok(name)
}

fn expect_variable<'a>(expr: &'a SExpr) -> Result<&'a str, ParseError> {
    let name = expect_symbol(expr, "variable")?;
    if !name.starts_with('?') || !is_identifier(&name[1..]) {
        return Err(syntax(
            expr.line(),
            format!("expected `?variable`, found `{name}`"),
        ));
    }
    Ok(name)
}

/// Splits `(define (KIND NAME) sections...)` into name and sections.
fn read_define<'a>(root: &'a SExpr, kind: &str) -> Result<(&'a str, &'a [SExpr]), ParseError> {
    let items = expect_list(root, "`(define ...)`")?;
    match items.first().and_then(SExpr::as_symbol) {
        Some("define") => {}
        _ => {
            let found = items
                .first()
                .map(SExpr::describe)
                .unwrap_or_else(|| "()".into());
            return Err(syntax(
                root.line(),
                format!("expected `define`, found `{found}`"),
            ));
        }
    }
    let header = items
        .get(1)
        .ok_or_else(|| syntax(root.line(), format!("missing `({kind} NAME)` header")))?;
    let header_items = expect_list(header, &format!("`({kind} NAME)`"))?;
    match header_items {
        [SExpr::Symbol { text, .. }, name] if text == kind => Ok((
            expect_identifier(name, &format!("{kind} name"))?,
            &items[2..],
        )),
        _ => Err(syntax(
            header.line(),
            format!("expected `({kind} NAME)`, found `{}`", header.describe()),
        )),
    }
}

/// Parses `a b - t c d - u e` into typed names; untyped entries get `object`.
pub(crate) fn read_typed_list(
    items: &[SExpr],
    variables: bool,
) -> Result<Vec<TypedName>, ParseError> {
    let mut out = Vec::new();
    let mut pending: Vec<String> = Vec::new();
    let mut idx = 0;
    while idx < items.len() {
        let item = &items[idx];
        if item.as_symbol() == Some("-") {
            let ty_expr = items
                .get(idx + 1)
                .ok_or_else(|| syntax(item.line(), "type name expected after `-`"))?;
            if ty_expr.head() == Some("either") {
                return Err(unsupported(ty_expr.line(), "either"));
            }
            let ty = expect_identifier(ty_expr, "type name")?;
            if pending.is_empty() {
                return Err(syntax(
                    item.line(),
                    format!("`- {ty}` without preceding names"),
                ));
            }
            out.extend(pending.drain(..).map(|n| TypedName::new(n, ty)));
            idx += 2;
            continue;
        }
        let name = if variables {
            expect_variable(item)?
        } else {
            expect_identifier(item, "name")?
        };
        pending.push(name.to_string());
        idx += 1;
    }
    out.extend(pending.drain(..).map(|n| TypedName::new(n, OBJECT_TYPE)));
    Ok(out)
}

fn read_types(items: &[SExpr], line: usize) -> Result<BTreeMap<String, String>, ParseError> {
    let mut types = BTreeMap::new();
    for entry in read_typed_list(items, false)? {
        if entry.name == OBJECT_TYPE {
            if entry.ty != OBJECT_TYPE {
                return Err(semantic(line, "type `object` cannot have a parent"));
            }
            continue;
        }
        if types.insert(entry.name.clone(), entry.ty.clone()).is_some() {
            return Err(semantic(
                line,
                format!("type `{}` declared twice", entry.name),
            ));
        }
    }
    // parents may be introduced implicitly as direct children of `object`
    let parents: Vec<String> = types.values().cloned().collect();
    for parent in parents {
        if parent != OBJECT_TYPE && !types.contains_key(&parent) {
            types.insert(parent, OBJECT_TYPE.to_string());
        }
    }
    for start in types.keys() {
        let mut seen = HashSet::new();
        let mut current = start.as_str();
        while let Some(parent) = types.get(current) {
            if !seen.insert(current) {
                return Err(semantic(
                    line,
                    format!("cyclic type hierarchy through `{start}`"),
                ));
            }
            current = parent;
        }
    }
    Ok(types)
}

fn read_requirements(items: &[SExpr]) -> Result<Vec<String>, ParseError> {
    let mut out = Vec::new();
    for item in items {
        let req = expect_symbol(item, "requirement flag")?;
        if !SUPPORTED_REQUIREMENTS.contains(&req) {
            return Err(unsupported(item.line(), req));
        }
        if !out.iter().any(|r| r == req) {
            out.push(req.to_string());
        }
    }
    Ok(out)
}

struct DomainBuilder {
    name: String,
    requirements: Vec<String>,
    types: BTreeMap<String, String>,
    constants: Vec<TypedName>,
    predicates: Vec<Predicate>,
    schemas: Vec<ActionSchema>,
}

impl DomainBuilder {
    fn has_type(&self, ty: &str) -> bool {
        ty == OBJECT_TYPE || self.types.contains_key(ty)
    }

    fn check_type(&self, ty: &str, line: usize) -> Result<(), ParseError> {
        if self.has_type(ty) {
            Ok(())
        } else {
            Err(semantic(line, format!("unknown type `{ty}`")))
        }
    }

    fn predicate(&self, name: &str) -> Option<&Predicate> {
        self.predicates.iter().find(|p| p.name == name)
    }

    fn read_predicates(&mut self, items: &[SExpr]) -> Result<(), ParseError> {
        for item in items {
            let parts = expect_list(item, "predicate declaration")?;
            let (name_expr, rest) = parts
                .split_first()
                .ok_or_else(|| syntax(item.line(), "empty predicate declaration"))?;
            let name = expect_identifier(name_expr, "predicate name")?;
            if UNSUPPORTED_CONNECTIVES.contains(&name) {
                return Err(syntax(
                    item.line(),
                    format!("reserved word `{name}` used as predicate"),
                ));
            }
            let params = read_typed_list(rest, true)?;
            for p in &params {
                self.check_type(&p.ty, item.line())?;
            }
            if self.predicate(name).is_some() {
                return Err(semantic(
                    item.line(),
                    format!("predicate `{name}` declared twice"),
                ));
            }
            self.predicates.push(Predicate {
                name: name.to_string(),
                params,
            });
        }
        Ok(())
    }

    fn read_schema_atom(&self, expr: &SExpr, params: &[TypedName]) -> Result<Atom, ParseError> {
        let parts = expect_list(expr, "atom")?;
        let (head, args) = parts
            .split_first()
            .ok_or_else(|| syntax(expr.line(), "empty atom"))?;
        let name = expect_symbol(head, "predicate name")?;
        if UNSUPPORTED_CONNECTIVES.contains(&name) {
            return Err(unsupported(head.line(), name));
        }
        let predicate = self
            .predicate(name)
            .ok_or_else(|| semantic(head.line(), format!("unknown predicate `{name}`")))?;
        if predicate.arity() != args.len() {
            return Err(semantic(
                expr.line(),
                format!(
                    "arity mismatch for `{name}`: expected {}, found {}",
                    predicate.arity(),
                    args.len()
                ),
            ));
        }
        let mut out = Vec::with_capacity(args.len());
        for arg in args {
            let term = expect_symbol(arg, "term")?;
            if term.starts_with('?') {
                if !params.iter().any(|p| p.name == term) {
                    return Err(semantic(
                        arg.line(),
                        format!("undeclared variable `{term}`"),
                    ));
                }
            } else if !self.constants.iter().any(|c| c.name == term) {
                return Err(semantic(arg.line(), format!("unknown constant `{term}`")));
            }
            out.push(term.to_string());
        }
        Ok(Atom {
            predicate: name.to_string(),
            args: out,
        })
    }

    fn read_precondition(
        &self,
        expr: &SExpr,
        params: &[TypedName],
        out: &mut Vec<Atom>,
    ) -> Result<(), ParseError> {
        match expr.as_list() {
            Some([]) => Ok(()),
            Some(items) if expr.head() == Some("and") => {
                for item in &items[1..] {
                    self.read_precondition(item, params, out)?;
                }
                Ok(())
            }
            Some(_) => {
                let atom = self.read_schema_atom(expr, params)?;
                if !out.contains(&atom) {
                    out.push(atom);
                }
                Ok(())
            }
            None => Err(syntax(
                expr.line(),
                format!("expected condition, found `{}`", expr.describe()),
            )),
        }
    }

    fn read_effect(
        &self,
        expr: &SExpr,
        params: &[TypedName],
        adds: &mut Vec<Atom>,
        dels: &mut Vec<Atom>,
    ) -> Result<(), ParseError> {
        match expr.as_list() {
            Some([]) => Ok(()),
            Some(items) => match expr.head() {
                Some("and") => {
                    for item in &items[1..] {
                        self.read_effect(item, params, adds, dels)?;
                    }
                    Ok(())
                }
                Some("not") => {
                    if items.len() != 2 {
                        return Err(syntax(expr.line(), "`not` takes exactly one atom"));
                    }
                    let atom = self.read_schema_atom(&items[1], params)?;
                    if !dels.contains(&atom) {
                        dels.push(atom);
                    }
                    Ok(())
                }
                _ => {
                    let atom = self.read_schema_atom(expr, params)?;
                    if !adds.contains(&atom) {
                        adds.push(atom);
                    }
                    Ok(())
                }
            },
            None => Err(syntax(
                expr.line(),
                format!("expected effect, found `{}`", expr.describe()),
            )),
        }
    }

    fn read_action(&mut self, items: &[SExpr], line: usize) -> Result<(), ParseError> {
        let name_expr = items
            .get(1)
            .ok_or_else(|| syntax(line, "action name expected after `:action`"))?;
        let name = expect_identifier(name_expr, "action name")?.to_string();
        if self.schemas.iter().any(|s| s.name == name) {
            return Err(semantic(line, format!("action `{name}` declared twice")));
        }
        let mut params = Vec::new();
        let mut precondition: Option<&SExpr> = None;
        let mut effect: Option<&SExpr> = None;
        let mut idx = 2;
        while idx < items.len() {
            let key_expr = &items[idx];
            let key = expect_symbol(key_expr, "action keyword")?;
            let value = items
                .get(idx + 1)
                .ok_or_else(|| syntax(key_expr.line(), format!("missing value for `{key}`")))?;
            match key {
                ":parameters" => {
                    params = read_typed_list(expect_list(value, "parameter list")?, true)?;
                    let mut seen = HashSet::new();
                    for p in &params {
                        self.check_type(&p.ty, value.line())?;
                        if !seen.insert(p.name.as_str()) {
                            return Err(semantic(
                                value.line(),
                                format!("duplicate parameter `{}`", p.name),
                            ));
                        }
                    }
                }
                ":precondition" => precondition = Some(value),
                ":effect" => effect = Some(value),
                other => {
                    return Err(syntax(
                        key_expr.line(),
                        format!("unknown action keyword `{other}`"),
                    ))
                }
            }
            idx += 2;
        }
        let mut preconditions = Vec::new();
        if let Some(expr) = precondition {
            self.read_precondition(expr, &params, &mut preconditions)?;
        }
        let mut add_effects = Vec::new();
        let mut del_effects = Vec::new();
        if let Some(expr) = effect {
            self.read_effect(expr, &params, &mut add_effects, &mut del_effects)?;
        }
        if let Some(clash) = add_effects.iter().find(|a| del_effects.contains(a)) {
            return Err(semantic(
                line,
                format!("action `{name}` both adds and deletes {clash}"),
            ));
        }
        self.schemas.push(ActionSchema {
            name,
            params,
            preconditions,
            add_effects,
            del_effects,
        });
        Ok(())
    }
}

/// Parses a domain file.
pub fn parse_domain(text: &str) -> Result<Domain, ParseError> {
    let root = sexpr::parse_single(text)?;
    let (name, sections) = read_define(&root, "domain")?;
    let mut builder = DomainBuilder {
        name: name.to_string(),
        requirements: Vec::new(),
        types: BTreeMap::new(),
        constants: Vec::new(),
        predicates: Vec::new(),
        schemas: Vec::new(),
    };
    for section in sections {
        let items = expect_list(section, "domain section")?;
        let key = items
            .first()
            .map(|k| expect_symbol(k, "section keyword"))
            .transpose()?
            .ok_or_else(|| syntax(section.line(), "empty section"))?;
        let line = section.line();
        match key {
            ":requirements" => builder.requirements = read_requirements(&items[1..])?,
            ":types" => builder.types = read_types(&items[1..], line)?,
            ":constants" => {
                let constants = read_typed_list(&items[1..], false)?;
                for c in &constants {
                    builder.check_type(&c.ty, line)?;
                    if builder.constants.iter().any(|x| x.name == c.name) {
                        return Err(semantic(
                            line,
                            format!("constant `{}` declared twice", c.name),
                        ));
                    }
                    builder.constants.push(c.clone());
                }
            }
            ":predicates" => builder.read_predicates(&items[1..])?,
            ":action" => builder.read_action(items, line)?,
            ":functions" | ":derived" | ":durative-action" | ":axiom" | ":constraints" => {
                return Err(unsupported(line, key))
            }
            other => return Err(syntax(line, format!("unknown domain section `{other}`"))),
        }
    }
    Ok(Domain {
        name: builder.name,
        requirements: builder.requirements,
        types: builder.types,
        constants: builder.constants,
        predicates: builder.predicates,
        schemas: builder.schemas,
    })
}

/// Checks a ground atom against the domain and the object table.
pub(crate) fn check_ground_atom(
    domain: &Domain,
    objects: &[TypedName],
    atom: &Atom,
    line: usize,
) -> Result<(), ParseError> {
    let predicate = domain
        .predicate(&atom.predicate)
        .ok_or_else(|| semantic(line, format!("unknown predicate `{}`", atom.predicate)))?;
    if predicate.arity() != atom.args.len() {
        return Err(semantic(
            line,
            format!(
                "arity mismatch for `{}`: expected {}, found {}",
                atom.predicate,
                predicate.arity(),
                atom.args.len()
            ),
        ));
    }
    for (arg, expected) in atom.args.iter().zip(predicate.param_types()) {
        let ty = objects
            .iter()
            .find(|o| &o.name == arg)
            .map(|o| o.ty.as_str())
            .ok_or_else(|| semantic(line, format!("unknown object `{arg}` in {atom}")))?;
        if !domain.is_subtype(ty, expected) {
            return Err(semantic(
                line,
                format!("object `{arg}` of type `{ty}` does not fit `{expected}` in {atom}"),
            ));
        }
    }
    Ok(())
}

pub(crate) fn read_ground_atom(expr: &SExpr) -> Result<Atom, ParseError> {
    let parts = expect_list(expr, "ground atom")?;
    let (head, args) = parts
        .split_first()
        .ok_or_else(|| syntax(expr.line(), "empty atom"))?;
    let name = expect_symbol(head, "predicate name")?;
    if UNSUPPORTED_CONNECTIVES.contains(&name) {
        return Err(unsupported(head.line(), name));
    }
    let args = args
        .iter()
        .map(|a| {
            let s = expect_symbol(a, "object name")?;
            if s.starts_with('?') {
                return Err(syntax(a.line(), format!("variable `{s}` in ground atom")));
            }
            Ok(s.to_string())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Atom {
        predicate: name.to_string(),
        args,
    })
}

fn read_goal(expr: &SExpr, out: &mut Vec<(Atom, usize)>) -> Result<(), ParseError> {
    match expr.as_list() {
        Some([]) => Ok(()),
        Some(items) if expr.head() == Some("and") => {
            for item in &items[1..] {
                read_goal(item, out)?;
            }
            Ok(())
        }
        Some(_) => {
            out.push((read_ground_atom(expr)?, expr.line()));
            Ok(())
        }
        None => Err(syntax(
            expr.line(),
            format!("expected goal condition, found `{}`", expr.describe()),
        )),
    }
}

/// Merges declared objects with the domain constants, rejecting clashes.
pub(crate) fn merge_objects(
    domain: &Domain,
    declared: Vec<TypedName>,
    line: usize,
) -> Result<Vec<TypedName>, ParseError> {
    let mut objects: Vec<TypedName> = Vec::with_capacity(declared.len() + domain.constants.len());
    for obj in declared.into_iter().chain(domain.constants.iter().cloned()) {
        if !domain.has_type(&obj.ty) {
            return Err(semantic(
                line,
                format!("unknown type `{}` for object `{}`", obj.ty, obj.name),
            ));
        }
        match objects.iter().find(|o| o.name == obj.name) {
            Some(existing) if existing.ty == obj.ty => {}
            Some(existing) => {
                return Err(semantic(
                    line,
                    format!(
                        "object `{}` declared with types `{}` and `{}`",
                        obj.name, existing.ty, obj.ty
                    ),
                ))
            }
            None => objects.push(obj),
        }
    }
    Ok(objects)
}

/// Parses a problem file and checks it against `domain`.
pub fn parse_problem(text: &str, domain: &Domain) -> Result<Problem, ParseError> {
    let root = sexpr::parse_single(text)?;
    let (name, sections) = read_define(&root, "problem")?;
    let mut domain_name: Option<(String, usize)> = None;
    let mut declared = Vec::new();
    let mut objects_line = root.line();
    let mut init_atoms: Vec<(Atom, usize)> = Vec::new();
    let mut goal_atoms: Option<(Vec<(Atom, usize)>, usize)> = None;

    for section in sections {
        let items = expect_list(section, "problem section")?;
        let key = items
            .first()
            .map(|k| expect_symbol(k, "section keyword"))
            .transpose()?
            .ok_or_else(|| syntax(section.line(), "empty section"))?;
        let line = section.line();
        match key {
            ":domain" => {
                let [_, value] = items else {
                    return Err(syntax(line, "expected `(:domain NAME)`"));
                };
                domain_name = Some((expect_identifier(value, "domain name")?.to_string(), line));
            }
            ":requirements" => {
                read_requirements(&items[1..])?;
            }
            ":objects" => {
                declared.extend(read_typed_list(&items[1..], false)?);
                objects_line = line;
            }
            ":init" => {
                for item in &items[1..] {
                    init_atoms.push((read_ground_atom(item)?, item.line()));
                }
            }
            ":goal" => {
                let mut atoms = Vec::new();
                for item in &items[1..] {
                    read_goal(item, &mut atoms)?;
                }
                goal_atoms = Some((atoms, line));
            }
            ":metric" | ":constraints" | ":length" => return Err(unsupported(line, key)),
            other => return Err(syntax(line, format!("unknown problem section `{other}`"))),
        }
    }

    let (domain_name, domain_line) =
        domain_name.ok_or_else(|| semantic(root.line(), "missing `(:domain NAME)` section"))?;
    if domain_name != domain.name {
        return Err(semantic(
            domain_line,
            format!(
                "problem targets domain `{domain_name}` but `{}` was given",
                domain.name
            ),
        ));
    }
    let objects = merge_objects(domain, declared, objects_line)?;

    let mut init = BTreeSet::new();
    for (atom, line) in init_atoms {
        check_ground_atom(domain, &objects, &atom, line)?;
        init.insert(atom);
    }
    let (goal_list, goal_line) =
        goal_atoms.ok_or_else(|| semantic(root.line(), "missing `(:goal ...)` section"))?;
    let mut goal = BTreeSet::new();
    for (atom, line) in goal_list {
        check_ground_atom(domain, &objects, &atom, line)?;
        goal.insert(atom);
    }
    if goal.is_empty() {
        return Err(semantic(goal_line, "goal must contain at least one atom"));
    }
    Ok(Problem {
        name: name.to_string(),
        domain_name,
        objects,
        init,
        goal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TINY: &str = "(define (domain tiny) (:requirements :strips)
        (:predicates (done))
        (:action finish :parameters () :precondition () :effect (done)))";

    #[test]
    fn nullary_domain_parses() {
        let d = parse_domain(TINY).unwrap();
        assert_eq!(d.predicates.len(), 1);
        assert_eq!(d.predicates[0].arity(), 0);
        assert_eq!(d.schemas[0].params.len(), 0);
        assert_eq!(
            d.schemas[0].add_effects,
            vec![Atom::new("done", Vec::<String>::new())]
        );
    }

    #[test]
    fn negative_precondition_is_unsupported() {
        let text = "(define (domain d) (:predicates (clear ?x))
            (:action a :parameters (?x) :precondition (not (clear ?x)) :effect (clear ?x)))";
        let err = parse_domain(text).unwrap_err();
        assert!(
            matches!(err, ParseError::Unsupported { ref token, .. } if token == "not"),
            "{err}"
        );
    }

    #[test]
    fn unsupported_requirement_names_token_and_line() {
        let text = "(define (domain d)\n (:requirements :strips :adl))";
        let err = parse_domain(text).unwrap_err();
        assert_eq!(
            err,
            ParseError::Unsupported {
                line: 2,
                token: ":adl".into()
            }
        );
    }

    #[test]
    fn conditional_effects_and_quantifiers_rejected() {
        for body in [
            "(when (p ?x) (p ?x))",
            "(forall (?y) (p ?y))",
            "(increase (total-cost) 1)",
        ] {
            let text = format!(
                "(define (domain d) (:predicates (p ?x)) (:action a :parameters (?x) :precondition (p ?x) :effect {body}))"
            );
            assert!(
                matches!(parse_domain(&text), Err(ParseError::Unsupported { .. })),
                "{body}"
            );
        }
        let text = "(define (domain d) (:predicates (p ?x)) (:action a :parameters (?x) :precondition (or (p ?x) (p ?x)) :effect (p ?x)))";
        assert!(matches!(
            parse_domain(text),
            Err(ParseError::Unsupported { .. })
        ));
    }

    #[test]
    fn add_delete_overlap_rejected() {
        let text = "(define (domain d) (:predicates (p ?x))
            (:action a :parameters (?x) :precondition () :effect (and (p ?x) (not (p ?x)))))";
        assert!(matches!(
            parse_domain(text),
            Err(ParseError::Semantic { .. })
        ));
    }

    #[test]
    fn undeclared_variable_rejected() {
        let text = "(define (domain d) (:predicates (p ?x))
            (:action a :parameters (?x) :precondition (p ?y) :effect (p ?x)))";
        assert!(matches!(
            parse_domain(text),
            Err(ParseError::Semantic { .. })
        ));
    }

    #[test]
    fn cyclic_types_rejected() {
        let text = "(define (domain d) (:requirements :typing) (:types a - b b - a))";
        assert!(matches!(
            parse_domain(text),
            Err(ParseError::Semantic { .. })
        ));
    }

    #[test]
    fn unknown_section_is_syntax_error() {
        let text = "(define (domain d)\n (:bogus x))";
        let err = parse_domain(text).unwrap_err();
        assert!(
            matches!(err, ParseError::Syntax { line: 2, ref message } if message.contains(":bogus"))
        );
    }

    #[test]
    fn implicit_parent_types() {
        let text = "(define (domain d) (:requirements :typing) (:types disk rod - place))";
        let d = parse_domain(text).unwrap();
        assert!(d.is_subtype("disk", "place"));
        assert!(d.is_subtype("disk", "object"));
        assert!(!d.is_subtype("place", "disk"));
    }

    #[test]
    fn problem_semantics() {
        let d = parse_domain(
            "(define (domain d) (:requirements :typing) (:types blk) (:predicates (on ?x ?y - blk) (free)))",
        )
        .unwrap();
        let ok = parse_problem(
            "(define (problem p) (:domain d) (:objects a b - blk) (:init (free) (free)) (:goal (on a b)))",
            &d,
        )
        .unwrap();
        assert_eq!(ok.init.len(), 1);
        for bad in [
            "(define (problem p) (:domain d) (:objects a b - blk) (:init) (:goal (and)))",
            "(define (problem p) (:domain d) (:objects a b - blk) (:init (on a)) (:goal (on a b)))",
            "(define (problem p) (:domain d) (:objects a b - blk) (:init (foo a)) (:goal (on a b)))",
            "(define (problem p) (:domain d) (:objects a - blk) (:init) (:goal (on a c)))",
            "(define (problem p) (:domain d) (:objects a b - ghost) (:init) (:goal (on a b)))",
            "(define (problem p) (:domain other) (:objects a b - blk) (:init) (:goal (on a b)))",
        ] {
            assert!(matches!(parse_problem(bad, &d), Err(ParseError::Semantic { .. })), "{bad}");
        }
        let untyped = parse_problem(
            "(define (problem p) (:domain d) (:objects a b) (:init) (:goal (on a b)))",
            &d,
        );
        assert!(matches!(untyped, Err(ParseError::Semantic { .. })));
    }
}

use proptest::prelude::*;

use plahx::bench::DomainKind;
use plahx::pddl::{parse_domain, parse_problem, serialize, Atom, Domain, ParseError, Problem};

const BLOCK_PREDICATES: &[(&str, usize)] = &[
    ("on", 2),
    ("ontable", 1),
    ("clear", 1),
    ("handempty", 0),
    ("holding", 1),
];

fn atom_text(pred: &str, args: &[usize], upper: bool) -> String {
    let mut s = format!("({pred}");
    for a in args {
        s.push_str(&format!(" b{a}"));
    }
    s.push(')');
    if upper {
        s.to_uppercase()
    } else {
        s
    }
}

prop_compose! {
    fn blocks_problem_text()(n in 1usize..6)(
        n in Just(n),
        init in prop::collection::vec((0..BLOCK_PREDICATES.len(), 0usize..6, 0usize..6, any::<bool>()), 0..10),
        goal in prop::collection::vec((0..BLOCK_PREDICATES.len(), 0usize..6, 0usize..6, any::<bool>()), 1..5),
        gap in "[ \n\t]{1,3}",
    ) -> String {
        let render = |atoms: &[(usize, usize, usize, bool)]| {
            atoms
                .iter()
                .map(|&(p, x, y, upper)| {
                    let (pred, arity) = BLOCK_PREDICATES[p];
                    let args = [x % n + 1, y % n + 1];
                    atom_text(pred, &args[..arity], upper)
                })
                .collect::<Vec<_>>()
                .join(&gap)
        };
        let objects: Vec<String> = (1..=n).map(|i| format!("b{i}")).collect();
        format!(
            "(define (problem p){gap}(:domain blocks)\n(:objects {} - block)\n(:init{gap}{})\n(:goal (and {})))",
            objects.join(" "),
            render(&init),
            render(&goal)
        )
    }
}

fn is_subtype<'a>(domain: &'a Domain, mut ty: &'a str, ancestor: &str) -> bool {
    loop {
        if ty == ancestor || ancestor == "object" {
            return true;
        }
        match domain.types.get(ty) {
            Some(parent) => ty = parent,
            None => return false,
        }
    }
}

/// Every atom names a declared predicate, has its arity, and each argument
/// is a declared object of a compatible type.
fn well_typed(domain: &Domain, problem: &Problem, atom: &Atom) -> bool {
    let Some(pred) = domain.predicate(&atom.predicate) else {
        return false;
    };
    pred.arity() == atom.args.len()
        && atom.args.iter().zip(pred.param_types()).all(|(arg, ty)| {
            problem
                .object_type(arg)
                .is_some_and(|t| is_subtype(domain, t, ty))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn problem_round_trip(text in blocks_problem_text()) {
        let domain = DomainKind::Blocks.domain();
        let first = parse_problem(&text, &domain).unwrap();
        let second = parse_problem(&serialize(&first), &domain).unwrap();
        prop_assert_eq!(first, second);
    }

    #[test]
    fn mutated_problems_are_rejected_or_well_typed(
        kind in prop::sample::select(DomainKind::ALL.to_vec()),
        edits in prop::collection::vec((0usize..40, 0usize..6, prop::sample::select(vec!["b1", "ghost", "rod1", "left", "key1", "bowl1", "d1", "room1"])), 1..4),
    ) {
        let domain = kind.domain();
        let instance = plahx::bench::generate_instances(kind, 1, plahx::bench::SizeRange::default_for(kind), 7)
            .unwrap()
            .remove(0);
        let problem = instance.problem();
        let mut atoms: Vec<Atom> = problem.init.iter().cloned().collect();
        for (which, arg, replacement) in edits {
            let a = which % atoms.len();
            if atoms[a].args.is_empty() || arg == 5 {
                atoms[a].args.push(replacement.to_string());
            } else {
                let i = arg % atoms[a].args.len();
                atoms[a].args[i] = replacement.to_string();
            }
        }
        let mutated = Problem {
            init: atoms.into_iter().collect(),
            ..problem
        };
        if let Ok(parsed) = parse_problem(&serialize(&mutated), &domain) {
            for atom in parsed.init.iter().chain(&parsed.goal) {
                prop_assert!(well_typed(&domain, &parsed, atom), "{} accepted", atom);
            }
        }
    }

    #[test]
    fn unsupported_constructs_name_token_and_line(
        kind in prop::sample::select(DomainKind::ALL.to_vec()),
        pick in 0usize..1000,
        token in prop::sample::select(vec!["not", "or", "imply", "exists", "forall", "when", "="]),
    ) {
        let text = kind.domain_text();
        // wrap one precondition atom in the unsupported connective
        let lines: Vec<&str> = text.lines().collect();
        let candidates: Vec<usize> = lines
            .iter()
            .enumerate()
            .filter(|(_, l)| l.trim_start().starts_with(":precondition"))
            .map(|(i, _)| i)
            .collect();
        let target = candidates[pick % candidates.len()];
        let line = lines[target];
        let start = line.find(":precondition").unwrap() + ":precondition ".len();
        let wrapped = match token {
            "forall" | "exists" => format!("({token} (?zz) {})", &line[start..]),
            "=" => format!("(and (= ?zz ?zz) {})", &line[start..]),
            _ => format!("({token} {})", &line[start..]),
        };
        let mut edited: Vec<String> = lines.iter().map(|l| l.to_string()).collect();
        edited[target] = format!("{}{}", &line[..start], wrapped);
        let err = parse_domain(&edited.join("\n")).unwrap_err();
        prop_assert_eq!(
            err,
            ParseError::Unsupported { line: target + 1, token: token.to_string() }
        );
    }
}

#[test]
fn bundled_domains_round_trip() {
    for kind in DomainKind::ALL {
        let domain = kind.domain();
        let again = parse_domain(&serialize(&domain)).unwrap();
        assert_eq!(domain, again, "{kind}");
    }
}

#[test]
fn identifiers_are_case_insensitive() {
    let domain = DomainKind::Blocks.domain();
    let lower = parse_problem(
        "(define (problem p) (:domain blocks) (:objects b1 b2 - block) (:init (clear b1)) (:goal (on b1 b2)))",
        &domain,
    )
    .unwrap();
    let upper = parse_problem(
        "(DEFINE (PROBLEM P) (:DOMAIN Blocks) (:OBJECTS B1 B2 - BLOCK) (:INIT (Clear b1)) (:GOAL (ON B1 B2)))",
        &domain,
    )
    .unwrap();
    assert_eq!(lower, upper);
}

#[test]
fn errors_carry_lines() {
    let domain = DomainKind::Blocks.domain();
    let text = "(define (problem p)\n (:domain blocks)\n (:objects b1 - block)\n (:init (on b1 b9))\n (:goal (clear b1)))";
    let err = parse_problem(text, &domain).unwrap_err();
    assert!(matches!(err, ParseError::Semantic { line: 4, .. }), "{err}");
    let err = parse_problem(
        "(define (problem p)\n (:domain blocks)\n (:goal ())",
        &domain,
    )
    .unwrap_err();
    assert!(matches!(err, ParseError::Syntax { .. }), "{err}");
    let err = parse_problem(
        "(define (problem p) (:domain blocks) (:objects b1 - block) (:init) (:goal (and)))",
        &domain,
    )
    .unwrap_err();
    assert!(matches!(err, ParseError::Semantic { .. }), "{err}");
}

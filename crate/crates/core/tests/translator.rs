use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use proptest::prelude::*;

use plahx::bench::{generate_instances, generate_suite, DomainKind, ShotSet, SizeRange};
use plahx::pddl::{serialize, Domain};
use plahx::translator::{
    build_prompt, classify_completion, count_tokens, embed_into_problem, measure_drift,
    Abstraction, ChatClient, ClientError, CompletionRequest, MockClient, TranslationOutcome,
    Translator, TranslatorConfig,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn every_completion_gets_exactly_one_consistent_class(
        kind in prop::sample::select(DomainKind::ALL.to_vec()),
        seed in 0u64..10,
        cut in any::<prop::sample::Index>(),
        edit in 0usize..4,
    ) {
        let inst = generate_instances(kind, 1, SizeRange::default_for(kind), seed).unwrap().remove(0);
        let domain = kind.domain();
        let gold = inst.abstraction_text.clone();
        let text = match edit {
            0 => gold.clone(),
            1 => gold[..cut.index(gold.len())].to_string(),
            2 => gold.replacen("(:goal (", "(:goal (mystery ", 1),
            _ => gold.replacen("(:init", "(:init (at nowhere nowhere)", 1),
        };
        match classify_completion(&text, &domain) {
            TranslationOutcome::Success(z) => {
                prop_assert!(z.validate(&domain).is_ok());
                prop_assert!(embed_into_problem(&z, &domain, "q").is_ok());
            }
            TranslationOutcome::SyntaxError(_) => prop_assert!(Abstraction::parse(&text).is_err()),
            TranslationOutcome::SemanticError(_) => {
                let z = Abstraction::parse(&text).unwrap();
                prop_assert!(z.validate(&domain).is_err());
            }
            TranslationOutcome::ContextOverflow => prop_assert!(false, "overflow from a classifier"),
        }
        if edit == 0 {
            prop_assert!(matches!(classify_completion(&text, &domain), TranslationOutcome::Success(_)));
        }
    }
}

#[test]
fn abstraction_prompts_are_shorter_than_full_problem_prompts() {
    for kind in DomainKind::ALL {
        let shots = ShotSet::for_domain(kind, 6);
        let domain_text = serialize(&kind.domain());
        for inst in generate_suite(&[kind], 10, 3).unwrap() {
            let short = build_prompt(&domain_text, &shots.abstraction, &inst.instruction)
                .unwrap()
                .render();
            let full = build_prompt(&domain_text, &shots.full_problem, &inst.instruction)
                .unwrap()
                .render();
            assert!(count_tokens(&short) < count_tokens(&full), "{}", inst.id);
        }
    }
}

#[test]
fn extract_then_embed_recovers_gold_problems() {
    for inst in generate_suite(&DomainKind::ALL, 5, 4).unwrap() {
        let domain = inst.domain.domain();
        let gold = inst.problem();
        let z = Abstraction::from_problem(&gold, &domain);
        let back = embed_into_problem(&z, &domain, &gold.name).unwrap();
        assert_eq!(back.init, gold.init, "{}", inst.id);
        assert_eq!(back.goal, gold.goal, "{}", inst.id);
        let mut a = back.objects.clone();
        let mut b = gold.objects.clone();
        a.sort();
        b.sort();
        assert_eq!(a, b, "{}", inst.id);
        assert_eq!(Abstraction::parse(&z.to_text()).unwrap(), z);
    }
}

#[test]
fn drift_grows_as_schemas_disappear() {
    for kind in DomainKind::ALL {
        let reference = kind.domain();
        let problems: Vec<String> = generate_instances(kind, 6, SizeRange::default_for(kind), 8)
            .unwrap()
            .into_iter()
            .map(|i| i.problem_text)
            .collect();
        let mut candidate: Domain = reference.clone();
        let mut last = measure_drift(&reference, &candidate, &problems, 100_000).ratio;
        assert_eq!(last, 0.0, "{kind}");
        while !candidate.schemas.is_empty() {
            candidate.schemas.pop();
            let r = measure_drift(&reference, &candidate, &problems, 100_000).ratio;
            assert!(r >= last, "{kind}: {r} < {last}");
            last = r;
        }
        assert_eq!(last, 1.0, "{kind}");
    }
}

/// Counts calls and refuses to answer.
struct Refusing(AtomicUsize);

impl ChatClient for Refusing {
    fn complete(&self, _: &CompletionRequest) -> Result<String, ClientError> {
        self.0.fetch_add(1, Ordering::SeqCst);
        Err(ClientError::Transport("offline".into()))
    }
}

#[test]
fn translator_classes_end_to_end() {
    let kind = DomainKind::Rearrangement;
    let domain = kind.domain();
    let inst = generate_instances(kind, 1, SizeRange::default_for(kind), 1)
        .unwrap()
        .remove(0);
    let shots = ShotSet::for_domain(kind, 6).abstraction;
    let mut fixtures = HashMap::new();
    fixtures.insert("good".to_string(), inst.abstraction_text.clone());
    fixtures.insert("broken".to_string(), "(:objects".to_string());
    let mock = MockClient::Memory(fixtures);
    let translator = Translator::new(&domain, &shots, TranslatorConfig::default(), &mock);

    let ok = translator
        .translate(Some("good"), &inst.instruction)
        .unwrap();
    assert!(matches!(ok.outcome, TranslationOutcome::Success(_)));
    assert!(ok.prompt_tokens > 0 && ok.completion_tokens > 0);
    let bad = translator
        .translate(Some("broken"), &inst.instruction)
        .unwrap();
    assert!(matches!(bad.outcome, TranslationOutcome::SyntaxError(_)));

    let refusing = Refusing(AtomicUsize::new(0));
    let tight = TranslatorConfig {
        context_limit: 50,
        ..TranslatorConfig::default()
    };
    let t = Translator::new(&domain, &shots, tight, &refusing);
    let out = t.translate(None, &inst.instruction).unwrap();
    assert_eq!(out.outcome, TranslationOutcome::ContextOverflow);
    assert_eq!(refusing.0.load(Ordering::SeqCst), 0);
}

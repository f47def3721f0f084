use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde_json::json;

use plahx::bench::{
    baseline_plan, compute_pscr, generate_suite, run_suite, write_fixtures, BenchConfig,
    DomainKind, ShotSet,
};
use plahx::grounding::{
    format_plan, ground, parse_plan, validate_plan, ActionId, GroundedTask, ValidationOutcome,
};
use plahx::meta::{self, SearchConfig};
use plahx::pddl::{parse_domain, parse_problem, serialize, Domain};
use plahx::translator::{
    embed_into_problem, ChatClient, HttpChatClient, MockClient, TranslateError, Translation,
    TranslationOutcome, Translator, TranslatorConfig,
};

use crate::{
    BenchArgs, ClientArgs, Format, PlanArgs, SearchArgs, SolveArgs, Suite, TranslateArgs,
    ValidateArgs, EXIT_NO_PLAN, EXIT_OK, EXIT_TRANSLATION,
};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_domain(path: &Path) -> Result<Domain> {
    parse_domain(&read(path)?).with_context(|| format!("parsing domain {}", path.display()))
}

fn search_config(args: &SearchArgs) -> Result<SearchConfig> {
    let config = SearchConfig {
        pop_size: args.pop_size,
        l_max: args.l_max,
        max_iters: args.max_iters,
        archive_threshold: args.archive_threshold,
        budget: args.budget,
        seed: args.seed,
        single_thread: args.single_thread,
        ..SearchConfig::default()
    };
    if let Err(msg) = config.validate() {
        bail!(msg);
    }
    Ok(config)
}

/// Plans `task`, prints plan text and a JSON record, returns the exit code.
fn plan_and_report(task: &GroundedTask, args: &SearchArgs) -> Result<u8> {
    let config = search_config(args)?;
    let started = Instant::now();
    let (plan, mut record): (Option<Vec<ActionId>>, serde_json::Value) = if args.baseline {
        let out = baseline_plan(task, config.budget.saturating_mul(config.pop_size));
        let record = json!({
            "planner": "baseline",
            "nodes_expanded": out.nodes_expanded,
            "action_space": task.action_count(),
            "h_init": out.h_init,
        });
        (out.plan, record)
    } else {
        let res = meta::run(task, &config);
        if let Some(path) = &args.log {
            let file =
                fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            res.write_log(std::io::BufWriter::new(file))?;
        }
        let m = &res.metrics;
        let pscr = (m.max_subspace > 0).then(|| {
            compute_pscr(
                m.action_space as f64,
                config.pop_size as f64,
                m.max_subspace as f64,
            )
        });
        let record = json!({
            "planner": "plahx",
            "generations": m.generations,
            "nodes_expanded": m.nodes_expanded,
            "action_space": m.action_space,
            "mean_subspace": m.mean_subspace,
            "max_subspace": m.max_subspace,
            "pscr": pscr,
            "conflicts": m.conflicts,
            "archive_size": res.archive.len(),
            "final_bound": m.final_bound,
        });
        (res.best.map(|b| b.plan), record)
    };
    record["cpu_seconds"] = json!(started.elapsed().as_secs_f64());

    let mut out = std::io::stdout().lock();
    let code = match &plan {
        Some(plan) if validate_plan(task, plan)?.is_success() => {
            out.write_all(format_plan(task, plan).as_bytes())?;
            record["status"] = json!("plan-found");
            record["plan_length"] = json!(plan.len());
            EXIT_OK
        }
        _ => {
            record["status"] = json!("no-plan");
            EXIT_NO_PLAN
        }
    };
    writeln!(out, "{record}")?;
    Ok(code)
}

pub fn plan(args: PlanArgs) -> Result<u8> {
    let domain = load_domain(&args.domain)?;
    let problem = parse_problem(&read(&args.problem)?, &domain)
        .with_context(|| format!("parsing problem {}", args.problem.display()))?;
    plan_and_report(&ground(&domain, &problem), &args.search)
}

fn make_client(args: &ClientArgs) -> Result<Box<dyn ChatClient>> {
    match (&args.endpoint, &args.mock) {
        (Some(url), None) => {
            let mut client = HttpChatClient::new(url.clone());
            client.model = args.model.clone();
            Ok(Box::new(client))
        }
        (None, Some(dir)) => {
            if args.instance_id.is_none() {
                bail!("--mock needs --instance-id");
            }
            Ok(Box::new(MockClient::from_dir(dir)))
        }
        _ => bail!("give either --endpoint URL or --mock DIR"),
    }
}

fn run_translation(domain: &Domain, instruction: &str, args: &ClientArgs) -> Result<Translation> {
    let client = make_client(args)?;
    let shots = match DomainKind::from_domain_name(&domain.name) {
        Some(kind) if args.shots > 0 => ShotSet::for_domain(kind, args.shots).abstraction,
        _ => Vec::new(),
    };
    if shots.len() < args.shots {
        eprintln!(
            "note: no demonstrations bundled for domain `{}`; running zero-shot",
            domain.name
        );
    }
    let config = TranslatorConfig {
        context_limit: args.context_limit,
        temperature: args.temperature,
        shot_count: args.shots,
        ..TranslatorConfig::default()
    };
    let translator = Translator::new(domain, &shots, config, client.as_ref());
    match translator.translate(args.instance_id.as_deref(), instruction) {
        Ok(t) => Ok(t),
        Err(TranslateError::Client(e)) => Err(e).context("chat completion failed"),
        Err(TranslateError::Prompt(e)) => bail!(e),
    }
}

fn print_failure(translation: &Translation) -> Result<u8> {
    let mut record = serde_json::to_value(&translation.outcome)?;
    record["prompt_tokens"] = json!(translation.prompt_tokens);
    record["completion_tokens"] = json!(translation.completion_tokens);
    println!("{record}");
    Ok(EXIT_TRANSLATION)
}

pub fn translate(args: TranslateArgs) -> Result<u8> {
    let domain = load_domain(&args.domain)?;
    let translation = run_translation(&domain, &args.instruction, &args.client)?;
    match &translation.outcome {
        TranslationOutcome::Success(z) => {
            print!("{}", z.to_text());
            Ok(EXIT_OK)
        }
        _ => print_failure(&translation),
    }
}

pub fn solve(args: SolveArgs) -> Result<u8> {
    let domain = load_domain(&args.domain)?;
    let translation = run_translation(&domain, &args.instruction, &args.client)?;
    let TranslationOutcome::Success(z) = &translation.outcome else {
        return print_failure(&translation);
    };
    let problem = embed_into_problem(z, &domain, &args.problem_name)?;
    if let Some(path) = &args.emit_problem {
        fs::write(path, serialize(&problem))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    plan_and_report(&ground(&domain, &problem), &args.search)
}

pub fn validate(args: ValidateArgs) -> Result<u8> {
    let domain = load_domain(&args.domain)?;
    let problem = parse_problem(&read(&args.problem)?, &domain)
        .with_context(|| format!("parsing problem {}", args.problem.display()))?;
    let task = ground(&domain, &problem);
    let plan = parse_plan(&task, &read(&args.plan)?)
        .with_context(|| format!("reading plan {}", args.plan.display()))?;
    let outcome = validate_plan(&task, &plan)?;
    let label = |step: usize| task.action(plan[step]).label();
    let record = match &outcome {
        ValidationOutcome::Success { .. } => {
            json!({ "outcome": "success", "plan_length": plan.len() })
        }
        ValidationOutcome::GoalUnsatisfied { missing, .. } => json!({
            "outcome": "goal-unsatisfied",
            "missing": missing.iter().map(|a| task.atoms[*a].to_string()).collect::<Vec<_>>(),
        }),
        ValidationOutcome::PreconditionConflict {
            step,
            culprit_step,
            atom,
        } => json!({
            "outcome": "precondition-conflict",
            "step": step,
            "action": label(*step),
            "culprit_step": culprit_step,
            "culprit": label(*culprit_step),
            "atom": task.atoms[*atom].to_string(),
        }),
        ValidationOutcome::PreconditionUnsupported { step, atom } => json!({
            "outcome": "precondition-unsupported",
            "step": step,
            "action": label(*step),
            "atom": task.atoms[*atom].to_string(),
        }),
    };
    println!("{record}");
    Ok(if outcome.is_success() {
        EXIT_OK
    } else {
        EXIT_NO_PLAN
    })
}

pub fn bench(args: BenchArgs) -> Result<u8> {
    let kinds: Vec<DomainKind> = match args.suite {
        Suite::Blocks => vec![DomainKind::Blocks],
        Suite::Hanoi => vec![DomainKind::Hanoi],
        Suite::Grippers => vec![DomainKind::Grippers],
        Suite::Rearrangement => vec![DomainKind::Rearrangement],
        Suite::All => DomainKind::ALL.to_vec(),
    };
    let instances = generate_suite(&kinds, args.count, args.seed)?;
    if let Some(dir) = &args.write_fixtures {
        write_fixtures(dir, &instances)
            .with_context(|| format!("writing fixtures to {}", dir.display()))?;
    }
    if instances.is_empty() {
        bail!("no instances to run (--count 0)");
    }
    let config = BenchConfig {
        search: SearchConfig {
            seed: args.seed,
            single_thread: args.single_thread,
            ..SearchConfig::default()
        },
        baseline: args.baseline,
        timing: !args.no_timing,
        ..BenchConfig::default()
    };
    let mock = args.mock.as_ref().map(MockClient::from_dir);
    let result = run_suite(
        instances,
        &config,
        mock.as_ref().map(|m| m as &dyn ChatClient),
    )?;

    if let Some(path) = &args.records {
        let mut file = std::io::BufWriter::new(
            fs::File::create(path).with_context(|| format!("creating {}", path.display()))?,
        );
        for r in &result.records {
            serde_json::to_writer(&mut file, r)?;
            file.write_all(b"\n")?;
        }
    }
    let text = match args.format {
        Format::Text => result.report.to_text(),
        Format::Json => result.report.to_json() + "\n",
    };
    match &args.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}

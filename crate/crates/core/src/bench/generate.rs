//! Random instance generators with breadth-first certification.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grounding::{ground, GroundedTask};
use crate::pddl::{parse_problem, serialize, Atom, Problem, TypedName};
use crate::translator::Abstraction;

use super::domains::DomainKind;
use super::oracle::{bfs_oracle, ORACLE_STATE_CAP};

const MAX_ATTEMPTS: usize = 500;

const COLORS: [&str; 12] = [
    "rose", "blue", "gray", "green", "orange", "yellow", "purple", "red", "white", "black",
    "brown", "pink",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskInstance {
    pub id: String,
    pub domain: DomainKind,
    pub instruction: String,
    pub problem_text: String,
    /// Gold abstraction in wire format.
    pub abstraction_text: String,
    pub optimal_length: usize,
    pub reachable_states: usize,
}

impl TaskInstance {
    pub fn problem(&self) -> Problem {
        parse_problem(&self.problem_text, &self.domain.domain()).expect("generated problem parses")
    }

    pub fn task(&self) -> GroundedTask {
        ground(&self.domain.domain(), &self.problem())
    }
}

/// Inclusive range of the main object count (blocks, discs, rooms, blocks).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeRange {
    pub min: usize,
    pub max: usize,
}

impl SizeRange {
    pub fn new(min: usize, max: usize) -> Self {
        assert!(min <= max, "empty size range");
        SizeRange { min, max }
    }

    pub fn default_for(kind: DomainKind) -> Self {
        match kind {
            DomainKind::Blocks => SizeRange::new(3, 5),
            DomainKind::Hanoi => SizeRange::new(2, 3),
            DomainKind::Grippers => SizeRange::new(2, 3),
            DomainKind::Rearrangement => SizeRange::new(2, 4),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerationError {
    #[error("could not certify a {domain} instance #{index} within {attempts} attempts")]
    Uncertified {
        domain: DomainKind,
        index: usize,
        attempts: usize,
    },
}

struct Candidate {
    objects: Vec<TypedName>,
    init: Vec<Atom>,
    goal: Vec<Atom>,
    instruction: String,
}

fn atom(pred: &str, args: &[&str]) -> Atom {
    Atom::new(pred, args.iter().copied())
}

fn typed(names: &[String], ty: &str) -> Vec<TypedName> {
    names
        .iter()
        .map(|n| TypedName::new(n.as_str(), ty))
        .collect()
}

fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn colors<R: Rng>(n: usize, rng: &mut R) -> Vec<&'static str> {
    COLORS.choose_multiple(rng, n).copied().collect()
}

fn sentence_case(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// Random piles, bottom block first.
fn random_towers<R: Rng>(blocks: &[String], rng: &mut R) -> Vec<Vec<String>> {
    let mut order = blocks.to_vec();
    order.shuffle(rng);
    let mut towers: Vec<Vec<String>> = Vec::new();
    for b in order {
        if towers.is_empty() || rng.gen_bool(0.5) {
            towers.push(vec![b]);
        } else {
            let t = rng.gen_range(0..towers.len());
            towers[t].push(b);
        }
    }
    towers
}

fn blocks_candidate<R: Rng>(size: SizeRange, rng: &mut R) -> Option<Candidate> {
    let n = rng.gen_range(size.min..=size.max);
    let blocks = numbered("b", n);
    let color = colors(n, rng);
    let name = |b: &str| {
        let i: usize = b[1..].parse().unwrap();
        format!("{} block {b}", color[i - 1])
    };

    let mut init = vec![atom("handempty", &[])];
    let mut observation = Vec::new();
    for tower in random_towers(&blocks, rng) {
        init.push(atom("ontable", &[&tower[0]]));
        observation.push(format!("Block {} is on the table.", tower[0]));
        for pair in tower.windows(2) {
            init.push(atom("on", &[&pair[1], &pair[0]]));
            observation.push(format!("Block {} is on block {}.", pair[1], pair[0]));
        }
        init.push(atom("clear", &[tower.last().unwrap()]));
    }
    let mut goal = Vec::new();
    let mut wanted = Vec::new();
    for tower in random_towers(&blocks, rng) {
        for pair in tower.windows(2) {
            goal.push(atom("on", &[&pair[1], &pair[0]]));
            wanted.push(format!(
                "Stack the {} on the {}.",
                name(&pair[1]),
                name(&pair[0])
            ));
        }
    }
    if goal.is_empty() {
        return None;
    }
    let listing: Vec<String> = blocks.iter().map(|b| name(b)).collect();
    let instruction = format!(
        "{} I have {n} blocks: {}. {} The hand is empty.",
        wanted.join(" "),
        listing.join(", "),
        observation.join(" ")
    );
    Some(Candidate {
        objects: typed(&blocks, "block"),
        init,
        goal,
        instruction,
    })
}

fn hanoi_atoms(rods: &[String], discs: &[String], stacks: &[Vec<usize>]) -> Vec<Atom> {
    let mut out = Vec::new();
    for (r, stack) in stacks.iter().enumerate() {
        let mut below = rods[r].as_str();
        for &d in stack {
            out.push(atom("on", &[&discs[d], below]));
            below = &discs[d];
        }
        out.push(atom("clear", &[below]));
    }
    out
}

fn hanoi_candidate<R: Rng>(size: SizeRange, rng: &mut R) -> Option<Candidate> {
    let n = rng.gen_range(size.min..=size.max);
    // d1 is the smallest disc
    let discs = numbered("d", n);
    let rods = numbered("rod", 3);
    let color = colors(n, rng);
    let disc_name = |d: usize| format!("{} disk", color[d]);

    let mut stacks: Vec<Vec<usize>> = vec![Vec::new(); 3];
    for d in (0..n).rev() {
        stacks[rng.gen_range(0..3)].push(d);
    }
    let start = stacks.clone();
    for _ in 0..rng.gen_range(1..=3) {
        let moves: Vec<(usize, usize)> = (0..3)
            .flat_map(|a| (0..3).map(move |b| (a, b)))
            .filter(|&(a, b)| {
                a != b
                    && stacks[a]
                        .last()
                        .is_some_and(|top| stacks[b].last().map_or(true, |under| under > top))
            })
            .collect();
        let &(a, b) = moves.choose(rng)?;
        let d = stacks[a].pop().unwrap();
        stacks[b].push(d);
    }

    let mut init = hanoi_atoms(&rods, &discs, &start);
    for (i, d) in discs.iter().enumerate() {
        for rod in &rods {
            init.push(atom("smaller", &[d, rod]));
        }
        for bigger in &discs[i + 1..] {
            init.push(atom("smaller", &[d, bigger]));
        }
    }
    let before: Vec<Atom> = hanoi_atoms(&rods, &discs, &start);
    let goal: Vec<Atom> = hanoi_atoms(&rods, &discs, &stacks)
        .into_iter()
        .filter(|a| a.predicate == "on" && !before.contains(a))
        .collect();
    if goal.is_empty() {
        return None;
    }

    let place = |p: &str| match p.strip_prefix("rod") {
        Some(k) => format!("rod {k}"),
        None => {
            let d: usize = p[1..].parse().unwrap();
            format!("the {}", disc_name(d - 1))
        }
    };
    let wanted: Vec<String> = goal
        .iter()
        .map(|a| {
            let d: usize = a.args[0][1..].parse().unwrap();
            format!("Move the {} onto {}.", disc_name(d - 1), place(&a.args[1]))
        })
        .collect();
    let mut observation = Vec::new();
    for (r, stack) in start.iter().enumerate() {
        if stack.is_empty() {
            observation.push(format!("Rod {} is empty.", r + 1));
            continue;
        }
        observation.push(sentence_case(&format!(
            "{} in rod {}.",
            disc_name(stack[0]),
            r + 1
        )));
        for pair in stack.windows(2) {
            observation.push(sentence_case(&format!(
                "{} on top of {}.",
                disc_name(pair[1]),
                disc_name(pair[0])
            )));
        }
    }
    let sizes: Vec<String> = (0..n)
        .map(|d| format!("{} ({})", disc_name(d), discs[d]))
        .collect();
    let instruction = format!(
        "{} {} Disks from smallest to largest: {}. The disks can be moved in rod 1, rod 2, rod 3, never onto a smaller disk.",
        wanted.join(" "),
        observation.join(" "),
        sizes.join(", ")
    );
    let mut objects = typed(&discs, "disc");
    objects.extend(typed(&rods, "rod"));
    Some(Candidate {
        objects,
        init,
        goal,
        instruction,
    })
}

fn grippers_candidate<R: Rng>(size: SizeRange, rng: &mut R) -> Option<Candidate> {
    let k = rng.gen_range(size.min..=size.max);
    let rooms = numbered("room", k);
    let room_name = |r: &str| format!("Room {}", &r[4..]);
    let palette = colors(3, rng);
    let (key_color, box_color, ball_color) = (palette[0], palette[1], palette[2]);
    let with_ball = rng.gen_bool(0.5);

    let robot = rooms.choose(rng)?.clone();
    let key_room = rooms.choose(rng)?.clone();
    let box_room = rooms.choose(rng)?.clone();
    let ball_room = rooms.choose(rng)?.clone();

    let mut init = vec![
        atom("at-robby", &[&robot]),
        atom("at", &["key1", &key_room]),
        atom("at", &["box1", &box_room]),
        atom("free", &["left"]),
        atom("free", &["right"]),
    ];
    if with_ball {
        init.push(atom("at", &["ball1", &ball_room]));
    }
    let mut doors = Vec::new();
    for pair in rooms.windows(2) {
        let locked = rng.gen_bool(0.5);
        let pred = if locked { "locked" } else { "open" };
        init.push(atom(pred, &[&pair[0], &pair[1]]));
        init.push(atom(pred, &[&pair[1], &pair[0]]));
        doors.push(format!(
            "The door connecting {} and {} is {}.",
            room_name(&pair[0]),
            room_name(&pair[1]),
            if locked { "locked" } else { "open" }
        ));
    }

    let (goal, wanted) = if rng.gen_bool(0.5) {
        (
            atom("held", &["box1"]),
            format!("Pick up the {box_color} box."),
        )
    } else {
        let target = rooms
            .iter()
            .filter(|r| **r != box_room)
            .collect::<Vec<_>>()
            .choose(rng)?
            .to_string();
        (
            atom("at", &["box1", &target]),
            format!("Bring the {box_color} box to {}.", room_name(&target)),
        )
    };

    let mut contents = Vec::new();
    for room in &rooms {
        let mut things = Vec::new();
        if *room == key_room {
            things.push(format!("{key_color} key"));
        }
        if *room == box_room {
            things.push(format!("{box_color} box"));
        }
        if with_ball && *room == ball_room {
            things.push(format!("{ball_color} ball"));
        }
        if *room == robot {
            things.push("agent".to_string());
        }
        if !things.is_empty() {
            contents.push(format!("{} has {}.", room_name(room), things.join(", ")));
        }
    }
    let instruction = format!(
        "{wanted} {} {} The agent has two free grippers, left and right. Objects: key1 is the {key_color} key, box1 is the {box_color} box{}.",
        contents.join(" "),
        doors.join(" "),
        if with_ball {
            format!(", ball1 is the {ball_color} ball")
        } else {
            String::new()
        }
    );

    let mut objects = typed(&rooms, "room");
    objects.push(TypedName::new("left", "gripper"));
    objects.push(TypedName::new("right", "gripper"));
    objects.push(TypedName::new("key1", "key"));
    objects.push(TypedName::new("box1", "box"));
    if with_ball {
        objects.push(TypedName::new("ball1", "item"));
    }
    Some(Candidate {
        objects,
        init,
        goal: vec![goal],
        instruction,
    })
}

fn rearrangement_candidate<R: Rng>(size: SizeRange, rng: &mut R) -> Option<Candidate> {
    let n = rng.gen_range(size.min..=size.max);
    let m = rng.gen_range(2..=3);
    let blocks = numbered("block", n);
    let bowls = numbered("bowl", m);
    let palette = colors(n + m, rng);
    let block_name = |i: usize| format!("{} block ({})", palette[i], blocks[i]);
    let bowl_name = |j: usize| format!("{} bowl ({})", palette[n + j], bowls[j]);

    let mut init = vec![atom("handempty", &[])];
    let mut place: Vec<Option<usize>> = Vec::new();
    let mut observation = Vec::new();
    for i in 0..n {
        if rng.gen_bool(0.6) {
            init.push(atom("on-table", &[&blocks[i]]));
            observation.push(format!("The {} is on the table.", block_name(i)));
            place.push(None);
        } else {
            let j = rng.gen_range(0..m);
            init.push(atom("in", &[&blocks[i], &bowls[j]]));
            observation.push(format!("The {} is in the {}.", block_name(i), bowl_name(j)));
            place.push(Some(j));
        }
    }
    let moved = rng.gen_range(1..=2).min(n);
    let mut goal = Vec::new();
    let mut wanted = Vec::new();
    let chosen: Vec<usize> = (0..n)
        .collect::<Vec<_>>()
        .choose_multiple(rng, moved)
        .copied()
        .collect();
    for i in chosen {
        let options: Vec<usize> = (0..m).filter(|j| place[i] != Some(*j)).collect();
        let j = *options.choose(rng)?;
        goal.push(atom("in", &[&blocks[i], &bowls[j]]));
        wanted.push(format!(
            "Put the {} in the {}.",
            block_name(i),
            bowl_name(j)
        ));
    }
    let listing: Vec<String> = (0..m)
        .map(bowl_name)
        .chain((0..n).map(block_name))
        .collect();
    let instruction = format!(
        "{} There is a {}. {} The hand is empty.",
        wanted.join(" "),
        listing.join(", "),
        observation.join(" ")
    );
    let mut objects = typed(&blocks, "block");
    objects.extend(typed(&bowls, "bowl"));
    Some(Candidate {
        objects,
        init,
        goal,
        instruction,
    })
}

fn candidate<R: Rng>(kind: DomainKind, size: SizeRange, rng: &mut R) -> Option<Candidate> {
    match kind {
        DomainKind::Blocks => blocks_candidate(size, rng),
        DomainKind::Hanoi => hanoi_candidate(size, rng),
        DomainKind::Grippers => grippers_candidate(size, rng),
        DomainKind::Rearrangement => rearrangement_candidate(size, rng),
    }
}

pub fn instance_id(kind: DomainKind, seed: u64, index: usize) -> String {
    format!("{}-s{seed}-{index:03}", kind.name())
}

/// `count` instances whose optimal plan length, certified by the
/// breadth-first oracle, lies in the domain's window.
pub fn generate_instances(
    kind: DomainKind,
    count: usize,
    size: SizeRange,
    seed: u64,
) -> Result<Vec<TaskInstance>, GenerationError> {
    let domain = kind.domain();
    let (lo, hi) = kind.plan_length_range();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for index in 0..count {
        let id = instance_id(kind, seed, index);
        let mut accepted = None;
        for _ in 0..MAX_ATTEMPTS {
            let Some(c) = candidate(kind, size, &mut rng) else {
                continue;
            };
            let problem = Problem {
                name: id.clone(),
                domain_name: domain.name.clone(),
                objects: c.objects,
                init: c.init.into_iter().collect(),
                goal: c.goal.into_iter().collect(),
            };
            let problem_text = serialize(&problem);
            let problem =
                parse_problem(&problem_text, &domain).expect("generator emits valid problems");
            let oracle = bfs_oracle(&ground(&domain, &problem), ORACLE_STATE_CAP);
            match oracle.optimal {
                Some(len) if (lo..=hi).contains(&len) => {
                    accepted = Some(TaskInstance {
                        id: id.clone(),
                        domain: kind,
                        instruction: c.instruction,
                        abstraction_text: Abstraction::from_problem(&problem, &domain).to_text(),
                        problem_text,
                        optimal_length: len,
                        reachable_states: oracle.reachable,
                    });
                    break;
                }
                _ => {}
            }
        }
        out.push(accepted.ok_or(GenerationError::Uncertified {
            domain: kind,
            index,
            attempts: MAX_ATTEMPTS,
        })?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grounding::validate_plan;

    #[test]
    fn every_domain_generates_certified_instances() {
        for kind in DomainKind::ALL {
            let (lo, hi) = kind.plan_length_range();
            let instances = generate_instances(kind, 6, SizeRange::default_for(kind), 1).unwrap();
            assert_eq!(instances.len(), 6);
            for inst in &instances {
                assert!(
                    (lo..=hi).contains(&inst.optimal_length),
                    "{kind}: {}",
                    inst.optimal_length
                );
                assert!(!inst.instruction.is_empty());
                let task = inst.task();
                let oracle = bfs_oracle(&task, ORACLE_STATE_CAP);
                let plan = oracle.optimal_plan.unwrap();
                assert!(validate_plan(&task, &plan).unwrap().is_success());
                let z = Abstraction::parse(&inst.abstraction_text).unwrap();
                let embedded =
                    crate::translator::embed_into_problem(&z, &kind.domain(), &inst.id).unwrap();
                assert_eq!(embedded, inst.problem());
            }
        }
    }

    #[test]
    fn zero_count_is_empty() {
        assert!(
            generate_instances(DomainKind::Blocks, 0, SizeRange::new(3, 3), 1)
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn one_disc_hanoi_is_a_single_move() {
        let inst = generate_instances(DomainKind::Hanoi, 1, SizeRange::new(1, 1), 3).unwrap();
        assert_eq!(inst[0].optimal_length, 1);
        assert!(inst[0].instruction.starts_with("Move the "));
        assert!(inst[0].instruction.contains("rod "));
    }

    #[test]
    fn generation_is_seeded() {
        let a = generate_instances(
            DomainKind::Grippers,
            3,
            SizeRange::default_for(DomainKind::Grippers),
            9,
        )
        .unwrap();
        let b = generate_instances(
            DomainKind::Grippers,
            3,
            SizeRange::default_for(DomainKind::Grippers),
            9,
        )
        .unwrap();
        assert_eq!(a, b);
    }
}

//! Benchmark task synthesis and the experiment harness.
//!
//! Two task families mirror the classic evaluation setups for this kind of
//! learner. East-west trains problems synthesize a pool of random trains,
//! label each by evaluating a ground-truth program over the generated
//! background facts, and sample balanced train/test example sets. List
//! manipulation problems draw random number lists and label them with
//! per-task reference oracles; their background knowledge is the built-in
//! list relations, so no facts are materialized.
//!
//! Label noise is injected by flipping the labels of exactly
//! `ceil(rate * n)` uniformly chosen training examples, so a reported
//! noise level is exact rather than a Bernoulli average. Test sets are
//! never touched.
//!
//! [`run_suite`] runs every (task, config) pair, writes one CSV row per
//! trial plus mean/stderr summary rows per group, and is deterministic
//! given the task seeds (timing columns excepted).

use crate::engine::{run, EngineConfig, Threshold};
use crate::eval::{count_outcomes, EvalLimits, Prover};
use crate::logic::{GroundAtom, Hypothesis, PredSym, Value};
use crate::parse::{
    parse_bias, parse_hypothesis, print_hypothesis, BackgroundKnowledge, DeclarationBias,
    ExampleSet, SearchBounds,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::io::Write;
use std::time::Duration;

/// One fully materialized learning problem: everything an engine run
/// needs plus the noise/seed bookkeeping that produced it.
#[derive(Debug, Clone)]
pub struct TaskSpec {
    pub name: String,
    pub bias: DeclarationBias,
    pub bounds: SearchBounds,
    pub bk: BackgroundKnowledge,
    pub train: ExampleSet,
    pub test: ExampleSet,
    pub noise_rate: Threshold,
    pub seed: u64,
}

/// Result of one engine run on one task.
#[derive(Debug, Clone)]
pub struct TrialRecord {
    pub task: String,
    pub config: String,
    pub noise: Threshold,
    pub seed: u64,
    /// Fraction of test examples classified correctly. A run that
    /// returns no program is scored as if it entailed everything, which
    /// on balanced test sets comes out to one half.
    pub accuracy: f64,
    pub time_s: f64,
    pub programs: usize,
    pub solution_found: bool,
    pub program_text: String,
}

/// A labeled engine configuration for suite runs.
#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub label: String,
    pub engine: EngineConfig,
}

impl BenchConfig {
    pub fn new(label: &str, engine: EngineConfig) -> BenchConfig {
        BenchConfig {
            label: label.to_string(),
            engine,
        }
    }
}

/// The three headline configurations: the classic learner kept anytime
/// so it can return a best-effort program, the noise-tolerant learner,
/// and the no-pruning baseline.
pub fn standard_configs() -> Vec<BenchConfig> {
    vec![
        BenchConfig::new("normal", {
            EngineConfig {
                anytime: true,
                ..EngineConfig::normal()
            }
        }),
        BenchConfig::new("noisy", EngineConfig::noisy(Threshold::zero())),
        BenchConfig::new("enumerate", EngineConfig::enumerate()),
    ]
}

/// Noisy-learner ablations: each drops one constraint family.
pub fn ablation_configs() -> Vec<BenchConfig> {
    let base = EngineConfig::noisy(Threshold::zero());
    vec![
        BenchConfig::new(
            "noisy-no-minimal",
            EngineConfig {
                enable_minimal: false,
                ..base.clone()
            },
        ),
        BenchConfig::new(
            "noisy-no-sound",
            EngineConfig {
                enable_sound: false,
                ..base.clone()
            },
        ),
        BenchConfig::new(
            "noisy-no-size",
            EngineConfig {
                enable_size: false,
                ..base
            },
        ),
    ]
}

// ── Label noise ──────────────────────────────────────────────────────────

/// Flip the labels of exactly `ceil(rate * n)` uniformly chosen training
/// examples, moving each between the positive and negative sets.
pub fn inject_label_noise(ex: &mut ExampleSet, rate: Threshold, rng: &mut ChaCha8Rng) {
    let n = ex.pos.len() + ex.neg.len();
    let k = rate.scaled_ceil(n);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    idx.truncate(k);
    // Flip positives in descending index order so removals stay valid,
    // then the negatives.
    let n_pos = ex.pos.len();
    let mut pos_flips: Vec<usize> = idx.iter().copied().filter(|&i| i < n_pos).collect();
    let mut neg_flips: Vec<usize> = idx
        .iter()
        .copied()
        .filter(|&i| i >= n_pos)
        .map(|i| i - n_pos)
        .collect();
    pos_flips.sort_unstable_by(|a, b| b.cmp(a));
    neg_flips.sort_unstable_by(|a, b| b.cmp(a));
    for i in pos_flips {
        let atom = ex.pos.remove(i);
        ex.neg.push(atom);
    }
    for i in neg_flips {
        let atom = ex.neg.remove(i);
        ex.pos.push(atom);
    }
}

/// How many examples of each kind a generated task should hold.
#[derive(Debug, Clone, Copy)]
pub struct ExampleCounts {
    pub train_pos: usize,
    pub train_neg: usize,
    pub test_pos: usize,
    pub test_neg: usize,
}

impl ExampleCounts {
    pub fn new(train_pos: usize, train_neg: usize, test_pos: usize, test_neg: usize) -> Self {
        ExampleCounts {
            train_pos,
            train_neg,
            test_pos,
            test_neg,
        }
    }
}

// ── East-west trains ─────────────────────────────────────────────────────

const LOAD_SHAPES: [&str; 4] = ["circle", "triangle", "rectangle", "hexagon"];

/// The two target programs trains data is generated from.
pub fn trains_ground_truth(which: u8) -> Hypothesis {
    let text = match which {
        1 => {
            "eastbound(A) :- \
             has_car(A,C),long(C),roof_closed(C),has_car(A,B),three_wheels(B)."
        }
        2 => "eastbound(A) :- has_car(A,C),roof_open(C),has_car(A,B),roof_closed(B).",
        _ => panic!("trains ground truth must be 1 or 2"),
    };
    parse_hypothesis(text).unwrap()
}

fn trains_bias() -> (DeclarationBias, SearchBounds) {
    parse_bias(
        "head_pred(eastbound,1).\n\
         body_pred(has_car,2).\n\
         body_pred(short,1).\n\
         body_pred(long,1).\n\
         body_pred(two_wheels,1).\n\
         body_pred(three_wheels,1).\n\
         body_pred(roof_closed,1).\n\
         body_pred(roof_open,1).\n\
         type(eastbound,train).\n\
         type(has_car,(train,car)).\n\
         type(short,car).\n\
         type(long,car).\n\
         type(two_wheels,car).\n\
         type(three_wheels,car).\n\
         type(roof_closed,car).\n\
         type(roof_open,car).\n\
         direction(eastbound,in).\n\
         direction(has_car,(in,out)).\n\
         direction(short,in).\n\
         direction(long,in).\n\
         direction(two_wheels,in).\n\
         direction(three_wheels,in).\n\
         direction(roof_closed,in).\n\
         direction(roof_open,in).\n\
         max_vars(6).\n\
         max_body(6).\n\
         max_clauses(3).",
    )
    .expect("trains bias parses")
}

/// Synthesize a pool of random trains as background facts. Each train
/// pulls 1 to 4 cars; each car independently draws a length, wheel
/// count, roof state, and up to two shaped loads. The attribute odds
/// keep both ground truths satisfied by a healthy fraction of the pool,
/// so balanced sampling has room to work with.
fn synthesize_trains_bk(pool: usize, rng: &mut ChaCha8Rng) -> (BackgroundKnowledge, Vec<Value>) {
    let mut bk = BackgroundKnowledge::default();
    let mut trains = Vec::with_capacity(pool);
    let fact1 = |name: &str, a: &Value| GroundAtom::new(PredSym::new(name, 1), vec![a.clone()]);
    for i in 0..pool {
        let train = Value::Sym(format!("t{i}").into());
        let n_cars = rng.gen_range(1..=4);
        for j in 0..n_cars {
            let car = Value::Sym(format!("t{i}_c{j}").into());
            bk.facts.push(GroundAtom::new(
                PredSym::new("has_car", 2),
                vec![train.clone(), car.clone()],
            ));
            let long = rng.gen_bool(0.55);
            bk.facts.push(fact1(if long { "long" } else { "short" }, &car));
            let three = rng.gen_bool(0.5);
            bk.facts
                .push(fact1(if three { "three_wheels" } else { "two_wheels" }, &car));
            let closed = rng.gen_bool(0.5);
            bk.facts
                .push(fact1(if closed { "roof_closed" } else { "roof_open" }, &car));
            for k in 0..rng.gen_range(0..=2) {
                let load = Value::Sym(format!("t{i}_c{j}_l{k}").into());
                bk.facts.push(GroundAtom::new(
                    PredSym::new("has_load", 2),
                    vec![car.clone(), load.clone()],
                ));
                bk.facts
                    .push(fact1(LOAD_SHAPES[rng.gen_range(0..LOAD_SHAPES.len())], &load));
            }
        }
        trains.push(train);
    }
    (bk, trains)
}

/// Build a trains learning problem from a ground-truth program: generate
/// a pool, label it by evaluating the ground truth, sample balanced
/// train/test sets, and flip training labels per the noise rate.
pub fn gen_trains_task(
    name: &str,
    ground_truth: &Hypothesis,
    counts: ExampleCounts,
    noise_rate: Threshold,
    seed: u64,
) -> Result<TaskSpec, String> {
    let ExampleCounts {
        train_pos: n_train_pos,
        train_neg: n_train_neg,
        test_pos: n_test_pos,
        test_neg: n_test_neg,
    } = counts;
    let (bias, mut bounds) = trains_bias();
    bounds.max_programs = Some(200);
    bounds.wall_timeout = Some(Duration::from_secs(600));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool = 1000;
    for _ in 0..4 {
        let (bk, trains) = synthesize_trains_bk(pool, &mut rng);
        let prover = Prover::new(ground_truth, &bk, EvalLimits::default());
        let example = |t: &Value| GroundAtom::new(PredSym::new("eastbound", 1), vec![t.clone()]);
        let mut pos: Vec<GroundAtom> = Vec::new();
        let mut neg: Vec<GroundAtom> = Vec::new();
        for t in &trains {
            let e = example(t);
            if prover.entails(&e) {
                pos.push(e);
            } else {
                neg.push(e);
            }
        }
        if pos.len() >= n_train_pos + n_test_pos && neg.len() >= n_train_neg + n_test_neg {
            pos.shuffle(&mut rng);
            neg.shuffle(&mut rng);
            let mut train = ExampleSet {
                pos: pos[..n_train_pos].to_vec(),
                neg: neg[..n_train_neg].to_vec(),
            };
            let test = ExampleSet {
                pos: pos[n_train_pos..n_train_pos + n_test_pos].to_vec(),
                neg: neg[n_train_neg..n_train_neg + n_test_neg].to_vec(),
            };
            inject_label_noise(&mut train, noise_rate, &mut rng);
            return Ok(TaskSpec {
                name: name.to_string(),
                bias,
                bounds,
                bk,
                train,
                test,
                noise_rate,
                seed,
            });
        }
        pool *= 2;
    }
    Err(format!(
        "could not draw balanced example sets for {name} even from a pool of {pool} trains"
    ))
}

// ── List manipulation ────────────────────────────────────────────────────

pub const LIST_TASKS: [&str; 9] = [
    "addhead",
    "droplast",
    "evens",
    "finddup",
    "last",
    "len",
    "member",
    "sorted",
    "threesame",
];

/// Reference semantics for each list task, evaluated on example
/// arguments. Returns None for an unknown task name.
pub fn list_oracle(task: &str, args: &[Value]) -> Option<bool> {
    let list = |v: &Value| -> Option<Vec<Value>> {
        match v {
            Value::List(items) => Some(items.clone()),
            _ => None,
        }
    };
    let int = |v: &Value| -> Option<i64> {
        match v {
            Value::Int(i) => Some(*i),
            _ => None,
        }
    };
    Some(match task {
        "addhead" => {
            let (a, b) = (list(&args[0])?, list(&args[1])?);
            match a.first() {
                Some(h) => {
                    let mut want = vec![h.clone(), h.clone(), h.clone()];
                    want.extend(a.iter().cloned());
                    b == want
                }
                None => false,
            }
        }
        "droplast" => {
            let (a, b) = (list(&args[0])?, list(&args[1])?);
            !a.is_empty() && b == a[..a.len() - 1]
        }
        "evens" => {
            let a = list(&args[0])?;
            a.iter().all(|v| matches!(v, Value::Int(i) if i % 2 == 0))
        }
        "finddup" => {
            let (a, b) = (list(&args[0])?, &args[1]);
            a.iter().filter(|v| *v == b).count() >= 2
        }
        "last" => {
            let (a, b) = (list(&args[0])?, &args[1]);
            a.last() == Some(b)
        }
        "len" => {
            let (a, b) = (list(&args[0])?, int(&args[1])?);
            a.len() as i64 == b
        }
        "member" => {
            let (a, b) = (list(&args[0])?, &args[1]);
            a.contains(b)
        }
        "sorted" => {
            let a = list(&args[0])?;
            !a.is_empty()
                && a.windows(2).all(|w| match (int(&w[0]), int(&w[1])) {
                    (Some(x), Some(y)) => x <= y,
                    _ => false,
                })
        }
        "threesame" => {
            let a = list(&args[0])?;
            a.len() >= 3 && a[0] == a[1] && a[1] == a[2]
        }
        _ => return None,
    })
}

/// A correct program for each task, used by tests and as documentation
/// of what the search is aiming for.
pub fn list_reference_solution(task: &str) -> Option<Hypothesis> {
    let text = match task {
        "addhead" => "addhead(A,B) :- head(A,C),cons(C,A,D),cons(C,D,E),cons(C,E,B).",
        "droplast" => {
            "droplast(A,B) :- tail(A,B),empty(B).\n\
             droplast(A,B) :- tail(A,C),droplast(C,D),head(A,E),cons(E,D,B)."
        }
        "evens" => {
            "evens(A) :- empty(A).\n\
             evens(A) :- head(A,B),even(B),tail(A,C),evens(C)."
        }
        "finddup" => {
            "finddup(A,B) :- head(A,B),tail(A,C),member(C,B).\n\
             finddup(A,B) :- tail(A,C),finddup(C,B)."
        }
        "last" => {
            "last(A,B) :- tail(A,C),empty(C),head(A,B).\n\
             last(A,B) :- tail(A,C),last(C,B)."
        }
        "len" => {
            "len(A,B) :- empty(A),zero(B).\n\
             len(A,B) :- tail(A,C),len(C,D),increment(D,B)."
        }
        "member" => {
            "member(A,B) :- head(A,B).\n\
             member(A,B) :- tail(A,C),member(C,B)."
        }
        "sorted" => {
            "sorted(A) :- tail(A,B),empty(B).\n\
             sorted(A) :- head(A,B),tail(A,C),head(C,D),geq(D,B),sorted(C)."
        }
        "threesame" => "threesame(A) :- head(A,B),tail(A,C),head(C,B),tail(C,D),head(D,B).",
        _ => return None,
    };
    Some(parse_hypothesis(text).unwrap())
}

/// Bias text per task: the target's signature plus exactly the built-in
/// relations its reference solution draws on.
fn list_bias(task: &str) -> Option<(DeclarationBias, SearchBounds)> {
    let decls = match task {
        "addhead" => {
            "head_pred(addhead,2). type(addhead,(list,int_list)). direction(addhead,(in,out)).\n\
             body_pred(head,2). body_pred(tail,2). body_pred(cons,3)."
        }
        "droplast" => {
            "head_pred(droplast,2). type(droplast,(list,int_list)). direction(droplast,(in,out)).\n\
             body_pred(droplast,2).\n\
             body_pred(head,2). body_pred(tail,2). body_pred(cons,3). body_pred(empty,1)."
        }
        "evens" => {
            "head_pred(evens,1). type(evens,(list)). direction(evens,(in)).\n\
             body_pred(evens,1).\n\
             body_pred(head,2). body_pred(tail,2). body_pred(even,1). body_pred(empty,1)."
        }
        "finddup" => {
            "head_pred(finddup,2). type(finddup,(list,int)). direction(finddup,(in,out)).\n\
             body_pred(finddup,2).\n\
             body_pred(head,2). body_pred(tail,2). body_pred(member,2)."
        }
        "last" => {
            "head_pred(last,2). type(last,(list,int)). direction(last,(in,out)).\n\
             body_pred(last,2).\n\
             body_pred(head,2). body_pred(tail,2). body_pred(empty,1)."
        }
        "len" => {
            "head_pred(len,2). type(len,(list,int)). direction(len,(in,out)).\n\
             body_pred(len,2).\n\
             body_pred(tail,2). body_pred(empty,1). body_pred(zero,1). body_pred(increment,2)."
        }
        "member" => {
            "head_pred(member,2). type(member,(list,int)). direction(member,(in,out)).\n\
             body_pred(member,2).\n\
             body_pred(head,2). body_pred(tail,2)."
        }
        "sorted" => {
            "head_pred(sorted,1). type(sorted,(list)). direction(sorted,(in)).\n\
             body_pred(sorted,1).\n\
             body_pred(head,2). body_pred(tail,2). body_pred(empty,1). body_pred(geq,2)."
        }
        "threesame" => {
            "head_pred(threesame,1). type(threesame,(list)). direction(threesame,(in)).\n\
             body_pred(head,2). body_pred(tail,2)."
        }
        _ => return None,
    };
    // zero and one act as producers of their argument so the base cases
    // of counting tasks can bind an output variable; at proof time the
    // example atom arrives ground, so the check always has its argument.
    let shared = "type(head,(list,int)). type(tail,(list,list)).\n\
                  type(cons,(int,list,list)). type(empty,(list)).\n\
                  type(even,(int)). type(zero,(int)).\n\
                  type(increment,(int,int)). type(geq,(int,int)).\n\
                  type(member,(list,int)).\n\
                  direction(head,(in,out)). direction(tail,(in,out)).\n\
                  direction(cons,(in,in,out)). direction(empty,(in)).\n\
                  direction(even,(in)). direction(zero,(out)).\n\
                  direction(increment,(in,out)). direction(geq,(in,in)).\n\
                  direction(member,(in,out)).\n\
                  max_vars(5). max_body(5). max_clauses(2).";
    // The second argument of the list->list tasks shares the "list" type;
    // the alias below collapses to it.
    let text = format!("{decls}\n{shared}").replace("int_list", "list");
    Some(parse_bias(&text).expect("list bias parses"))
}

fn vlist(xs: &[i64]) -> Value {
    Value::List(xs.iter().map(|&x| Value::Int(x)).collect())
}

fn rand_elem(rng: &mut ChaCha8Rng) -> i64 {
    rng.gen_range(1..=100)
}

fn rand_list(rng: &mut ChaCha8Rng, min_len: usize, max_len: usize) -> Vec<i64> {
    let len = rng.gen_range(min_len..=max_len);
    (0..len).map(|_| rand_elem(rng)).collect()
}

/// Sample one example for `task` with the oracle label `positive`.
/// Samplers construct candidates with the right shape and reject until
/// the oracle agrees, so labels are correct by construction.
fn sample_list_example(task: &str, positive: bool, rng: &mut ChaCha8Rng) -> GroundAtom {
    let pred2 = |name: &str, a: Value, b: Value| GroundAtom::new(PredSym::new(name, 2), vec![a, b]);
    let pred1 = |name: &str, a: Value| GroundAtom::new(PredSym::new(name, 1), vec![a]);
    for _ in 0..10_000 {
        let atom = match (task, positive) {
            ("addhead", true) => {
                let a = rand_list(rng, 1, 4);
                let mut b = vec![a[0], a[0], a[0]];
                b.extend(&a);
                pred2("addhead", vlist(&a), vlist(&b))
            }
            ("addhead", false) => {
                let a = rand_list(rng, 1, 4);
                let h = a[0];
                let b: Vec<i64> = match rng.gen_range(0..4) {
                    0 => [&[h, h][..], &a[..]].concat(),
                    1 => [&[h, h, h, h][..], &a[..]].concat(),
                    2 => {
                        let mut x = rand_elem(rng);
                        while x == h {
                            x = rand_elem(rng);
                        }
                        [&[x, h, h][..], &a[..]].concat()
                    }
                    _ => rand_list(rng, 0, 7),
                };
                pred2("addhead", vlist(&a), vlist(&b))
            }
            ("droplast", true) => {
                let a = rand_list(rng, 1, 5);
                pred2("droplast", vlist(&a), vlist(&a[..a.len() - 1]))
            }
            ("droplast", false) => {
                let a = rand_list(rng, 1, 5);
                let b: Vec<i64> = match rng.gen_range(0..3) {
                    0 => a.clone(),
                    1 => a[1..].to_vec(),
                    _ => rand_list(rng, 0, 5),
                };
                pred2("droplast", vlist(&a), vlist(&b))
            }
            ("evens", true) => {
                let len = rng.gen_range(0..=5);
                let a: Vec<i64> = (0..len).map(|_| rng.gen_range(1..=50) * 2).collect();
                pred1("evens", vlist(&a))
            }
            ("evens", false) => {
                let mut a = rand_list(rng, 1, 5);
                let i = rng.gen_range(0..a.len());
                a[i] = rng.gen_range(0..=49) * 2 + 1;
                pred1("evens", vlist(&a))
            }
            ("finddup", true) => {
                let mut a = rand_list(rng, 1, 5);
                let dup = a[rng.gen_range(0..a.len())];
                a.insert(rng.gen_range(0..=a.len()), dup);
                pred2("finddup", vlist(&a), Value::Int(dup))
            }
            ("finddup", false) => {
                let a = rand_list(rng, 1, 6);
                let b = rand_elem(rng);
                pred2("finddup", vlist(&a), Value::Int(b))
            }
            ("last", true) => {
                let a = rand_list(rng, 1, 6);
                pred2("last", vlist(&a), Value::Int(*a.last().unwrap()))
            }
            ("last", false) => {
                let a = rand_list(rng, 1, 6);
                let b = if a.len() > 1 && rng.gen_bool(0.5) {
                    a[rng.gen_range(0..a.len() - 1)]
                } else {
                    rand_elem(rng)
                };
                pred2("last", vlist(&a), Value::Int(b))
            }
            ("len", true) => {
                let a = rand_list(rng, 0, 6);
                pred2("len", vlist(&a), Value::Int(a.len() as i64))
            }
            ("len", false) => {
                let a = rand_list(rng, 0, 6);
                pred2("len", vlist(&a), Value::Int(rng.gen_range(0..=8)))
            }
            ("member", true) => {
                let a = rand_list(rng, 1, 6);
                pred2("member", vlist(&a), Value::Int(a[rng.gen_range(0..a.len())]))
            }
            ("member", false) => {
                let a = rand_list(rng, 1, 6);
                pred2("member", vlist(&a), Value::Int(rand_elem(rng)))
            }
            ("sorted", true) => {
                let mut a = rand_list(rng, 1, 5);
                a.sort_unstable();
                pred1("sorted", vlist(&a))
            }
            ("sorted", false) => pred1("sorted", vlist(&rand_list(rng, 2, 5))),
            ("threesame", true) => {
                let x = rand_elem(rng);
                let mut a = vec![x, x, x];
                a.extend(rand_list(rng, 0, 2));
                pred1("threesame", vlist(&a))
            }
            ("threesame", false) => {
                // Near misses dominate: lists whose first three elements
                // contain an equal pair without all three matching refute
                // the partial-pattern programs that enumerate before the
                // real one, and interior pair plants catch checks against
                // later positions. Plain short and random lists round out
                // the length distribution.
                let a: Vec<i64> = match rng.gen_range(0..12) {
                    0 => rand_list(rng, 0, 2),
                    1 => rand_list(rng, 3, 6),
                    v @ 2..=10 => {
                        let x = rand_elem(rng);
                        let r = rand_elem(rng);
                        let mut head = match v % 3 {
                            0 => vec![x, x, r],
                            1 => vec![x, r, x],
                            _ => vec![r, x, x],
                        };
                        head.extend(rand_list(rng, 0, 3));
                        head
                    }
                    _ => {
                        let len = rng.gen_range(4..=6);
                        let mut v = rand_list(rng, len, len);
                        let gap = rng.gen_range(1..=3);
                        let i = rng.gen_range(0..=len - 1 - gap);
                        v[i + gap] = v[i];
                        v
                    }
                };
                pred1("threesame", vlist(&a))
            }
            _ => panic!("unknown list task {task}"),
        };
        if list_oracle(task, &atom.args) == Some(positive) {
            return atom;
        }
    }
    panic!("could not sample a {task} example with label {positive}");
}

/// Build a list-manipulation learning problem: oracle-labeled random
/// examples, built-in list relations as background knowledge, and the
/// standard two-clause bias.
pub fn gen_list_task(
    name: &str,
    counts: ExampleCounts,
    noise_rate: Threshold,
    seed: u64,
) -> Result<TaskSpec, String> {
    let ExampleCounts {
        train_pos: n_train_pos,
        train_neg: n_train_neg,
        test_pos: n_test_pos,
        test_neg: n_test_neg,
    } = counts;
    let (bias, mut bounds) = list_bias(name).ok_or_else(|| format!("unknown task {name}"))?;
    bounds.max_programs = Some(500);
    bounds.wall_timeout = Some(Duration::from_secs(600));
    let bk = BackgroundKnowledge {
        facts: Vec::new(),
        builtins: bias
            .body_preds
            .iter()
            .filter(|p| !bias.head_preds.contains(p))
            .cloned()
            .collect(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |n_pos: usize, n_neg: usize, taken: &mut HashSet<GroundAtom>| -> ExampleSet {
        let mut ex = ExampleSet::default();
        while ex.pos.len() < n_pos {
            let a = sample_list_example(name, true, &mut rng);
            if taken.insert(a.clone()) {
                ex.pos.push(a);
            }
        }
        while ex.neg.len() < n_neg {
            let a = sample_list_example(name, false, &mut rng);
            if taken.insert(a.clone()) {
                ex.neg.push(a);
            }
        }
        ex
    };
    let mut taken = HashSet::new();
    let mut train = draw(n_train_pos, n_train_neg, &mut taken);
    let test = draw(n_test_pos, n_test_neg, &mut taken);
    inject_label_noise(&mut train, noise_rate, &mut rng);
    Ok(TaskSpec {
        name: name.to_string(),
        bias,
        bounds,
        bk,
        train,
        test,
        noise_rate,
        seed,
    })
}

// ── Running trials ───────────────────────────────────────────────────────

/// Run one engine configuration on one task and score it on the test
/// set.
pub fn run_trial(task: &TaskSpec, config: &BenchConfig) -> TrialRecord {
    let res = run(&task.bias, &task.bounds, &task.bk, &task.train, &config.engine);
    let total = (task.test.pos.len() + task.test.neg.len()) as f64;
    let (accuracy, program_text) = match &res.returned {
        Some(h) => {
            let out = count_outcomes(h, &task.bk, &task.test, config.engine.eval_limits);
            (
                (out.tp + out.tn) as f64 / total,
                print_hypothesis(h).replace('\n', " "),
            )
        }
        // No program: treat everything as entailed, so only the
        // positive test examples score.
        None => (task.test.pos.len() as f64 / total, String::new()),
    };
    TrialRecord {
        task: task.name.clone(),
        config: config.label.clone(),
        noise: task.noise_rate,
        seed: task.seed,
        accuracy,
        time_s: res.wall_time.as_secs_f64(),
        programs: res.programs_tested,
        solution_found: res.is_solution,
        program_text,
    }
}

/// Sample mean and standard error (sample stdev over sqrt n).
pub fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt() / n.sqrt())
}

/// Run every (config, task) pair and write one CSV row per trial plus
/// mean and stderr rows per (task, config, noise) group. Groups follow
/// first-appearance order, so output is deterministic given the tasks.
pub fn run_suite<W: Write>(
    tasks: &[TaskSpec],
    configs: &[BenchConfig],
    out: W,
) -> csv::Result<Vec<TrialRecord>> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "task",
        "config",
        "noise",
        "seed",
        "accuracy",
        "time_s",
        "programs",
        "solution_found",
        "program_text",
    ])?;
    let mut records = Vec::new();
    let mut group_order: Vec<(String, String, Threshold)> = Vec::new();
    for config in configs {
        for task in tasks {
            let rec = run_trial(task, config);
            w.write_record([
                rec.task.clone(),
                rec.config.clone(),
                format!("{}", rec.noise.as_f64()),
                rec.seed.to_string(),
                format!("{:.4}", rec.accuracy),
                format!("{:.3}", rec.time_s),
                rec.programs.to_string(),
                rec.solution_found.to_string(),
                rec.program_text.clone(),
            ])?;
            let key = (rec.task.clone(), rec.config.clone(), rec.noise);
            if !group_order.contains(&key) {
                group_order.push(key);
            }
            records.push(rec);
        }
    }
    for (task, config, noise) in group_order {
        let group: Vec<&TrialRecord> = records
            .iter()
            .filter(|r| r.task == task && r.config == config && r.noise == noise)
            .collect();
        let (acc_mean, acc_se) = mean_and_stderr(&group.iter().map(|r| r.accuracy).collect::<Vec<_>>());
        let (t_mean, t_se) = mean_and_stderr(&group.iter().map(|r| r.time_s).collect::<Vec<_>>());
        w.write_record([
            task.clone(),
            config.clone(),
            format!("{}", noise.as_f64()),
            "mean".to_string(),
            format!("{acc_mean:.4}"),
            format!("{t_mean:.3}"),
            String::new(),
            String::new(),
            String::new(),
        ])?;
        w.write_record([
            task,
            config,
            format!("{}", noise.as_f64()),
            "stderr".to_string(),
            format!("{acc_se:.4}"),
            format!("{t_se:.3}"),
            String::new(),
            String::new(),
            String::new(),
        ])?;
    }
    w.flush()?;
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::entails;

    fn label_disagreements(ex: &ExampleSet, task: &str) -> usize {
        let wrong_pos = ex
            .pos
            .iter()
            .filter(|a| list_oracle(task, &a.args) != Some(true))
            .count();
        let wrong_neg = ex
            .neg
            .iter()
            .filter(|a| list_oracle(task, &a.args) != Some(false))
            .count();
        wrong_pos + wrong_neg
    }

    #[test]
    fn noiseless_labels_match_the_oracle() {
        let task = gen_list_task("member", ExampleCounts::new(10, 10, 15, 15), Threshold::zero(), 7).unwrap();
        assert_eq!(label_disagreements(&task.train, "member"), 0);
        assert_eq!(label_disagreements(&task.test, "member"), 0);
        assert_eq!(task.train.pos.len(), 10);
        assert_eq!(task.train.neg.len(), 10);
        assert_eq!(task.test.pos.len(), 15);
        assert_eq!(task.test.neg.len(), 15);
    }

    #[test]
    fn noise_flips_exactly_the_ceiling_count() {
        // ceil(0.1 * 20) = 2 flipped training labels, test untouched.
        let rate = Threshold::parse("0.1").unwrap();
        let task = gen_list_task("member", ExampleCounts::new(10, 10, 15, 15), rate, 7).unwrap();
        assert_eq!(label_disagreements(&task.train, "member"), 2);
        assert_eq!(label_disagreements(&task.test, "member"), 0);
        // Flipping moves examples across the lists; totals are stable.
        assert_eq!(task.train.pos.len() + task.train.neg.len(), 20);

        // ceil(1/3 * 20) = 7.
        let rate = Threshold::new(1, 3);
        let task = gen_list_task("member", ExampleCounts::new(10, 10, 5, 5), rate, 7).unwrap();
        assert_eq!(label_disagreements(&task.train, "member"), 7);
    }

    #[test]
    fn examples_stay_disjoint_and_unique() {
        let task = gen_list_task("last", ExampleCounts::new(15, 15, 30, 30), Threshold::zero(), 3).unwrap();
        let mut seen = HashSet::new();
        for a in task
            .train
            .pos
            .iter()
            .chain(&task.train.neg)
            .chain(&task.test.pos)
            .chain(&task.test.neg)
        {
            assert!(seen.insert(a.clone()), "duplicate example {a:?}");
        }
    }

    #[test]
    fn reference_solutions_are_perfect_on_noiseless_tasks() {
        for name in LIST_TASKS {
            let task = gen_list_task(name, ExampleCounts::new(8, 8, 25, 25), Threshold::zero(), 11).unwrap();
            let solution = list_reference_solution(name).unwrap();
            let lim = EvalLimits::default();
            let train = count_outcomes(&solution, &task.bk, &task.train, lim);
            let test = count_outcomes(&solution, &task.bk, &task.test, lim);
            assert_eq!(
                (train.tp, train.tn),
                (task.train.pos.len(), task.train.neg.len()),
                "{name} reference solution imperfect on train"
            );
            assert_eq!(
                (test.tp, test.tn),
                (task.test.pos.len(), task.test.neg.len()),
                "{name} reference solution imperfect on test"
            );
        }
    }

    #[test]
    fn member_solution_agrees_with_oracle_on_random_inputs() {
        let solution = list_reference_solution("member").unwrap();
        let bk = BackgroundKnowledge {
            facts: Vec::new(),
            builtins: vec![PredSym::new("head", 2), PredSym::new("tail", 2)],
        };
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let lim = EvalLimits::default();
        for _ in 0..1000 {
            let l = rand_list(&mut rng, 0, 6);
            let e = rand_elem(&mut rng);
            let atom = GroundAtom::new(
                PredSym::new("member", 2),
                vec![vlist(&l), Value::Int(e)],
            );
            let by_program = entails(&solution, &bk, &atom, lim);
            let by_oracle = list_oracle("member", &atom.args).unwrap();
            assert_eq!(by_program, by_oracle, "disagree on member({l:?},{e})");
        }
    }

    #[test]
    fn trains_task_is_balanced_and_oracle_labeled() {
        let gt = trains_ground_truth(1);
        let task =
            gen_trains_task("trains1", &gt, ExampleCounts::new(10, 10, 20, 20), Threshold::zero(), 5).unwrap();
        assert_eq!(task.train.pos.len(), 10);
        assert_eq!(task.test.pos.len(), 20);
        let lim = EvalLimits::default();
        let train = count_outcomes(&gt, &task.bk, &task.train, lim);
        let test = count_outcomes(&gt, &task.bk, &task.test, lim);
        assert_eq!((train.tp, train.tn), (10, 10));
        assert_eq!((test.tp, test.tn), (20, 20));
        // Train and test draw from disjoint pool slices.
        let train_atoms: HashSet<_> = task.train.pos.iter().chain(&task.train.neg).collect();
        assert!(task
            .test
            .pos
            .iter()
            .chain(&task.test.neg)
            .all(|a| !train_atoms.contains(a)));
    }

    #[test]
    fn trains_noise_flips_exact_count() {
        let gt = trains_ground_truth(2);
        let rate = Threshold::parse("0.2").unwrap();
        let task = gen_trains_task("trains2", &gt, ExampleCounts::new(10, 10, 5, 5), rate, 5).unwrap();
        let lim = EvalLimits::default();
        let out = count_outcomes(&gt, &task.bk, &task.train, lim);
        // ceil(0.2 * 20) = 4 labels disagree with the ground truth.
        assert_eq!((out.fn_) + (out.fp), 4);
    }

    #[test]
    fn stderr_matches_hand_computation() {
        let (mean, se) = mean_and_stderr(&[1.0, 2.0, 3.0]);
        assert!((mean - 2.0).abs() < 1e-12);
        assert!((se - 0.5773502691896258).abs() < 1e-9);
        assert_eq!(mean_and_stderr(&[5.0]), (5.0, 0.0));
        assert_eq!(mean_and_stderr(&[]), (0.0, 0.0));
    }

    fn mask_time_columns(csv_text: &str) -> String {
        csv_text
            .lines()
            .map(|line| {
                let cols: Vec<&str> = line.split(',').collect();
                cols.iter()
                    .enumerate()
                    .map(|(i, c)| if i == 5 { "T" } else { c })
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    #[test]
    fn suite_emits_trial_rows_plus_group_summaries() {
        let mut task = gen_list_task("member", ExampleCounts::new(5, 5, 10, 10), Threshold::zero(), 1).unwrap();
        task.bounds.max_programs = Some(40);
        let configs = vec![BenchConfig::new(
            "noisy",
            EngineConfig::noisy(Threshold::zero()),
        )];
        let mut buf = Vec::new();
        let records = run_suite(&[task.clone()], &configs, &mut buf).unwrap();
        assert_eq!(records.len(), 1);
        let text = String::from_utf8(buf).unwrap();
        // Header + 1 data row + mean + stderr.
        assert_eq!(text.lines().count(), 4);
        assert!(text.lines().nth(2).unwrap().contains("mean"));
        assert!(text.lines().nth(3).unwrap().contains("stderr"));

        // Same seeds, same bytes, timing column aside.
        let mut buf2 = Vec::new();
        run_suite(&[task], &configs, &mut buf2).unwrap();
        let text2 = String::from_utf8(buf2).unwrap();
        assert_eq!(mask_time_columns(&text), mask_time_columns(&text2));
    }
}

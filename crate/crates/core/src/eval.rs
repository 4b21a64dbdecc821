//! Entailment testing: does a hypothesis plus background knowledge derive
//! a ground example atom?
//!
//! The prover runs SLD-style top-down resolution with three goal sources:
//! hypothesis clauses, ground background facts, and built-in relations
//! with declared modes. Goal selection is leftmost-ready rather than
//! strictly leftmost: a built-in is ready only when one of its modes has
//! all required arguments bound, and a hypothesis-defined goal is ready
//! when fully ground. Unready goals are delayed, which lets clauses whose
//! canonical body order puts a consumer before its producer still run
//! (canonicalization orders atoms alphabetically, not by dataflow). When
//! nothing is ready the prover force-selects the leftmost hypothesis-
//! defined goal, so recursive calls that produce an output binding still
//! resolve; if only mode-starved built-ins remain, the branch fails.
//!
//! Terms stay flat during resolution (a variable or a ground value, never
//! a partial structure), so unification is binding lookup plus equality.
//! Ground goals get a success memo and an in-progress set for loop
//! breaking. Resource limits (depth per branch, global step count, a
//! per-example wall clock) turn runaway programs into non-entailment.

use crate::logic::{Atom, Clause, GroundAtom, Hypothesis, PredSym, Term, Value};
use crate::parse::{BackgroundKnowledge, ExampleSet};
use crate::score::Outcome;
use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

/// Resource limits for one example's proof search.
#[derive(Debug, Clone, Copy)]
pub struct EvalLimits {
    pub max_depth: usize,
    pub max_steps: usize,
    pub per_example_timeout: Duration,
}

impl Default for EvalLimits {
    fn default() -> Self {
        EvalLimits {
            max_depth: 100,
            max_steps: 100_000,
            per_example_timeout: Duration::from_millis(100),
        }
    }
}

// ── Built-in registry ────────────────────────────────────────────────────

/// A built-in relation: declared modes (true = argument must be bound)
/// plus an enumerator that, given the bound arguments, returns every full
/// argument tuple consistent with them. Enumerations are always finite.
struct Builtin {
    name: &'static str,
    arity: usize,
    modes: &'static [&'static [bool]],
    enumerate: fn(&[Option<&Value>]) -> Vec<Vec<Value>>,
}

fn int_of(v: Option<&Value>) -> Option<i64> {
    match v {
        Some(Value::Int(i)) => Some(*i),
        _ => None,
    }
}

fn list_of(v: Option<&Value>) -> Option<&Vec<Value>> {
    match v {
        Some(Value::List(items)) => Some(items),
        _ => None,
    }
}

fn check1(args: &[Option<&Value>], pred: impl Fn(&Value) -> bool) -> Vec<Vec<Value>> {
    match args[0] {
        Some(v) if pred(v) => vec![vec![v.clone()]],
        _ => vec![],
    }
}

static BUILTINS: &[Builtin] = &[
    Builtin {
        name: "empty",
        arity: 1,
        modes: &[&[true]],
        enumerate: |args| check1(args, |v| matches!(v, Value::List(l) if l.is_empty())),
    },
    Builtin {
        name: "even",
        arity: 1,
        modes: &[&[true]],
        enumerate: |args| check1(args, |v| matches!(v, Value::Int(i) if i % 2 == 0)),
    },
    Builtin {
        name: "odd",
        arity: 1,
        modes: &[&[true]],
        enumerate: |args| check1(args, |v| matches!(v, Value::Int(i) if i % 2 != 0)),
    },
    Builtin {
        name: "zero",
        arity: 1,
        modes: &[&[true]],
        enumerate: |args| check1(args, |v| matches!(v, Value::Int(0))),
    },
    Builtin {
        name: "one",
        arity: 1,
        modes: &[&[true]],
        enumerate: |args| check1(args, |v| matches!(v, Value::Int(1))),
    },
    Builtin {
        name: "head",
        arity: 2,
        modes: &[&[true, false]],
        enumerate: |args| match list_of(args[0]) {
            Some(items) if !items.is_empty() => {
                vec![vec![args[0].unwrap().clone(), items[0].clone()]]
            }
            _ => vec![],
        },
    },
    Builtin {
        name: "tail",
        arity: 2,
        modes: &[&[true, false]],
        enumerate: |args| match list_of(args[0]) {
            Some(items) if !items.is_empty() => vec![vec![
                args[0].unwrap().clone(),
                Value::List(items[1..].to_vec()),
            ]],
            _ => vec![],
        },
    },
    Builtin {
        name: "increment",
        arity: 2,
        modes: &[&[true, false], &[false, true]],
        enumerate: |args| {
            // increment(a, b) holds when b = a + 1; runs in either
            // direction depending on which side is bound.
            if let Some(a) = int_of(args[0]) {
                match a.checked_add(1) {
                    Some(b) => vec![vec![Value::Int(a), Value::Int(b)]],
                    None => vec![],
                }
            } else if let Some(b) = int_of(args[1]) {
                match b.checked_sub(1) {
                    Some(a) => vec![vec![Value::Int(a), Value::Int(b)]],
                    None => vec![],
                }
            } else {
                vec![]
            }
        },
    },
    Builtin {
        name: "decrement",
        arity: 2,
        modes: &[&[true, false], &[false, true]],
        enumerate: |args| {
            if let Some(a) = int_of(args[0]) {
                match a.checked_sub(1) {
                    Some(b) => vec![vec![Value::Int(a), Value::Int(b)]],
                    None => vec![],
                }
            } else if let Some(b) = int_of(args[1]) {
                match b.checked_add(1) {
                    Some(a) => vec![vec![Value::Int(a), Value::Int(b)]],
                    None => vec![],
                }
            } else {
                vec![]
            }
        },
    },
    Builtin {
        name: "geq",
        arity: 2,
        modes: &[&[true, true]],
        enumerate: |args| match (int_of(args[0]), int_of(args[1])) {
            (Some(a), Some(b)) if a >= b => {
                vec![vec![Value::Int(a), Value::Int(b)]]
            }
            _ => vec![],
        },
    },
    Builtin {
        name: "member",
        arity: 2,
        modes: &[&[true, false]],
        enumerate: |args| match list_of(args[0]) {
            Some(items) => {
                let mut seen: Vec<&Value> = Vec::new();
                let mut out = Vec::new();
                for item in items {
                    if !seen.contains(&item) {
                        seen.push(item);
                        out.push(vec![args[0].unwrap().clone(), item.clone()]);
                    }
                }
                out
            }
            None => vec![],
        },
    },
    Builtin {
        name: "cons",
        arity: 3,
        modes: &[&[true, true, false]],
        enumerate: |args| match (args[0], list_of(args[1])) {
            (Some(h), Some(t)) => {
                let mut list = Vec::with_capacity(t.len() + 1);
                list.push(h.clone());
                list.extend(t.iter().cloned());
                vec![vec![h.clone(), args[1].unwrap().clone(), Value::List(list)]]
            }
            _ => vec![],
        },
    },
    Builtin {
        name: "append",
        arity: 3,
        modes: &[&[true, true, false]],
        enumerate: |args| match (list_of(args[0]), list_of(args[1])) {
            (Some(a), Some(b)) => {
                let mut joined = a.clone();
                joined.extend(b.iter().cloned());
                vec![vec![
                    args[0].unwrap().clone(),
                    args[1].unwrap().clone(),
                    Value::List(joined),
                ]]
            }
            _ => vec![],
        },
    },
];

fn builtin_for(p: &PredSym) -> Option<&'static Builtin> {
    BUILTINS
        .iter()
        .find(|b| b.name == p.name.as_ref() && b.arity == p.arity)
}

/// Whether the registry defines a builtin with this name and arity.
pub fn registry_contains(p: &PredSym) -> bool {
    builtin_for(p).is_some()
}

/// All relations the registry offers.
pub fn registry_preds() -> Vec<PredSym> {
    BUILTINS
        .iter()
        .map(|b| PredSym::new(b.name, b.arity))
        .collect()
}

// ── Prover ───────────────────────────────────────────────────────────────

/// Reusable evaluation context for one hypothesis against one background:
/// builds the fact index and clause table once, then answers entailment
/// queries per example.
pub struct Prover<'a> {
    clauses_by_head: HashMap<PredSym, Vec<&'a Clause>>,
    facts_by_pred: HashMap<PredSym, Vec<&'a GroundAtom>>,
    /// First-argument index: goals whose first argument is bound skip
    /// straight to the matching bucket instead of scanning the relation.
    facts_by_first: HashMap<(PredSym, Value), Vec<&'a GroundAtom>>,
    enabled_builtins: HashMap<PredSym, &'static Builtin>,
    limits: EvalLimits,
}

enum Readiness {
    Ready,
    DelayedUser,
    DelayedBuiltin,
}

struct Search<'p, 'a> {
    prover: &'p Prover<'a>,
    bindings: HashMap<u32, Term>,
    trail: Vec<u32>,
    next_var: u32,
    steps: usize,
    deadline: Instant,
    exhausted: bool,
    memo_true: HashSet<GroundAtom>,
    in_progress: HashSet<GroundAtom>,
}

impl<'a> Prover<'a> {
    pub fn new(h: &'a Hypothesis, bk: &'a BackgroundKnowledge, limits: EvalLimits) -> Prover<'a> {
        let mut clauses_by_head: HashMap<PredSym, Vec<&Clause>> = HashMap::new();
        for c in h.clauses() {
            clauses_by_head.entry(c.head.pred.clone()).or_default().push(c);
        }
        let mut facts_by_pred: HashMap<PredSym, Vec<&GroundAtom>> = HashMap::new();
        let mut facts_by_first: HashMap<(PredSym, Value), Vec<&GroundAtom>> = HashMap::new();
        for f in &bk.facts {
            facts_by_pred.entry(f.pred.clone()).or_default().push(f);
            if let Some(first) = f.args.first() {
                facts_by_first
                    .entry((f.pred.clone(), first.clone()))
                    .or_default()
                    .push(f);
            }
        }
        let mut enabled_builtins = HashMap::new();
        for p in &bk.builtins {
            if let Some(b) = builtin_for(p) {
                enabled_builtins.insert(p.clone(), b);
            }
        }
        Prover {
            clauses_by_head,
            facts_by_pred,
            facts_by_first,
            enabled_builtins,
            limits,
        }
    }

    /// Test one ground example. Resource exhaustion counts as false.
    pub fn entails(&self, e: &GroundAtom) -> bool {
        let mut search = Search {
            prover: self,
            bindings: HashMap::new(),
            trail: Vec::new(),
            next_var: 0,
            steps: 0,
            deadline: Instant::now() + self.limits.per_example_timeout,
            exhausted: false,
            memo_true: HashSet::new(),
            in_progress: HashSet::new(),
        };
        let goal = Atom::new(
            e.pred.clone(),
            e.args.iter().map(|v| Term::Const(v.clone())).collect(),
        );
        search.solve(&[goal], 0)
    }
}

impl<'p, 'a> Search<'p, 'a> {
    fn walk<'t>(&'t self, t: &'t Term) -> &'t Term {
        let mut cur = t;
        while let Term::Var(v) = cur {
            match self.bindings.get(v) {
                Some(next) => cur = next,
                None => break,
            }
        }
        cur
    }

    fn bind(&mut self, v: u32, t: Term) {
        self.bindings.insert(v, t);
        self.trail.push(v);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            self.bindings.remove(&v);
        }
    }

    fn unify(&mut self, a: &Term, b: &Term) -> bool {
        let wa = self.walk(a).clone();
        let wb = self.walk(b).clone();
        match (wa, wb) {
            (Term::Const(x), Term::Const(y)) => x == y,
            (Term::Var(x), Term::Var(y)) if x == y => true,
            (Term::Var(x), other) => {
                self.bind(x, other);
                true
            }
            (other, Term::Var(y)) => {
                self.bind(y, other);
                true
            }
        }
    }

    fn readiness(&self, goal: &Atom) -> Readiness {
        if self.prover.clauses_by_head.contains_key(&goal.pred) {
            let ground = goal
                .args
                .iter()
                .all(|t| matches!(self.walk(t), Term::Const(_)));
            return if ground {
                Readiness::Ready
            } else {
                Readiness::DelayedUser
            };
        }
        if let Some(b) = self.prover.enabled_builtins.get(&goal.pred) {
            let satisfied = b.modes.iter().any(|mode| {
                mode.iter().zip(goal.args.iter()).all(|(&needs_bound, t)| {
                    !needs_bound || matches!(self.walk(t), Term::Const(_))
                })
            });
            return if satisfied {
                Readiness::Ready
            } else {
                Readiness::DelayedBuiltin
            };
        }
        // Fact predicates (and predicates with no definition at all, which
        // simply fail) enumerate finitely whatever is bound.
        Readiness::Ready
    }

    fn out_of_budget(&mut self) -> bool {
        if self.exhausted {
            return true;
        }
        self.steps += 1;
        if self.steps > self.prover.limits.max_steps
            || (self.steps.is_multiple_of(64) && Instant::now() > self.deadline)
        {
            self.exhausted = true;
        }
        self.exhausted
    }

    fn solve(&mut self, goals: &[Atom], depth: usize) -> bool {
        if goals.is_empty() {
            return true;
        }
        if self.out_of_budget() {
            return false;
        }

        // Pick the leftmost ready goal; failing that, force the leftmost
        // hypothesis-defined goal; failing that, the branch flounders.
        let mut pick = None;
        let mut fallback = None;
        for (i, g) in goals.iter().enumerate() {
            match self.readiness(g) {
                Readiness::Ready => {
                    pick = Some(i);
                    break;
                }
                Readiness::DelayedUser => {
                    if fallback.is_none() {
                        fallback = Some(i);
                    }
                }
                Readiness::DelayedBuiltin => {}
            }
        }
        let Some(idx) = pick.or(fallback) else {
            return false;
        };

        let goal = goals[idx].clone();
        let rest: Vec<Atom> = goals
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, g)| g.clone())
            .collect();

        if self.prover.clauses_by_head.contains_key(&goal.pred) {
            self.solve_user(&goal, &rest, depth)
        } else if let Some(b) = self.prover.enabled_builtins.get(&goal.pred) {
            self.solve_tuples(b, &goal, &rest, depth)
        } else {
            self.solve_facts(&goal, &rest, depth)
        }
    }

    fn solve_tuples(
        &mut self,
        b: &'static Builtin,
        goal: &Atom,
        rest: &[Atom],
        depth: usize,
    ) -> bool {
        let walked: Vec<Option<Value>> = goal
            .args
            .iter()
            .map(|t| match self.walk(t) {
                Term::Const(v) => Some(v.clone()),
                Term::Var(_) => None,
            })
            .collect();
        let borrowed: Vec<Option<&Value>> = walked.iter().map(|o| o.as_ref()).collect();
        for tuple in (b.enumerate)(&borrowed) {
            let mark = self.trail.len();
            let ok = tuple
                .iter()
                .zip(goal.args.iter())
                .all(|(v, t)| self.unify(&Term::Const(v.clone()), t));
            if ok && self.solve(rest, depth) {
                return true;
            }
            self.undo_to(mark);
            if self.exhausted {
                return false;
            }
        }
        false
    }

    fn solve_facts(&mut self, goal: &Atom, rest: &[Atom], depth: usize) -> bool {
        let first = goal.args.first().map(|t| self.walk(t).clone());
        let facts: &Vec<&GroundAtom> = match first {
            Some(Term::Const(v)) => {
                let Some(facts) = self.prover.facts_by_first.get(&(goal.pred.clone(), v)) else {
                    return false;
                };
                facts
            }
            _ => {
                let Some(facts) = self.prover.facts_by_pred.get(&goal.pred) else {
                    return false;
                };
                facts
            }
        };
        for fact in facts {
            let mark = self.trail.len();
            let ok = fact
                .args
                .iter()
                .zip(goal.args.iter())
                .all(|(v, t)| self.unify(&Term::Const(v.clone()), t));
            if ok && self.solve(rest, depth) {
                return true;
            }
            self.undo_to(mark);
            if self.exhausted {
                return false;
            }
        }
        false
    }

    fn solve_user(&mut self, goal: &Atom, rest: &[Atom], depth: usize) -> bool {
        if depth >= self.prover.limits.max_depth {
            return false;
        }
        let ground_goal: Option<GroundAtom> = {
            let vals: Option<Vec<Value>> = goal
                .args
                .iter()
                .map(|t| match self.walk(t) {
                    Term::Const(v) => Some(v.clone()),
                    Term::Var(_) => None,
                })
                .collect();
            vals.map(|v| GroundAtom::new(goal.pred.clone(), v))
        };

        if let Some(ga) = &ground_goal {
            if self.memo_true.contains(ga) {
                return self.solve(rest, depth);
            }
            if self.in_progress.contains(ga) {
                // A proof of this goal is already underway above us; a
                // cyclic subproof can never add anything a finite proof
                // needs, so fail this branch.
                return false;
            }
            self.in_progress.insert(ga.clone());
            // Ground calls are decision problems: prove once, memoize,
            // then carry on with the remaining goals. No bindings escape,
            // so there is nothing to backtrack into.
            let proven = self.prove_ground(goal, depth);
            self.in_progress.remove(ground_goal.as_ref().unwrap());
            if proven {
                self.memo_true.insert(ground_goal.unwrap());
                return self.solve(rest, depth);
            }
            return false;
        }

        // Non-ground call (force-selected or carrying output variables):
        // resolve against facts for the predicate, then clauses, letting
        // bindings flow into the remaining goals.
        if self.prover.facts_by_pred.contains_key(&goal.pred)
            && self.solve_facts(goal, rest, depth)
        {
            return true;
        }
        let clauses = self.prover.clauses_by_head[&goal.pred].clone();
        for clause in clauses {
            let mark = self.trail.len();
            let (head, mut body) = self.rename_clause(clause);
            let ok = head
                .args
                .iter()
                .zip(goal.args.iter())
                .all(|(h, g)| self.unify(h, g));
            if ok {
                body.extend(rest.iter().cloned());
                if self.solve(&body, depth + 1) {
                    return true;
                }
            }
            self.undo_to(mark);
            if self.exhausted {
                return false;
            }
        }
        false
    }

    fn prove_ground(&mut self, goal: &Atom, depth: usize) -> bool {
        if self.prover.facts_by_pred.contains_key(&goal.pred) && self.solve_facts(goal, &[], depth)
        {
            return true;
        }
        let clauses = self.prover.clauses_by_head[&goal.pred].clone();
        for clause in clauses {
            let mark = self.trail.len();
            let (head, body) = self.rename_clause(clause);
            let ok = head
                .args
                .iter()
                .zip(goal.args.iter())
                .all(|(h, g)| self.unify(h, g));
            if ok && self.solve(&body, depth + 1) {
                self.undo_to(mark);
                return true;
            }
            self.undo_to(mark);
            if self.exhausted {
                return false;
            }
        }
        false
    }

    fn rename_clause(&mut self, clause: &Clause) -> (Atom, Vec<Atom>) {
        let mut mapping: HashMap<u32, u32> = HashMap::new();
        let mut rename_atom = |a: &Atom, next: &mut u32| {
            Atom::new(
                a.pred.clone(),
                a.args
                    .iter()
                    .map(|t| match t {
                        Term::Var(v) => Term::Var(*mapping.entry(*v).or_insert_with(|| {
                            let fresh = *next;
                            *next += 1;
                            fresh
                        })),
                        c => c.clone(),
                    })
                    .collect(),
            )
        };
        let head = rename_atom(&clause.head, &mut self.next_var);
        let body = clause
            .body
            .iter()
            .map(|a| rename_atom(a, &mut self.next_var))
            .collect();
        (head, body)
    }
}

// ── Public operations ────────────────────────────────────────────────────

/// One-shot entailment test.
pub fn entails(h: &Hypothesis, bk: &BackgroundKnowledge, e: &GroundAtom, lim: EvalLimits) -> bool {
    Prover::new(h, bk, lim).entails(e)
}

/// Test a hypothesis against every example and tally the outcome.
pub fn count_outcomes(
    h: &Hypothesis,
    bk: &BackgroundKnowledge,
    ex: &ExampleSet,
    lim: EvalLimits,
) -> Outcome {
    let prover = Prover::new(h, bk, lim);
    let tp = ex.pos.iter().filter(|e| prover.entails(e)).count();
    let tn = ex.neg.iter().filter(|e| !prover.entails(e)).count();
    Outcome::new(tp, tn, ex.pos.len(), ex.neg.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_bk, parse_examples, parse_hypothesis};

    fn lim() -> EvalLimits {
        EvalLimits::default()
    }

    #[test]
    fn flat_clause_entails_through_facts() {
        let h = parse_hypothesis("eastbound(A) :- has_car(A,B),two_wheels(B).").unwrap();
        let bk = parse_bk("has_car(train1,car1). two_wheels(car1).").unwrap();
        let e = parse_examples("pos(eastbound(train1)).").unwrap();
        assert!(entails(&h, &bk, &e.pos[0], lim()));
    }

    // The first goal runs with its first argument unbound (index
    // fallback path); the second runs bound (bucket path). Both must see
    // the same relation.
    #[test]
    fn fact_lookup_agrees_between_index_paths() {
        let h = parse_hypothesis("p(A) :- link(B,A),link(B,C),mark(C).").unwrap();
        let bk = parse_bk("link(n1,n2). link(n1,n3). link(n4,n5). mark(n3).").unwrap();
        let e = parse_examples("pos(p(n2)). neg(p(n5)).").unwrap();
        assert!(entails(&h, &bk, &e.pos[0], lim()));
        assert!(!entails(&h, &bk, &e.neg[0], lim()));
    }

    #[test]
    fn missing_fact_blocks_entailment() {
        let h =
            parse_hypothesis("eastbound(A) :- has_car(A,B),two_wheels(B),roof_closed(B).").unwrap();
        let bk = parse_bk("has_car(train2,car2). two_wheels(car2).").unwrap();
        let e = parse_examples("pos(eastbound(train2)).").unwrap();
        assert!(!entails(&h, &bk, &e.pos[0], lim()));
    }

    #[test]
    fn recursive_member_runs_on_builtins() {
        let h = parse_hypothesis("member(A,B) :- head(A,B).\nmember(A,B) :- tail(A,C),member(C,B).")
            .unwrap();
        let bk = parse_bk("builtin(head,2). builtin(tail,2).").unwrap();
        let ex = parse_examples("pos(member([1,2,3],3)). neg(member([1,2,3],4)).").unwrap();
        assert!(entails(&h, &bk, &ex.pos[0], lim()));
        assert!(!entails(&h, &bk, &ex.neg[0], lim()));
    }

    #[test]
    fn count_outcomes_tallies_all_examples() {
        let h = parse_hypothesis("eastbound(A) :- has_car(A,B),short(B).").unwrap();
        let bk = parse_bk("has_car(t1,c1). short(c1). has_car(t2,c2). has_car(t3,c3). short(c3).")
            .unwrap();
        let ex =
            parse_examples("pos(eastbound(t1)). pos(eastbound(t2)). neg(eastbound(t3)).").unwrap();
        let o = count_outcomes(&h, &bk, &ex, lim());
        assert_eq!((o.tp, o.tn, o.fp, o.fn_), (1, 0, 1, 1));
    }

    #[test]
    fn delayed_builtin_binds_output_from_the_right() {
        // Canonical body order puts len's recursive call before the
        // increment that produces its second argument; the increment's
        // inverted mode binds it first.
        let h = parse_hypothesis(
            "len(A,B) :- empty(A),zero(B).\nlen(A,B) :- increment(D,B),len(C,D),tail(A,C).",
        )
        .unwrap();
        let bk = parse_bk("builtin(empty,1). builtin(zero,1). builtin(increment,2). builtin(tail,2).")
            .unwrap();
        let ex = parse_examples("pos(len([5,7],2)). neg(len([5,7],3)). neg(len([],1)).").unwrap();
        assert!(entails(&h, &bk, &ex.pos[0], lim()));
        assert!(!entails(&h, &bk, &ex.neg[0], lim()));
        assert!(!entails(&h, &bk, &ex.neg[1], lim()));
    }

    #[test]
    fn forced_nonground_recursion_produces_outputs() {
        // The recursive droplast call must run with an unbound output so
        // cons can assemble the final list afterwards.
        let h = parse_hypothesis(
            "droplast(A,B) :- tail(A,B),empty(B).\n\
             droplast(A,B) :- tail(A,C),droplast(C,D),head(A,E),cons(E,D,B).",
        )
        .unwrap();
        let bk =
            parse_bk("builtin(tail,2). builtin(empty,1). builtin(head,2). builtin(cons,3).")
                .unwrap();
        let ex = parse_examples(
            "pos(droplast([1,2,3],[1,2])). pos(droplast([7],[])). neg(droplast([1,2,3],[1])).",
        )
        .unwrap();
        assert!(entails(&h, &bk, &ex.pos[0], lim()));
        assert!(entails(&h, &bk, &ex.pos[1], lim()));
        assert!(!entails(&h, &bk, &ex.neg[0], lim()));
    }

    #[test]
    fn evens_reference_solution() {
        let h = parse_hypothesis(
            "evens(A) :- empty(A).\nevens(A) :- head(A,B),even(B),tail(A,C),evens(C).",
        )
        .unwrap();
        let bk = parse_bk(
            "builtin(empty,1). builtin(head,2). builtin(even,1). builtin(tail,2).",
        )
        .unwrap();
        let ex = parse_examples("pos(evens([2,4,6])). pos(evens([])). neg(evens([2,3])).").unwrap();
        assert!(entails(&h, &bk, &ex.pos[0], lim()));
        assert!(entails(&h, &bk, &ex.pos[1], lim()));
        assert!(!entails(&h, &bk, &ex.neg[0], lim()));
    }

    #[test]
    fn self_recursion_fails_fast_via_loop_check() {
        let h = parse_hypothesis("p(A) :- p(A).").unwrap();
        let bk = parse_bk("").unwrap();
        let ex = parse_examples("pos(p(c)).").unwrap();
        let start = Instant::now();
        assert!(!entails(&h, &bk, &ex.pos[0], lim()));
        assert!(start.elapsed() < Duration::from_millis(50));
    }

    #[test]
    fn cyclic_facts_terminate() {
        let h = parse_hypothesis("p(A) :- q(A,B),p(B).\np(A) :- r(A).").unwrap();
        let bk = parse_bk("q(c,d). q(d,c).").unwrap();
        let ex = parse_examples("pos(p(c)).").unwrap();
        assert!(!entails(&h, &bk, &ex.pos[0], lim()));
    }

    #[test]
    fn rejected_builtin_inversion_flounders() {
        // cons cannot run backwards, so a clause needing it to decompose
        // its output fails rather than inventing bindings.
        let h = parse_hypothesis("f(A,B) :- cons(A,C,B),empty(C).").unwrap();
        let bk = parse_bk("builtin(cons,3). builtin(empty,1).").unwrap();
        let ex = parse_examples("pos(f(1,[1])).").unwrap();
        assert!(!entails(&h, &bk, &ex.pos[0], lim()));
    }

    #[test]
    fn runaway_recursion_hits_limits_and_fails() {
        // Each unfolding introduces a fresh unbound call; no loop check
        // applies, so the depth limit is what stops it.
        let h = parse_hypothesis("p(A) :- p(B),geq(B,A).").unwrap();
        let bk = parse_bk("builtin(geq,2).").unwrap();
        let ex = parse_examples("pos(p(1)).").unwrap();
        assert!(!entails(&h, &bk, &ex.pos[0], lim()));
    }

    #[test]
    fn builtin_enumeration_backtracks_over_members() {
        let h = parse_hypothesis("has_even(A) :- member(A,B),even(B).").unwrap();
        let bk = parse_bk("builtin(member,2). builtin(even,1).").unwrap();
        let ex = parse_examples("pos(has_even([1,3,4])). neg(has_even([1,3,5])).").unwrap();
        assert!(entails(&h, &bk, &ex.pos[0], lim()));
        assert!(!entails(&h, &bk, &ex.neg[0], lim()));
    }

    #[test]
    fn facts_on_head_predicate_back_up_clauses() {
        let h = parse_hypothesis("p(A) :- q(A).").unwrap();
        let bk = parse_bk("p(c).").unwrap();
        let ex = parse_examples("pos(p(c)). pos(p(d)).").unwrap();
        assert!(entails(&h, &bk, &ex.pos[0], lim()));
        assert!(!entails(&h, &bk, &ex.pos[1], lim()));
    }

    #[test]
    fn determinism_across_runs() {
        let h = parse_hypothesis(
            "sorted(A) :- empty(A).\nsorted(A) :- tail(A,B),empty(B).\n\
             sorted(A) :- head(A,B),tail(A,C),head(C,D),geq(D,B),sorted(C).",
        )
        .unwrap();
        let bk = parse_bk(
            "builtin(empty,1). builtin(head,2). builtin(tail,2). builtin(geq,2).",
        )
        .unwrap();
        let ex = parse_examples(
            "pos(sorted([1,2,3])). pos(sorted([])). pos(sorted([5])). neg(sorted([2,1])).",
        )
        .unwrap();
        for _ in 0..3 {
            let o = count_outcomes(&h, &bk, &ex, lim());
            assert_eq!((o.tp, o.tn), (3, 1));
        }
    }
}

//! Brute-force reference implementations the integration suites check
//! the engine against. Everything here trades speed for obviousness:
//! subsumption by substitution enumeration, entailment by naive
//! bottom-up iteration to a fixpoint.

#![allow(dead_code)]

use lff_core::logic::{Atom, Clause, GroundAtom, Hypothesis, PredSym, Term, Value};
use lff_core::parse::parse_hypothesis;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashSet};

pub const BODY_POOL: [(&str, usize); 4] = [("q", 1), ("r", 2), ("s", 1), ("t", 2)];
pub const CONSTS: [&str; 3] = ["a", "b", "c"];

pub fn h(text: &str) -> Hypothesis {
    parse_hypothesis(text).unwrap()
}

pub fn rand_term(rng: &mut ChaCha8Rng, max_vars: u32, allow_consts: bool) -> Term {
    if allow_consts && rng.gen_bool(0.25) {
        Term::Const(Value::sym(CONSTS[rng.gen_range(0..CONSTS.len())]))
    } else {
        Term::Var(rng.gen_range(0..max_vars))
    }
}

pub fn rand_body_atom(rng: &mut ChaCha8Rng, max_vars: u32, allow_consts: bool) -> Atom {
    let (name, arity) = BODY_POOL[rng.gen_range(0..BODY_POOL.len())];
    let args = (0..arity)
        .map(|_| rand_term(rng, max_vars, allow_consts))
        .collect();
    Atom::new(PredSym::new(name, arity), args)
}

/// A random safe clause: the body always opens with a variable so the
/// head has something to bind to.
pub fn rand_clause(
    rng: &mut ChaCha8Rng,
    head_arity: usize,
    max_vars: u32,
    max_body: usize,
) -> Clause {
    loop {
        let len = rng.gen_range(1..=max_body);
        let mut body: Vec<Atom> = (0..len)
            .map(|_| rand_body_atom(rng, max_vars, true))
            .collect();
        body[0].args[0] = Term::Var(rng.gen_range(0..max_vars));
        let vars: Vec<u32> = body
            .iter()
            .flat_map(|a| a.args.iter())
            .filter_map(|t| match t {
                Term::Var(v) => Some(*v),
                Term::Const(_) => None,
            })
            .collect();
        if vars.is_empty() {
            continue;
        }
        let head_args = (0..head_arity)
            .map(|_| Term::Var(vars[rng.gen_range(0..vars.len())]))
            .collect();
        return Clause::new(Atom::new(PredSym::new("p", head_arity), head_args), body);
    }
}

/// Build a clause the given one subsumes by construction: apply a random
/// substitution, add literals, shuffle the body.
pub fn specialize(rng: &mut ChaCha8Rng, c: &Clause, max_vars: u32) -> Clause {
    let map: Vec<Term> = (0..max_vars)
        .map(|_| rand_term(rng, max_vars, true))
        .collect();
    let theta = |a: &Atom| -> Atom {
        Atom::new(
            a.pred.clone(),
            a.args
                .iter()
                .map(|t| match t {
                    Term::Var(v) => map[*v as usize].clone(),
                    Term::Const(v) => Term::Const(v.clone()),
                })
                .collect(),
        )
    };
    let head = theta(&c.head);
    let mut body: Vec<Atom> = c.body.iter().map(theta).collect();
    for _ in 0..rng.gen_range(0..=2) {
        body.push(rand_body_atom(rng, max_vars, true));
    }
    body.shuffle(rng);
    Clause::new(head, body)
}

fn apply(atom: &Atom, theta: &dyn Fn(u32) -> Term) -> Atom {
    Atom::new(
        atom.pred.clone(),
        atom.args
            .iter()
            .map(|t| match t {
                Term::Var(v) => theta(*v),
                Term::Const(c) => Term::Const(c.clone()),
            })
            .collect(),
    )
}

/// Clause subsumption decided by enumerating every substitution from the
/// first clause's variables into the terms of the second. The second
/// clause is held fixed: its variables act as constants, which is the
/// textbook freezing construction.
pub fn brute_clause_subsumes(c1: &Clause, c2: &Clause) -> bool {
    let vars: Vec<u32> = c1.var_set().into_iter().collect();
    let mut targets: BTreeSet<Term> = BTreeSet::new();
    for atom in std::iter::once(&c2.head).chain(c2.body.iter()) {
        targets.extend(atom.args.iter().cloned());
    }
    let targets: Vec<Term> = targets.into_iter().collect();
    if vars.is_empty() {
        return check_map(c1, c2, &[], &[]);
    }
    if targets.is_empty() {
        return false;
    }
    let mut pick = vec![0usize; vars.len()];
    loop {
        let image: Vec<Term> = pick.iter().map(|&i| targets[i].clone()).collect();
        if check_map(c1, c2, &vars, &image) {
            return true;
        }
        let mut i = 0;
        loop {
            pick[i] += 1;
            if pick[i] < targets.len() {
                break;
            }
            pick[i] = 0;
            i += 1;
            if i == vars.len() {
                return false;
            }
        }
    }
}

fn check_map(c1: &Clause, c2: &Clause, vars: &[u32], image: &[Term]) -> bool {
    let theta = |v: u32| -> Term {
        match vars.iter().position(|&x| x == v) {
            Some(i) => image[i].clone(),
            None => Term::Var(v),
        }
    };
    if apply(&c1.head, &theta) != c2.head {
        return false;
    }
    let body2: HashSet<&Atom> = c2.body.iter().collect();
    c1.body.iter().all(|a| body2.contains(&apply(a, &theta)))
}

/// Theory subsumption on top of the brute clause check.
pub fn brute_theory_subsumes(t1: &Hypothesis, t2: &Hypothesis) -> bool {
    t2.clauses()
        .iter()
        .all(|c2| t1.clauses().iter().any(|c1| brute_clause_subsumes(c1, c2)))
}

/// Least-model entailment for pure Datalog: ground every clause over the
/// constants in sight and iterate to a fixpoint. No builtins, no limits;
/// the model is exact.
pub fn brute_entails(h: &Hypothesis, facts: &[GroundAtom], goal: &GroundAtom) -> bool {
    let mut consts: BTreeSet<Value> = BTreeSet::new();
    for f in facts {
        consts.extend(f.args.iter().cloned());
    }
    consts.extend(goal.args.iter().cloned());
    for c in h.clauses() {
        for atom in std::iter::once(&c.head).chain(c.body.iter()) {
            for t in &atom.args {
                if let Term::Const(v) = t {
                    consts.insert(v.clone());
                }
            }
        }
    }
    let consts: Vec<Value> = consts.into_iter().collect();

    let mut model: HashSet<GroundAtom> = facts.iter().cloned().collect();
    loop {
        let mut grew = false;
        for c in h.clauses() {
            let vars: Vec<u32> = c.var_set().into_iter().collect();
            if !vars.is_empty() && consts.is_empty() {
                continue;
            }
            each_assignment(&vars, &consts, &mut |bind| {
                let ground = |atom: &Atom| -> GroundAtom {
                    GroundAtom::new(
                        atom.pred.clone(),
                        atom.args
                            .iter()
                            .map(|t| match t {
                                Term::Var(v) => {
                                    let i = vars.iter().position(|x| x == v).unwrap();
                                    bind[i].clone()
                                }
                                Term::Const(v) => v.clone(),
                            })
                            .collect(),
                    )
                };
                if c.body.iter().all(|a| model.contains(&ground(a))) && model.insert(ground(&c.head))
                {
                    grew = true;
                }
            });
        }
        if !grew {
            return model.contains(goal);
        }
    }
}

fn each_assignment(vars: &[u32], consts: &[Value], f: &mut dyn FnMut(&[Value])) {
    if vars.is_empty() {
        f(&[]);
        return;
    }
    let mut pick = vec![0usize; vars.len()];
    loop {
        let bind: Vec<Value> = pick.iter().map(|&i| consts[i].clone()).collect();
        f(&bind);
        let mut i = 0;
        loop {
            pick[i] += 1;
            if pick[i] < consts.len() {
                break;
            }
            pick[i] = 0;
            i += 1;
            if i == vars.len() {
                return;
            }
        }
    }
}

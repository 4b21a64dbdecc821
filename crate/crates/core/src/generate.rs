//! Candidate program enumeration in order of increasing size.
//!
//! The generator walks total body-literal counts 1, 2, 3, ... For each
//! count it materializes every declaration-consistent program of exactly
//! that size once (up to renaming and reordering), sorts them by
//! canonical key for a deterministic within-size order, and then hands
//! them out one at a time, skipping any program the constraint store has
//! since ruled out. Skipping at hand-out time matters: constraints
//! learned from earlier candidates of the same size must veto later ones,
//! and a vetoed program is gone for good because stores only grow.
//!
//! Clause enumeration works over atom sets in a fixed sorted order with
//! variables introduced in first-unused order, so each clause shape is
//! built essentially once; canonical-key deduplication removes the few
//! stragglers. Programs combine clauses by partitioning the size budget,
//! then drop structurally useless ones: recursive programs without a base
//! case and programs where one clause subsumes another.

use crate::constraint::ConstraintStore;
use crate::logic::{Atom, Clause, Hypothesis, PredSym, Term};
use crate::parse::{DeclarationBias, Direction, SearchBounds};
use crate::subsume::clause_subsumes;
use std::collections::{HashMap, HashSet};
use std::sync::Arc;

/// A source of candidate programs for the search loop. Implementations
/// must yield sizes non-decreasingly and never repeat a program.
pub trait CandidateSource {
    /// Next store-permitted candidate, or None when the space is
    /// exhausted.
    fn next_candidate(&mut self, store: &ConstraintStore) -> Option<Hypothesis>;
}

/// Enumerates the hypothesis space induced by a declaration bias.
pub struct BiasGenerator {
    bias: DeclarationBias,
    bounds: SearchBounds,
    current_size: usize,
    queue: Vec<Hypothesis>,
    queue_pos: usize,
    clause_classes: HashMap<usize, Arc<Vec<Clause>>>,
    emitted: HashSet<String>,
}

impl BiasGenerator {
    pub fn new(bias: DeclarationBias, bounds: SearchBounds) -> BiasGenerator {
        let mut gen = BiasGenerator {
            bias,
            bounds,
            current_size: 1,
            queue: Vec::new(),
            queue_pos: 0,
            clause_classes: HashMap::new(),
            emitted: HashSet::new(),
        };
        gen.queue = gen.programs_of_size(1);
        gen
    }

    /// Total sizes never exceed this, whatever the partition shape.
    fn max_size(&self) -> usize {
        self.bounds
            .max_total_literals
            .min(self.bounds.max_clauses * self.bounds.max_body_literals)
    }

    /// All canonical clauses whose body has exactly `k` literals.
    fn clause_class(&mut self, k: usize) -> Arc<Vec<Clause>> {
        if let Some(c) = self.clause_classes.get(&k) {
            return Arc::clone(c);
        }
        let mut clauses: Vec<(String, Clause)> = Vec::new();
        let mut seen = HashSet::new();
        for head_pred in self.bias.head_preds.clone() {
            enumerate_clauses(&self.bias, &self.bounds, &head_pred, k, &mut |clause| {
                let (key, canon) = clause.canonicalized();
                if seen.insert(key.clone()) {
                    clauses.push((key, canon));
                }
            });
        }
        clauses.sort_by(|a, b| a.0.cmp(&b.0));
        let class = Arc::new(clauses.into_iter().map(|(_, c)| c).collect::<Vec<_>>());
        self.clause_classes.insert(k, Arc::clone(&class));
        class
    }

    /// Materialize all structurally valid programs of exactly `n` total
    /// body literals, sorted by canonical key.
    fn programs_of_size(&mut self, n: usize) -> Vec<Hypothesis> {
        let mut out: Vec<Hypothesis> = Vec::new();
        for partition in partitions(n, self.bounds.max_clauses, self.bounds.max_body_literals) {
            // partition is a non-increasing list of clause body sizes.
            let classes: Vec<Arc<Vec<Clause>>> =
                partition.iter().map(|&k| self.clause_class(k)).collect();
            let mut picks: Vec<usize> = vec![0; partition.len()];
            compose(&partition, &classes, 0, &mut picks, &mut |clauses| {
                if !program_is_valid(clauses) {
                    return;
                }
                let h = Hypothesis::new(clauses.to_vec());
                // Composition can collapse two picks into one clause via
                // canonicalization only if they were variants, which the
                // per-class dedup already rules out; the size check guards
                // the invariant anyway.
                if h.size() == n && self.emitted.insert(h.canonical_key().to_string()) {
                    out.push(h);
                }
            });
        }
        out.sort_by(|a, b| a.canonical_key().cmp(b.canonical_key()));
        out
    }
}

impl CandidateSource for BiasGenerator {
    fn next_candidate(&mut self, store: &ConstraintStore) -> Option<Hypothesis> {
        loop {
            while self.queue_pos < self.queue.len() {
                let h = &self.queue[self.queue_pos];
                self.queue_pos += 1;
                if store.permits(h) {
                    return Some(h.clone());
                }
            }
            if self.current_size >= self.max_size() {
                return None;
            }
            self.current_size += 1;
            self.queue = self.programs_of_size(self.current_size);
            self.queue_pos = 0;
        }
    }
}

/// A fixed, explicitly listed hypothesis space, emitted in order of size
/// then canonical key. Used to replay searches over hand-picked spaces.
pub struct FixedSpace {
    programs: Vec<Hypothesis>,
    pos: usize,
}

impl FixedSpace {
    pub fn new(mut programs: Vec<Hypothesis>) -> FixedSpace {
        programs.sort_by(|a, b| {
            (a.size(), a.canonical_key()).cmp(&(b.size(), b.canonical_key()))
        });
        programs.dedup();
        FixedSpace { programs, pos: 0 }
    }
}

impl CandidateSource for FixedSpace {
    fn next_candidate(&mut self, store: &ConstraintStore) -> Option<Hypothesis> {
        while self.pos < self.programs.len() {
            let h = &self.programs[self.pos];
            self.pos += 1;
            if store.permits(h) {
                return Some(h.clone());
            }
        }
        None
    }
}

// ── Clause enumeration ───────────────────────────────────────────────────

/// Atoms allowed in bodies: every body predicate applied to every
/// argument tuple over the first `max_vars` variable ids, sorted.
fn body_atom_pool(bias: &DeclarationBias, max_vars: usize) -> Vec<Atom> {
    let mut pool = Vec::new();
    let mut preds: Vec<&PredSym> = bias.body_preds.iter().collect();
    preds.sort();
    for pred in preds {
        let mut tuple = vec![0u32; pred.arity];
        'tuples: loop {
            pool.push(Atom::new(
                pred.clone(),
                tuple.iter().map(|&v| Term::Var(v)).collect(),
            ));
            // Increment the tuple like an odometer; a full wrap means
            // every tuple for this predicate has been emitted.
            let mut i = pred.arity;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                tuple[i] += 1;
                if (tuple[i] as usize) < max_vars {
                    break;
                }
                tuple[i] = 0;
                if i == 0 {
                    break 'tuples;
                }
            }
            if pred.arity == 0 {
                break;
            }
        }
    }
    sorted_pool(pool)
}

fn sorted_pool(mut pool: Vec<Atom>) -> Vec<Atom> {
    pool.sort();
    pool.dedup();
    pool
}

struct ClauseSearch<'a> {
    bias: &'a DeclarationBias,
    bounds: &'a SearchBounds,
    pool: Vec<Atom>,
    head: Atom,
    head_vars: Vec<u32>,
    /// Variables bound before the body runs: the head's in-marked
    /// positions, or every head variable when no direction is declared.
    head_bound: HashSet<u32>,
}

/// Enumerate declaration-consistent clauses with head `head_pred` and
/// exactly `k` body literals, invoking `emit` for each.
fn enumerate_clauses(
    bias: &DeclarationBias,
    bounds: &SearchBounds,
    head_pred: &PredSym,
    k: usize,
    emit: &mut dyn FnMut(Clause),
) {
    if k > bounds.max_body_literals {
        return;
    }
    let head_vars: Vec<u32> = (0..head_pred.arity as u32).collect();
    let head = Atom::new(
        head_pred.clone(),
        head_vars.iter().map(|&v| Term::Var(v)).collect(),
    );
    if head_pred.arity > bounds.max_vars {
        return;
    }
    let mut head_bound: HashSet<u32> = HashSet::new();
    match bias.directions.get(head_pred) {
        Some(dirs) => {
            for (i, d) in dirs.iter().enumerate() {
                if *d == Direction::In {
                    head_bound.insert(i as u32);
                }
            }
        }
        None => head_bound.extend(head_vars.iter().copied()),
    }

    let search = ClauseSearch {
        bias,
        bounds,
        pool: body_atom_pool(bias, bounds.max_vars),
        head,
        head_vars: head_vars.clone(),
        head_bound,
    };

    let mut types: HashMap<u32, Arc<str>> = HashMap::new();
    if let Some(tys) = bias.types.get(head_pred) {
        for (i, t) in tys.iter().enumerate() {
            types.insert(i as u32, Arc::clone(t));
        }
    }

    let mut body = Vec::with_capacity(k);
    search.extend(0, k, head_pred.arity as u32, &mut types, &mut body, emit);
}

impl<'a> ClauseSearch<'a> {
    fn extend(
        &self,
        start: usize,
        remaining: usize,
        var_count: u32,
        types: &mut HashMap<u32, Arc<str>>,
        body: &mut Vec<Atom>,
        emit: &mut dyn FnMut(Clause),
    ) {
        if remaining == 0 {
            // Datalog safety: every head variable must occur in the body.
            let safe = self.head_vars.iter().all(|hv| {
                body.iter()
                    .any(|a| a.args.contains(&Term::Var(*hv)))
            });
            // A clause whose body repeats its own head is a tautology;
            // it can never extend the least model, so it only pads the
            // space.
            if safe && !body.contains(&self.head) && self.dataflow_ok(body) {
                emit(Clause::new(self.head.clone(), body.clone()));
            }
            return;
        }
        for idx in start..self.pool.len() {
            let atom = &self.pool[idx];
            // First-unused variable introduction: scanning the atom's
            // arguments, each previously unseen variable id must be the
            // next counter value. Violations cannot be repaired by later
            // atoms, so the whole extension is skipped.
            let mut vc = var_count;
            let mut intro_ok = true;
            let mut seen_here: Vec<u32> = Vec::new();
            for t in &atom.args {
                if let Term::Var(v) = t {
                    let known = *v < var_count || seen_here.contains(v);
                    if !known {
                        if *v != vc {
                            intro_ok = false;
                            break;
                        }
                        seen_here.push(*v);
                        vc += 1;
                    }
                }
            }
            if !intro_ok || vc as usize > self.bounds.max_vars {
                continue;
            }
            let mut added_types: Vec<u32> = Vec::new();
            if !self.types_ok(atom, types, &mut added_types) {
                for v in added_types {
                    types.remove(&v);
                }
                continue;
            }

            body.push(atom.clone());
            self.extend(idx + 1, remaining - 1, vc, types, body, emit);
            body.pop();

            for v in added_types {
                types.remove(&v);
            }
        }
    }

    /// Directed dataflow: some ordering of the body must bind every
    /// in-marked argument before its atom runs, starting from the head's
    /// in-marked variables. The body is stored in canonical order, not
    /// execution order, so the check saturates greedily: placing a ready
    /// atom only ever grows the bound set, hence greedy placement finds
    /// an ordering exactly when one exists. The evaluator's goal
    /// delaying reconstructs such an order at proof time.
    fn dataflow_ok(&self, body: &[Atom]) -> bool {
        let mut bound = self.head_bound.clone();
        let mut placed = vec![false; body.len()];
        let mut remaining = body.len();
        loop {
            let mut progress = false;
            for (i, atom) in body.iter().enumerate() {
                if placed[i] || !self.atom_ready(atom, &bound) {
                    continue;
                }
                placed[i] = true;
                remaining -= 1;
                progress = true;
                for t in &atom.args {
                    if let Term::Var(v) = t {
                        bound.insert(*v);
                    }
                }
            }
            if remaining == 0 {
                return true;
            }
            if !progress {
                return false;
            }
        }
    }

    /// An atom is ready when its in-marked arguments are bound.
    fn atom_ready(&self, atom: &Atom, bound: &HashSet<u32>) -> bool {
        let Some(dirs) = self.bias.directions.get(&atom.pred) else {
            return true;
        };
        dirs.iter().zip(atom.args.iter()).all(|(d, t)| match t {
            Term::Var(v) => *d != Direction::In || bound.contains(v),
            Term::Const(_) => true,
        })
    }

    /// Arguments of typed predicates must give every variable a single
    /// consistent type. Newly assigned variables are recorded so the
    /// caller can undo them.
    fn types_ok(
        &self,
        atom: &Atom,
        types: &mut HashMap<u32, Arc<str>>,
        added: &mut Vec<u32>,
    ) -> bool {
        let Some(tys) = self.bias.types.get(&atom.pred) else {
            return true;
        };
        for (t, ty) in atom.args.iter().zip(tys.iter()) {
            if let Term::Var(v) = t {
                match types.get(v) {
                    Some(existing) if existing != ty => return false,
                    Some(_) => {}
                    None => {
                        types.insert(*v, Arc::clone(ty));
                        added.push(*v);
                    }
                }
            }
        }
        true
    }
}

// ── Program composition ──────────────────────────────────────────────────

/// Non-increasing partitions of `n` into at most `max_parts` parts, each
/// at most `max_part`.
fn partitions(n: usize, max_parts: usize, max_part: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn recurse(
        n: usize,
        max_parts: usize,
        cap: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if n == 0 {
            out.push(current.clone());
            return;
        }
        if max_parts == 0 {
            return;
        }
        let mut part = cap.min(n);
        while part >= 1 {
            current.push(part);
            recurse(n - part, max_parts - 1, part, current, out);
            current.pop();
            part -= 1;
        }
    }
    recurse(n, max_parts, max_part, &mut current, &mut out);
    out
}

/// Walk every way of picking one clause per partition slot, with
/// index-increasing picks inside runs of equal sizes so each clause set
/// appears once.
fn compose(
    partition: &[usize],
    classes: &[Arc<Vec<Clause>>],
    slot: usize,
    picks: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[Clause]),
) {
    if slot == partition.len() {
        let clauses: Vec<Clause> = picks
            .iter()
            .enumerate()
            .map(|(i, &p)| classes[i][p].clone())
            .collect();
        emit(&clauses);
        return;
    }
    let same_size_as_prev = slot > 0 && partition[slot] == partition[slot - 1];
    let start = if same_size_as_prev { picks[slot - 1] + 1 } else { 0 };
    for p in start..classes[slot].len() {
        picks[slot] = p;
        compose(partition, classes, slot + 1, picks, emit);
    }
}

fn program_is_valid(clauses: &[Clause]) -> bool {
    // One clause subsuming another makes the subsumed clause dead weight.
    for (i, a) in clauses.iter().enumerate() {
        for (j, b) in clauses.iter().enumerate() {
            if i != j && clause_subsumes(a, b) {
                return false;
            }
        }
    }
    let h = Hypothesis::new(clauses.to_vec());
    if h.num_clauses() != clauses.len() {
        return false;
    }
    h.has_base_case()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraint::{ConstraintStore, HypothesisConstraint, MatchMode};
    use crate::parse::{parse_bias, parse_hypothesis, print_hypothesis};

    fn drain(gen: &mut dyn CandidateSource, store: &ConstraintStore) -> Vec<Hypothesis> {
        let mut out = Vec::new();
        while let Some(h) = gen.next_candidate(store) {
            out.push(h);
        }
        out
    }

    #[test]
    fn smallest_space_has_one_program() {
        let (bias, mut bounds) =
            parse_bias("head_pred(p,1). body_pred(q,1). max_vars(1). max_clauses(1). max_body(1).")
                .unwrap();
        bounds.max_total_literals = 1;
        let mut gen = BiasGenerator::new(bias, bounds);
        let store = ConstraintStore::new(MatchMode::Semantic);
        let all = drain(&mut gen, &store);
        assert_eq!(all.len(), 1);
        assert_eq!(print_hypothesis(&all[0]), "p(A) :- q(A).");
    }

    #[test]
    fn sizes_never_decrease_and_no_duplicates() {
        let (bias, bounds) = parse_bias(
            "head_pred(p,1). body_pred(q,2). body_pred(r,1). max_vars(3). max_body(2). max_clauses(2).",
        )
        .unwrap();
        let mut gen = BiasGenerator::new(bias, bounds);
        let store = ConstraintStore::new(MatchMode::Semantic);
        let all = drain(&mut gen, &store);
        assert!(!all.is_empty());
        let mut seen = HashSet::new();
        let mut last = 0;
        for h in &all {
            assert!(h.size() >= last, "size decreased");
            last = h.size();
            assert!(seen.insert(h.canonical_key().to_string()), "duplicate emitted");
        }
    }

    #[test]
    fn enumeration_matches_brute_force_on_tiny_bias() {
        // head p/1, bodies q/2 and r/1, two variables, one clause of up
        // to two literals: compare against enumerating every labeled
        // atom pair and deduplicating canonically.
        let (bias, mut bounds) = parse_bias(
            "head_pred(p,1). body_pred(q,2). body_pred(r,1). max_vars(2). max_body(2). max_clauses(1).",
        )
        .unwrap();
        bounds.max_total_literals = 2;
        let mut gen = BiasGenerator::new(bias.clone(), bounds);
        let store = ConstraintStore::new(MatchMode::Semantic);
        let emitted = drain(&mut gen, &store);

        let mut atoms = Vec::new();
        for a in 0..2u32 {
            atoms.push(Atom::vars("r", &[a]));
            for b in 0..2u32 {
                atoms.push(Atom::vars("q", &[a, b]));
            }
        }
        // Size-1 and size-2 bodies over the labeled atoms, keeping the
        // safe ones (head variable used) and canonicalizing.
        let mut brute: HashSet<String> = HashSet::new();
        for (i, a) in atoms.iter().enumerate() {
            if a.args.contains(&Term::Var(0)) {
                brute.insert(
                    Hypothesis::new(vec![Clause::new(Atom::vars("p", &[0]), vec![a.clone()])])
                        .canonical_key()
                        .to_string(),
                );
            }
            for b in atoms.iter().skip(i + 1) {
                let body = vec![a.clone(), b.clone()];
                if body.iter().any(|at| at.args.contains(&Term::Var(0))) {
                    brute.insert(
                        Hypothesis::new(vec![Clause::new(Atom::vars("p", &[0]), body)])
                            .canonical_key()
                            .to_string(),
                    );
                }
            }
        }
        let emitted_keys: HashSet<String> = emitted
            .iter()
            .map(|h| h.canonical_key().to_string())
            .collect();
        assert_eq!(emitted_keys, brute);
        // Bodies mixing both predicates must be present.
        assert!(emitted
            .iter()
            .any(|h| print_hypothesis(h) == "p(A) :- q(A,B),r(B)."));
    }

    #[test]
    fn store_vetoes_apply_at_handout_time() {
        let (bias, mut bounds) =
            parse_bias("head_pred(p,1). body_pred(q,1). body_pred(r,1). max_vars(1). max_body(2). max_clauses(1).")
                .unwrap();
        bounds.max_total_literals = 2;
        let mut gen = BiasGenerator::new(bias, bounds);
        let mut store = ConstraintStore::new(MatchMode::Semantic);

        let first = gen.next_candidate(&store).unwrap();
        // Pruning all specializations of the first program removes every
        // superset body that remains.
        store.add(HypothesisConstraint::specialization(first.clone(), false, None));
        let rest = drain(&mut gen, &store);
        for h in &rest {
            assert!(
                !crate::subsume::is_specialization_of(h, &first),
                "emitted pruned program {}",
                print_hypothesis(h)
            );
        }
    }

    #[test]
    fn tautological_clauses_are_excluded() {
        let (bias, bounds) = parse_bias(
            "head_pred(p,1). body_pred(p,1). body_pred(q,1). max_vars(2). max_body(2). max_clauses(2).",
        )
        .unwrap();
        let mut gen = BiasGenerator::new(bias, bounds);
        let store = ConstraintStore::new(MatchMode::Semantic);
        for h in drain(&mut gen, &store) {
            for c in h.clauses() {
                assert!(
                    !c.body.contains(&c.head),
                    "tautological clause in {}",
                    print_hypothesis(&h)
                );
            }
        }
    }

    #[test]
    fn recursive_programs_require_base_case() {
        let (bias, bounds) = parse_bias(
            "head_pred(p,1). body_pred(p,1). body_pred(q,1). max_vars(2). max_body(2). max_clauses(2).",
        )
        .unwrap();
        let mut gen = BiasGenerator::new(bias, bounds);
        let store = ConstraintStore::new(MatchMode::Semantic);
        for h in drain(&mut gen, &store) {
            assert!(h.has_base_case(), "no base case: {}", print_hypothesis(&h));
        }
    }

    #[test]
    fn no_emitted_program_has_internally_subsumed_clauses() {
        let (bias, bounds) = parse_bias(
            "head_pred(p,1). body_pred(q,2). max_vars(3). max_body(2). max_clauses(2).",
        )
        .unwrap();
        let mut gen = BiasGenerator::new(bias, bounds);
        let store = ConstraintStore::new(MatchMode::Semantic);
        for h in drain(&mut gen, &store) {
            let cs = h.clauses();
            for i in 0..cs.len() {
                for j in 0..cs.len() {
                    if i != j {
                        assert!(!clause_subsumes(&cs[i], &cs[j]));
                    }
                }
            }
        }
    }

    #[test]
    fn directions_restrict_dataflow() {
        // q consumes its first argument, so every body must chain from
        // the head variable under some execution order.
        let (bias, bounds) = parse_bias(
            "head_pred(p,1). body_pred(q,2). max_vars(3). max_body(2). max_clauses(1).\n\
             direction(q,(in,out)).",
        )
        .unwrap();
        let mut gen = BiasGenerator::new(bias, bounds);
        let store = ConstraintStore::new(MatchMode::Semantic);
        let all = drain(&mut gen, &store);
        assert!(!all.is_empty());
        for h in &all {
            let c = &h.clauses()[0];
            // Greedy saturation from the head variable must place every
            // atom.
            let mut bound: HashSet<u32> = vec![0].into_iter().collect();
            let mut placed = vec![false; c.body.len()];
            loop {
                let mut progress = false;
                for (i, atom) in c.body.iter().enumerate() {
                    let ready = match atom.args[0] {
                        Term::Var(v) => bound.contains(&v),
                        Term::Const(_) => true,
                    };
                    if placed[i] || !ready {
                        continue;
                    }
                    placed[i] = true;
                    progress = true;
                    for t in &atom.args {
                        if let Term::Var(v) = t {
                            bound.insert(*v);
                        }
                    }
                }
                if placed.iter().all(|&p| p) {
                    break;
                }
                assert!(progress, "unbound input in {}", print_hypothesis(h));
            }
        }
    }

    #[test]
    fn dataflow_accepts_any_valid_execution_order() {
        // In canonical body order the consumer sorts before its
        // producer; the clause is still valid because an execution
        // order exists.
        let (bias, bounds) = parse_bias(
            "head_pred(p,1). body_pred(check,1). body_pred(make,2).\n\
             direction(p,(in)). direction(check,(in)). direction(make,(in,out)).\n\
             max_vars(2). max_body(2). max_clauses(1).",
        )
        .unwrap();
        let mut gen = BiasGenerator::new(bias, bounds);
        let store = ConstraintStore::new(MatchMode::Semantic);
        let all: Vec<String> = drain(&mut gen, &store)
            .iter()
            .map(print_hypothesis)
            .collect();
        assert!(
            all.iter().any(|t| t == "p(A) :- check(B),make(A,B)."),
            "chained clause missing from {all:?}"
        );
        // A consumer with no producer anywhere stays excluded.
        assert!(!all.iter().any(|t| t.contains("check(B)") && !t.contains("make")));
    }

    #[test]
    fn types_must_be_consistent() {
        let (bias, bounds) = parse_bias(
            "head_pred(p,1). body_pred(q,2). body_pred(r,1). max_vars(2). max_body(2). max_clauses(1).\n\
             type(p,(car)). type(q,(car,load)). type(r,(load)).",
        )
        .unwrap();
        let mut gen = BiasGenerator::new(bias, bounds);
        let store = ConstraintStore::new(MatchMode::Semantic);
        for h in drain(&mut gen, &store) {
            // r can only ever apply to q's second argument, never to the
            // head variable.
            let text = print_hypothesis(&h);
            assert!(!text.contains("r(A)"), "type clash in {text}");
        }
    }

    #[test]
    fn fixed_space_orders_by_size_then_key() {
        let h_small = parse_hypothesis("p(A) :- q(A,B).").unwrap();
        let h_big = parse_hypothesis("p(A) :- q(A,B),q(B,C).").unwrap();
        let h_mid = parse_hypothesis("p(A) :- r(A).").unwrap();
        let mut space = FixedSpace::new(vec![h_big.clone(), h_small.clone(), h_mid.clone()]);
        let store = ConstraintStore::new(MatchMode::Semantic);
        let order = drain(&mut space, &store);
        assert_eq!(order[0], h_small); // size 1, "q" before "r"
        assert_eq!(order[1], h_mid);
        assert_eq!(order[2], h_big);
    }
}

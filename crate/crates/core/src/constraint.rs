//! Hypothesis constraints: the pruning predicates learned from tested
//! programs, and the store that applies them to candidates.
//!
//! Four kinds exist. A banish constraint removes exactly one program. A
//! generalization constraint removes every generalization of its anchor,
//! a specialization constraint every specialization, and an elimination
//! constraint every separable program containing a specialization of each
//! anchor clause. Generalization and specialization constraints can carry
//! two qualifiers: `non_recursive_only` restricts them to non-recursive
//! candidates, and `size_floor` restricts them to candidates strictly
//! larger than the floor. Those qualifiers are what make the relaxed
//! search sound: an unqualified constraint says "never", a qualified one
//! says "not unless small or recursive".
//!
//! Matching is semantic by default (full theta-subsumption). The
//! syntactic mode instead requires exact clause copies for generalization
//! and an injective clausewise mapping for specialization, mirroring how
//! the constraints behave when compiled to ASP rules over clause
//! identities; it prunes less.

use crate::logic::Hypothesis;
use crate::subsume::{
    clause_subsumes, is_generalization_of, is_specialization_of, is_superset_modulo_renaming,
};
use std::collections::{HashMap, HashSet};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstraintKind {
    Banish,
    Generalization,
    Specialization,
    Elimination,
}

impl fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ConstraintKind::Banish => "banish",
            ConstraintKind::Generalization => "generalization",
            ConstraintKind::Specialization => "specialization",
            ConstraintKind::Elimination => "elimination",
        };
        write!(f, "{name}")
    }
}

/// How generalization/specialization anchors match candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatchMode {
    /// Full theta-subsumption; prunes everything provably redundant.
    #[default]
    Semantic,
    /// Clause-identity matching: generalizations must contain the anchor's
    /// clauses verbatim (up to renaming), specializations must map anchor
    /// clauses injectively onto subsumed candidate clauses.
    Syntactic,
}

/// One pruning predicate anchored at a tested hypothesis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisConstraint {
    pub kind: ConstraintKind,
    pub anchor: Hypothesis,
    pub non_recursive_only: bool,
    /// Applies only to candidates with size strictly greater than this.
    pub size_floor: Option<usize>,
}

impl HypothesisConstraint {
    pub fn new(
        kind: ConstraintKind,
        anchor: Hypothesis,
        non_recursive_only: bool,
        size_floor: Option<usize>,
    ) -> HypothesisConstraint {
        // Banish matches one exact program and elimination matches by
        // clause containment; qualifiers are meaningless there and are
        // normalized away so deduplication sees through them.
        let (non_recursive_only, size_floor) = match kind {
            ConstraintKind::Banish => (false, None),
            ConstraintKind::Elimination => (non_recursive_only, None),
            _ => (non_recursive_only, size_floor),
        };
        HypothesisConstraint {
            kind,
            anchor,
            non_recursive_only,
            size_floor,
        }
    }

    pub fn banish(anchor: Hypothesis) -> HypothesisConstraint {
        HypothesisConstraint::new(ConstraintKind::Banish, anchor, false, None)
    }

    pub fn generalization(
        anchor: Hypothesis,
        non_rec: bool,
        floor: Option<usize>,
    ) -> HypothesisConstraint {
        HypothesisConstraint::new(ConstraintKind::Generalization, anchor, non_rec, floor)
    }

    pub fn specialization(
        anchor: Hypothesis,
        non_rec: bool,
        floor: Option<usize>,
    ) -> HypothesisConstraint {
        HypothesisConstraint::new(ConstraintKind::Specialization, anchor, non_rec, floor)
    }

    pub fn elimination(anchor: Hypothesis) -> HypothesisConstraint {
        HypothesisConstraint::new(ConstraintKind::Elimination, anchor, false, None)
    }

    fn dedup_key(&self) -> (ConstraintKind, String, bool, Option<usize>) {
        (
            self.kind,
            self.anchor.canonical_key().to_string(),
            self.non_recursive_only,
            self.size_floor,
        )
    }
}

/// Does `candidate` fall to this constraint?
pub fn violates(
    candidate: &Hypothesis,
    c: &HypothesisConstraint,
    mode: MatchMode,
) -> bool {
    match c.kind {
        ConstraintKind::Banish => candidate.canonical_key() == c.anchor.canonical_key(),
        ConstraintKind::Generalization => {
            qualifiers_allow(candidate, c) && matches_generalization(candidate, &c.anchor, mode)
        }
        ConstraintKind::Specialization => {
            qualifiers_allow(candidate, c) && matches_specialization(candidate, &c.anchor, mode)
        }
        ConstraintKind::Elimination => {
            candidate.is_separable() && anchor_clauses_covered(candidate, &c.anchor)
        }
    }
}

fn matches_generalization(candidate: &Hypothesis, anchor: &Hypothesis, mode: MatchMode) -> bool {
    match mode {
        MatchMode::Semantic => is_generalization_of(candidate, anchor),
        MatchMode::Syntactic => is_superset_modulo_renaming(candidate, anchor),
    }
}

fn matches_specialization(candidate: &Hypothesis, anchor: &Hypothesis, mode: MatchMode) -> bool {
    match mode {
        MatchMode::Semantic => is_specialization_of(candidate, anchor),
        MatchMode::Syntactic => syntactic_specialization(candidate, anchor),
    }
}

fn anchor_clauses_covered(candidate: &Hypothesis, anchor: &Hypothesis) -> bool {
    anchor.clauses().iter().all(|anchor_clause| {
        candidate
            .clauses()
            .iter()
            .any(|cand_clause| clause_subsumes(anchor_clause, cand_clause))
    })
}

fn qualifiers_allow(candidate: &Hypothesis, c: &HypothesisConstraint) -> bool {
    if c.non_recursive_only && candidate.is_recursive() {
        return false;
    }
    if let Some(floor) = c.size_floor {
        if candidate.size() <= floor {
            return false;
        }
    }
    true
}

/// Syntactic specialization matching: same clause count, with an
/// injective assignment of anchor clauses onto candidate clauses they
/// subsume.
fn syntactic_specialization(candidate: &Hypothesis, anchor: &Hypothesis) -> bool {
    let n = anchor.num_clauses();
    if candidate.num_clauses() != n {
        return false;
    }
    let mut used = vec![false; n];
    assign(anchor, candidate, 0, &mut used)
}

fn assign(anchor: &Hypothesis, candidate: &Hypothesis, i: usize, used: &mut [bool]) -> bool {
    if i == anchor.num_clauses() {
        return true;
    }
    for (j, cand_clause) in candidate.clauses().iter().enumerate() {
        if !used[j] && clause_subsumes(&anchor.clauses()[i], cand_clause) {
            used[j] = true;
            if assign(anchor, candidate, i + 1, used) {
                used[j] = false;
                return true;
            }
            used[j] = false;
        }
    }
    false
}

/// Constraints implied by a tested hypothesis with outcome `(tp, tn)`
/// against `n_pos` positive and `n_neg` negative examples. Non-banish
/// constraints carry the given qualifiers.
pub fn learn_constraints(
    h: &Hypothesis,
    tp: usize,
    tn: usize,
    n_pos: usize,
    n_neg: usize,
    non_rec: bool,
    size_floor: Option<usize>,
) -> Vec<HypothesisConstraint> {
    assert!(tp <= n_pos && tn <= n_neg, "outcome exceeds example counts");
    let mut out = Vec::new();
    if tp == n_pos && tn == n_neg {
        out.push(HypothesisConstraint::banish(h.clone()));
        return out;
    }
    if tp < n_pos {
        out.push(HypothesisConstraint::specialization(
            h.clone(),
            non_rec,
            size_floor,
        ));
    }
    if tn < n_neg {
        out.push(HypothesisConstraint::generalization(
            h.clone(),
            non_rec,
            size_floor,
        ));
    }
    if tp == 0 {
        out.push(HypothesisConstraint::elimination(h.clone()));
    }
    out
}

/// How far a set of same-kind constraints on one anchor reaches: nothing,
/// only candidates strictly larger than a floor, or everything. Several
/// floored constraints collapse to their smallest floor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Reach {
    Nothing,
    Above(usize),
    All,
}

impl Reach {
    fn absorb(&mut self, floor: Option<usize>) {
        *self = match (*self, floor) {
            (Reach::All, _) | (_, None) => Reach::All,
            (Reach::Nothing, Some(f)) => Reach::Above(f),
            (Reach::Above(g), Some(f)) => Reach::Above(g.min(f)),
        };
    }

    fn applies_to(self, size: usize) -> bool {
        match self {
            Reach::Nothing => false,
            Reach::Above(f) => size > f,
            Reach::All => true,
        }
    }

    fn strongest(self, other: Reach) -> Reach {
        match (self, other) {
            (Reach::All, _) | (_, Reach::All) => Reach::All,
            (Reach::Above(a), Reach::Above(b)) => Reach::Above(a.min(b)),
            (Reach::Nothing, r) | (r, Reach::Nothing) => r,
        }
    }
}

/// Aggregated view of every constraint sharing one anchor program. The
/// expensive subsumption test runs once per anchor and side instead of
/// once per stored constraint.
#[derive(Debug)]
struct AnchorState {
    hypothesis: Hypothesis,
    banish: bool,
    elimination: bool,
    gen_plain: Reach,
    gen_nonrec: Reach,
    spec_plain: Reach,
    spec_nonrec: Reach,
}

impl AnchorState {
    fn new(hypothesis: Hypothesis) -> AnchorState {
        AnchorState {
            hypothesis,
            banish: false,
            elimination: false,
            gen_plain: Reach::Nothing,
            gen_nonrec: Reach::Nothing,
            spec_plain: Reach::Nothing,
            spec_nonrec: Reach::Nothing,
        }
    }
}

/// Accumulated constraints with duplicate suppression.
#[derive(Debug, Default)]
pub struct ConstraintStore {
    constraints: Vec<HypothesisConstraint>,
    seen: HashSet<(ConstraintKind, String, bool, Option<usize>)>,
    anchors: HashMap<String, AnchorState>,
    pub mode: MatchMode,
}

impl ConstraintStore {
    pub fn new(mode: MatchMode) -> ConstraintStore {
        ConstraintStore {
            constraints: Vec::new(),
            seen: HashSet::new(),
            anchors: HashMap::new(),
            mode,
        }
    }

    /// Add one constraint; returns false when an identical one is stored.
    pub fn add(&mut self, c: HypothesisConstraint) -> bool {
        if !self.seen.insert(c.dedup_key()) {
            return false;
        }
        let state = self
            .anchors
            .entry(c.anchor.canonical_key().to_string())
            .or_insert_with(|| AnchorState::new(c.anchor.clone()));
        match c.kind {
            ConstraintKind::Banish => state.banish = true,
            ConstraintKind::Elimination => state.elimination = true,
            ConstraintKind::Generalization => {
                let side = if c.non_recursive_only {
                    &mut state.gen_nonrec
                } else {
                    &mut state.gen_plain
                };
                side.absorb(c.size_floor);
            }
            ConstraintKind::Specialization => {
                let side = if c.non_recursive_only {
                    &mut state.spec_nonrec
                } else {
                    &mut state.spec_plain
                };
                side.absorb(c.size_floor);
            }
        }
        self.constraints.push(c);
        true
    }

    /// Add many; returns how many were new.
    pub fn add_all(&mut self, cs: impl IntoIterator<Item = HypothesisConstraint>) -> usize {
        cs.into_iter().filter(|c| self.add(c.clone())).count()
    }

    /// Equivalent to `violated_by(..).is_none()` but runs on the per-anchor
    /// aggregates, so the generator can afford to call it on every
    /// candidate it considers.
    pub fn permits(&self, candidate: &Hypothesis) -> bool {
        if self.anchors.is_empty() {
            return true;
        }
        let size = candidate.size();
        let recursive = candidate.is_recursive();
        let separable = candidate.is_separable();
        for (key, state) in &self.anchors {
            if state.banish && candidate.canonical_key() == key {
                return false;
            }
            let gen_reach = if recursive {
                state.gen_plain
            } else {
                state.gen_plain.strongest(state.gen_nonrec)
            };
            if gen_reach.applies_to(size)
                && matches_generalization(candidate, &state.hypothesis, self.mode)
            {
                return false;
            }
            let spec_reach = if recursive {
                state.spec_plain
            } else {
                state.spec_plain.strongest(state.spec_nonrec)
            };
            if spec_reach.applies_to(size)
                && matches_specialization(candidate, &state.hypothesis, self.mode)
            {
                return false;
            }
            if state.elimination
                && separable
                && anchor_clauses_covered(candidate, &state.hypothesis)
            {
                return false;
            }
        }
        true
    }

    /// First stored constraint the candidate violates, if any.
    pub fn violated_by(&self, candidate: &Hypothesis) -> Option<&HypothesisConstraint> {
        self.constraints
            .iter()
            .find(|c| violates(candidate, c, self.mode))
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn constraints(&self) -> &[HypothesisConstraint] {
        &self.constraints
    }

    /// One constraint per line for debugging and traces.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for c in &self.constraints {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str(&c.kind.to_string());
            if let Some(floor) = c.size_floor {
                out.push_str(&format!(" size>{floor}"));
            }
            if c.non_recursive_only {
                out.push_str(" nonrec");
            }
            out.push_str(" :: ");
            out.push_str(c.anchor.canonical_key());
        }
        out
    }
}

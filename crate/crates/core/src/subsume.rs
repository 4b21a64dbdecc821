//! Theta-subsumption between clauses and theories.
//!
//! Clause c1 subsumes clause c2 when some substitution over c1's variables
//! maps c1's head onto c2's head and every body atom of c1 onto some body
//! atom of c2. The candidate's variables stay frozen: only the subsuming
//! clause's variables are bound. Theory subsumption lifts this clause-wise:
//! t1 subsumes t2 when every clause of t2 is subsumed by some clause of t1.
//!
//! Subsumption implies entailment, which is what makes the pruning
//! constraints safe: any program a generalization constraint removes would
//! entail at least everything its anchor entails.
//!
//! The check here is complete (full backtracking over atom assignments).
//! Deciding subsumption is NP-complete in general, but clause bodies in
//! this engine are small (single digits), so the worst case stays cheap.

use crate::logic::{Atom, Clause, Hypothesis, Term};
use std::collections::HashMap;

/// True iff `c1` theta-subsumes `c2`.
pub fn clause_subsumes(c1: &Clause, c2: &Clause) -> bool {
    let mut theta: HashMap<u32, Term> = HashMap::new();
    if !match_atom(&c1.head, &c2.head, &mut theta) {
        return false;
    }
    // Try body atoms with the fewest candidate targets first; this prunes
    // the backtracking tree sharply when predicates repeat.
    let mut order: Vec<&Atom> = c1.body.iter().collect();
    order.sort_by_key(|a| c2.body.iter().filter(|b| b.pred == a.pred).count());
    match_body(&order, 0, &c2.body, &mut theta)
}

fn match_body(goals: &[&Atom], i: usize, targets: &[Atom], theta: &mut HashMap<u32, Term>) -> bool {
    if i == goals.len() {
        return true;
    }
    for target in targets {
        if target.pred != goals[i].pred {
            continue;
        }
        let saved: Vec<u32> = theta.keys().copied().collect();
        if match_atom(goals[i], target, theta) && match_body(goals, i + 1, targets, theta) {
            return true;
        }
        theta.retain(|k, _| saved.contains(k));
    }
    false
}

/// Extend `theta` so that `a`θ equals `b`, treating `b`'s variables as
/// fixed symbols. Leaves `theta` in a partially extended state on failure;
/// the caller restores it.
fn match_atom(a: &Atom, b: &Atom, theta: &mut HashMap<u32, Term>) -> bool {
    if a.pred != b.pred {
        return false;
    }
    for (ta, tb) in a.args.iter().zip(b.args.iter()) {
        match ta {
            Term::Const(_) => {
                if ta != tb {
                    return false;
                }
            }
            Term::Var(v) => match theta.get(v) {
                Some(bound) => {
                    if bound != tb {
                        return false;
                    }
                }
                None => {
                    theta.insert(*v, tb.clone());
                }
            },
        }
    }
    true
}

/// True iff every clause of `t2` is subsumed by some clause of `t1`.
pub fn theory_subsumes(t1: &Hypothesis, t2: &Hypothesis) -> bool {
    t2.clauses()
        .iter()
        .all(|c2| t1.clauses().iter().any(|c1| clause_subsumes(c1, c2)))
}

/// `a` is a generalization of `b`: a subsumes b as a theory.
pub fn is_generalization_of(a: &Hypothesis, b: &Hypothesis) -> bool {
    theory_subsumes(a, b)
}

/// `a` is a specialization of `b`: b subsumes a as a theory.
pub fn is_specialization_of(a: &Hypothesis, b: &Hypothesis) -> bool {
    theory_subsumes(b, a)
}

/// True iff every clause of `b` appears in `a` up to variable renaming.
/// Stricter than generalization: clauses must match exactly, not merely
/// subsume.
pub fn is_superset_modulo_renaming(a: &Hypothesis, b: &Hypothesis) -> bool {
    // Hypotheses store canonicalized clauses, so variants share keys.
    let keys_a: Vec<String> = a.clauses().iter().map(|c| c.canonical_key()).collect();
    b.clauses()
        .iter()
        .all(|c| keys_a.iter().any(|k| *k == c.canonical_key()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Atom;

    fn cl(head: Atom, body: Vec<Atom>) -> Clause {
        Clause::new(head, body)
    }

    #[test]
    fn shorter_clause_subsumes_extended_clause() {
        let c1 = cl(
            Atom::vars("eastbound", &[0]),
            vec![Atom::vars("has_car", &[0, 1])],
        );
        let c2 = cl(
            Atom::vars("eastbound", &[5]),
            vec![
                Atom::vars("has_car", &[5, 6]),
                Atom::vars("two_wheels", &[6]),
            ],
        );
        assert!(clause_subsumes(&c1, &c2));
        assert!(!clause_subsumes(&c2, &c1));
    }

    #[test]
    fn subsumption_is_reflexive() {
        let c = cl(
            Atom::vars("p", &[0]),
            vec![Atom::vars("q", &[0, 1]), Atom::vars("r", &[1])],
        );
        assert!(clause_subsumes(&c, &c));
    }

    #[test]
    fn predicate_position_blocks_subsumption() {
        // eastbound(A):-short(A) cannot map onto
        // eastbound(A):-has_car(A,B),short(B): A would need to be both
        // the train and the car.
        let c1 = cl(Atom::vars("eastbound", &[0]), vec![Atom::vars("short", &[0])]);
        let c2 = cl(
            Atom::vars("eastbound", &[0]),
            vec![Atom::vars("has_car", &[0, 1]), Atom::vars("short", &[1])],
        );
        assert!(!clause_subsumes(&c1, &c2));
    }

    #[test]
    fn repeated_predicates_need_backtracking() {
        // q(A,B),q(B,C) onto q(x,y),q(y,z): the first q must pick the
        // right target or the second fails.
        let c1 = cl(
            Atom::vars("p", &[0]),
            vec![Atom::vars("q", &[0, 1]), Atom::vars("q", &[1, 2])],
        );
        let c2 = cl(
            Atom::vars("p", &[0]),
            vec![Atom::vars("q", &[1, 2]), Atom::vars("q", &[0, 1])],
        );
        assert!(clause_subsumes(&c1, &c2));
    }

    #[test]
    fn theory_subsumption_checks_every_candidate_clause() {
        let short = cl(
            Atom::vars("eastbound", &[0]),
            vec![Atom::vars("has_car", &[0, 1]), Atom::vars("short", &[1])],
        );
        let closed = cl(
            Atom::vars("eastbound", &[0]),
            vec![
                Atom::vars("has_car", &[0, 1]),
                Atom::vars("roof_closed", &[1]),
            ],
        );
        let two = Hypothesis::new(vec![short.clone(), closed.clone()]);
        let one = Hypothesis::new(vec![short.clone()]);

        // The two-clause theory subsumes the one-clause theory: its short
        // clause covers the only clause to match.
        assert!(theory_subsumes(&two, &one));
        // The reverse fails: nothing in `one` subsumes the closed clause.
        assert!(!theory_subsumes(&one, &two));

        assert!(theory_subsumes(&two, &two));
        assert!(is_generalization_of(&two, &one));
        assert!(is_specialization_of(&one, &two));
    }

    #[test]
    fn added_body_literal_is_a_specialization() {
        let base = Hypothesis::new(vec![cl(
            Atom::vars("eastbound", &[0]),
            vec![Atom::vars("has_car", &[0, 1]), Atom::vars("long", &[1])],
        )]);
        let narrowed = Hypothesis::new(vec![cl(
            Atom::vars("eastbound", &[0]),
            vec![
                Atom::vars("has_car", &[0, 1]),
                Atom::vars("long", &[1]),
                Atom::vars("two_wheels", &[1]),
            ],
        )]);
        assert!(is_specialization_of(&narrowed, &base));
        assert!(!is_generalization_of(&narrowed, &base));
        assert!(is_generalization_of(&base, &narrowed));
    }

    #[test]
    fn extra_clause_is_a_generalization() {
        let one = Hypothesis::new(vec![cl(
            Atom::vars("p", &[0]),
            vec![Atom::vars("q", &[0, 1])],
        )]);
        let two = Hypothesis::new(vec![
            cl(Atom::vars("p", &[0]), vec![Atom::vars("q", &[0, 1])]),
            cl(Atom::vars("p", &[0]), vec![Atom::vars("r", &[0])]),
        ]);
        assert!(is_generalization_of(&two, &one));
        assert!(is_superset_modulo_renaming(&two, &one));
        assert!(!is_superset_modulo_renaming(&one, &two));
    }

    #[test]
    fn superset_requires_exact_clauses_not_subsumption() {
        let base = Hypothesis::new(vec![cl(
            Atom::vars("p", &[0]),
            vec![Atom::vars("q", &[0, 1])],
        )]);
        let specialized = Hypothesis::new(vec![cl(
            Atom::vars("p", &[0]),
            vec![Atom::vars("q", &[0, 1]), Atom::vars("r", &[1])],
        )]);
        // The specialized clause is subsumed by base's clause but is not a
        // renamed copy of it.
        assert!(is_generalization_of(&base, &specialized));
        assert!(!is_superset_modulo_renaming(&specialized, &base));
    }

    #[test]
    fn superset_sees_through_renaming() {
        let a = Hypothesis::new(vec![cl(
            Atom::vars("p", &[3]),
            vec![Atom::vars("q", &[3, 8])],
        )]);
        let b = Hypothesis::new(vec![cl(
            Atom::vars("p", &[0]),
            vec![Atom::vars("q", &[0, 1])],
        )]);
        assert!(is_superset_modulo_renaming(&a, &b));
        assert!(is_superset_modulo_renaming(&b, &a));
    }

    #[test]
    fn different_predicate_blocks_theory_subsumption() {
        let t1 = Hypothesis::new(vec![cl(
            Atom::vars("p", &[0]),
            vec![Atom::vars("q", &[0])],
        )]);
        let t2 = Hypothesis::new(vec![
            cl(Atom::vars("p", &[0]), vec![Atom::vars("q", &[0])]),
            cl(Atom::vars("p", &[0]), vec![Atom::vars("s", &[0])]),
        ]);
        assert!(!theory_subsumes(&t1, &t2));
    }
}

//! Terms, atoms, clauses and hypotheses, plus the canonical forms that give
//! every hypothesis a renaming- and ordering-independent identity.
//!
//! A hypothesis is a set of definite Datalog clauses. Identity matters a
//! great deal here: banish constraints and duplicate elimination both rely
//! on two hypotheses comparing equal exactly when they are the same program
//! up to variable renaming and clause reordering, so [`Hypothesis`]
//! canonicalizes on construction and derives equality from the canonical
//! key.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// A ground value: the constants that populate background knowledge and
/// examples. Lists nest arbitrarily.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Int(i64),
    Sym(Arc<str>),
    List(Vec<Value>),
}

impl Value {
    pub fn sym(name: &str) -> Value {
        Value::Sym(Arc::from(name))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Sym(s) => write!(f, "{s}"),
            Value::List(items) => {
                write!(f, "[")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// A term is a variable (identified by a small integer) or a constant.
/// Hypothesis clauses use variables only; constants appear in ground atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(u32),
    Const(Value),
}

impl Term {
    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }
}

/// A predicate symbol. `(name, arity)` pairs identify predicates, so
/// `p/1` and `p/2` are distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PredSym {
    pub name: Arc<str>,
    pub arity: usize,
}

impl PredSym {
    pub fn new(name: &str, arity: usize) -> PredSym {
        PredSym {
            name: Arc::from(name),
            arity,
        }
    }
}

impl fmt::Display for PredSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

/// An atom `p(t1, ..., tn)` with `n == pred.arity`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub pred: PredSym,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: PredSym, args: Vec<Term>) -> Atom {
        assert_eq!(pred.arity, args.len(), "arity mismatch in atom {}", pred);
        Atom { pred, args }
    }

    /// Convenience constructor for an all-variable atom.
    pub fn vars(name: &str, vars: &[u32]) -> Atom {
        Atom::new(
            PredSym::new(name, vars.len()),
            vars.iter().map(|&v| Term::Var(v)).collect(),
        )
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(|t| !t.is_var())
    }

    fn rendered(&self, out: &mut String, rename: &dyn Fn(u32) -> u32) {
        out.push_str(&self.pred.name);
        if !self.args.is_empty() {
            out.push('(');
            for (i, t) in self.args.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                match t {
                    Term::Var(v) => {
                        out.push('V');
                        out.push_str(&rename(*v).to_string());
                    }
                    Term::Const(c) => out.push_str(&c.to_string()),
                }
            }
            out.push(')');
        }
    }
}

/// A fully ground atom: the currency of examples and background facts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundAtom {
    pub pred: PredSym,
    pub args: Vec<Value>,
}

impl GroundAtom {
    pub fn new(pred: PredSym, args: Vec<Value>) -> GroundAtom {
        assert_eq!(pred.arity, args.len(), "arity mismatch in fact {}", pred);
        GroundAtom { pred, args }
    }
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pred.name)?;
        if !self.args.is_empty() {
            write!(f, "(")?;
            for (i, v) in self.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// A definite clause `head :- body`. Every variable in the head must also
/// appear in the body (Datalog safety), checked on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    pub head: Atom,
    pub body: Vec<Atom>,
}

impl Clause {
    pub fn new(head: Atom, body: Vec<Atom>) -> Clause {
        for t in &head.args {
            if let Term::Var(v) = t {
                let in_body = body
                    .iter()
                    .any(|a| a.args.iter().any(|bt| bt == &Term::Var(*v)));
                assert!(in_body, "head variable V{v} does not appear in the body");
            }
        }
        Clause { head, body }
    }

    /// Distinct variables used by this clause.
    pub fn var_set(&self) -> BTreeSet<u32> {
        let mut vars = BTreeSet::new();
        for a in std::iter::once(&self.head).chain(self.body.iter()) {
            for t in &a.args {
                if let Term::Var(v) = t {
                    vars.insert(*v);
                }
            }
        }
        vars
    }

    /// Canonical text of this clause: variables renumbered in order of
    /// first occurrence, body atoms grouped by `(name, arity)` with the
    /// within-group order chosen to minimize the rendering. Equal for two
    /// clauses exactly when they are variants of each other.
    pub fn canonical_key(&self) -> String {
        let (key, _) = self.canonicalized();
        key
    }

    /// Canonical key together with the clause rebuilt in canonical shape
    /// (renumbered variables, minimizing body order).
    pub fn canonicalized(&self) -> (String, Clause) {
        // Group body positions by predicate so the search over orderings
        // only permutes atoms that could actually tie.
        let mut order: Vec<usize> = (0..self.body.len()).collect();
        order.sort_by(|&a, &b| {
            let pa = &self.body[a].pred;
            let pb = &self.body[b].pred;
            (&pa.name, pa.arity).cmp(&(&pb.name, pb.arity))
        });
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for idx in order {
            let p = &self.body[idx].pred;
            match groups.last() {
                Some(g) if self.body[g[0]].pred == *p => groups.last_mut().unwrap().push(idx),
                _ => groups.push(vec![idx]),
            }
        }

        let mut best: Option<(String, Vec<usize>)> = None;
        let mut current: Vec<usize> = Vec::with_capacity(self.body.len());
        self.min_over_groups(&groups, 0, &mut current, &mut best);
        let (key, perm) = best.expect("at least one ordering exists");

        let renames = self.first_occurrence_map(&perm);
        let remap = |v: u32| renames.iter().position(|&x| x == v).unwrap() as u32;
        let head = Atom::new(
            self.head.pred.clone(),
            self.head
                .args
                .iter()
                .map(|t| match t {
                    Term::Var(v) => Term::Var(remap(*v)),
                    c => c.clone(),
                })
                .collect(),
        );
        let body = perm
            .iter()
            .map(|&i| {
                let a = &self.body[i];
                Atom::new(
                    a.pred.clone(),
                    a.args
                        .iter()
                        .map(|t| match t {
                            Term::Var(v) => Term::Var(remap(*v)),
                            c => c.clone(),
                        })
                        .collect(),
                )
            })
            .collect();
        (key, Clause { head, body })
    }

    fn min_over_groups(
        &self,
        groups: &[Vec<usize>],
        gi: usize,
        current: &mut Vec<usize>,
        best: &mut Option<(String, Vec<usize>)>,
    ) {
        if gi == groups.len() {
            let key = self.render_with_order(current);
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                *best = Some((key, current.clone()));
            }
            return;
        }
        let mut group = groups[gi].clone();
        permute(&mut group, 0, &mut |perm| {
            let len_before = current.len();
            current.extend_from_slice(perm);
            self.min_over_groups(groups, gi + 1, current, best);
            current.truncate(len_before);
        });
    }

    fn first_occurrence_map(&self, perm: &[usize]) -> Vec<u32> {
        let mut seen: Vec<u32> = Vec::new();
        let mut note = |t: &Term| {
            if let Term::Var(v) = t {
                if !seen.contains(v) {
                    seen.push(*v);
                }
            }
        };
        for t in &self.head.args {
            note(t);
        }
        for &i in perm {
            for t in &self.body[i].args {
                note(t);
            }
        }
        seen
    }

    fn render_with_order(&self, perm: &[usize]) -> String {
        let renames = self.first_occurrence_map(perm);
        let remap = move |v: u32| renames.iter().position(|&x| x == v).unwrap() as u32;
        let mut out = String::new();
        self.head.rendered(&mut out, &remap);
        if !perm.is_empty() {
            out.push_str(":-");
            for (i, &idx) in perm.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                self.body[idx].rendered(&mut out, &remap);
            }
        }
        out
    }
}

/// Run `f` on every permutation of `items[start..]` in place.
fn permute(items: &mut Vec<usize>, start: usize, f: &mut dyn FnMut(&[usize])) {
    if start == items.len() {
        f(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permute(items, start + 1, f);
        items.swap(start, i);
    }
}

/// A set of definite clauses. Construction canonicalizes each clause,
/// drops exact duplicates and sorts clauses by canonical key, so equality
/// and hashing see through variable renaming and clause order.
#[derive(Debug, Clone)]
pub struct Hypothesis {
    clauses: Vec<Clause>,
    key: String,
}

impl Hypothesis {
    pub fn new(clauses: Vec<Clause>) -> Hypothesis {
        let mut canon: Vec<(String, Clause)> = clauses.iter().map(|c| c.canonicalized()).collect();
        canon.sort_by(|a, b| a.0.cmp(&b.0));
        canon.dedup_by(|a, b| a.0 == b.0);
        let key = canon
            .iter()
            .map(|(k, _)| k.as_str())
            .collect::<Vec<_>>()
            .join(". ");
        Hypothesis {
            clauses: canon.into_iter().map(|(_, c)| c).collect(),
            key,
        }
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Canonical identity key: equal for two hypotheses exactly when they
    /// are the same program up to renaming and clause reordering.
    pub fn canonical_key(&self) -> &str {
        &self.key
    }

    /// Program size: the total number of body literals. Heads do not
    /// count, so a single fact-like clause has size 0 and
    /// `{p(A):-q(A,B),r(B)}` has size 2.
    pub fn size(&self) -> usize {
        self.clauses.iter().map(|c| c.body.len()).sum()
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// True when some clause body calls a predicate that is also the head
    /// of a clause in this hypothesis.
    pub fn is_recursive(&self) -> bool {
        let heads: BTreeSet<&PredSym> = self.clauses.iter().map(|c| &c.head.pred).collect();
        self.clauses
            .iter()
            .any(|c| c.body.iter().any(|a| heads.contains(&a.pred)))
    }

    /// True when head predicate symbols and body predicate symbols are
    /// disjoint. Separable programs can be split clause by clause, which
    /// is what makes elimination constraints sound. Complement of
    /// [`Hypothesis::is_recursive`]: a shared symbol is exactly a body
    /// atom naming some clause head.
    pub fn is_separable(&self) -> bool {
        let heads: BTreeSet<&PredSym> = self.clauses.iter().map(|c| &c.head.pred).collect();
        let bodies: BTreeSet<&PredSym> = self
            .clauses
            .iter()
            .flat_map(|c| c.body.iter().map(|a| &a.pred))
            .collect();
        heads.is_disjoint(&bodies)
    }

    /// True when every predicate that heads a recursive clause also heads
    /// a non-recursive clause. Recursive programs without a base case can
    /// never derive anything and are excluded from the search space.
    pub fn has_base_case(&self) -> bool {
        let heads: BTreeSet<&PredSym> = self.clauses.iter().map(|c| &c.head.pred).collect();
        let recursive_heads: BTreeSet<&PredSym> = self
            .clauses
            .iter()
            .filter(|c| c.body.iter().any(|a| heads.contains(&a.pred)))
            .map(|c| &c.head.pred)
            .collect();
        recursive_heads.iter().all(|p| {
            self.clauses
                .iter()
                .any(|c| c.head.pred == **p && !c.body.iter().any(|a| a.pred == **p))
        })
    }
}

impl PartialEq for Hypothesis {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Hypothesis {}

impl std::hash::Hash for Hypothesis {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl PartialOrd for Hypothesis {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Hypothesis {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clause(head: Atom, body: Vec<Atom>) -> Clause {
        Clause::new(head, body)
    }

    #[test]
    fn canonical_sees_through_renaming() {
        // {p(A):-q(A,B)} and {p(X):-q(X,Y)} are the same program.
        let a = Hypothesis::new(vec![clause(
            Atom::vars("p", &[0]),
            vec![Atom::vars("q", &[0, 1])],
        )]);
        let b = Hypothesis::new(vec![clause(
            Atom::vars("p", &[7]),
            vec![Atom::vars("q", &[7, 3])],
        )]);
        assert_eq!(a.canonical_key(), b.canonical_key());
        assert_eq!(a, b);
    }

    #[test]
    fn canonical_sees_through_clause_order() {
        let c1 = clause(Atom::vars("p", &[0]), vec![Atom::vars("q", &[0, 1])]);
        let c2 = clause(Atom::vars("p", &[0]), vec![Atom::vars("r", &[0])]);
        let a = Hypothesis::new(vec![c1.clone(), c2.clone()]);
        let b = Hypothesis::new(vec![c2, c1]);
        assert_eq!(a.canonical_key(), b.canonical_key());
    }

    #[test]
    fn canonical_distinguishes_argument_order() {
        // q(A,B) vs q(B,A) relative to the head variable differ under
        // every renaming, so the keys must differ.
        let a = Hypothesis::new(vec![clause(
            Atom::vars("p", &[0]),
            vec![Atom::vars("q", &[0, 1])],
        )]);
        let b = Hypothesis::new(vec![clause(
            Atom::vars("p", &[0]),
            vec![Atom::vars("q", &[1, 0])],
        )]);
        assert_ne!(a.canonical_key(), b.canonical_key());
    }

    #[test]
    fn canonical_sees_through_body_order() {
        let a = Hypothesis::new(vec![clause(
            Atom::vars("p", &[0]),
            vec![Atom::vars("q", &[0, 1]), Atom::vars("r", &[1])],
        )]);
        let b = Hypothesis::new(vec![clause(
            Atom::vars("p", &[0]),
            vec![Atom::vars("r", &[1]), Atom::vars("q", &[0, 1])],
        )]);
        assert_eq!(a.canonical_key(), b.canonical_key());
    }

    #[test]
    fn canonical_minimizes_within_predicate_groups() {
        // Two q/2 atoms in both orders: the canonical form must agree.
        let a = Hypothesis::new(vec![clause(
            Atom::vars("p", &[0]),
            vec![Atom::vars("q", &[0, 1]), Atom::vars("q", &[1, 0])],
        )]);
        let b = Hypothesis::new(vec![clause(
            Atom::vars("p", &[0]),
            vec![Atom::vars("q", &[1, 0]), Atom::vars("q", &[0, 1])],
        )]);
        assert_eq!(a.canonical_key(), b.canonical_key());
    }

    #[test]
    fn canonical_is_idempotent() {
        let h = Hypothesis::new(vec![clause(
            Atom::vars("p", &[2]),
            vec![Atom::vars("q", &[2, 5]), Atom::vars("r", &[5])],
        )]);
        let again = Hypothesis::new(h.clauses().to_vec());
        assert_eq!(h.canonical_key(), again.canonical_key());
    }

    #[test]
    fn duplicate_clauses_collapse() {
        let c1 = clause(Atom::vars("p", &[0]), vec![Atom::vars("q", &[0, 1])]);
        let c2 = clause(Atom::vars("p", &[4]), vec![Atom::vars("q", &[4, 9])]);
        let h = Hypothesis::new(vec![c1, c2]);
        assert_eq!(h.num_clauses(), 1);
    }

    #[test]
    fn size_counts_body_literals_only() {
        // eastbound(A):-has_car(A,B),long(B) has size 2.
        let h1 = Hypothesis::new(vec![clause(
            Atom::vars("eastbound", &[0]),
            vec![Atom::vars("has_car", &[0, 1]), Atom::vars("long", &[1])],
        )]);
        assert_eq!(h1.size(), 2);

        // eastbound(A):-has_car(A,B),short(B),two_wheels(B) has size 3.
        let h4 = Hypothesis::new(vec![clause(
            Atom::vars("eastbound", &[0]),
            vec![
                Atom::vars("has_car", &[0, 1]),
                Atom::vars("short", &[1]),
                Atom::vars("two_wheels", &[1]),
            ],
        )]);
        assert_eq!(h4.size(), 3);

        let empty = Hypothesis::new(vec![]);
        assert_eq!(empty.size(), 0);
    }

    #[test]
    fn recursion_and_base_cases() {
        let rec = Hypothesis::new(vec![
            clause(
                Atom::vars("alleven", &[0]),
                vec![
                    Atom::vars("head", &[0, 1]),
                    Atom::vars("even", &[1]),
                    Atom::vars("tail", &[0, 2]),
                    Atom::vars("alleven", &[2]),
                ],
            ),
            clause(Atom::vars("alleven", &[0]), vec![Atom::vars("empty", &[0])]),
        ]);
        assert!(rec.is_recursive());
        assert!(!rec.is_separable());
        assert!(rec.has_base_case());

        let no_base = Hypothesis::new(vec![clause(
            Atom::vars("alleven", &[0]),
            vec![Atom::vars("tail", &[0, 2]), Atom::vars("alleven", &[2])],
        )]);
        assert!(no_base.is_recursive());
        assert!(!no_base.has_base_case());

        let flat = Hypothesis::new(vec![clause(
            Atom::vars("eastbound", &[0]),
            vec![Atom::vars("has_car", &[0, 1]), Atom::vars("short", &[1])],
        )]);
        assert!(!flat.is_recursive());
        assert!(flat.is_separable());
        assert!(flat.has_base_case());
    }

    #[test]
    fn mutual_recursion_is_detected() {
        // p calls q and q calls p: recursive through the pair.
        let h = Hypothesis::new(vec![
            clause(Atom::vars("p", &[0]), vec![Atom::vars("q", &[0, 1])]),
            clause(
                Atom::vars("q", &[0, 1]),
                vec![Atom::vars("p", &[0]), Atom::vars("r", &[1])],
            ),
        ]);
        assert!(h.is_recursive());
        assert!(!h.is_separable());
    }

    #[test]
    fn separable_two_clause_program() {
        let h = Hypothesis::new(vec![
            clause(Atom::vars("p", &[0]), vec![Atom::vars("q", &[0])]),
            clause(Atom::vars("r", &[0]), vec![Atom::vars("q", &[0])]),
        ]);
        assert!(h.is_separable());
    }

    #[test]
    fn chained_call_structure_is_not_separable() {
        // eastbound calls f and f is defined here. The head/body symbol
        // overlap makes this both non-separable and recursive in the
        // coarse sense used for constraint qualifiers.
        let h = Hypothesis::new(vec![
            clause(
                Atom::vars("eastbound", &[0]),
                vec![Atom::vars("has_car", &[0, 1]), Atom::vars("f", &[1])],
            ),
            clause(
                Atom::vars("f", &[0]),
                vec![
                    Atom::vars("two_wheels", &[0]),
                    Atom::vars("roof_closed", &[0]),
                ],
            ),
        ]);
        assert!(!h.is_separable());
        assert!(h.is_recursive());
        assert!(h.has_base_case());
    }
}
